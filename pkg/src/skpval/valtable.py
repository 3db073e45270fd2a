"""The doubly indexed value family beta_{i,j} and its derived arithmetic.

Entries are indexed by (i, j): variable row i >= 0 and 1-based position j,
ordered lexicographically.  ``compute_relations`` annotates every entry with
its subgroup index n_{i,j}, its canonical relation over strictly earlier
entries, and the positive/negative supports S and S^c.  ``validate_table``
checks the growth, interior-finiteness, limit-monotonicity, and positivity
conditions and accumulates the outcome into a report instead of raising.
"""

from . import ordgroup
from .ordgroup import GroupValue, as_group_value, is_finite_index


class TableEntry:
    """One value beta_{i,j} with its derived data."""

    __slots__ = ("index", "beta", "n", "relation", "s_pos", "s_neg", "limit_label")

    def __init__(self, index, beta, n, relation, limit_label=None):
        self.index = index
        self.beta = beta
        self.n = n
        # relation maps earlier TableIndex -> nonzero integer coefficient
        self.relation = dict(relation)
        self.s_pos = frozenset(k for k, m in self.relation.items() if m > 0)
        self.s_neg = frozenset(k for k, m in self.relation.items() if m < 0)
        self.limit_label = limit_label

    def __repr__(self):
        n = ordgroup.format_index(self.n)
        return f"TableEntry({self.index}, beta={self.beta}, n={n})"


class ValueTable:
    """Rows of values with per-entry indices, relations, and supports."""

    def __init__(self, dimension, rows, entries, limit_labels):
        self.dimension = dimension
        self.rows = rows                      # list of lists of GroupValue
        self.entries = entries                # TableIndex -> TableEntry
        self.limit_labels = dict(limit_labels)
        self.order = sorted(entries)          # lex order on (i, j)

    @property
    def num_rows(self):
        return len(self.rows)

    def row_length(self, i):
        return len(self.rows[i])

    def row_lengths(self):
        return tuple(len(r) for r in self.rows)

    def entry(self, index):
        return self.entries[index]

    def is_row_final(self, index):
        i, j = index
        return j == len(self.rows[i])

    def all_values(self):
        return [self.entries[k].beta for k in self.order]

    def prefix_values(self, index):
        """Values at entries strictly earlier than ``index`` in lex order."""
        return [self.entries[k].beta for k in self.order if k < index]

    def __repr__(self):
        rows = "; ".join(
            "(" + ", ".join(str(b) for b in row) + ")" for row in self.rows
        )
        return f"ValueTable[{rows}]"


def compute_relations(raw_rows, dimension=None, limit_labels=None):
    """Annotate raw rows of values with n, relation, S, and S^c per entry.

    ``raw_rows`` is a list (one item per row i = 0, 1, ...) of sequences of
    values; scalars are accepted for dimension-1 problems.  Rows may be empty
    (structural problems are reported by ``validate_table``, not here).
    ``limit_labels`` maps (i, j) to the ordinal block count the entry stands
    for in an unrolled table.
    """
    if not raw_rows or all(len(r) == 0 for r in raw_rows):
        raise ValueError("table needs at least one value")
    rows = []
    for row in raw_rows:
        rows.append([as_group_value(v) for v in row])
    dims = {v.dim for row in rows for v in row}
    if len(dims) > 1:
        raise ordgroup.DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
    dim = dims.pop()
    if dimension is not None and dimension != dim:
        raise ordgroup.DimensionMismatchError(
            f"declared dimension {dimension} but values have dimension {dim}"
        )

    index_order = [
        (i, j + 1) for i, row in enumerate(rows) for j in range(len(row))
    ]
    flat_values = [rows[i][j - 1] for (i, j) in index_order]
    chain = ordgroup.analyze_chain(flat_values)

    limit_labels = {tuple(k): v for k, v in (limit_labels or {}).items()}
    entries = {}
    for pos, index in enumerate(index_order):
        ce = chain[pos]
        relation = {
            index_order[p]: m for p, m in ce.relation.coeffs.items()
        }
        entries[index] = TableEntry(
            index, ce.value, ce.n, relation, limit_labels.get(index)
        )
    return ValueTable(dim, rows, entries, limit_labels)


class ValidationCheck:
    """Outcome of a single condition at a single entry."""

    __slots__ = ("index", "check", "ok", "detail")

    def __init__(self, index, check, ok, detail=""):
        self.index = index
        self.check = check
        self.ok = ok
        self.detail = detail

    def __repr__(self):
        mark = "ok" if self.ok else "FAIL"
        return f"[{mark}] {self.index} {self.check}: {self.detail}"


class ValidationReport:
    """All per-entry condition outcomes of a table."""

    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    def failures_of(self, check):
        return [c for c in self.failures if c.check == check]

    @property
    def is_sequence_of_prevalues(self):
        return not any(
            c
            for c in self.failures
            if c.check in ("interior-finite", "increasing", "limit-monotone")
        )

    @property
    def is_sequence_of_values(self):
        return self.is_sequence_of_prevalues and not self.failures_of("positive")

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {
            "ok": self.ok,
            "sequence_of_prevalues": self.is_sequence_of_prevalues,
            "sequence_of_values": self.is_sequence_of_values,
            "checks": [
                {
                    "index": f"{c.index[0]},{c.index[1]}",
                    "check": c.check,
                    "ok": c.ok,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def __repr__(self):
        return "\n".join(repr(c) for c in self.checks)


def validate_table(table):
    """Check every entry against the table conditions.

    Per entry: interior entries must have finite index n; successive entries
    must satisfy beta_{i,j+1} > n_{i,j} * beta_{i,j} when n_{i,j} is finite;
    limit-labeled entries must dominate their materialized predecessors in
    the row (flagged "truncated-limit" since the tail is not materialized);
    and the canonical relation must have no negative coefficients (S^c empty)
    for the table to be a sequence of values.
    """
    checks = []
    for index in table.order:
        entry = table.entries[index]
        i, j = index
        final = table.is_row_final(index)
        if not final:
            ok = is_finite_index(entry.n)
            checks.append(
                ValidationCheck(
                    index,
                    "interior-finite",
                    ok,
                    "interior entry has n = inf" if not ok else f"n = {entry.n}",
                )
            )
            nxt = table.entries[(i, j + 1)]
            if is_finite_index(entry.n):
                bound = entry.beta.scale(entry.n)
                ok = nxt.beta > bound
                checks.append(
                    ValidationCheck(
                        index,
                        "increasing",
                        ok,
                        f"beta_{i},{j + 1} = {nxt.beta} vs "
                        f"{entry.n}*beta_{i},{j} = {bound}",
                    )
                )
        if entry.limit_label is not None:
            preds = [table.entries[(i, j2)].beta for j2 in range(1, j)]
            ok = all(entry.beta > p for p in preds)
            checks.append(
                ValidationCheck(
                    index,
                    "limit-monotone",
                    ok,
                    "truncated-limit: checked against materialized "
                    "predecessors only",
                )
            )
        ok = not entry.s_neg
        checks.append(
            ValidationCheck(
                index,
                "positive",
                ok,
                ""
                if ok
                else "negative coefficients at "
                + ", ".join(f"{a},{b}" for a, b in sorted(entry.s_neg)),
            )
        )
    return ValidationReport(checks)


def _semigroup_sums(values, coeff_bound):
    """All sums a_1 v_1 + ... with a_i >= 0 and sum a_i <= coeff_bound.

    Yields (value, witness) pairs; the witness is the tuple of coefficients
    of the first combination found for that value.
    """
    if not values:
        return {}
    dim = values[0].dim
    zero = GroupValue((0,) * dim)
    found = {}

    def rec(pos, budget, acc, witness):
        if pos == len(values):
            key = acc.coords
            if key not in found:
                found[key] = (acc, tuple(witness))
            return
        for a in range(budget + 1):
            witness.append(a)
            rec(pos + 1, budget - a, acc + values[pos].scale(a), witness)
            witness.pop()

    rec(0, coeff_bound, zero, [])
    return found


def enumerate_semigroup(table_or_values, coeff_bound, with_witnesses=False):
    """Semigroup ball: all bounded nonnegative combinations, sorted.

    Accepts a ValueTable or a plain list of values.  With
    ``with_witnesses=True`` returns a list of (value, coefficient tuple)
    pairs instead, one witness per distinct value.
    """
    if isinstance(table_or_values, ValueTable):
        values = table_or_values.all_values()
    else:
        values = [as_group_value(v) for v in table_or_values]
    found = _semigroup_sums(values, coeff_bound)
    ordered = sorted(found.values(), key=lambda vw: vw[0].coords)
    if with_witnesses:
        return ordered
    return [v for v, _ in ordered]
