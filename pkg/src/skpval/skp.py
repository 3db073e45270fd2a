"""Construction of key polynomials from a validated value table.

Row i starts with U_{i,1} = X_i.  Each successor is the binomial

    U_{i,j} = U_{i,j-1}^{n_{i,j-1}} - theta_{i,j-1} * prod U^{m},

where m is the canonical relation of entry (i, j-1).  Limit-labeled entries
may instead be produced by unrolling a declared tail recurrence under a
truncation cutoff.  Every non-final entry also records its rewrite data
(U^n = U_next + sum theta_t U^{m_t}), which is what the expansion engine
consumes; for a freshly built table that is a single summand, for a reduced
table the collapsed chain.
"""

from .errors import (
    InvalidTableError,
    NoCutoffError,
    NonStabilizingError,
    ThetaZeroError,
)
from .fields import QQ
from .ordgroup import is_finite_index
from .poly import MultiPoly, TruncationContext
from .valtable import ValueTable, compute_relations, validate_table

DEFAULT_LIMIT_CUTOFF = 32


class SkpEntry:
    """One key polynomial with its bookkeeping."""

    __slots__ = (
        "index",
        "beta",
        "n",
        "relation",
        "d",
        "poly",
        "theta",
        "rewrite_next",
        "rewrite_terms",
        "limit_label",
        "truncated_limit",
        "unroll_report",
    )

    def __init__(self, index, beta, n, relation, d, poly, theta):
        self.index = index
        self.beta = beta
        self.n = n
        self.relation = dict(relation)
        self.d = d
        self.poly = poly
        self.theta = theta
        self.rewrite_next = None
        self.rewrite_terms = None
        self.limit_label = None
        self.truncated_limit = False
        self.unroll_report = None

    def __repr__(self):
        return f"SkpEntry({self.index}, d={self.d}, U={self.poly})"


class UnrollReport:
    """Outcome of accumulating a declared tail under a cutoff."""

    __slots__ = ("stabilized", "summands_used", "cutoff")

    def __init__(self, stabilized, summands_used, cutoff):
        self.stabilized = stabilized
        self.summands_used = summands_used
        self.cutoff = cutoff

    def to_json(self):
        return {
            "stabilized": self.stabilized,
            "summands_used": self.summands_used,
            "cutoff": self.cutoff,
        }

    def __repr__(self):
        return (
            f"UnrollReport(stabilized={self.stabilized}, "
            f"summands_used={self.summands_used}, cutoff={self.cutoff})"
        )


class LimitTail:
    """Declared tail recurrence feeding a limit-labeled entry.

    The entry at (row, at) is built as U_{row,at-1}^{n} minus the summands
    theta * prod U^{a + b*k} for unroll counter k = 0, 1, ..., where the
    ``exponents`` map sends an earlier table index to the affine pair (a, b).
    """

    __slots__ = ("row", "at", "exponents", "theta", "depth")

    def __init__(self, row, at, exponents, theta=1, depth=64):
        if at < 2:
            raise ValueError("a tail must target a successor position")
        self.row = row
        self.at = at
        self.exponents = {tuple(k): (int(a), int(b)) for k, (a, b) in exponents.items()}
        self.theta = theta
        self.depth = depth

    def exponent_map(self, k):
        return {
            idx: a + b * k
            for idx, (a, b) in self.exponents.items()
            if a + b * k != 0
        }


class SkpTable:
    """Key polynomials over a value table, plus degrees and rewrite data."""

    def __init__(self, values, entries, field, truncation):
        self.values = values
        self.entries = entries
        self.field = field
        self.truncation = truncation or TruncationContext()
        self.nvars = values.num_rows
        self.order = sorted(entries)

    @property
    def dimension(self):
        return self.values.dimension

    def entry(self, index):
        return self.entries[index]

    def row_length(self, i):
        return self.values.row_length(i)

    def full_alpha(self):
        return self.values.row_lengths()

    def is_row_final(self, index):
        return self.values.is_row_final(index)

    def monomial_poly(self, exps):
        """Evaluate prod U_{i,j}^{e} as a polynomial (truncation applied)."""
        out = MultiPoly.one(self.nvars, self.field)
        for idx, e in sorted(exps.items()):
            if e:
                out = self.truncation.apply(out * self.entries[idx].poly ** e)
        return out

    def ord_of_entry(self, index):
        return self.entries[index].poly.order()

    def __repr__(self):
        return f"SkpTable({self.values!r})"


def _as_theta_map(thetas, field):
    out = {}
    for key, val in (thetas or {}).items():
        c = field.of(val)
        if c == field.zero:
            raise ThetaZeroError(f"theta at {key} is zero")
        out[tuple(key)] = c
    return out


class UnrollResult:
    """Polynomial, stabilization report, and the summands consumed."""

    __slots__ = ("poly", "report", "summands")

    def __init__(self, poly, report, summands):
        self.poly = poly
        self.report = report
        self.summands = summands


def unroll_limit(skp_or_entries, tail, truncation=None, field=None):
    """Accumulate a declared tail until summand orders pass the cutoff.

    Returns an UnrollResult.  Requires an active cutoff; raises
    NonStabilizingError when the depth is exhausted with summands still at
    or below the cutoff.  Depth 0 returns the start power unchanged.
    """
    if isinstance(skp_or_entries, SkpTable):
        entries = skp_or_entries.entries
        truncation = truncation or skp_or_entries.truncation
        field = field or skp_or_entries.field
    else:
        entries = skp_or_entries
        field = field or QQ
    truncation = truncation or TruncationContext()
    if not truncation.active:
        raise NoCutoffError("limit unrolling requires a truncation cutoff")
    cutoff = truncation.cutoff

    start = entries[(tail.row, tail.at - 1)]
    n_start = start.n if is_finite_index(start.n) else 1
    acc = truncation.apply(start.poly ** n_start)
    theta = field.of(tail.theta)
    entry_orders = {}

    def order_of_map(m):
        total = 0
        for idx, e in m.items():
            if idx not in entry_orders:
                entry_orders[idx] = entries[idx].poly.order()
            total += e * entry_orders[idx]
        return total

    if tail.depth == 0:
        return UnrollResult(acc, UnrollReport(False, 0, cutoff), [])

    summands = []
    used = 0
    stabilized = False
    for k in range(tail.depth + 1):
        m = tail.exponent_map(k)
        if order_of_map(m) > cutoff:
            stabilized = True
            break
        if k == tail.depth:
            raise NonStabilizingError(
                f"summand order still <= {cutoff} after {tail.depth} terms"
            )
        term = MultiPoly.one(start.poly.nvars, field)
        for idx, e in sorted(m.items()):
            term = term * entries[idx].poly ** e
        term = truncation.apply(term)
        acc = truncation.apply(acc - theta * term)
        summands.append((theta, m))
        used += 1
    return UnrollResult(acc, UnrollReport(stabilized, used, cutoff), summands)


def build_skp(table, thetas=None, truncation=None, field=QQ, limit_tails=None):
    """Build the key polynomials of a validated value table.

    ``thetas`` maps an entry index (i, j) to the nonzero scale used when
    constructing the next entry of the row (default 1 everywhere).
    ``limit_tails`` is a list of LimitTail declarations; limit-labeled
    entries without a tail are built by the plain successor formula from the
    last materialized predecessor and flagged ``truncated_limit``.
    """
    if not isinstance(table, ValueTable):
        table = compute_relations(table)
    report = validate_table(table)
    if not report.is_sequence_of_values:
        raise InvalidTableError(
            "table is not a sequence of values: "
            + "; ".join(repr(c) for c in report.failures),
            report,
        )
    theta_map = _as_theta_map(thetas, field)
    tails = {(t.row, t.at): t for t in (limit_tails or [])}
    if tails or table.limit_labels:
        if truncation is None:
            truncation = TruncationContext(DEFAULT_LIMIT_CUTOFF)
    truncation = truncation or TruncationContext()
    nvars = table.num_rows

    entries = {}
    for index in sorted(table.entries):
        i, j = index
        ventry = table.entries[index]
        theta = theta_map.get(index, field.one)
        if j == 1:
            poly = MultiPoly.variable(i, nvars, field)
            entry = SkpEntry(index, ventry.beta, ventry.n, ventry.relation, 1, poly, theta)
        else:
            prev = entries[(i, j - 1)]
            d = prev.n * prev.d
            if index in tails:
                tail = tails[index]
                unrolled = unroll_limit(entries, tail, truncation, field)
                prev.rewrite_next = index
                prev.rewrite_terms = unrolled.summands
                entry = SkpEntry(
                    index, ventry.beta, ventry.n, ventry.relation, d,
                    unrolled.poly, theta,
                )
                entry.unroll_report = unrolled.report
            else:
                um = MultiPoly.one(nvars, field)
                for idx, e in sorted(prev.relation.items()):
                    um = um * entries[idx].poly ** e
                um = truncation.apply(um)
                poly = truncation.apply(prev.poly ** prev.n - prev.theta * um)
                prev.rewrite_next = index
                prev.rewrite_terms = [(prev.theta, dict(prev.relation))]
                entry = SkpEntry(
                    index, ventry.beta, ventry.n, ventry.relation, d, poly, theta
                )
                if ventry.limit_label is not None:
                    entry.truncated_limit = True
        entry.limit_label = ventry.limit_label
        entries[index] = entry
        _check_entry_shape(entry, nvars, truncation)

    return SkpTable(table, entries, field, truncation)


def _check_entry_shape(entry, nvars, truncation):
    i, _ = entry.index
    poly = entry.poly
    # support: U_{i,j} involves only X_0..X_i
    assert all(v <= i for v in poly.support_variables()), entry
    if truncation.active:
        return
    # monic of the predicted X_i-degree, lower coefficients with no constant term
    assert poly.deg_in(i) == entry.d, entry
    assert poly.is_monic_in(i), entry
    for k in range(entry.d):
        coeff = poly.coefficient_of(i, k)
        assert (0,) * nvars not in coeff.terms, entry


def minimal_pseudo_skp(skp):
    """Drop interior entries with n = 1 (keeping each row's first entry).

    The first entry stays so that U_{i,1} = X_i keeps holding on the reduced
    table.  Remaining entries are re-annotated; rewrite data is collapsed
    across the dropped chains so expansions over the reduced table agree
    with the original.
    """
    table = skp.values
    kept = []
    for index in skp.order:
        i, j = index
        entry = skp.entries[index]
        if j == 1 or skp.is_row_final(index) or entry.n != 1:
            kept.append(index)

    remap = {}
    new_rows = [[] for _ in range(table.num_rows)]
    for index in kept:
        i, j = index
        new_rows[i].append(skp.entries[index].beta)
        remap[index] = (i, len(new_rows[i]))

    limit_labels = {
        remap[idx]: lab
        for idx, lab in table.limit_labels.items()
        if idx in remap
    }
    new_table = compute_relations(new_rows, limit_labels=limit_labels)

    new_entries = {}
    for index in kept:
        old = skp.entries[index]
        new_index = remap[index]
        ventry = new_table.entries[new_index]
        # indices and relations recomputed on the reduced table must agree
        # with the originals: dropped entries never carry relation mass
        assert ventry.n == old.n, (index, ventry.n, old.n)
        assert ventry.relation == {
            remap[k]: m for k, m in old.relation.items()
        }, index
        entry = SkpEntry(
            new_index, old.beta, old.n, ventry.relation, old.d, old.poly, old.theta
        )
        entry.limit_label = old.limit_label
        entry.truncated_limit = old.truncated_limit
        new_entries[new_index] = entry

    # collapse rewrite chains over the dropped positions
    for index in kept:
        i, j = index
        if skp.is_row_final(index):
            continue
        terms = []
        cur = skp.entries[index]
        while True:
            terms.extend(
                (theta, {remap[k]: m for k, m in mmap.items()})
                for theta, mmap in cur.rewrite_terms
            )
            nxt = cur.rewrite_next
            if nxt in remap:
                break
            cur = skp.entries[nxt]
        entry = new_entries[remap[index]]
        entry.rewrite_next = remap[nxt]
        entry.rewrite_terms = terms

    return SkpTable(new_table, new_entries, skp.field, skp.truncation)


def normalize_alpha(skp, alpha=None):
    """Resolve an acceptable-vector argument; None means the full table."""
    lengths = skp.full_alpha()
    if alpha is None:
        return lengths
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != len(lengths):
        raise ValueError(f"alpha needs {len(lengths)} components")
    for a, ln in zip(alpha, lengths):
        if ln == 0:
            if a != 0:
                raise ValueError("nonzero cutoff on an empty row")
        elif not 1 <= a <= ln:
            raise ValueError(f"cutoff {a} outside 1..{ln}")
    return alpha


def validate_acceptable(skp, alpha):
    """Relation closure of a cutoff vector.

    The expansion rewrites U_{i,j}^{n} only for j strictly below the cutoff,
    so exactly those relations must stay inside the cutoff.  The full vector
    and (1, ..., 1) always pass.
    """
    alpha = normalize_alpha(skp, alpha)
    for index in skp.order:
        i, j = index
        if j >= alpha[i]:
            continue
        for (i2, j2) in skp.entries[index].relation:
            if j2 > alpha[i2]:
                return False
    return True
