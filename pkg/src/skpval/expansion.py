"""Adic and Euclidean expansions of polynomials in key polynomials.

An adic expansion rewrites a polynomial as a sum of monomials in the key
polynomials where every exponent at a non-final position (i, j), j < alpha_i,
stays below n_{i,j}.  The rewrite replaces an occurrence of U_{i,j}^{n_{i,j}}
either by U_{i,j+1} + theta * U^{m} (successor rule) or, when the next
positions form an n = 1 chain, by the collapsed sum across the chain.  The
result is unique; the strategy here is deterministic: the monomial with the
smallest Vdeg (lexicographic per-variable degree vector) is processed first,
and within it the violating index with the greatest lex position.

The Euclidean expansion of the top row is computed by iterated monic
division by the largest applicable key polynomial; it coincides with
grouping the adic expansion by top-row exponents.
"""

from .errors import IterationCapError, UnrealizableError, ZeroPolyError
from .ordgroup import is_finite_index
from .poly import MultiPoly, monic_divide
from .skp import normalize_alpha

DEFAULT_REWRITE_CAP = 1_000_000


class AdicMonomial:
    """A scalar times a product of key polynomials."""

    __slots__ = ("coeff", "exps")

    def __init__(self, coeff, exps):
        self.coeff = coeff
        self.exps = {k: int(e) for k, e in dict(exps).items() if e}

    def key(self):
        return tuple(sorted(self.exps.items()))

    def exponent(self, index):
        return self.exps.get(index, 0)

    def __repr__(self):
        inner = "*".join(
            f"U[{i},{j}]^{e}" if e > 1 else f"U[{i},{j}]"
            for (i, j), e in sorted(self.exps.items())
        )
        return f"AdicMonomial({self.coeff}{'*' + inner if inner else ''})"


def vdeg(exps, skp):
    """Per-variable degree vector of a U-monomial: sum of e * d per row."""
    if isinstance(exps, AdicMonomial):
        exps = exps.exps
    out = [0] * skp.nvars
    for (i, j), e in exps.items():
        out[i] += e * skp.entries[(i, j)].d
    return tuple(out)


def vp(exps, skp, alpha=None):
    """Row-final exponents, top row first."""
    if isinstance(exps, AdicMonomial):
        exps = exps.exps
    alpha = normalize_alpha(skp, alpha)
    return tuple(
        exps.get((i, alpha[i]), 0) if alpha[i] else 0
        for i in range(skp.nvars - 1, -1, -1)
    )


def vdeg_vp(monomial, skp, alpha=None):
    return vdeg(monomial, skp), vp(monomial, skp, alpha)


def monomial_sort_key(exps, skp):
    if isinstance(exps, AdicMonomial):
        exps = exps.exps
    return (vdeg(exps, skp), tuple(sorted(exps.items())))


class AdicExpansion:
    """A finite sum of adic-form monomials over a fixed table and cutoff."""

    def __init__(self, skp, alpha, monomials):
        self.skp = skp
        self.alpha = alpha
        self.monomials = sorted(monomials, key=lambda m: monomial_sort_key(m, skp))

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def evaluate(self):
        """Multiply the expansion back out (truncation-adjusted)."""
        out = MultiPoly.zero(self.skp.nvars, self.skp.field)
        for m in self.monomials:
            out = out + self.skp.monomial_poly(m.exps).scale(m.coeff)
        return self.skp.truncation.apply(out)

    def restrict(self, keep):
        return AdicExpansion(self.skp, self.alpha, [m for m in self.monomials if keep(m)])

    def to_json(self):
        field = self.skp.field
        return [
            {
                "coeff": field.format(m.coeff),
                "exponents": {
                    f"{i},{j}": e for (i, j), e in sorted(m.exps.items())
                },
            }
            for m in self.monomials
        ]

    def __repr__(self):
        return " + ".join(repr(m) for m in self.monomials) or "0"


def _add_monomial(work, key, coeff, zero):
    cur = work.get(key, zero) + coeff
    if cur == zero:
        work.pop(key, None)
    else:
        work[key] = cur


def _collapsed_rewrite(skp, alpha, index):
    """Rewrite data for U_{i,j}^{n}: (next index, summand terms).

    Walks forward across n = 1 positions strictly below the cutoff so the
    dropped chain never appears in the output.
    """
    i, _ = index
    entry = skp.entries[index]
    terms = list(entry.rewrite_terms)
    nxt = entry.rewrite_next
    while nxt[1] < alpha[i] and skp.entries[nxt].n == 1:
        nxt_entry = skp.entries[nxt]
        terms.extend(nxt_entry.rewrite_terms)
        nxt = nxt_entry.rewrite_next
    return nxt, terms


def adic_expand(f, skp, alpha=None, max_rewrites=DEFAULT_REWRITE_CAP):
    """The unique adic expansion of a nonzero polynomial.

    Raises IterationCapError if the rewrite budget is exhausted (diagnostic
    guard; polynomial inputs over finite tables are expected to terminate).
    """
    if f.is_zero():
        raise ZeroPolyError("cannot expand the zero polynomial")
    if f.nvars != skp.nvars or f.field != skp.field:
        raise ValueError("polynomial ring does not match the table")
    alpha = normalize_alpha(skp, alpha)
    for i in f.support_variables():
        if alpha[i] == 0:
            raise ValueError(f"X{i} appears but row {i} has no key polynomials")

    zero = skp.field.zero
    cutoff = skp.truncation.cutoff
    ords = {idx: skp.entries[idx].poly.order() for idx in skp.order}

    def over_cutoff(key):
        if cutoff is None:
            return False
        return sum(e * ords[idx] for idx, e in key) > cutoff

    work = {}
    for exps, c in f.terms.items():
        key = tuple(sorted(((i, 1), e) for i, e in enumerate(exps) if e))
        if not over_cutoff(key):
            _add_monomial(work, key, c, zero)

    def violations(key):
        out = []
        for (i, j), e in key:
            if j < alpha[i] and is_finite_index(skp.entries[(i, j)].n):
                if e >= skp.entries[(i, j)].n:
                    out.append((i, j))
        return out

    rewrites = 0
    while True:
        target = None
        target_sort = None
        target_viol = None
        for key in work:
            viol = violations(key)
            if not viol:
                continue
            cand = (vdeg(dict(key), skp), key)
            if target is None or cand < target_sort:
                target, target_sort, target_viol = key, cand, viol
        if target is None:
            break
        rewrites += 1
        if rewrites > max_rewrites:
            raise IterationCapError(f"exceeded {max_rewrites} rewrites")

        index = max(target_viol)
        coeff = work.pop(target)
        n = skp.entries[index].n
        base = dict(target)
        base[index] -= n
        if base[index] == 0:
            del base[index]
        nxt, terms = _collapsed_rewrite(skp, alpha, index)

        branch = dict(base)
        branch[nxt] = branch.get(nxt, 0) + 1
        key2 = tuple(sorted(branch.items()))
        if not over_cutoff(key2):
            _add_monomial(work, key2, coeff, zero)
        for theta, mmap in terms:
            branch = dict(base)
            for idx, e in mmap.items():
                branch[idx] = branch.get(idx, 0) + e
            key2 = tuple(sorted(branch.items()))
            if not over_cutoff(key2):
                _add_monomial(work, key2, coeff * theta, zero)

    monomials = [AdicMonomial(c, dict(key)) for key, c in work.items()]
    return AdicExpansion(skp, alpha, monomials)


def exponent_from_vdeg(v, skp, alpha=None):
    """The unique adic-form exponent map with the given degree vector.

    Greedy division by the row degrees, descending positions; ties between
    equal degrees resolve to the highest position.
    """
    alpha = normalize_alpha(skp, alpha)
    if len(v) != skp.nvars:
        raise ValueError(f"degree vector needs {skp.nvars} components")
    exps = {}
    for i, target in enumerate(v):
        rem = int(target)
        if rem < 0:
            raise UnrealizableError(f"negative degree at X{i}")
        if rem and alpha[i] == 0:
            raise UnrealizableError(f"X{i} degree {rem} but row {i} is empty")
        for j in range(alpha[i], 0, -1):
            entry = skp.entries[(i, j)]
            a = rem // entry.d
            if a:
                if j < alpha[i] and is_finite_index(entry.n) and a >= entry.n:
                    raise UnrealizableError(
                        f"degree {target} at X{i} needs exponent {a} >= "
                        f"n = {entry.n} at position {j}"
                    )
                exps[(i, j)] = a
                rem -= a * entry.d
        if rem:
            raise UnrealizableError(f"degree {target} at X{i} not realizable")
    return exps


def euclidean_expand(f, skp, j=None, row=None):
    """Euclidean expansion of a row by iterated monic division.

    Returns a list of (exponent map over the row's positions, coefficient
    polynomial with zero degree in the row's variable), sorted by exponent
    map.  Exponents at positions before the cutoff ``j`` stay below their n.
    ``row`` defaults to the top row; the recursive Euclidean value path
    passes the lower rows in turn.
    """
    top = skp.nvars - 1 if row is None else row
    length = skp.row_length(top)
    if length == 0:
        raise ValueError(f"row {top} has no key polynomials")
    if j is None:
        j = length
    if not 1 <= j <= length:
        raise ValueError(f"cutoff {j} outside 1..{length}")
    if f.is_zero():
        return []

    def rec(g, jmax):
        dg = g.deg_in(top)
        applicable = [
            j2 for j2 in range(1, jmax + 1) if skp.entries[(top, j2)].d <= dg
        ]
        if not applicable:
            return {(): g}
        j0 = max(applicable)
        divisor = skp.entries[(top, j0)].poly
        d0 = skp.entries[(top, j0)].d
        coeffs = {}
        cur = g
        t = 0
        while not cur.is_zero():
            if cur.deg_in(top) < d0:
                coeffs[t] = cur
                break
            q, r = monic_divide(cur, divisor, top)
            if not r.is_zero():
                coeffs[t] = r
            cur = q
            t += 1
        out = {}
        for t, ct in coeffs.items():
            for subkey, cpoly in rec(ct, j0 - 1).items():
                key = subkey + ((j0, t),) if t else subkey
                out[key] = cpoly
        return out

    result = rec(f, j)
    # positions strictly before the cutoff stay below their index
    for key in result:
        for (pos, t) in key:
            entry = skp.entries[(top, pos)]
            assert pos == j or not is_finite_index(entry.n) or t < entry.n, key
    items = [(dict(key), cpoly) for key, cpoly in result.items()]
    items.sort(key=lambda kc: tuple(sorted(kc[0].items())))
    return items
