"""Valuations attached to a table of key polynomials.

The value of a monomial prod U_{i,j}^{e} is sum e * beta_{i,j}; the value of
a polynomial is the minimum over the monomials of its adic expansion.  The
same number can be computed through Euclidean expansions row by row, which
the tests use as an independent route.  Initial forms, the top-row delta
invariant, graded normal forms, and cutoff stabilization profiles all build
on the expansion.
"""

from fractions import Fraction

from .errors import ZeroPolyError
from .expansion import (
    AdicExpansion,
    adic_expand,
    euclidean_expand,
    vp,
)
from .ordgroup import GroupValue, is_finite_index
from .skp import normalize_alpha, validate_acceptable


class SkpValuation:
    """A table of key polynomials together with an acceptable cutoff vector."""

    def __init__(self, skp, alpha=None):
        self.skp = skp
        self.alpha = normalize_alpha(skp, alpha)
        if not validate_acceptable(skp, self.alpha):
            raise ValueError(f"{self.alpha} is not an acceptable vector")

    @property
    def dimension(self):
        return self.skp.dimension

    def zero_value(self):
        return GroupValue((0,) * self.dimension)

    def restricted(self, alpha):
        return SkpValuation(self.skp, alpha)

    def __repr__(self):
        return f"SkpValuation(alpha={self.alpha}, {self.skp.values!r})"


def monomial_value(exps, skp):
    """sum e * beta over the exponent map."""
    total = GroupValue((0,) * skp.dimension)
    for idx, e in exps.items():
        total = total + skp.entries[idx].beta.scale(e)
    return total


def value_of(f, valuation):
    """The valuation of a nonzero polynomial via its adic expansion."""
    expansion = adic_expand(f, valuation.skp, valuation.alpha)
    if not len(expansion):
        raise ZeroPolyError("no monomials survived (truncated to zero)")
    return min(monomial_value(m.exps, valuation.skp) for m in expansion)


def value_of_fraction(num, den, valuation):
    """Extension to quotients: value(num) - value(den)."""
    return value_of(num, valuation) - value_of(den, valuation)


def value_report(f, valuation):
    """Value plus a conservativeness flag under an active truncation.

    A dropped monomial has total U-order above the cutoff N, hence value at
    least (N+1) times the smallest beta-per-order ratio; the computed value
    is trustworthy exactly when it does not exceed that threshold.
    """
    val = value_of(f, valuation)
    cutoff = valuation.skp.truncation.cutoff
    if cutoff is None:
        return val, None
    skp = valuation.skp
    ratios = []
    for idx in skp.order:
        entry = skp.entries[idx]
        ratios.append(entry.beta.scale(Fraction(1, max(entry.poly.order(), 1))))
    threshold = min(ratios).scale(cutoff + 1)
    return val, val <= threshold


def initial_form(f, valuation):
    """The sub-expansion of minimal-value monomials.

    The row-final exponent tuples of the result are pairwise distinct; this
    is asserted on every call.
    """
    expansion = adic_expand(f, valuation.skp, valuation.alpha)
    if not len(expansion):
        raise ZeroPolyError("no monomials survived (truncated to zero)")
    skp = valuation.skp
    values = [monomial_value(m.exps, skp) for m in expansion]
    low = min(values)
    kept = [m for m, v in zip(expansion.monomials, values) if v == low]
    vps = [vp(m, skp, valuation.alpha) for m in kept]
    assert len(set(vps)) == len(vps), "initial-form power vectors collide"
    return AdicExpansion(skp, valuation.alpha, kept)


def value_via_euclidean(f, valuation):
    """The valuation computed through row-by-row Euclidean expansions."""
    if f.is_zero():
        raise ZeroPolyError("value of the zero polynomial")
    return _euclid_value(f, valuation, valuation.skp.nvars - 1)


def _euclid_value(f, valuation, top):
    skp = valuation.skp
    if top < 0 or f.total_degree() == 0:
        return valuation.zero_value()
    if skp.row_length(top) == 0 or valuation.alpha[top] == 0:
        if f.deg_in(top) > 0:
            raise ValueError(f"X{top} appears but row {top} is not usable")
        return _euclid_value(f, valuation, top - 1)
    best = None
    for exps, coeff in euclidean_expand(f, skp, valuation.alpha[top], row=top):
        part = _euclid_value(coeff, valuation, top - 1)
        for j, e in exps.items():
            part = part + skp.entries[(top, j)].beta.scale(e)
        if best is None or part < best:
            best = part
    return best


def delta_of(f, skp, j):
    """Max exponent of the top-row cutoff entry over initial-form monomials.

    The context is the acceptable vector with full lower rows and the top
    row cut at ``j``.
    """
    top = skp.nvars - 1
    alpha = list(skp.full_alpha())
    alpha[top] = j
    v = SkpValuation(skp, tuple(alpha))
    inf_form = initial_form(f, v)
    return max(m.exponent((top, j)) for m in inf_form)


class GradedNormalForm:
    """Initial form rewritten as p(T) * U^J in the associated graded ring.

    ``J`` is adic-bounded everywhere, including row-final positions of the
    rows in ``A`` (those with finite row-final index); ``torus`` maps a
    tuple of T-exponents (one per row of A, ascending) to its scalar
    coefficient.  T_i = U_{i,last}^{n} / (theta * U^{m}) has value zero, so
    every monomial of p(T) U^J shares the value of the input.
    """

    __slots__ = ("J", "torus", "A", "value")

    def __init__(self, J, torus, A, value):
        self.J = dict(J)
        self.torus = dict(torus)
        self.A = tuple(A)
        self.value = value

    def to_json(self, field):
        return {
            "J": {f"{i},{j}": e for (i, j), e in sorted(self.J.items())},
            "torus_rows": list(self.A),
            "p": {
                ",".join(str(e) for e in key): field.format(c)
                for key, c in sorted(self.torus.items())
            },
            "value": [str(c) for c in self.value.coords],
        }

    def __repr__(self):
        return f"GradedNormalForm(J={self.J}, A={self.A}, p={self.torus})"


def graded_normal_form(f, valuation, unconstrained_rows=()):
    """Unique homogeneous decomposition in(f) = p(T) * U^J.

    Rows whose final entry has infinite index, and rows listed in
    ``unconstrained_rows`` (declared-infinite tails), keep a free row-final
    exponent instead of contributing a torus variable.  Extraction runs from
    the highest row down, descending positions within a row.
    """
    skp = valuation.skp
    alpha = valuation.alpha
    inf_form = initial_form(f, valuation)
    value = monomial_value(inf_form.monomials[0].exps, skp)

    A = tuple(
        i
        for i in range(skp.nvars)
        if alpha[i] >= 1
        and i not in set(unconstrained_rows)
        and is_finite_index(skp.entries[(i, alpha[i])].n)
    )
    a_set = set(A)

    def bound_at(index):
        i, j = index
        entry = skp.entries[index]
        if j < alpha[i]:
            return entry.n if is_finite_index(entry.n) else None
        if i in a_set:
            return entry.n
        return None

    common_J = None
    torus = {}
    zero = skp.field.zero
    for mono in inf_form:
        exps = dict(mono.exps)
        coeff = mono.coeff
        tdeg = {i: 0 for i in A}
        while True:
            target = None
            for idx, e in exps.items():
                b = bound_at(idx)
                if b is not None and e >= b:
                    if target is None or idx > target:
                        target = idx
            if target is None:
                break
            i, j = target
            entry = skp.entries[target]
            q, r = divmod(exps[target], entry.n)
            if r:
                exps[target] = r
            else:
                del exps[target]
            coeff = coeff * entry.theta ** q
            if j == alpha[i] and i in a_set:
                tdeg[i] += q
            for idx2, m in entry.relation.items():
                if q * m:
                    exps[idx2] = exps.get(idx2, 0) + q * m
        assert monomial_value(exps, skp) == value
        if common_J is None:
            common_J = exps
        else:
            assert common_J == exps, "normal-form base exponent differs"
        key = tuple(tdeg[i] for i in A)
        cur = torus.get(key, zero) + coeff
        if cur == zero:
            torus.pop(key, None)
        else:
            torus[key] = cur
    return GradedNormalForm(common_J or {}, torus, A, value)


class StabilizationProfile:
    """Values of f under increasing top-row cutoffs."""

    __slots__ = ("cutoffs", "values", "stable_from")

    def __init__(self, cutoffs, values):
        self.cutoffs = tuple(cutoffs)
        self.values = list(values)
        self.stable_from = None
        for k in range(len(values)):
            if all(v == values[k] for v in values[k:]):
                self.stable_from = k
                break

    def to_json(self):
        return {
            "cutoffs": list(self.cutoffs),
            "values": [[str(c) for c in v.coords] for v in self.values],
            "stable_from": self.stable_from,
        }

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"StabilizationProfile([{vals}], stable_from={self.stable_from})"


def stabilization_profile(f, skp, cutoffs):
    """Value of f at each top-row cutoff, plus the first stable index."""
    top = skp.nvars - 1
    cutoffs = sorted(int(j) for j in cutoffs)
    if cutoffs and not 1 <= cutoffs[0] <= cutoffs[-1] <= skp.row_length(top):
        raise ValueError("cutoffs outside the built row")
    values = []
    for j in cutoffs:
        alpha = list(skp.full_alpha())
        alpha[top] = j
        values.append(value_of(f, SkpValuation(skp, tuple(alpha))))
    return StabilizationProfile(cutoffs, values)
