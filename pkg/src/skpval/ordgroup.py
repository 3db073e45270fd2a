"""Totally ordered abelian groups realized as Q^r with lexicographic order.

A :class:`GroupValue` is an immutable vector of exact rationals compared
lexicographically (first coordinate most significant).  On top of that this
module provides the arithmetic a well-ordered generator sequence needs:

* ``subgroup_index(g, previous)`` -- the least r >= 1 with r*g in the group
  generated by ``previous`` (INFINITY when no multiple lands there),
* ``canonical_representation(n, g, previous)`` -- the unique representation
  n*g = sum m_j gamma_j with 0 <= m_j < n_j at positions of finite index,
* ``rational_rank`` and ``isolated_level`` for the numerical invariants.

All computations are exact: values are scaled to a common denominator and
handed to the integer-lattice solver.
"""

from fractions import Fraction
from math import gcd, inf as INFINITY

from . import intlattice
from .errors import DimensionMismatchError, NotInGroupError


def is_finite_index(n):
    """True for an integer index, False for the INFINITY marker."""
    return n != INFINITY


class GroupValue:
    """An element of Q^r under the lexicographic order.

    Instances are immutable; addition and integer/rational scaling are
    componentwise and exact.  Comparisons require equal dimension.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        if isinstance(coords, (int, Fraction, str)):
            coords = (coords,)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("GroupValue is immutable")

    @property
    def dim(self):
        return len(self.coords)

    def _check_dim(self, other):
        if not isinstance(other, GroupValue):
            raise TypeError(f"expected GroupValue, got {other!r}")
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other):
        self._check_dim(other)
        return GroupValue(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check_dim(other)
        return GroupValue(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupValue(tuple(-a for a in self.coords))

    def scale(self, k):
        k = Fraction(k)
        return GroupValue(tuple(k * a for a in self.coords))

    def __mul__(self, k):
        return self.scale(k)

    __rmul__ = __mul__

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def __eq__(self, other):
        if not isinstance(other, GroupValue):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        self._check_dim(other)
        return self.coords < other.coords

    def __le__(self, other):
        self._check_dim(other)
        return self.coords <= other.coords

    def __gt__(self, other):
        self._check_dim(other)
        return self.coords > other.coords

    def __ge__(self, other):
        self._check_dim(other)
        return self.coords >= other.coords

    def __repr__(self):
        if self.dim == 1:
            return f"GroupValue({self.coords[0]})"
        return f"GroupValue(({', '.join(str(c) for c in self.coords)}))"

    def __str__(self):
        if self.dim == 1:
            return str(self.coords[0])
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def as_group_value(x, dim=None):
    """Coerce a scalar, sequence, or GroupValue; optionally check dimension."""
    v = x if isinstance(x, GroupValue) else GroupValue(x)
    if dim is not None and v.dim != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {v.dim}")
    return v


def lex_compare(a, b):
    """-1, 0, or 1 as a <, ==, > b in the lexicographic order."""
    a = as_group_value(a)
    b = as_group_value(b)
    a._check_dim(b)
    if a.coords < b.coords:
        return -1
    if a.coords > b.coords:
        return 1
    return 0


def _integer_rows(values):
    """Scale a family of GroupValues to integer rows by the common denominator."""
    denom = 1
    for v in values:
        for c in v.coords:
            denom = denom * c.denominator // gcd(denom, c.denominator)
    return [[int(c * denom) for c in v.coords] for v in values], denom


def subgroup_index(gamma, previous):
    """Least r >= 1 with r*gamma in the group generated by ``previous``.

    Returns INFINITY when no positive multiple lands in the group; in
    particular for a nonzero gamma over an empty family.
    """
    gamma = as_group_value(gamma)
    previous = [as_group_value(v, gamma.dim) for v in previous]
    if gamma.is_zero():
        return 1
    if not previous:
        return INFINITY
    rows, _ = _integer_rows([gamma] + previous)
    kernel = intlattice.left_kernel(rows)
    n0 = 0
    for vec in kernel:
        n0 = gcd(n0, vec[0])
    if n0 == 0:
        return INFINITY
    return n0


class Representation:
    """Coefficients m_j of a representation n*gamma = sum m_j gamma_j.

    Stored sparsely as position -> nonzero integer.  ``is_positive`` records
    whether every coefficient is a natural number.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {j: int(m) for j, m in dict(coeffs).items() if m != 0}

    @property
    def is_positive(self):
        return all(m > 0 for m in self.coeffs.values())

    @property
    def support(self):
        return frozenset(self.coeffs)

    def evaluate(self, previous):
        """Reconstruct sum m_j * previous[j] as a GroupValue."""
        if not previous:
            raise ValueError("cannot evaluate over an empty family")
        dim = as_group_value(previous[0]).dim
        total = GroupValue((0,) * dim)
        for j, m in self.coeffs.items():
            total = total + as_group_value(previous[j]).scale(m)
        return total

    def __eq__(self, other):
        return isinstance(other, Representation) and self.coeffs == other.coeffs

    def __repr__(self):
        inner = ", ".join(f"{j}: {m}" for j, m in sorted(self.coeffs.items()))
        return "Representation({" + inner + "})"


def canonical_representation(n, gamma, previous, ns=None, relations=None):
    """The unique representation of n*gamma over ``previous``.

    Coefficients satisfy 0 <= m_j < n_j at positions of finite index and are
    free integers at positions of infinite index.  ``ns`` and ``relations``
    describe the earlier entries; when omitted they are recomputed by chaining
    ``subgroup_index`` / ``canonical_representation`` along the prefix.

    Raises NotInGroupError when n*gamma is outside the generated group.
    """
    gamma = as_group_value(gamma)
    previous = [as_group_value(v, gamma.dim) for v in previous]
    if ns is None or relations is None:
        chain = analyze_chain(previous)
        ns = [e.n for e in chain]
        relations = [e.relation for e in chain]

    target = gamma.scale(n)
    if target.is_zero():
        return Representation({})
    rows, denom = _integer_rows(previous + [target])
    sol = intlattice.solve_combination(rows[:-1], rows[-1])
    if sol is None:
        raise NotInGroupError(f"{n}*{gamma} is not in the generated group")

    # descending Euclidean reduction: fold the excess at the greatest index
    # with finite n into strictly earlier positions via its stored relation
    p = list(sol)
    for j in range(len(p) - 1, -1, -1):
        nj = ns[j]
        if not is_finite_index(nj):
            continue
        if 0 <= p[j] < nj:
            continue
        q, r = divmod(p[j], nj)
        p[j] = r
        for j2, m in relations[j].coeffs.items():
            p[j2] += q * m
    rep = Representation({j: m for j, m in enumerate(p)})
    assert rep.evaluate(previous) == target if previous else target.is_zero()
    return rep


class ChainEntry:
    """Per-position data of an analyzed generator sequence."""

    __slots__ = ("value", "n", "relation")

    def __init__(self, value, n, relation):
        self.value = value
        self.n = n
        self.relation = relation

    def __repr__(self):
        n = "inf" if not is_finite_index(self.n) else self.n
        return f"ChainEntry({self.value}, n={n}, rel={self.relation})"


def analyze_chain(values):
    """Index and canonical relation of every prefix position.

    Position j gets n_j = subgroup_index over values[:j]; when n_j is finite
    the canonical representation of n_j*values[j] is attached, otherwise an
    empty relation.
    """
    values = [as_group_value(v) for v in values]
    entries = []
    ns = []
    relations = []
    for j, v in enumerate(values):
        n = subgroup_index(v, values[:j])
        if is_finite_index(n):
            rel = canonical_representation(n, v, values[:j], ns=ns, relations=relations)
        else:
            rel = Representation({})
        entries.append(ChainEntry(v, n, rel))
        ns.append(n)
        relations.append(rel)
    return entries


def rational_rank(values):
    """Dimension of the Q-span of the given values."""
    values = [as_group_value(v) for v in values]
    values = [v for v in values if not v.is_zero()]
    if not values:
        return 0
    rows, _ = _integer_rows(values)
    return intlattice.rank(rows)


def span_levels(values):
    """Isolated levels achieved by the Q-span of the values.

    For the lexicographic order on Q^r the isolated subgroups are
    Delta_k = {first r-k coordinates zero}; the span meets a new Delta_k
    exactly at the levels r - c over its pivot columns c.
    """
    values = [as_group_value(v) for v in values]
    values = [v for v in values if not v.is_zero()]
    if not values:
        return frozenset()
    r = values[0].dim
    rows, _ = _integer_rows(values)
    return frozenset(r - c for c in intlattice.pivot_columns(rows))


def isolated_level(v):
    """Least k with v in Delta_k; Delta_0 = {0}."""
    v = as_group_value(v)
    for pos, c in enumerate(v.coords):
        if c != 0:
            return v.dim - pos
    return 0


def format_index(n):
    return "inf" if not is_finite_index(n) else int(n)


def parse_index(s):
    if s == "inf":
        return INFINITY
    return int(s)
