"""Sparse exact multivariate polynomials over Q or a prime field.

Terms are stored as a map from exponent tuple (one entry per variable) to a
nonzero coefficient.  Arithmetic is exact; nothing here ever introduces a
denominator that the scalar field does not already carry.

The one nontrivial algorithm is ``monic_divide``: division with remainder in
a chosen variable X_i by a divisor that is monic in X_i (its leading
X_i-coefficient is the constant 1), which keeps quotient and remainder in
the same coefficient ring.
"""

import re

from .errors import NotMonicError, PolyParseError, ZeroPolyError
from .fields import QQ


class MultiPoly:
    """A sparse polynomial in variables X0..X_{nvars-1}."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars, terms=None, field=QQ):
        self.nvars = nvars
        self.field = field
        clean = {}
        for exps, c in (terms or {}).items():
            c = field.of(c) if not _is_field_elem(c, field) else c
            if c == field.zero:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            clean[exps] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars, field=QQ):
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, c, nvars, field=QQ):
        return cls(nvars, {(0,) * nvars: field.of(c)}, field)

    @classmethod
    def one(cls, nvars, field=QQ):
        return cls.constant(1, nvars, field)

    @classmethod
    def variable(cls, i, nvars, field=QQ):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): field.of(1)}, field)

    @classmethod
    def monomial(cls, exps, c, nvars, field=QQ):
        return cls(nvars, {tuple(exps): field.of(c)}, field)

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {other!r}")
        if other.nvars != self.nvars or other.field != self.field:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            c2 = terms.get(e, self.field.zero) + c
            if c2 == self.field.zero:
                terms.pop(e, None)
            else:
                terms[e] = c2
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = terms
        return out

    def __neg__(self):
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        terms = {}
        zero = self.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(e, zero) + c1 * c2
                if c == zero:
                    terms.pop(e, None)
                else:
                    terms[e] = c
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.field.of(c)
        if c == self.field.zero:
            return MultiPoly.zero(self.nvars, self.field)
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- degrees -----------------------------------------------------------

    def deg_in(self, i):
        """Degree in X_i; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self):
        """Minimum total degree over the terms."""
        if not self.terms:
            raise ZeroPolyError("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def coefficient_of(self, i, k):
        """The coefficient of X_i^k, as a polynomial with zero X_i-degree."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                terms[tuple(e2)] = c
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = terms
        return out

    def is_monic_in(self, i):
        """True when the leading X_i-coefficient is the constant 1."""
        d = self.deg_in(i)
        if d < 0:
            return False
        lead = self.coefficient_of(i, d)
        return lead.terms == {(0,) * self.nvars: self.field.one}

    def truncate(self, cutoff):
        """Drop all terms of total degree above the cutoff."""
        if cutoff is None:
            return self
        out = MultiPoly.zero(self.nvars, self.field)
        out.terms = {e: c for e, c in self.terms.items() if sum(e) <= cutoff}
        return out

    def support_variables(self):
        return {i for e in self.terms for i in range(self.nvars) if e[i] > 0}

    # -- display -----------------------------------------------------------

    def sorted_terms(self):
        """Terms ordered for display: lexicographic on exponent vectors,
        highest variable first, descending."""
        return sorted(
            self.terms.items(), key=lambda ec: tuple(reversed(ec[0])), reverse=True
        )

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"MultiPoly({poly_to_str(self)})"

    def to_json(self):
        return {
            ",".join(str(a) for a in e): self.field.format(c)
            for e, c in self.sorted_terms()
        }


def _is_field_elem(c, field):
    return type(c) is type(field.zero) and not isinstance(c, int)


def order_of(f):
    """Minimum total degree of a nonzero polynomial."""
    return f.order()


def monic_divide(f, g, i):
    """Division with remainder by a divisor monic in X_i.

    Returns (q, rem) with f = q*g + rem exactly and deg_{X_i}(rem) <
    deg_{X_i}(g).  Since g is monic in X_i no coefficient division happens,
    so quotient and remainder stay in the same ring.
    """
    f._check(g)
    if not g.is_monic_in(i):
        raise NotMonicError(f"divisor is not monic in X{i}")
    dg = g.deg_in(i)
    q = MultiPoly.zero(f.nvars, f.field)
    rem = f
    xi = MultiPoly.variable(i, f.nvars, f.field)
    while not rem.is_zero() and rem.deg_in(i) >= dg:
        d = rem.deg_in(i)
        lead = rem.coefficient_of(i, d)
        t = lead * xi ** (d - dg)
        q = q + t
        rem = rem - t * g
        assert rem.is_zero() or rem.deg_in(i) < d
    return q, rem


class TruncationContext:
    """Optional total-degree cutoff applied after arithmetic steps."""

    __slots__ = ("cutoff",)

    def __init__(self, cutoff=None):
        if cutoff is not None and cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        self.cutoff = cutoff

    @property
    def active(self):
        return self.cutoff is not None

    def apply(self, f):
        return f.truncate(self.cutoff) if self.active else f

    def __repr__(self):
        return f"TruncationContext({self.cutoff})"


# -- text form ---------------------------------------------------------------


def poly_to_str(f):
    """Deterministic text form, e.g. ``X1^2 - 3/2*X0^3``."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        vars_part = "*".join(
            f"X{i}" + (f"^{k}" if k > 1 else "")
            for i, k in enumerate(e)
            if k > 0
        )
        cs = f.field.format(c)
        negative = cs.startswith("-")
        mag = cs[1:] if negative else cs
        if vars_part:
            body = vars_part if mag == "1" else f"{mag}*{vars_part}"
        else:
            body = mag
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>X\d+)|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"bad character at {text[pos:]!r}")
            break
        tokens.append(m)
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent for ``expr := term (('+'|'-') term)*``,
    ``term := factor ('*' factor)*``, ``factor := atom ('^' nat)?``,
    ``atom := rational | Xk | '(' expr ')' | '-' factor``."""

    def __init__(self, tokens, nvars, field):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.field = field

    def peek(self):
        if self.pos >= len(self.tokens):
            return None, None
        m = self.tokens[self.pos]
        for kind in ("num", "var", "op"):
            if m.group(kind):
                return kind, m.group(kind)
        return None, None

    def take(self):
        kind, val = self.peek()
        self.pos += 1
        return kind, val

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}, got {val!r}")

    def parse(self):
        f = self.expr()
        if self.pos != len(self.tokens):
            raise PolyParseError(f"trailing input at token {self.pos}")
        return f

    def expr(self):
        kind, val = self.peek()
        f = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            else:
                return f

    def factor(self):
        f = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in (val or ""):
                raise PolyParseError("exponent must be a natural number")
            f = f ** int(val)
        return f

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.constant(self.field.parse(val), self.nvars, self.field)
        if kind == "var":
            i = int(val[1:])
            if i >= self.nvars:
                raise PolyParseError(
                    f"variable {val} out of range (ring has X0..X{self.nvars - 1})"
                )
            return MultiPoly.variable(i, self.nvars, self.field)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        if kind == "op" and val == "-":
            return -self.factor()
        raise PolyParseError(f"unexpected token {val!r}")


def parse_poly(text, nvars, field=QQ):
    """Parse the human text form into a MultiPoly."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text")
    return _Parser(tokens, nvars, field).parse()


def poly_from_json(data, nvars, field=QQ):
    terms = {}
    for key, cs in data.items():
        exps = tuple(int(a) for a in key.split(","))
        terms[exps] = field.parse(cs) if isinstance(cs, str) else field.of(cs)
    return MultiPoly(nvars, terms, field)
