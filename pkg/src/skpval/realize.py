"""Realizing a generator sequence as the value semigroup of a valuation.

The pipeline: analyze the generators (indices, positivity, growth,
minimality), re-index them into a value table, build the key polynomials,
and verify by brute force that the value semigroup of the polynomial ring
matches the input.

Two re-indexing modes exist.  LITERAL opens a new block at every rationally
independent generator and maps the blocks to rows 1..B, leaving row 0 empty
(the construction's own indexing); for inputs whose independent generator is
followed by dependent ones this puts an infinite index at an interior
position and the table is rejected with that diagnostic.  CORRECTED instead
closes a block right after every independent generator, so independent
generators are block-final, and maps blocks to rows 0..B-1; the first
generator (always independent) then sits alone in row 0.
"""

import random
from fractions import Fraction

from .errors import InvalidTableError, VerificationFailedError
from .fields import QQ
from .ordgroup import (
    as_group_value,
    is_finite_index,
    analyze_chain,
    rational_rank,
)
from .poly import MultiPoly
from .skp import build_skp
from .valtable import compute_relations, enumerate_semigroup, validate_table
from .valuation import SkpValuation, value_of

LITERAL = "literal"
CORRECTED = "corrected"

DEFAULT_COEFF_BOUND = 4
DEFAULT_DEGREE_BOUND = 8
DEFAULT_SAMPLES = 200
DEFAULT_MINIMALITY_BOUND = 8


class SemigroupSpec:
    """A prescribed semigroup: ordered generators plus verification knobs."""

    def __init__(
        self,
        generators,
        limit_labels=(),
        field=QQ,
        coeff_bound=DEFAULT_COEFF_BOUND,
        degree_bound=DEFAULT_DEGREE_BOUND,
        samples=DEFAULT_SAMPLES,
        minimality_bound=DEFAULT_MINIMALITY_BOUND,
    ):
        self.generators = [as_group_value(g) for g in generators]
        if not self.generators:
            raise ValueError("need at least one generator")
        self.limit_labels = sorted(int(p) for p in limit_labels)
        for p in self.limit_labels:
            if not 1 <= p <= len(self.generators):
                raise ValueError(f"limit label {p} outside the generator range")
        self.field = field
        self.coeff_bound = coeff_bound
        self.degree_bound = degree_bound
        self.samples = samples
        self.minimality_bound = minimality_bound


class GeneratorAnalysis:
    """Per-generator indices, relations, and hypothesis checks."""

    def __init__(self, spec):
        gens = spec.generators
        self.chain = analyze_chain(gens)
        self.ns = [e.n for e in self.chain]
        self.positive = [e.relation.is_positive or not e.relation.coeffs
                         for e in self.chain]
        self.increasing = []
        for j in range(len(gens) - 1):
            n = self.ns[j]
            if is_finite_index(n):
                self.increasing.append(gens[j + 1] > gens[j].scale(n))
            else:
                self.increasing.append(True)
        self.minimal = []
        for j, g in enumerate(gens):
            ball = enumerate_semigroup(gens[:j], spec.minimality_bound)
            self.minimal.append(g not in ball)
        self.minimality_bound = spec.minimality_bound
        self.rational_rank = rational_rank(gens)

    @property
    def all_positive(self):
        return all(self.positive)

    @property
    def all_increasing(self):
        return all(self.increasing)

    @property
    def all_minimal(self):
        return all(self.minimal)

    @property
    def ok(self):
        return self.all_positive and self.all_increasing and self.all_minimal

    def to_json(self):
        return {
            "n": ["inf" if not is_finite_index(n) else n for n in self.ns],
            "positive": self.positive,
            "increasing": self.increasing,
            "minimal": self.minimal,
            "minimality_bound": self.minimality_bound,
            "rational_rank": self.rational_rank,
            "ok": self.ok,
        }


def analyze_generators(spec):
    return GeneratorAnalysis(spec)


class BlockAssignment:
    """Partition of generator positions into consecutive blocks.

    ``blocks`` holds 0-based generator positions; ``row_of_block[b]`` is the
    table row the block lands in.
    """

    def __init__(self, mode, blocks, row_of_block):
        self.mode = mode
        self.blocks = blocks
        self.row_of_block = row_of_block

    def table_index(self, position):
        """(i, j) of a 0-based generator position."""
        for b, block in enumerate(self.blocks):
            if position in block:
                return (self.row_of_block[b], block.index(position) + 1)
        raise KeyError(position)

    def to_json(self):
        return {
            "mode": self.mode,
            "blocks": [[p + 1 for p in block] for block in self.blocks],
            "rows": self.row_of_block,
        }


class ReindexResult:
    def __init__(self, blocks, table, validation, analysis):
        self.blocks = blocks
        self.table = table
        self.validation = validation
        self.analysis = analysis


def reindex(spec, mode):
    """Partition the generators into blocks and emit the induced table."""
    if mode not in (LITERAL, CORRECTED):
        raise ValueError(f"unknown mode {mode!r}")
    analysis = analyze_generators(spec)
    ns = analysis.ns

    blocks = []
    if mode == LITERAL:
        for p, n in enumerate(ns):
            if not is_finite_index(n):
                blocks.append([])
            blocks[-1].append(p)
        row_of_block = [b + 1 for b in range(len(blocks))]
        num_rows = len(blocks) + 1
    else:
        current = []
        for p, n in enumerate(ns):
            current.append(p)
            if not is_finite_index(n):
                blocks.append(current)
                current = []
        if current:
            blocks.append(current)
        row_of_block = list(range(len(blocks)))
        num_rows = len(blocks)

    raw_rows = [[] for _ in range(num_rows)]
    for b, block in enumerate(blocks):
        for p in block:
            raw_rows[row_of_block[b]].append(spec.generators[p])

    assignment = BlockAssignment(mode, blocks, row_of_block)
    limit_labels = {}
    for t, pos in enumerate(spec.limit_labels, start=1):
        limit_labels[assignment.table_index(pos - 1)] = t
    table = compute_relations(raw_rows, limit_labels=limit_labels)
    validation = validate_table(table)
    return ReindexResult(assignment, table, validation, analysis)


class RealizationResult:
    def __init__(self, valuation, table, blocks, analysis, report):
        self.valuation = valuation
        self.table = table
        self.blocks = blocks
        self.analysis = analysis
        self.report = report


def realize(spec, mode=CORRECTED, thetas=None):
    """Build the valuation; raises InvalidTableError with diagnostics."""
    res = reindex(spec, mode)
    if not res.validation.is_sequence_of_values:
        failures = "; ".join(repr(c) for c in res.validation.failures)
        raise InvalidTableError(
            f"re-indexed table is not a sequence of values: {failures}",
            res.validation,
        )
    skp = build_skp(res.table, thetas=thetas, field=spec.field)
    valuation = SkpValuation(skp)
    num_vars = sum(1 for i in range(skp.nvars) if skp.row_length(i) > 0)
    r_rk = res.analysis.rational_rank
    from .classify import inductive_invariants

    invariants = inductive_invariants(skp)
    # zero-dimensionality is backed by the equality case r.rk = dim R; when
    # the mode spends more variables than the rational rank the claim is
    # not backed and the torus count shows up as transcendence degree
    report = {
        "num_vars": num_vars,
        "r_rk": r_rk,
        "tr_deg": invariants.tr_deg,
        "abhyankar_equality": r_rk == num_vars,
        "zero_dimensional_backed": r_rk == num_vars,
    }
    return RealizationResult(valuation, res.table, res.blocks, res.analysis, report)


class VerificationVerdict:
    def __init__(self, passed, attainment, containment_checked, threshold, seed):
        self.passed = passed
        self.attainment = attainment
        self.containment_checked = containment_checked
        self.threshold = threshold
        self.seed = seed

    def to_json(self):
        return {
            "passed": self.passed,
            "attainment": [
                {
                    "gamma": [str(c) for c in g.coords],
                    "witness": list(w),
                    "poly": s,
                }
                for g, w, s in self.attainment
            ],
            "containment_checked": self.containment_checked,
            "window_threshold": [str(c) for c in self.threshold.coords],
            "seed": self.seed,
        }


def random_polynomial(rng, nvars, max_degree, field=QQ, variables=None, max_terms=5):
    """A random nonzero polynomial with small integer coefficients."""
    if variables is None:
        variables = list(range(nvars))
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            while True:
                exps = [0] * nvars
                for v in variables:
                    exps[v] = rng.randint(0, max_degree)
                if sum(exps) <= max_degree:
                    break
            c = rng.randint(-5, 5)
            if c == 0:
                c = 1
            terms[tuple(exps)] = field.of(Fraction(c))
        f = MultiPoly(nvars, terms, field)
        if not f.is_zero():
            return f


def verify_realization(
    valuation,
    spec,
    assignment,
    coeff_bound=None,
    degree_bound=None,
    samples=None,
    seed=0,
):
    """Brute-force check that the value semigroup matches the input.

    Attainment: every semigroup element within the coefficient window is the
    value of an explicit product of key polynomials, expanded to raw
    monomial form and re-valued through the adic expansion.  Containment:
    random polynomials take values inside the window or beyond its
    completeness threshold (K+1 times the smallest generator).

    Raises VerificationFailedError with the offending element.
    """
    coeff_bound = spec.coeff_bound if coeff_bound is None else coeff_bound
    degree_bound = spec.degree_bound if degree_bound is None else degree_bound
    samples = spec.samples if samples is None else samples
    skp = valuation.skp
    gens = spec.generators

    ball = enumerate_semigroup(gens, coeff_bound, with_witnesses=True)
    attainment = []
    for gamma, witness in ball:
        exps = {}
        for p, a in enumerate(witness):
            if a:
                exps[assignment.table_index(p)] = a
        witness_poly = skp.monomial_poly(exps)
        got = value_of(witness_poly, valuation) if not witness_poly.is_zero() else None
        if got != gamma:
            raise VerificationFailedError(
                f"witness for {gamma} evaluates to {got}", offending=gamma
            )
        attainment.append((gamma, witness, str(witness_poly)))

    window = {g.coords for g, _ in ball}
    threshold = min(gens).scale(coeff_bound + 1)
    used_vars = [i for i in range(skp.nvars) if skp.row_length(i) > 0]
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        f = random_polynomial(rng, skp.nvars, degree_bound, skp.field, used_vars)
        val = value_of(f, valuation)
        if val.coords not in window and not val >= threshold:
            raise VerificationFailedError(
                f"value {val} of {f} escapes the semigroup window",
                offending=val,
            )
        checked += 1
    return VerificationVerdict(True, attainment, checked, threshold, seed)


class RankJumpReport:
    def __init__(self, checks):
        self.checks = checks

    @property
    def passed(self):
        return all(ok for _, _, ok in self.checks)

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [
                {"position": p, "reason": why, "ok": ok}
                for p, why, ok in self.checks
            ],
        }


def rank_jump_check(spec):
    """At limit labels and infinite-index positions the rational rank of the
    generator prefix must grow by exactly one."""
    gens = spec.generators
    ns = [e.n for e in analyze_chain(gens)]
    labeled = set(spec.limit_labels)
    checks = []
    for pos in range(1, len(gens) + 1):
        reasons = []
        if pos in labeled:
            reasons.append("limit-label")
        if not is_finite_index(ns[pos - 1]):
            reasons.append("n=inf")
        if not reasons:
            continue
        jump = rational_rank(gens[:pos]) - rational_rank(gens[: pos - 1])
        checks.append((pos, "+".join(reasons), jump == 1))
    return RankJumpReport(checks)
