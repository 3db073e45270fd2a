import itertools
from fractions import Fraction
from math import inf

import pytest

from skpval import (
    GroupValue,
    InvalidTableError,
    LimitTail,
    NoCutoffError,
    NonStabilizingError,
    ThetaZeroError,
    TruncationContext,
    build_skp,
    compute_relations,
    minimal_pseudo_skp,
    parse_poly,
    unroll_limit,
    validate_acceptable,
)



def P(text, nvars=2):
    return parse_poly(text, nvars)


class TestBuild:
    def test_plane_curve_golden(self, diffskp):
        assert diffskp.entries[(0, 1)].poly == P("X0")
        assert diffskp.entries[(1, 1)].poly == P("X1")
        assert diffskp.entries[(1, 2)].poly == P("X1^2 - X0^3")
        assert diffskp.entries[(1, 3)].poly == P("X1^2 - X0^3 - X0^3*X1")
        assert [diffskp.entries[k].d for k in diffskp.order] == [1, 1, 2, 2]

    def test_swapped_coordinates_golden(self, diffskp_swapped):
        v = diffskp_swapped
        assert v.entries[(1, 2)].poly == P("X1^3 - X0^2")
        # theta = -1 at (1,2) flips the sign of the correction term
        assert v.entries[(1, 3)].poly == P("X1^3 - X0^2 + X0^3")

    def test_prime_tower_golden(self, example2):
        assert example2.entries[(1, 2)].poly == P("X1^2 - X0")
        assert example2.entries[(1, 3)].poly == P("(X1^2 - X0)^3 - X0^4")
        t = example2.values
        assert t.entries[(1, 1)].n == 2
        assert t.entries[(1, 2)].n == 3
        assert t.entries[(1, 2)].relation == {(0, 1): 4}
        assert t.entries[(1, 3)].relation == {(0, 1): 21}

    def test_monic_degree_support_invariants(self, diffskp, example2, example1):
        for skp in (diffskp, example2, example1):
            for (i, j), e in skp.entries.items():
                assert e.poly.is_monic_in(i)
                assert e.poly.deg_in(i) == e.d
                assert all(v <= i for v in e.poly.support_variables())
                if j > 1:
                    prev = skp.entries[(i, j - 1)]
                    assert e.d == prev.n * prev.d

    def test_rejects_invalid_table(self):
        t = compute_relations([[], [4, 6, 13]])
        with pytest.raises(InvalidTableError):
            build_skp(t)

    def test_rejects_zero_theta(self, diffskp_table):
        with pytest.raises(ThetaZeroError):
            build_skp(diffskp_table, thetas={(1, 1): 0})

    def test_empty_row_zero_allowed_when_valid(self):
        skp = build_skp(compute_relations([[], [(1, 0)], [(0, 1)]]))
        assert (0, 1) not in skp.entries
        assert skp.entries[(1, 1)].poly == parse_poly("X1", 3)


class TestExample1:
    def test_successor_recurrence(self, example1):
        # U_next = U_cur - X0^j * X1^(n+2) across the whole truncated row
        row_len = example1.row_length(2)
        for j in range(1, row_len):
            cur = example1.entries[(2, j)]
            nxt = example1.entries[(2, j + 1)]
            _, mid, last = cur.beta.coords
            correction = parse_poly("X0", 3) ** int(last) * parse_poly("X1", 3) ** int(mid)
            assert nxt.poly == cur.poly - correction

    def test_all_interior_n_one(self, example1):
        for j in range(1, example1.row_length(2)):
            assert example1.entries[(2, j)].n == 1

    def test_truncated_limit_flagged(self, example1):
        assert example1.entries[(2, 5)].truncated_limit
        assert example1.entries[(2, 10)].truncated_limit


class TestUnrollLimit:
    def tail_table(self):
        rows = [[GroupValue((0, 0, 1))], [GroupValue((0, 1, 0))], [GroupValue((0, 2, 1))]]
        return build_skp(compute_relations(rows))

    def test_block_zero_truncation(self):
        skp = self.tail_table()
        tail = LimitTail(2, 2, {(0, 1): (1, 1), (1, 1): (2, 0)}, depth=10)
        res = unroll_limit(skp, tail, TruncationContext(5))
        assert res.poly == parse_poly("X2 - X0*X1^2 - X0^2*X1^2 - X0^3*X1^2", 3)
        assert res.report.stabilized
        assert res.report.summands_used == 3

    def test_depth_zero_unchanged(self):
        skp = self.tail_table()
        tail = LimitTail(2, 2, {(0, 1): (1, 1), (1, 1): (2, 0)}, depth=0)
        res = unroll_limit(skp, tail, TruncationContext(5))
        assert res.poly == parse_poly("X2", 3)
        assert not res.report.stabilized

    def test_constant_order_never_stabilizes(self):
        skp = self.tail_table()
        tail = LimitTail(2, 2, {(0, 1): (2, 0)}, depth=8)
        with pytest.raises(NonStabilizingError):
            unroll_limit(skp, tail, TruncationContext(5))

    def test_requires_cutoff(self):
        skp = self.tail_table()
        tail = LimitTail(2, 2, {(0, 1): (1, 1)}, depth=4)
        with pytest.raises(NoCutoffError):
            unroll_limit(skp, tail, TruncationContext(None))

    def test_build_with_declared_tail(self):
        rows = [
            [GroupValue((0, 0, 1))],
            [GroupValue((0, 1, 0))],
            [GroupValue((0, 2, 1)), GroupValue((0, 3, 0))],
        ]
        table = compute_relations(rows, limit_labels={(2, 2): 1})
        tail = LimitTail(2, 2, {(0, 1): (1, 1), (1, 1): (2, 0)}, depth=20)
        skp = build_skp(table, truncation=TruncationContext(5), limit_tails=[tail])
        assert skp.entries[(2, 2)].poly == parse_poly(
            "X2 - X0*X1^2 - X0^2*X1^2 - X0^3*X1^2", 3
        )
        assert not skp.entries[(2, 2)].truncated_limit
        assert skp.entries[(2, 2)].unroll_report.stabilized
        # the predecessor's rewrite carries the whole accumulated tail
        assert len(skp.entries[(2, 1)].rewrite_terms) == 3


class TestMinimalPseudo:
    def test_drops_interior_n_one(self, diffskp):
        reduced = minimal_pseudo_skp(diffskp)
        assert reduced.values.rows[0] == [GroupValue(2)]
        assert reduced.values.rows[1] == [GroupValue(3), GroupValue(10)]
        # the kept final keeps its original polynomial
        assert reduced.entries[(1, 2)].poly == diffskp.entries[(1, 3)].poly
        assert reduced.entries[(1, 2)].d == 2

    def test_unchanged_when_all_n_above_one(self, example2):
        reduced = minimal_pseudo_skp(example2)
        assert reduced.values.row_lengths() == example2.values.row_lengths()

    def test_example1_row2_reduces_to_first_and_final(self, example1):
        reduced = minimal_pseudo_skp(example1)
        assert reduced.row_length(2) == 2
        assert reduced.entries[(2, 1)].poly == example1.entries[(2, 1)].poly
        final = example1.row_length(2)
        assert reduced.entries[(2, 2)].poly == example1.entries[(2, final)].poly

    def test_collapsed_rewrite_chain(self, diffskp):
        reduced = minimal_pseudo_skp(diffskp)
        entry = reduced.entries[(1, 1)]
        assert entry.rewrite_next == (1, 2)
        # U11^2 = U12' + theta*X0^3 + theta*X0^3*U11 across the dropped chain
        assert entry.rewrite_terms == [
            (Fraction(1), {(0, 1): 3}),
            (Fraction(1), {(0, 1): 3, (1, 1): 1}),
        ]


class TestAcceptableVectors:
    def test_full_vector_passes(self, diffskp):
        assert validate_acceptable(diffskp, diffskp.full_alpha())

    def test_all_ones_passes(self, diffskp, example2, example1):
        for skp in (diffskp, example2, example1):
            assert validate_acceptable(skp, (1,) * skp.nvars)

    def test_intermediate(self, diffskp):
        assert validate_acceptable(diffskp, (1, 2))

    def test_closure_violation(self):
        # the interior row-2 entry (1,1) = (0,1) + (1,0) references the
        # row-final (1,2); keeping it interior while cutting row 1 at its
        # first entry breaks closure
        t = compute_relations([[(0, 1)], [(0, 2), (1, 0)], [(1, 1), (2, 2)]])
        assert t.entries[(2, 1)].relation == {(0, 1): 1, (1, 2): 1}
        skp = build_skp(t)
        assert validate_acceptable(skp, (1, 2, 2))
        assert not validate_acceptable(skp, (1, 1, 2))
        # with row 2 cut at its first entry that relation is out of scope
        assert validate_acceptable(skp, (1, 1, 1))


class TestDegreeInequality:
    def test_bounded_products_stay_below(self, diffskp, example2):
        # sum p_j' * d_j' < d_j for every exponent box below the indices
        for skp in (diffskp, example2):
            for i in range(skp.nvars):
                length = skp.row_length(i)
                for j in range(2, length + 1):
                    dj = skp.entries[(i, j)].d
                    ranges = []
                    for j2 in range(1, j):
                        n = skp.entries[(i, j2)].n
                        ranges.append(range(0, int(n) if n != inf else 3))
                    for combo in itertools.product(*ranges):
                        total = sum(
                            p * skp.entries[(i, j2 + 1)].d
                            for j2, p in enumerate(combo)
                        )
                        assert total < dj
