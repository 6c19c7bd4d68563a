import random
from fractions import Fraction

import pytest

from csck.polynomials import (
    MultiPoly3,
    TruncSeries2,
    UniPoly,
    X,
    Y,
    Z,
    count_roots,
    square_free_part,
    sturm_chain,
    sturm_isolate,
)

# The golden 13-term polynomial for (m, n) = (1, 2), transcribed term by term.
F_1_2 = MultiPoly3(
    {
        (2, 3, 2): 120,
        (2, 2, 3): -420,
        (2, 1, 4): 390,
        (2, 0, 5): -120,
        (1, 4, 2): 60,
        (1, 3, 3): -90,
        (1, 2, 4): 150,
        (1, 1, 5): -99,
        (1, 0, 6): 24,
        (0, 4, 3): -90,
        (0, 3, 4): 90,
        (0, 2, 5): -45,
        (0, 1, 6): 9,
    }
)


def _random_poly(rng, max_degree=3, n_terms=5) -> MultiPoly3:
    terms = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_degree) for _ in range(3))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return MultiPoly3(terms)


class TestMultiPoly3:
    def test_product_difference_of_squares(self):
        assert (X + Y) * (X - Y) == X * X - Y * Y

    def test_product_with_zero(self):
        p = _random_poly(random.Random(5))
        assert p * MultiPoly3.zero() == MultiPoly3.zero()

    def test_square_of_difference(self):
        assert (X - Z) * (X - Z) == MultiPoly3({(2, 0, 0): 1, (1, 0, 1): -2, (0, 0, 2): 1})

    def test_canonical_form_has_no_zero_terms(self):
        p = MultiPoly3({(1, 0, 0): 1, (0, 1, 0): -1}) + MultiPoly3({(0, 1, 0): 1})
        assert dict(p.terms()) == {(1, 0, 0): Fraction(1)}
        rng = random.Random(7)
        for _ in range(20):
            p, q = _random_poly(rng), _random_poly(rng)
            for poly in (p + q, p - q, p * q, -p):
                assert all(c != 0 for _, c in poly.terms())

    def test_evaluate_golden_polynomial(self):
        assert F_1_2.evaluate((3, 4, 2)) == -2304

    def test_evaluate_simple(self):
        p = MultiPoly3({(2, 1, 0): 1, (0, 0, 1): -1})  # x^2 y - z
        assert p.evaluate((1, 1, 1)) == 0

    def test_evaluate_at_origin_gives_constant_term(self):
        rng = random.Random(11)
        for _ in range(10):
            p = _random_poly(rng) + MultiPoly3.constant(Fraction(rng.randint(-5, 5)))
            assert p.evaluate((0, 0, 0)) == p.coefficient((0, 0, 0))

    def test_coefficient_of_golden_leading_term(self):
        assert F_1_2.coefficient((2, 3, 2)) == 120
        assert F_1_2.coefficient((9, 9, 9)) == 0

    def test_canonical_term_order_is_graded_lex_descending(self):
        exponents = [e for e, _ in F_1_2.terms()]
        assert exponents == sorted(exponents, key=lambda e: (sum(e), e), reverse=True)
        assert exponents[0] == (2, 3, 2)
        assert exponents[-1] == (0, 1, 6)

    def test_json_round_trip(self):
        obj = F_1_2.to_json_terms()
        assert obj[0] == {"e": [2, 3, 2], "c": "120"}
        assert MultiPoly3.from_json_terms(obj) == F_1_2

    def test_str_matches_golden_term_order(self):
        assert str(F_1_2).startswith("120*x^2*y^3*z^2 - 420*x^2*y^2*z^3")


class TestRestrictToLine:
    def test_constant_on_plane(self):
        p = X + Y + Z
        c = (Fraction(1, 3), Fraction(4, 9), Fraction(2, 9))
        restricted = p.restrict_to_line((1, 0, 0), c)
        assert restricted == UniPoly([1])

    def test_linear_coordinate(self):
        restricted = Z.restrict_to_line((Fraction(1, 2), Fraction(1, 2), 0), (0, 0, 1))
        assert restricted == UniPoly([0, 1])

    def test_golden_vanishes_to_order_five_along_l1(self):
        c = (Fraction(3, 9), Fraction(4, 9), Fraction(2, 9))
        restricted = F_1_2.restrict_to_line((1, 0, 0), c)
        assert restricted.order() == 5
        assert restricted.degree <= 7

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(ValueError):
            X.restrict_to_line((1, 2, 3), (1, 2, 3))

    def test_agrees_with_pointwise_evaluation(self):
        rng = random.Random(99)
        for _ in range(5):
            p = _random_poly(rng)
            start = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
            end = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
            if start == end:
                continue
            restricted = p.restrict_to_line(start, end)
            for _ in range(20):
                t = Fraction(rng.randint(-12, 12), rng.randint(1, 12))
                point = tuple(s + t * (e - s) for s, e in zip(start, end))
                assert restricted.evaluate(t) == p.evaluate(point)


class TestTruncSeries2:
    def test_product_of_binomials(self):
        one_x = TruncSeries2.binomial_series(1, 0, 2)
        one_y = TruncSeries2.binomial_series(0, 1, 2)
        assert one_x * one_y == TruncSeries2(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})

    def test_truncation_drops_high_degree(self):
        x = TruncSeries2(1, {(1, 0): 1})
        y = TruncSeries2(1, {(0, 1): 1})
        assert (x * y).is_zero()

    def test_phi_times_psi(self):
        one = TruncSeries2.constant(1, 2)
        phi = TruncSeries2.binomial_series(-1, 1, 2) - one
        psi = TruncSeries2.binomial_series(1, 1, 2) - one
        assert phi * psi == TruncSeries2(2, {(2, 0): -1, (0, 2): 1})

    def test_phi_expansion(self):
        one = TruncSeries2.constant(1, 2)
        phi = TruncSeries2.binomial_series(-1, 1, 2) - one
        assert phi == TruncSeries2(2, {(1, 0): -1, (0, 1): 1, (2, 0): 1, (1, 1): -1})
        assert phi.coefficient((1, 0)) == -1

    def test_square_with_delta_minus_one(self):
        one = TruncSeries2.constant(1, 2)
        phi = TruncSeries2.binomial_series(1, -1, 2) - one
        assert phi**2 == TruncSeries2(2, {(2, 0): 1, (1, 1): -2, (0, 2): 1})

    def test_power_of_sum(self):
        s = TruncSeries2(2, {(1, 0): 1, (0, 1): 1})
        assert s**2 == TruncSeries2(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert s**0 == TruncSeries2.constant(1, 2)

    def test_coefficient_beyond_truncation_rejected(self):
        s = TruncSeries2(2, {(1, 0): 1})
        with pytest.raises(ValueError):
            s.coefficient((2, 1))

    def test_mismatched_truncation_rejected(self):
        with pytest.raises(ValueError):
            TruncSeries2(2, {}) * TruncSeries2(3, {})

    def test_multiplication_sound_against_polynomials(self):
        # embed random bivariate polynomials and compare all retained terms
        rng = random.Random(321)
        cap = 4
        for _ in range(20):
            a_terms = {(rng.randint(0, 2), rng.randint(0, 2), 0): Fraction(rng.randint(-5, 5)) for _ in range(4)}
            b_terms = {(rng.randint(0, 2), rng.randint(0, 2), 0): Fraction(rng.randint(-5, 5)) for _ in range(4)}
            pa, pb = MultiPoly3(a_terms), MultiPoly3(b_terms)
            sa = TruncSeries2(cap, {(e[0], e[1]): c for e, c in pa.terms()})
            sb = TruncSeries2(cap, {(e[0], e[1]): c for e, c in pb.terms()})
            product_poly = pa * pb
            product_series = sa * sb
            for i in range(cap + 1):
                for j in range(cap + 1 - i):
                    assert product_series.coefficient((i, j)) == product_poly.coefficient((i, j, 0))


class TestUniPoly:
    def test_degree_of_product(self):
        rng = random.Random(17)
        for _ in range(20):
            p = UniPoly([Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))] + [1])
            q = UniPoly([Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))] + [1])
            assert (p * q).degree == p.degree + q.degree

    def test_divmod_reconstructs(self):
        p = UniPoly([1, 0, -3, 2, 5])
        q = UniPoly([2, 1, 1])
        quotient, remainder = p.divmod(q)
        assert quotient * q + remainder == p
        assert remainder.degree < q.degree

    def test_square_free_part(self):
        # (t - 1)^2 (t + 2) -> (t - 1)(t + 2)
        p = UniPoly([-1, 1]) * UniPoly([-1, 1]) * UniPoly([2, 1])
        sf = square_free_part(p)
        assert sf.degree == 2
        assert sf.evaluate(1) == 0 and sf.evaluate(-2) == 0

    def test_json_round_trip(self):
        p = UniPoly([Fraction(1, 2), 0, -3])
        assert UniPoly.from_json_terms(p.to_json_terms()) == p


class TestSturmIsolation:
    def test_two_roots(self):
        p = UniPoly([-1, 0, 1])  # t^2 - 1
        result = sturm_isolate(p, -2, 2, Fraction(1, 8))
        assert not result.identically_zero
        assert len(result.intervals) == 2
        lo_iv, hi_iv = result.intervals
        assert lo_iv.lo < -1 < lo_iv.hi
        assert hi_iv.lo < 1 < hi_iv.hi
        for iv in result.intervals:
            assert iv.hi - iv.lo <= Fraction(1, 8)

    def test_no_real_roots(self):
        result = sturm_isolate(UniPoly([1, 0, 1]), -10, 10)
        assert not result.identically_zero
        assert result.intervals == ()

    def test_identically_zero(self):
        result = sturm_isolate(UniPoly([]), 0, 1)
        assert result.identically_zero

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            sturm_isolate(UniPoly([1, 1]), 1, 0)
        with pytest.raises(ValueError):
            sturm_isolate(UniPoly([1, 1]), 0, 1, width=0)

    def test_recovers_known_rational_roots(self):
        rng = random.Random(2024)
        for _ in range(25):
            k = rng.randint(1, 4)
            roots = set()
            while len(roots) < k:
                roots.add(Fraction(rng.randint(-20, 20), rng.randint(1, 8)))
            p = UniPoly([1])
            for r in roots:
                p = p * UniPoly([-r, 1])
            lo = min(roots) - 1
            hi = max(roots) + 1
            result = sturm_isolate(p, lo, hi, Fraction(1, 64))
            assert len(result.intervals) == k
            for r in sorted(roots):
                assert any(iv.lo < r < iv.hi for iv in result.intervals)

    def test_multiplicities_are_reduced(self):
        # (t - 1/2)^2 (t + 3) has two distinct roots
        p = UniPoly([Fraction(-1, 2), 1]) ** 2 * UniPoly([3, 1])
        result = sturm_isolate(p, -4, 4, Fraction(1, 32))
        assert len(result.intervals) == 2

    def test_root_exactly_at_midpoint_probe(self):
        # roots at dyadic points hit bisection midpoints exactly
        p = UniPoly([Fraction(-1, 2), 1]) * UniPoly([Fraction(-9, 16), 1])
        result = sturm_isolate(p, 0, 1, Fraction(1, 8))
        assert len(result.intervals) == 2
        for r in (Fraction(1, 2), Fraction(9, 16)):
            assert any(iv.lo < r < iv.hi for iv in result.intervals)
        a, b = result.intervals
        assert a.hi <= b.lo  # disjoint

    def test_root_exactly_at_scan_endpoint(self):
        p = UniPoly([-1, 1])  # root at t = 1 == hi
        result = sturm_isolate(p, 0, 1, Fraction(1, 16))
        assert len(result.intervals) == 1
        iv = result.intervals[0]
        assert iv.lo < 1 < iv.hi

    def test_root_at_lo_is_excluded(self):
        p = UniPoly([0, 1])  # root at t = 0 == lo
        result = sturm_isolate(p, 0, 1, Fraction(1, 16))
        assert result.intervals == ()

    def test_sign_change_at_interval_endpoints(self):
        rng = random.Random(77)
        for _ in range(10):
            roots = {Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(3)}
            p = UniPoly([1])
            for r in roots:
                p = p * UniPoly([-r, 1])
            result = sturm_isolate(p, min(roots) - 2, max(roots) + 2, Fraction(1, 16))
            sf = square_free_part(p)
            for iv in result.intervals:
                assert sf.evaluate(iv.lo) * sf.evaluate(iv.hi) < 0

    def test_count_matches_sturm_count(self):
        p = UniPoly([-1, 0, 1]) * UniPoly([-4, 0, 1])  # roots -2, -1, 1, 2
        chain = sturm_chain(square_free_part(p))
        assert count_roots(chain, Fraction(-3), Fraction(3)) == 4
        assert count_roots(chain, Fraction(0), Fraction(3)) == 2
