import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circnorm.bounds import (
    adaptive_simpson,
    best_bounds,
    bounds_holder,
    bounds_riesz_thorin,
    dirichlet_l1,
    harmonic_upper,
    reflect_dual,
)
from circnorm.core import Exponent, Regime, TwoParamSpec
from circnorm.exact import two_norm_minus
from circnorm.oracle import riemann_dirichlet_l1


def minus(n, a, b):
    return TwoParamSpec(n, a, b, -1)


class TestHolder:
    def test_collapses_at_two(self):
        assert bounds_holder(minus(4, 1, 1), Exponent(2)) == (2, 2)

    def test_case_ii(self):
        lo, hi = bounds_holder(minus(4, 0, 1), Exponent(4))
        assert lo == 3
        assert hi == pytest.approx(4 ** 0.25 * 3, rel=1e-15)
        assert hi == pytest.approx(4.2426, abs=1e-4)

    def test_case_i(self):
        spec = minus(3, 2, 1)
        assert spec.regime() is Regime.CASE_I
        lo, hi = bounds_holder(spec, Exponent(3))
        assert lo == 3
        assert hi == pytest.approx(3 ** (1 / 6) * 3, rel=1e-15)

    @pytest.mark.parametrize("p", [1.5, math.inf])
    def test_rejects_p_outside_range(self, p):
        with pytest.raises(ValueError):
            bounds_holder(minus(3, 1, 1), Exponent(p))


class TestRieszThorin:
    def test_infinity_is_max_row_sum(self):
        assert bounds_riesz_thorin(minus(4, 0, 1), Exponent.infinity())[1] == 3

    def test_collapses_at_two(self):
        assert bounds_riesz_thorin(minus(4, 1, 1), Exponent(2))[1] == 2

    def test_sharp_when_two_and_inf_norms_agree(self):
        assert bounds_riesz_thorin(minus(4, 0, 1), Exponent(4))[1] == pytest.approx(3, rel=1e-15)

    def test_rejects_small_p(self):
        with pytest.raises(ValueError):
            bounds_riesz_thorin(minus(3, 1, 1), Exponent(1.5))


def test_reflect_dual():
    assert reflect_dual(Exponent(1)).is_infinite
    assert reflect_dual(Exponent(2)).p == 2
    assert reflect_dual(Exponent(4)).p == pytest.approx(4 / 3, rel=1e-15)


class TestDirichlet:
    def test_small_n(self):
        assert dirichlet_l1(1) == 1.0
        assert dirichlet_l1(2) == pytest.approx(4 / math.pi, abs=1e-9)
        # closed form for n = 3: 1/3 + 2 sqrt(3) / pi
        assert dirichlet_l1(3) == pytest.approx(1 / 3 + 2 * math.sqrt(3) / math.pi, abs=1e-9)

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_against_riemann_sum(self, n):
        assert dirichlet_l1(n) == pytest.approx(riemann_dirichlet_l1(n), abs=1e-8)

    def test_monotone(self):
        vals = [dirichlet_l1(n) for n in range(1, 41)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_simpson_on_polynomial_is_exact(self):
        assert adaptive_simpson(lambda t: t ** 3 - t, 0.0, 2.0, 1e-12) == pytest.approx(2.0, rel=1e-14)


class TestHarmonic:
    def test_n1(self):
        assert harmonic_upper(minus(1, 2, 3)) == 2 + 2 * 3

    def test_n2(self):
        assert harmonic_upper(minus(2, 1, 1)) == pytest.approx(2 + 2 * 4 / math.pi, abs=1e-9)
        assert harmonic_upper(minus(2, 1, 1)) == pytest.approx(4.5465, abs=1e-4)

    def test_n4(self):
        assert harmonic_upper(minus(4, 0, 1)) == pytest.approx(1 + 4 * riemann_dirichlet_l1(4), abs=1e-8)


class TestBestBounds:
    def test_case_ii_at_two(self):
        bs = best_bounds(minus(4, 0, 1), Exponent(2))
        assert bs.lower == bs.upper_holder == bs.upper_rt == 3
        assert bs.regime is Regime.CASE_II

    def test_endpoint_one(self):
        bs = best_bounds(minus(4, 3, 1), Exponent(1))
        assert bs.lower == bs.upper_rt == 6

    def test_generic(self):
        bs = best_bounds(minus(5, 1, 1), Exponent(3))
        assert bs.regime is Regime.CASE_II
        assert bs.lower == 3
        assert bs.upper_rt == pytest.approx(3 ** (2 / 3) * 5 ** (1 / 3), rel=1e-14)
        assert bs.upper_holder == pytest.approx(5 ** (1 / 6) * 3, rel=1e-14)
        assert bs.upper_rt == pytest.approx(3.5569, abs=1e-4)
        assert bs.upper_holder == pytest.approx(3.9230, abs=1e-4)
        assert bs.lower <= bs.upper_rt <= bs.upper_holder

    def test_zero_matrix(self):
        for p in (1, 1.5, 2, 3, math.inf):
            bs = best_bounds(minus(5, 0, 0), Exponent(p))
            assert (bs.lower, bs.upper_holder, bs.upper_rt, bs.upper_harmonic) == (0, 0, 0, 0)

    def test_one_by_one(self):
        for p in (1, 1.5, 2, 3, math.inf):
            bs = best_bounds(minus(1, 2, 5), Exponent(p))
            assert bs.lower == bs.upper_holder == bs.upper_rt == 2

    def test_nonnegative_matrix_is_exact(self):
        bs = best_bounds(TwoParamSpec(4, 2, 3), Exponent(3))
        assert bs.lower == bs.upper_rt == bs.upper_holder == 11
        assert bs.upper_harmonic >= 11

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 30), st.floats(0, 10), st.floats(0, 10),
           st.one_of(st.floats(1, 50), st.just(math.inf)))
    def test_dual_symmetry(self, n, a, b, p):
        e = Exponent(p)
        x, y = best_bounds(minus(n, a, b), e), best_bounds(minus(n, a, b), e.conjugate())
        assert (x.lower, x.upper_holder, x.upper_rt, x.upper_harmonic) == (
            y.lower, y.upper_holder, y.upper_rt, y.upper_harmonic)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 30), st.floats(0, 10), st.floats(0, 10), st.floats(2, 100))
    def test_riesz_thorin_dominates_holder(self, n, a, b, p):
        bs = best_bounds(minus(n, a, b), Exponent(p))
        assert bs.upper_rt <= bs.upper_holder + 1e-12
        assert bs.lower <= bs.upper_rt * (1 + 1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 30), st.floats(0, 10), st.floats(0, 10))
    def test_endpoint_collapse(self, n, a, b):
        spec = minus(n, a, b)
        m2 = two_norm_minus(spec).value
        at2 = best_bounds(spec, Exponent(2))
        assert at2.upper_holder == pytest.approx(m2, abs=1e-12)
        assert at2.upper_rt == pytest.approx(m2, abs=1e-12)
        m_inf = (n - 1) * b + a if n > 1 else a
        assert best_bounds(spec, Exponent.infinity()).upper_rt == pytest.approx(m_inf, abs=1e-12)
        assert best_bounds(spec, Exponent(1)).upper_rt == pytest.approx(m_inf, abs=1e-12)
