import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circnorm.core import (
    CirculantSpec,
    Exponent,
    NormResult,
    Regime,
    TwoParamSpec,
    canonicalize,
    classify_regime,
    dense_materialize,
    matvec,
    vector_pnorm,
)

finite = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
exponents = st.one_of(st.floats(1.0, 1e6), st.just(math.inf))


class TestExponent:
    def test_rejects_below_one_and_nan(self):
        for bad in (0.999, 0.0, -3.0, math.nan, -math.inf):
            with pytest.raises(ValueError):
                Exponent(bad)

    def test_conjugate_endpoints(self):
        assert Exponent(1).conjugate().is_infinite
        assert Exponent.infinity().conjugate() == Exponent(1)
        assert Exponent(2).conjugate() == Exponent(2)
        assert Exponent(4).conjugate().p == pytest.approx(4 / 3, rel=1e-15)

    @given(exponents)
    def test_conjugate_is_an_involution(self, p):
        e = Exponent(p)
        assert e.conjugate().conjugate().p == e.p

    @given(st.floats(1.0 + 1e-9, 1e6))
    def test_conjugate_relation(self, p):
        q = Exponent(p).conjugate().p
        assert 1 / p + 1 / q == pytest.approx(1.0, rel=1e-12)

    def test_parse(self):
        assert Exponent.parse("inf").is_infinite
        assert Exponent.parse(" 3 ").p == 3.0
        assert str(Exponent.infinity()) == "inf"


class TestCanonicalize:
    def test_already_canonical(self):
        assert canonicalize(4, 2, 3) == TwoParamSpec(4, 2, 3, 1)

    def test_global_negation(self):
        assert canonicalize(4, -2, -3) == TwoParamSpec(4, 2, 3, 1)

    def test_negative_off_diagonal(self):
        assert canonicalize(4, 2, -3) == TwoParamSpec(4, 2, 3, -1)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            canonicalize(3, math.inf, 1)
        with pytest.raises(ValueError):
            canonicalize(3, 1, math.nan)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 7), finite, finite)
    def test_preserves_norms(self, n, a, b):
        raw = dense_materialize(CirculantSpec((a,) + (b,) * (n - 1)))
        canon = dense_materialize(canonicalize(n, a, b))
        for ord_ in (1, 2, np.inf):
            assert np.linalg.norm(canon, ord_) == pytest.approx(np.linalg.norm(raw, ord_), rel=1e-12, abs=1e-12)


def test_two_param_expand():
    assert TwoParamSpec(4, 1, 2, -1).expand().first_row == (-1.0, 2.0, 2.0, 2.0)
    with pytest.raises(ValueError):
        TwoParamSpec(3, -1, 2)
    with pytest.raises(ValueError):
        TwoParamSpec(0, 1, 2)


def test_row_sum_is_left_to_right():
    row = (1e16, 1.0, -1e16)
    assert CirculantSpec(row).row_sum() == (1e16 + 1.0) + -1e16


def test_regime_boundary_is_case_i():
    assert classify_regime(4, 1, 1) is Regime.CASE_I
    assert classify_regime(3, 1, 4) is Regime.CASE_II
    assert classify_regime(2, 0, 5) is Regime.CASE_I


def test_norm_result_invariants():
    with pytest.raises(ValueError):
        NormResult.bounded(3, 2, "x")
    with pytest.raises(ValueError):
        NormResult.exact_value(-1, "x")
    assert NormResult.exact_value(2, "m").value == 2
    assert NormResult.bounded(1, 2, "m").value is None


class TestMatvec:
    def test_first_column(self):
        np.testing.assert_array_equal(matvec(CirculantSpec((1, 2, 3)), [1, 0, 0]), [1, 3, 2])

    def test_row_sums(self):
        np.testing.assert_array_equal(matvec(canonicalize(3, -1, 4), [1, 1, 1]), [7, 7, 7])

    def test_against_dense_multiply(self):
        dense = np.array([[2, 3, 3, 3], [3, 2, 3, 3], [3, 3, 2, 3], [3, 3, 3, 2]], dtype=float)
        x = np.array([1.0, -1.0, 0.0, 0.0])
        expected = dense @ x
        np.testing.assert_array_equal(expected, [-1, 1, 0, 0])
        np.testing.assert_array_equal(matvec(TwoParamSpec(4, 2, 3), x), expected)
        np.testing.assert_array_equal(matvec(TwoParamSpec(4, 2, 3).expand(), x), expected)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matvec(CirculantSpec((1, 2)), [1, 2, 3])

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 64).flatmap(lambda n: st.tuples(st.lists(finite, min_size=n, max_size=n),
                                                          st.lists(finite, min_size=n, max_size=n))))
    def test_matches_dense(self, data):
        row, x = data
        spec = CirculantSpec(tuple(row))
        y = matvec(spec, x)
        ref = dense_materialize(spec) @ np.asarray(x)
        scale = np.abs(dense_materialize(spec)) @ np.abs(np.asarray(x))
        assert np.all(np.abs(y - ref) <= 1e-12 * scale + 1e-300)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 64), finite, finite, st.sampled_from([1, -1]), st.data())
    def test_fast_path_matches_general(self, n, a, b, sign, data):
        x = np.array(data.draw(st.lists(finite, min_size=n, max_size=n)))
        spec = TwoParamSpec(n, abs(a), abs(b), sign)
        fast, slow = matvec(spec, x), matvec(spec.expand(), x)
        scale = np.abs(dense_materialize(spec)) @ np.abs(x)
        assert np.all(np.abs(fast - slow) <= 1e-14 * scale * n + 1e-300)


class TestDense:
    def test_examples(self):
        np.testing.assert_array_equal(dense_materialize(CirculantSpec((1, 2, 3))),
                                      [[1, 2, 3], [3, 1, 2], [2, 3, 1]])
        np.testing.assert_array_equal(dense_materialize(CirculantSpec((5,))), [[5]])
        np.testing.assert_array_equal(dense_materialize(canonicalize(2, -1, 3)), [[-1, 3], [3, -1]])

    def test_cap(self):
        with pytest.raises(ValueError):
            dense_materialize(CirculantSpec((1.0,) * 10), cap=8)


class TestVectorPnorm:
    def test_examples(self):
        assert vector_pnorm([3, 4], 2) == 5
        assert vector_pnorm([1, 1, 1, 1], Exponent.infinity()) == 1
        # log-domain evaluation as the independent route
        assert vector_pnorm([1, 2, 2], 3) == pytest.approx(math.exp(math.log(17) / 3), rel=1e-15)
        assert vector_pnorm([1, 2, 2], 3) == pytest.approx(2.5713, abs=1e-4)

    def test_no_overflow(self):
        assert vector_pnorm([1e300, 1e300], 10) == pytest.approx(1e300 * 2 ** 0.1, rel=1e-14)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            vector_pnorm([1, math.nan], 2)

    @given(st.lists(finite, min_size=1, max_size=20), st.floats(-1e3, 1e3), exponents)
    def test_absolutely_homogeneous(self, x, t, p):
        lhs = vector_pnorm(np.asarray(x) * t, p)
        rhs = abs(t) * vector_pnorm(x, p)
        assert lhs == pytest.approx(rhs, rel=1e-14, abs=1e-300)
