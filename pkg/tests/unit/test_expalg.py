import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import ArtifactError, PowerOverflow
from src.expalg import ExpPoly, ExpTerm, asymptotic_exponent, cosh, sinh
from src.expalg.serialize import complex_from_json, poly_from_json, poly_to_json

coefficients = st.complex_numbers(min_magnitude=0.2, max_magnitude=2.0, allow_nan=False,
                                  allow_infinity=False)
rates = st.sampled_from([0, 1, -1, 2, -2, 1j, -1j, 0.5 + 0.25j])
terms = st.tuples(coefficients, st.integers(0, 2), rates)
polys = st.lists(terms, min_size=0, max_size=4).map(
    lambda ts: ExpPoly.from_terms(ExpTerm(c, m, k) for c, m, k in ts))


class TestCanonicalForm:
    def test_like_terms_merge(self):
        p = ExpPoly.exp(1, 2.0) + ExpPoly.exp(1, 3.0)
        assert p.size == 1
        assert p.terms[0].coeff == 5.0

    def test_cancellation_is_exact_zero(self):
        p = ExpPoly.exp(2, 0.3, 1) + ExpPoly.exp(-1, 0.7)
        assert (p - p).is_zero()

    def test_rounding_residue_is_dropped(self):
        a = ExpPoly.exp(1, 0.1) + ExpPoly.exp(1, 0.2)
        b = ExpPoly.exp(1, 0.3)
        assert (a - b).is_zero()

    def test_terms_are_ordered(self):
        p = ExpPoly.exp(2) + ExpPoly.exp(-1) + ExpPoly.exp(0, 1.0, 1)
        assert [t.rate.real for t in p.terms] == [-1, 0, 2]

    def test_distinct_real_rates_are_kept(self):
        assert [(t.coeff, t.rate) for t in sinh(1.0).terms] == [(-0.5, -1), (0.5, 1)]
        p = ExpPoly.exp(-3) + ExpPoly.exp(0.5, 2.0) + ExpPoly.exp(0.5, 1.0, 2) + ExpPoly.exp(4)
        assert p.size == 4
        assert p(0.0) == pytest.approx(4.0)

    def test_power_cap(self):
        with pytest.raises(PowerOverflow):
            ExpPoly.x(65)

    def test_negative_power(self):
        with pytest.raises(ValueError):
            ExpPoly.from_terms([ExpTerm(1.0, -1, 0)])


class TestArithmetic:
    def test_exponentials_multiply(self):
        assert (ExpPoly.exp(1) * ExpPoly.exp(-1)).equals(ExpPoly.one())

    def test_scalars_mix(self):
        p = 2 + ExpPoly.exp(1) * 3 - 1
        assert p.equals(ExpPoly.exp(1, 3.0) + 1)

    def test_power(self):
        ch = cosh(1.0)
        assert (ch ** 2).equals(ch * ch)
        assert (ch ** 0).equals(ExpPoly.one())

    def test_derivative(self):
        p = ExpPoly.exp(2, 1.0, 1)
        assert p.derivative().equals(ExpPoly.exp(2) + ExpPoly.exp(2, 2.0, 1))

    def test_hyperbolic_identity(self):
        assert (cosh(1.5) ** 2 - sinh(1.5) ** 2).equals(ExpPoly.one())

    def test_shifted_cosh(self):
        x = np.linspace(-3, 3, 13)
        assert np.allclose(cosh(2.0, 0.7)(x), np.cosh(2.0 * (x - 0.7)))

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_ring_identities(self, p, q, r):
        assert ((p + q) - q).equals(p)
        assert (p * (q + r)).equals(p * q + p * r)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys)
    def test_product_rule(self, p, q):
        assert (p * q).derivative().equals(p.derivative() * q + p * q.derivative())


class TestEvaluation:
    def test_matches_numpy(self):
        p = ExpPoly.exp(1j, 2.0) + ExpPoly.exp(-0.5, 1.0, 2)
        x = np.linspace(-2, 2, 9)
        assert np.allclose(p(x), 2 * np.exp(1j * x) + x ** 2 * np.exp(-0.5 * x))

    def test_scalar_call(self):
        assert isinstance(ExpPoly.exp(1)(0.0), complex)

    def test_scaled_evaluation(self):
        p = ExpPoly.exp(300) + ExpPoly.exp(-300)
        x = np.array([-10.0, 10.0])
        scaled = p.evaluate_scaled(x, p.dominant_shift(x))
        assert np.allclose(scaled, [1.0, 1.0])

    def test_asymptotic_exponents(self):
        p = ExpPoly.exp(2) + ExpPoly.exp(-1, 1.0, 1)
        plus, minus = asymptotic_exponent(p, 1), asymptotic_exponent(p, -1)
        assert (plus.re, plus.power, plus.oscillatory) == (2, 0, False)
        assert (minus.re, minus.power) == (-1, 1)
        assert asymptotic_exponent(ExpPoly.exp(1j) + ExpPoly.exp(-1j), 1).oscillatory


class TestSerialization:
    def test_poly_round_trip(self):
        p = ExpPoly.exp(1 + 2j, 0.25 - 1j, 2) + ExpPoly.constant(3.0)
        assert poly_from_json(poly_to_json(p)).equals(p)
        assert poly_to_json(poly_from_json(poly_to_json(p))) == poly_to_json(p)

    def test_complex_pairs(self):
        assert complex_from_json([1.5, -2.0]) == 1.5 - 2j
        assert complex_from_json(3) == 3

    @pytest.mark.parametrize("bad", [{"c": 1}, [{"c": [1, 0], "m": 0}], [{"c": "x", "m": 0, "k": 0}]])
    def test_malformed(self, bad):
        with pytest.raises(ArtifactError):
            poly_from_json(bad)
