import itertools

import numpy as np
import pytest

from src.core.errors import DimensionMismatch, SingularMatrix, SingularMatrixFunction, ZeroFunction
from src.expalg import ExpPoly, cosh
from src.matfun import (Denominator, MatFun, RatMatFun, RatScalar, VecFun, adjugate_inverse,
                        cofactor_row, commutator, const_inverse, det, wrap_rational)


def E(k, c=1.0, m=0):
    return ExpPoly.exp(k, c, m)


@pytest.fixture
def m():
    return MatFun(np.array([[E(1), E(-1, 0.5)], [E(0, 2.0), E(2) + E(0, 1.0, 1)]], dtype=object))


def test_det_two_by_two(m):
    expected = E(1) * (E(2) + E(0, 1.0, 1)) - E(-1, 0.5) * E(0, 2.0)
    assert det(m).equals(expected)


def test_cofactor_row_expands_det(m):
    cof = cofactor_row(m, 0)
    total = m[0, 0] * cof[0] + m[0, 1] * cof[1]
    assert total.equals(det(m))


def test_det_three_by_three_identity():
    assert det(MatFun.identity(3)).equals(ExpPoly.one())


def test_adjugate_inverse(m):
    product = m @ adjugate_inverse(m)
    assert (product - RatMatFun.identity(2)).is_zero()


def test_singular_matrix_function():
    row = np.array([E(1), E(-1)], dtype=object)
    with pytest.raises(SingularMatrixFunction):
        adjugate_inverse(MatFun(np.array([row, row * 2], dtype=object)))


def test_const_inverse():
    c = np.array([[1, 2j], [0.5, 3]])
    assert np.allclose(const_inverse(c) @ c, np.eye(2))
    with pytest.raises(SingularMatrix):
        const_inverse([[1, 2], [2, 4]])
    with pytest.raises(DimensionMismatch):
        const_inverse([[1, 2, 3]])


class TestRational:
    def test_reciprocal_derivative(self):
        f = cosh(1.0)
        r = RatScalar.of(ExpPoly.one(), f)
        expected = RatScalar.of(-f.derivative()).divide(f, 2)
        assert (r.derivative() - expected).is_zero()

    def test_addition_shares_factors(self):
        f = cosh(2.0)
        a = RatScalar.of(E(1), f)
        b = RatScalar.of(E(-1), f)
        total = a + b
        (base, power), = total.denominator.factors
        assert base.same_structure(f) and power == 1
        x = np.linspace(-3, 3, 7)
        assert np.allclose(total.evaluate(x)[0], 2 * np.cosh(x) / np.cosh(2 * x))

    def test_constant_denominators_fold(self):
        r = wrap_rational(np.array([E(1)], dtype=object), Denominator.of(ExpPoly.constant(2.0)))
        assert r.denominator.is_one()
        assert r.num.entries[0].equals(E(1, 0.5))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroFunction):
            RatScalar.of(E(1), ExpPoly.zero())

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            RatMatFun.identity(2) + RatMatFun.identity(3)

    def test_evaluate_far_from_origin(self):
        f = cosh(1.0)
        r = RatScalar.of(E(1), f)
        values = r.evaluate(np.array([-800.0, 0.0, 800.0]))[0]
        assert np.allclose(values, [0.0, 1.0, 2.0])

    def test_commutator_of_constants(self):
        a = RatMatFun.constant([[0, 1], [0, 0]])
        b = RatMatFun.constant([[0, 0], [1, 0]])
        assert np.allclose(commutator(a, b).constant_value(), [[1, 0], [0, -1]])

    def test_constant_matrix_products(self):
        v = VecFun.basis(2, 0, E(1))
        rotated = np.array([[0, 1], [1, 0]]) @ RatMatFun.identity(2) @ v
        assert rotated.num.entries[0].is_zero()
        assert rotated.num.entries[1].equals(E(1))


def leibniz_det(m):
    n = m.shape[0]
    total = ExpPoly.zero()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ExpPoly.constant(-1.0 if inversions % 2 else 1.0)
        for i, j in enumerate(perm):
            term = term * m[i, j]
        total = total + term
    return total


def test_det_matches_leibniz_on_random_matrices():
    rng = np.random.default_rng(11)
    rates = (-1.0, 0.0, 0.5, 1.0, 1j)
    for _ in range(100):
        entries = [[sum((E(rates[rng.integers(len(rates))], complex(*rng.normal(size=2)),
                          int(rng.integers(2))) for _ in range(2)), ExpPoly.zero())
                    for _ in range(3)] for _ in range(3)]
        m = MatFun(np.array(entries, dtype=object))
        assert (det(m) - leibniz_det(m)).is_zero()
