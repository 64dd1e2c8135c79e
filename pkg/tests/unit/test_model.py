import numpy as np
import pytest

from src.core.errors import (ChainConstraintViolated, DimensionMismatch, SingularLeading,
                             ZeroFunction)
from src.expalg import ExpPoly, cosh, sinh
from src.matfun import RatMatFun, RatScalar, VecFun
from src.model import (ChainEntry, DifferentialOperator, Hamiltonian, IntertwiningOperator,
                       NonvanishingVerdict, TransformationSet, check_nonvanishing,
                       potential_from_set, set_is_consistent, t_matrix, wronskian)


def E(k, c=1.0, m=0):
    return ExpPoly.exp(k, c, m)


def vec(*entries):
    return VecFun(np.array(entries, dtype=object))


@pytest.fixture
def free_set():
    return TransformationSet(2, [ChainEntry(vec(cosh(1.0), E(1, 0.5)), -1.0, name="Phi1"),
                                 ChainEntry(vec(E(-2, 0.3), cosh(2.0)), -4.0, name="Phi2")])


class TestHamiltonian:
    def test_free_eigenfunction(self):
        h = Hamiltonian.free(2)
        v = vec(E(1.5), ExpPoly.zero())
        assert (h.apply(v) - v * (-(1.5 ** 2))).is_zero()

    def test_operator_form_matches_apply(self):
        h = Hamiltonian(1, RatMatFun.constant([[3.0]]))
        v = vec(E(1, 1.0, 2))
        assert (h.as_differential_operator().apply(v) - h.apply(v)).is_zero()

    def test_shape_checked(self):
        with pytest.raises(DimensionMismatch):
            Hamiltonian(2, RatMatFun.identity(3))
        with pytest.raises(DimensionMismatch):
            Hamiltonian.free(2).apply(vec(E(1)))


class TestDifferentialOperator:
    def test_leibniz(self):
        # d o x = x d + 1
        x = RatMatFun(np.array([[ExpPoly.x()]], dtype=object))
        d = DifferentialOperator([RatMatFun.zero(1), RatMatFun.identity(1)])
        left = d.compose(DifferentialOperator([x]))
        right = DifferentialOperator([RatMatFun.identity(1), x])
        assert (left - right).is_zero()

    def test_orders(self):
        d = DifferentialOperator([RatMatFun.zero(2), RatMatFun.zero(2), RatMatFun.identity(2)])
        assert d.order == 2
        assert d.nonzero_orders() == [2]


class TestTransformationSet:
    def test_zero_function_rejected(self):
        with pytest.raises(ZeroFunction):
            ChainEntry(vec(ExpPoly.zero(), ExpPoly.zero()), -1.0)

    def test_sigma_range(self):
        with pytest.raises(ValueError):
            ChainEntry(vec(E(1)), -1.0, sigma=2)

    def test_chain_constraint(self):
        tset = TransformationSet(1, [ChainEntry(vec(E(1)), -1.0, 1), ChainEntry(vec(E(2)), -4.0)])
        with pytest.raises(ChainConstraintViolated):
            t_matrix(tset)

    def test_t_matrix(self):
        tset = TransformationSet.from_chain_blocks(
            1, [(-1.0, [E(1, -0.5, 1), E(1)]), (-4.0, [E(2)])])
        assert np.allclose(t_matrix(tset), [[-1, 1, 0], [0, -1, 0], [0, 0, -4]])
        assert tset.jordan_blocks() == [(-1.0, 2), (-4.0, 1)]

    def test_scalar_functions_accepted(self):
        entry = ChainEntry(cosh(1.0), -1.0)
        assert entry.phi.shape == (1,)
        assert TransformationSet(1, [entry]).order == 1

    def test_order_needs_whole_blocks(self):
        tset = TransformationSet(2, [ChainEntry(vec(E(1), E(2)), -1.0)])
        with pytest.raises(DimensionMismatch):
            tset.order


class TestIntertwiningOperator:
    def test_singular_leading(self):
        with pytest.raises(SingularLeading):
            IntertwiningOperator(1, np.zeros((2, 2)), [RatMatFun.zero(2)])

    def test_lower_count(self):
        with pytest.raises(DimensionMismatch):
            IntertwiningOperator(2, np.eye(2), [RatMatFun.zero(2)])


class TestWronskian:
    def test_first_order(self, free_set):
        expected = cosh(1.0) * cosh(2.0) - E(1, 0.5) * E(-2, 0.3)
        assert wronskian(free_set).equals(expected)

    def test_second_order_scalar(self):
        tset = TransformationSet(1, [ChainEntry(vec(cosh(1.0)), -1.0),
                                     ChainEntry(vec(sinh(2.0)), -4.0)])
        ch, sh = cosh(1.0), sinh(2.0)
        assert wronskian(tset).equals(ch * sh.derivative() - ch.derivative() * sh)

    def test_entry_count(self, free_set):
        with pytest.raises(DimensionMismatch):
            wronskian(free_set, 2)


class TestInverseProblem:
    def test_free_set_gives_free_potential(self, free_set):
        assert potential_from_set(free_set).is_free()

    def test_poschl_teller(self):
        # 1/ch x solves -u'' - 2/ch^2 x u = -u
        tset = TransformationSet(1, [ChainEntry(RatScalar.of(ExpPoly.one(), cosh(1.0)), -1.0)])
        x = np.linspace(-4, 4, 17)
        values = potential_from_set(tset).potential.evaluate(x)[0, 0]
        assert np.allclose(values, -2 / np.cosh(x) ** 2)

    def test_round_trip_chain_equations(self):
        tset = TransformationSet(2, [ChainEntry(vec(E(1) + E(0, 2.0, 1), E(-1, 0.4)), -0.25),
                                     ChainEntry(vec(E(2, 0.7), E(-1) + E(1, 0.3)), -2.0)])
        assert set_is_consistent(tset, potential_from_set(tset))

    def test_needs_n_functions(self, free_set):
        tset = TransformationSet(2, free_set.entries[:1])
        with pytest.raises(DimensionMismatch):
            potential_from_set(tset)


class TestNonvanishing:
    def test_positive(self):
        report = check_nonvanishing(cosh(1.0))
        assert report.verdict is NonvanishingVerdict.PASS

    def test_real_zero(self):
        report = check_nonvanishing(sinh(1.0), (-5.0, 5.0), 201)
        assert report.verdict is NonvanishingVerdict.FAIL
        assert abs(report.argmin) < 1e-12

    @pytest.mark.parametrize("samples", [200, 50, 8])
    def test_zero_between_samples(self, samples):
        # no grid point lands on the zero of sh x
        report = check_nonvanishing(sinh(1.0), (-5.0, 5.0), samples)
        assert report.verdict is NonvanishingVerdict.FAIL
        assert abs(report.argmin) < 1e-9

    def test_complex_phase_zero_between_samples(self):
        report = check_nonvanishing(sinh(1.0) * (0.6 + 0.8j), (-2.0, 3.0), 40)
        assert report.verdict is NonvanishingVerdict.FAIL

    def test_real_positive_on_even_grid(self):
        report = check_nonvanishing(cosh(1.0) + ExpPoly.constant(-0.9), (-5.0, 5.0), 200)
        assert report.verdict is NonvanishingVerdict.PASS

    def test_oscillatory_is_inconclusive(self):
        w = E(1j) + E(-1j, 0.3) + E(0, 3.0)
        report = check_nonvanishing(w)
        assert report.verdict is NonvanishingVerdict.INCONCLUSIVE

    def test_identically_zero(self):
        with pytest.raises(ZeroFunction):
            check_nonvanishing(ExpPoly.zero())
