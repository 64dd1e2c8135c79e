import numpy as np
import pytest

from src.core.errors import DegenerateWronskian, SetInconsistentWithPotential
from src.darboux import (build_first_order, build_order_n, build_reverse, factorization_report,
                         superpotential, superpotential_columns, u0_spectrum_deviation)
from src.expalg import ExpPoly, cosh, sinh
from src.matfun import VecFun
from src.model import ChainEntry, Hamiltonian, TransformationSet
from src.verify import verify_intertwining, verify_kernel

K = 1.3


def E(k, c=1.0, m=0):
    return ExpPoly.exp(k, c, m)


def vec(*entries):
    return VecFun(np.array(entries, dtype=object))


@pytest.fixture
def well():
    """ch kx at lambda = -k^2: V- is the Poschl-Teller well -2k^2/ch^2 kx."""
    return TransformationSet(1, [ChainEntry(vec(cosh(K)), -K ** 2, name="ch")])


@pytest.fixture
def coupled():
    return TransformationSet(2, [
        ChainEntry(vec(E(1) + E(-1, 0.5), E(1, 0.3) + E(-1, -0.4)), -1.0, name="Phi1"),
        ChainEntry(vec(E(0.5, 0.2) + E(-0.5, 0.7), E(0.5, 0.9) + E(-0.5, 0.6)), -0.25, name="Phi2"),
    ])


class TestFirstOrder:
    def test_poschl_teller_well(self, well, grid):
        build = build_first_order(well)
        values = build.h_minus.potential.evaluate(grid)[0, 0]
        assert np.allclose(values, -2 * K ** 2 / np.cosh(K * grid) ** 2)
        assert np.allclose(build.superpotential.evaluate(grid)[0, 0], -K * np.tanh(K * grid))
        assert np.allclose(build.u0.evaluate(grid)[0, 0], -K ** 2)

    def test_kernel_contains_set(self, coupled):
        build = build_first_order(coupled)
        for entry in coupled.entries:
            assert build.q.apply(entry.phi).is_zero()

    def test_intertwining(self, coupled, grid):
        build = build_first_order(coupled)
        report = verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid)
        assert report.overall, [c.name for c in report.failures()]

    def test_superpotential_routes_agree(self, coupled):
        assert (superpotential(coupled) - superpotential_columns(coupled)).is_zero()

    def test_factorization(self, coupled):
        report = factorization_report(build_first_order(coupled))
        assert report.h_plus_factorized and report.h_minus_factorized
        assert report.commutator_identity and report.u0_intertwines
        assert report.reverse_intertwining == report.u0_constant

    def test_u0_spectrum_is_lambda_multiset(self, coupled):
        assert u0_spectrum_deviation(build_first_order(coupled)) < 1e-8

    def test_gauge_leading_coefficient(self, coupled, grid):
        x1 = np.array([[1.0, 0.5j], [0.2, 2.0]])
        build = build_first_order(coupled, x1)
        assert np.allclose(build.q.leading, x1)
        assert verify_kernel(build.q, coupled, build.h_plus, grid=grid).overall
        assert verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid).overall

    def test_inconsistent_set(self):
        tset = TransformationSet(1, [ChainEntry(vec(ExpPoly.x(2) + 1), 0.0)])
        with pytest.raises(SetInconsistentWithPotential):
            build_first_order(tset)

    def test_degenerate_wronskian(self):
        phi = vec(E(1), E(1, 2.0))
        tset = TransformationSet(2, [ChainEntry(phi, -1.0), ChainEntry(phi * 3.0, -1.0)])
        with pytest.raises(DegenerateWronskian):
            build_first_order(tset)


class TestOrderN:
    def test_second_order_scalar(self, grid):
        tset = TransformationSet(1, [ChainEntry(vec(cosh(1.0)), -1.0),
                                     ChainEntry(vec(sinh(2.0)), -4.0)])
        build = build_order_n(tset, None, Hamiltonian.free(1))
        assert build.order == 2
        assert verify_kernel(build.q, tset, build.h_plus, grid=grid).overall
        assert verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid).overall

    def test_jordan_pair(self, grid):
        # e^{kx} and its associated function -x e^{kx} / 2k, listed associated first
        k = 0.8
        tset = TransformationSet.from_chain_blocks(
            1, [(-k ** 2, [vec(E(k, -1 / (2 * k), 1) + E(-k)), vec(E(k))])])
        build = build_order_n(tset, None, Hamiltonian.free(1))
        assert verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid).overall

    def test_two_channels_second_order(self, grid):
        ks = (0.6, 0.9, 1.2, 1.5)
        tset = TransformationSet(2, [
            ChainEntry(vec(cosh(ks[0]), E(ks[0], 0.3)), -ks[0] ** 2),
            ChainEntry(vec(E(-ks[1], 0.5), cosh(ks[1])), -ks[1] ** 2),
            ChainEntry(vec(sinh(ks[2]), E(-ks[2], 0.2)), -ks[2] ** 2),
            ChainEntry(vec(E(ks[3], 0.4), sinh(ks[3]) + E(ks[3], 0.1)), -ks[3] ** 2),
        ])
        build = build_order_n(tset, None, Hamiltonian.free(2))
        assert build.order == 2
        for entry in tset.entries:
            assert build.q.apply(entry.phi).is_zero()
        assert verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid).overall

    def test_reverse_recovers_free(self, well):
        build = build_first_order(well)
        # Q (sh kx) spans the H- kernel of the reverse operator
        image = build.q.apply(vec(sinh(K)))
        kernel = TransformationSet(1, [ChainEntry(image, -K ** 2)])
        assert build_reverse(build.h_minus, kernel).h_minus.potential.is_zero()
