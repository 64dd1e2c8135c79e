import numpy as np
import pytest

from src.core.errors import EmptyImage, ZeroRate, ZeroState
from src.darboux import build_first_order
from src.expalg import ExpPoly, cosh, sinh
from src.matfun import RatScalar, VecFun
from src.model import ChainEntry, Hamiltonian, TransformationSet
from src.spectra import (ModeKind, SpectralChain, Verdict, chain_is_valid,
                         classify_normalizability, dependence_is_zero, diagonalizing_similarity,
                         free_modes, linear_rank, map_chain, mapped_states, norm_growth,
                         similarity)

K = 1.0


def E(k, c=1.0, m=0):
    return ExpPoly.exp(k, c, m)


def vec(*entries):
    return VecFun(np.array(entries, dtype=object))


@pytest.fixture
def well():
    tset = TransformationSet(1, [ChainEntry(vec(cosh(K)), -K ** 2)])
    return build_first_order(tset)


class TestChains:
    def test_free_jordan_chain(self):
        k = 0.7
        chain = SpectralChain(-k ** 2, [free_modes(2, k, 1), free_modes(2, k, 1, ModeKind.ASSOCIATED1)])
        assert chain_is_valid(chain, Hamiltonian.free(2))

    def test_broken_chain(self):
        chain = SpectralChain(-1.0, [free_modes(1, 1.0, 0), free_modes(1, 2.0, 0)])
        assert not chain_is_valid(chain, Hamiltonian.free(1))

    def test_map_chain_trims_kernel(self, well):
        # ch x is in ker Q; its associated function maps onto the H- ground state
        associated = vec(E(K, -1 / (2 * K), 1) + E(-K, 1 / (2 * K), 1))
        chain = SpectralChain(-K ** 2, [vec(cosh(K)), associated * 0.5], ["phi", "assoc"])
        mapped = map_chain(well.q, chain, well.h_minus)
        assert mapped.trimmed == 1
        assert mapped.names == ["assoc"]
        assert chain_is_valid(mapped, well.h_minus)

    def test_empty_image(self, well):
        chain = SpectralChain(-K ** 2, [vec(cosh(K))])
        with pytest.raises(EmptyImage):
            map_chain(well.q, chain, well.h_minus)

    def test_mapped_states_keep_names(self, well):
        states = mapped_states(well.q, {"odd": vec(sinh(K)), "even": vec(cosh(K))})
        assert set(states) == {"odd", "even"}
        assert states["even"].is_zero()

    def test_zero_rate(self):
        with pytest.raises(ZeroRate):
            free_modes(2, 0.0, 0)


class TestNormalizability:
    def test_ground_state(self, well):
        state = well.q.apply(vec(sinh(K)))
        verdict = classify_normalizability(state, "ground")
        assert verdict.verdict is Verdict.NORMALIZABLE
        assert norm_growth(state).bounded

    def test_growing_state(self):
        verdict = classify_normalizability(vec(E(1), E(-0.5)))
        assert verdict.verdict is Verdict.NON_NORMALIZABLE
        assert "grows at +inf" in verdict.notes[0]

    def test_equal_rate_ratio_does_not_decay(self):
        state = RatScalar.of(E(1), cosh(1.0))
        assert classify_normalizability(state).verdict is Verdict.NON_NORMALIZABLE
        assert not norm_growth(state).bounded

    def test_pole_on_axis(self):
        state = RatScalar.of(ExpPoly.one(), sinh(1.0) * cosh(2.0))
        verdict = classify_normalizability(state)
        assert verdict.verdict is Verdict.NON_NORMALIZABLE

    def test_zero_state(self):
        with pytest.raises(ZeroState):
            classify_normalizability(vec(ExpPoly.zero(), ExpPoly.zero()))

    def test_constant_is_unbounded(self):
        assert not norm_growth(vec(ExpPoly.one())).bounded


class TestLinearAlgebra:
    def test_rank(self):
        states = [vec(E(1), E(-1)), vec(E(1, 2.0), E(-1, 2.0)), vec(E(-1), ExpPoly.zero())]
        assert linear_rank(states) == 2
        assert linear_rank([]) == 0

    def test_rank_over_common_denominator(self):
        f = cosh(1.0)
        a = RatScalar.of(E(1), f)
        b = RatScalar.of(E(1) * f, f * f)
        assert linear_rank([a, b]) == 1

    def test_dependence(self):
        a, b = vec(E(1), E(2)), vec(E(1, 2.0), E(2, 2.0))
        assert dependence_is_zero([2, -1], [a, b])
        assert not dependence_is_zero([1, 1], [a, b])


class TestSimilarity:
    def test_diagonalizable(self):
        a = np.array([[2.0, 1.0], [0.5, 3.0]])
        c, reduced = diagonalizing_similarity(a)
        assert abs(reduced[0, 1]) < 1e-12 and abs(reduced[1, 0]) < 1e-12
        assert np.allclose(sorted(np.diag(reduced).real), sorted(np.linalg.eigvals(a).real))

    def test_defective_is_triangularized(self):
        a = np.array([[2.0, 1.0], [0.0, 2.0]])
        _, reduced = diagonalizing_similarity(a)
        assert abs(reduced[1, 0]) < 1e-12
        assert np.allclose(np.diag(reduced), [2.0, 2.0])

    def test_similarity_of_states(self):
        c = np.array([[1.0, 1.0], [0.0, 1.0]])
        result = similarity(c, states=[vec(E(1), E(1))])
        assert result.states[0].num.entries[0].is_zero()
        assert result.states[0].num.entries[1].equals(E(1))
