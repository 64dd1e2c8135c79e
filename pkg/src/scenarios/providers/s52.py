from typing import Dict, List, Optional

from ...expalg import ExpPoly
from ...matfun import RatArray, RatVecFun
from ...model import ChainEntry, TransformationSet
from ...spectra import SpectralChain, diagonalizing_similarity
from .. import oracles
from ..base import Scenario
from ..models import DependenceRelation, ScenarioConfig, SimilarityReduction, TruthTableCase
from ..truth_tables import s52_table
from .common import E, free_family, kernel_from, pick_independent, vector


class DoubleEigenScenario(Scenario):
    """Two eigenfunctions of the free H+ at one energy, C5 = 0."""

    scenario_id = "s52"

    def phi1(self, config: ScenarioConfig) -> RatVecFun:
        c, k = config.c, config.k
        return vector(E(k) + E(-k, c(2)), E(k, c(3)) + E(-k, c(4)))

    def phi2(self, config: ScenarioConfig) -> RatVecFun:
        c, k = config.c, config.k
        return vector(E(-k, c(6)), E(k, c(7)) + E(-k, c(8)))

    def transformation_set(self, config: ScenarioConfig) -> TransformationSet:
        lam = -config.k ** 2
        return TransformationSet(2, [ChainEntry(self.phi1(config), lam, name="Phi1"),
                                     ChainEntry(self.phi2(config), lam, name="Phi2")])

    def preimages(self, config: ScenarioConfig) -> Dict[str, RatVecFun]:
        c, k = config.c, config.k
        states = free_family(k, 1)
        states["psi9"] = vector(E(k, -1 / (2 * k), 1) + E(-k, c(2) / (2 * k), 1),
                                E(k, -c(3) / (2 * k), 1) + E(-k, c(4) / (2 * k), 1))
        states["psi10"] = vector(E(-k, c(6) / (2 * k), 1),
                                 E(k, -c(7) / (2 * k), 1) + E(-k, c(8) / (2 * k), 1))
        states["psi11"] = vector(E(k), E(k, c(3)))
        states["psi12"] = vector(ExpPoly.zero(), E(k, c(7)))
        return states

    def preimage_chains(self, config: ScenarioConfig) -> List[SpectralChain]:
        lam = -config.k ** 2
        states = self.preimages(config)
        return [SpectralChain(lam, [self.phi1(config), states["psi9"]], ["Phi1", "psi9"]),
                SpectralChain(lam, [self.phi2(config), states["psi10"]], ["Phi2", "psi10"])]

    def closed_forms(self, config: ScenarioConfig) -> Dict[str, RatArray]:
        forms = oracles.s52_forms(config)
        if oracles.s52_is_square(config):
            forms.update({f"{name}@square": form
                          for name, form in oracles.s52_square_forms(config).items()})
        return forms

    def dependence_relations(self, config: ScenarioConfig) -> List[DependenceRelation]:
        c = config.c
        return [
            DependenceRelation("phi1", {"psi1": 1, "psi2": c(2), "psi3": c(3), "psi4": c(4)}),
            DependenceRelation("phi2", {"psi2": c(6), "psi3": c(7), "psi4": c(8)}),
        ]

    def similarity_reductions(self, config: ScenarioConfig) -> List[SimilarityReduction]:
        return oracles.s52_reductions(config, diagonalizing_similarity)

    def truth_table(self) -> List[TruthTableCase]:
        return s52_table()

    def bound_state_groups(self, config: ScenarioConfig,
                           states: Dict[str, RatVecFun]) -> Dict[str, List[str]]:
        return {"eigen": ["psi11", "psi12"]}

    def reverse_kernel(self, config: ScenarioConfig,
                       states: Dict[str, RatVecFun]) -> Optional[TransformationSet]:
        names = pick_independent(states, [[f"psi{i}"] for i in range(1, 5)], 2)
        if names is None:
            return None
        lam = -config.k ** 2
        return kernel_from(states, names, [lam, lam])
