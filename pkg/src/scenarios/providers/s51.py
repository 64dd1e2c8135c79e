from typing import Dict, List, Optional

from ...matfun import RatArray, RatVecFun
from ...model import ChainEntry, TransformationSet
from ...spectra import SpectralChain
from .. import oracles
from ..base import Scenario
from ..models import DependenceRelation, ScenarioConfig, SimilarityReduction, TruthTableCase
from ..truth_tables import s51_table
from .common import E, free_family, kernel_from, pick_independent, vector


class TwoEnergyScenario(Scenario):
    """Free 2x2 H+ with eigenfunctions at two distinct energies in ker Q."""

    scenario_id = "s51"

    def phi1(self, config: ScenarioConfig) -> RatVecFun:
        c, k1 = config.c, config.k1
        return vector(E(k1) + E(-k1, c(2)), E(k1, c(3)) + E(-k1, c(4)))

    def phi2(self, config: ScenarioConfig) -> RatVecFun:
        c, k2 = config.c, config.k2
        return vector(E(k2, c(5)) + E(-k2, c(6)), E(k2, c(7)) + E(-k2, c(8)))

    def transformation_set(self, config: ScenarioConfig) -> TransformationSet:
        lam1, lam2 = config.lambdas
        return TransformationSet(2, [ChainEntry(self.phi1(config), lam1, name="Phi1"),
                                     ChainEntry(self.phi2(config), lam2, name="Phi2")])

    def preimages(self, config: ScenarioConfig) -> Dict[str, RatVecFun]:
        c, k1, k2 = config.c, config.k1, config.k2
        states = free_family(k1, 1)
        states.update(free_family(k2, 5))
        states["psi9"] = vector(E(k1, -1 / (2 * k1), 1) + E(-k1, c(2) / (2 * k1), 1),
                                E(k1, -c(3) / (2 * k1), 1) + E(-k1, c(4) / (2 * k1), 1))
        states["psi10"] = vector(E(k2, -c(5) / (2 * k2), 1) + E(-k2, c(6) / (2 * k2), 1),
                                 E(k2, -c(7) / (2 * k2), 1) + E(-k2, c(8) / (2 * k2), 1))
        states["psi11"] = vector(E(k1), E(k1, c(3)))
        states["psi12"] = vector(E(k2, c(5)), E(k2, c(7)))
        return states

    def preimage_chains(self, config: ScenarioConfig) -> List[SpectralChain]:
        lam1, lam2 = config.lambdas
        states = self.preimages(config)
        return [SpectralChain(lam1, [self.phi1(config), states["psi9"]], ["Phi1", "psi9"]),
                SpectralChain(lam2, [self.phi2(config), states["psi10"]], ["Phi2", "psi10"])]

    def closed_forms(self, config: ScenarioConfig) -> Dict[str, RatArray]:
        forms = oracles.s51_forms(config)
        case = oracles.s51_case(config)
        if case is not None:
            forms.update({f"{name}@{case}": form
                          for name, form in oracles.s51_case_forms(config, case).items()})
        return forms

    def dependence_relations(self, config: ScenarioConfig) -> List[DependenceRelation]:
        c = config.c
        return [
            DependenceRelation("lambda1", {"psi1": 1, "psi2": c(2), "psi3": c(3), "psi4": c(4)}),
            DependenceRelation("lambda2", {"psi5": c(5), "psi6": c(6), "psi7": c(7), "psi8": c(8)}),
        ]

    def similarity_reductions(self, config: ScenarioConfig) -> List[SimilarityReduction]:
        return oracles.s51_reductions(config)

    def truth_table(self) -> List[TruthTableCase]:
        return s51_table()

    def bound_state_groups(self, config: ScenarioConfig,
                           states: Dict[str, RatVecFun]) -> Dict[str, List[str]]:
        return {"lambda1": ["psi11"], "lambda2": ["psi12"]}

    def reverse_kernel(self, config: ScenarioConfig,
                       states: Dict[str, RatVecFun]) -> Optional[TransformationSet]:
        """Three independent images at each energy; Q3+ built on them undoes Q."""
        lam1, lam2 = config.lambdas
        first = pick_independent(states, [[f"psi{i}"] for i in range(1, 5)], 3)
        second = pick_independent(states, [[f"psi{i}"] for i in range(5, 9)], 3)
        if first is None or second is None:
            self.logger.warning("s51 images do not span two three-dimensional eigenspaces")
            return None
        return kernel_from(states, first + second, [lam1] * 3 + [lam2] * 3)
