from typing import Dict, List, Optional

from ...matfun import RatArray, RatVecFun
from ...model import TransformationSet
from ...spectra import ModeKind, SpectralChain
from .. import oracles
from ..base import Scenario
from ..models import (DependenceRelation, ScenarioConfig, SimilarityReduction, TruthTableCase,
                      is_zero)
from ..truth_tables import s53_table
from .common import E, free_family, kernel_from, pick_independent, vector


class JordanPairScenario(Scenario):
    """An eigenfunction and its first associated function of the free H+, C5 = 0."""

    scenario_id = "s53"

    def eigen(self, config: ScenarioConfig) -> RatVecFun:
        c, k = config.c, config.k
        return vector(E(k) + E(-k, c(2)), E(k, c(3)) + E(-k, c(4)))

    def associated(self, config: ScenarioConfig) -> RatVecFun:
        c, k = config.c, config.k
        f = 1 / (2 * k)
        return vector(E(k, -f, 1) + E(-k, c(2) * f, 1) + E(-k, c(6)),
                      E(k, -c(3) * f, 1) + E(-k, c(4) * f, 1) + E(k, c(7)) + E(-k, c(8)))

    def transformation_set(self, config: ScenarioConfig) -> TransformationSet:
        return TransformationSet.from_chain_blocks(
            2, [(-config.k ** 2, [self.associated(config), self.eigen(config)])])

    def second_associated(self, config: ScenarioConfig) -> RatVecFun:
        """H+ preimage one step above the associated transformation function."""
        c, k = config.c, config.k
        g = 1 / (8 * k ** 2)
        h = 1 / (2 * k)

        def quadratic(a: complex, b: complex):
            return (E(k, a * g, 2) + E(k, -a * g / k, 1)
                    + E(-k, b * g, 2) + E(-k, b * g / k, 1))

        first = quadratic(1, c(2)) + E(-k, c(6) * h, 1) + E(-k, c(6) * h * h)
        second = (quadratic(c(3), c(4)) + E(k, -c(7) * h, 1) + E(k, c(7) * h * h)
                  + E(-k, c(8) * h, 1) + E(-k, c(8) * h * h))
        return vector(first, second)

    def preimages(self, config: ScenarioConfig) -> Dict[str, RatVecFun]:
        c, k = config.c, config.k
        states = free_family(k, 1, suffix="_0")
        states.update(free_family(k, 1, ModeKind.ASSOCIATED1, suffix="_1"))
        f = 1 / (2 * k)
        states["psi5_0"] = self.second_associated(config)
        states["psi6_0"] = vector(E(k), E(k, c(3)))
        states["psi6_1"] = vector(E(k, -f, 1), E(k, -c(3) * f, 1) + E(k, c(7)))
        return states

    def preimage_chains(self, config: ScenarioConfig) -> List[SpectralChain]:
        lam = -config.k ** 2
        states = self.preimages(config)
        return [
            SpectralChain(lam, [self.eigen(config), self.associated(config), states["psi5_0"]],
                          ["Phi2", "Phi1", "psi5_0"]),
            SpectralChain(lam, [states["psi6_0"], states["psi6_1"]], ["psi6_0", "psi6_1"]),
        ]

    def closed_forms(self, config: ScenarioConfig) -> Dict[str, RatArray]:
        forms = oracles.s53_forms(config)
        if is_zero(config.c(2)) and is_zero(config.c(4)):
            forms.update({f"{name}@case3": form
                          for name, form in oracles.s53_case3_forms(config).items()})
        return forms

    def dependence_relations(self, config: ScenarioConfig) -> List[DependenceRelation]:
        c = config.c
        return [
            DependenceRelation("eigen", {"psi1_0": 1, "psi2_0": c(2), "psi3_0": c(3),
                                         "psi4_0": c(4)}),
            DependenceRelation("associated", {"psi1_1": 1, "psi2_1": c(2), "psi3_1": c(3),
                                              "psi4_1": c(4), "psi2_0": c(6), "psi3_0": c(7),
                                              "psi4_0": c(8)}),
        ]

    def similarity_reductions(self, config: ScenarioConfig) -> List[SimilarityReduction]:
        return oracles.s53_reductions(config)

    def truth_table(self) -> List[TruthTableCase]:
        return s53_table()

    def bound_state_groups(self, config: ScenarioConfig,
                           states: Dict[str, RatVecFun]) -> Dict[str, List[str]]:
        if states["psi6_0"].is_zero():
            return {"eigen": ["psi6_1"], "associated": []}
        return {"eigen": ["psi6_0"], "associated": ["psi6_1"]}

    def reverse_kernel(self, config: ScenarioConfig,
                       states: Dict[str, RatVecFun]) -> Optional[TransformationSet]:
        """Three mapped Jordan pairs, each listed associated-first."""
        pairs = [[f"psi{i}_1", f"psi{i}_0"] for i in range(1, 5)]
        names = pick_independent(states, pairs, 3)
        if names is None:
            self.logger.warning("s53 images do not contain three independent Jordan pairs")
            return None
        lam = -config.k ** 2
        return kernel_from(states, names, [lam] * 6, [1, 0] * 3)
