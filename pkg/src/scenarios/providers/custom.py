from typing import List, Optional

import numpy as np

from ...core.errors import ConstraintViolated
from ...expalg import ExpPoly
from ...matfun import MatFun
from ...model import ChainEntry, Hamiltonian, TransformationSet, lift
from ..base import Scenario
from ..models import CustomSpec, ScenarioConfig, TermSpec
from .common import vector


def terms_to_poly(terms: List[TermSpec]) -> ExpPoly:
    return sum((ExpPoly.exp(t.k, t.c, t.m) for t in terms), ExpPoly.zero())


class CustomScenario(Scenario):
    """A transformation set written out term by term in the config."""

    scenario_id = "custom"

    def _spec(self, config: ScenarioConfig) -> CustomSpec:
        if config.custom is None:
            raise ConstraintViolated("custom scenario needs a 'custom' block")
        return config.custom

    def transformation_set(self, config: ScenarioConfig) -> TransformationSet:
        spec = self._spec(config)
        entries = [ChainEntry(vector(*(terms_to_poly(c) for c in e.phi)), e.lam, e.sigma,
                              e.name or f"Phi{i + 1}")
                   for i, e in enumerate(spec.entries)]
        return TransformationSet(spec.n, entries)

    def h_plus(self, config: ScenarioConfig) -> Hamiltonian:
        spec = self._spec(config)
        if spec.potential is None:
            return Hamiltonian.free(spec.n)
        rows = [[terms_to_poly(cell) for cell in row] for row in spec.potential]
        return Hamiltonian(spec.n, lift(MatFun(np.array(rows, dtype=object))))

    def x_leading(self, config: ScenarioConfig) -> Optional[np.ndarray]:
        spec = self._spec(config)
        return None if spec.x1 is None else np.asarray(spec.x1, dtype=complex)
