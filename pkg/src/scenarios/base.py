from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from ..core.config import Settings
from ..core.errors import (DegenerateWronskian, OracleMissing, UnclassifiedConstants,
                           UnknownScenario, VanishingWronskian)
from ..darboux import OrderNBuild, build_first_order, build_order_n, build_reverse
from ..matfun import RatArray, RatVecFun
from ..model import (Hamiltonian, IntertwiningOperator, NonvanishingVerdict, TransformationSet,
                     check_nonvanishing, wronskian)
from ..spectra import SpectralChain, mapped_states
from .models import (DependenceRelation, ExpectedBoundStates, Instantiation, ScenarioConfig,
                     ScenarioRun, SimilarityReduction, TruthTableCase)


class Scenario(ABC):
    """Base interface for every bundled or custom reproduction."""

    scenario_id: str = ""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self._forms: Dict[str, Dict[str, RatArray]] = {}
        self._states: Dict[str, Tuple[IntertwiningOperator, Dict[str, RatVecFun]]] = {}

    # -- set-up -------------------------------------------------------------

    @abstractmethod
    def transformation_set(self, config: ScenarioConfig) -> TransformationSet:
        """Transformation functions built from the scenario's templates."""
        pass

    def h_plus(self, config: ScenarioConfig) -> Hamiltonian:
        return Hamiltonian.free(2)

    def x_leading(self, config: ScenarioConfig) -> Optional[np.ndarray]:
        return None

    def instantiate(self, config: ScenarioConfig, settings: Optional[Settings] = None) -> Instantiation:
        """H+ and the set, with W checked for zeros on the scenario window."""
        settings = settings or Settings()
        tset = self.transformation_set(config)
        w = wronskian(tset)
        if w.is_zero():
            raise DegenerateWronskian(
                f"Wronskian of {self.scenario_id} vanishes identically for these constants")
        report = check_nonvanishing(w, (config.grid.xmin, config.grid.xmax),
                                    config.grid.samples, settings.tol)
        if report.verdict is NonvanishingVerdict.FAIL:
            raise VanishingWronskian(f"Wronskian of {self.scenario_id} has a real zero near "
                                     f"x={report.argmin:.6g}: {'; '.join(report.notes)}")
        self.logger.info(f"Instantiated {self.scenario_id}: W check {report.verdict.value}")
        return Instantiation(self.h_plus(config), tset, w, report)

    def build(self, config: ScenarioConfig, settings: Optional[Settings] = None) -> ScenarioRun:
        inst = self.instantiate(config, settings)
        if inst.tset.order == 1:
            build = build_first_order(inst.tset, self.x_leading(config), inst.h_plus)
        else:
            build = build_order_n(inst.tset, self.x_leading(config), inst.h_plus)
        return ScenarioRun(config, inst, build)

    # -- states -------------------------------------------------------------

    def preimages(self, config: ScenarioConfig) -> Dict[str, RatVecFun]:
        """Named H+ functions whose images under Q are the named H- states."""
        return {}

    def candidate_states(self, config: ScenarioConfig, q: IntertwiningOperator) -> Dict[str, RatVecFun]:
        key = config.model_dump_json()
        cached = self._states.get(key)
        if cached is None or cached[0] is not q:
            cached = (q, mapped_states(q, self.preimages(config)))
            self._states[key] = cached
        return cached[1]

    def preimage_chains(self, config: ScenarioConfig) -> List[SpectralChain]:
        return []

    # -- closed forms -------------------------------------------------------

    def closed_forms(self, config: ScenarioConfig) -> Dict[str, RatArray]:
        return {}

    def oracle_quantities(self, config: ScenarioConfig) -> List[str]:
        return list(self._cached_forms(config))

    def _cached_forms(self, config: ScenarioConfig) -> Dict[str, RatArray]:
        key = config.model_dump_json()
        if key not in self._forms:
            self._forms[key] = self.closed_forms(config)
        return self._forms[key]

    def closed_form(self, config: ScenarioConfig, quantity: str) -> RatArray:
        forms = self._cached_forms(config)
        if quantity not in forms:
            raise OracleMissing(f"No closed form for {quantity!r} in {self.scenario_id}")
        return forms[quantity]

    def dependence_relations(self, config: ScenarioConfig) -> List[DependenceRelation]:
        return []

    def similarity_reductions(self, config: ScenarioConfig) -> List[SimilarityReduction]:
        return []

    # -- bound states -------------------------------------------------------

    def truth_table(self) -> List[TruthTableCase]:
        return []

    def expected_bound_states(self, config: ScenarioConfig) -> ExpectedBoundStates:
        matches = [case for case in self.truth_table() if case.predicate(config)]
        if not matches:
            raise UnclassifiedConstants(
                f"No {self.scenario_id} truth-table branch matches constants {config.constants}")
        first = matches[0]
        others = [case.branch for case in matches[1:]]
        if any(case.expected != first.expected for case in matches[1:]):
            raise UnclassifiedConstants(
                f"Branches {[first.branch] + others} overlap with different expectations")
        if others:
            self.logger.warning(f"{self.scenario_id} branches overlap: {[first.branch] + others}")
        return ExpectedBoundStates(self.scenario_id, first.branch, first.condition,
                                   dict(first.expected), others)

    def bound_state_groups(self, config: ScenarioConfig,
                           states: Dict[str, RatVecFun]) -> Dict[str, List[str]]:
        """Kind of bound state -> names of candidate states counted for it."""
        return {}

    def sample_constants(self, rng: np.random.Generator, branch: str) -> Dict[str, complex]:
        for case in self.truth_table():
            if case.branch == branch:
                return case.sampler(rng)
        raise UnknownScenario(f"Unknown {self.scenario_id} branch {branch!r}")

    def reverse_kernel(self, config: ScenarioConfig,
                       states: Dict[str, RatVecFun]) -> Optional[TransformationSet]:
        """Independent H- states spanning the kernel of the reverse operator, if bundled."""
        return None

    def reverse_build(self, run: ScenarioRun) -> Optional[OrderNBuild]:
        states = self.candidate_states(run.config, run.build.q)
        kernel = self.reverse_kernel(run.config, states)
        if kernel is None:
            return None
        return build_reverse(run.build.h_minus, kernel)
