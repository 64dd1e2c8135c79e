from dataclasses import replace
from typing import Callable, Dict, List, Optional, Tuple
import logging

import numpy as np
from pydantic import ValidationError

from ..core.config import Settings
from ..core.errors import (ConstraintViolated, DegenerateError, UnclassifiedConstants,
                           UnknownScenario)
from ..model import NonvanishingVerdict
from ..spectra import Verdict, classify_normalizability, linear_rank, norm_growth
from ..verify import Check, VerificationReport, VerificationService, grid_residual
from .base import Scenario
from .models import BoundStateCensus, GridSpec, ScenarioConfig, ScenarioRun, TruthTableCase
from .providers import CustomScenario, DoubleEigenScenario, JordanPairScenario, TwoEnergyScenario

MAX_DRAWS = 200


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _s51_case1(k1: complex = 1.0, k2: complex = 2.0, x0: complex = 0.7) -> Dict[str, complex]:
    """Two decoupled Poschl-Teller wells, the second centred at x0."""
    return {"k1": k1, "k2": k2, "C2": 1.0, "C3": 0.0, "C4": 0.0, "C5": 0.0, "C6": 0.0,
            "C7": 0.25 * np.exp(-k2 * x0), "C8": 0.25 * np.exp(k2 * x0)}


def _s51_case2(C2: complex = 0.4, C3: complex = 0.3, C6: complex = 0.8,
               k1: complex = 1.0, k2: complex = 0.5) -> Dict[str, complex]:
    return {"k1": k1, "k2": k2, "C2": C2, "C3": C3, "C6": C6,
            "C4": C2 * C3 - 1 / (2 * C6), "C5": -C2 * C6,
            "C7": 0.5 - C2 * C3 * C6, "C8": C3 * C6}


def _s51_case3(alpha: complex = 0.5, C3: complex = 0.3, C5: complex = 0.4,
               k1: complex = 1.0, k2: complex = 0.5) -> Dict[str, complex]:
    c7 = 0.5 + C3 * C5
    return {"k1": k1, "k2": k2, "alpha": alpha, "C2": alpha * C5, "C3": C3, "C4": alpha * c7,
            "C5": C5, "C6": C5, "C7": c7, "C8": c7}


def _s51_case4(C3: complex = 0.3, C5: complex = 0.4, C6: complex = 0.6,
               k1: complex = 1.0, k2: complex = 0.5) -> Dict[str, complex]:
    return {"k1": k1, "k2": k2, "C2": 0.0, "C3": C3, "C4": 0.0, "C5": C5, "C6": C6,
            "C7": 1 + C3 * C5, "C8": C3 * C6}


def _fixed(values: Dict[str, complex]) -> Callable[..., Dict[str, complex]]:
    def preset(**overrides) -> Dict[str, complex]:
        out = dict(values)
        out.update(overrides)
        return out
    return preset


PRESETS: Dict[str, Tuple[str, Callable[..., Dict[str, complex]]]] = {
    "s51-generic": ("s51", _fixed({"k1": 1.0, "k2": 0.5, "C2": 0.5, "C3": 0.3, "C4": -0.4,
                                   "C5": 0.2, "C6": 0.7, "C7": 0.9, "C8": 0.6})),
    "s51-case1": ("s51", _s51_case1),
    "s51-case2": ("s51", _s51_case2),
    "s51-case3": ("s51", _s51_case3),
    "s51-case4": ("s51", _s51_case4),
    "s52-generic": ("s52", _fixed({"k": 1.0, "C2": 0.5, "C3": 0.3, "C4": -0.4, "C6": 0.7,
                                   "C7": 0.9, "C8": 0.6})),
    "s52-c6zero": ("s52", _fixed({"k": 1.0, "C2": 0.5, "C3": 0.3, "C4": 0.2, "C6": 0.0,
                                "C7": 0.6, "C8": 0.9})),
    "s52-square": ("s52", _fixed({"k": 1.0, "C2": 0.5, "C3": 0.3, "C4": 0.15, "C6": 0.0,
                                "C7": 0.8, "C8": 0.4})),
    "s53-generic": ("s53", _fixed({"k": 1.0, "C2": 0.5, "C3": 0.3, "C4": -0.4, "C6": 0.7,
                                   "C7": -0.9, "C8": -1.2})),
    "s53-delta0": ("s53", _fixed({"k": 1.0, "C2": 0.5, "C3": 0.3, "C4": 0.15, "C6": 0.4,
                                  "C7": 0.6, "C8": 0.62})),
}

REPRODUCE_PRESETS: Dict[str, List[str]] = {
    "s51": ["s51-generic", "s51-case1", "s51-case2", "s51-case3", "s51-case4"],
    "s52": ["s52-generic", "s52-c6zero", "s52-square"],
    "s53": ["s53-generic", "s53-delta0"],
}


def _prefixed(report: VerificationReport, label: str) -> VerificationReport:
    return VerificationReport([replace(c, name=f"{label}:{c.name}") for c in report.checks])


class ScenarioService:
    """Registry of scenario providers plus the build, census and reproduce pipelines."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.providers: Dict[str, Scenario] = {}
        self.logger = logging.getLogger(__name__)
        self.verifier = VerificationService(self.settings)
        for provider in (TwoEnergyScenario(), DoubleEigenScenario(), JordanPairScenario(),
                         CustomScenario()):
            self.register_provider(provider)

    def register_provider(self, provider: Scenario):
        self.providers[provider.scenario_id] = provider
        self.logger.info(f"Registered scenario provider: {provider.scenario_id}")

    def get_provider(self, scenario_id: str) -> Scenario:
        provider = self.providers.get(scenario_id)
        if provider is None:
            raise UnknownScenario(f"Scenario not found: {scenario_id}")
        return provider

    # -- configs ------------------------------------------------------------

    def default_grid(self) -> GridSpec:
        xmin, xmax, samples = self.settings.grid
        return GridSpec(xmin=xmin, xmax=xmax, samples=samples)

    def preset(self, name: str, grid: Optional[GridSpec] = None, **overrides) -> ScenarioConfig:
        """Named constant set, with keyword overrides of its free parameters."""
        if name not in PRESETS:
            raise UnknownScenario(f"Unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
        scenario_id, make = PRESETS[name]
        try:
            constants = make(**{k: v for k, v in overrides.items() if v is not None})
        except TypeError as e:
            raise ConstraintViolated(f"Preset {name} does not take these overrides: {e}") from e
        return self.config(scenario_id, constants, grid, preset=name)

    def config(self, scenario_id: str, constants: Dict[str, complex],
               grid: Optional[GridSpec] = None, preset: Optional[str] = None) -> ScenarioConfig:
        try:
            return ScenarioConfig(id=scenario_id, constants=constants,
                                  grid=grid or self.default_grid(), preset=preset)
        except ValidationError as e:
            raise ConstraintViolated(f"Invalid {scenario_id} constants: {e}") from e

    # -- pipeline -----------------------------------------------------------

    def build(self, config: ScenarioConfig) -> ScenarioRun:
        return self.get_provider(config.id).build(config, self.settings)

    def verify(self, run: ScenarioRun) -> VerificationReport:
        scenario = self.get_provider(run.config.id)
        report = self.verifier.run_all(run.build, scenario, run.config)
        reverse = self.reverse_check(run)
        if reverse is not None:
            report.add(reverse)
        return report

    def reverse_check(self, run: ScenarioRun) -> Optional[Check]:
        """The reverse operator built on mapped states must bring H- back to a free H+."""
        try:
            reverse = self.get_provider(run.config.id).reverse_build(run)
        except DegenerateError as e:
            self.logger.warning(f"Reverse build for {run.config.id} is degenerate: {e}")
            return Check("reverse.free", False, location=str(e), informational=True)
        if reverse is None:
            return None
        recovered = reverse.h_minus.potential
        residual, x = grid_residual(recovered, run.config.grid.points())
        return Check(f"reverse.order{reverse.order}.free", recovered.is_zero(), residual,
                     None if x is None else f"x={x:.6g}")

    # -- bound states -------------------------------------------------------

    def census(self, run: ScenarioRun) -> BoundStateCensus:
        """Count independent normalizable mapped states per kind and compare with the table."""
        config = run.config
        scenario = self.get_provider(config.id)
        expected = scenario.expected_bound_states(config)
        states = scenario.candidate_states(config, run.build.q)
        window = (config.grid.xmin, config.grid.xmax)
        counts: Dict[str, int] = {}
        verdicts: List[Dict] = []
        agrees = True
        for kind, names in scenario.bound_state_groups(config, states).items():
            bound = []
            for name in names:
                state = states[name]
                if state.is_zero():
                    verdicts.append({"name": name, "kind": kind, "verdict": "zero"})
                    continue
                verdict = classify_normalizability(state, name, window)
                bounded = norm_growth(state).bounded
                if verdict.verdict is Verdict.INCONCLUSIVE:
                    normalizable = bounded
                else:
                    normalizable = verdict.normalizable
                    agrees = agrees and normalizable == bounded
                record = verdict.to_dict()
                record.update(kind=kind, growth_bounded=bounded)
                verdicts.append(record)
                if normalizable:
                    bound.append(state)
            counts[kind] = linear_rank(bound)
        census = BoundStateCensus(expected, counts, verdicts, agrees)
        self.logger.info(f"{config.id} branch {expected.branch}: counts {counts}, "
                         f"expected {expected.counts}")
        return census

    def _case(self, scenario: Scenario, branch: str) -> TruthTableCase:
        for case in scenario.truth_table():
            if case.branch == branch:
                return case
        raise UnknownScenario(f"Unknown {scenario.scenario_id} branch {branch!r}")

    def sample_config(self, scenario_id: str, branch: str, rng: np.random.Generator,
                      grid: Optional[GridSpec] = None) -> ScenarioConfig:
        """Admissible constants inside one truth-table branch, by rejection."""
        scenario = self.get_provider(scenario_id)
        case = self._case(scenario, branch)
        for _ in range(MAX_DRAWS):
            try:
                config = self.config(scenario_id, case.sampler(rng), grid)
            except ConstraintViolated:
                continue
            if not case.predicate(config):
                continue
            try:
                expected = scenario.expected_bound_states(config)
                inst = scenario.instantiate(config, self.settings)
            except (UnclassifiedConstants, DegenerateError):
                continue
            if expected.branch != branch or expected.overlaps:
                continue
            if inst.admissibility.verdict is NonvanishingVerdict.INCONCLUSIVE and not case.imaginary_k:
                continue
            return config
        raise UnclassifiedConstants(
            f"No admissible {scenario_id} draw in branch {branch} after {MAX_DRAWS} attempts")

    def battery(self, scenario_id: str, rng: Optional[np.random.Generator] = None,
                grid: Optional[GridSpec] = None) -> List[Tuple[ScenarioRun, BoundStateCensus]]:
        """One sampled constant tuple per truth-table branch, built and counted."""
        rng = rng or np.random.default_rng(self.settings.seed)
        out = []
        for case in self.get_provider(scenario_id).truth_table():
            config = self.sample_config(scenario_id, case.branch, rng, grid)
            run = self.build(config)
            out.append((run, self.census(run)))
        return out

    # -- reproduce ----------------------------------------------------------

    def reproduce(self, scenario_id: str, rng: Optional[np.random.Generator] = None) -> VerificationReport:
        """Every acceptance check for a bundled scenario: presets, then the truth-table battery."""
        if scenario_id not in REPRODUCE_PRESETS:
            raise UnknownScenario(f"Nothing to reproduce for scenario {scenario_id!r}")
        report = VerificationReport()
        for name in REPRODUCE_PRESETS[scenario_id]:
            run = self.build(self.preset(name))
            report.extend(_prefixed(self.verify(run), name))
            report.add(self._census_check(name, self.census(run)))
        for run, census in self.battery(scenario_id, rng):
            label = f"battery.{census.expected.branch}"
            report.extend(_prefixed(self.verify(run), label))
            report.add(self._census_check(label, census))
        self.logger.info(f"Reproduced {scenario_id}: {len(report.checks)} checks, "
                         f"{len(report.failures())} failed")
        return report

    @staticmethod
    def _census_check(label: str, census: BoundStateCensus) -> Check:
        detail = f"counts={census.counts} expected={census.expected.counts}"
        return Check(f"{label}:census", census.matches and census.growth_agrees,
                     location=detail, method="numeric")
