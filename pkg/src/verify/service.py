from typing import TYPE_CHECKING, Dict, Optional, Sequence, Tuple
import logging

import numpy as np

from ..core.config import Settings
from ..core.errors import DimensionMismatch, OracleMissing
from ..darboux import (FirstOrderBuild, OrderNBuild, factorization_report, u0_spectrum_deviation,
                       u0_via_transformation_matrix)
from ..matfun import RatMatFun, RatScalar, const_inverse
from ..model import (Hamiltonian, IntertwiningOperator, TransformationSet, chain_residuals,
                     lift)
from ..spectra import SpectralChain, chain_is_valid, dependence_is_zero, map_chain, similarity
from .models import Check, VerificationReport
from .probes import probe_basis

if TYPE_CHECKING:
    from ..scenarios.base import Scenario
    from ..scenarios.models import ScenarioConfig

logger = logging.getLogger(__name__)

DEFAULT_GRID = np.linspace(-5.0, 5.0, 201)
SPECTRUM_TOL = 1e-8


def grid_residual(value, x: np.ndarray = DEFAULT_GRID) -> Tuple[float, Optional[float]]:
    """Worst |value| over the grid and where it occurs."""
    value = lift(value)
    if value.is_zero():
        return 0.0, None
    samples = np.abs(value.evaluate(x)).reshape(-1, len(x))
    worst = np.nan_to_num(samples, nan=np.inf).max(axis=0)
    i = int(np.argmax(worst))
    return float(worst[i]), float(x[i])


def grid_deviation(built, expected, x: np.ndarray = DEFAULT_GRID) -> Tuple[float, float]:
    """(max |built - expected|, max |expected|) on the grid."""
    a, b = lift(built).evaluate(x), lift(expected).evaluate(x)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot compare shapes {a.shape[:-1]} and {b.shape[:-1]}")
    deviation = np.nan_to_num(np.abs(a - b), nan=np.inf)
    return float(deviation.max()), float(np.nan_to_num(np.abs(b), nan=np.inf).max())


def compare_forms(name: str, built, expected, x: np.ndarray = DEFAULT_GRID,
                  tol: float = 1e-9) -> Check:
    """Exact comparison when the difference cancels structurally, grid comparison otherwise."""
    built, expected = lift(built), lift(expected)
    if built.shape != expected.shape:
        raise DimensionMismatch(f"{name}: shapes {built.shape} and {expected.shape} differ")
    deviation, scale = grid_deviation(built, expected, x)
    if (built - expected).is_zero():
        return Check(name, True, deviation, method="exact")
    ok = deviation <= tol * max(1.0, scale)
    return Check(name, ok, deviation, None if ok else f"scale={scale:.3g}", method="grid")


def _location(probe: Optional[str], x: Optional[float]) -> Optional[str]:
    if probe is None:
        return None
    return f"probe {probe}" + (f" at x={x:.6g}" if x is not None else "")


def verify_intertwining(q: IntertwiningOperator, h_plus: Hamiltonian, h_minus: Hamiltonian,
                        probes: Optional[Sequence[Tuple[str, object]]] = None,
                        grid: np.ndarray = DEFAULT_GRID) -> VerificationReport:
    """Q H+ = H- Q over the probe basis, at operator level, and through the coefficient identity."""
    if not (q.n == h_plus.n == h_minus.n):
        raise DimensionMismatch(f"Q on {q.n} channels, H+ on {h_plus.n}, H- on {h_minus.n}")
    report = VerificationReport()
    probes = probe_basis(q.n) if probes is None else probes

    exact, worst, worst_probe, worst_x = True, 0.0, None, None
    for name, phi in probes:
        r = q.apply(h_plus.apply(phi)) - h_minus.apply(q.apply(phi))
        if r.is_zero():
            continue
        exact = False
        residual, x = grid_residual(r, grid)
        if worst_probe is None or residual > worst:
            worst, worst_probe, worst_x = residual, name, x
    report.add(Check("intertwining.probes", exact, worst, _location(worst_probe, worst_x)))

    qop = q.as_differential_operator()
    op_residual = qop.compose(h_plus.as_differential_operator()) \
        - h_minus.as_differential_operator().compose(qop)
    bad = op_residual.nonzero_orders()
    report.add(Check("intertwining.operator", not bad, 0.0,
                     f"orders {bad}" if bad else None, method="operator"))

    # X_N V+ + 2 X_{N-1}' - V- X_N
    coefficient = RatMatFun.zero(q.n)
    if q.order:
        coefficient = (q.leading @ h_plus.potential) + q.lower[-1].derivative() * 2 \
            - (h_minus.potential @ q.leading)
    residual, x = grid_residual(coefficient, grid)
    report.add(Check("intertwining.coefficient_identity", coefficient.is_zero(), residual,
                     None if x is None else f"x={x:.6g}"))
    logger.debug(f"Intertwining over {len(probes)} probes: {'pass' if report.overall else 'fail'}")
    return report


def verify_kernel(q: IntertwiningOperator, tset: TransformationSet,
                  h_plus: Optional[Hamiltonian] = None, extras: Optional[Dict[str, object]] = None,
                  grid: np.ndarray = DEFAULT_GRID) -> VerificationReport:
    """Q Phi_l = 0 per entry, H+ invariance of the kernel, and informational images of extras."""
    report = VerificationReport()
    for l, e in enumerate(tset.entries):
        image = q.apply(e.phi)
        residual, x = grid_residual(image, grid)
        report.add(Check(f"kernel.{e.name or l}", image.is_zero(), residual,
                         None if x is None else f"x={x:.6g}"))
    if h_plus is not None:
        equations = chain_residuals(tset, h_plus)
        report.add(Check("kernel.chain_equations", all(r.is_zero() for r in equations)))
        invariant = all(q.apply(h_plus.apply(e.phi)).is_zero() for e in tset.entries)
        report.add(Check("kernel.invariance", invariant))
    for name, v in (extras or {}).items():
        image = q.apply(v)
        residual, x = grid_residual(image, grid)
        report.add(Check(f"kernel.extra.{name}", image.is_zero(), residual,
                         None if x is None else f"x={x:.6g}", informational=True))
    return report


def verify_factorization(build: FirstOrderBuild, h_plus: Optional[Hamiltonian] = None) -> VerificationReport:
    report = VerificationReport()
    for name, ok in factorization_report(build, h_plus).as_checks():
        report.add(Check(name, ok, method="operator"))
    report.add(Check("factorization.u0_constant", build.u0.is_constant(), informational=True,
                     method="operator"))
    return report


def verify_chains(q: IntertwiningOperator, h_minus: Hamiltonian,
                  chains: Sequence[SpectralChain]) -> VerificationReport:
    """Images of H+ chains are chains of H-, and (H- - lam)^(len) kills the top member."""
    report = VerificationReport()
    for i, chain in enumerate(chains):
        label = chain.names[-1] if chain.names else str(i)
        mapped = map_chain(q, chain, h_minus)
        report.add(Check(f"chain.{label}.mapped", chain_is_valid(mapped, h_minus)))
        top = mapped.members[-1]
        for _ in mapped.members:
            top = h_minus.apply(top) - top * mapped.lam
        report.add(Check(f"chain.{label}.nilpotent", top.is_zero()))
        report.add(Check(f"chain.{label}.trimmed", True, location=f"l0={mapped.trimmed}",
                         informational=True))
    return report


def verify_scenario_oracles(build: OrderNBuild, scenario: "Scenario", config: "ScenarioConfig",
                            tol: float = 1e-9) -> VerificationReport:
    """Compare built quantities and mapped states with the closed forms shipped by the scenario."""
    quantities = scenario.oracle_quantities(config)
    if not quantities:
        raise OracleMissing(f"Scenario {scenario.scenario_id} has no closed forms")
    grid = config.grid.points()
    states = scenario.candidate_states(config, build.q)
    built = {"W": build.wronskian, "Vminus": build.h_minus.potential}
    if isinstance(build, FirstOrderBuild):
        built.update({"X0": build.superpotential, "U0": build.u0})

    report = VerificationReport()
    for quantity in quantities:
        oracle = scenario.closed_form(config, quantity)
        base = quantity.split("@")[0]
        if base in built:
            value = built[base]
        elif base in states:
            value = states[base]
        else:
            raise OracleMissing(f"No built counterpart for oracle quantity {quantity}")
        if base == "W":
            value = RatScalar.of(value)
        report.add(compare_forms(f"oracle.{quantity}", value, oracle, grid, tol))

    for relation in scenario.dependence_relations(config):
        names = list(relation.coefficients)
        ok = dependence_is_zero([relation.coefficients[n] for n in names],
                                [states[n] for n in names])
        report.add(Check(f"dependence.{relation.name}", ok))

    for reduction in scenario.similarity_reductions(config):
        source = built.get(reduction.quantity, states.get(reduction.quantity))
        if source is None:
            continue
        c = np.asarray(reduction.c, dtype=complex)
        reduced = const_inverse(c) @ source
        if len(reduced.shape) == 2:
            reduced = reduced @ c
        if reduction.expected is not None:
            report.add(compare_forms(f"similarity.{reduction.name}", reduced, reduction.expected,
                                     grid, tol))
        else:
            report.add(_diagonal_set_check(f"similarity.{reduction.name}", reduced,
                                           reduction.diagonal, grid, tol))
    return report


def _diagonal_set_check(name: str, reduced: RatMatFun, diagonal, grid: np.ndarray,
                        tol: float) -> Check:
    """Reduced matrix is diagonal with the given entries in some order."""
    values = reduced.evaluate(grid)
    expected = [lift(d).evaluate(grid)[0] for d in diagonal]
    n = values.shape[0]
    scale = max(1.0, max(float(np.abs(e).max()) for e in expected))
    off = max((float(np.abs(values[i, j]).max()) for i in range(n) for j in range(n) if i != j),
              default=0.0)
    best = min(max(float(np.abs(values[i, i] - expected[p[i]]).max()) for i in range(n))
               for p in ([0, 1], [1, 0]))
    deviation = max(off, best)
    ok = deviation <= tol * scale
    return Check(name, ok, deviation, None if ok else f"off-diagonal {off:.3g}", method="grid")


def _random_similarity(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    while True:
        c = np.eye(n) + 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        if np.linalg.cond(c) < 1e3:
            return c


class VerificationService:
    """Assembles every identity check for a build into one report."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.logger = logging.getLogger(__name__)

    @property
    def grid(self) -> np.ndarray:
        xmin, xmax, samples = self.settings.grid
        return np.linspace(xmin, xmax, samples)

    def similarity_covariance(self, build: OrderNBuild, c=None) -> Check:
        """C^-1 Q C intertwines C^-1 H+ C with C^-1 H- C and annihilates C^-1 Phi.

        Without an explicit C a seeded random one is drawn.
        """
        if c is None:
            c = _random_similarity(build.q.n, self.settings.seed)
        c = np.asarray(c, dtype=complex)
        if c.shape != (build.q.n, build.q.n):
            raise DimensionMismatch(f"Similarity matrix {c.shape} for n={build.q.n}")
        plus = similarity(c, h=build.h_plus, q=build.q, states=build.tset.functions)
        minus = similarity(c, h=build.h_minus)
        qop = plus.q.as_differential_operator()
        residual = qop.compose(plus.h.as_differential_operator()) \
            - minus.h.as_differential_operator().compose(qop)
        stray = [e.name or str(i) for i, (e, v) in enumerate(zip(build.tset.entries, plus.states))
                 if not plus.q.apply(v).is_zero()]
        ok = residual.is_zero() and not stray
        location = None if ok else (f"kernel: {', '.join(stray)}" if stray else "operator")
        return Check("similarity.covariance", ok, location=location, method="operator")

    def run_all(self, build: OrderNBuild, scenario: Optional["Scenario"] = None,
                config: Optional["ScenarioConfig"] = None,
                extras: Optional[Dict[str, object]] = None) -> VerificationReport:
        grid = config.grid.points() if config is not None else self.grid
        report = VerificationReport()
        report.extend(verify_kernel(build.q, build.tset, build.h_plus, extras, grid))
        report.extend(verify_intertwining(build.q, build.h_plus, build.h_minus, grid=grid))

        if isinstance(build, FirstOrderBuild):
            report.extend(verify_factorization(build))
            two_routes = build.u0 - u0_via_transformation_matrix(build.tset)
            residual, _ = grid_residual(two_routes, grid)
            report.add(Check("u0.two_routes", two_routes.is_zero(), residual))
            deviation = u0_spectrum_deviation(build)
            report.add(Check("u0.spectrum_constant", deviation <= SPECTRUM_TOL, deviation,
                             method="numeric"))
        report.add(self.similarity_covariance(
            build, config.similarity if config is not None else None))

        if scenario is not None and config is not None:
            chains = scenario.preimage_chains(config)
            if chains:
                report.extend(verify_chains(build.q, build.h_minus, chains))
            if scenario.oracle_quantities(config):
                report.extend(verify_scenario_oracles(build, scenario, config,
                                                      self.settings.oracle_tol))
        failed = [c.name for c in report.failures()]
        if failed:
            self.logger.warning(f"Verification failed: {', '.join(failed)}")
        else:
            self.logger.info(f"Verification passed ({len(report.checks)} checks)")
        return report
