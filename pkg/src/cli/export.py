from typing import Dict, Optional

import numpy as np
import pandas as pd

from ..core.errors import UnknownQuantity
from ..darboux import FirstOrderBuild
from ..matfun import RatArray, RatScalar
from ..model import lift
from ..scenarios import Scenario, ScenarioRun
from ..verify import VerificationReport

QUANTITIES = ("Vminus", "Vplus", "U0", "X0", "W")
SYMBOLS = {"Vminus": "V", "Vplus": "V", "U0": "U0", "X0": "X0", "W": "W"}


def resolve_quantity(run: ScenarioRun, scenario: Scenario, quantity: str) -> RatArray:
    """Built quantity or mapped state (``state:<name>``) by name."""
    build = run.build
    if quantity.startswith("state:"):
        name = quantity.split(":", 1)[1]
        states = scenario.candidate_states(run.config, build.q)
        if name not in states:
            raise UnknownQuantity(f"Unknown state {name!r}; known: {', '.join(sorted(states))}")
        return states[name]
    first_order: Dict[str, Optional[RatArray]] = {}
    if isinstance(build, FirstOrderBuild):
        first_order = {"U0": build.u0, "X0": build.superpotential}
    values = {"Vminus": build.h_minus.potential, "Vplus": build.h_plus.potential,
              "W": RatScalar.of(build.wronskian), **first_order}
    if quantity not in values:
        raise UnknownQuantity(f"Unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)} "
                              f"or state:<name>")
    return values[quantity]


def export_table(value: RatArray, x: np.ndarray, symbol: str) -> pd.DataFrame:
    """x followed by Re/Im columns of every entry, row-major."""
    samples = lift(value).evaluate(x)
    columns: Dict[str, np.ndarray] = {"x": x}
    if isinstance(value, RatScalar):
        columns[f"{symbol}.re"], columns[f"{symbol}.im"] = samples[0].real, samples[0].imag
    elif samples.ndim == 2:
        for i in range(samples.shape[0]):
            columns[f"{symbol}[{i}].re"] = samples[i].real
            columns[f"{symbol}[{i}].im"] = samples[i].imag
    else:
        for i in range(samples.shape[0]):
            for j in range(samples.shape[1]):
                columns[f"{symbol}[{i}][{j}].re"] = samples[i, j].real
                columns[f"{symbol}[{i}][{j}].im"] = samples[i, j].imag
    return pd.DataFrame(columns)


def symbol_for(quantity: str) -> str:
    return "psi" if quantity.startswith("state:") else SYMBOLS[quantity]


def to_csv(table: pd.DataFrame) -> str:
    return table.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def summary_table(report: VerificationReport) -> pd.DataFrame:
    """check / exact / residual / status rows of a report."""
    rows = [{"check": c.name, "exact": c.method == "exact", "residual": c.residual,
             "status": "info" if c.informational else ("pass" if c.exact else "FAIL")}
            for c in report.checks]
    return pd.DataFrame(rows, columns=["check", "exact", "residual", "status"])
