"""JSON build artifacts and their reconstruction into a runnable build."""
from pathlib import Path
from typing import Any, Dict, List, Optional
import json
import logging

import numpy as np
from pydantic import ValidationError

from ..core.errors import ArtifactError, ConstraintViolated
from ..darboux import FirstOrderBuild, OrderNBuild
from ..expalg.serialize import complex_from_json, complex_to_json, poly_from_json, poly_to_json
from ..matfun import Denominator, RatArray, const_inverse, wrap_rational
from ..model import (ChainEntry, Hamiltonian, IntertwiningOperator, TransformationSet,
                     check_nonvanishing, wronskian)
from ..scenarios import Instantiation, ScenarioConfig, ScenarioRun
from ..verify import VerificationReport

logger = logging.getLogger(__name__)

FILES = ("config.json", "set.json", "operator.json", "hamiltonians.json", "u0.json", "report.json")


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------

def _polys_to_json(entries: np.ndarray) -> List[Any]:
    if entries.ndim == 1:
        return [poly_to_json(p) for p in entries]
    return [_polys_to_json(row) for row in entries]


def rat_to_json(value: RatArray) -> Dict[str, Any]:
    return {
        "num": _polys_to_json(value.num.entries),
        "den": [{"base": poly_to_json(base), "power": power}
                for base, power in value.denominator.factors],
    }


def _nested_polys(data: Any, depth: int) -> np.ndarray:
    if depth == 1:
        out = np.empty(len(data), dtype=object)
        for i, d in enumerate(data):
            out[i] = poly_from_json(d)
        return out
    rows = [_nested_polys(row, 1) for row in data]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out


def rat_from_json(data: Dict[str, Any], ndim: int) -> RatArray:
    try:
        entries = _nested_polys(data["num"], ndim)
        factors = tuple((poly_from_json(f["base"]), int(f["power"])) for f in data["den"])
    except (KeyError, TypeError, IndexError) as e:
        raise ArtifactError(f"Malformed rational array: {e}") from e
    return wrap_rational(entries, Denominator(factors))


def matrix_to_json(m: np.ndarray) -> List[List[List[float]]]:
    return [[complex_to_json(v) for v in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(data: Any) -> np.ndarray:
    return np.array([[complex_from_json(v) for v in row] for row in data], dtype=complex)


# ---------------------------------------------------------------------------
# Build directories
# ---------------------------------------------------------------------------

def set_to_json(tset: TransformationSet) -> Dict[str, Any]:
    return {"n": tset.n, "entries": [
        {"phi": rat_to_json(e.phi), "lam": complex_to_json(e.lam), "sigma": e.sigma, "name": e.name}
        for e in tset.entries]}


def set_from_json(data: Dict[str, Any]) -> TransformationSet:
    try:
        return TransformationSet(int(data["n"]), [
            ChainEntry(rat_from_json(e["phi"], 1), complex_from_json(e["lam"]), int(e["sigma"]),
                       e.get("name"))
            for e in data["entries"]])
    except (KeyError, TypeError) as e:
        raise ArtifactError(f"Malformed transformation set: {e}") from e


def operator_to_json(q: IntertwiningOperator) -> Dict[str, Any]:
    return {"order": q.order, "leading": matrix_to_json(q.leading),
            "lower": [rat_to_json(c) for c in q.lower]}


def operator_from_json(data: Dict[str, Any]) -> IntertwiningOperator:
    try:
        return IntertwiningOperator(int(data["order"]), matrix_from_json(data["leading"]),
                                    [rat_from_json(c, 2) for c in data["lower"]])
    except (KeyError, TypeError) as e:
        raise ArtifactError(f"Malformed operator: {e}") from e


def write_build(out_dir: Path, run: ScenarioRun, report: VerificationReport) -> List[Path]:
    """Write every artifact of a build; returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    build = run.build
    u0: Optional[Dict[str, Any]] = None
    if isinstance(build, FirstOrderBuild):
        u0 = {"u0": rat_to_json(build.u0)}
    contents = {
        "config.json": run.config.model_dump(mode="json", exclude_none=True),
        "set.json": set_to_json(build.tset),
        "operator.json": operator_to_json(build.q),
        "hamiltonians.json": {"Vplus": rat_to_json(build.h_plus.potential),
                              "Vminus": rat_to_json(build.h_minus.potential)},
        "u0.json": u0,
        "report.json": report.to_dict(),
    }
    written = []
    for name, data in contents.items():
        path = out_dir / name
        path.write_text(dumps(data))
        written.append(path)
    logger.info(f"Wrote {len(written)} artifacts to {out_dir}")
    return written


def _read(path: Path) -> Any:
    if not path.is_file():
        raise ArtifactError(f"Missing artifact {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ArtifactError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def load_config(path: Path) -> ScenarioConfig:
    if not path.is_file():
        raise ArtifactError(f"Config file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ConstraintViolated(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
                            for err in e.errors())
        raise ConstraintViolated(f"{path}: {details}") from e


def load_build(build_dir: Path, tol: float = 1e-9) -> ScenarioRun:
    """Rebuild the run from its artifacts alone; nothing is recomputed from the templates."""
    if not build_dir.is_dir():
        raise ArtifactError(f"Build directory not found: {build_dir}")
    try:
        config = ScenarioConfig.model_validate(_read(build_dir / "config.json"))
    except ValidationError as e:
        raise ArtifactError(f"config.json does not validate: {e}") from e
    tset = set_from_json(_read(build_dir / "set.json"))
    q = operator_from_json(_read(build_dir / "operator.json"))
    potentials = _read(build_dir / "hamiltonians.json")
    try:
        h_plus = Hamiltonian(tset.n, rat_from_json(potentials["Vplus"], 2))
        h_minus = Hamiltonian(tset.n, rat_from_json(potentials["Vminus"], 2))
    except KeyError as e:
        raise ArtifactError(f"hamiltonians.json lacks {e}") from e
    u0_data = _read(build_dir / "u0.json")

    w = wronskian(tset)
    report = check_nonvanishing(w, (config.grid.xmin, config.grid.xmax), config.grid.samples, tol)
    instantiation = Instantiation(h_plus, tset, w, report)
    if u0_data is None:
        return ScenarioRun(config, instantiation, OrderNBuild(q, h_minus, h_plus, tset, w))

    u0 = rat_from_json(u0_data["u0"], 2)
    x1 = q.leading
    x1_inv = const_inverse(x1)
    x0t = x1_inv @ q.lower[0]
    build = FirstOrderBuild(q=q, h_minus=h_minus, h_plus=h_plus, tset=tset, wronskian=w,
                            q_plus=IntertwiningOperator(1, -x1_inv, [x0t @ x1_inv]), u0=u0,
                            u=(x1 @ u0) @ x1_inv, v0=u0 + x0t @ x0t, superpotential=x0t, x1=x1)
    return ScenarioRun(config, instantiation, build)


def load_report(build_dir: Path) -> VerificationReport:
    return VerificationReport.from_dict(_read(build_dir / "report.json"))
