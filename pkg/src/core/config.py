from typing import Optional, Tuple
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from .errors import InputError


def parse_grid(spec: str) -> Tuple[float, float, int]:
    """Parse a ``xmin:xmax:n`` grid string."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError(f"Grid must look like xmin:xmax:n, got {spec!r}")
    try:
        xmin, xmax, samples = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InputError(f"Invalid grid {spec!r}: {e}") from e
    if not xmin < xmax or samples < 2:
        raise InputError(f"Grid {spec!r} needs xmin < xmax and at least 2 samples")
    return xmin, xmax, samples


class Settings(BaseModel):
    """Process-wide settings: CLI flag, then environment, then default."""

    seed: int = 0
    tol: float = Field(1e-9, gt=0, description="W nonvanishing threshold (relative)")
    oracle_tol: float = Field(1e-9, gt=0)
    grid: Tuple[float, float, int] = (-5.0, 5.0, 201)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, v: str) -> str:
        return v.upper()

    @classmethod
    def from_env(cls, env_file: Optional[str] = None, **overrides) -> "Settings":
        load_dotenv(env_file)
        values = {}
        if os.getenv("SPECDESIGN_SEED"):
            values["seed"] = int(os.environ["SPECDESIGN_SEED"])
        if os.getenv("SPECDESIGN_TOL"):
            values["tol"] = float(os.environ["SPECDESIGN_TOL"])
        if os.getenv("SPECDESIGN_GRID"):
            values["grid"] = parse_grid(os.environ["SPECDESIGN_GRID"])
        if os.getenv("SPECDESIGN_LOG_LEVEL"):
            values["log_level"] = os.environ["SPECDESIGN_LOG_LEVEL"]
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
