from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import enum

from ..expalg import AsymptoticExponent
from ..matfun import RatVecFun


class Verdict(enum.Enum):
    NORMALIZABLE = "normalizable"
    NON_NORMALIZABLE = "non-normalizable"
    INCONCLUSIVE = "inconclusive"


class ModeKind(enum.Enum):
    EIGEN = "eigen"
    ASSOCIATED1 = "associated1"


@dataclass
class SpectralChain:
    """Psi_0, Psi_1, ... with (H - lam) Psi_0 = 0 and (H - lam) Psi_i = Psi_{i-1}."""

    lam: complex
    members: List[RatVecFun]
    names: List[str] = field(default_factory=list)
    trimmed: int = 0

    def __post_init__(self):
        self.lam = complex(self.lam)
        if not self.names:
            self.names = [f"psi{i}" for i in range(len(self.members))]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def eigenfunction(self) -> RatVecFun:
        return self.members[0]


@dataclass
class BoundStateVerdict:
    state: RatVecFun
    verdict: Verdict
    plus_inf: Tuple[AsymptoticExponent, AsymptoticExponent]
    minus_inf: Tuple[AsymptoticExponent, AsymptoticExponent]
    name: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def normalizable(self) -> bool:
        return self.verdict is Verdict.NORMALIZABLE

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "plus_inf": {"numerator": list(self.plus_inf[0]), "denominator": list(self.plus_inf[1])},
            "minus_inf": {"numerator": list(self.minus_inf[0]), "denominator": list(self.minus_inf[1])},
            "notes": self.notes,
        }


@dataclass
class NormGrowth:
    lengths: Tuple[float, ...]
    integrals: List[float]

    @property
    def bounded(self) -> bool:
        """Increments of the norm integral shrink as the window doubles."""
        i = self.integrals
        if any(v != v or v == float("inf") for v in i):
            return False
        first, second = i[-2] - i[-3], i[-1] - i[-2]
        return second <= max(0.75 * first, 1e-10 * i[-1])
