from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import (BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer,
                      model_validator)
from typing_extensions import Annotated

from ..darboux import OrderNBuild
from ..matfun import RatArray
from ..model import Hamiltonian, NonvanishingReport, TransformationSet

ZERO = 1e-10


def _to_complex(value: Any) -> complex:
    if isinstance(value, complex):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not complex values")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    raise ValueError(f"expected a number or a [re, im] pair, got {value!r}")


ComplexValue = Annotated[
    complex,
    BeforeValidator(_to_complex),
    PlainSerializer(lambda z: [z.real, z.imag], return_type=list),
]

SCENARIO_CONSTANTS = {
    "s51": {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "k1", "k2", "alpha"},
    "s52": {"C2", "C3", "C4", "C6", "C7", "C8", "k", "alpha"},
    "s53": {"C2", "C3", "C4", "C6", "C7", "C8", "k", "alpha"},
    "custom": set(),
}
DERIVED_NAMES = {"Delta1", "Delta2", "delta1", "delta2", "Delta27", "Delta28", "Delta38",
                 "M1", "M2", "M3", "M4"}


def is_zero(value: complex) -> bool:
    return abs(value) <= ZERO


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    xmin: float = -5.0
    xmax: float = 5.0
    samples: int = Field(201, ge=2)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not self.xmin < self.xmax:
            raise ValueError(f"grid needs xmin < xmax, got {self.xmin} and {self.xmax}")
        return self

    def points(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.samples)


class TermSpec(BaseModel):
    """One c x^m e^{kx} term."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    c: ComplexValue = 1.0
    m: int = Field(0, ge=0)
    k: ComplexValue = 0.0


class CustomEntry(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    phi: List[List[TermSpec]]
    lam: ComplexValue
    sigma: int = Field(0, ge=0, le=1)
    name: Optional[str] = None


class CustomSpec(BaseModel):
    """A hand-written transformation set; V+ is free unless a potential is given."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    n: int = Field(..., ge=1)
    entries: List[CustomEntry]
    potential: Optional[List[List[List[TermSpec]]]] = None
    x1: Optional[List[List[ComplexValue]]] = None

    @model_validator(mode="after")
    def _shapes(self) -> "CustomSpec":
        for i, e in enumerate(self.entries):
            if len(e.phi) != self.n:
                raise ValueError(f"entry {e.name or i} has {len(e.phi)} components, n={self.n}")
        if self.potential is not None and (len(self.potential) != self.n
                                           or any(len(r) != self.n for r in self.potential)):
            raise ValueError(f"potential must be {self.n}x{self.n}")
        if self.x1 is not None and (len(self.x1) != self.n
                                    or any(len(r) != self.n for r in self.x1)):
            raise ValueError(f"x1 must be {self.n}x{self.n}")
        return self


class ScenarioConfig(BaseModel):
    """Validated scenario input. Derived constants are properties, never fields."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    id: Literal["s51", "s52", "s53", "custom"]
    constants: Dict[str, ComplexValue] = Field(default_factory=dict)
    grid: GridSpec = Field(default_factory=GridSpec)
    similarity: Optional[List[List[ComplexValue]]] = None
    preset: Optional[str] = None
    custom: Optional[CustomSpec] = None

    @model_validator(mode="after")
    def _structural(self) -> "ScenarioConfig":
        errors = self.constraint_errors()
        if errors:
            raise ValueError("; ".join(errors))
        return self

    def constraint_errors(self) -> List[str]:
        errors = []
        allowed = SCENARIO_CONSTANTS[self.id]
        for name, value in self.constants.items():
            if name in DERIVED_NAMES:
                errors.append(f"{name} is derived from C2..C8 and cannot be supplied")
            elif name == "C1":
                if abs(value - 1) > ZERO:
                    errors.append("C1 is fixed to 1")
            elif name == "C5" and self.id in ("s52", "s53"):
                if not is_zero(value):
                    errors.append(f"{self.id} fixes C5 = 0")
            elif name not in allowed:
                errors.append(f"unknown constant {name!r} for scenario {self.id}")
        if self.id == "s51":
            for name in ("k1", "k2"):
                if name not in self.constants:
                    errors.append(f"s51 needs {name}")
                elif is_zero(self.constants[name]):
                    errors.append(f"{name} must be nonzero")
            if "k1" in self.constants and "k2" in self.constants \
                    and is_zero(self.constants["k1"] ** 2 - self.constants["k2"] ** 2):
                errors.append("s51 needs lambda1 != lambda2, i.e. k1^2 != k2^2")
        elif self.id in ("s52", "s53"):
            if "k" not in self.constants:
                errors.append(f"{self.id} needs k")
            elif is_zero(self.constants["k"]):
                errors.append("k must be nonzero")
        elif self.custom is None:
            errors.append("custom scenario needs a 'custom' block")
        if "alpha" in self.constants and is_zero(self.constants["alpha"]):
            errors.append("alpha must be nonzero")
        if self.similarity is not None:
            c = np.asarray(self.similarity, dtype=complex)
            if c.ndim != 2 or c.shape[0] != c.shape[1]:
                errors.append("similarity matrix must be square")
            elif self.id != "custom" and c.shape[0] != 2 \
                    or self.custom is not None and c.shape[0] != self.custom.n:
                errors.append("similarity matrix must be n x n")
            elif abs(np.linalg.det(c)) <= ZERO:
                errors.append("similarity matrix must be nondegenerate")
        return errors

    def with_constants(self, **updates) -> "ScenarioConfig":
        constants = dict(self.constants)
        constants.update({k: complex(v) for k, v in updates.items()})
        return ScenarioConfig(id=self.id, constants=constants, grid=self.grid,
                              similarity=self.similarity, preset=self.preset, custom=self.custom)

    # -- constants ----------------------------------------------------------

    def c(self, i: int) -> complex:
        if i == 1:
            return 1.0 + 0j
        if i == 5 and self.id in ("s52", "s53"):
            return 0j
        return complex(self.constants.get(f"C{i}", 0.0))

    @property
    def k(self) -> complex:
        return complex(self.constants.get("k", self.constants.get("k1", 0.0)))

    @property
    def k1(self) -> complex:
        return complex(self.constants.get("k1", self.constants.get("k", 0.0)))

    @property
    def k2(self) -> complex:
        return complex(self.constants.get("k2", self.constants.get("k", 0.0)))

    @property
    def alpha(self) -> complex:
        return complex(self.constants.get("alpha", 1.0))

    @property
    def lambdas(self) -> Tuple[complex, complex]:
        return -self.k1 ** 2, -self.k2 ** 2

    # -- derived ------------------------------------------------------------

    @property
    def delta1(self) -> complex:
        return self.c(4) - self.c(2) * self.c(3)

    @property
    def delta2(self) -> complex:
        return self.c(5) * self.c(8) - self.c(6) * self.c(7)

    @property
    def small_delta1(self) -> complex:
        return self.c(4) + self.c(2) * self.c(3)

    @property
    def small_delta2(self) -> complex:
        return self.c(5) * self.c(8) + self.c(6) * self.c(7)

    @property
    def d27(self) -> complex:
        return self.c(2) * self.c(7) - self.c(3) * self.c(6)

    @property
    def d28(self) -> complex:
        return self.c(2) * self.c(8) - self.c(4) * self.c(6)

    @property
    def d38(self) -> complex:
        return self.c(3) * self.c(8) - self.c(4) * self.c(7)

    @property
    def m1(self) -> np.ndarray:
        c3 = self.c(3)
        return np.array([[c3, -1], [c3 ** 2, -c3]], dtype=complex)

    @property
    def m2(self) -> np.ndarray:
        c2, c4 = self.c(2), self.c(4)
        return np.array([[c2 * c4, -c2 ** 2], [c4 ** 2, -c2 * c4]], dtype=complex)

    @property
    def m3(self) -> np.ndarray:
        c2, c3, c4 = self.c(2), self.c(3), self.c(4)
        return np.array([[c4 + c2 * c3, -2 * c2], [2 * c3 * c4, -(c4 + c2 * c3)]], dtype=complex)

    @property
    def m4(self) -> np.ndarray:
        t = self.c(8) - self.d27
        return np.array([[t, -2 * self.c(6)], [2 * self.d38, -t]], dtype=complex)

    def derived(self) -> Dict[str, complex]:
        return {"Delta1": self.delta1, "Delta2": self.delta2, "delta1": self.small_delta1,
                "delta2": self.small_delta2, "Delta27": self.d27, "Delta28": self.d28,
                "Delta38": self.d38}


@dataclass
class Instantiation:
    """H+ and the transformation set, with the nonvanishing verdict for W."""

    h_plus: Hamiltonian
    tset: TransformationSet
    wronskian: Any
    admissibility: NonvanishingReport


@dataclass
class DependenceRelation:
    """sum_i coefficients[name_i] * state_i == 0."""

    name: str
    coefficients: Dict[str, complex]


@dataclass
class SimilarityReduction:
    """C^-1 quantity C against a closed form, or against an unordered diagonal."""

    name: str
    c: np.ndarray
    quantity: str
    expected: Optional[RatArray] = None
    diagonal: Optional[List[RatArray]] = None


@dataclass
class TruthTableCase:
    scenario: str
    branch: str
    condition: str
    expected: Dict[str, int]
    predicate: Callable[["ScenarioConfig"], bool]
    sampler: Callable[[np.random.Generator], Dict[str, complex]]
    imaginary_k: bool = False


@dataclass
class ExpectedBoundStates:
    scenario: str
    branch: str
    condition: str
    counts: Dict[str, int]
    overlaps: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"scenario": self.scenario, "branch": self.branch, "condition": self.condition,
                "counts": dict(self.counts), "overlaps": list(self.overlaps)}


@dataclass
class BoundStateCensus:
    """Observed normalizable-state counts against the truth table."""

    expected: ExpectedBoundStates
    counts: Dict[str, int]
    verdicts: List[Dict[str, Any]] = field(default_factory=list)
    growth_agrees: bool = True

    @property
    def matches(self) -> bool:
        return self.counts == self.expected.counts

    def to_dict(self) -> Dict[str, Any]:
        return {"expected": self.expected.to_dict(), "counts": dict(self.counts),
                "matches": self.matches, "growth_agrees": self.growth_agrees,
                "verdicts": self.verdicts}


@dataclass
class ScenarioRun:
    """Everything one instantiate-build pass produced."""

    config: ScenarioConfig
    instantiation: Instantiation
    build: OrderNBuild
