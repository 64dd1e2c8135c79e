from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Sequence, Tuple
import enum

import numpy as np

from ..core.errors import DimensionMismatch, SingularLeading, ZeroFunction
from ..expalg import AsymptoticExponent, ExpPoly
from ..matfun import PolyArray, RatArray, RatMatFun, RatVecFun, VecFun, as_rational


def lift(value) -> RatArray:
    """Accept VecFun/MatFun/RatArray and return the rational form.

    A bare ExpPoly is the one-component vector of a scalar (n = 1) problem.
    """
    if isinstance(value, ExpPoly):
        value = VecFun(np.array([value], dtype=object))
    if isinstance(value, (RatArray, PolyArray)):
        return as_rational(value)
    raise TypeError(f"Expected a function array, got {type(value).__name__}")


@dataclass
class DifferentialOperator:
    """Matrix differential operator sum_j coeffs[j](x) d^j/dx^j."""

    coeffs: List[RatMatFun]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("DifferentialOperator needs at least one coefficient")
        self.coeffs = [lift(c) for c in self.coeffs]
        n = self.coeffs[0].shape[0]
        for c in self.coeffs:
            if c.shape != (n, n):
                raise DimensionMismatch(f"Coefficient shape {c.shape} does not match n={n}")

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_hamiltonian(cls, h: "Hamiltonian") -> "DifferentialOperator":
        n = h.n
        return cls([h.potential, RatMatFun.zero(n), -RatMatFun.identity(n)])

    def _padded(self, size: int) -> List[RatMatFun]:
        return self.coeffs + [RatMatFun.zero(self.n)] * (size - len(self.coeffs))

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        size = max(len(self.coeffs), len(other.coeffs))
        return DifferentialOperator([a + b for a, b in zip(self._padded(size), other._padded(size))])

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        size = max(len(self.coeffs), len(other.coeffs))
        return DifferentialOperator([a - b for a, b in zip(self._padded(size), other._padded(size))])

    def __neg__(self) -> "DifferentialOperator":
        return DifferentialOperator([-c for c in self.coeffs])

    def scale(self, s) -> "DifferentialOperator":
        return DifferentialOperator([c * s for c in self.coeffs])

    def left_multiply(self, m: RatMatFun) -> "DifferentialOperator":
        """Multiplication operator m(x) composed on the left."""
        return DifferentialOperator([m @ c for c in self.coeffs])

    def compose(self, other: "DifferentialOperator") -> "DifferentialOperator":
        """self * other, expanded with the Leibniz rule."""
        n = self.n
        out = [RatMatFun.zero(n) for _ in range(self.order + other.order + 1)]
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for b, cb in enumerate(other.coeffs):
                if cb.is_zero():
                    continue
                deriv = cb
                for i in range(a + 1):
                    if i:
                        deriv = deriv.derivative()
                    out[a - i + b] = out[a - i + b] + (ca @ deriv) * comb(a, i)
        return DifferentialOperator(out)

    __matmul__ = compose

    def apply(self, v) -> RatVecFun:
        v = lift(v)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"Operator on {self.n} channels applied to shape {v.shape}")
        total = RatVecFun.zero(self.n)
        deriv = v
        for j, c in enumerate(self.coeffs):
            if j:
                deriv = deriv.derivative()
            if not c.is_zero():
                total = total + c @ deriv
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def nonzero_orders(self) -> List[int]:
        return [j for j, c in enumerate(self.coeffs) if not c.is_zero()]


@dataclass
class Hamiltonian:
    """H = -I_n d^2/dx^2 + V(x)."""

    n: int
    potential: RatMatFun

    def __post_init__(self):
        self.potential = lift(self.potential)
        if self.potential.shape != (self.n, self.n):
            raise DimensionMismatch(f"Potential shape {self.potential.shape} for n={self.n}")

    @classmethod
    def free(cls, n: int) -> "Hamiltonian":
        return cls(n, RatMatFun.zero(n))

    def apply(self, v) -> RatVecFun:
        v = lift(v)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"Hamiltonian on {self.n} channels applied to shape {v.shape}")
        return self.potential @ v - v.derivative(2)

    def as_differential_operator(self) -> DifferentialOperator:
        return DifferentialOperator.from_hamiltonian(self)

    def is_free(self) -> bool:
        return self.potential.is_zero()


@dataclass
class ChainEntry:
    """One transformation function: H+ phi = lam * phi + sigma * (next entry's phi)."""

    phi: RatVecFun
    lam: complex
    sigma: int = 0
    name: Optional[str] = None

    def __post_init__(self):
        self.phi = lift(self.phi)
        self.lam = complex(self.lam)
        if self.sigma not in (0, 1):
            raise ValueError(f"sigma must be 0 or 1, got {self.sigma}")
        if self.phi.is_zero():
            raise ZeroFunction(f"Transformation function {self.name or ''} is identically zero")


@dataclass
class TransformationSet:
    n: int
    entries: List[ChainEntry]

    def __post_init__(self):
        for e in self.entries:
            if e.phi.shape != (self.n,):
                raise DimensionMismatch(f"Entry {e.name} has {e.phi.shape[0]} components, n={self.n}")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        if len(self.entries) % self.n:
            raise DimensionMismatch(f"{len(self.entries)} entries do not fill whole blocks of n={self.n}")
        return len(self.entries) // self.n

    @property
    def functions(self) -> List[RatVecFun]:
        return [e.phi for e in self.entries]

    @property
    def eigenvalues(self) -> List[complex]:
        return [e.lam for e in self.entries]

    def is_polynomial(self) -> bool:
        return all(e.phi.denominator.is_one() for e in self.entries)

    def jordan_blocks(self) -> List[Tuple[complex, int]]:
        """(lambda, size) per maximal sigma-run."""
        blocks: List[Tuple[complex, int]] = []
        size = 1
        for i, e in enumerate(self.entries):
            if e.sigma and i + 1 < len(self.entries):
                size += 1
                continue
            blocks.append((e.lam, size))
            size = 1
        return blocks

    @classmethod
    def from_chain_blocks(cls, n: int, blocks: Sequence[Tuple[complex, Sequence]]) -> "TransformationSet":
        """Each block is (lambda, [Phi_top, ..., Phi_bottom]) listed in chain order."""
        entries = []
        for lam, phis in blocks:
            for i, phi in enumerate(phis):
                entries.append(ChainEntry(phi, lam, 1 if i + 1 < len(phis) else 0))
        return cls(n, entries)


@dataclass
class IntertwiningOperator:
    """Q = sum_{j<N} X_j(x) d^j + X_N d^N with constant nondegenerate X_N."""

    order: int
    leading: np.ndarray
    lower: List[RatMatFun]

    def __post_init__(self):
        self.leading = np.asarray(self.leading, dtype=complex)
        n = self.leading.shape[0]
        if self.leading.shape != (n, n):
            raise DimensionMismatch(f"Leading coefficient must be square, got {self.leading.shape}")
        if np.linalg.cond(self.leading) > 1e13:
            raise SingularLeading("Leading coefficient X_N is singular")
        if len(self.lower) != self.order:
            raise DimensionMismatch(f"Order {self.order} operator needs {self.order} lower coefficients")
        self.lower = [lift(c) for c in self.lower]

    @property
    def n(self) -> int:
        return self.leading.shape[0]

    def coefficients(self) -> List[RatMatFun]:
        return self.lower + [RatMatFun.constant(self.leading)]

    def as_differential_operator(self) -> DifferentialOperator:
        return DifferentialOperator(self.coefficients())

    def apply(self, v) -> RatVecFun:
        return self.as_differential_operator().apply(v)


class NonvanishingVerdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class NonvanishingReport:
    verdict: NonvanishingVerdict
    min_abs: float
    min_ratio: float
    argmin: float
    plus_inf: AsymptoticExponent
    minus_inf: AsymptoticExponent
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "min_abs": self.min_abs,
            "min_ratio": self.min_ratio,
            "argmin": self.argmin,
            "plus_inf": list(self.plus_inf),
            "minus_inf": list(self.minus_inf),
            "notes": self.notes,
        }
