"""Exponential polynomials: finite sums of c * x**m * exp(k*x) with complex c and k.

Values are immutable. Every public constructor returns the canonical form:
like terms merged under the rate tolerance, negligible coefficients dropped,
terms ordered by (Re k, Im k, m).
"""
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, List, NamedTuple, Tuple, Union

import numpy as np

from ..core.errors import PowerOverflow

RATE_TOL = 1e-12
ZERO_TOL = 1e-12
POWER_CAP = 64


class ExpTerm(NamedTuple):
    coeff: complex
    power: int
    rate: complex
    # l1 magnitude of everything merged into this coefficient
    bound: float = 0.0


def rates_equal(k1: complex, k2: complex) -> bool:
    return abs(k1 - k2) <= RATE_TOL * max(1.0, abs(k1), abs(k2))


def _snap(k: complex) -> complex:
    tol = RATE_TOL * max(1.0, abs(k))
    return complex(0.0 if abs(k.real) <= tol else k.real, 0.0 if abs(k.imag) <= tol else k.imag)


def _canonical_terms(terms: Iterable[ExpTerm]) -> Tuple[ExpTerm, ...]:
    items = []
    for t in terms:
        c = complex(t[0])
        if c == 0:
            continue
        m = int(t[1])
        if m < 0:
            raise ValueError(f"Negative x-power {m}")
        if m > POWER_CAP:
            raise PowerOverflow(f"x-power {m} exceeds cap {POWER_CAP}")
        k = _snap(complex(t[2]))
        b = max(float(t[3]) if len(t) > 3 else 0.0, abs(c))
        items.append((k.real, k.imag, m, c, k, b))
    items.sort(key=lambda it: (it[0], it[1], it[2]))

    clusters: List[list] = []
    for kr, _, m, c, k, b in items:
        merged = False
        for cl in reversed(clusters):
            ck = cl[0]
            # sorted by Re k, so nothing earlier can match either
            if kr - ck.real > RATE_TOL * max(1.0, abs(ck), abs(k)):
                break
            if cl[1] == m and rates_equal(ck, k):
                cl[2] += c
                cl[3] += b
                merged = True
                break
        if not merged:
            clusters.append([k, m, c, b])

    kept = [ExpTerm(c, m, k, b) for k, m, c, b in clusters if abs(c) > ZERO_TOL * b]
    kept.sort(key=lambda t: (t.rate.real, t.rate.imag, t.power))
    return tuple(kept)


Scalar = Union[complex, float, int]


@dataclass(frozen=True, eq=False)
class ExpPoly:
    """Canonical exponential polynomial. The empty term tuple is the zero function."""

    terms: Tuple[ExpTerm, ...] = ()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable) -> "ExpPoly":
        return cls(_canonical_terms(terms))

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls(())

    @classmethod
    def constant(cls, c: Scalar) -> "ExpPoly":
        return cls.from_terms([ExpTerm(c, 0, 0j)])

    @classmethod
    def one(cls) -> "ExpPoly":
        return cls.constant(1.0)

    @classmethod
    def exp(cls, k: Scalar, c: Scalar = 1.0, m: int = 0) -> "ExpPoly":
        """c * x**m * exp(k*x)."""
        return cls.from_terms([ExpTerm(c, m, k)])

    @classmethod
    def x(cls, m: int = 1) -> "ExpPoly":
        return cls.exp(0.0, 1.0, m)

    @staticmethod
    def coerce(value) -> "ExpPoly":
        if isinstance(value, ExpPoly):
            return value
        if isinstance(value, (Number, np.number)):
            return ExpPoly.constant(complex(value))
        raise TypeError(f"Cannot use {type(value).__name__} as an ExpPoly")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(t.power == 0 and t.rate == 0 for t in self.terms)

    def constant_value(self) -> complex:
        if not self.is_constant():
            raise ValueError("ExpPoly is not constant")
        return self.terms[0].coeff if self.terms else 0j

    def same_structure(self, other: "ExpPoly") -> bool:
        """Exact term-by-term identity, used to match denominator factors."""
        return self is other or self.terms == other.terms

    def equals(self, other) -> bool:
        return (self - other).is_zero()

    @property
    def max_power(self) -> int:
        return max((t.power for t in self.terms), default=0)

    def rates(self) -> List[complex]:
        out: List[complex] = []
        for t in self.terms:
            if not any(rates_equal(t.rate, r) for r in out):
                out.append(t.rate)
        return out

    @property
    def size(self) -> int:
        return len(self.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "ExpPoly":
        if not isinstance(other, (ExpPoly, Number, np.number)):
            return NotImplemented
        if isinstance(other, (Number, np.number)) and other == 0:
            return self
        other = ExpPoly.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        return ExpPoly.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple(ExpTerm(-t.coeff, t.power, t.rate, t.bound) for t in self.terms))

    def __sub__(self, other) -> "ExpPoly":
        if not isinstance(other, (ExpPoly, Number, np.number)):
            return NotImplemented
        return self + (-ExpPoly.coerce(other))

    def __rsub__(self, other) -> "ExpPoly":
        return ExpPoly.coerce(other) + (-self)

    def scale(self, s: Scalar) -> "ExpPoly":
        s = complex(s)
        if s == 0 or not self.terms:
            return ExpPoly.zero()
        return ExpPoly(tuple(ExpTerm(t.coeff * s, t.power, t.rate, t.bound * abs(s))
                             for t in self.terms))

    def __mul__(self, other) -> "ExpPoly":
        if isinstance(other, (Number, np.number)):
            return self.scale(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ExpPoly.zero()
        return ExpPoly.from_terms(
            ExpTerm(a.coeff * b.coeff, a.power + b.power, a.rate + b.rate, a.bound * b.bound)
            for a in self.terms for b in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExpPoly":
        if n < 0:
            raise ValueError("ExpPoly powers must be non-negative")
        result, base = ExpPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, order: int = 1) -> "ExpPoly":
        p = self
        for _ in range(order):
            out = []
            for t in p.terms:
                if t.rate != 0:
                    out.append(ExpTerm(t.coeff * t.rate, t.power, t.rate, t.bound * abs(t.rate)))
                if t.power:
                    out.append(ExpTerm(t.coeff * t.power, t.power - 1, t.rate, t.bound * t.power))
            p = ExpPoly.from_terms(out)
        return p

    # -- evaluation ---------------------------------------------------------

    def dominant_shift(self, x) -> np.ndarray:
        """Per-point real rate that keeps exp(k*x - shift*x) bounded by one."""
        x = np.asarray(x, dtype=float)
        if not self.terms:
            return np.zeros_like(x)
        re = [t.rate.real for t in self.terms]
        return np.where(x >= 0, max(re), min(re))

    def evaluate_scaled(self, x, shift=0.0) -> np.ndarray:
        """Evaluate p(x) * exp(-shift * x); shift may be per-point."""
        x = np.asarray(x, dtype=float)
        shift = np.asarray(shift, dtype=float)
        out = np.zeros(np.broadcast(x, shift).shape, dtype=complex)
        for t in self.terms:
            out = out + t.coeff * x ** t.power * np.exp((t.rate - shift) * x)
        return out

    def __call__(self, x):
        values = self.evaluate_scaled(x)
        return complex(values) if np.ndim(values) == 0 else values

    def __repr__(self) -> str:
        return f"ExpPoly({self.pretty()})"

    def pretty(self, digits: int = 6) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            s = f"({t.coeff:.{digits}g})"
            if t.power:
                s += f"*x^{t.power}" if t.power > 1 else "*x"
            if t.rate != 0:
                s += f"*exp(({t.rate:.{digits}g})x)"
            parts.append(s)
        return " + ".join(parts)
