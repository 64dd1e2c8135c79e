from typing import Iterable, NamedTuple, Union

import numpy as np

from ..core.errors import ZeroFunction
from .models import RATE_TOL, ExpPoly, ExpTerm, Scalar


class AsymptoticExponent(NamedTuple):
    re: float
    power: int
    oscillatory: bool


def canonicalize(terms: Iterable) -> ExpPoly:
    """Merge like terms, drop negligible coefficients and sort."""
    return ExpPoly.from_terms(ExpTerm(*t) if not isinstance(t, ExpTerm) else t for t in terms)


def add(p: ExpPoly, q: Union[ExpPoly, Scalar]) -> ExpPoly:
    return p + q


def negate(p: ExpPoly) -> ExpPoly:
    return -p


def multiply(p: ExpPoly, q: Union[ExpPoly, Scalar]) -> ExpPoly:
    return p * q


def scale(p: ExpPoly, s: Scalar) -> ExpPoly:
    return p.scale(s)


def differentiate(p: ExpPoly, order: int = 1) -> ExpPoly:
    return p.derivative(order)


def evaluate(p: ExpPoly, x):
    return p(x)


def _direction_sign(direction) -> int:
    if direction in (1, "+", "+inf", np.inf):
        return 1
    if direction in (-1, "-", "-inf", -np.inf):
        return -1
    raise ValueError(f"Unknown direction {direction!r}")


def asymptotic_exponent(p: ExpPoly, direction) -> AsymptoticExponent:
    """Dominant growth of p as x -> +inf or -inf.

    Returns the dominant real rate, the largest x-power inside that rate group
    and whether several imaginary parts share that (rate, power) slot.
    """
    if p.is_zero():
        raise ZeroFunction("asymptotic exponent of the zero function")
    sign = _direction_sign(direction)
    target = max(sign * t.rate.real for t in p.terms)
    tol = RATE_TOL * max(1.0, abs(target))
    group = [t for t in p.terms if abs(sign * t.rate.real - target) <= tol]
    power = max(t.power for t in group)
    imag_parts = []
    for t in group:
        if t.power == power and not any(abs(t.rate.imag - v) <= tol for v in imag_parts):
            imag_parts.append(t.rate.imag)
    return AsymptoticExponent(sign * target, power, len(imag_parts) > 1)


# Hyperbolic building blocks, expanded into exponentials.

def cosh(k: Scalar, x0: Scalar = 0.0) -> ExpPoly:
    """ch k(x - x0)."""
    k = complex(k)
    return ExpPoly.from_terms([
        ExpTerm(0.5 * np.exp(-k * x0), 0, k),
        ExpTerm(0.5 * np.exp(k * x0), 0, -k),
    ])


def sinh(k: Scalar, x0: Scalar = 0.0) -> ExpPoly:
    """sh k(x - x0)."""
    k = complex(k)
    return ExpPoly.from_terms([
        ExpTerm(0.5 * np.exp(-k * x0), 0, k),
        ExpTerm(-0.5 * np.exp(k * x0), 0, -k),
    ])
