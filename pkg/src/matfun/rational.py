from typing import Union

import numpy as np

from ..expalg import ExpPoly
from .models import Denominator, PolyArray, RatArray, RatMatFun, RatVecFun, wrap_rational

Rational = Union[RatMatFun, RatVecFun]


def as_rational(value) -> RatArray:
    if isinstance(value, RatArray):
        return value
    if isinstance(value, PolyArray):
        return wrap_rational(value.entries, Denominator.one())
    raise TypeError(f"Cannot lift {type(value).__name__} into the rational closure")


def rat_add(a, b) -> Rational:
    return as_rational(a) + as_rational(b)


def rat_sub(a, b) -> Rational:
    return as_rational(a) - as_rational(b)


def rat_mul(a, b) -> Rational:
    """Matrix product (or scalar product when b is a number or ExpPoly)."""
    if isinstance(b, (int, float, complex, np.number, ExpPoly)):
        return as_rational(a) * b
    return as_rational(a) @ as_rational(b)


def rat_differentiate(a, order: int = 1) -> Rational:
    return as_rational(a).derivative(order)


def rat_is_zero(a) -> bool:
    """Exact zero test: every numerator entry is the zero ExpPoly."""
    return as_rational(a).is_zero()


def rat_equal(a, b) -> bool:
    return rat_sub(a, b).is_zero()


def commutator(a: RatMatFun, b: RatMatFun) -> RatMatFun:
    return a @ b - b @ a
