"""Matrix and vector functions over ExpPoly, and their rational closure.

Entries are held in numpy object arrays so that numpy broadcasting and
matmul drive the ExpPoly ring operations. Rational forms share a single
scalar denominator per array, kept factored as a product of ExpPoly bases.
"""
from dataclasses import dataclass
from functools import cached_property
from numbers import Number
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import DimensionMismatch, ZeroFunction
from ..expalg import ExpPoly


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(out.shape):
        out[idx] = ExpPoly.zero()
    return out


def to_object_array(values) -> np.ndarray:
    """Coerce nested lists or arrays of ExpPoly/numbers to an ExpPoly object array."""
    if isinstance(values, np.ndarray):
        out = np.empty(values.shape, dtype=object)
        for idx in np.ndindex(values.shape):
            out[idx] = ExpPoly.coerce(values[idx])
        return out
    rows = list(values)
    if rows and isinstance(rows[0], (list, tuple, np.ndarray)):
        out = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != out.shape[1]:
                raise DimensionMismatch("Ragged matrix rows")
            for j, v in enumerate(row):
                out[i, j] = ExpPoly.coerce(v)
        return out
    out = np.empty(len(rows), dtype=object)
    for i, v in enumerate(rows):
        out[i] = ExpPoly.coerce(v)
    return out


def _map(fn, array: np.ndarray) -> np.ndarray:
    out = np.empty(array.shape, dtype=object)
    for idx in np.ndindex(array.shape):
        out[idx] = fn(array[idx])
    return out


def _is_const_matrix(value) -> bool:
    return isinstance(value, np.ndarray) and value.dtype != object


class PolyArray:
    """Shared behaviour of MatFun and VecFun."""

    ndim = 0
    # make numpy operands defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, entries):
        entries = entries if (isinstance(entries, np.ndarray) and entries.dtype == object) \
            else to_object_array(entries)
        if entries.ndim != self.ndim:
            raise DimensionMismatch(f"{type(self).__name__} needs {self.ndim} dimensions, "
                                    f"got shape {entries.shape}")
        self.entries = entries

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.entries.shape

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx) -> ExpPoly:
        return self.entries[idx]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries.flat)

    def derivative(self, order: int = 1):
        return wrap_poly(_map(lambda e: e.derivative(order), self.entries))

    def map(self, fn):
        return wrap_poly(_map(fn, self.entries))

    def _other_entries(self, other):
        if isinstance(other, PolyArray):
            if other.shape != self.shape:
                raise DimensionMismatch(f"Shapes {self.shape} and {other.shape} differ")
            return other.entries
        return NotImplemented

    def __add__(self, other):
        o = self._other_entries(other)
        return NotImplemented if o is NotImplemented else wrap_poly(self.entries + o)

    def __sub__(self, other):
        o = self._other_entries(other)
        return NotImplemented if o is NotImplemented else wrap_poly(self.entries - o)

    def __neg__(self):
        return wrap_poly(_map(lambda e: -e, self.entries))

    def __mul__(self, other):
        if isinstance(other, (Number, np.number, ExpPoly)):
            return wrap_poly(_map(lambda e: e * other, self.entries))
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, PolyArray):
            return wrap_poly(poly_matmul(self.entries, other.entries))
        if _is_const_matrix(other):
            return wrap_poly(poly_matmul(self.entries, to_object_array(other)))
        return NotImplemented

    def __rmatmul__(self, other):
        if _is_const_matrix(other):
            return wrap_poly(poly_matmul(to_object_array(other), self.entries))
        return NotImplemented

    def evaluate(self, x) -> np.ndarray:
        """Values on a grid; shape is the array shape followed by x's shape."""
        x = np.asarray(x, dtype=float)
        out = np.empty(self.shape + x.shape, dtype=complex)
        for idx in np.ndindex(self.shape):
            out[idx] = self.entries[idx].evaluate_scaled(x)
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape})"


class MatFun(PolyArray):
    ndim = 2

    @classmethod
    def identity(cls, n: int) -> "MatFun":
        out = zeros((n, n))
        for i in range(n):
            out[i, i] = ExpPoly.one()
        return cls(out)

    @classmethod
    def from_columns(cls, columns: Sequence["VecFun"]) -> "MatFun":
        out = np.empty((columns[0].n, len(columns)), dtype=object)
        for j, col in enumerate(columns):
            out[:, j] = col.entries
        return cls(out)

    @classmethod
    def from_rows(cls, rows: Sequence["VecFun"]) -> "MatFun":
        out = np.empty((len(rows), rows[0].n), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = row.entries
        return cls(out)

    @property
    def T(self) -> "MatFun":
        return MatFun(self.entries.T.copy())

    def column(self, j: int) -> "VecFun":
        return VecFun(self.entries[:, j].copy())

    def row(self, i: int) -> "VecFun":
        return VecFun(self.entries[i, :].copy())

    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]


class VecFun(PolyArray):
    ndim = 1

    @classmethod
    def basis(cls, n: int, j: int, value: Union[ExpPoly, complex] = 1.0) -> "VecFun":
        out = zeros(n)
        out[j] = ExpPoly.coerce(value)
        return cls(out)


def wrap_poly(entries: np.ndarray) -> PolyArray:
    return MatFun(entries) if entries.ndim == 2 else VecFun(entries)


def poly_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"Cannot multiply shapes {a.shape} and {b.shape}")
    out = np.dot(a, b)
    if not isinstance(out, np.ndarray):
        out = np.array(out, dtype=object)
    # numpy leaves python ints behind for empty or all-zero sums
    return _map(ExpPoly.coerce, out)


# ---------------------------------------------------------------------------
# Factored denominators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Denominator:
    """Product of ExpPoly bases raised to positive integer powers."""

    factors: Tuple[Tuple[ExpPoly, int], ...] = ()

    @classmethod
    def one(cls) -> "Denominator":
        return cls(())

    @classmethod
    def of(cls, base: ExpPoly, power: int = 1) -> "Denominator":
        return cls(((base, power),)) if power else cls(())

    def is_one(self) -> bool:
        return not self.factors

    @cached_property
    def expanded(self) -> ExpPoly:
        result = ExpPoly.one()
        for base, power in self.factors:
            result = result * base ** power
        return result

    def power_of(self, base: ExpPoly) -> int:
        for b, p in self.factors:
            if b.same_structure(base):
                return p
        return 0

    def _merged(self, other: "Denominator", combine) -> "Denominator":
        out: List[Tuple[ExpPoly, int]] = list(self.factors)
        for base, power in other.factors:
            for i, (b, p) in enumerate(out):
                if b.same_structure(base):
                    out[i] = (b, combine(p, power))
                    break
            else:
                out.append((base, combine(0, power)))
        return Denominator(tuple((b, p) for b, p in out if p))

    def __mul__(self, other: "Denominator") -> "Denominator":
        return self._merged(other, lambda a, b: a + b)

    def lcm(self, other: "Denominator") -> "Denominator":
        return self._merged(other, max)

    def divided_by(self, divisor: "Denominator") -> "Denominator":
        """Factor-wise quotient; divisor must divide self."""
        out = []
        for base, power in self.factors:
            rest = power - divisor.power_of(base)
            if rest < 0:
                raise ValueError("Denominator does not divide")
            if rest:
                out.append((base, rest))
        if any(self.power_of(base) == 0 for base, _ in divisor.factors):
            raise ValueError("Denominator does not divide")
        return Denominator(tuple(out))

    def quotient(self, divisor: "Denominator") -> ExpPoly:
        """self / divisor expanded as an ExpPoly."""
        return self.divided_by(divisor).expanded

    def radical(self) -> ExpPoly:
        result = ExpPoly.one()
        for base, _ in self.factors:
            result = result * base
        return result

    def log_derivative_numerator(self) -> ExpPoly:
        """S with D'/D = S / radical(D)."""
        total = ExpPoly.zero()
        for i, (base, power) in enumerate(self.factors):
            term = base.derivative() * power
            for j, (other, _) in enumerate(self.factors):
                if j != i:
                    term = term * other
            total = total + term
        return total

    def raised(self) -> "Denominator":
        return Denominator(tuple((b, p + 1) for b, p in self.factors))

    def evaluate_scaled(self, x) -> Tuple[np.ndarray, np.ndarray]:
        """(value * exp(-shift*x), shift) per grid point."""
        x = np.asarray(x, dtype=float)
        value = np.ones(x.shape, dtype=complex)
        shift = np.zeros(x.shape)
        for base, power in self.factors:
            s = base.dominant_shift(x)
            value = value * base.evaluate_scaled(x, s) ** power
            shift = shift + power * s
        return value, shift


# ---------------------------------------------------------------------------
# Rational closure
# ---------------------------------------------------------------------------

class RatArray:
    """num / den with a shared scalar denominator. Subclassed by RatMatFun and RatVecFun."""

    ndim = 0
    __array_ufunc__ = None

    def __init__(self, num, denominator: Optional[Denominator] = None):
        if not isinstance(num, PolyArray):
            num = wrap_poly(to_object_array(num))
        if num.ndim != self.ndim:
            raise DimensionMismatch(f"{type(self).__name__} needs a {self.ndim}-d numerator")
        denominator = denominator or Denominator.one()
        entries = num.entries
        factors = []
        for base, power in denominator.factors:
            if base.is_zero():
                raise ZeroFunction("Denominator factor is the zero function")
            if base.is_constant():
                entries = entries * (base.constant_value() ** -power)
            elif power:
                factors.append((base, power))
        if all(e.is_zero() for e in entries.flat):
            factors = []
        self.num = wrap_poly(entries)
        self.denominator = Denominator(tuple(factors))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_poly(cls, num, den: Optional[ExpPoly] = None):
        return cls(num, Denominator.of(den) if den is not None else None)

    @property
    def den(self) -> ExpPoly:
        return self.denominator.expanded

    @property
    def shape(self):
        return self.num.shape

    @property
    def n(self) -> int:
        return self.num.n

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.denominator.is_one() and all(e.is_constant() for e in self.num.entries.flat)

    def constant_value(self) -> np.ndarray:
        if not self.is_constant():
            raise ValueError(f"{type(self).__name__} is not constant")
        return np.vectorize(lambda e: e.constant_value(), otypes=[complex])(self.num.entries)

    def entry(self, *idx) -> "RatArray":
        return RatScalar(VecFun(np.array([self.num.entries[idx]], dtype=object)),
                         self.denominator)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatArray):
            return other
        if isinstance(other, PolyArray):
            return wrap_rational(other.entries, Denominator.one())
        return None

    def _combine(self, other, sign: int):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionMismatch(f"Shapes {self.shape} and {other.shape} differ")
        lcm = self.denominator.lcm(other.denominator)
        left = self.num.entries * lcm.quotient(self.denominator)
        right = other.num.entries * lcm.quotient(other.denominator)
        return wrap_rational(left + right if sign > 0 else left - right, lcm)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other._combine(self, -1)

    def __neg__(self):
        return wrap_rational(-self.num.entries, self.denominator)

    def __mul__(self, other):
        if isinstance(other, (Number, np.number, ExpPoly)):
            return wrap_rational(self.num.entries * other, self.denominator)
        if isinstance(other, RatScalar):
            return wrap_rational(self.num.entries * other.num.entries[0],
                                 self.denominator * other.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if _is_const_matrix(other):
            return wrap_rational(poly_matmul(self.num.entries, to_object_array(other)),
                                 self.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return wrap_rational(poly_matmul(self.num.entries, other.num.entries),
                             self.denominator * other.denominator)

    def __rmatmul__(self, other):
        if _is_const_matrix(other):
            return wrap_rational(poly_matmul(to_object_array(other), self.num.entries),
                                 self.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__matmul__(self)

    def divide(self, base: ExpPoly, power: int = 1):
        """Divide by base**power, kept as a denominator factor."""
        return wrap_rational(self.num.entries, self.denominator * Denominator.of(base, power))

    def derivative(self, order: int = 1):
        r = self
        for _ in range(order):
            d = r.denominator
            if d.is_one():
                r = wrap_rational(r.num.derivative().entries, d)
                continue
            rad = d.radical()
            s = d.log_derivative_numerator()
            num = r.num.derivative().entries * rad - r.num.entries * s
            r = wrap_rational(num, d.raised())
        return r

    def over(self, denominator: Denominator) -> np.ndarray:
        """Numerator entries rewritten over a multiple of this denominator."""
        return self.num.entries * denominator.quotient(self.denominator)

    @property
    def T(self):
        return wrap_rational(self.num.entries.T.copy(), self.denominator)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        den_value, den_shift = self.denominator.evaluate_scaled(x)
        out = np.empty(self.shape + x.shape, dtype=complex)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            for idx in np.ndindex(self.shape):
                e = self.num.entries[idx]
                s = e.dominant_shift(x)
                out[idx] = e.evaluate_scaled(x, s) / den_value * np.exp((s - den_shift) * x)
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape}, den_factors={len(self.denominator.factors)})"


class RatMatFun(RatArray):
    ndim = 2

    @classmethod
    def identity(cls, n: int) -> "RatMatFun":
        return cls(MatFun.identity(n))

    @classmethod
    def constant(cls, matrix) -> "RatMatFun":
        return cls(MatFun(to_object_array(np.asarray(matrix, dtype=complex))))

    @classmethod
    def zero(cls, n: int) -> "RatMatFun":
        return cls(MatFun(zeros((n, n))))

    def column(self, j: int) -> "RatVecFun":
        return RatVecFun(self.num.column(j), self.denominator)

    def trace(self) -> "RatScalar":
        total = ExpPoly.zero()
        for i in range(self.shape[0]):
            total = total + self.num.entries[i, i]
        return RatScalar(VecFun(np.array([total], dtype=object)), self.denominator)


class RatVecFun(RatArray):
    ndim = 1

    @classmethod
    def zero(cls, n: int) -> "RatVecFun":
        return cls(VecFun(zeros(n)))

    def component(self, j: int) -> "RatScalar":
        return RatScalar(VecFun(np.array([self.num.entries[j]], dtype=object)), self.denominator)


class RatScalar(RatVecFun):
    """A single rational function, held as a length-one vector."""

    @classmethod
    def of(cls, num: ExpPoly, den: Optional[ExpPoly] = None) -> "RatScalar":
        return cls(VecFun(np.array([num], dtype=object)),
                   Denominator.of(den) if den is not None else None)

    @property
    def value(self) -> ExpPoly:
        return self.num.entries[0]


def wrap_rational(entries: np.ndarray, denominator: Denominator) -> RatArray:
    entries = _map(ExpPoly.coerce, entries)
    return RatMatFun(MatFun(entries), denominator) if entries.ndim == 2 \
        else RatVecFun(VecFun(entries), denominator)
