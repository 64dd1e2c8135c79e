from dataclasses import dataclass
from typing import List, Sequence, Tuple
import logging

import numpy as np

from ..core.errors import (ChainConstraintViolated, DegenerateWronskian, DimensionMismatch,
                           ZeroFunction)
from ..expalg import ExpPoly, asymptotic_exponent
from ..matfun import (Denominator, MatFun, RatMatFun, RatVecFun, cofactor_row, det,
                      wrap_rational, zeros)
from .models import (Hamiltonian, IntertwiningOperator, NonvanishingReport, NonvanishingVerdict,
                     TransformationSet, lift)

logger = logging.getLogger(__name__)

LAMBDA_TOL = 1e-12


def apply_hamiltonian(h: Hamiltonian, v) -> RatVecFun:
    """-v'' + V v."""
    return h.apply(v)


def apply_operator(q: IntertwiningOperator, v) -> RatVecFun:
    """sum_j X_j v^(j)."""
    v = lift(v)
    if v.shape != (q.n,):
        raise DimensionMismatch(f"Operator on {q.n} channels applied to shape {v.shape}")
    return q.apply(v)


def _lambdas_equal(a: complex, b: complex) -> bool:
    return abs(a - b) <= LAMBDA_TOL * max(1.0, abs(a), abs(b))


def t_matrix(tset: TransformationSet) -> np.ndarray:
    """Upper bidiagonal T with H+ Phi = Phi T^t: lambda_l on the diagonal, sigma_l above it."""
    size = len(tset.entries)
    t = np.zeros((size, size), dtype=complex)
    for l, e in enumerate(tset.entries):
        t[l, l] = e.lam
        if e.sigma and l + 1 < size:
            nxt = tset.entries[l + 1].lam
            if not _lambdas_equal(e.lam, nxt):
                raise ChainConstraintViolated(
                    f"Entry {l} has sigma=1 but lambda {e.lam} != next lambda {nxt}")
            t[l, l + 1] = 1.0
    return t


def chain_residuals(tset: TransformationSet, h: Hamiltonian) -> List[RatVecFun]:
    """H+ Phi_l - lambda_l Phi_l - sigma_l Phi_{l+1} for every entry."""
    out = []
    for l, e in enumerate(tset.entries):
        r = h.apply(e.phi) - e.phi * e.lam
        if e.sigma and l + 1 < len(tset.entries):
            r = r - tset.entries[l + 1].phi
        out.append(r)
    return out


def set_is_consistent(tset: TransformationSet, h: Hamiltonian) -> bool:
    t_matrix(tset)
    return all(r.is_zero() for r in chain_residuals(tset, h))


@dataclass
class WronskianSystem:
    """Polynomial form of the generalised Wronskian matrix.

    Row c of the true matrix R equals row c of ``p`` divided by ``scales[c]``.
    ``derivatives[c][j]`` is the j-th derivative of the c-th function, j = 0..N.
    """

    p: MatFun
    scales: List[Denominator]
    derivatives: List[List[RatVecFun]]
    order: int

    @property
    def det(self) -> ExpPoly:
        return det(self.p)


def wronskian_system(tset: TransformationSet, order: int = None) -> WronskianSystem:
    order = tset.order if order is None else order
    n = tset.n
    if len(tset.entries) != n * order:
        raise DimensionMismatch(f"Order {order} needs {n * order} functions, got {len(tset.entries)}")
    size = n * order
    p = zeros((size, size))
    scales, derivatives = [], []
    for c, phi in enumerate(tset.functions):
        derivs = [phi]
        for _ in range(order):
            derivs.append(derivs[-1].derivative())
        scale = Denominator.one()
        for d in derivs[:order]:
            scale = scale.lcm(d.denominator)
        for j in range(order):
            p[c, j * n:(j + 1) * n] = derivs[j].over(scale)
        scales.append(scale)
        derivatives.append(derivs)
    return WronskianSystem(MatFun(p), scales, derivatives, order)


def wronskian(tset: TransformationSet, order: int = None) -> ExpPoly:
    """Determinant of the nN x nN matrix of functions and their first N-1 derivatives.

    For functions with denominators the rows are first cleared of them, so the
    result is the Wronskian times the product of the row denominators.
    """
    return wronskian_system(tset, order).det


def columns_inverse(tset: TransformationSet) -> Tuple[RatMatFun, ExpPoly]:
    """Inverse of the n x n matrix whose columns are the set's functions, and its determinant."""
    system = wronskian_system(tset, 1)
    w = system.det
    if w.is_zero():
        raise DegenerateWronskian("Wronskian of the transformation set is identically zero")
    n = tset.n
    inverse = RatMatFun.zero(n)
    for c in range(n):
        row = np.array(cofactor_row(system.p, c), dtype=object) * system.scales[c].expanded
        block = zeros((n, n))
        block[c, :] = row
        inverse = inverse + wrap_rational(block, Denominator.of(w))
    return inverse, w


def phi_matrix(tset: TransformationSet) -> RatMatFun:
    """Matrix with the set's functions as columns."""
    n = tset.n
    result = RatMatFun.zero(n)
    for l, phi in enumerate(tset.functions):
        block = zeros((n, n))
        block[:, l] = phi.num.entries
        result = result + wrap_rational(block, phi.denominator)
    return result


def potential_from_set(tset: TransformationSet) -> Hamiltonian:
    """The unique V+ for which every entry solves H+ Phi_l = lambda_l Phi_l + sigma_l Phi_{l+1}."""
    n = tset.n
    if len(tset.entries) != n:
        raise DimensionMismatch(f"Inverse problem needs exactly n={n} functions")
    t_matrix(tset)
    system = wronskian_system(tset, 1)
    w = system.det
    if w.is_zero():
        raise DegenerateWronskian("Wronskian of the transformation set is identically zero")
    potential = RatMatFun.zero(n)
    for c, e in enumerate(tset.entries):
        g = e.phi.derivative(2) + e.phi * e.lam
        if e.sigma and c + 1 < n:
            g = g + tset.entries[c + 1].phi
        row = np.array(cofactor_row(system.p, c), dtype=object) * system.scales[c].expanded
        outer = np.multiply.outer(g.num.entries, row)
        potential = potential + wrap_rational(outer, g.denominator * Denominator.of(w))
    logger.info(f"Recovered potential from {n} transformation functions")
    return Hamiltonian(n, potential)


def _term_scale(w: ExpPoly, x: np.ndarray, shift: np.ndarray) -> np.ndarray:
    scale = np.zeros(x.shape)
    for t in w.terms:
        scale = scale + abs(t.coeff) * np.abs(x) ** t.power * np.exp((t.rate.real - shift) * x)
    return scale


def _chord_distance(u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Distance from 0 to each segment [u_i, u_i+1] and the segment parameter of the nearest point."""
    a, d = u[:-1], np.diff(u)
    norm = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(norm > 0, -(np.conj(a) * d).real / norm, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(a + t * d), t


def check_nonvanishing(w: ExpPoly, window: Tuple[float, float] = (-5.0, 5.0),
                       samples: int = 201, tol: float = 1e-9) -> NonvanishingReport:
    """Sampling plus asymptotics heuristic for W(x) != 0 on the real axis."""
    if w.is_zero():
        raise ZeroFunction("Wronskian is identically zero")
    x = np.linspace(window[0], window[1], samples)
    shift = w.dominant_shift(x)
    unit = w.evaluate_scaled(x, shift) / _term_scale(w, x, shift)
    ratio = np.abs(unit)
    with np.errstate(over="ignore"):
        absolute = np.abs(w.evaluate_scaled(x))
    i = int(np.argmin(ratio))
    min_ratio, argmin = float(ratio[i]), float(x[i])
    # a zero between samples: the chord between neighbours passes through the origin
    chord, t = _chord_distance(unit)
    j = int(np.argmin(chord)) if chord.size else 0
    if chord.size and chord[j] < min_ratio:
        min_ratio, argmin = float(chord[j]), float(x[j] + t[j] * (x[j + 1] - x[j]))
    plus, minus = asymptotic_exponent(w, +1), asymptotic_exponent(w, -1)

    notes = []
    if min_ratio <= tol:
        verdict = NonvanishingVerdict.FAIL
        notes.append(f"|W| relative to its term scale drops to {min_ratio:.3g} at x={argmin:.6g}")
    elif plus.oscillatory or minus.oscillatory:
        verdict = NonvanishingVerdict.INCONCLUSIVE
        notes.append("dominant asymptotic group is oscillatory")
    else:
        verdict = NonvanishingVerdict.PASS
    logger.debug(f"Nonvanishing check: {verdict.value}, min ratio {min_ratio:.3g}")
    return NonvanishingReport(verdict, float(np.min(absolute)), min_ratio, argmin,
                              plus, minus, notes)
