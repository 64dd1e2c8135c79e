"""Constructive Darboux builders: superpotentials, first-order and order-N operators."""
from itertools import permutations
from typing import List, Optional, Sequence
import logging

import numpy as np

from ..core.errors import (DegenerateWronskian, RouteDisagreement, SetInconsistentWithPotential)
from ..matfun import (Denominator, RatMatFun, RatVecFun, commutator, const_inverse,
                      cofactor_row, wrap_rational, zeros)
from ..model import (DifferentialOperator, Hamiltonian, IntertwiningOperator, TransformationSet,
                     chain_residuals, columns_inverse, phi_matrix, t_matrix, wronskian_system)
from .models import FactorizationReport, FirstOrderBuild, OrderNBuild

logger = logging.getLogger(__name__)


def _require_consistent(tset: TransformationSet, h_plus: Hamiltonian) -> None:
    t_matrix(tset)
    for l, r in enumerate(chain_residuals(tset, h_plus)):
        if not r.is_zero():
            raise SetInconsistentWithPotential(
                f"Transformation function {tset.entries[l].name or l} does not satisfy its "
                f"chain equation for the given H+")


def _times_scale(v: RatVecFun, scale: Denominator) -> RatVecFun:
    """v multiplied by the expanded scale, cancelling shared factors when possible."""
    try:
        return wrap_rational(v.num.entries, v.denominator.divided_by(scale))
    except ValueError:
        return wrap_rational(v.num.entries * scale.expanded, v.denominator)


def cramer_coefficients(tset: TransformationSet, order: Optional[int] = None) -> List[RatMatFun]:
    """Y_0 .. Y_{N-1} of the monic operator d^N + sum_j Y_j d^j annihilating the set.

    Column l of Y_j is -sum_c Phi_c^(N) cof(c, jn+l) / W, the Cramer solution of
    the linear system Phi_c^(N) + sum_j Y_j Phi_c^(j) = 0.
    """
    system = wronskian_system(tset, order)
    w = system.det
    if w.is_zero():
        raise DegenerateWronskian("Wronskian of the transformation set is identically zero")
    n, big_n = tset.n, system.order
    ys = [RatMatFun.zero(n) for _ in range(big_n)]
    for c in range(n * big_n):
        top = system.derivatives[c][big_n]
        if top.is_zero():
            continue
        top = _times_scale(top, system.scales[c])
        cof = cofactor_row(system.p, c)
        for j in range(big_n):
            block = zeros((n, n))
            for l in range(n):
                block[:, l] = top.num.entries * cof[j * n + l]
            ys[j] = ys[j] - wrap_rational(block, top.denominator * Denominator.of(w))
    logger.debug(f"Cramer coefficients for order {big_n}, W has {w.size} terms")
    return ys


def superpotential_columns(tset: TransformationSet) -> RatMatFun:
    """Column formula: column l is -(1/W) sum_i cof_il Phi_i'."""
    return cramer_coefficients(tset, 1)[0]


def superpotential(tset: TransformationSet) -> RatMatFun:
    """X0~ = -Phi' Phi^-1, cross-checked against the column formula."""
    inverse, _ = columns_inverse(tset)
    x0 = -(phi_matrix(tset).derivative() @ inverse)
    if not (x0 - superpotential_columns(tset)).is_zero():
        raise RouteDisagreement("Superpotential routes disagree")
    return x0


def u0_via_transformation_matrix(tset: TransformationSet) -> RatMatFun:
    """U0 = Phi T^t Phi^-1."""
    inverse, _ = columns_inverse(tset)
    return (phi_matrix(tset) @ t_matrix(tset).T) @ inverse


def build_order_n(tset: TransformationSet, xn, h_plus: Hamiltonian) -> OrderNBuild:
    """Order-N intertwining operator with kernel spanned by the set, and the partner H-."""
    order = tset.order
    xn = np.asarray(xn if xn is not None else np.eye(tset.n), dtype=complex)
    _require_consistent(tset, h_plus)
    system_det = wronskian_system(tset, order).det
    if system_det.is_zero():
        raise DegenerateWronskian("Wronskian of the transformation set is identically zero")
    ys = cramer_coefficients(tset, order)
    lower = [xn @ y for y in ys]
    q = IntertwiningOperator(order, xn, lower)
    xn_inv = const_inverse(xn)
    v_minus = (xn @ h_plus.potential) @ xn_inv + (lower[-1].derivative() @ xn_inv) * 2
    logger.info(f"Built order-{order} intertwining operator on {tset.n} channels")
    return OrderNBuild(q, Hamiltonian(tset.n, v_minus), h_plus, tset, system_det)


def build_first_order(tset: TransformationSet, x1=None, h_plus: Hamiltonian = None) -> FirstOrderBuild:
    """First-order build with both U0 routes required to agree."""
    n = tset.n
    h_plus = h_plus or Hamiltonian.free(n)
    x1 = np.asarray(x1 if x1 is not None else np.eye(n), dtype=complex)
    _require_consistent(tset, h_plus)
    x1_inv = const_inverse(x1)

    _, w = columns_inverse(tset)
    x0t = superpotential(tset)
    u0 = h_plus.potential - x0t @ x0t + x0t.derivative()
    if not (u0 - u0_via_transformation_matrix(tset)).is_zero():
        raise RouteDisagreement("U0 from the superpotential and from Phi T^t Phi^-1 disagree")

    x0 = x1 @ x0t
    q_minus = IntertwiningOperator(1, x1, [x0])
    q_plus = IntertwiningOperator(1, -x1_inv, [x0t @ x1_inv])
    u = (x1 @ u0) @ x1_inv
    v_minus = (x1 @ h_plus.potential) @ x1_inv + (x0.derivative() @ x1_inv) * 2
    logger.info(f"Built first-order intertwining operator on {n} channels")
    return FirstOrderBuild(q=q_minus, h_minus=Hamiltonian(n, v_minus), h_plus=h_plus, tset=tset,
                           wronskian=w, q_plus=q_plus, u0=u0, u=u, v0=u0 + x0t @ x0t,
                           superpotential=x0t, x1=x1)


def build_reverse(h_minus: Hamiltonian, kernel: TransformationSet) -> OrderNBuild:
    """Operator Q' with Q' H- = H+' Q' and identity leading coefficient.

    The returned build's ``h_minus`` is the recovered H+'.
    """
    return build_order_n(kernel, np.eye(kernel.n), h_minus)


def _multiplication(m: RatMatFun) -> DifferentialOperator:
    return DifferentialOperator([m])


def factorization_report(b: FirstOrderBuild, h_plus: Optional[Hamiltonian] = None) -> FactorizationReport:
    """Exact operator-level checks of the first-order factorisation identities."""
    h_plus = h_plus or b.h_plus
    hp = h_plus.as_differential_operator()
    hm = b.h_minus.as_differential_operator()
    qm = b.q_minus.as_differential_operator()
    qp = b.q_plus.as_differential_operator()

    h_plus_ok = (hp - qp.compose(qm) - _multiplication(b.u0)).is_zero()
    h_minus_ok = (hm - qm.compose(qp) - _multiplication(b.u)).is_zero()
    commutator_ok = (b.u0.derivative() - commutator(b.u0, b.superpotential)).is_zero()
    intertwines = (qm.compose(_multiplication(b.u0)) - _multiplication(b.u).compose(qm)).is_zero()
    constant = b.u0.is_constant()
    reverse = (qp.compose(hm) - hp.compose(qp)).is_zero()
    return FactorizationReport(h_plus_ok, h_minus_ok, commutator_ok, intertwines, constant, reverse)


def _match_spectra(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Smallest max-deviation over pairings of two equal-size multisets."""
    return min(max(abs(x - y) for x, y in zip(a, perm)) for perm in permutations(b))


def u0_spectrum(b: FirstOrderBuild, xs: Sequence[float] = (0.0, 1.37)) -> np.ndarray:
    """Numeric eigenvalues of U0 at each sample point, shape (len(xs), n)."""
    values = b.u0.evaluate(np.asarray(xs, dtype=float))
    return np.array([np.linalg.eigvals(values[:, :, i]) for i in range(len(xs))])


def u0_spectrum_deviation(b: FirstOrderBuild, xs: Sequence[float] = (0.0, 1.37)) -> float:
    """Worst mismatch between U0's eigenvalues and the set's lambda multiset."""
    expected = b.tset.eigenvalues
    return max(_match_spectra(list(row), expected) for row in u0_spectrum(b, xs))
