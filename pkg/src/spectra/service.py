from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..core.errors import (ChainConstraintViolated, EmptyImage, VerificationFailed, ZeroRate,
                           ZeroState)
from ..expalg import ExpPoly, asymptotic_exponent
from ..expalg.models import rates_equal
from ..matfun import (Denominator, RatMatFun, RatVecFun, VecFun, const_inverse, wrap_rational)
from ..model import (Hamiltonian, IntertwiningOperator, NonvanishingVerdict, check_nonvanishing,
                     lift)
from .models import BoundStateVerdict, ModeKind, NormGrowth, SpectralChain, Verdict

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------

def chain_residuals(chain: SpectralChain, h: Hamiltonian) -> List[RatVecFun]:
    """(H - lam) Psi_i - Psi_{i-1}, with Psi_{-1} = 0."""
    out = []
    for i, psi in enumerate(chain.members):
        r = h.apply(psi) - psi * chain.lam
        if i:
            r = r - chain.members[i - 1]
        out.append(r)
    return out


def chain_is_valid(chain: SpectralChain, h: Hamiltonian) -> bool:
    return all(r.is_zero() for r in chain_residuals(chain, h))


def map_chain(q: IntertwiningOperator, chain: SpectralChain, h_minus: Hamiltonian) -> SpectralChain:
    """Image of a chain under Q with the leading run of zero images dropped."""
    images = [q.apply(psi) for psi in chain.members]
    l0 = 0
    while l0 < len(images) and images[l0].is_zero():
        l0 += 1
    if l0 == len(images):
        raise EmptyImage(f"Every member of the chain at lambda={chain.lam} lies in ker Q")
    for l in range(l0, len(images)):
        if images[l].is_zero():
            raise ChainConstraintViolated(
                f"Chain member {l} maps to zero after a nonzero image at {l0}")
    mapped = SpectralChain(chain.lam, images[l0:], chain.names[l0:], trimmed=l0)
    if not chain_is_valid(mapped, h_minus):
        raise VerificationFailed(f"Mapped chain at lambda={chain.lam} is not a chain of H-")
    logger.debug(f"Mapped chain of length {len(chain)}, trimmed {l0}")
    return mapped


def mapped_states(q: IntertwiningOperator, states: Dict[str, RatVecFun]) -> Dict[str, RatVecFun]:
    return {name: q.apply(v) for name, v in states.items()}


# ---------------------------------------------------------------------------
# Free-Hamiltonian modes and plane waves
# ---------------------------------------------------------------------------

def free_modes(n: int, k: complex, channel: int, kind: ModeKind = ModeKind.EIGEN,
               sign: int = 1) -> RatVecFun:
    """e^{+-kx} e_channel, or the first associated mode -+x e^{+-kx}/(2k) e_channel (lambda = -k^2)."""
    k = complex(k)
    if k == 0:
        raise ZeroRate("Free modes need k != 0")
    if kind is ModeKind.EIGEN:
        value = ExpPoly.exp(sign * k)
    else:
        value = ExpPoly.exp(sign * k, -sign / (2 * k), 1)
    return lift(VecFun.basis(n, channel, value))


def plane_wave_image(q: IntertwiningOperator, kappa: float, channel: int) -> RatVecFun:
    """Q (e^{i kappa x} e_channel); an H- eigenfunction with energy kappa^2 when H+ is free."""
    return q.apply(VecFun.basis(q.n, channel, ExpPoly.exp(1j * float(kappa))))


# ---------------------------------------------------------------------------
# Normalizability
# ---------------------------------------------------------------------------

def _numerator_exponent(state: RatVecFun, sign: int):
    best = None
    for e in state.num.entries:
        if e.is_zero():
            continue
        a = asymptotic_exponent(e, sign)
        key = (sign * a.re, a.power)
        if best is None or key > (sign * best.re, best.power):
            best = a
    return best


def classify_normalizability(state: RatVecFun, name: Optional[str] = None,
                             window: Tuple[float, float] = (-10.0, 10.0)) -> BoundStateVerdict:
    """Decide square integrability from the dominant exponents at both infinities."""
    state = lift(state)
    if state.is_zero():
        raise ZeroState(f"State {name or ''} is identically zero")
    den = state.den
    notes: List[str] = []
    decays, oscillatory_den = True, False
    exponents = {}
    for sign in (1, -1):
        num_a = _numerator_exponent(state, sign)
        den_a = asymptotic_exponent(den, sign)
        exponents[sign] = (num_a, den_a)
        side = "+inf" if sign > 0 else "-inf"
        gap = sign * (den_a.re - num_a.re)
        if abs(gap) <= 1e-12 * max(1.0, abs(den_a.re)):
            if num_a.power >= den_a.power:
                decays = False
                notes.append(f"no decay at {side}: equal rates, numerator degree "
                             f"{num_a.power} >= {den_a.power}"
                             + (" (oscillatory)" if num_a.oscillatory or den_a.oscillatory else ""))
        elif gap < 0:
            decays = False
            notes.append(f"grows at {side}")
        if den_a.oscillatory:
            oscillatory_den = True

    verdict = Verdict.NORMALIZABLE if decays else Verdict.NON_NORMALIZABLE
    if decays and not state.denominator.is_one():
        check = check_nonvanishing(den, window, 401)
        if check.verdict is NonvanishingVerdict.FAIL:
            verdict = Verdict.NON_NORMALIZABLE
            notes.append(f"denominator vanishes near x={check.argmin:.4g}")
        elif oscillatory_den:
            verdict = Verdict.INCONCLUSIVE
            notes.append("oscillatory dominant denominator group")
    return BoundStateVerdict(state, verdict, exponents[1], exponents[-1], name, notes)


def norm_growth(state: RatVecFun, lengths: Sequence[float] = (10.0, 20.0, 40.0),
                points_per_unit: int = 100) -> NormGrowth:
    """Trapezoid integrals of |Psi|^2 over [-L, L]."""
    state = lift(state)
    integrals = []
    with np.errstate(over="ignore", invalid="ignore"):
        for length in lengths:
            x = np.linspace(-length, length, int(2 * length * points_per_unit) + 1)
            values = state.evaluate(x)
            density = np.sum(np.abs(values) ** 2, axis=0)
            integrals.append(float(np.trapz(density, x)))
    return NormGrowth(tuple(lengths), integrals)


# ---------------------------------------------------------------------------
# Linear algebra over mapped states
# ---------------------------------------------------------------------------

def _common_numerators(states: Sequence[RatVecFun]) -> List[np.ndarray]:
    common = Denominator.one()
    for s in states:
        common = common.lcm(s.denominator)
    return [s.over(common) for s in states]


def coefficient_matrix(states: Sequence[RatVecFun]) -> np.ndarray:
    """Rows are states; columns are (component, x-power, merged rate) slots."""
    states = [lift(s) for s in states]
    numerators = _common_numerators(states)
    slots: List[Tuple[int, int, complex]] = []
    rows: List[Dict[int, complex]] = []
    for num in numerators:
        row: Dict[int, complex] = {}
        for comp, poly in enumerate(num):
            for t in poly.terms:
                for idx, (c, m, k) in enumerate(slots):
                    if c == comp and m == t.power and rates_equal(k, t.rate):
                        break
                else:
                    idx = len(slots)
                    slots.append((comp, t.power, t.rate))
                row[idx] = row.get(idx, 0) + t.coeff
        rows.append(row)
    matrix = np.zeros((len(states), len(slots)), dtype=complex)
    for i, row in enumerate(rows):
        for j, v in row.items():
            matrix[i, j] = v
    return matrix


def linear_rank(states: Sequence[RatVecFun], rtol: float = 1e-9) -> int:
    """Rank over C of a family of rational vector functions."""
    if not states:
        return 0
    matrix = coefficient_matrix(states)
    if not matrix.size:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


def dependence_is_zero(coefficients: Sequence[complex], states: Sequence[RatVecFun]) -> bool:
    """Exact test that sum_i c_i Psi_i vanishes identically."""
    total = None
    for c, s in zip(coefficients, states):
        term = lift(s) * complex(c)
        total = term if total is None else total + term
    return total is None or total.is_zero()


# ---------------------------------------------------------------------------
# Similarity transformations
# ---------------------------------------------------------------------------

@dataclass
class SimilarityResult:
    h: Optional[Hamiltonian] = None
    q: Optional[IntertwiningOperator] = None
    states: Optional[List[RatVecFun]] = None


def similarity(c, h: Optional[Hamiltonian] = None, q: Optional[IntertwiningOperator] = None,
               states: Sequence[RatVecFun] = ()) -> SimilarityResult:
    """H -> C^-1 H C, Q -> C^-1 Q C, v -> C^-1 v."""
    c = np.asarray(c, dtype=complex)
    c_inv = const_inverse(c)
    result = SimilarityResult()
    if h is not None:
        result.h = Hamiltonian(h.n, (c_inv @ h.potential) @ c)
    if q is not None:
        result.q = IntertwiningOperator(q.order, c_inv @ q.leading @ c,
                                        [(c_inv @ x) @ c for x in q.lower])
    result.states = [c_inv @ lift(v) for v in states]
    return result


def diagonalizing_similarity(a, tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """Constant C with C^-1 A C diagonal, or upper triangular (Jordan) when A is defective."""
    a = np.asarray(a, dtype=complex)
    eigvals, eigvecs = np.linalg.eig(a)
    scale = max(1.0, float(np.abs(a).max()))
    if a.shape == (2, 2) and abs(eigvals[0] - eigvals[1]) <= tol * scale:
        nilpotent = a - eigvals.mean() * np.eye(2)
        if np.abs(nilpotent).max() <= tol * scale:
            c = np.eye(2, dtype=complex)
        else:
            j = int(np.argmax(np.linalg.norm(nilpotent, axis=0)))
            c = np.column_stack([nilpotent[:, j], np.eye(2)[:, j]])
    else:
        c = eigvecs
    return c, const_inverse(c) @ a @ c
