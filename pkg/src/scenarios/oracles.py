"""Closed forms for the bundled scenarios, typed in display by display.

Nothing in this module calls the Darboux builders. Every form is written out
term by term from its printed closed form, so a disagreement with the builder
output always points at one of the two sides and never at shared code.

Conventions: ``E(r)`` is e^{rx}, vectors are written as coefficient columns,
and every rational form is returned over an explicit denominator.
"""
from typing import Dict, List, Optional

import numpy as np

from ..expalg import ExpPoly, cosh, sinh
from ..matfun import Denominator, RatArray, RatScalar, wrap_rational
from .models import ScenarioConfig, SimilarityReduction, is_zero


def E(r: complex, c: complex = 1.0, m: int = 0) -> ExpPoly:
    return ExpPoly.exp(r, c, m)


def _term(coeffs, poly: ExpPoly) -> np.ndarray:
    """Constant coefficient array times one scalar function."""
    coeffs = np.asarray(coeffs, dtype=complex)
    out = np.empty(coeffs.shape, dtype=object)
    for idx in np.ndindex(coeffs.shape):
        out[idx] = poly * complex(coeffs[idx])
    return out


def _sum(*parts: np.ndarray) -> np.ndarray:
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def _rat(entries: np.ndarray, den: Optional[ExpPoly] = None, power: int = 1) -> RatArray:
    denominator = Denominator.of(den, power) if den is not None else Denominator.one()
    return wrap_rational(entries, denominator)


def _scalar(num: ExpPoly, den: Optional[ExpPoly] = None, power: int = 1) -> RatScalar:
    vec = _rat(np.array([num], dtype=object), den, power)
    return RatScalar(vec.num, vec.denominator)


def _diag(*entries: ExpPoly) -> np.ndarray:
    out = np.empty((len(entries), len(entries)), dtype=object)
    for i in range(len(entries)):
        for j in range(len(entries)):
            out[i, j] = entries[i] if i == j else ExpPoly.zero()
    return out


I2 = np.eye(2, dtype=complex)


# ---------------------------------------------------------------------------
# Two distinct energies, lambda_i = -k_i^2
# ---------------------------------------------------------------------------

class _S51:
    """The constants and the small coefficient blocks shared by the two-energy forms."""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        c = [None] + [cfg.c(i) for i in range(1, 9)]
        self.C = c
        self.k1, self.k2 = cfg.k1, cfg.k2
        k1, k2 = self.k1, self.k2
        self.a = c[7] - c[3] * c[5]
        self.b = c[8] - c[3] * c[6]
        self.c = c[2] * c[7] - c[4] * c[5]
        self.d = c[2] * c[8] - c[4] * c[6]
        D1, D2, d1, d2 = cfg.delta1, cfg.delta2, cfg.small_delta1, cfg.small_delta2
        self.A1 = k1 * D2 - k2 * (d2 - 2 * c[3] * c[5] * c[6])
        self.A2 = k1 * D2 * c[3] + k2 * (d2 * c[3] - 2 * c[7] * c[8])
        self.B1 = k2 * D1 * c[5] - k1 * (d1 * c[5] - 2 * c[2] * c[7])
        self.B2 = k2 * D1 * c[7] + k1 * (d1 * c[7] - 2 * c[3] * c[4] * c[5])
        self.D1 = k2 * D1 * c[6] + k1 * (d1 * c[6] - 2 * c[2] * c[8])
        self.D2 = k2 * D1 * c[8] - k1 * (d1 * c[8] - 2 * c[3] * c[4] * c[6])
        self.E1 = k1 * D2 * c[2] + k2 * (d2 * c[2] - 2 * c[4] * c[5] * c[6])
        self.E2 = k1 * D2 * c[4] - k2 * (d2 * c[4] - 2 * c[2] * c[7] * c[8])
        self.rates = (k1 + k2, k1 - k2, -(k1 - k2), -(k1 + k2))

    @property
    def w(self) -> ExpPoly:
        r = self.rates
        return E(r[0], self.a) + E(r[1], self.b) + E(r[2], self.c) + E(r[3], self.d)

    def sigma(self) -> np.ndarray:
        """Numerator of -X0, i.e. Phi' adj(Phi)."""
        c, k1, k2 = self.C, self.k1, self.k2
        s1 = [[k1 * c[7] - k2 * c[3] * c[5], -(k1 - k2) * c[5]],
              [(k1 - k2) * c[3] * c[7], k2 * c[7] - k1 * c[3] * c[5]]]
        s2 = [[k1 * c[8] + k2 * c[3] * c[6], -(k1 + k2) * c[6]],
              [(k1 + k2) * c[3] * c[8], -(k2 * c[8] + k1 * c[3] * c[6])]]
        s3 = [[-(k1 * c[2] * c[7] + k2 * c[4] * c[5]), (k1 + k2) * c[2] * c[5]],
              [-(k1 + k2) * c[4] * c[7], k2 * c[2] * c[7] + k1 * c[4] * c[5]]]
        s4 = [[-(k1 * c[2] * c[8] - k2 * c[4] * c[6]), (k1 - k2) * c[2] * c[6]],
              [-(k1 - k2) * c[4] * c[8], -(k2 * c[2] * c[8] - k1 * c[4] * c[6])]]
        return _sum(*(_term(s, E(r)) for s, r in zip((s1, s2, s3, s4), self.rates)))

    def u0_numerator(self) -> np.ndarray:
        c, k1, k2 = self.C, self.k1, self.k2
        groups = ((c[7], c[3] * c[5], c[5], c[3] * c[7]),
                  (c[8], c[3] * c[6], c[6], c[3] * c[8]),
                  (c[2] * c[7], c[4] * c[5], c[2] * c[5], c[4] * c[7]),
                  (c[2] * c[8], c[4] * c[6], c[2] * c[6], c[4] * c[8]))
        parts = []
        for (x, y, z, yp), r in zip(groups, self.rates):
            u = [[-(k1 ** 2 * x - k2 ** 2 * y), (k1 ** 2 - k2 ** 2) * z],
                 [-(k1 ** 2 - k2 ** 2) * yp, -(k2 ** 2 * x - k1 ** 2 * y)]]
            parts.append(_term(u, E(r)))
        return _sum(*parts)

    def v_minus_numerator(self) -> np.ndarray:
        c, k1, k2, cfg = self.C, self.k1, self.k2, self.cfg
        d1, d2, D1, D2 = cfg.small_delta1, cfg.small_delta2, cfg.delta1, cfg.delta2
        A1, A2, B1, B2 = self.A1, self.A2, self.B1, self.B2
        F1, F2, G1, G2 = self.D1, self.D2, self.E1, self.E2
        t1 = _term([[c[3] * A1, -A1], [c[3] * A2, -A2]], E(2 * k1, k2))
        t2 = _term([[c[7] * B1, -c[5] * B1], [c[7] * B2, -c[5] * B2]], E(2 * k2, k1))
        t3 = _term([[-c[8] * F1, c[6] * F1], [-c[8] * F2, c[6] * F2]], E(-2 * k2, k1))
        t4 = _term([[-c[4] * G1, c[2] * G1], [-c[4] * G2, c[2] * G2]], E(-2 * k1, k2))
        p = c[2] * c[7] * c[8]
        q = c[3] * c[4] * c[5] * c[6]
        t5 = 2 * np.array([
            [2 * (k1 ** 2 * p + k2 ** 2 * q), (k1 ** 2 - k2 ** 2) * (d1 * c[5] * c[6] - d2 * c[2])],
            [(k1 ** 2 - k2 ** 2) * (d1 * c[7] * c[8] - d2 * c[3] * c[4]), 2 * (k2 ** 2 * p + k1 ** 2 * q)],
        ], dtype=complex)
        t6 = -((k1 ** 2 + k2 ** 2) * d1 * d2 - 2 * k1 * k2 * D1 * D2) * I2
        return _sum(t1, t2, t3, t4, _term(t5 + t6, E(0)))

    def free_state(self, sign: int, channel: int, which: int) -> np.ndarray:
        """W * Q(e^{sign k x} e_channel) for k = k_which."""
        k = self.k1 if which == 1 else self.k2
        e_i = np.zeros(2, dtype=complex)
        e_i[channel] = 1.0
        w_part = _sum(*(_term(sign * k * e_i * coeff, E(r + sign * k))
                        for coeff, r in zip((self.a, self.b, self.c, self.d), self.rates)))
        sigma = self.sigma()
        out = np.empty(2, dtype=object)
        for i in range(2):
            out[i] = w_part[i] - sigma[i, channel] * E(sign * k)
        return out


def s51_forms(cfg: ScenarioConfig) -> Dict[str, RatArray]:
    s = _S51(cfg)
    c, k1, k2, w = s.C, s.k1, s.k2, s.w
    D1, D2 = cfg.delta1, cfg.delta2
    forms: Dict[str, RatArray] = {
        "W": _scalar(w),
        "X0": _rat(-s.sigma(), w),
        "U0": _rat(s.u0_numerator(), w),
        "Vminus": _rat(-4 * s.v_minus_numerator(), w, 2),
    }
    # psi1..psi4 at k1, psi5..psi8 at k2: e^{kx} e1, e^{-kx} e1, e^{kx} e2, e^{-kx} e2
    modes = [(1, 0), (-1, 0), (1, 1), (-1, 1)]
    for i, (sign, channel) in enumerate(modes):
        forms[f"psi{i + 1}"] = _rat(s.free_state(sign, channel, 1), w)
        forms[f"psi{i + 5}"] = _rat(s.free_state(sign, channel, 2), w)

    forms["psi11"] = _rat(_sum(_term([s.B1, s.B2], E(k2)), _term([-s.D1, -s.D2], E(-k2))), w)
    forms["psi12"] = _rat(_sum(_term([-s.A1, -s.A2], E(k1)), _term([s.E1, s.E2], E(-k1))), w)

    psi9 = _sum(
        _term(np.multiply(s.a, [1, c[3]]), E(2 * k1 + k2)),
        _term(np.multiply(s.b, [1, c[3]]), E(2 * k1 - k2)),
        _term([2 * s.B1, 2 * s.B2], E(k2, 1.0, 1)),
        _term(np.multiply(-D1, [c[5], c[7]]), E(k2)),
        _term(np.multiply(-D1, [c[6], c[8]]), E(-k2)),
        _term([-2 * s.D1, -2 * s.D2], E(-k2, 1.0, 1)),
        _term(np.multiply(-s.c, [c[2], c[4]]), E(-(2 * k1 - k2))),
        _term(np.multiply(-s.d, [c[2], c[4]]), E(-(2 * k1 + k2))),
    )
    forms["psi9"] = _rat(psi9 * (-1 / (2 * k1)), w)
    psi10 = _sum(
        _term(np.multiply(s.a, [c[5], c[7]]), E(k1 + 2 * k2)),
        _term(np.multiply(s.c, [c[5], c[7]]), E(-(k1 - 2 * k2))),
        _term([-2 * s.A1, -2 * s.A2], E(k1, 1.0, 1)),
        _term(np.multiply(D2, [1, c[3]]), E(k1)),
        _term(np.multiply(D2, [c[2], c[4]]), E(-k1)),
        _term([2 * s.E1, 2 * s.E2], E(-k1, 1.0, 1)),
        _term(np.multiply(-s.b, [c[6], c[8]]), E(k1 - 2 * k2)),
        _term(np.multiply(-s.d, [c[6], c[8]]), E(-(k1 + 2 * k2))),
    )
    forms["psi10"] = _rat(psi10 * (-1 / (2 * k2)), w)
    return forms


def s51_case(cfg: ScenarioConfig) -> Optional[str]:
    """Which of the four partial families the constants sit in, if any."""
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    if (is_zero(c[2] - 1) and all(is_zero(c[i]) for i in (3, 4, 5, 6))
            and is_zero(c[7] * c[8] - 1 / 16) and not is_zero(c[8])):
        return "case1"
    if (not is_zero(c[6]) and is_zero(c[4] - (c[2] * c[3] - 1 / (2 * c[6])))
            and is_zero(c[5] + c[2] * c[6]) and is_zero(c[7] - (0.5 - c[2] * c[3] * c[6]))
            and is_zero(c[8] - c[3] * c[6])):
        return "case2"
    if (not is_zero(c[5]) and is_zero(c[6] - c[5]) and is_zero(c[7] - (0.5 + c[3] * c[5]))
            and is_zero(c[8] - c[7]) and is_zero(c[4] * c[5] - c[2] * c[7])):
        return "case3"
    if (is_zero(c[2]) and is_zero(c[4]) and is_zero(c[7] - (1 + c[3] * c[5]))
            and is_zero(c[8] - c[3] * c[6])):
        return "case4"
    return None


def s51_case_x0(cfg: ScenarioConfig) -> complex:
    """Shift of the second well: C8 = e^{k2 x0} / 4."""
    return complex(np.log(4 * cfg.c(8)) / cfg.k2)


def s51_case_forms(cfg: ScenarioConfig, case: str) -> Dict[str, RatArray]:
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    k1, k2 = cfg.k1, cfg.k2
    s, t = k1 ** 2, k2 ** 2
    if case == "case1":
        x0 = s51_case_x0(cfg)
        ch1, ch2 = cosh(k1), cosh(k2, x0)
        zero = ExpPoly.zero()
        x0_form = (_rat(_diag(-k1 * sinh(k1), zero), ch1)
                   + _rat(_diag(zero, -k2 * sinh(k2, x0)), ch2))
        v_form = (_rat(_diag(ExpPoly.constant(-2 * s), zero), ch1, 2)
                  + _rat(_diag(zero, ExpPoly.constant(-2 * t)), ch2, 2))
        return {
            "W": _scalar(ch1 * ch2),
            "X0": x0_form,
            "U0": _rat(_term(np.diag([-s, -t]), E(0))),
            "Vminus": v_form,
            "psi11": _rat(np.array([ExpPoly.constant(k1), zero], dtype=object), ch1),
            "psi12": _rat(np.array([zero, ExpPoly.constant(k2 / 4)], dtype=object), ch2),
        }
    if case == "case2":
        w = cosh(k1 + k2)
        f = (k1 + k2) / 2
        u = np.array([c[2] * c[6], -c[7]])
        v = np.array([1, c[3]])
        psi11 = _sum(_term(f * u / c[6], E(k2)), _term(f * v, E(-k2)))
        psi12 = _sum(_term(f * c[6] * v, E(k1)), _term(-f * u, E(-k1)))
        return {"W": _scalar(w), "psi11": _rat(psi11, w), "psi12": _rat(psi12, w)}
    if case == "case3":
        alpha = c[2] / c[5]
        ch = cosh(k2)
        n = np.array([[c[5] * c[7], -c[5] ** 2], [c[7] ** 2, -c[5] * c[7]]])
        p = np.array([[c[7] + c[3] * c[5], -2 * c[5]], [2 * c[3] * c[7], -(c[7] + c[3] * c[5])]])
        u0 = _sum(_term(-(s - t) * 2 * alpha * n, E(-2 * k1)),
                  _term(-(s - t) * p - (s + t) / 2 * I2, E(0)))
        growth = E(-k1) * (k1 * ch + k2 * sinh(k2))
        return {
            "W": _scalar(E(k1) * ch),
            "U0": _rat(u0),
            "psi11": _rat(_term(alpha * np.array([c[5], c[7]]), growth), ch),
            "psi12": _rat(_term(k2 * np.array([c[5], c[7]]), E(0)), ch),
        }
    if case == "case4":
        m1 = cfg.m1
        p = np.array([[c[7] + c[3] * c[5], -2 * c[5]], [2 * c[3] * c[7], -(c[7] + c[3] * c[5])]])
        u0 = _sum(_term(-(s - t) * c[6] * m1, E(-2 * k2)),
                  _term(-(s - t) / 2 * p - (s + t) / 2 * I2, E(0)))
        return {
            "W": _scalar(E(k1 + k2)),
            "U0": _rat(u0),
            "Vminus": _rat(_term(4 * k2 * (k1 + k2) * c[6] * m1, E(-2 * k2))),
            "psi11": _rat(_term([0, 0], E(0))),
            "psi12": _rat(_term((k1 + k2) * c[6] * np.array([1, c[3]]), E(-k2))),
        }
    raise KeyError(case)


def s51_reductions(cfg: ScenarioConfig) -> List[SimilarityReduction]:
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    k1, k2 = cfg.k1, cfg.k2
    s, t = k1 ** 2, k2 ** 2
    out: List[SimilarityReduction] = []
    case = s51_case(cfg)
    if case in ("case2", "case3", "case4"):
        cc = np.array([[1, c[5]], [c[3], c[7]]], dtype=complex)
        if case == "case2":
            w = cosh(k1 + k2)
            u0 = np.empty((2, 2), dtype=object)
            u0[0, 0] = E(k1 + k2, -s) + E(-(k1 + k2), -t)
            u0[0, 1] = E(k1 - k2, c[6] * (s - t))
            u0[1, 0] = E(-(k1 - k2), (s - t) / c[6])
            u0[1, 1] = E(-(k1 + k2), -s) + E(k1 + k2, -t)
            v = np.empty((2, 2), dtype=object)
            v[0, 0] = ExpPoly.constant(k1 + k2)
            v[0, 1] = (E(-2 * k2, k1) - E(2 * k1, k2)) * (-c[6])
            v[1, 0] = (E(2 * k2, k1) - E(-2 * k1, k2)) * (-1 / c[6])
            v[1, 1] = ExpPoly.constant(k1 + k2)
            out.append(SimilarityReduction("case2.U0", cc, "U0", _rat(u0 * 0.5, w)))
            out.append(SimilarityReduction("case2.Vminus", cc, "Vminus",
                                           _rat(v * (-(k1 + k2)), w, 2)))
        elif case == "case3":
            alpha = c[2] / c[5]
            ch = cosh(k2)
            u0 = _sum(_term(np.diag([-s, -t]), E(0)),
                      _term([[0, 0], [-alpha * (s - t), 0]], E(-2 * k1)))
            corner = (ExpPoly.constant(2 * t) - ch * ch * (4 * s) - sinh(k2) * ch * (4 * k1 * k2)) \
                * E(-2 * k1, alpha)
            v = _diag(ExpPoly.zero(), ExpPoly.constant(-2 * t))
            v[1, 0] = corner
            out.append(SimilarityReduction("case3.U0", cc, "U0", _rat(u0)))
            out.append(SimilarityReduction("case3.Vminus", cc, "Vminus", _rat(v, ch, 2)))
        else:
            u0 = _sum(_term(np.diag([-s, -t]), E(0)),
                      _term([[0, (s - t) * c[6]], [0, 0]], E(-2 * k2)))
            v = _term([[0, -4 * k2 * (k1 + k2) * c[6]], [0, 0]], E(-2 * k2))
            out.append(SimilarityReduction("case4.U0", cc, "U0", _rat(u0)))
            out.append(SimilarityReduction("case4.Vminus", cc, "Vminus", _rat(v)))

    s51 = _S51(cfg)
    w = s51.w
    if not is_zero(cfg.delta1):
        D1 = cfg.delta1
        cc = np.array([[1, c[2]], [c[3], c[4]]], dtype=complex)
        c5, c6, c7, c8 = -s51.c / D1, -s51.d / D1, s51.a / D1, s51.b / D1
        u = np.empty((2, 2), dtype=object)
        u[0, 0] = E(-(k1 - k2), c5) + E(-(k1 + k2), c6)
        u[0, 1] = E(k1 + k2, -c5) + E(k1 - k2, -c6)
        u[1, 0] = E(-(k1 - k2), c7) + E(-(k1 + k2), c8)
        u[1, 1] = E(k1 + k2, -c7) + E(k1 - k2, -c8)
        u0 = _term(-s * I2, w) + u * (-(s - t) * D1)
        out.append(SimilarityReduction("delta1.U0", cc, "U0", _rat(u0, w)))
        psi11 = _sum(_term([-(k1 - k2) * c5, (k1 + k2) * c7], E(k2)),
                     _term([-(k1 + k2) * c6, (k1 - k2) * c8], E(-k2)))
        out.append(SimilarityReduction("delta1.psi11", cc, "psi11", _rat(psi11 * D1, w)))
        g = (k1 + k2) * c6 * c7 - (k1 - k2) * c5 * c8
        psi12 = _sum(_term([g, 2 * k2 * c7 * c8], E(k1)), _term([-2 * k2 * c5 * c6, -g], E(-k1)))
        out.append(SimilarityReduction("delta1.psi12", cc, "psi12", _rat(psi12 * D1, w)))
    else:
        alpha = cfg.alpha
        cc = np.array([[1, 0], [c[3], -alpha]], dtype=complex)
        c7, c8 = -s51.a / alpha, -s51.b / alpha
        q = E(k2, c7) + E(-k2, c8)
        zero = ExpPoly.zero()
        u0 = (_rat(_diag(ExpPoly.constant(-s), ExpPoly.constant(-t)))
              + _rat(np.array([[zero, (E(k2, c[5]) + E(-k2, c[6])) * (s - t)], [zero, zero]],
                              dtype=object), q))
        out.append(SimilarityReduction("delta1_zero.U0", cc, "U0", u0))
        phi = E(k1) + E(-k1, c[2])
        psi11 = np.array([ExpPoly.constant(2 * k1 * c[2]), zero], dtype=object)
        out.append(SimilarityReduction("delta1_zero.psi11", cc, "psi11", _rat(psi11, phi)))
    return out


# ---------------------------------------------------------------------------
# One energy, two eigenfunctions in the kernel
# ---------------------------------------------------------------------------

def _s52_constants(cfg: ScenarioConfig):
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    m = c[8] - c[3] * c[6] + c[2] * c[7]
    p = c[8] + c[3] * c[6] - c[2] * c[7]
    return c, cfg.k, m, p


def s52_m57(cfg: ScenarioConfig) -> np.ndarray:
    c, _, _, p = _s52_constants(cfg)
    return np.array([[p, -2 * c[6]], [2 * cfg.d38, -p]], dtype=complex)


def s52_forms(cfg: ScenarioConfig) -> Dict[str, RatArray]:
    c, k, m, p = _s52_constants(cfg)
    d27, d28, d38, d1 = cfg.d27, cfg.d28, cfg.d38, cfg.delta1
    w = E(2 * k, c[7]) + E(0, m) + E(-2 * k, d28)
    m57 = s52_m57(cfg)
    x0 = _sum(_term(c[7] * I2, E(2 * k)), _term(-d28 * I2, E(-2 * k)), _term(m57, E(0)))
    a = np.array([[c[2] * c[7] - c[3] * c[6], c[6]], [-d38, c[8]]])
    b = np.array([[c[8], -c[6]], [d38, c[2] * c[7] - c[3] * c[6]]])
    v = _sum(_term(c[7] * a, E(2 * k)), _term(d28 * b, E(-2 * k)), _term(2 * c[7] * d28 * I2, E(0)))
    f = 2 * k
    forms: Dict[str, RatArray] = {
        "W": _scalar(w),
        "X0": _rat(x0 * (-k), w),
        "U0": _rat(_term(-k ** 2 * I2, E(0))),
        "Vminus": _rat(v * (-8 * k ** 2), w, 2),
        "psi1": _rat(_sum(_term([d27, -d38], E(k)), _term([d28, 0], E(-k))) * f, w),
        "psi2": _rat(_sum(_term([-c[7], 0], E(k)), _term([-c[8], -d38], E(-k))) * f, w),
        "psi3": _rat(_sum(_term([c[6], c[8]], E(k)), _term([0, d28], E(-k))) * f, w),
        "psi4": _rat(_sum(_term([0, -c[7]], E(k)), _term([c[6], -d27], E(-k))) * f, w),
        "psi11": _rat(_sum(_term([c[7] * c[2], c[7] * c[4]], E(k)),
                           _term([d28, d28 * c[3]], E(-k))) * f, w),
        "psi12": _rat(_sum(_term([c[6], c[8]], E(k)), _term([0, d28], E(-k))) * (f * c[7]), w),
    }
    b8 = c[8] - c[3] * c[6]
    psi9 = _sum(
        _term([c[7], c[7] * c[3]], E(3 * k)),
        _term([4 * k * c[7] * c[2], 4 * k * c[7] * c[4]], E(k, 1.0, 1)),
        _term([b8, c[3] * b8 - c[7] * d1], E(k)),
        _term([-(c[2] ** 2 * c[7] + c[6] * d1), -(c[2] * c[4] * c[7] + c[8] * d1)], E(-k)),
        _term([4 * k * d28, 4 * k * d28 * c[3]], E(-k, 1.0, 1)),
        _term([-d28 * c[2], -d28 * c[4]], E(-3 * k)),
    )
    forms["psi9"] = _rat(psi9 * (-1 / (2 * k)), w)
    psi10 = _sum(
        _term([0, c[7] ** 2], E(3 * k)),
        _term([4 * k * c[7] * c[6], 4 * k * c[7] * c[8]], E(k, 1.0, 1)),
        _term([-c[7] * c[6], -c[7] * (c[3] * c[6] - c[2] * c[7])], E(k)),
        _term([-(c[6] * b8 + c[2] * c[6] * c[7]), -(c[8] * b8 + c[4] * c[6] * c[7])], E(-k)),
        _term([0, 4 * k * d28 * c[7]], E(-k, 1.0, 1)),
        _term([-d28 * c[6], -d28 * c[8]], E(-3 * k)),
    )
    forms["psi10"] = _rat(psi10 * (-1 / (2 * k)), w)
    return forms


def s52_is_square(cfg: ScenarioConfig) -> bool:
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    return is_zero(c[6]) and is_zero(c[4] - c[2] * c[3]) and is_zero(c[8] - c[2] * c[7])


def s52_square_forms(cfg: ScenarioConfig) -> Dict[str, RatArray]:
    """C6 = 0, C4 = C2 C3, C8 = C2 C7: W is a perfect square and Q is scalar."""
    c, k, _, _ = _s52_constants(cfg)
    phi = E(k) + E(-k, c[2])
    zero = ExpPoly.zero()
    return {
        "W": _scalar(phi * phi * c[7]),
        "X0": _rat(_term(-k * I2, E(k) - E(-k, c[2])), phi),
        "Vminus": _rat(_term(-8 * k ** 2 * c[2] * I2, E(0)), phi, 2),
        "psi11": _rat(_term([2 * k * c[2], 2 * k * c[2] * c[3]], E(0)), phi),
        "psi12": _rat(np.array([zero, ExpPoly.constant(2 * k * c[2] * c[7])], dtype=object), phi),
    }


def s52_delta(cfg: ScenarioConfig) -> complex:
    """Root of p^2 - 4 C6 Delta38, principal branch unless it zeroes m - Delta."""
    c, _, m, p = _s52_constants(cfg)
    delta = complex(np.sqrt(complex(p ** 2 - 4 * c[6] * cfg.d38)))
    if is_zero(m - delta):
        delta = -delta
    return delta


def s52_reductions(cfg: ScenarioConfig, diagonalizer=None) -> List[SimilarityReduction]:
    c, k, m, p = _s52_constants(cfg)
    out: List[SimilarityReduction] = []
    if is_zero(c[6]) and not is_zero(c[8] - c[2] * c[7]):
        cc = np.array([[1, 0], [cfg.d38 / (c[8] - c[2] * c[7]), 1]], dtype=complex)
        phi1 = E(k) + E(-k, c[2])
        phi2 = E(k, c[7]) + E(-k, c[8])
        zero = ExpPoly.zero()
        v = (_rat(_diag(ExpPoly.constant(-8 * k ** 2 * c[2]), zero), phi1, 2)
             + _rat(_diag(zero, ExpPoly.constant(-8 * k ** 2 * c[7] * c[8])), phi2, 2))
        out.append(SimilarityReduction("c6_zero.Vminus", cc, "Vminus", v))
    discriminant = p ** 2 - 4 * c[6] * cfg.d38
    if not is_zero(c[6]) and not is_zero(discriminant) and diagonalizer is not None:
        cc, _ = diagonalizer(s52_m57(cfg))
        delta = s52_delta(cfg)
        c2t = 2 * cfg.d28 / (m - delta)
        c8t = (m - delta) / 2
        first = _scalar(ExpPoly.constant(-8 * k ** 2 * c2t), E(k) + E(-k, c2t), 2)
        second = _scalar(ExpPoly.constant(-8 * k ** 2 * c[7] * c8t), E(k, c[7]) + E(-k, c8t), 2)
        out.append(SimilarityReduction("diagonal.Vminus", cc, "Vminus", diagonal=[first, second]))
    return out


# ---------------------------------------------------------------------------
# One energy, a Jordan pair in the kernel
# ---------------------------------------------------------------------------

def s53_forms(cfg: ScenarioConfig) -> Dict[str, RatArray]:
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    k = cfg.k
    d1, d27, d28, d38 = cfg.delta1, cfg.d27, cfg.d28, cfg.d38
    m1, m2, m3, m4 = cfg.m1, cfg.m2, cfg.m3, cfg.m4
    c8t = c[8] + d27
    w = E(2 * k, -c[7]) + E(-2 * k, -d28) + E(0, -d1 / k, 1) + E(0, -c8t)
    x = ExpPoly.x()

    x0 = _sum(
        _term(I2, E(2 * k, k * c[7]) + E(-2 * k, -k * d28) + E(0, d1 / (2 * k))),
        _term(m1 / (2 * k), E(2 * k)),
        _term(-m2 / (2 * k), E(-2 * k)),
        _term(m3, x),
        _term(k * m4, E(0)),
    )
    u0 = _term(-k ** 2 * I2, w) + _sum(_term(m1, E(2 * k)), _term(m2, E(-2 * k)), _term(m3, E(0)))

    plus, minus = E(2 * k, c[7]) + E(-2 * k, d28), E(2 * k, c[7]) - E(-2 * k, d28)
    scalar = (x * d1 + k * c8t) * plus * (-2 * k) + minus * (2 * d1) \
        + (-8 * k ** 2 * c[7] * d28 + d1 ** 2 / (2 * k ** 2))
    v = _sum(
        _term(I2, scalar),
        _term(-m1, E(2 * k, d1 / k, 1) + E(2 * k, c8t - d1 / (2 * k ** 2)) + 4 * d28),
        _term(-m2, E(-2 * k, d1 / k, 1) + E(-2 * k, c8t + d1 / (2 * k ** 2)) + 4 * c[7]),
        _term(m3, x * minus * (2 * k) - plus),
        _term(2 * k ** 2 * m4, minus),
    )
    forms: Dict[str, RatArray] = {
        "W": _scalar(w),
        "X0": _rat(x0, w),
        "U0": _rat(u0, w),
        "Vminus": _rat(v * 2, w, 2),
    }

    # brackets R_i0 multiplying e^{+-kx}, with e^{+-2kx} and x written out
    e2, em2 = E(2 * k), E(-2 * k)
    one = ExpPoly.one()
    r10 = np.array([
        e2 * c[3] + x * (4 * k * c[2] * c[3]) - (4 * k ** 2 * d27 - d1) - em2 * (4 * k ** 2 * d28 + c[2] * c[4]),
        e2 * c[3] ** 2 - em2 * c[4] ** 2 + x * (4 * k * c[3] * c[4]) + one * (4 * k ** 2 * d38),
    ], dtype=object)
    r30 = np.array([
        -e2 + em2 * c[2] ** 2 - x * (4 * k * c[2]) - one * (4 * k ** 2 * c[6]),
        -e2 * c[3] + em2 * (c[2] * c[4] - 4 * k ** 2 * d28) - x * (4 * k * c[4]) - (4 * k ** 2 * c[8] - d1),
    ], dtype=object)
    r20 = np.array([
        e2 * (4 * k ** 2 * c[7] + c[3]) - em2 * (c[2] * c[4]) + x * (4 * k * c[4]) + (4 * k ** 2 * c[8] + d1),
        r10[1],
    ], dtype=object)
    r40 = np.array([
        r30[0],
        e2 * (4 * k ** 2 * c[7] - c[3]) + em2 * (c[2] * c[4]) - x * (4 * k * c[2] * c[3]) + (4 * k ** 2 * d27 + d1),
    ], dtype=object)
    ek, emk = E(k), E(-k)
    f0, f1 = 1 / (2 * k), 1 / (4 * k ** 2)
    e_1 = np.array([1, 0], dtype=complex)
    e_2 = np.array([0, 1], dtype=complex)
    forms["psi1_0"] = _rat(_term(np.ones(2), ek) * r10 * f0, w)
    forms["psi2_0"] = _rat(_term(np.ones(2), emk) * r20 * f0, w)
    forms["psi3_0"] = _rat(_term(np.ones(2), ek) * r30 * f0, w)
    forms["psi4_0"] = _rat(_term(np.ones(2), emk) * r40 * f0, w)
    forms["psi1_1"] = _rat(_term(np.ones(2), ek) * (_term(-2 * k * e_1, w) - r10 * x) * f1, w)
    forms["psi3_1"] = _rat(_term(np.ones(2), ek) * (_term(-2 * k * e_2, w) - r30 * x) * f1, w)
    forms["psi2_1"] = _rat(_term(np.ones(2), emk) * (_term(2 * k * e_1, w) + r20 * x) * f1, w)
    forms["psi4_1"] = _rat(_term(np.ones(2), emk) * (_term(2 * k * e_2, w) + r40 * x) * f1, w)
    return forms


def s53_case3_forms(cfg: ScenarioConfig) -> Dict[str, RatArray]:
    """C2 = C4 = 0: the eigenfunction image vanishes and the associated image is bound."""
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    k = cfg.k
    b8 = c[8] - c[3] * c[6]
    num = [2 * k * c[6] * c[7] - b8 / (2 * k), 2 * k * c[7] * c[8] - c[3] * b8 / (2 * k)]
    return {"psi6_1": _rat(_term(num, E(0)), E(k, c[7]) + E(-k, b8))}


def s53_reductions(cfg: ScenarioConfig) -> List[SimilarityReduction]:
    c = [None] + [cfg.c(i) for i in range(1, 9)]
    k = cfg.k
    d1 = cfg.delta1
    w = s53_forms(cfg)["W"].value
    out: List[SimilarityReduction] = []
    if not is_zero(d1):
        cc = np.array([[1, c[2]], [c[3], c[4]]], dtype=complex)
        c6, c7 = -cfg.d28 / d1, c[7] / d1
        shape = np.empty((2, 2), dtype=object)
        shape[0, 0], shape[0, 1] = ExpPoly.constant(1), E(2 * k, -1)
        shape[1, 0], shape[1, 1] = E(-2 * k), ExpPoly.constant(-1)
        u0 = _term(-k ** 2 * I2, w) + shape * d1
        out.append(SimilarityReduction("delta1.U0", cc, "U0", _rat(u0, w)))
        psi = np.array([E(k, 1 / (4 * k ** 2)) + E(-k, c6),
                        -(E(k, c7) + E(-k, 1 / (4 * k ** 2)))], dtype=object)
        out.append(SimilarityReduction("delta1.psi6_0", cc, "psi6_0", _rat(psi * (2 * k * d1), w)))
    else:
        alpha = cfg.alpha
        cc = np.array([[1, 0], [c[3], -alpha]], dtype=complex)
        c7, c8 = -c[7] / alpha, -(c[8] - c[3] * c[6]) / alpha
        q = E(k, c7) + E(-k, c8)
        phi = E(k) + E(-k, c[2])
        zero = ExpPoly.zero()
        u0 = (_rat(_term(-k ** 2 * I2, E(0)))
              + _rat(np.array([[zero, phi], [zero, zero]], dtype=object), q))
        out.append(SimilarityReduction("delta1_zero.U0", cc, "U0", u0))
        psi = np.array([ExpPoly.constant(2 * k * c[2]), zero], dtype=object)
        out.append(SimilarityReduction("delta1_zero.psi6_0", cc, "psi6_0", _rat(psi, phi)))
    return out
