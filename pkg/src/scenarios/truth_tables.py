"""Bound-state truth tables: branch predicates over the constants and samplers inside them."""
from typing import Callable, Dict, List

import numpy as np

from .models import ScenarioConfig, TruthTableCase, is_zero
from .oracles import s51_case

Sampler = Callable[[np.random.Generator], Dict[str, complex]]


def draw(rng: np.random.Generator) -> complex:
    """Magnitude in [0.2, 2], uniform phase."""
    return complex(rng.uniform(0.2, 2.0) * np.exp(1j * rng.uniform(0.0, 2 * np.pi)))


def draw_k(rng: np.random.Generator, re: float) -> complex:
    return complex(re, rng.uniform(-0.3, 0.3))


def _generic(rng: np.random.Generator, names) -> Dict[str, complex]:
    return {name: draw(rng) for name in names}


def _nz(*values: complex) -> bool:
    return all(not is_zero(v) for v in values)


# ---------------------------------------------------------------------------
# Two energies
# ---------------------------------------------------------------------------

def _abcd(cfg: ScenarioConfig):
    c = cfg.c
    return (c(7) - c(3) * c(5), c(8) - c(3) * c(6), c(2) * c(7) - c(4) * c(5),
            c(2) * c(8) - c(4) * c(6))


def _r(cfg: ScenarioConfig):
    return cfg.k1.real, cfg.k2.real


def _gap(cfg: ScenarioConfig) -> bool:
    r1, r2 = _r(cfg)
    return r1 > r2 > 0


def _wide(cfg: ScenarioConfig) -> bool:
    r1, r2 = _r(cfg)
    return r1 > 2 * r2 > 0


def _narrow(cfg: ScenarioConfig) -> bool:
    r1, r2 = _r(cfg)
    return 2 * r2 >= r1 > r2 > 0


def _s51_sampler(lo: float, hi: float, tie: Callable[[Dict[str, complex]], None]) -> Sampler:
    def sample(rng: np.random.Generator) -> Dict[str, complex]:
        r2 = rng.uniform(0.4, 1.0)
        out = _generic(rng, ("C2", "C3", "C4", "C5", "C6", "C7", "C8"))
        out["k1"], out["k2"] = draw_k(rng, r2 * rng.uniform(lo, hi)), draw_k(rng, r2)
        tie(out)
        return out
    return sample


def _free(_: Dict[str, complex]) -> None:
    pass


def _a0(c):
    c["C7"] = c["C3"] * c["C5"]


def _b0(c):
    c["C8"] = c["C3"] * c["C6"]


def _d0(c):
    c["C8"] = c["C4"] * c["C6"] / c["C2"]


def _delta1_0(c):
    c["C4"] = c["C2"] * c["C3"]


def _chain(*ties):
    def tie(c):
        for t in ties:
            t(c)
    return tie


def _s51_case2(cfg: ScenarioConfig) -> bool:
    return s51_case(cfg) == "case2"


def _case2_sampler(ratio: Callable[[np.random.Generator, float], float]) -> Sampler:
    def sample(rng: np.random.Generator) -> Dict[str, complex]:
        c2, c3, c6 = draw(rng), draw(rng), draw(rng)
        r1 = rng.uniform(0.6, 1.2)
        return {
            "C2": c2, "C3": c3, "C6": c6,
            "C4": c2 * c3 - 1 / (2 * c6), "C5": -c2 * c6,
            "C7": 0.5 - c2 * c3 * c6, "C8": c3 * c6,
            "k1": draw_k(rng, r1), "k2": draw_k(rng, ratio(rng, r1)),
        }
    return sample


def s51_table() -> List[TruthTableCase]:
    one, first, second, none = ({"lambda1": 1, "lambda2": 1}, {"lambda1": 1, "lambda2": 0},
                                {"lambda1": 0, "lambda2": 1}, {"lambda1": 0, "lambda2": 0})

    def case(branch, condition, expected, predicate, sampler):
        return TruthTableCase("s51", branch, condition, expected, predicate, sampler)

    def opposite(cfg):
        r1, r2 = _r(cfg)
        return r1 * r2 <= 0 and _s51_case2(cfg)

    return [
        case("1", "Re k1 Re k2 > 0, a d != 0", one,
             lambda g: _r(g)[0] * _r(g)[1] > 0 and _nz(_abcd(g)[0], _abcd(g)[3]),
             _s51_sampler(1.2, 2.5, _free)),
        case("2a", "Re k1 > Re k2 > 0, a = 0, C5 Delta1 = 0, b d != 0", first,
             lambda g: _gap(g) and is_zero(_abcd(g)[0]) and is_zero(g.c(5) * g.delta1)
             and _nz(_abcd(g)[1], _abcd(g)[3]),
             _s51_sampler(1.2, 1.8, _chain(_delta1_0, _a0))),
        case("2b", "Re k1 > 2 Re k2 > 0, a = 0, b d != 0", first,
             lambda g: _wide(g) and is_zero(_abcd(g)[0]) and _nz(_abcd(g)[1], _abcd(g)[3]),
             _s51_sampler(2.3, 3.5, _a0)),
        case("2c", "Re k1 > Re k2 > 0, d = 0, Delta1 = 0, a c != 0", first,
             lambda g: _gap(g) and is_zero(_abcd(g)[3]) and is_zero(g.delta1)
             and _nz(_abcd(g)[0], _abcd(g)[2]),
             _s51_sampler(1.2, 1.8, _chain(_delta1_0, _b0))),
        case("2d", "Re k1 > 2 Re k2 > 0, d = 0, a c != 0", first,
             lambda g: _wide(g) and is_zero(_abcd(g)[3]) and _nz(_abcd(g)[0], _abcd(g)[2]),
             _s51_sampler(2.3, 3.5, _d0)),
        case("2e", "Re k1 > 2 Re k2 > 0, a = d = 0, b c != 0", first,
             lambda g: _wide(g) and is_zero(_abcd(g)[0]) and is_zero(_abcd(g)[3])
             and _nz(_abcd(g)[1], _abcd(g)[2]),
             _s51_sampler(2.3, 3.5, _chain(_a0, _d0))),
        case("3a", "Re k1 > Re k2 > 0, a = b = 0, c d != 0", second,
             lambda g: _gap(g) and is_zero(_abcd(g)[0]) and is_zero(_abcd(g)[1])
             and _nz(_abcd(g)[2], _abcd(g)[3]),
             _s51_sampler(1.2, 2.5, _chain(_a0, _b0))),
        case("3b", "Re k1 > Re k2 > 0, c = d = 0, a b != 0", second,
             lambda g: _gap(g) and is_zero(_abcd(g)[2]) and is_zero(_abcd(g)[3])
             and _nz(_abcd(g)[0], _abcd(g)[1]),
             _s51_sampler(1.2, 2.5, _tie_cd0)),
        case("4a", "2 Re k2 >= Re k1 > Re k2 > 0, a = 0, C5 Delta1 b d != 0", none,
             lambda g: _narrow(g) and is_zero(_abcd(g)[0])
             and _nz(g.c(5), g.delta1, _abcd(g)[1], _abcd(g)[3]),
             _s51_sampler(1.2, 1.8, _a0)),
        case("4b", "2 Re k2 >= Re k1 > Re k2 > 0, d = 0, Delta1 a c != 0", none,
             lambda g: _narrow(g) and is_zero(_abcd(g)[3])
             and _nz(g.delta1, _abcd(g)[0], _abcd(g)[2]),
             _s51_sampler(1.2, 1.8, _d0)),
        case("4c", "2 Re k2 >= Re k1 > Re k2 > 0, a = d = 0, b c != 0", none,
             lambda g: _narrow(g) and is_zero(_abcd(g)[0]) and is_zero(_abcd(g)[3])
             and _nz(_abcd(g)[1], _abcd(g)[2]),
             _s51_sampler(1.2, 1.8, _chain(_a0, _d0))),
        case("4d", "a = b = c = 0, d != 0", none,
             lambda g: all(is_zero(v) for v in _abcd(g)[:3]) and _nz(_abcd(g)[3]),
             _s51_sampler(1.2, 2.5, _tie_abc0)),
        case("4e", "a = b = d = 0, c != 0", none,
             lambda g: is_zero(_abcd(g)[0]) and is_zero(_abcd(g)[1]) and is_zero(_abcd(g)[3])
             and _nz(_abcd(g)[2]),
             _s51_sampler(1.2, 2.5, _tie_abd0)),
        case("4f", "a = c = d = 0, b != 0", none,
             lambda g: is_zero(_abcd(g)[0]) and is_zero(_abcd(g)[2]) and is_zero(_abcd(g)[3])
             and _nz(_abcd(g)[1]),
             _s51_sampler(1.2, 2.5, _tie_acd0)),
        case("4g", "b = c = d = 0, a != 0", none,
             lambda g: all(is_zero(v) for v in _abcd(g)[1:]) and _nz(_abcd(g)[0]),
             _s51_sampler(1.2, 2.5, _tie_bcd0)),
        case("p2a", "partial family 2, Re k1 Re k2 <= 0, |Re k1| > 2 |Re k2|", first,
             lambda g: opposite(g) and abs(_r(g)[0]) > 2 * abs(_r(g)[1]),
             _case2_sampler(lambda rng, r1: -r1 * rng.uniform(0.1, 0.4))),
        case("p2b", "partial family 2, Re k1 Re k2 <= 0, |Re k2| > 2 |Re k1|", second,
             lambda g: opposite(g) and abs(_r(g)[1]) > 2 * abs(_r(g)[0]),
             _case2_sampler(lambda rng, r1: -r1 * rng.uniform(2.5, 4.0))),
        case("p2c", "partial family 2, Re k1 Re k2 <= 0, |Re k2|/2 <= |Re k1| <= 2 |Re k2|", none,
             lambda g: opposite(g) and abs(_r(g)[1]) / 2 <= abs(_r(g)[0]) <= 2 * abs(_r(g)[1]),
             _case2_sampler(lambda rng, r1: -r1 * rng.uniform(1.2, 1.8))),
    ]


def _tie_cd0(c):
    c["C7"] = c["C4"] * c["C5"] / c["C2"]
    c["C8"] = c["C4"] * c["C6"] / c["C2"]


def _tie_abc0(c):
    c["C5"], c["C7"] = 0j, 0j
    c["C8"] = c["C3"] * c["C6"]


def _tie_abd0(c):
    c["C6"], c["C8"] = 0j, 0j
    c["C7"] = c["C3"] * c["C5"]


def _tie_acd0(c):
    c["C2"], c["C4"] = 0j, 0j
    c["C7"] = c["C3"] * c["C5"]


def _tie_bcd0(c):
    c["C2"], c["C4"] = 0j, 0j
    c["C8"] = c["C3"] * c["C6"]


# ---------------------------------------------------------------------------
# One energy
# ---------------------------------------------------------------------------

def _one_energy_sampler(imaginary: bool, tie: Callable[[Dict[str, complex]], None]) -> Sampler:
    def sample(rng: np.random.Generator) -> Dict[str, complex]:
        out = _generic(rng, ("C2", "C3", "C4", "C6", "C7", "C8"))
        if imaginary:
            out["k"] = complex(0.0, rng.uniform(0.5, 1.5))
        else:
            out["k"] = draw_k(rng, rng.uniform(0.5, 1.5))
        tie(out)
        return out
    return sample


def _m(cfg: ScenarioConfig) -> complex:
    return cfg.c(8) - cfg.c(3) * cfg.c(6) + cfg.c(2) * cfg.c(7)


def _re_k(cfg: ScenarioConfig) -> bool:
    return not is_zero(cfg.k.real)


def _c7_0(c):
    c["C7"] = 0j


def _d28_0(c):
    c["C8"] = c["C4"] * c["C6"] / c["C2"]


def _c2_c4_0(c):
    c["C2"], c["C4"] = 0j, 0j


def _m_0(c):
    c["C8"] = c["C3"] * c["C6"] - c["C2"] * c["C7"]


def s52_table() -> List[TruthTableCase]:
    def case(branch, condition, count, predicate, tie):
        return TruthTableCase("s52", branch, condition, {"eigen": count}, predicate,
                              _one_energy_sampler(False, tie))

    def m_and_d0(c):
        _m_0(c)
        c["C4"] = c["C2"] * c["C8"] / c["C6"]

    return [
        case("1", "Re k != 0, C7 Delta28 != 0", 2,
             lambda g: _re_k(g) and _nz(g.c(7), g.d28), _free),
        case("2a", "Re k != 0, C7 = 0, m Delta28 != 0", 1,
             lambda g: _re_k(g) and is_zero(g.c(7)) and _nz(_m(g), g.d28), _c7_0),
        case("2b", "Re k != 0, Delta28 = 0, (|C2| + |C4|) C7 m != 0", 1,
             lambda g: _re_k(g) and is_zero(g.d28) and _nz(abs(g.c(2)) + abs(g.c(4)), g.c(7), _m(g)),
             _d28_0),
        case("3", "Re k != 0, C2 = C4 = 0, C7 (C8 - C3 C6) != 0", 1,
             lambda g: _re_k(g) and is_zero(g.c(2)) and is_zero(g.c(4))
             and _nz(g.c(7), g.c(8) - g.c(3) * g.c(6)), _c2_c4_0),
        case("4a", "Re k != 0, C7 = Delta28 = 0, m != 0", 0,
             lambda g: _re_k(g) and is_zero(g.c(7)) and is_zero(g.d28) and _nz(_m(g)),
             _chain(_c7_0, _d28_0)),
        case("4b", "Re k != 0, C7 = m = 0, Delta28 != 0", 0,
             lambda g: _re_k(g) and is_zero(g.c(7)) and is_zero(_m(g)) and _nz(g.d28),
             _chain(_c7_0, _m_0)),
        case("4c", "Re k != 0, m = Delta28 = 0, C7 != 0", 0,
             lambda g: _re_k(g) and is_zero(_m(g)) and is_zero(g.d28) and _nz(g.c(7)),
             m_and_d0),
    ]


def s53_table() -> List[TruthTableCase]:
    both, eigen, none = ({"eigen": 1, "associated": 1}, {"eigen": 1, "associated": 0},
                         {"eigen": 0, "associated": 0})

    def c8t(g):
        return g.c(8) + g.d27

    def case(branch, condition, expected, predicate, tie, imaginary=False):
        return TruthTableCase("s53", branch, condition, expected, predicate,
                              _one_energy_sampler(imaginary, tie), imaginary)

    def tie_2b(c):
        c["C4"] = c["C2"] * c["C3"]
        c["C8"] = c["C3"] * c["C6"]

    return [
        case("1", "Re k != 0, C7 Delta28 != 0", both,
             lambda g: _re_k(g) and _nz(g.c(7), g.d28), _free),
        case("2a", "Re k != 0, C7 = Delta1 = 0, (C8 + Delta27) Delta28 != 0", eigen,
             lambda g: _re_k(g) and is_zero(g.c(7)) and is_zero(g.delta1) and _nz(c8t(g), g.d28),
             _chain(_c7_0, _delta1_0)),
        case("2b", "Re k != 0, Delta1 = Delta28 = 0, C2 C7 (C8 + Delta27) != 0", eigen,
             lambda g: _re_k(g) and is_zero(g.delta1) and is_zero(g.d28)
             and _nz(g.c(2), g.c(7), c8t(g)), tie_2b),
        case("2c", "Re k = 0, Delta1 != 0", eigen,
             lambda g: not _re_k(g) and _nz(g.delta1), _free, imaginary=True),
        case("3", "Re k != 0, C2 = C4 = 0, C7 (C8 - C3 C6) != 0", eigen,
             lambda g: _re_k(g) and is_zero(g.c(2)) and is_zero(g.c(4))
             and _nz(g.c(7), g.c(8) - g.c(3) * g.c(6)), _c2_c4_0),
        case("4a", "Re k != 0, C7 = 0, Delta1 Delta28 != 0", none,
             lambda g: _re_k(g) and is_zero(g.c(7)) and _nz(g.delta1, g.d28), _c7_0),
        case("4b", "Re k != 0, Delta28 = 0, C7 Delta1 != 0", none,
             lambda g: _re_k(g) and is_zero(g.d28) and _nz(g.c(7), g.delta1), _d28_0),
        case("4c", "Re k != 0, C7 = Delta28 = 0", none,
             lambda g: _re_k(g) and is_zero(g.c(7)) and is_zero(g.d28), _chain(_c7_0, _d28_0)),
        case("4d", "Re k = 0, Delta1 = 0", none,
             lambda g: not _re_k(g) and is_zero(g.delta1), _delta1_0, imaginary=True),
    ]


TABLES = {"s51": s51_table, "s52": s52_table, "s53": s53_table}
