from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...expalg import ExpPoly
from ...matfun import RatVecFun, VecFun
from ...model import ChainEntry, TransformationSet, lift
from ...spectra import ModeKind, free_modes, linear_rank

# (sign, channel) of e^{kx} e1, e^{-kx} e1, e^{kx} e2, e^{-kx} e2
FREE_MODES: List[Tuple[int, int]] = [(1, 0), (-1, 0), (1, 1), (-1, 1)]


def E(k: complex, c: complex = 1.0, m: int = 0) -> ExpPoly:
    return ExpPoly.exp(k, c, m)


def vector(*entries) -> RatVecFun:
    return lift(VecFun(np.array([ExpPoly.coerce(e) for e in entries], dtype=object)))


def free_family(k: complex, first: int = 1, kind: ModeKind = ModeKind.EIGEN,
                suffix: str = "") -> Dict[str, RatVecFun]:
    """psi_first .. psi_{first+3} as the four free modes at energy -k^2."""
    return {f"psi{first + i}{suffix}": free_modes(2, k, channel, kind, sign)
            for i, (sign, channel) in enumerate(FREE_MODES)}


def pick_independent(states: Dict[str, RatVecFun], groups: Sequence[Sequence[str]],
                     count: int) -> Optional[List[str]]:
    """First `count` groups whose states raise the rank of the family by their own size."""
    chosen: List[str] = []
    picked = 0
    for group in groups:
        if any(states[name].is_zero() for name in group):
            continue
        trial = chosen + list(group)
        if linear_rank([states[n] for n in trial]) == len(trial):
            chosen = trial
            picked += 1
            if picked == count:
                return chosen
    return None


def kernel_from(states: Dict[str, RatVecFun], names: Sequence[str], lams: Sequence[complex],
                sigmas: Optional[Sequence[int]] = None) -> TransformationSet:
    sigmas = sigmas or [0] * len(names)
    return TransformationSet(2, [ChainEntry(states[n], lam, s, n)
                                 for n, lam, s in zip(names, lams, sigmas)])
