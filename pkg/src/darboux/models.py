from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..expalg import ExpPoly
from ..matfun import RatMatFun
from ..model import Hamiltonian, IntertwiningOperator, TransformationSet


@dataclass
class OrderNBuild:
    """Q of order N with H- such that Q H+ = H- Q."""

    q: IntertwiningOperator
    h_minus: Hamiltonian
    h_plus: Hamiltonian
    tset: TransformationSet
    wronskian: ExpPoly

    @property
    def order(self) -> int:
        return self.q.order


@dataclass
class FirstOrderBuild(OrderNBuild):
    """First-order build with its factorisation data.

    Q- = X1 (d + X0~), Q+ = (-d + X0~) X1^-1, H+ = Q+ Q- + U0, H- = Q- Q+ + U.
    """

    q_plus: IntertwiningOperator = None
    u0: RatMatFun = None
    u: RatMatFun = None
    v0: RatMatFun = None
    superpotential: RatMatFun = None
    x1: np.ndarray = None

    @property
    def q_minus(self) -> IntertwiningOperator:
        return self.q


@dataclass
class FactorizationReport:
    h_plus_factorized: bool
    h_minus_factorized: bool
    commutator_identity: bool
    u0_intertwines: bool
    u0_constant: bool
    reverse_intertwining: bool
    details: Dict[str, str] = field(default_factory=dict)

    def as_checks(self) -> List[tuple]:
        return [
            ("factorization.h_plus", self.h_plus_factorized),
            ("factorization.h_minus", self.h_minus_factorized),
            ("factorization.commutator", self.commutator_identity),
            ("factorization.u0_intertwines", self.u0_intertwines),
            ("factorization.reverse_iff_constant_u0",
             self.reverse_intertwining == self.u0_constant),
        ]
