from typing import Dict, List, Sequence, Union
import logging

import numpy as np

from ..core.errors import DimensionMismatch, SingularMatrix, SingularMatrixFunction
from ..expalg import ExpPoly, ExpTerm
from .models import Denominator, MatFun, RatMatFun, zeros

logger = logging.getLogger(__name__)


def _subset_dets(entries: np.ndarray, rows: Sequence[int]) -> Dict[int, ExpPoly]:
    """Determinants of rows x (column subset) for every column subset of size len(rows).

    Dynamic programme over column bitmasks: rows are placed in order and each
    placement picks an unused column, with the sign tracking inversions.
    """
    ncols = entries.shape[1]
    layer: Dict[int, ExpPoly] = {0: ExpPoly.one()}
    for r in rows:
        pending: Dict[int, List[ExpTerm]] = {}
        for mask, value in layer.items():
            for c in range(ncols):
                bit = 1 << c
                if mask & bit:
                    continue
                entry = entries[r, c]
                if entry.is_zero():
                    continue
                # columns already used that sit to the right of c
                inversions = bin(mask >> (c + 1)).count("1")
                product = value * entry
                if inversions % 2:
                    product = -product
                pending.setdefault(mask | bit, []).extend(product.terms)
        layer = {mask: ExpPoly.from_terms(terms) for mask, terms in pending.items()}
    return layer


def det(m: Union[MatFun, np.ndarray]) -> ExpPoly:
    """Exact determinant of a square ExpPoly matrix."""
    entries = m.entries if isinstance(m, MatFun) else m
    n, ncols = entries.shape
    if n != ncols:
        raise DimensionMismatch(f"Determinant needs a square matrix, got {entries.shape}")
    if n == 0:
        return ExpPoly.one()
    return _subset_dets(entries, range(n)).get((1 << n) - 1, ExpPoly.zero())


def cofactor_row(m: Union[MatFun, np.ndarray], r: int) -> List[ExpPoly]:
    """Cofactors C[r, c] for every column c."""
    entries = m.entries if isinstance(m, MatFun) else m
    n = entries.shape[0]
    full = (1 << n) - 1
    minors = _subset_dets(entries, [i for i in range(n) if i != r])
    return [minors.get(full ^ (1 << c), ExpPoly.zero()) * (-1) ** (r + c) for c in range(n)]


def cofactor_matrix(m: MatFun) -> MatFun:
    n = m.shape[0]
    out = zeros((n, n))
    for r in range(n):
        out[r, :] = cofactor_row(m, r)
    return MatFun(out)


def adjugate(m: MatFun) -> MatFun:
    return cofactor_matrix(m).T


def adjugate_inverse(m: MatFun) -> RatMatFun:
    """adj(M) / det(M)."""
    d = det(m)
    if d.is_zero():
        raise SingularMatrixFunction("Determinant is identically zero")
    logger.debug(f"adjugate inverse of {m.shape} matrix, det has {d.size} terms")
    return RatMatFun(adjugate(m), Denominator.of(d))


def const_inverse(c, rcond: float = 1e-13) -> np.ndarray:
    """Inverse of a constant complex matrix, rejecting (numerically) singular ones."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise DimensionMismatch(f"Constant matrix must be square, got {c.shape}")
    if np.linalg.cond(c) > 1 / rcond:
        raise SingularMatrix(f"Constant matrix is singular (cond={np.linalg.cond(c):.3g})")
    return np.linalg.inv(c)
