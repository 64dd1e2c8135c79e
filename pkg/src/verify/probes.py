# Fixed probe basis for intertwining checks. Bump the version when the list changes.
from typing import List, Tuple

from ..expalg import ExpPoly
from ..matfun import VecFun

PROBE_BASIS_VERSION = "1"
PROBE_POWERS = (0, 1, 2)
PROBE_RATES = (0, 1, -1, 1j, -1j, 2, -2)


def probe_basis(n: int) -> List[Tuple[str, VecFun]]:
    """x^m e^{kx} e_j for m <= 2, k in {0, +-1, +-i, +-2}, j < n."""
    probes = []
    for j in range(n):
        for m in PROBE_POWERS:
            for k in PROBE_RATES:
                name = f"x^{m} exp({complex(k):g} x) e{j}"
                probes.append((name, VecFun.basis(n, j, ExpPoly.exp(k, 1.0, m))))
    return probes
