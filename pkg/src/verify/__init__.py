# Exact verification reports for intertwining builds
from .models import Check, VerificationReport
from .probes import PROBE_BASIS_VERSION, probe_basis
from .service import (VerificationService, compare_forms, grid_deviation, grid_residual,
                      verify_chains, verify_factorization, verify_intertwining, verify_kernel,
                      verify_scenario_oracles)
