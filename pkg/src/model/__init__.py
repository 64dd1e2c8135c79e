# Hamiltonians, transformation sets and intertwining operators
from .models import (ChainEntry, DifferentialOperator, Hamiltonian, IntertwiningOperator,
                     NonvanishingReport, NonvanishingVerdict, TransformationSet, lift)
from .service import (WronskianSystem, apply_hamiltonian, apply_operator, chain_residuals,
                      check_nonvanishing, columns_inverse, phi_matrix, potential_from_set,
                      set_is_consistent, t_matrix, wronskian, wronskian_system)
