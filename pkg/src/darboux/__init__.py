# Darboux builders
from .models import FactorizationReport, FirstOrderBuild, OrderNBuild
from .service import (build_first_order, build_order_n, build_reverse, cramer_coefficients,
                      factorization_report, superpotential, superpotential_columns, u0_spectrum,
                      u0_spectrum_deviation, u0_via_transformation_matrix)
