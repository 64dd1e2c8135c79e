# Matrix functions over exponential polynomials
from .models import (Denominator, MatFun, PolyArray, RatArray, RatMatFun, RatScalar, RatVecFun,
                     VecFun, to_object_array, wrap_rational, zeros)
from .linalg import adjugate, adjugate_inverse, cofactor_matrix, cofactor_row, const_inverse, det
from .rational import (as_rational, commutator, rat_add, rat_differentiate, rat_equal,
                       rat_is_zero, rat_mul, rat_sub)
