# Exponential-polynomial algebra
from .models import ExpPoly, ExpTerm, POWER_CAP, RATE_TOL, ZERO_TOL
from .algebra import (AsymptoticExponent, add, asymptotic_exponent, canonicalize, cosh,
                      differentiate, evaluate, multiply, negate, scale, sinh)
