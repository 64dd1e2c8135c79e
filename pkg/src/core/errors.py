"""Exception hierarchy shared by every specdesign package.

Each class carries the process exit code the CLI maps it to.
"""


class SpecDesignError(Exception):
    """Base class for all specdesign errors."""

    exit_code = 1


# ---------------------------------------------------------------------------
# Input errors (exit 2)
# ---------------------------------------------------------------------------

class InputError(SpecDesignError):
    exit_code = 2


class ConstraintViolated(InputError):
    """Scenario constants break a structural constraint."""


class DimensionMismatch(InputError):
    """Operands have incompatible channel counts or shapes."""


class ChainConstraintViolated(InputError):
    """A transformation set breaks the chain rule lambda_{l+1} = lambda_l when sigma_l = 1."""


class OracleMissing(InputError):
    """No closed form is available for the requested quantity."""


class UnclassifiedConstants(InputError):
    """No truth-table branch matches the given constants."""


class ArtifactError(InputError):
    """A build artifact is missing or unreadable."""


class UnknownQuantity(InputError):
    """An export quantity name is not recognised."""


class UnknownScenario(InputError):
    """A scenario id, preset or truth-table branch is not registered."""


# ---------------------------------------------------------------------------
# Degenerate inputs (exit 3)
# ---------------------------------------------------------------------------

class DegenerateError(SpecDesignError):
    exit_code = 3


class ZeroFunction(DegenerateError):
    """The function is identically zero."""


class PowerOverflow(DegenerateError, ArithmeticError):
    """An x-power exceeded the cap."""


class SingularMatrixFunction(DegenerateError):
    """Determinant of a function matrix is identically zero."""


class DegenerateWronskian(SingularMatrixFunction):
    """Wronskian of a transformation set is identically zero."""


class VanishingWronskian(DegenerateError):
    """Wronskian has a zero (or a near-zero) on the sampled window."""


class SingularMatrix(DegenerateError):
    """A constant matrix is not invertible."""


class SingularLeading(SingularMatrix):
    """Leading coefficient of an operator is not invertible."""


class ZeroState(DegenerateError):
    """A state to classify is identically zero."""


class ZeroRate(DegenerateError):
    """A free mode was requested with k = 0."""


class EmptyImage(DegenerateError):
    """Every member of a chain is annihilated by the operator."""


# ---------------------------------------------------------------------------
# Verification failures (exit 4)
# ---------------------------------------------------------------------------

class VerificationFailed(SpecDesignError):
    exit_code = 4


class SetInconsistentWithPotential(VerificationFailed):
    """The transformation set does not solve H+ Phi = Phi T^t."""


class RouteDisagreement(VerificationFailed):
    """Two independent construction routes produced different results."""
