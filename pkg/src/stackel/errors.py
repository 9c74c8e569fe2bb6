"""Exception hierarchy for the stackel package.

Every error raised by the math layers derives from :class:`StackelError`,
so callers (in particular the CLI) can distinguish domain failures from
programming mistakes.
"""


class StackelError(Exception):
    """Base class for all package-specific errors."""


class EvaluationError(StackelError):
    """A function produced a non-finite value during numerical evaluation."""

    def __init__(self, message, tau=None):
        super().__init__(message)
        self.tau = tau


class IntegrationBlowupError(StackelError):
    """The integrator state became non-finite; carries the last good abscissa."""

    def __init__(self, message, last_tau=None):
        super().__init__(message)
        self.last_tau = last_tau


class GridError(StackelError):
    """A grid violates its invariants (ordering or singularity clearance)."""


class DegenerateMetricError(StackelError):
    """Metric determinant below the degeneracy threshold."""

    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class SingularVolumeError(StackelError):
    """Spatial volume density vanished where a finite value is required."""


class InvalidTransformError(StackelError):
    """A coordinate transform matrix is singular."""


class NotSplittableError(StackelError):
    """The structure matrix has a single size-3 Jordan chain, so no invariant
    direction with an invariant complementary plane exists."""


class DegenerateRotationError(StackelError):
    """Rotation-variant construction requested with vanishing rotation rate
    (the case collapses to the diagonal variant)."""


class BranchError(StackelError):
    """Requested a conformal-factor branch outside the admissible pairing table."""


class DomainError(StackelError):
    """Evaluation requested at (or too close to) a singular point."""

    def __init__(self, message, tau=None):
        super().__init__(message)
        self.tau = tau


class InconsistentInputsError(StackelError):
    """Assembly inputs disagree (invariants of the structure matrix vs the
    conformal-factor branch)."""


class SignatureError(StackelError):
    """Assembled metric is not Lorentzian (no single sign differing from the
    other three)."""

    def __init__(self, message, signs=None):
        super().__init__(message)
        self.signs = signs


class ConstraintError(StackelError):
    """Family parameters violate the family's admissibility constraint."""


class ConfigError(StackelError):
    """Malformed CLI/job configuration."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
