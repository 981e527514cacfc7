"""Exception and warning types shared across the package."""


class CapstanError(Exception):
    """Base class for all capstan errors."""


class WeightError(CapstanError):
    """Invalid weight specification."""


class ComplexRootError(WeightError):
    """A factor polynomial has a nonreal root."""


class RootOutsideIntervalError(WeightError):
    """A factor polynomial has a real root outside the weight's interval."""


class DegenerateIntervalError(CapstanError):
    """Quadrature interval has nonpositive length."""


class PoleOnBoundaryError(CapstanError):
    """A principal-value pole coincides with an integration endpoint."""


class QuadratureConvergenceError(CapstanError):
    """Node doubling hit its cap without meeting the tolerance."""


class NoFeasibleSupportError(CapstanError):
    """No interval count admits a valid equilibrium solve."""


class MassDeviationError(CapstanError):
    """Solved measure's total mass is too far from 1."""


class ConstancyViolationError(CapstanError):
    """Potential minus log-weight is not constant on the support."""


class SingularMomentSystemError(CapstanError):
    """Harmonic-measure moment system is numerically singular."""


class BoundExceedsOneError(CapstanError):
    """Computed bound coefficient crossed 1, which the theory forbids."""


class LimitTooSmallError(CapstanError):
    """Sieve limit below the minimum."""


class BudgetExceededError(CapstanError):
    """Symbolic expansion exceeded the configured term budget."""


class NonIntegerCertificateError(CapstanError):
    """lcm product times the exact integral failed to be a positive integer."""


class StagnationWarning(UserWarning):
    """Iterative optimizer hit its sweep cap before converging."""


class NonConvergenceWarning(UserWarning):
    """Discrete energy minimizer hit its iteration cap."""
