"""Typed errors and warnings shared by all solitonlab modules.

Every failure mode that callers are expected to handle gets its own class so
scenario drivers can map them to actionable messages.  Errors that can carry
partial results (an ODE cut short at a wave-function node, a quadrature that
stopped refining) expose them as attributes.
"""


class SolitonLabError(Exception):
    """Base class for all solitonlab errors."""


class RangeError(SolitonLabError):
    """Requested parameter lies outside the sampled range."""


class InsufficientDataError(SolitonLabError):
    """Not enough samples for the requested operation (e.g. third derivatives)."""


class CausalityError(SolitonLabError):
    """A trajectory segment is lightlike or spacelike."""


class DomainError(SolitonLabError):
    """Argument outside the mathematical domain of the operation."""


class AccuracyError(SolitonLabError):
    """A quadrature or fit failed to reach the requested accuracy.

    The best available estimate is kept in :attr:`estimate`.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class IntegrationError(SolitonLabError):
    """ODE integration failed (step-size underflow, stiffness).

    :attr:`last_state` holds the last accepted ``(t, y)`` pair.
    """

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class DivergenceError(SolitonLabError):
    """The integrated solution blew up beyond the allowed bound."""


class FitError(SolitonLabError):
    """Least-squares fit rejected (window too short, no oscillation, ...)."""


class NodeError(SolitonLabError):
    """Wave-function node encountered: amplitude below the node threshold."""


class TachyonError(SolitonLabError):
    """Squared dynamical mass went non-positive along the evaluation."""


class DynamicsError(SolitonLabError):
    """Guidance integration halted early; holds the partial trajectory."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class GeometryError(SolitonLabError):
    """Offset not on the required hyperplane, or degenerate foliation leaf."""


class HorizonError(SolitonLabError):
    """A light cone exits the sampled worldline range.

    :attr:`branch` names which root was lost (``'retarded'``/``'advanced'``).
    """

    def __init__(self, message, branch=None):
        super().__init__(message)
        self.branch = branch


class CausticError(SolitonLabError):
    """Light-cone tangency: the root has vanishing projected distance rho."""


class ResonanceError(SolitonLabError):
    """Cavity driven at an exact resonance frequency; field diverges."""


class ValidityError(SolitonLabError):
    """Inputs violate the validity regime of an approximation."""


class ConfigError(SolitonLabError):
    """Scenario configuration rejected; :attr:`key` names the offender."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class RegimeWarning(UserWarning):
    """Parameters leave the regime the model's approximations assume."""


class ValidityWarning(UserWarning):
    """A result was produced outside the stated validity window."""
