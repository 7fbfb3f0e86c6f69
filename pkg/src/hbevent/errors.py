"""Exception types raised by the hbevent package."""


class HBEventError(Exception):
    """Base class for all hbevent errors."""


class DegenerateSeriesError(HBEventError):
    """Root finding requested on a numerically zero Fourier series."""


class UnboundSymbolError(HBEventError):
    """A polynomial expression references a symbol with no binding."""


class SignAmbiguityError(HBEventError):
    """sign(expr) requested where both the value and its slope vanish."""


class StateResolutionError(HBEventError):
    """No state's region predicates contain the given point."""


class ScheduleError(HBEventError):
    """Base class for transition-schedule failures."""


class NoConvergenceError(ScheduleError):
    """Transition iteration exceeded its budget without becoming periodic."""


class GrazingTransitionError(HBEventError):
    """Transition-time sensitivity requested at a non-regular (grazing) root."""


class SingularJacobianError(HBEventError):
    """Newton system is rank deficient."""


class MaxIterationsError(HBEventError):
    """Newton iteration budget exhausted."""


class StepCollapseError(HBEventError):
    """Continuation step size fell below its floor."""


class SingularMassMatrixError(HBEventError):
    """Mechanical assembly received a singular mass matrix."""


class EventStormError(HBEventError):
    """Time integration produced an implausible number of state events."""
