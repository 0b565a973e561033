"""Exception types raised by the library."""


class RicciStabilityError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class InvariantViolation(RicciStabilityError):
    pass


class NotCertifiedError(RicciStabilityError):
    """A quantity was requested that only exists for certified-stable spaces."""


class NonPositiveRicci(RicciStabilityError):
    pass


class NewtonFailure(RicciStabilityError):
    pass


class DegenerateDerivative(RicciStabilityError):
    pass
