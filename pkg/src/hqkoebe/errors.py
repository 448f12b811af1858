"""Exception and warning types raised across the package."""


class KoebeError(Exception):
    """Base class for errors raised by hqkoebe."""


class DomainError(KoebeError, ValueError):
    """Evaluation point outside the open unit disk."""


class OrderOverflow(KoebeError, ValueError):
    pass


class DivisionByZeroConstantTerm(KoebeError, ZeroDivisionError):
    pass


class DegenerateParameters(KoebeError, ValueError):
    """Parameters at which a closed form has a vanishing denominator."""


class NonConvergence(KoebeError, ArithmeticError):
    pass


class DilatationOutOfRange(KoebeError, ValueError):
    pass


class DegenerateJet(KoebeError, ValueError):
    pass


class DegenerateCurve(KoebeError, ValueError):
    pass


class ResolutionInsufficient(KoebeError, ValueError):
    """Sampled image curve is too coarse to decide self-intersection."""


class ConfigError(KoebeError, ValueError):
    pass


class MaxSubdivisionsExceeded(UserWarning):
    """Adaptive quadrature stopped at its subdivision cap; estimate returned anyway."""


class SlowConvergence(UserWarning):
    pass
