"""Exception hierarchy. Each class carries the diagnostic prefix the CLI prints."""


class KMixtureError(Exception):
    prefix = "error"


class DesignFormatError(KMixtureError, ValueError):
    prefix = "malformed-json"


class InvalidDesignError(KMixtureError, ValueError):
    prefix = "invalid-design"


class DimensionMismatchError(KMixtureError, ValueError):
    prefix = "dimension-mismatch"


class InfeasibleBoundsError(KMixtureError, ValueError):
    prefix = "infeasible-bounds"


class OutOfRegionError(KMixtureError, ValueError):
    prefix = "out-of-region"


class DomainError(KMixtureError, ValueError):
    prefix = "domain"


class SingularDesignError(KMixtureError, ArithmeticError):
    prefix = "singular-design"


class AllStartsSingularError(SingularDesignError):
    prefix = "all-starts-singular"


class ConvergenceError(KMixtureError, ArithmeticError):
    prefix = "no-convergence"
