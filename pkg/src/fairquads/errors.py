"""Exception types shared across the package."""


class FairquadsError(ValueError):
    """Base class; every precondition violation raised here is a ValueError."""


class DimensionError(FairquadsError):
    pass


class ModulusError(FairquadsError):
    """Bad modulus, or two objects over different Z_k mixed together."""


class InfeasibleProfile(FairquadsError):
    """A profile (a, b) asks for more vertices than a side has."""


class CapExceeded(FairquadsError):
    pass
