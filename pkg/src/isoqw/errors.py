"""Domain exceptions shared across the package."""


class IsoQWError(Exception):
    """Base class for all domain errors."""


class NotUnitary(IsoQWError):
    pass


class NotPositiveDefinite(IsoQWError):
    pass


class UnknownGroup(IsoQWError):
    pass


class ZeroSeed(IsoQWError):
    pass


class NotAGroup(IsoQWError):
    pass


class DegenerateSet(IsoQWError):
    pass


class TorusTooSmall(IsoQWError):
    pass


class DegeneratePoint(IsoQWError):
    """Raised when a dispersion branch velocity is requested at a band crossing."""


class NotAnAction(IsoQWError):
    pass


class InvalidFamilyParams(IsoQWError):
    pass


class PipelineInconclusive(IsoQWError):
    """A numerical feasibility search landed in the indeterminate residual gap."""
