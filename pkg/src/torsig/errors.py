"""Exception types shared across the package."""


class TorsigError(ValueError):
    """Base class for all torsig errors."""


class ZeroVectorError(TorsigError):
    """A nonzero vector was required."""


class NotABasisError(TorsigError):
    """The given vectors are linearly dependent."""


class UnboundedError(TorsigError):
    """A halfspace intersection is unbounded."""


class EmptyError(TorsigError):
    """A halfspace intersection is empty."""


class NotSimpleError(TorsigError):
    """The polytope is not simple where simplicity is required."""


class NotSimplicialError(TorsigError):
    """A fan or arrangement chamber is not simplicial."""


class WrongDegreeError(TorsigError):
    """A divisor monomial does not have total degree equal to the fan dimension."""


class OddDimensionError(TorsigError):
    """An even-dimension-only computation was requested in odd dimension."""


class StepLimitError(TorsigError):
    """A brute-force enumeration would exceed the configured step budget."""
