"""Exception hierarchy for chaingamma."""


class ChainGammaError(Exception):
    """Base class for all chaingamma errors."""


class InvalidExponent(ChainGammaError):
    """An exponent entry of the chain is smaller than 2."""


class EmptyChain(ChainGammaError):
    """The exponent list is empty."""


class IndexNotInSet(ChainGammaError):
    """A sector index does not belong to the index set of the chain."""


class MonomialOutOfRange(ChainGammaError):
    """A monomial is not a member of the reduced monomial basis."""


class WrongLevel(ChainGammaError):
    """A sector index has the wrong level for the requested operation."""


class SizeLimitExceeded(ChainGammaError):
    """The rank of the requested matrix exceeds the configured limit."""


class PrecisionUnachievable(ChainGammaError):
    """The arbitrary-precision backend failed its accuracy self-test."""


class SingularChGamma(ChainGammaError):
    """The Gamma-framed character matrix is numerically singular."""


class DimensionTooLarge(ChainGammaError):
    """Quadrature oracle only supports one- and two-dimensional integrals."""


class QuadratureNonConvergent(ChainGammaError):
    """Adaptive quadrature could not certify the requested tolerance."""


class MalformedWord(ChainGammaError):
    """A braid word string could not be parsed."""


class IndexOutOfRange(ChainGammaError):
    """A mutation or parity index is outside the valid range."""
