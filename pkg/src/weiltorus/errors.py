"""Exception types shared across the package."""


class WeilTorusError(Exception):
    """Base class for all library errors."""


class ParseError(WeilTorusError):
    """Malformed scalar text or instance file."""


class DenominatorVanishes(WeilTorusError):
    """A specialization point lies outside the domain of definition."""


class DegreeOverflow(WeilTorusError):
    """Wedge product would exceed the top exterior degree."""


class DegreeMismatch(WeilTorusError):
    """Pairing of a covector and a multivector of different degrees."""


class InvalidAction(WeilTorusError):
    """Integer matrix does not square to minus the identity."""


class ActionMismatch(WeilTorusError):
    """Class-space data and model were built from different actions."""


class NonHermitianInput(WeilTorusError):
    """Block coefficients fail Hermitian symmetry."""


class WrongCoarseType(WeilTorusError):
    """Covector has components outside the required coarse type."""


class BlockConstraintViolated(WeilTorusError):
    """Class has components outside the two diagonal blocks."""


class NotPositive(WeilTorusError):
    """Positivity precondition failed."""


class NonUnitConstantTerm(WeilTorusError):
    """Total Chern class must have constant term 1."""


class ValidationFailed(WeilTorusError):
    """Instance failed model validation."""
