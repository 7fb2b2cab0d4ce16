"""Exception hierarchy for ahlib.

Every domain error derives from :class:`AhlibError` so the CLI can map them
to exit code 1 in one place.
"""


class AhlibError(Exception):
    """Base class for all domain errors."""


class ParseError(AhlibError, ValueError):
    pass


class DivisionByZero(AhlibError, ZeroDivisionError):
    pass


class MixedContexts(AhlibError, ValueError):
    pass


class NotPrime(AhlibError, ValueError):
    pass


class NotIrreducible(AhlibError, ValueError):
    pass


class CharacteristicZero(AhlibError, ValueError):
    pass


class CharacteristicPositive(AhlibError, ValueError):
    pass


class ConstantPolynomial(AhlibError, ValueError):
    pass


class FactorizationOutOfScope(AhlibError, ValueError):
    pass


class SizeGuard(AhlibError, ValueError):
    pass


class MissingPart(AhlibError, ValueError):
    pass


class ZeroElement(AhlibError, ValueError):
    pass


class LambdaNotRootOfH(AhlibError, ValueError):
    pass


class HVanishesAtLambda(AhlibError, ValueError):
    pass


class FNotFactorOfH(AhlibError, ValueError):
    pass


class GNotPrime(AhlibError, ValueError):
    """Raised when the y-polynomial of an L(m, g) module is reducible.

    ``witness`` holds a proper factor when one was found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAWeylModule(AhlibError, ValueError):
    pass


class NotDeltaInvariant(AhlibError, ValueError):
    pass


class FDividesH(AhlibError, ValueError):
    pass


class FieldTooLarge(AhlibError, ValueError):
    pass


class CharZeroUnsupported(AhlibError, ValueError):
    pass


class RelationViolated(AhlibError, AssertionError):
    """A constructed module failed YX - XY = h(X). Signals a bug."""


class DivisibilityViolated(AhlibError, AssertionError):
    """delta^p(x) was not divisible by h. Signals a bug."""


class CenterIdentityViolated(AhlibError, AssertionError):
    """The two expressions for z_p disagree. Signals a bug."""
