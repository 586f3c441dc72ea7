"""Exception hierarchy.

Every error carries a stable ``name`` so the CLI can report it verbatim.
"""


class AutBoundError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__


# signatures
class InvalidSignature(AutBoundError, ValueError):
    pass


class NonIntegralGenus(AutBoundError, ValueError):
    pass


class GenusTooSmall(AutBoundError, ValueError):
    pass


class NotTransitive(AutBoundError, ValueError):
    pass


class OrderMismatch(AutBoundError, ValueError):
    pass


class ProductNotIdentity(AutBoundError, ValueError):
    pass


class InconsistentGenus(AutBoundError, ValueError):
    pass


class InfiniteAbelianization(AutBoundError, ValueError):
    pass


class TrivialAbelianization(AutBoundError, ValueError):
    pass


class InfiniteEnumeration(AutBoundError, ValueError):
    """The requested measure window contains infinitely many signatures."""


# groups
class InvalidGroup(AutBoundError, ValueError):
    pass


class InvalidTwist(AutBoundError, ValueError):
    pass


class NotIrreducible(AutBoundError, ValueError):
    pass


class SizeCap(AutBoundError, ValueError):
    pass


class NotNormal(AutBoundError, ValueError):
    pass


class PrimeDoesNotDivide(AutBoundError, ValueError):
    pass


class SpecSyntaxError(AutBoundError, ValueError):
    pass


# actions
class UnsupportedSignature(AutBoundError, ValueError):
    pass


# bounds registry
class NoRule(AutBoundError, LookupError):
    pass


class NoRecipe(AutBoundError, LookupError):
    pass


class InvalidContext(AutBoundError, ValueError):
    pass
