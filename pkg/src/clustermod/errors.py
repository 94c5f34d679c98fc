"""Exception taxonomy shared across the package."""


class ClusterModError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ClusterModError):
    """Mismatched semifields, unassigned variables, unknown labels."""


class DomainError(ClusterModError):
    """Invalid mathematical input (bad height function, non-root dimension vector, ...)."""


class NotSubtractionFreeError(ClusterModError):
    """Tropical evaluation applied to a polynomial with a negative coefficient."""


class FrozenVertexError(ClusterModError):
    """Mutation requested at a frozen vertex."""


class InternalInvariantError(ClusterModError):
    """An invariant guaranteed by theory failed; signals an engine bug."""


class InexactDivisionError(InternalInvariantError):
    """Laurent division that theory guarantees exact did not come out exact."""


class NonDominantError(InternalInvariantError):
    """A monomial required to be dominant has a negative exponent."""


class ShiftCaseUnsupported(ClusterModError):
    """Representation-theoretic computation requested outside the module case."""
