"""Exception hierarchy shared by all gatex modules.

Every error raised on invalid input derives from :class:`GatexError`, so
callers can catch one type at API boundaries while tests can assert the
precise failure mode.
"""


class GatexError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GatexError, ValueError):
    """Invalid input data or violated precondition."""


# -- strudigram construction -------------------------------------------------

class EmptyVertexSet(ValidationError):
    pass


class DuplicateVertex(ValidationError):
    pass


class MissingPair(ValidationError):
    pass


class ConflictingPair(ValidationError):
    pass


class UnknownLabel(ValidationError):
    pass


class ReservedLabel(ValidationError):
    pass


class SelfPair(ValidationError):
    def __init__(self, v):
        super().__init__(f"pairs must have two distinct vertices, got ({v!r}, {v!r})")


# -- subset / partition arguments --------------------------------------------

class EmptySubset(ValidationError):
    pass


class NotASubset(ValidationError):
    pass


class EmptySet(EmptySubset):
    pass


class VertexCollision(ValidationError):
    pass


class NotAPartition(ValidationError):
    pass


class BlockNotAModule(ValidationError):
    pass


class SingletonStrudigram(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


# -- network construction and queries ----------------------------------------

class Cyclic(ValidationError):
    pass


class MultipleRoots(ValidationError):
    pass


class UnreachableVertex(ValidationError):
    pass


class LeafNameCollision(ValidationError):
    pass


class UnlabeledInnerVertex(ValidationError):
    pass


class UnknownVertex(ValidationError):
    pass


class GroundSetTooSmall(ValidationError):
    pass


class NotATree(ValidationError):
    pass


class InvalidClusteringSystem(ValidationError):
    pass


# -- explanation layer ---------------------------------------------------------

class No2LcaProperty(ValidationError):
    """The network has a leaf pair without a unique least common ancestor."""

    def __init__(self, pair, message=None):
        self.pair = tuple(pair)
        super().__init__(message or f"no unique lca for leaf pair {self.pair}")


class LeafMismatch(ValidationError):
    pass


class NotLcaNetwork(ValidationError):
    pass


# -- recognition ---------------------------------------------------------------

class NotTrulyPrimitive(ValidationError):
    pass


class InvalidWitness(ValidationError):
    pass


class FamilyMismatch(ValidationError):
    pass


class IdCollision(ValidationError):
    pass


# -- generators / CLI ----------------------------------------------------------

class BadParameters(ValidationError):
    pass
