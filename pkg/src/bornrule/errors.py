"""Exception hierarchy shared by every module in the package."""


class BornRuleError(ValueError):
    """Base class for all validation and computation errors raised here."""


# outcome spaces and events

class LengthMismatch(BornRuleError):
    pass


class EmptySpace(BornRuleError):
    pass


class DuplicateLabel(BornRuleError):
    pass


class NonPositiveProbability(BornRuleError):
    pass


class NotNormalized(BornRuleError):
    pass


class UnknownOutcome(BornRuleError):
    """An outcome index or label that does not belong to the space."""


class SpaceMismatch(BornRuleError):
    pass


class ZeroProbabilityCondition(BornRuleError):
    pass


class EmptyConditioningEvent(ZeroProbabilityCondition):
    """A density matrix or amplitude vector was requested for the empty event."""


# partitions

class EmptyBlock(BornRuleError):
    pass


class OverlappingBlocks(BornRuleError):
    pass


class IncompleteCover(BornRuleError):
    pass


# linear algebra

class DimensionMismatch(BornRuleError):
    pass


class NonFiniteEntry(BornRuleError):
    pass


class NotSymmetric(BornRuleError):
    pass


class NoConvergence(BornRuleError, ArithmeticError):
    pass


# density matrices

class AsymmetricRelation(BornRuleError):
    pass


class InvalidDensityMatrix(BornRuleError):
    pass


class IndexOutOfRange(BornRuleError, IndexError):
    pass


class NotPure(BornRuleError):
    pass
