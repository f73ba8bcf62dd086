"""Exception hierarchy for the engine.

Three families map onto the command-line exit codes: input errors (2),
resource limits (3) and invariant violations (1).
"""


class EngineError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class InputError(EngineError, ValueError):
    """The caller supplied data that does not meet an operation's precondition."""

    exit_code = 2


class ResourceLimit(EngineError):
    """A configured cap (element count, node count, candidate count) was exceeded."""

    exit_code = 3


class InvariantViolation(EngineError):
    """A property that must hold by construction failed during a computation."""

    exit_code = 1


# group-core

class DegreeMismatch(InputError):
    pass


class InvalidPermutation(InputError):
    pass


class ElementNotInGroup(InputError):
    pass


class PointOutOfRange(InputError):
    pass


class SubgroupNotInTheory(InputError):
    pass


class TheoryInvalid(InputError):
    """The group/point set pair is not a global process theory.

    Attributes:
        violations (list[str]): names of every failed condition, in check order.
    """

    condition = "invalid"

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [self.condition])


class NotTransitive(TheoryInvalid):
    condition = "transitive"


class NotCentreless(TheoryInvalid):
    condition = "centreless"


class NotFaithful(TheoryInvalid):
    condition = "faithful"


# commutant-lattice

class NotSelfBicommutant(InputError):
    pass


class NotNested(InputError):
    pass


class NotOrthogonal(InputError):
    pass


# state-space and systems

class ElementNotInOwner(InputError):
    pass


class NotPure(InputError):
    pass


class NotProductState(InputError):
    pass


class IncompatibleSystems(InputError):
    pass


class StateNotInSystem(InputError):
    pass


class PreconditionUnmet(InputError):
    pass


# process-theory

class TypeMismatch(InputError):
    pass


class StateNotInPair(InputError):
    pass


# quantum-decomp

class ParseError(InputError):
    pass


class ZeroDimension(InputError):
    pass


class DegenerateDimension(InputError):
    pass


class GeneralCaseUnsupported(InputError):
    pass
