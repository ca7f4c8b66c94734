"""Exception types shared across the toolkit."""


class DitkitError(Exception):
    """Base class for every toolkit error."""


class UniverseMismatchError(DitkitError):
    """Operands live on universes of different sizes."""


class ElementOutOfRangeError(DitkitError):
    """An element falls outside {0, ..., n-1}."""


class EmptyBlockError(DitkitError):
    """A partition block is empty."""


class OverlappingBlocksError(DitkitError):
    """An element appears in more than one block."""


class MissingElementError(DitkitError):
    """The blocks do not cover the universe."""


class NotEquivalenceError(DitkitError):
    """A pair relation fails one of the equivalence axioms."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"not an equivalence relation: {axiom} fails at {witness}")


class UnknownConnectiveError(DitkitError):
    """Connective tag or arity outside the supported set."""


class ResourceLimitError(DitkitError):
    """A configured size or budget cap would be exceeded."""


class FormulaSyntaxError(DitkitError):
    """Formula text failed to parse; carries a 0-based position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (position {position})")


class UnbalancedParensError(FormulaSyntaxError):
    """A parenthesis without a partner."""


class TextFormatError(DitkitError):
    """Malformed text in one of the documented exchange formats."""


class UnboundVariableError(DitkitError):
    """A formula variable has no value in the assignment."""


class UniverseTooSmallError(DitkitError):
    """Partition semantics needs a universe of at least two elements."""


class TooManyVariablesError(DitkitError):
    """Formula exceeds the configured variable cap."""


class InvalidThresholdError(DitkitError):
    """Extinction threshold outside the open interval (0, 1/|variants|)."""


class NonPositiveFitnessError(DitkitError):
    """Fitness scores must be strictly positive."""


class InvalidFitnessError(DitkitError):
    """Fitness table malformed: wrong variant set or bad margin."""


class AlreadySetError(DitkitError):
    """A switch that already left neutral cannot be set again."""


class SwitchIndexError(DitkitError):
    """Switch index outside 1..k."""
