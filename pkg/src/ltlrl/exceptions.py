"""Exception types raised across the package."""


class LtlRlError(Exception):
    """Base class for all package errors."""


class FormulaSyntaxError(LtlRlError):
    """Formula text does not conform to the grammar.

    Carries the character position of the offending token and a short
    description of what was expected there.
    """

    def __init__(self, message: str, position: int, expected: str):
        super().__init__(f"{message} at position {position} (expected {expected})")
        self.position = position
        self.expected = expected


class UnknownAtomError(LtlRlError):
    """An identifier in the formula is not a member of the declared alphabet."""

    def __init__(self, name: str):
        super().__init__(f"unknown atom {name!r}")
        self.name = name


class AutomatonTooLargeError(LtlRlError):
    """A construction exceeded its configured state cap."""

    def __init__(self, kind: str, cap: int):
        super().__init__(f"{kind} construction exceeded the state cap of {cap}")
        self.kind = kind
        self.cap = cap


class NotFinitaryError(LtlRlError):
    """Operation requires a formula decidable within a finite horizon."""


class FinitaryFormulaError(LtlRlError):
    """No uncommittable word exists for a finite-horizon formula."""


class UnknownStateOrActionError(LtlRlError):
    """State or action id is not declared in the model."""


class AlphabetMismatchError(LtlRlError):
    """Letters, labelings or transducers disagree on the atom alphabet."""


class InvalidPError(LtlRlError):
    """Probability parameter outside its valid range."""


class InvalidShapeError(LtlRlError):
    """Chain-shape parameters violate their ordering constraints."""


class InvalidWitnessError(LtlRlError):
    """Witness words fail the uncommittability recheck."""


class MultiplePairsUnsupportedError(LtlRlError):
    """Reward-scheme products require an automaton with exactly one Rabin pair."""


class InvalidToleranceError(LtlRlError):
    """epsilon/delta outside their valid ranges."""


class BoundViolatedError(LtlRlError):
    """A measured sample-size intercept fell below the analytic lower bound."""
