"""
sclab Service Errors

Exception hierarchy raised by the service layer. The HTTP layer (routes)
and the CLI translate these into status codes; nothing below the service
layer knows about either.
"""


class ScLabError(Exception):
    """Base class for every domain error raised by sclab services."""
    pass


class InvalidAutomatonError(ScLabError):
    """Raised when an automaton's tables violate completeness or index ranges."""
    pass


class AlphabetMismatchError(ScLabError):
    """Raised when two automata combined by an operation use different alphabets."""

    def __init__(self, left: tuple, right: tuple):
        self.left = left
        self.right = right
        super().__init__(f'Alphabet mismatch: {list(left)} vs {list(right)}')


class UnknownSymbolError(ScLabError):
    """Raised when a word contains a symbol outside the automaton alphabet."""

    def __init__(self, symbol: str, alphabet: tuple):
        self.symbol = symbol
        self.alphabet = alphabet
        super().__init__(f'Symbol {symbol!r} is not in alphabet {list(alphabet)}')


class UnknownOperationError(ScLabError, ValueError):
    """Raised when a boolean operation name matches no known alias."""
    pass


class SizeError(ScLabError):
    """Base class for size-related rejections (CLI exit status 3)."""
    pass


class SizeGuardExceededError(SizeError):
    """Raised when an exhaustive enumeration would exceed the cell guard."""
    pass


class SizeTooSmallError(SizeError):
    """Raised when a witness construction is requested below its minimum size."""
    pass


class StateBudgetExceededError(SizeError):
    """Raised when a state-space exploration outgrows the configured budget."""
    pass


class NonPositiveDimensionError(SizeError):
    """Raised when a count needs strictly positive tableau dimensions."""
    pass


class DegenerateOperationError(ScLabError):
    """Raised when a degenerate boolean operation reaches a bound predictor."""
    pass


class ArithmeticInvariantError(ScLabError):
    """Raised when an exact count comes out non-integral or negative."""
    pass
