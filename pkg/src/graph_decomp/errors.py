"""Exceptions raised by graph-decomp.

Every error carries enough context for the CLI to pick an exit code and for a
caller to tell "the search gave up" apart from "the input is outside the
regime the construction needs".
"""


class DecompositionError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class UsageError(DecompositionError):
    """Malformed arguments, oversized exact checks, absent edges."""


class OddOrderError(UsageError):
    """The colouring criterion only applies to graphs of even order."""


class ParseError(UsageError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotFoundError(DecompositionError):
    """A bounded search finished without a result."""

    exit_code = 4

    def __init__(self, message: str, reason: str = "budget_exhausted"):
        self.reason = reason
        super().__init__(message)


class RetryExhaustedError(DecompositionError):
    """A randomized step never met its conditions within the retry budget."""

    exit_code = 4


class HypothesisViolatedError(DecompositionError):
    exit_code = 3


class IterationOverflowError(HypothesisViolatedError):
    """More extractions than the degree spread allows."""


class InsufficientAnchorsError(HypothesisViolatedError):
    pass


class InsertionFailedError(HypothesisViolatedError):
    pass


class MatchingDeficientError(HypothesisViolatedError):
    pass


class RegularityMismatchError(HypothesisViolatedError):
    pass


class InfeasibleError(HypothesisViolatedError):
    """A flow or degree-sequence realization does not exist."""

    def __init__(self, message: str, condition: str | None = None):
        self.condition = condition
        super().__init__(message)


class VerificationFailedError(DecompositionError):
    exit_code = 2
