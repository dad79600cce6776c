"""Exception hierarchy shared across the engine.

Every failure the library raises deliberately derives from EngineError, so
callers (and the command line driver) can distinguish engine-level problems
from genuine bugs.
"""


class EngineError(Exception):
    """Base class for all engine-level failures."""


class DimensionMismatchError(EngineError):
    """Exponent vectors of unequal length were compared or combined."""


class IncompatibleRingError(EngineError):
    """Operands live in different rings or under different term orders."""


class ZeroLeadingTermError(EngineError):
    """The zero polynomial has no leading term."""


class ImproperIdealError(EngineError):
    """The ideal is the whole ring where a proper ideal is required."""


class ZeroModuleError(EngineError):
    """The defining ideal contains 1, so the cyclic module is zero."""


class IMEqualsMError(EngineError):
    """I*M = M, so the grade of I on M is undefined (the sum I + J is the unit ideal)."""


class ZeroElementError(EngineError):
    """A nonzero element or a nonzero ideal was required."""


class SearchExhaustedError(EngineError):
    """The randomized regular-element search ran out of budget."""


class StepLimitExceededError(EngineError):
    """Buchberger completion exceeded the configured S-pair reduction limit."""


class EmptySupportError(EngineError):
    """The given prime does not lie in the support of the module."""


class NonMonomialError(EngineError):
    """A monomial ideal was required but a generator has more than one term."""


class InhomogeneousIdealError(EngineError):
    """A homogeneous ideal was required but a generator mixes degrees."""


class UnknownSuiteError(EngineError):
    """No property suite is registered under the requested identifier."""
