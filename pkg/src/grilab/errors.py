"""Exception hierarchy shared by every module.

All failures raised by this package derive from :class:`GrilabError`, so
callers (notably the CLI) can separate algebra-level failures from bugs.
"""

from __future__ import annotations


class GrilabError(Exception):
    """Base class for all errors raised by grilab."""


class RingMismatchError(GrilabError):
    """A binary operation received operands from different rings."""


class ZeroInverseError(GrilabError):
    """Inversion of the zero element was requested."""


class NotDivisionRingError(GrilabError):
    """A nonzero element turned out to be a zero divisor.

    Carries the offending element so the failure is actionable.
    """

    def __init__(self, message: str, element: object = None):
        super().__init__(message)
        self.element = element


class NotInvertibleError(GrilabError):
    """An element is not invertible within the truncated representation."""


class InapplicableAutomorphismError(GrilabError):
    """An automorphism was applied to an element outside its domain."""


class WindowOverflowError(GrilabError):
    """A shift or truncation bound would leave the configured window.

    ``index`` names the offending variable index when one exists.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InsufficientPrecisionError(GrilabError):
    """A comparison or probe asked for more precision than is certified."""


class ZeroLeadingTermError(GrilabError):
    """Series inversion found no nonzero coefficient in the known part."""


class ZeroElementError(GrilabError):
    """An operation requiring a nonzero element received zero."""


class SizeLimitError(GrilabError):
    """A configured size bound (term count, memo size) was exceeded."""


class ResampleCapExhaustedError(GrilabError):
    """Sampling could not find enough permissible substitutions.

    Signals that the expression is non-permissible almost everywhere
    under the sampler in use.
    """

    def __init__(self, message: str, draws: int = 0, skipped: int = 0):
        super().__init__(message)
        self.draws = draws
        self.skipped = skipped


class ExprSyntaxError(GrilabError):
    """Expression text does not conform to the grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnboundNameError(GrilabError):
    """Evaluation met an identifier bound neither as constant nor variable."""


class ConfigError(GrilabError):
    """Invalid scenario or CLI configuration."""
