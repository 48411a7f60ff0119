"""Exception types shared across the package.

Exit-code mapping used by the CLI: input/parameter problems map to 2,
domain-not-applicable (a formula family that does not exist for the given
erasure probabilities) maps to 3.
"""


class SecacheError(Exception):
    """Base class for all package errors."""


class InvalidScenario(SecacheError):
    """A channel scenario violates one of its invariants."""


class InvalidParameter(SecacheError):
    """An operation argument is outside its documented domain."""


class IndexOutOfRange(InvalidParameter):
    """A population index (k_w, k_s, t, t_w, t_s) is out of range."""


class NotApplicable(SecacheError):
    """The requested quantity does not exist in this erasure regime.

    Raised e.g. for weak-only corner points when the eavesdropper is at
    least as strong as the strong receivers (delta_z <= delta_s).
    """


class EmptyInput(InvalidParameter):
    """An operation received an empty point set."""


class BelowDomain(InvalidParameter):
    """A 1-D curve was evaluated left of its first vertex."""


class Infeasible(SecacheError):
    """No mixture of points satisfies the memory budgets."""


class RangeError(InvalidParameter):
    """A modular-arithmetic argument is outside [0, modulus)."""


class ConfigError(InvalidParameter):
    """A simulation configuration cannot be realised (e.g. a segment
    rounds to zero channel uses)."""
