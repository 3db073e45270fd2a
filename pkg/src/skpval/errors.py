"""Exception hierarchy shared by all skpval modules."""


class SkpvalError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(SkpvalError):
    """Group values of different dimensions were combined or compared."""


class NotInGroupError(SkpvalError):
    """A multiple of the target value does not lie in the generated group."""


class ZeroPolyError(SkpvalError):
    """Operation undefined on the zero polynomial."""


class NotMonicError(SkpvalError):
    """Divisor is not monic in the requested variable."""


class InvalidTableError(SkpvalError):
    """A value table failed validation; carries the full report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ThetaZeroError(SkpvalError):
    """A scale factor theta must be a nonzero field element."""


class NoCutoffError(SkpvalError):
    """Limit unrolling requires an active truncation cutoff."""


class NonStabilizingError(SkpvalError):
    """Tail summand orders failed to exceed the cutoff within the depth."""


class IterationCapError(SkpvalError):
    """Rewrite loop exceeded its iteration budget (diagnostic guard)."""


class UnrealizableError(SkpvalError):
    """No adic-form exponent map realizes the requested degree vector."""


class HypothesisViolatedError(SkpvalError):
    """Classifier input violates the standing hypothesis on the first value."""


class VerificationFailedError(SkpvalError):
    """Brute-force realization check found a counterexample."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class SchemaError(SkpvalError):
    """Malformed problem file (bad JSON shape, unknown kind, bad literal)."""


class PolyParseError(SchemaError):
    """Polynomial text did not parse."""
