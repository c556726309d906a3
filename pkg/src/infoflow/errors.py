"""Exception hierarchy.  Usage errors map to CLI exit code 2."""


class InfoflowError(Exception):
    pass


class UsageError(InfoflowError, ValueError):
    """Malformed input, mismatched types or owners, bad shapes."""


class UnsupportedOperation(InfoflowError):
    """The operation needs structure the semiring does not have (e.g. division)."""


class NoConditional(UnsupportedOperation):
    """A conditional cannot exist: mass cancels in the marginal but not in the joint."""


class InternalInconsistency(InfoflowError, AssertionError):
    """Two formulations that must agree did not.  Always a bug, never a finding."""
