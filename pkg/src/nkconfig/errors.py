"""Exception hierarchy shared across the package."""


class NkError(Exception):
    """Base class for all errors raised by nkconfig."""


# geometry

class CoincidentPoints(NkError, ValueError):
    pass


class IdenticalLines(NkError, ValueError):
    pass


class ZeroRatio(NkError, ValueError):
    pass


class UnitRatio(NkError, ValueError):
    pass


class PointOnAxis(NkError, ValueError):
    pass


class DegeneratePair(NkError, ValueError):
    pass


class SingularMap(NkError, ValueError):
    pass


class HTooSmall(NkError, ValueError):
    pass


# configurations and constructions

class SameDirection(NkError, ValueError):
    pass


class DependentPencils(NkError, ValueError):
    pass


class NTooSmall(NkError, ValueError):
    pass


class InputNotConfiguration(NkError, ValueError):
    pass


class RTooLarge(NkError, ValueError):
    pass


class DegenerateAfterRetries(NkError, RuntimeError):
    """No parameter choice produced a verified configuration within budget."""


# bounds and planning

class BadParams(NkError, ValueError):
    pass


class NotCoveredByKit(NkError, LookupError):
    """The requested (n_k) has no recipe built from multilaterals and Pappus."""


class ResourceLimit(NkError, RuntimeError):
    """Execution refused because the target is beyond the exact-arithmetic budget."""
