"""Exception types; all numerical failures derive from SpecmollError."""


class SpecmollError(Exception):
    """Base class for numerical failures in specmoll."""


class QuadratureError(SpecmollError):
    """Adaptive quadrature failed to converge."""


class DegenerateKernelError(SpecmollError):
    """Kernel mass too small to normalize against."""


class DegenerateWindowError(SpecmollError):
    """Fewer than two sample points inside the mollifier window."""


class NormalizationError(SpecmollError):
    """Moment-matching system unsolvable at every admissible order."""


class UnsupportedOrderError(SpecmollError):
    """Monomial order outside the implemented range."""
