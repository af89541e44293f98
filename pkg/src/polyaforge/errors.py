"""Exception types shared across the package."""


class PolyaforgeError(Exception):
    pass


class InvalidDegreeSet(PolyaforgeError):
    """Degree set fails the structural hypotheses (e.g. missing 1, or no k >= 3)."""


class IntegralityViolation(PolyaforgeError):
    """n does not divide s_n + e_n + v_n; signals an enumeration bug."""


class SizeLimitExceeded(PolyaforgeError):
    """Brute-force enumeration requested beyond its guard size."""


class UnsupportedSize(PolyaforgeError):
    """No object of the requested size exists for this degree set."""


class NonConvergence(PolyaforgeError):
    """Numeric solver failed within its iteration budget."""


class InfeasibleRestriction(PolyaforgeError):
    """All cycle-type weights vanish under the requested size restriction."""


class EmptySample(PolyaforgeError):
    pass


class InsufficientData(PolyaforgeError):
    pass


class RadiusMismatch(PolyaforgeError):
    """Neighborhood distributions with different radii cannot be compared."""


class InvalidTolerance(PolyaforgeError):
    pass


class InvalidArgument(PolyaforgeError):
    pass
