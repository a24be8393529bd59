"""Exception hierarchy shared by all bicone modules."""


class BiconeError(Exception):
    """Base class for every error raised by this package."""


class DegenerateMetric(BiconeError):
    pass


class SignatureError(BiconeError):
    pass


class VarianceError(BiconeError):
    """A covector was supplied where a vector was required, or vice versa."""


class SuperluminalBoost(BiconeError):
    pass


class NonConvergence(BiconeError):
    pass


class UnreachableSeparation(BiconeError):
    pass


class OutOfRange(BiconeError):
    pass


class NotNormalized(BiconeError):
    pass


class InvalidDensity(BiconeError):
    pass


class DimensionMismatch(BiconeError):
    pass


class SpacelikeViolation(BiconeError):
    """A surface deformation would tilt the lattice surface out of the spacelike class."""


class ConfigError(BiconeError):
    pass


class IoError(BiconeError, OSError):
    pass
