"""Exception and warning types raised by softflat."""


class SoftflatError(Exception):
    """Base class for all softflat errors."""


class ConfigError(SoftflatError, ValueError):
    """Invalid run parameters (neighborhood size, schedule, thresholds...)."""


class IngestionError(SoftflatError, ValueError):
    """A data file could not be turned into a point cloud."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DivergenceError(SoftflatError, ArithmeticError):
    """A deformation step produced a non-finite coordinate."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"deformation diverged at step {step}: non-finite coordinate")


class DuplicatePointWarning(UserWarning):
    """Coincident sample points were found while building neighborhoods."""


class DegenerateCloudWarning(UserWarning):
    """The cloud has zero total variance, so PCA ratios are undefined."""
