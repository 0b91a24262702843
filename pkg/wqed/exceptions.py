class WqedError(Exception):
    exit_code = 1


class ConfigError(WqedError):
    """
    Invalid parameters, grids or output targets.
    """

    exit_code = 2


class OutOfBandError(ConfigError):
    pass


class UnsupportedError(ConfigError):
    pass


class NumericalError(WqedError):
    exit_code = 3


class BoundStateError(NumericalError):
    pass


class ScatteringError(NumericalError):
    pass


class PoleError(NumericalError):
    pass


class QuadratureError(NumericalError):
    def __init__(self, message: str, error_estimate: float) -> None:
        super().__init__(
            "{} (achieved error estimate: {:.3e})".format(message, error_estimate)
        )
        self.error_estimate = error_estimate


class VerificationError(WqedError):
    exit_code = 4
