"""Exception hierarchy shared by the core model, the service and the CLI.

Each error class carries a short machine-readable ``code`` used by the
HTTP layer and mapped to a process exit status by the CLI:

    0  success
    2  parameter / configuration validation failure
    3  dynamically unstable operating point
    4  iteration or quadrature failed to converge
"""


class MagnocoolError(Exception):
    """Base class for all package errors."""

    code = "error"
    exit_status = 1


class ParameterError(MagnocoolError):
    """A parameter or configuration value violates its constraints."""

    code = "validation"
    exit_status = 2


class UnstableSystemError(MagnocoolError):
    """The drift matrix has an eigenvalue at or beyond the stability margin."""

    code = "unstable"
    exit_status = 3

    def __init__(self, message: str, spectral_abscissa: float | None = None):
        super().__init__(message)
        self.spectral_abscissa = spectral_abscissa


class ConvergenceError(MagnocoolError):
    """An iterative solve or adaptive quadrature missed its tolerance."""

    code = "no-convergence"
    exit_status = 4

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved
