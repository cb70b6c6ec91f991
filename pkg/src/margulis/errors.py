"""Exception hierarchy.

Everything raised on purpose by the package derives from ``MargulisError`` so
callers (the CLI in particular) can separate mathematical failures from bugs.
"""


class MargulisError(Exception):
    """Base class."""


class Indeterminate(MargulisError):
    """A strict sign test landed inside the tolerance band."""


class NotUnitSpacelike(MargulisError):
    pass


class LambdaOutOfRange(MargulisError):
    pass


class NotHyperbolic(MargulisError):
    pass


class NotCyclicallyReduced(MargulisError):
    pass


class PairingFailed(MargulisError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class NoSystemFound(MargulisError):
    pass


class SeedInfeasible(MargulisError):
    def __init__(self, message, margins=None):
        super().__init__(message)
        self.margins = margins or {}


class PropertyCViolated(MargulisError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Infeasible(MargulisError):
    pass


class VerificationFailed(MargulisError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ConfigError(MargulisError):
    pass
