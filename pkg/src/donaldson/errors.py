"""Exception hierarchy.

``ValidationError`` covers malformed input and violated preconditions;
``MathCheckError`` is raised when an identity that must hold exactly does
not.  The CLI maps them to exit codes 2 and 3.
"""


class DonaldsonError(Exception):
    pass


class ValidationError(DonaldsonError, ValueError):
    pass


class MathCheckError(DonaldsonError):
    pass


class LatticeError(ValidationError):
    pass


class BlowdownError(ValidationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WittenMismatch(MathCheckError):
    def __init__(self, message, klass=None):
        super().__init__(message)
        self.klass = klass


class SpectrumError(ValidationError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
