"""Exception types raised by the engine."""


class QuasiordError(Exception):
    """Base class for all engine errors."""


class NotWeierstrass(QuasiordError):
    pass


class SignatureMismatch(QuasiordError):
    pass


class ZeroPolynomial(QuasiordError):
    pass


class AmbiguousWeight(QuasiordError):
    pass


class EmptyInput(QuasiordError):
    pass


class NotAVertex(QuasiordError):
    pass


class IrrationalRoots(QuasiordError):
    pass


class ZeroWeight(QuasiordError):
    pass


class DegenerateLattice(QuasiordError):
    pass


class NotQuasiOrdinaryState(QuasiordError):
    pass


class ZeroDivisorInExtension(QuasiordError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class BoundTooSmall(QuasiordError):
    pass


class NoDominantTerm(QuasiordError):
    pass


class ParseError(QuasiordError, SyntaxError):
    """Malformed polynomial text; carries 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass
