"""Exception hierarchy shared by the kernel modules."""

from __future__ import annotations


class FrobMultError(Exception):
    """Base class for all library errors."""


class DivisionByZero(FrobMultError, ZeroDivisionError):
    pass


class NotDivisible(FrobMultError, ArithmeticError):
    pass


class AmbientMismatch(FrobMultError, ValueError):
    pass


class ExponentOverflow(FrobMultError, OverflowError):
    pass


class NonPrimeModulus(FrobMultError, ValueError):
    pass


class DegreeCapExceeded(FrobMultError):
    def __init__(self, degree: int, cap: int):
        super().__init__(f"intermediate degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


class NotArtinian(FrobMultError):
    pass


class NotHomogeneous(FrobMultError, ValueError):
    pass


class NotPPower(FrobMultError, ValueError):
    pass


class NoStabilization(FrobMultError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = list(partial) if partial is not None else []


class InsufficientCandidates(FrobMultError):
    pass


class ReductionNotVerified(FrobMultError):
    """Raised when a CM verdict needs a reduction witness that is missing.

    The multiplicity and the colength are still attached so that callers can
    report them.
    """

    def __init__(self, e: int, length: int):
        super().__init__("parameter ideal is not a verified reduction of the maximal ideal")
        self.e = e
        self.length = length


class DimensionZero(FrobMultError, ValueError):
    pass


class UnknownVariable(FrobMultError, ValueError):
    def __init__(self, name: str, line: int = 0, col: int = 0):
        where = f" at line {line}, column {col}" if line else ""
        super().__init__(f"unknown variable {name!r}{where}")
        self.name = name
        self.line = line
        self.col = col


class DSLSyntaxError(FrobMultError, SyntaxError):
    def __init__(self, message: str, line: int, col: int, token: str = ""):
        super().__init__(f"{message} at line {line}, column {col}" + (f" (near {token!r})" if token else ""))
        self.line = line
        self.col = col
        self.token = token
