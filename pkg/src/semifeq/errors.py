"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SemifeqError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class NonSquareError(SemifeqError):
    pass


class EntryOutOfRangeError(SemifeqError):
    def __init__(self, x: int, y: int, value: int):
        self.x, self.y, self.value = x, y, value
        super().__init__(f"table[{x}][{y}] = {value} is out of range")


class NonAssociativeError(SemifeqError):
    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) at (x, y, z) = {self.witness}")


class OrderCapExceededError(SemifeqError):
    pass


class ParseError(SemifeqError):
    pass


class NonCentralZ0Error(SemifeqError):
    def __init__(self, z0: int):
        self.z0 = z0
        super().__init__(f"z0 = {z0} is not in the center")


class MissingZ0Error(SemifeqError):
    pass


class EmptyCenterError(SemifeqError):
    pass


class UnknownFamilyError(SemifeqError):
    pass


class ZeroAtZ0Error(SemifeqError):
    pass


class SignConditionFailedError(SemifeqError):
    pass


class ResidualCheckFailedError(SemifeqError):
    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(message)


class EigenSolverFailureError(SemifeqError):
    pass
