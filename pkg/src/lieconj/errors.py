"""Exception hierarchy shared by every solver."""

from __future__ import annotations


class LieConjError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""

    code = "Error"


class ShapeMismatch(LieConjError):
    code = "ShapeMismatch"


class FieldMismatch(LieConjError):
    code = "FieldMismatch"


class Inconsistent(LieConjError):
    code = "Inconsistent"


class NotCommuting(LieConjError):
    code = "NotCommuting"


class NotDiagonalizableOverField(LieConjError):
    code = "NotDiagonalizableOverField"


class SpectrumNotSplit(NotDiagonalizableOverField):
    code = "SpectrumNotSplit"


class NotClosed(LieConjError):
    code = "NotClosed"


class NotAbelian(LieConjError):
    code = "NotAbelian"


class TooLarge(LieConjError):
    code = "TooLarge"


class BudgetExceeded(LieConjError):
    code = "BudgetExceeded"


class UnsupportedGroup(LieConjError):
    code = "UnsupportedGroup"


class InvalidInstance(LieConjError):
    code = "InvalidInstance"
