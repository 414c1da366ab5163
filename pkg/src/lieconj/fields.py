"""Exact scalar fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values (always in lowest
terms with a positive denominator).  Prime-field scalars are :class:`ModInt`
residues in ``[0, p)``.  Both support the usual arithmetic operators, so the
linear algebra kernel is written once against ``+ - * /``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Union

from sympy import isprime


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other: Any) -> int:
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o, self.p) / self

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pow__(self, k: int):
        return ModInt(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __lt__(self, other):
        return self.v < self._coerce(other) % self.p

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, ModInt]


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field ``F_p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not (isinstance(self.p, int) and self.p > 1 and isprime(self.p)):
            raise ValueError(f"F_p requires a prime p, got {self.p!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse the CLI spelling: ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(None)
        if text.startswith("Fp:"):
            return cls(int(text[3:]))
        if text.startswith("F") and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ValueError(f"unknown field {text!r}; expected Q or Fp:<prime>")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else ModInt(0, self.p)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else ModInt(1, self.p)

    def __call__(self, x: Any) -> Scalar:
        """Coerce an int, Fraction, ModInt, or string like ``"3/4"`` into the field."""
        if self.p is None:
            if isinstance(x, ModInt):
                raise ValueError("cannot coerce an F_p residue into Q")
            return Fraction(x)
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise ValueError(f"cannot coerce F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return ModInt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModInt(int(x), self.p)

    def contains(self, x: Any) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, ModInt) and x.p == self.p

    def elements(self) -> Iterator[Scalar]:
        """All field elements; only defined for prime fields."""
        if self.p is None:
            raise ValueError("Q is infinite")
        for v in range(self.p):
            yield ModInt(v, self.p)

    @staticmethod
    def key(x: Scalar):
        """Total order used for canonical sorting of scalars."""
        if isinstance(x, ModInt):
            return x.v
        return x

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        if obj is None or obj == "Q":
            return cls(None)
        if isinstance(obj, dict) and "Fp" in obj:
            return cls(int(obj["Fp"]))
        if isinstance(obj, str):
            return cls.parse(obj)
        raise ValueError(f"bad field spec {obj!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = FieldSpec(None)
