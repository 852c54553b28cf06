"""Exact Gaussian-rational arithmetic.

Coefficient field Q(i) used by the exact operator-algebra checks.  Values are
immutable; mixed arithmetic with Python/numpy complex falls back to floating
point, which lets the same coefficient closures be evaluated either exactly
or numerically.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Complex


class QI:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def i(cls):
        return cls(0, 1)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QI")

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return self.re == 0 and self.im == 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return QI(self.re + other, self.im)
        if isinstance(other, Complex):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (QI, int, Fraction)):
            return self + (-other if isinstance(other, QI) else QI(-Fraction(other)))
        if isinstance(other, Complex):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI(other) - self
        if isinstance(other, Complex):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QI):
            return QI(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return QI(self.re * other, self.im * other)
        if isinstance(other, Complex):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI(self.re / other, self.im / other)
        if isinstance(other, QI):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by zero QI")
            return QI((self.re * other.re + self.im * other.im) / d,
                      (self.im * other.re - self.re * other.im) / d)
        if isinstance(other, Complex):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI(other) / self
        if isinstance(other, Complex):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QI(1) / self ** (-k)
        out = QI(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return QI(self.re, -self.im)

    # -- conversions & comparisons ---------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QI({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I_QI = QI(0, 1)
ONE = QI(1)
ZERO = QI(0)
