"""First-order jets (dual numbers) for exact directional derivatives.

A :class:`Jet` carries a value together with one derivative: ``re + du * eps``
with ``eps**2 = 0``.  Running a rational construction on jets yields the exact
directional derivative of every output in one pass, which is how the package
assembles Jacobians without symbolic differentiation or finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, float]


def _as_number(value):
    if isinstance(value, (int, Fraction, float)):
        return value
    return NotImplemented


@dataclass(frozen=True)
class Jet:
    re: Union[Fraction, float]
    du: Union[Fraction, float] = 0

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.re + other.re, self.du + other.du)
        other = _as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.re + other, self.du)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.re, -self.du)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            # Leibniz rule: (a + b eps)(c + d eps) = ac + (ad + bc) eps.
            return Jet(self.re * other.re, self.re * other.du + self.du * other.re)
        other = _as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.re * other, self.du * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            if other.re == 0:
                raise ZeroDivisionError("jet with zero value part in denominator")
            re = self.re / other.re
            return Jet(re, (self.du - re * other.du) / other.re)
        other = _as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.re / other, self.du / other)

    def __rtruediv__(self, other):
        other = _as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(other, 0) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("jets support nonnegative integer powers only")
        result = Jet(self.re * 0 + 1, self.re * 0)
        base = self
        for _ in range(exponent):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.re == other.re and self.du == other.du
        other = _as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other and self.du == 0

    def __hash__(self):
        if self.du == 0:
            return hash(self.re)
        return hash((self.re, self.du))

    def __bool__(self):
        return self.re != 0 or self.du != 0


def variable(value: Number, slope: Number = 1) -> Jet:
    """Jet seeded as a coordinate moving with the given slope."""
    return Jet(Fraction(value) if isinstance(value, int) else value,
               Fraction(slope) if isinstance(slope, int) else slope)


def value_part(x):
    return x.re if isinstance(x, Jet) else x


def derivative_part(x):
    if isinstance(x, Jet):
        return x.du
    return 0 * x
