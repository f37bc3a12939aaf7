"""Midpoint-radius enclosures over mpmath numbers.

An :class:`Enclosure` pairs a real or complex midpoint with a radius that
bounds the absolute error of the midpoint. Arithmetic propagates radii with
first-order-exact formulas and then pads them by a few units in the last
place of the working precision to absorb the rounding of the midpoint
operation itself. Radii never shrink under arithmetic.
"""
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import PrecisionError


def _ulp_pad(value):
    """A few ulps of ``value`` at the current precision (an upper bound on
    the rounding error of one correctly rounded elementary operation)."""
    mag = abs(value)
    if not mag:
        return mpf(0)
    return mag * mpmath.ldexp(1, -mpmath.mp.prec + 2)


def _coerce(other):
    if isinstance(other, Enclosure):
        return other
    if isinstance(other, float):
        other = mpf(other)
    return Enclosure(mpmath.mpmathify(other), mpf(0))


@dataclass(frozen=True)
class Enclosure:
    value: object
    radius: mpf

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("enclosure radius must be nonnegative")

    @classmethod
    def exact(cls, value):
        return cls(mpmath.mpmathify(value), mpf(0))

    # -- queries -----------------------------------------------------------

    @property
    def is_real(self):
        return not isinstance(self.value, mpmath.mpc)

    def lower(self):
        if not self.is_real:
            raise TypeError("lower() needs a real enclosure")
        return self.value - self.radius

    def upper(self):
        if not self.is_real:
            raise TypeError("upper() needs a real enclosure")
        return self.value + self.radius

    def abs_lower(self):
        """Certified lower bound on the modulus (may be <= 0)."""
        return abs(self.value) - self.radius

    def abs_upper(self):
        return abs(self.value) + self.radius

    def contains(self, x):
        return abs(mpmath.mpmathify(x) - self.value) <= self.radius

    def require_nonzero(self, what="value"):
        if self.abs_lower() <= 0:
            raise PrecisionError(
                f"{what} is not separated from zero: |mid| = "
                f"{mpmath.nstr(abs(self.value), 8)}, radius = {mpmath.nstr(self.radius, 8)}"
            )
        return self

    def widen(self, extra):
        return Enclosure(self.value, self.radius + abs(mpf(extra)))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return Enclosure(-self.value, self.radius)

    def __add__(self, other):
        other = _coerce(other)
        v = self.value + other.value
        return Enclosure(v, self.radius + other.radius + _ulp_pad(v))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        v = self.value - other.value
        return Enclosure(v, self.radius + other.radius + _ulp_pad(v))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        v = self.value * other.value
        r = (abs(self.value) * other.radius + abs(other.value) * self.radius
             + self.radius * other.radius)
        return Enclosure(v, r + _ulp_pad(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        den = abs(other.value)
        if den <= other.radius:
            raise PrecisionError("division by an enclosure that contains zero")
        v = self.value / other.value
        r = (self.radius * den + other.radius * abs(self.value)) / (den * (den - other.radius))
        return Enclosure(v, r + _ulp_pad(v))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __abs__(self):
        v = abs(self.value)
        return Enclosure(v, self.radius + _ulp_pad(v))

    def conjugate(self):
        return Enclosure(mpmath.conj(self.value), self.radius)

    def __repr__(self):
        return f"Enclosure({mpmath.nstr(self.value, 20)} +/- {mpmath.nstr(self.radius, 3)})"


def pairwise_sum(items):
    """Tree reduction ``((a0+a1)+(a2+a3))+...`` in a fixed shape.

    The shape depends only on ``len(items)``, so any partition of the work
    that preserves item order reproduces the serial result bit for bit.
    """
    items = list(items)
    if not items:
        raise ValueError("pairwise_sum of an empty sequence")
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]
