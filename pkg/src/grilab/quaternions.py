"""Generalized quaternion algebras H(a,b) over Q with exact arithmetic.

Basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji; all coordinates are
exact rationals.  The default instance (a, b) = (-1, -1) is a division ring
(Hamilton quaternions over Q, anisotropic norm form).  For arbitrary
parameters the division property is not decided globally: every inversion
checks the reduced norm, and a vanishing norm on a nonzero element raises
NotDivisionRingError naming the zero divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .errors import NotDivisionRingError, ZeroElementError, ZeroInverseError
from .rings import Ring, _as_rational, _coerce_into


@dataclass(frozen=True)
class QuatParams:
    """Defining parameters: i^2 = a, j^2 = b (both nonzero)."""

    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class QuatAlgebra(Ring):
    params: QuatParams

    def contains(self, x: Any) -> bool:
        return isinstance(x, Quaternion) and x.params == self.params

    def element(self, w: Any, x: Any, y: Any, z: Any) -> Quaternion:
        return Quaternion(
            _as_rational(w), _as_rational(x), _as_rational(y), _as_rational(z),
            self.params,
        )

    def zero(self) -> Quaternion:
        return self.element(0, 0, 0, 0)

    def one(self) -> Quaternion:
        return self.element(1, 0, 0, 0)

    @property
    def i(self) -> Quaternion:
        return self.element(0, 1, 0, 0)

    @property
    def j(self) -> Quaternion:
        return self.element(0, 0, 1, 0)

    @property
    def k(self) -> Quaternion:
        return self.element(0, 0, 0, 1)

    def from_rational(self, q: Fraction) -> Quaternion:
        return self.element(q, 0, 0, 0)

    def add(self, p: Quaternion, q: Quaternion) -> Quaternion:
        self.check(p)
        self.check(q)
        return self.element(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z)

    def neg(self, p: Quaternion) -> Quaternion:
        self.check(p)
        return self.element(-p.w, -p.x, -p.y, -p.z)

    def mul(self, p: Quaternion, q: Quaternion) -> Quaternion:
        """Bilinear product from the relations i^2=a, j^2=b, ij=k=-ji.

        Derived table: k^2 = -ab, ik = aj, ki = -aj, jk = -bi, kj = bi.
        """
        self.check(p)
        self.check(q)
        a, b = self.params.a, self.params.b
        w1, x1, y1, z1 = p.w, p.x, p.y, p.z
        w2, x2, y2, z2 = q.w, q.x, q.y, q.z
        return self.element(
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2,
            w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )

    def inv(self, q: Quaternion) -> Quaternion:
        self.check(q)
        if q.is_zero():
            raise ZeroInverseError(f"cannot invert 0 in {self.describe()}")
        n = q.nrd()
        if n == 0:
            raise NotDivisionRingError(
                f"{self.describe()} is not a division ring: "
                f"{self.format(q)} is a nonzero zero divisor (nrd = 0)",
                element=q,
            )
        return self.element(q.w / n, -q.x / n, -q.y / n, -q.z / n)

    def is_zero(self, q: Quaternion) -> bool:
        return q.is_zero()

    def format(self, q: Quaternion) -> str:
        return f"({q.w},{q.x},{q.y},{q.z})"

    def describe(self) -> str:
        return f"H({self.params.a},{self.params.b})"


@lru_cache(maxsize=None)
def quat_algebra(a: Fraction = Fraction(-1), b: Fraction = Fraction(-1)) -> QuatAlgebra:
    """Registry constructor for H(a,b); a and b must be nonzero."""
    a = _as_rational(a)
    b = _as_rational(b)
    if a == 0 or b == 0:
        raise ValueError("quaternion parameters must be nonzero")
    return QuatAlgebra(QuatParams(a, b))


@dataclass(frozen=True)
class Quaternion:
    """w + x*i + y*j + z*k with exact rational coordinates."""

    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction
    params: QuatParams

    @property
    def ring(self) -> QuatAlgebra:
        return quat_algebra(self.params.a, self.params.b)

    def is_zero(self) -> bool:
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    def is_central(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z, self.params)

    def trd(self) -> Fraction:
        """Reduced trace, 2w."""
        return 2 * self.w

    def nrd(self) -> Fraction:
        """Reduced norm, w^2 - a x^2 - b y^2 + ab z^2 (equals q * conj(q))."""
        a, b = self.params.a, self.params.b
        return (
            self.w * self.w
            - a * self.x * self.x
            - b * self.y * self.y
            + a * b * self.z * self.z
        )

    def __add__(self, other: Any) -> Quaternion:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.add(self, other)

    __radd__ = __add__

    def __neg__(self) -> Quaternion:
        return self.ring.neg(self)

    def __sub__(self, other: Any) -> Quaternion:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(self, other)

    def __rsub__(self, other: Any) -> Quaternion:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(other, self)

    def __mul__(self, other: Any) -> Quaternion:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(self, other)

    def __rmul__(self, other: Any) -> Quaternion:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(other, self)

    def __pow__(self, n: int) -> Quaternion:
        return self.ring.pow(self, n)

    def __repr__(self) -> str:
        return f"Quaternion{self.ring.format(self)}"


def is_central(q: Quaternion) -> bool:
    """True iff q lies in the center Q, i.e. its i, j, k parts vanish."""
    return q.is_central()


def min_poly(q: Quaternion) -> tuple[int, tuple[Fraction, ...]]:
    """Minimal polynomial of q over Q: (degree, monic coefficients ascending).

    Degree 1 with X - w exactly when q is central; otherwise degree 2 with
    X^2 - trd(q) X + nrd(q), which annihilates q exactly.
    """
    if q.is_central():
        return 1, (-q.w, Fraction(1))
    return 2, (q.nrd(), -q.trd(), Fraction(1))


def central_order(q: Quaternion, d: int) -> int | None:
    """Least n <= d with q^n central, by exact repeated multiplication.

    Returns None when no power up to d is central, i.e. q witnesses the
    failure of d-bounded radicality.
    """
    if q.is_zero():
        raise ZeroElementError("central_order requires a nonzero element")
    if d < 1:
        raise ValueError("bound must be a positive integer")
    power = q
    for n in range(1, d + 1):
        if power.is_central():
            return n
        if n < d:
            power = q.ring.mul(power, q)
    return None


def commutator(p: Quaternion, q: Quaternion) -> Quaternion:
    """Multiplicative commutator p q p^-1 q^-1 (reduced norm always 1)."""
    if p.is_zero() or q.is_zero():
        raise ZeroElementError("commutator requires nonzero elements")
    ring = p.ring
    ring.check(q)
    return ring.mul(ring.mul(p, q), ring.mul(ring.inv(p), ring.inv(q)))
