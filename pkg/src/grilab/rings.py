"""Exact scalar rings and the ring/automorphism plumbing shared by all modules.

Every algebraic value in this package belongs to exactly one registered ring,
and every binary operation checks that its operands share a ring before
computing.  Scalars are exact: rationals are :class:`fractions.Fraction`
(always in lowest terms with positive denominator), quadratic-field elements
are pairs of rationals.  No floating point appears anywhere.

Ring instances double as the "handles" other modules pass around.  They are
frozen, structurally comparable and hashable, and the module-level
constructors (:func:`rational_field`, :func:`quad_field`, ...) cache them, so
the set of live rings forms an append-only registry that is immutable after
construction.  All element values are immutable and all operations return
fresh values, which makes everything safe to share across concurrent trials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .errors import (
    InapplicableAutomorphismError,
    NotDivisionRingError,
    RingMismatchError,
    ZeroInverseError,
)

Rational = Fraction

# Exact square test on |numerator|, |denominator| up to this bound; larger
# discriminants are accepted unchecked (the handle carries a warning flag).
SQUARE_CHECK_BOUND = 10**9


def _as_rational(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {x!r}")


class Ring:
    """Abstract ring interface.

    Subclasses implement exact ``add``/``neg``/``mul``/``inv`` plus
    embedding of rationals.  ``pow`` and ``sub`` are generic.  Elements of
    non-scalar rings carry their ring as a ``.ring`` attribute; plain
    ``Fraction`` values belong to the unique :class:`RationalField`.
    """

    def contains(self, x: Any) -> bool:
        raise NotImplementedError

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_rational(self, q: Fraction) -> Any:
        raise NotImplementedError

    def add(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def neg(self, x: Any) -> Any:
        raise NotImplementedError

    def mul(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def inv(self, x: Any) -> Any:
        raise NotImplementedError

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    def pow(self, x: Any, n: int) -> Any:
        """Exact integer power; negative exponents go through ``inv``."""
        if n < 0:
            return self.pow(self.inv(x), -n)
        result = self.one()
        base = x
        while n > 0:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, x: Any) -> bool:
        raise NotImplementedError

    def is_certified_nonzero(self, x: Any) -> bool:
        """True when x is provably nonzero.

        For exact rings this is plain nonzero-ness; truncated series
        override it to mean "some known coefficient is nonzero".
        """
        return not self.is_zero(x)

    def format(self, x: Any) -> str:
        return str(x)

    def check(self, x: Any) -> None:
        if not self.contains(x):
            raise RingMismatchError(
                f"element {x!r} does not belong to {self.describe()}"
            )

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class RationalField(Ring):
    """The field of rationals; elements are ``fractions.Fraction`` values."""

    def contains(self, x: Any) -> bool:
        return isinstance(x, Fraction)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_rational(self, q: Fraction) -> Fraction:
        return _as_rational(q)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise ZeroInverseError("cannot invert 0 in the rational field")
        return 1 / x

    def is_zero(self, x: Fraction) -> bool:
        return x == 0

    def format(self, x: Fraction) -> str:
        return str(x)

    def describe(self) -> str:
        return "Q"


@lru_cache(maxsize=None)
def rational_field() -> RationalField:
    return RationalField()


def _is_rational_square(d: Fraction) -> bool:
    if d < 0:
        return False
    p, q = d.numerator, d.denominator
    return math.isqrt(p) ** 2 == p and math.isqrt(q) ** 2 == q


@dataclass(frozen=True)
class QuadField(Ring):
    """Quadratic field Q(sqrt(d)) for a non-square rational d.

    ``unchecked`` is set when |numerator| or |denominator| of d exceeds
    SQUARE_CHECK_BOUND, in which case squareness was not verified; a square
    d that slips through surfaces later as a zero divisor at inversion.
    """

    d: Fraction
    unchecked: bool = False

    def contains(self, x: Any) -> bool:
        return isinstance(x, QuadFieldElem) and x.field == self

    def element(self, u: Any, v: Any) -> QuadFieldElem:
        return QuadFieldElem(_as_rational(u), _as_rational(v), self)

    def zero(self) -> QuadFieldElem:
        return self.element(0, 0)

    def one(self) -> QuadFieldElem:
        return self.element(1, 0)

    def generator(self) -> QuadFieldElem:
        """The square root of d."""
        return self.element(0, 1)

    def from_rational(self, q: Fraction) -> QuadFieldElem:
        return self.element(q, 0)

    def add(self, x: QuadFieldElem, y: QuadFieldElem) -> QuadFieldElem:
        self.check(x)
        self.check(y)
        return self.element(x.u + y.u, x.v + y.v)

    def neg(self, x: QuadFieldElem) -> QuadFieldElem:
        self.check(x)
        return self.element(-x.u, -x.v)

    def mul(self, x: QuadFieldElem, y: QuadFieldElem) -> QuadFieldElem:
        self.check(x)
        self.check(y)
        return self.element(x.u * y.u + x.v * y.v * self.d, x.u * y.v + x.v * y.u)

    def inv(self, x: QuadFieldElem) -> QuadFieldElem:
        self.check(x)
        norm = x.u * x.u - x.v * x.v * self.d
        if norm == 0:
            if x.u == 0 and x.v == 0:
                raise ZeroInverseError(f"cannot invert 0 in {self.describe()}")
            raise NotDivisionRingError(
                f"nonzero element {self.format(x)} has zero norm: "
                f"d={self.d} is a square in Q",
                element=x,
            )
        return self.element(x.u / norm, -x.v / norm)

    def conjugate(self, x: QuadFieldElem) -> QuadFieldElem:
        self.check(x)
        return self.element(x.u, -x.v)

    def is_zero(self, x: QuadFieldElem) -> bool:
        return x.u == 0 and x.v == 0

    def format(self, x: QuadFieldElem) -> str:
        root = "i" if self.d == -1 else f"sqrt({self.d})"
        if x.v == 0:
            return str(x.u)
        if x.u == 0:
            return f"{x.v}*{root}"
        return f"{x.u} + {x.v}*{root}" if x.v > 0 else f"{x.u} - {-x.v}*{root}"

    def describe(self) -> str:
        return f"Q(sqrt({self.d}))"


@lru_cache(maxsize=None)
def quad_field(d: Fraction) -> QuadField:
    """Registry constructor for Q(sqrt(d)); rejects square d when checkable."""
    d = _as_rational(d)
    if d == 0:
        raise ValueError("discriminant must be nonzero")
    checkable = abs(d.numerator) <= SQUARE_CHECK_BOUND and d.denominator <= SQUARE_CHECK_BOUND
    if checkable and _is_rational_square(d):
        raise ValueError(f"d={d} is a square in Q; not a quadratic field")
    return QuadField(d, unchecked=not checkable)


@dataclass(frozen=True)
class QuadFieldElem:
    """u + v*sqrt(d), with exact rational u, v."""

    u: Fraction
    v: Fraction
    field: QuadField

    @property
    def ring(self) -> QuadField:
        return self.field

    def __add__(self, other: Any) -> QuadFieldElem:
        other = _coerce_into(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.add(self, other)

    __radd__ = __add__

    def __neg__(self) -> QuadFieldElem:
        return self.field.neg(self)

    def __sub__(self, other: Any) -> QuadFieldElem:
        other = _coerce_into(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.add(self, self.field.neg(other))

    def __rsub__(self, other: Any) -> QuadFieldElem:
        other = _coerce_into(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.add(other, self.field.neg(self))

    def __mul__(self, other: Any) -> QuadFieldElem:
        other = _coerce_into(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(self, other)

    def __rmul__(self, other: Any) -> QuadFieldElem:
        other = _coerce_into(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.mul(other, self)

    def __repr__(self) -> str:
        return f"QuadFieldElem({self.field.format(self)} in {self.field.describe()})"


def _coerce_into(ring: Ring, x: Any) -> Any:
    """Embed python ints / Fractions into ``ring``; pass members through.

    Anything else is left to the caller (NotImplemented), so cross-ring
    operations fail loudly rather than coercing.
    """
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return ring.from_rational(_as_rational(x))
    if ring.contains(x):
        return x
    return NotImplemented


# ---------------------------------------------------------------------------
# Automorphism handles


@dataclass(frozen=True)
class Identity:
    """The identity automorphism of any ring."""


@dataclass(frozen=True)
class QuadConjugation:
    """u + v*sqrt(d)  ->  u - v*sqrt(d); order 2, applies to quadratic
    fields and to series with quadratic-field coefficients."""


@dataclass(frozen=True)
class TowerShift:
    """Index translation t_i -> t_{i+offset} on tower elements; fixes the
    coefficient division ring.  Partial: shifting past the active window
    raises WindowOverflowError."""

    offset: int


Automorphism = Identity | QuadConjugation | TowerShift


def automorphism_inverse(h: Automorphism) -> Automorphism:
    if isinstance(h, Identity):
        return h
    if isinstance(h, QuadConjugation):
        return h
    if isinstance(h, TowerShift):
        return TowerShift(-h.offset)
    raise InapplicableAutomorphismError(f"unknown automorphism {h!r}")


def automorphism_power(h: Automorphism, m: int) -> Automorphism:
    """The handle of h composed with itself m times (m may be negative)."""
    if isinstance(h, Identity):
        return h
    if isinstance(h, QuadConjugation):
        return h if m % 2 else Identity()
    if isinstance(h, TowerShift):
        offset = h.offset * m
        return TowerShift(offset) if offset else Identity()
    raise InapplicableAutomorphismError(f"unknown automorphism {h!r}")


def compose_automorphisms(h1: Automorphism, h2: Automorphism) -> Automorphism:
    if isinstance(h1, Identity):
        return h2
    if isinstance(h2, Identity):
        return h1
    if isinstance(h1, QuadConjugation) and isinstance(h2, QuadConjugation):
        return Identity()
    if isinstance(h1, TowerShift) and isinstance(h2, TowerShift):
        return automorphism_power(TowerShift(1), h1.offset + h2.offset)
    raise InapplicableAutomorphismError(
        f"cannot compose {h1!r} with {h2!r}: incompatible domains"
    )


def apply_automorphism(h: Automorphism, x: Any) -> Any:
    """Apply an automorphism handle to an element of its domain.

    Identity fixes everything.  QuadConjugation acts on quadratic-field
    elements and, coefficientwise, on series over them.  TowerShift acts on
    tower elements (and, coefficientwise, on series over the tower ring).
    """
    if isinstance(h, Identity):
        return x
    # Late imports keep the scalar layer free of series dependencies.
    from .series import TowerElem, TruncSeries

    if isinstance(h, QuadConjugation):
        if isinstance(x, QuadFieldElem):
            return x.field.conjugate(x)
        if isinstance(x, TruncSeries) and isinstance(x.ring.base, QuadField):
            return x.ring.map_coefficients(x, lambda c: c.field.conjugate(c))
        raise InapplicableAutomorphismError(
            f"conjugation applies to quadratic-field values, not {x!r}"
        )
    if isinstance(h, TowerShift):
        from .series import tower_shift

        if isinstance(x, TowerElem):
            return tower_shift(x, h.offset)
        if isinstance(x, TruncSeries) and x.ring.base_is_tower():
            return x.ring.map_coefficients(x, lambda c: tower_shift(c, h.offset))
        raise InapplicableAutomorphismError(
            f"tower shift applies to tower values, not {x!r}"
        )
    raise InapplicableAutomorphismError(f"unknown automorphism {h!r}")


# ---------------------------------------------------------------------------
# Generic handle-checked operations


def ring_of(x: Any) -> Ring:
    """Resolve the ring handle an element carries."""
    if isinstance(x, Fraction):
        return rational_field()
    ring = getattr(x, "ring", None)
    if isinstance(ring, Ring):
        return ring
    raise TypeError(f"not a ring element: {x!r}")


def same_ring(x: Any, y: Any) -> Ring:
    rx = ring_of(x)
    ry = ring_of(y)
    if rx != ry:
        raise RingMismatchError(
            f"operands belong to different rings: {rx.describe()} vs {ry.describe()}"
        )
    return rx


def ring_add(x: Any, y: Any) -> Any:
    return same_ring(x, y).add(x, y)


def ring_sub(x: Any, y: Any) -> Any:
    return same_ring(x, y).sub(x, y)


def ring_mul(x: Any, y: Any) -> Any:
    return same_ring(x, y).mul(x, y)


def ring_neg(x: Any) -> Any:
    return ring_of(x).neg(x)


def ring_inv(x: Any) -> Any:
    return ring_of(x).inv(x)


def ring_pow(x: Any, n: int) -> Any:
    return ring_of(x).pow(x, n)
