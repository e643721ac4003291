"""Truncated Laurent series with optional automorphism twist, the iterated
Laurent tower, and the outer shift-twisted series ring built on top of it.

Precision model
---------------
Every truncated value knows the exact frontier of trusted data:

* a :class:`TruncSeries` stores coefficients for degrees in
  ``[min_deg, prec)``; every coefficient of degree below ``prec`` is exactly
  known (zero coefficients are elided but still known), degrees at or above
  ``prec`` are unknown;
* a :class:`TowerElem` stores multivariate Laurent terms whose total degree
  is below ``prec``.

All operations propagate the frontier conservatively.  Products obey

    prec(x*y) = min(prec_x + val_y, prec_y + val_x)

so a silently truncated tail can never masquerade as equality: comparisons
are only offered "at precision P" and raise when either side cannot certify
P.  The extent ``prec - val`` of any value is bounded by the ring's
configured window; exceeding it is a hard error, never silent truncation.

Multiplication twist.  With twist automorphism ``phi``, coefficients pass
each other by the rule ``(a t^m) (b t^n) = a phi^m(b) t^{m+n}``.  The tower
ring is untwisted internally (all variables commute with each other and with
the coefficient division ring); the outer ring is a series ring over the
tower whose twist is the index shift t_i -> t_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable

from .errors import (
    InsufficientPrecisionError,
    NotInvertibleError,
    RingMismatchError,
    WindowOverflowError,
    ZeroLeadingTermError,
)
from .quaternions import QuatAlgebra, Quaternion, quat_algebra
from .rings import (
    Automorphism,
    Identity,
    QuadConjugation,
    QuadField,
    RationalField,
    Ring,
    TowerShift,
    _as_rational,
    _coerce_into,
    apply_automorphism,
    automorphism_power,
    ring_of,
    same_ring,
)

# Precision carried by values that are exactly zero as far as constructed
# (empty known part, nothing unknown below any finite degree).
_ZERO_PREC = 1 << 60

DEFAULT_PREC = 12
DEFAULT_WINDOW = 64
DEFAULT_DEPTH = 2


# ---------------------------------------------------------------------------
# Twisted truncated Laurent series


@dataclass(frozen=True)
class SeriesRing(Ring):
    """R((t, phi)) truncated: base ring R, twist phi, extent window."""

    base: Ring
    twist: Automorphism = Identity()
    var: str = "t"
    default_prec: int = DEFAULT_PREC
    window: int = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if isinstance(self.twist, QuadConjugation) and not isinstance(self.base, QuadField):
            raise ValueError("conjugation twist requires quadratic-field coefficients")
        if isinstance(self.twist, TowerShift) and not isinstance(self.base, TowerRing):
            raise ValueError("shift twist requires tower coefficients")
        if self.default_prec < 1 or self.window < 1:
            raise ValueError("precision and window must be positive")

    def base_is_tower(self) -> bool:
        return isinstance(self.base, TowerRing)

    def contains(self, x: Any) -> bool:
        return isinstance(x, TruncSeries) and x.ring == self

    def make(self, coeffs: dict[int, Any], prec: int) -> TruncSeries:
        """Normalize and build: drop zero/unknown entries, check the window."""
        clean = {d: c for d, c in coeffs.items() if d < prec and not self.base.is_zero(c)}
        min_deg = min(clean) if clean else prec
        if prec - min_deg > self.window:
            raise WindowOverflowError(
                f"series extent {prec - min_deg} exceeds window {self.window}"
            )
        return TruncSeries(self, clean, min_deg, prec)

    def monomial(self, coeff: Any, deg: int, prec: int | None = None) -> TruncSeries:
        coeff = _coerce_into(self.base, coeff)
        if coeff is NotImplemented:
            raise RingMismatchError(f"coefficient does not belong to {self.base.describe()}")
        if prec is None:
            prec = deg + self.window
        return self.make({deg: coeff}, prec)

    def constant(self, c: Any) -> TruncSeries:
        return self.monomial(c, 0)

    def t(self, prec: int | None = None) -> TruncSeries:
        return self.monomial(self.base.one(), 1, prec)

    def zero(self) -> TruncSeries:
        return TruncSeries(self, {}, _ZERO_PREC, _ZERO_PREC)

    def one(self) -> TruncSeries:
        return self.constant(self.base.one())

    def from_rational(self, q: Fraction) -> TruncSeries:
        return self.constant(self.base.from_rational(q))

    def add(self, x: TruncSeries, y: TruncSeries) -> TruncSeries:
        self.check(x)
        self.check(y)
        prec = min(x.prec, y.prec)
        out = dict(x.coeffs)
        for d, c in y.coeffs.items():
            cur = out.get(d)
            out[d] = c if cur is None else self.base.add(cur, c)
        return self.make(out, prec)

    def neg(self, x: TruncSeries) -> TruncSeries:
        self.check(x)
        return TruncSeries(
            self, {d: self.base.neg(c) for d, c in x.coeffs.items()}, x.min_deg, x.prec
        )

    def mul(self, x: TruncSeries, y: TruncSeries) -> TruncSeries:
        self.check(x)
        self.check(y)
        prec = min(x.prec + y.min_deg, y.prec + x.min_deg)
        untwisted = isinstance(self.twist, Identity)
        base = self.base
        out: dict[int, Any] = {}
        for i, a in x.coeffs.items():
            phi = None if untwisted else automorphism_power(self.twist, i)
            for j, b in y.coeffs.items():
                d = i + j
                if d >= prec:
                    continue
                if phi is not None:
                    b = apply_automorphism(phi, b)
                term = base.mul(a, b)
                cur = out.get(d)
                out[d] = term if cur is None else base.add(cur, term)
        return self.make(out, prec)

    def inv(self, x: TruncSeries) -> TruncSeries:
        """Invert by twist-normalizing the leading term and a Neumann series.

        Writes x = c t^v (1 + w) with val(w) >= 1; then
        x^-1 = (sum (-w)^k) * (c t^v)^-1 with (c t^v)^-1 = phi^-v(c^-1) t^-v.
        The result is exact to precision prec(x) - 2 val(x).
        """
        self.check(x)
        if not x.coeffs:
            raise ZeroLeadingTermError(
                "cannot invert: every known coefficient is zero"
            )
        v = x.min_deg
        p = x.prec
        c_inv = self.base.inv(x.coeffs[v])
        lead = apply_automorphism(automorphism_power(self.twist, -v), c_inv)
        front = self.make({-v: lead}, p - 2 * v)
        w = self.sub(self.mul(front, x), self.one())
        acc = self.one()
        if w.coeffs:
            rel = p - v
            steps = max((rel - 1) // w.min_deg, 0)
            for _ in range(steps):
                acc = self.sub(self.one(), self.mul(w, acc))
        return self.mul(acc, front)

    def is_zero(self, x: TruncSeries) -> bool:
        """True when no known coefficient is nonzero (zero at precision)."""
        return not x.coeffs

    def map_coefficients(self, x: TruncSeries, fn: Callable[[Any], Any]) -> TruncSeries:
        self.check(x)
        return self.make({d: fn(c) for d, c in x.coeffs.items()}, x.prec)

    def coefficient(self, x: TruncSeries, deg: int) -> Any:
        self.check(x)
        if deg >= x.prec:
            raise InsufficientPrecisionError(
                f"coefficient of {self.var}^{deg} is beyond precision {x.prec}"
            )
        return x.coeffs.get(deg, self.base.zero())

    def eq_to_prec(self, x: TruncSeries, y: TruncSeries, prec: int) -> bool:
        """Coefficientwise equality below ``prec``; errors if uncertifiable."""
        self.check(x)
        self.check(y)
        if x.prec < prec or y.prec < prec:
            raise InsufficientPrecisionError(
                f"equality at precision {prec} needs both operands certified "
                f"(have {x.prec} and {y.prec})"
            )
        for d in set(x.coeffs) | set(y.coeffs):
            if d >= prec:
                continue
            if not self.base.is_zero(
                self.base.sub(
                    x.coeffs.get(d, self.base.zero()), y.coeffs.get(d, self.base.zero())
                )
            ):
                return False
        return True

    def format(self, x: TruncSeries) -> str:
        parts = []
        for d in sorted(x.coeffs):
            c = self.base.format(x.coeffs[d])
            atomic = " " not in c and not c.startswith("-") and (
                "*" not in c or c.startswith("(")
            )
            if not atomic:
                c = f"({c})"
            parts.append(c if d == 0 else f"{c}*{self.var}^{d}")
        prec = "" if x.prec >= _ZERO_PREC else f" + O({self.var}^{x.prec})"
        return (" + ".join(parts) if parts else "0") + prec

    def describe(self) -> str:
        twist = {
            Identity(): "",
        }.get(self.twist)
        if twist is None:
            twist = f",{type(self.twist).__name__}"
            if isinstance(self.twist, TowerShift):
                twist = f",shift({self.twist.offset})"
        return f"{self.base.describe()}(({self.var}{twist}))"


class TruncSeries:
    """Immutable truncated Laurent series; arithmetic lives on the ring."""

    __slots__ = ("ring", "coeffs", "min_deg", "prec")

    def __init__(self, ring: SeriesRing, coeffs: dict[int, Any], min_deg: int, prec: int):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "min_deg", min_deg)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TruncSeries values are immutable")

    def coefficient(self, deg: int) -> Any:
        return self.ring.coefficient(self, deg)

    def __add__(self, other: Any) -> TruncSeries:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.add(self, other)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return self.ring.neg(self)

    def __sub__(self, other: Any) -> TruncSeries:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(self, other)

    def __rsub__(self, other: Any) -> TruncSeries:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(other, self)

    def __mul__(self, other: Any) -> TruncSeries:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(self, other)

    def __rmul__(self, other: Any) -> TruncSeries:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(other, self)

    def __pow__(self, n: int) -> TruncSeries:
        return self.ring.pow(self, n)

    def __eq__(self, other: Any) -> bool:
        # Representation equality; semantic comparisons go through eq_to_prec.
        return (
            isinstance(other, TruncSeries)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncSeries({self.ring.format(self)})"


@lru_cache(maxsize=None)
def series_ring(
    base: Ring,
    twist: Automorphism = Identity(),
    var: str = "t",
    default_prec: int = DEFAULT_PREC,
    window: int = DEFAULT_WINDOW,
) -> SeriesRing:
    """Registry constructor for truncated twisted Laurent series rings."""
    return SeriesRing(base, twist, var, default_prec, window)


def series_mul(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    ring = same_ring(x, y)
    return ring.mul(x, y)


def series_inv(x: TruncSeries) -> TruncSeries:
    return ring_of(x).inv(x)


# ---------------------------------------------------------------------------
# The iterated Laurent tower, flattened


@dataclass(frozen=True)
class TowerRing(Ring):
    """Finite-depth approximation of the iterated Laurent tower.

    Active variables are t_i for -depth <= i <= depth.  Each nesting level
    of the tower is an untwisted Laurent extension, so nested and flattened
    products coincide; flattening the levels into multivariate terms with
    commuting variables is what makes the index shift implementable.
    Truncation is by total degree.
    """

    algebra: QuatAlgebra
    depth: int
    default_prec: int = DEFAULT_PREC
    window: int = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError("tower depth must be a positive integer")

    @property
    def indices(self) -> range:
        return range(-self.depth, self.depth + 1)

    def _width(self) -> int:
        return 2 * self.depth + 1

    def contains(self, x: Any) -> bool:
        return isinstance(x, TowerElem) and x.ring == self

    def make(self, terms: dict[tuple[int, ...], Quaternion], prec: int) -> TowerElem:
        width = self._width()
        clean = {}
        for exps, q in terms.items():
            if len(exps) != width:
                raise ValueError(f"exponent vector must have {width} entries")
            if sum(exps) >= prec or q.is_zero():
                continue
            clean[exps] = q
        val = min((sum(e) for e in clean), default=prec)
        if prec - val > self.window:
            raise WindowOverflowError(
                f"tower extent {prec - val} exceeds window {self.window}"
            )
        return TowerElem(self, clean, val, prec)

    def monomial(
        self,
        coeff: Quaternion | Fraction | int,
        exps: dict[int, int] | None = None,
        prec: int | None = None,
    ) -> TowerElem:
        coeff = _coerce_into(self.algebra, coeff)
        if coeff is NotImplemented:
            raise RingMismatchError("tower coefficients live in " + self.algebra.describe())
        vec = [0] * self._width()
        for idx, e in (exps or {}).items():
            if idx not in self.indices:
                raise WindowOverflowError(
                    f"variable index {idx} outside active window "
                    f"[{-self.depth}, {self.depth}]",
                    index=idx,
                )
            vec[idx + self.depth] = e
        deg = sum(vec)
        if prec is None:
            prec = deg + self.window
        return self.make({tuple(vec): coeff}, prec)

    def variable(self, idx: int, prec: int | None = None) -> TowerElem:
        return self.monomial(self.algebra.one(), {idx: 1}, prec)

    def constant(self, c: Quaternion | Fraction | int) -> TowerElem:
        return self.monomial(c, None)

    def zero(self) -> TowerElem:
        return TowerElem(self, {}, _ZERO_PREC, _ZERO_PREC)

    def one(self) -> TowerElem:
        return self.constant(self.algebra.one())

    def from_rational(self, q: Fraction) -> TowerElem:
        return self.constant(self.algebra.from_rational(q))

    def add(self, x: TowerElem, y: TowerElem) -> TowerElem:
        self.check(x)
        self.check(y)
        prec = min(x.prec, y.prec)
        out = dict(x.terms)
        for exps, q in y.terms.items():
            cur = out.get(exps)
            out[exps] = q if cur is None else self.algebra.add(cur, q)
        return self.make(out, prec)

    def neg(self, x: TowerElem) -> TowerElem:
        self.check(x)
        return TowerElem(
            self, {e: self.algebra.neg(q) for e, q in x.terms.items()}, x.val, x.prec
        )

    def mul(self, x: TowerElem, y: TowerElem) -> TowerElem:
        """Term-by-term product; variables commute, coefficients do not."""
        self.check(x)
        self.check(y)
        prec = min(x.prec + y.val, y.prec + x.val)
        alg = self.algebra
        out: dict[tuple[int, ...], Quaternion] = {}
        for e1, q1 in x.terms.items():
            for e2, q2 in y.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                if sum(exps) >= prec:
                    continue
                term = alg.mul(q1, q2)
                cur = out.get(exps)
                out[exps] = term if cur is None else alg.add(cur, term)
        return self.make(out, prec)

    def inv(self, x: TowerElem) -> TowerElem:
        """Neumann inversion; defined when a single term dominates.

        The flattened total-degree representation cannot express inverses of
        elements whose minimal-degree part has several terms (those live at
        unbounded negative depth in single variables), so that case raises
        NotInvertibleError rather than pretending.
        """
        self.check(x)
        if not x.terms:
            raise ZeroLeadingTermError("cannot invert: every known term is zero")
        v = x.val
        leads = [(e, q) for e, q in x.terms.items() if sum(e) == v]
        if len(leads) > 1:
            names = ", ".join(self._format_monomial(e) or "1" for e, _ in leads)
            raise NotInvertibleError(
                f"leading part has {len(leads)} terms ({names}); "
                "inversion needs a single dominant term"
            )
        (exps, c) = leads[0]
        front = self.make(
            {tuple(-e for e in exps): self.algebra.inv(c)}, x.prec - 2 * v
        )
        w = self.sub(self.mul(front, x), self.one())
        acc = self.one()
        if w.terms:
            rel = x.prec - v
            steps = max((rel - 1) // w.val, 0)
            for _ in range(steps):
                acc = self.sub(self.one(), self.mul(w, acc))
        return self.mul(acc, front)

    def is_zero(self, x: TowerElem) -> bool:
        return not x.terms

    def eq_to_prec(self, x: TowerElem, y: TowerElem, prec: int) -> bool:
        self.check(x)
        self.check(y)
        if x.prec < prec or y.prec < prec:
            raise InsufficientPrecisionError(
                f"equality at precision {prec} needs both operands certified "
                f"(have {x.prec} and {y.prec})"
            )
        for exps in set(x.terms) | set(y.terms):
            if sum(exps) >= prec:
                continue
            a = x.terms.get(exps, self.algebra.zero())
            b = y.terms.get(exps, self.algebra.zero())
            if not self.algebra.sub(a, b).is_zero():
                return False
        return True

    def _format_monomial(self, exps: tuple[int, ...]) -> str:
        parts = []
        for pos, e in enumerate(exps):
            if e == 0:
                continue
            name = f"t{pos - self.depth}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def format(self, x: TowerElem) -> str:
        parts = []
        for exps in sorted(x.terms, key=lambda e: (sum(e), e)):
            coeff = self.algebra.format(x.terms[exps])
            mono = self._format_monomial(exps)
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        prec = "" if x.prec >= _ZERO_PREC else f" + O(deg {x.prec})"
        return (" + ".join(parts) if parts else "0") + prec

    def describe(self) -> str:
        return f"{self.algebra.describe()}[tower depth {self.depth}]"


class TowerElem:
    """Immutable element of the flattened tower."""

    __slots__ = ("ring", "terms", "val", "prec")

    def __init__(
        self,
        ring: TowerRing,
        terms: dict[tuple[int, ...], Quaternion],
        val: int,
        prec: int,
    ):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TowerElem values are immutable")

    def __add__(self, other: Any) -> TowerElem:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.add(self, other)

    __radd__ = __add__

    def __neg__(self) -> TowerElem:
        return self.ring.neg(self)

    def __sub__(self, other: Any) -> TowerElem:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(self, other)

    def __rsub__(self, other: Any) -> TowerElem:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.sub(other, self)

    def __mul__(self, other: Any) -> TowerElem:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(self, other)

    def __rmul__(self, other: Any) -> TowerElem:
        other = _coerce_into(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.mul(other, self)

    def __pow__(self, n: int) -> TowerElem:
        return self.ring.pow(self, n)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, TowerElem)
            and self.ring == other.ring
            and self.terms == other.terms
            and self.prec == other.prec
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TowerElem({self.ring.format(self)})"


def tower_shift(x: TowerElem, offset: int) -> TowerElem:
    """Translate every variable index by ``offset`` (t_i -> t_{i+offset}).

    Quaternion coefficients are fixed.  Exponents on a variable that would
    leave the active window raise WindowOverflowError naming the offending
    index; the finite-depth approximation never truncates silently.
    """
    ring = x.ring
    if offset == 0:
        return x
    depth = ring.depth
    width = 2 * depth + 1
    out: dict[tuple[int, ...], Quaternion] = {}
    for exps, q in x.terms.items():
        vec = [0] * width
        for pos, e in enumerate(exps):
            if e == 0:
                continue
            target = pos - depth + offset
            if target < -depth or target > depth:
                raise WindowOverflowError(
                    f"shift by {offset} sends t{pos - depth} to index {target}, "
                    f"outside the active window [{-depth}, {depth}]",
                    index=target,
                )
            vec[target + depth] = e
        out[tuple(vec)] = q
    return TowerElem(ring, out, x.val, x.prec)


@lru_cache(maxsize=None)
def tower_ring(
    a: Fraction = Fraction(-1),
    b: Fraction = Fraction(-1),
    depth: int = DEFAULT_DEPTH,
    default_prec: int = DEFAULT_PREC,
    window: int = DEFAULT_WINDOW,
) -> TowerRing:
    return TowerRing(quat_algebra(_as_rational(a), _as_rational(b)), depth, default_prec, window)


@lru_cache(maxsize=None)
def outer_ring(
    a: Fraction = Fraction(-1),
    b: Fraction = Fraction(-1),
    depth: int = DEFAULT_DEPTH,
    default_prec: int = DEFAULT_PREC,
    window: int = DEFAULT_WINDOW,
) -> SeriesRing:
    """The shift-twisted series ring over the depth-limited tower.

    Elements are TruncSeries in the outer variable t whose coefficients are
    tower elements; multiplication obeys t u = shift(u) t.
    """
    return series_ring(
        tower_ring(a, b, depth, default_prec, window),
        TowerShift(1),
        "t",
        default_prec,
        window,
    )


def lift_series_to_outer(x: TruncSeries, outer: SeriesRing) -> TruncSeries:
    """Embed a series with quaternion coefficients into the outer ring.

    The shift fixes the coefficient division ring, so sending each
    quaternion coefficient to a tower constant is a ring embedding.
    """
    tower = outer.base
    if not isinstance(tower, TowerRing):
        raise RingMismatchError("target is not an outer ring")
    if not isinstance(x.ring.base, QuatAlgebra) or x.ring.base != tower.algebra:
        raise RingMismatchError("series coefficients do not match the tower algebra")
    if not isinstance(x.ring.twist, Identity):
        raise RingMismatchError("only untwisted series embed into the outer ring")
    return outer.make({d: tower.constant(c) for d, c in x.coeffs.items()}, x.prec)


def truncate(x: TruncSeries, prec: int) -> TruncSeries:
    """Forget knowledge above ``prec`` (prec may only decrease)."""
    if prec > x.prec:
        raise InsufficientPrecisionError(
            f"cannot extend precision from {x.prec} to {prec}"
        )
    return x.ring.make(dict(x.coeffs), prec)


# ---------------------------------------------------------------------------
# Commutation probes


def commutes_to_prec(x: Any, y: Any, prec: int) -> bool:
    """True iff every known coefficient of xy - yx below ``prec`` vanishes.

    Raises InsufficientPrecisionError when either product cannot certify
    ``prec``.  For exact scalar rings the comparison is plain equality.
    """
    ring = same_ring(x, y)
    xy = ring.mul(x, y)
    yx = ring.mul(y, x)
    if isinstance(ring, (SeriesRing, TowerRing)):
        if xy.prec < prec or yx.prec < prec:
            raise InsufficientPrecisionError(
                f"commutation check at precision {prec} is not certified "
                f"(products known to {xy.prec} and {yx.prec})"
            )
        return ring.eq_to_prec(xy, yx, prec)
    return ring.is_zero(ring.sub(xy, yx))


@dataclass(frozen=True)
class CenterProbeVerdict:
    """Outcome of probing whether a candidate commutes with sample elements.

    Only NOT-CENTRAL is conclusive; CENTRAL-UP-TO-P merely records that no
    probe detected noncommutation below the stated precision.
    """

    status: str  # "CENTRAL-UP-TO-P" or "NOT-CENTRAL"
    precision: int
    failing_probe: Any = None
    note: str = ""

    @property
    def conclusive(self) -> bool:
        return self.status == "NOT-CENTRAL"


def center_probe(ring: Ring, candidate: Any, probes: Iterable[Any], prec: int) -> CenterProbeVerdict:
    """One-sided centrality test against a finite probe set."""
    probes = list(probes)
    if not probes:
        raise ValueError("center_probe needs at least one probe")
    ring.check(candidate)
    for probe in probes:
        ring.check(probe)
        if not commutes_to_prec(candidate, probe, prec):
            return CenterProbeVerdict(
                status="NOT-CENTRAL",
                precision=prec,
                failing_probe=probe,
                note="conclusive: a probe fails to commute at the stated precision",
            )
    return CenterProbeVerdict(
        status="CENTRAL-UP-TO-P",
        precision=prec,
        failing_probe=None,
        note=(
            "one-sided: candidate commuted with every supplied probe below "
            f"precision {prec}; this does not prove centrality"
        ),
    )


# ---------------------------------------------------------------------------
# Flattening to rational vectors (for exact rank computations)


def _scalar_components(base: Ring, c: Any) -> list[Fraction]:
    if isinstance(base, RationalField):
        return [c]
    if isinstance(base, QuadField):
        return [c.u, c.v]
    if isinstance(base, QuatAlgebra):
        return [c.w, c.x, c.y, c.z]
    raise TypeError(f"cannot flatten coefficients of {base.describe()}")


def series_to_vector(x: TruncSeries, lo: int, hi: int) -> list[Fraction]:
    """Stack the coordinates of the coefficients of degrees lo..hi-1.

    All requested degrees must be certified (hi <= prec).
    """
    if hi > x.prec:
        raise InsufficientPrecisionError(
            f"vectorization up to degree {hi} exceeds precision {x.prec}"
        )
    base = x.ring.base
    out: list[Fraction] = []
    for d in range(lo, hi):
        out.extend(_scalar_components(base, x.coeffs.get(d, base.zero())))
    return out
