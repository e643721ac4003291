"""Bounded-height random elements for every registered ring kind.

Sampling is the substitution source for randomized identity testing, so it
is deterministic by contract: the same ``random.Random`` state produces the
same element, and callers derive per-trial generators from explicit seeds.
Heights are kept small by default so exact arithmetic stays fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from .quaternions import QuatAlgebra, Quaternion
from .rings import QuadField, RationalField, Ring
from .series import SeriesRing, TowerRing


@dataclass(frozen=True)
class SampleSpec:
    """Knobs for the element sampler.

    height       coordinate numerators in [-height, height], denominators
                 in [1, height]
    deg_lo/hi    series degrees carrying sampled coefficients (inclusive)
    idx_lo/hi    tower variable indices eligible for sampled monomials;
                 None defaults to [-depth, depth-1] so that one shift by
                 the outer variable cannot overflow the window
    n_terms      sampled monomials per tower element
    prec         precision stamped on sampled truncated values; None means
                 the ring default
    unit         force the sample to be invertible (nonzero, with an
                 invertible leading part for truncated values)
    """

    height: int = 10
    deg_lo: int = 0
    deg_hi: int = 3
    idx_lo: int | None = None
    idx_hi: int | None = None
    n_terms: int = 3
    prec: int | None = None
    unit: bool = False


def sample_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if not nonzero or value != 0:
            return value


def sample_quaternion(
    algebra: QuatAlgebra, rng: random.Random, height: int, unit: bool = False
) -> Quaternion:
    while True:
        q = algebra.element(*(sample_rational(rng, height) for _ in range(4)))
        if not unit:
            return q
        if not q.is_zero() and q.nrd() != 0:
            return q


def _sample_scalar(ring: Ring, rng: random.Random, height: int, unit: bool) -> Any:
    if isinstance(ring, RationalField):
        return sample_rational(rng, height, nonzero=unit)
    if isinstance(ring, QuadField):
        while True:
            x = ring.element(sample_rational(rng, height), sample_rational(rng, height))
            if not unit or not ring.is_zero(x):
                return x
    if isinstance(ring, QuatAlgebra):
        return sample_quaternion(ring, rng, height, unit=unit)
    raise TypeError(f"no scalar sampler for {ring.describe()}")


def _sample_tower(ring: TowerRing, rng: random.Random, spec: SampleSpec) -> Any:
    prec = spec.prec if spec.prec is not None else ring.default_prec
    idx_lo = max(spec.idx_lo if spec.idx_lo is not None else -ring.depth, -ring.depth)
    idx_hi = min(spec.idx_hi if spec.idx_hi is not None else ring.depth - 1, ring.depth)
    total = ring.zero()
    for _ in range(spec.n_terms):
        coeff = sample_quaternion(ring.algebra, rng, spec.height)
        # With a unit requested, keep sampled monomials at total degree >= 1
        # so the constant added below is the unique minimal term.
        n_vars = rng.randint(1 if spec.unit else 0, 2)
        exps: dict[int, int] = {}
        for _ in range(n_vars):
            exps[rng.randint(idx_lo, idx_hi)] = rng.randint(1, 2)
        total = ring.add(total, ring.monomial(coeff, exps, prec=prec))
    if spec.unit:
        const = sample_quaternion(ring.algebra, rng, spec.height, unit=True)
        total = ring.add(total, ring.monomial(const, None, prec=prec))
    return total


def sample_element(ring: Ring, rng: random.Random, spec: SampleSpec | None = None) -> Any:
    """Draw one bounded-height element of ``ring``.

    Deterministic in the rng state; never returns zero when ``spec.unit``
    is set (for truncated values the leading known part is invertible).
    """
    spec = spec or SampleSpec()
    if isinstance(ring, (RationalField, QuadField, QuatAlgebra)):
        return _sample_scalar(ring, rng, spec.height, spec.unit)
    if isinstance(ring, TowerRing):
        return _sample_tower(ring, rng, spec)
    if isinstance(ring, SeriesRing):
        prec = spec.prec if spec.prec is not None else ring.default_prec
        base = ring.base
        coeff_spec = replace(spec, prec=prec, unit=False)
        coeffs: dict[int, Any] = {}
        for deg in range(spec.deg_lo, spec.deg_hi + 1):
            if isinstance(base, TowerRing):
                coeffs[deg] = _sample_tower(base, rng, coeff_spec)
            else:
                coeffs[deg] = _sample_scalar(base, rng, spec.height, unit=False)
        if spec.unit:
            if isinstance(base, TowerRing):
                coeffs[spec.deg_lo] = _sample_tower(base, rng, replace(coeff_spec, unit=True))
            else:
                coeffs[spec.deg_lo] = _sample_scalar(base, rng, spec.height, unit=True)
        return ring.make(coeffs, prec)
    raise TypeError(f"no sampler for {ring.describe()}")
