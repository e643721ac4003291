"""The algebraicity polynomial g_n, its evaluators, and randomized testing.

g_n(x, y_1, ..., y_n) is the alternating sum, over all permutations d of
{0, ..., n}, of sign(d) * x^d(0) y_1 x^d(1) ... y_n x^d(n).  Its identical
vanishing in the first argument, over all substitutions for the y's,
characterizes bounded algebraic degree over the center:

    g_n(a, .) == 0 identically  <=>  deg(a) <= n over the center.

(The inclusive bound is the convention adopted throughout; it is what the
brute-force expansions confirm, e.g. g_2 vanishes identically exactly when
a^2 is central.)

Two evaluators are provided: a direct (n+1)!-term summation and a
subset dynamic program with 2^(n+1) memo entries.  The DP derives
permutation signs by counting inversions left to right; its correctness is
enforced by the cross-evaluator equivalence tests rather than trusted.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable

from .errors import ResampleCapExhaustedError, SizeLimitError
from .expr import (
    Environment,
    EvalOutcome,
    ExprAst,
    Negation,
    NonPermissible,
    Power,
    Product,
    Sum,
    Variable,
    eval_expr,
    free_vars,
)
from .linalg import exact_rank
from .quaternions import QuatAlgebra, Quaternion, min_poly
from .rings import Ring, ring_of, same_ring
from .sampling import SampleSpec, sample_element
from .series import TruncSeries, series_to_vector

GN_AST_LIMIT = 7
GN_NAIVE_LIMIT = 7
GN_DP_LIMIT = 24


def _perm_sign(delta: tuple[int, ...]) -> int:
    inversions = 0
    for i in range(len(delta)):
        for j in range(i + 1, len(delta)):
            if delta[i] > delta[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


def build_gn(n: int) -> ExprAst:
    """Explicit AST of g_n in variables x, y1, ..., yn.

    Power-zero factors are omitted (they are the constant 1) and power-one
    factors appear as the bare variable, so build_gn(1) is y1*x - x*y1.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n > GN_AST_LIMIT:
        raise SizeLimitError(
            f"explicit AST limited to n <= {GN_AST_LIMIT} "
            f"({math.factorial(GN_AST_LIMIT + 1)} terms); use eval_gn_dp instead"
        )
    x = Variable("x")
    ys = [Variable(f"y{i}") for i in range(1, n + 1)]
    terms = []
    for delta in permutations(range(n + 1)):
        factors: list[ExprAst] = []

        def push_power(p: int) -> None:
            if p == 1:
                factors.append(x)
            elif p >= 2:
                factors.append(Power(x, p))

        push_power(delta[0])
        for idx in range(n):
            factors.append(ys[idx])
            push_power(delta[idx + 1])
        node: ExprAst = factors[0] if len(factors) == 1 else Product(tuple(factors))
        terms.append(Negation(node) if _perm_sign(delta) < 0 else node)
    return Sum(tuple(terms))


# ---------------------------------------------------------------------------
# Evaluators


def _powers(a: Any, n: int, one: Any, mul: Callable) -> list[Any]:
    powers = [one]
    for _ in range(n):
        powers.append(mul(powers[-1], a))
    return powers


def _gn_naive_core(powers, ys, add, neg, mul):
    n = len(ys)
    total = None
    for delta in permutations(range(n + 1)):
        prod = powers[delta[0]]
        for idx in range(n):
            prod = mul(mul(prod, ys[idx]), powers[delta[idx + 1]])
        if _perm_sign(delta) < 0:
            prod = neg(prod)
        total = prod if total is None else add(total, prod)
    return total


def _gn_dp_core(powers, ys, one, add, neg, mul):
    """Subset DP: G({}) = 1 and, for a nonempty S of remaining exponents,

        G(S) = sum over p in S of
               (-1)^(number of q in S with q < p) * powers[p] * (y * G(S-p))

    where y is y_{n+2-|S|} (no y factor when |S| = 1).  The answer is
    G({0..n}); the sign rule accumulates sign(d) as left-to-right inversion
    counts.  Subsets are bitmasks, so every G(S-p) is already memoized when
    mask S is processed in increasing numeric order.
    """
    n = len(ys)
    full = (1 << (n + 1)) - 1
    memo: list[Any] = [None] * (full + 1)
    memo[0] = one
    for mask in range(1, full + 1):
        size = bin(mask).count("1")
        y = ys[n + 1 - size] if size >= 2 else None
        acc = None
        rest = mask
        while rest:
            low = rest & -rest
            p = low.bit_length() - 1
            rest ^= low
            sub = memo[mask ^ low]
            term = mul(powers[p], mul(y, sub)) if y is not None else powers[p]
            if bin(mask & (low - 1)).count("1") & 1:
                term = neg(term)
            acc = term if acc is None else add(acc, term)
        memo[mask] = acc
    return memo[full]


def _int_quat_context(a: Quaternion, ys: list[Quaternion], ring: QuatAlgebra):
    """Denominator-cleared integer-tuple arithmetic for quaternion inputs.

    g_n is homogeneous of degree n(n+1)/2 in its first argument (every term
    carries the full power sum 0+1+...+n) and multilinear in each y, so
    scaling the inputs to integer coordinates rescales the value by a known
    central rational.  Only used when the structure constants are integers.
    """
    pa, pb = ring.params.a, ring.params.b
    if pa.denominator != 1 or pb.denominator != 1:
        return None
    ia, ib = int(pa), int(pb)

    def clear(q: Quaternion) -> tuple[tuple[int, int, int, int], int]:
        lam = 1
        for c in (q.w, q.x, q.y, q.z):
            lam = lam * c.denominator // math.gcd(lam, c.denominator)
        return (
            int(q.w * lam), int(q.x * lam), int(q.y * lam), int(q.z * lam)
        ), lam

    def mul(p, q):
        w1, x1, y1, z1 = p
        w2, x2, y2, z2 = q
        return (
            w1 * w2 + ia * x1 * x2 + ib * y1 * y2 - ia * ib * z1 * z2,
            w1 * x2 + x1 * w2 - ib * y1 * z2 + ib * z1 * y2,
            w1 * y2 + y1 * w2 + ia * x1 * z2 - ia * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )

    def add(p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3])

    def neg(p):
        return (-p[0], -p[1], -p[2], -p[3])

    n = len(ys)
    a_int, lam_a = clear(a)
    ys_int = []
    denom = lam_a ** (n * (n + 1) // 2)
    for y in ys:
        y_int, lam_y = clear(y)
        ys_int.append(y_int)
        denom *= lam_y
    scale = Fraction(1, denom)

    def finish(value: tuple[int, int, int, int]) -> Quaternion:
        return ring.element(*(Fraction(c) * scale for c in value))

    return a_int, ys_int, (1, 0, 0, 0), add, neg, mul, finish


def _check_gn_args(a: Any, ys: list[Any]) -> Ring:
    ring = ring_of(a)
    for y in ys:
        same_ring(a, y)
    if not ys:
        raise ValueError("at least one y argument is required")
    return ring


def eval_gn_naive(a: Any, ys: list[Any]) -> Any:
    """Direct (n+1)!-term evaluation with precomputed powers of a."""
    ring = _check_gn_args(a, ys)
    n = len(ys)
    if n > GN_NAIVE_LIMIT:
        raise SizeLimitError(
            f"naive evaluation limited to n <= {GN_NAIVE_LIMIT}; use eval_gn_dp"
        )
    if isinstance(ring, QuatAlgebra):
        ctx = _int_quat_context(a, ys, ring)
        if ctx is not None:
            a_int, ys_int, one, add, neg, mul, finish = ctx
            powers = _powers(a_int, n, one, mul)
            return finish(_gn_naive_core(powers, ys_int, add, neg, mul))
    powers = _powers(a, n, ring.one(), ring.mul)
    return _gn_naive_core(powers, ys, ring.add, ring.neg, ring.mul)


def eval_gn_dp(a: Any, ys: list[Any]) -> Any:
    """Subset-DP evaluation; agrees exactly with eval_gn_naive."""
    ring = _check_gn_args(a, ys)
    n = len(ys)
    if n > GN_DP_LIMIT:
        raise SizeLimitError(
            f"subset DP limited to n <= {GN_DP_LIMIT} (2^(n+1) memo entries)"
        )
    if isinstance(ring, QuatAlgebra):
        ctx = _int_quat_context(a, ys, ring)
        if ctx is not None:
            a_int, ys_int, one, add, neg, mul, finish = ctx
            powers = _powers(a_int, n, one, mul)
            return finish(_gn_dp_core(powers, ys_int, one, add, neg, mul))
    powers = _powers(a, n, ring.one(), ring.mul)
    return _gn_dp_core(powers, ys, ring.one(), ring.add, ring.neg, ring.mul)


# ---------------------------------------------------------------------------
# Randomized identity testing


@dataclass(frozen=True)
class Counterexample:
    """A permissible substitution on which the expression is provably nonzero."""

    substitution: dict[str, Any]
    value: Any


@dataclass(frozen=True)
class NoCounterexample:
    """Evidence only: no claim of proof."""

    permissible_trials: int
    skipped_nonpermissible: int


Verdict = Counterexample | NoCounterexample

RESAMPLE_FACTOR = 10


def is_gri_monte_carlo(
    e: ExprAst,
    env: Environment,
    trials: int,
    sampler: SampleSpec | None = None,
    seed: int | str = 0,
    jobs: int = 1,
) -> Verdict:
    """Test whether an expression looks like an identity under random draws.

    Runs until ``trials`` permissible substitutions evaluated to (certified)
    zero, or a counterexample appears.  Non-permissible draws are skipped
    and counted; the total draw budget is 10x trials, and exhausting it
    raises ResampleCapExhaustedError (the expression is non-permissible
    almost everywhere under the sampler).  Deterministic given the seed:
    trial k uses its own generator derived from (seed, k), so verdicts are
    independent of scheduling even with jobs > 1.
    """
    if trials < 1:
        raise ValueError("trials must be a positive integer")
    sampler = sampler or SampleSpec()
    ring = env.ring
    names = sorted(name for name in free_vars(e) if name not in env.constants)
    budget = RESAMPLE_FACTOR * trials

    def run_trial(index: int) -> tuple[dict[str, Any], EvalOutcome]:
        rng = random.Random(f"{seed}:{index}")
        sub = {name: sample_element(ring, rng, sampler) for name in names}
        return sub, eval_expr(e, env, sub)

    permissible = 0
    skipped = 0
    index = 0
    executor = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while permissible < trials:
            if index >= budget:
                raise ResampleCapExhaustedError(
                    f"only {permissible} permissible substitutions in {index} draws "
                    f"({skipped} skipped as non-permissible); cap is "
                    f"{RESAMPLE_FACTOR}x trials",
                    draws=index,
                    skipped=skipped,
                )
            if executor is None:
                results = [run_trial(index)]
            else:
                chunk = min(jobs, budget - index)
                results = list(executor.map(run_trial, range(index, index + chunk)))
            for sub, outcome in results:
                index += 1
                if isinstance(outcome, NonPermissible):
                    skipped += 1
                    continue
                if ring.is_certified_nonzero(outcome.element):
                    return Counterexample(sub, outcome.element)
                permissible += 1
                if permissible >= trials:
                    break
    finally:
        if executor is not None:
            executor.shutdown(wait=False)
    return NoCounterexample(permissible, skipped)


# ---------------------------------------------------------------------------
# Algebraic-degree probing


@dataclass(frozen=True)
class IndependenceCertificate:
    """Exact witness that 1, a, ..., a^k are linearly independent over Q."""

    k: int
    rank: int


DEGREE_CONVENTION = "g_n(a,.) == 0 identically iff deg(a) <= n over the center"


@dataclass(frozen=True)
class DegreeProbeReport:
    least_vanishing: int | None
    counterexamples: dict[int, Any]  # k -> Counterexample | IndependenceCertificate
    min_poly_degree: int | None
    agrees_with_min_poly: bool | None
    mode: str  # "monte-carlo" | "rational-rank"
    convention: str = DEGREE_CONVENTION


def _power_vectors(a: Any, k: int) -> list[list[Fraction]]:
    """Rational coordinate vectors of 1, a, ..., a^k (exact)."""
    ring = ring_of(a)
    powers = [ring.one()]
    for _ in range(k):
        powers.append(ring.mul(powers[-1], a))
    if isinstance(a, Quaternion):
        return [[p.w, p.x, p.y, p.z] for p in powers]
    if isinstance(a, TruncSeries):
        lo = min(p.min_deg for p in powers)
        hi = min(p.prec for p in powers)
        top = max((max(p.coeffs, default=lo) for p in powers), default=lo) + 1
        hi = min(hi, top)
        return [series_to_vector(p, lo, hi) for p in powers]
    raise TypeError(f"no rational coordinates for elements of {ring.describe()}")


def algebraic_degree_probe(
    a: Any,
    env: Environment,
    n_max: int,
    trials: int = 50,
    seed: int | str = 0,
    sampler: SampleSpec | None = None,
    over_rationals: bool = False,
) -> DegreeProbeReport:
    """Probe the least k <= n_max with g_k(a, .) vanishing on all trials.

    Monte-Carlo mode draws the y's from the environment's ring, so it
    probes degree over that ring's center.  ``over_rationals`` switches to
    an exact mechanism for degree over Q itself: central substitutions make
    g_k vanish syntactically, so that question is decided instead by the
    rank of the stacked coordinate vectors of 1, a, ..., a^k (full rank
    k+1 certifies deg(a) > k, replacing a counterexample).

    For a quaternion input the report cross-checks the outcome against the
    exact minimal-polynomial degree under the adopted convention.
    """
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    ring = env.ring
    ring.check(a)
    sampler = sampler or SampleSpec()
    counterexamples: dict[int, Any] = {}
    least: int | None = None

    if over_rationals:
        mode = "rational-rank"
        for k in range(1, n_max + 1):
            rank = exact_rank(_power_vectors(a, k))
            if rank < k + 1:
                least = k
                break
            counterexamples[k] = IndependenceCertificate(k=k, rank=rank)
    else:
        mode = "monte-carlo"
        for k in range(1, n_max + 1):
            found = None
            for t in range(trials):
                rng = random.Random(f"{seed}:{k}:{t}")
                ys = [sample_element(ring, rng, sampler) for _ in range(k)]
                value = eval_gn_dp(a, ys)
                if ring.is_certified_nonzero(value):
                    found = Counterexample(
                        {f"y{i + 1}": y for i, y in enumerate(ys)}, value
                    )
                    break
            if found is None:
                least = k
                break
            counterexamples[k] = found

    degree = None
    agrees = None
    if isinstance(a, Quaternion):
        degree = min_poly(a)[0]
        agrees = (least == degree) if least is not None else (degree > n_max)
    return DegreeProbeReport(
        least_vanishing=least,
        counterexamples=counterexamples,
        min_poly_degree=degree,
        agrees_with_min_poly=agrees,
        mode=mode,
    )
