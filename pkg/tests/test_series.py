import random
from fractions import Fraction

import pytest

from grilab import (
    InsufficientPrecisionError,
    NotInvertibleError,
    QuadConjugation,
    RingMismatchError,
    WindowOverflowError,
    ZeroLeadingTermError,
    center_probe,
    commutes_to_prec,
    lift_series_to_outer,
    outer_ring,
    quad_field,
    quat_algebra,
    rational_field,
    sample_element,
    series_inv,
    series_mul,
    series_ring,
    tower_ring,
    tower_shift,
    truncate,
)
from grilab.sampling import SampleSpec, sample_quaternion

H = quat_algebra()
QQ = rational_field()
Qi = quad_field(Fraction(-1))


def test_untwisted_product_example():
    S = series_ring(QQ)
    x = S.one() + S.t()
    y = S.one() - S.t()
    p = x * y
    assert p.coefficient(0) == 1
    assert p.coefficient(1) == 0
    assert p.coefficient(2) == -1
    # both factors exact to the window, so the product is too
    assert p.prec == min(x.prec + y.min_deg, y.prec + x.min_deg)


def test_product_precision_rule():
    S = series_ring(QQ)
    x = S.make({0: Fraction(1), 1: Fraction(2)}, 5)   # known to t^5
    y = S.make({2: Fraction(3)}, 9)                    # valuation 2, known to t^9
    p = S.mul(x, y)
    assert p.prec == min(5 + 2, 9 + 0)
    assert p.min_deg == 2
    assert p.coefficient(2) == 3
    assert p.coefficient(3) == 6


def test_twisted_product_quad_conjugation():
    S = series_ring(Qi, QuadConjugation())
    i_t = S.monomial(Qi.generator(), 1)
    sq = i_t * i_t  # i * conj(i) = i * (-i) = 1, so (it)(it) = t^2
    assert sq.coefficient(2) == Qi.one()
    assert sq.min_deg == 2


def test_geometric_series_inverse():
    S = series_ring(QQ)
    y = S.make({0: Fraction(1), 1: Fraction(-1)}, 12)
    inv = series_inv(y)
    assert inv.prec == 12
    for d in range(12):
        assert inv.coefficient(d) == 1
    assert S.eq_to_prec(S.mul(y, inv), S.one(), 12)


def test_quaternion_series_inverse_example():
    # (j + t)^-1 = -j + t + j t^2 - t^3 - j t^4 + ... in untwisted H((t))
    S = series_ring(H)
    x = S.add(S.constant(H.j), S.t(prec=12))
    inv = series_inv(x)
    assert inv.coefficient(0) == -H.j
    assert inv.coefficient(1) == H.one()
    assert inv.coefficient(2) == H.j
    assert inv.coefficient(3) == -H.one()
    assert S.eq_to_prec(S.mul(x, inv), S.one(), 11)
    assert S.eq_to_prec(S.mul(inv, x), S.one(), 11)


def test_inverse_of_unknown_leading_term_errors():
    S = series_ring(QQ)
    zero_prefix = S.make({}, 6)  # all known coefficients vanish
    with pytest.raises(ZeroLeadingTermError):
        series_inv(zero_prefix)


def test_inverse_contract_random_all_bases():
    rng = random.Random(61)
    rings = [
        series_ring(QQ),
        series_ring(Qi, QuadConjugation()),
        series_ring(H),
    ]
    for S in rings:
        for k in range(30):
            deg_lo = -1 if k % 3 == 0 else 0
            x = sample_element(
                S, rng, SampleSpec(height=6, deg_lo=deg_lo, deg_hi=2, prec=10, unit=True)
            )
            inv = series_inv(x)
            prod = S.mul(x, inv)
            certified = prod.prec
            assert certified >= 8
            assert S.eq_to_prec(prod, S.one(), certified)
            prod2 = S.mul(inv, x)
            assert S.eq_to_prec(prod2, S.one(), prod2.prec)


def test_precision_soundness_distributivity():
    rng = random.Random(67)
    for S in (series_ring(QQ), series_ring(Qi, QuadConjugation()), series_ring(H)):
        for _ in range(40):
            x = sample_element(S, rng, SampleSpec(height=5, deg_lo=-1, deg_hi=2, prec=9))
            y = sample_element(S, rng, SampleSpec(height=5, deg_lo=0, deg_hi=3, prec=11))
            z = sample_element(S, rng, SampleSpec(height=5, deg_lo=-2, deg_hi=1, prec=10))
            lhs = S.mul(S.add(x, y), z)
            rhs = S.add(S.mul(x, z), S.mul(y, z))
            joint = min(lhs.prec, rhs.prec)
            assert S.eq_to_prec(lhs, rhs, joint)


def test_twist_coherence():
    # (t a) b = t (a b) both rewrite through the twist, so they agree exactly
    # when phi(ab) = phi(a) phi(b); check both statements.
    rng = random.Random(71)
    S = series_ring(Qi, QuadConjugation())
    t = S.t(prec=10)
    for _ in range(50):
        a = Qi.element(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        b = Qi.element(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        lhs = S.mul(S.mul(t, S.constant(a)), S.constant(b))
        rhs = S.mul(t, S.constant(Qi.mul(a, b)))
        assert S.eq_to_prec(lhs, rhs, min(lhs.prec, rhs.prec))
        assert Qi.mul(Qi.conjugate(a), Qi.conjugate(b)) == Qi.conjugate(Qi.mul(a, b))


def test_series_mismatch():
    S1 = series_ring(QQ)
    S2 = series_ring(H)
    with pytest.raises(RingMismatchError):
        series_mul(S1.one(), S2.one())


def test_window_bound_enforced():
    S = series_ring(QQ)
    with pytest.raises(WindowOverflowError):
        S.make({0: Fraction(1)}, 100)  # extent 100 > window 64


def test_commutes_to_prec():
    S = series_ring(Qi, QuadConjugation())
    t2 = S.monomial(Qi.one(), 2, prec=14)
    i_const = S.constant(Qi.generator())
    assert commutes_to_prec(t2, i_const, 12)
    t = S.t(prec=6)
    assert not commutes_to_prec(t, i_const, 4)
    one = S.one()
    assert commutes_to_prec(one, t2, 10)
    with pytest.raises(InsufficientPrecisionError):
        commutes_to_prec(t, i_const, 40)


def test_tower_shift_examples():
    T = tower_ring()  # depth 2
    t0 = T.variable(0)
    assert tower_shift(t0, 1) == T.variable(1)
    q = T.constant(sample_quaternion(H, random.Random(3), 5))
    assert tower_shift(q, 1) == q
    T1 = tower_ring(depth=1)
    with pytest.raises(WindowOverflowError) as err:
        tower_shift(T1.variable(1), 1)
    assert err.value.index == 2


def test_tower_shift_homomorphism():
    rng = random.Random(73)
    T = tower_ring()
    spec = SampleSpec(height=5, idx_lo=-1, idx_hi=1, n_terms=2, prec=10)
    for _ in range(40):
        x = sample_element(T, rng, spec)
        y = sample_element(T, rng, spec)
        lhs = tower_shift(T.mul(x, y), 1)
        rhs = T.mul(tower_shift(x, 1), tower_shift(y, 1))
        assert T.eq_to_prec(lhs, rhs, min(lhs.prec, rhs.prec))


def test_tower_inverse_dominant_monomial():
    T = tower_ring()
    x = T.add(T.constant(H.j), T.monomial(H.i, {0: 1}, prec=9))
    inv = T.inv(x)
    prod = T.mul(x, inv)
    assert T.eq_to_prec(prod, T.one(), prod.prec)
    tied = T.add(T.variable(0, prec=9), T.variable(1, prec=9))
    with pytest.raises(NotInvertibleError):
        T.inv(tied)


def test_outer_twist_rule():
    O = outer_ring()  # depth 2
    T = O.base
    t = O.t()
    t0 = O.constant(T.variable(0))
    t1 = O.constant(T.variable(1))
    lhs = O.mul(t, t0)
    rhs = O.mul(t1, t)
    assert O.eq_to_prec(lhs, rhs, 10)
    # a pure quaternion constant is fixed by the twist
    q = O.constant(T.constant(H.j))
    assert O.eq_to_prec(O.mul(t, q), O.mul(q, t), 10)


def test_outer_associativity_random():
    rng = random.Random(79)
    O = outer_ring()
    spec = SampleSpec(height=4, deg_lo=0, deg_hi=1, idx_lo=-2, idx_hi=0,
                      n_terms=2, prec=8)
    for _ in range(25):
        x, y, z = (sample_element(O, rng, spec) for _ in range(3))
        lhs = O.mul(O.mul(x, y), z)
        rhs = O.mul(x, O.mul(y, z))
        assert O.eq_to_prec(lhs, rhs, min(lhs.prec, rhs.prec))


def test_outer_inverse_contract():
    # Inverting to precision P repeatedly shifts every tower variable in the
    # element, so genuinely tower-valued inputs only invert when P fits the
    # window (P <= depth + 1); variable-free inputs invert at any precision.
    rng = random.Random(83)
    O = outer_ring()
    spec = SampleSpec(height=4, deg_lo=0, deg_hi=1, idx_lo=-2, idx_hi=0,
                      n_terms=2, prec=3, unit=True)
    for _ in range(15):
        x = sample_element(O, rng, spec)
        inv = O.inv(x)
        prod = O.mul(x, inv)
        assert O.eq_to_prec(prod, O.one(), prod.prec)
    S = series_ring(H)
    for _ in range(10):
        inner = sample_element(S, rng, SampleSpec(height=5, deg_lo=0, deg_hi=2,
                                                  prec=9, unit=True))
        x = lift_series_to_outer(inner, O)
        inv = O.inv(x)
        prod = O.mul(x, inv)
        assert prod.prec == 9
        assert O.eq_to_prec(prod, O.one(), 9)


def test_center_probe_examples():
    S = series_ring(H)
    probes = [S.constant(H.i), S.constant(H.j), S.constant(H.one() + H.k)]
    verdict = center_probe(S, S.t(prec=12), probes, 10)
    assert verdict.status == "CENTRAL-UP-TO-P"
    assert not verdict.conclusive
    assert "one-sided" in verdict.note
    verdict = center_probe(S, S.constant(H.i), probes, 10)
    assert verdict.status == "NOT-CENTRAL"
    assert verdict.conclusive
    assert verdict.failing_probe == S.constant(H.j)

    O = outer_ring()
    T = O.base
    verdict = center_probe(O, O.constant(T.variable(0)), [O.t()], 8)
    assert verdict.status == "NOT-CENTRAL"
    with pytest.raises(ValueError):
        center_probe(S, S.one(), [], 10)


def test_center_branch_families():
    # order-2 twist: rational even-degree series commute, t / i t^2 / i fail
    S2 = series_ring(Qi, QuadConjugation())
    rng = random.Random(89)
    probes = [S2.constant(Qi.generator()), S2.t(prec=16)] + [
        sample_element(S2, rng, SampleSpec(height=5, prec=16)) for _ in range(4)
    ]
    for _ in range(20):
        coeffs = {2 * k: Qi.from_rational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                  for k in range(4)}
        candidate = S2.make(coeffs, 16)
        assert center_probe(S2, candidate, probes, 12).status == "CENTRAL-UP-TO-P"
    for bad in (S2.t(prec=16), S2.constant(Qi.generator()),
                S2.monomial(Qi.generator(), 2, prec=16)):
        assert center_probe(S2, bad, probes, 12).status == "NOT-CENTRAL"

    # untwisted quaternion series: rational series commute, i fails
    S1 = series_ring(H)
    probes1 = [S1.constant(H.i), S1.constant(H.j), S1.t(prec=16)] + [
        sample_element(S1, rng, SampleSpec(height=5, prec=16)) for _ in range(4)
    ]
    for _ in range(20):
        coeffs = {k: H.from_rational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                  for k in range(5)}
        candidate = S1.make(coeffs, 16)
        assert center_probe(S1, candidate, probes1, 12).status == "CENTRAL-UP-TO-P"
    assert center_probe(S1, S1.constant(H.i), probes1, 12).status == "NOT-CENTRAL"


def test_lift_and_truncate():
    S = series_ring(H)
    O = outer_ring()
    x = S.add(S.constant(H.i), S.t(prec=9))
    lifted = lift_series_to_outer(x, O)
    assert lifted.prec == 9
    cut = truncate(lifted, 3)
    assert cut.prec == 3
    with pytest.raises(InsufficientPrecisionError):
        truncate(cut, 5)
    # embedding respects multiplication
    y = S.add(S.constant(H.j), S.t(prec=9))
    lhs = lift_series_to_outer(S.mul(x, y), O)
    rhs = O.mul(lift_series_to_outer(x, O), lift_series_to_outer(y, O))
    assert O.eq_to_prec(lhs, rhs, min(lhs.prec, rhs.prec))


def test_zero_is_annihilating_and_precision_neutral():
    S = series_ring(H)
    x = S.make({0: H.i, 3: H.j}, 7)
    assert S.add(x, S.zero()).prec == 7
    assert S.mul(x, S.zero()).coeffs == {}
    assert S.is_zero(S.mul(S.zero(), x))


def test_coefficient_access_guard():
    S = series_ring(QQ)
    x = S.make({0: Fraction(1)}, 4)
    assert x.coefficient(3) == 0
    with pytest.raises(InsufficientPrecisionError):
        x.coefficient(4)
