import random
from fractions import Fraction

import pytest

from grilab import (
    NotDivisionRingError,
    ZeroElementError,
    ZeroInverseError,
    central_order,
    commutator,
    min_poly,
    quat_algebra,
)
from grilab.sampling import sample_quaternion

H = quat_algebra()  # (-1, -1): Hamilton quaternions over Q


# Independent oracle: the full basis product table of H(a,b), written out
# from the defining relations by hand (k = ij, ji = -k, etc).
def _basis_table(a, b):
    one, i, j, k = "1ijk"
    return {
        (one, one): {one: 1}, (one, i): {i: 1}, (one, j): {j: 1}, (one, k): {k: 1},
        (i, one): {i: 1}, (i, i): {one: a}, (i, j): {k: 1}, (i, k): {j: a},
        (j, one): {j: 1}, (j, i): {k: -1}, (j, j): {one: b}, (j, k): {i: -b},
        (k, one): {k: 1}, (k, i): {j: -a}, (k, j): {i: b}, (k, k): {one: -a * b},
    }


def _oracle_mul(p, q, a, b):
    table = _basis_table(a, b)
    coords = {"1": 0, "i": 0, "j": 0, "k": 0}
    p_map = dict(zip("1ijk", (p.w, p.x, p.y, p.z)))
    q_map = dict(zip("1ijk", (q.w, q.x, q.y, q.z)))
    for e1, c1 in p_map.items():
        for e2, c2 in q_map.items():
            for basis, sign in table[(e1, e2)].items():
                coords[basis] += c1 * c2 * sign
    return H.element(coords["1"], coords["i"], coords["j"], coords["k"])


def test_defining_relations():
    i, j, k = H.i, H.j, H.k
    assert i * j == k
    assert j * i == -k
    assert i * i == H.from_rational(Fraction(-1))
    assert k * k == H.from_rational(Fraction(-1))
    assert (1 + i) * (1 - i) == H.from_rational(Fraction(2))


def test_mul_example_against_oracle():
    p = H.one() + H.i + H.j
    q = H.one() - H.k
    expected = _oracle_mul(p, q, Fraction(-1), Fraction(-1))
    assert p * q == expected
    assert p * q == H.element(1, 0, 2, -1)  # 1 + 2j - k


def test_mul_random_against_oracle_various_params():
    rng = random.Random(23)
    for a, b in ((Fraction(-1), Fraction(-1)), (Fraction(2), Fraction(-3)),
                 (Fraction(1, 2), Fraction(-5, 3))):
        algebra = quat_algebra(a, b)
        for _ in range(50):
            p = sample_quaternion(algebra, rng, 8)
            q = sample_quaternion(algebra, rng, 8)
            got = algebra.mul(p, q)
            table = _basis_table(a, b)
            coords = {"1": 0, "i": 0, "j": 0, "k": 0}
            for e1, c1 in zip("1ijk", (p.w, p.x, p.y, p.z)):
                for e2, c2 in zip("1ijk", (q.w, q.x, q.y, q.z)):
                    for basis, sign in table[(e1, e2)].items():
                        coords[basis] += c1 * c2 * sign
            assert got == algebra.element(
                coords["1"], coords["i"], coords["j"], coords["k"]
            )


def test_associativity_random():
    rng = random.Random(29)
    for _ in range(100):
        p, q, r = (sample_quaternion(H, rng, 9) for _ in range(3))
        assert (p * q) * r == p * (q * r)


def test_inverse_examples():
    assert H.inv(H.one() + H.i) == H.element(Fraction(1, 2), Fraction(-1, 2), 0, 0)
    assert H.inv(H.j) == -H.j
    with pytest.raises(ZeroInverseError):
        H.inv(H.zero())
    split = quat_algebra(Fraction(1), Fraction(1))
    with pytest.raises(NotDivisionRingError):
        split.inv(split.one() + split.i)  # nrd = 1 - 1 = 0: zero divisor


def test_min_poly():
    five = H.from_rational(Fraction(5))
    assert min_poly(five) == (1, (Fraction(-5), Fraction(1)))
    deg, coeffs = min_poly(H.one() + H.i)
    assert deg == 2 and coeffs == (Fraction(2), Fraction(-2), Fraction(1))
    assert min_poly(H.i) == (2, (Fraction(1), Fraction(0), Fraction(1)))
    # The returned polynomial annihilates the element exactly.
    rng = random.Random(31)
    for _ in range(100):
        q = sample_quaternion(H, rng, 10)
        deg, coeffs = min_poly(q)
        acc = H.zero()
        power = H.one()
        for c in coeffs:
            acc = H.add(acc, H.mul(H.from_rational(c), power))
            power = H.mul(power, q)
        assert acc.is_zero()


def test_is_central():
    assert H.from_rational(Fraction(7, 3)).is_central()
    assert not H.i.is_central()
    assert H.zero().is_central()


def test_cayley_hamilton_random():
    rng = random.Random(37)
    for _ in range(500):
        q = sample_quaternion(H, rng, 10)
        lhs = q * q - H.from_rational(q.trd()) * q + H.from_rational(q.nrd())
        assert lhs.is_zero()


def test_nrd_multiplicative_random():
    rng = random.Random(41)
    for _ in range(200):
        p = sample_quaternion(H, rng, 10)
        q = sample_quaternion(H, rng, 10)
        assert (p * q).nrd() == p.nrd() * q.nrd()


def test_anisotropic_norm_default_params():
    rng = random.Random(43)
    for _ in range(500):
        q = sample_quaternion(H, rng, 10, unit=True)
        assert q.nrd() > 0


def test_central_order_examples():
    assert central_order(H.i, 4) == 2
    assert central_order(H.one() + H.i, 10) == 4
    assert central_order(H.one() + 2 * H.i, 10) is None
    with pytest.raises(ZeroElementError):
        central_order(H.zero(), 5)


def test_central_order_consistency():
    rng = random.Random(47)
    found = 0
    for _ in range(300):
        q = sample_quaternion(H, rng, 3, unit=True)
        n = central_order(q, 12)
        if n is None:
            continue
        found += 1
        power = H.one()
        for m in range(1, n + 1):
            power = power * q
            if m < n:
                assert not power.is_central()
        assert power.is_central()
    assert found > 0  # centrals and small roots of unity do occur at height 3


def _has_rational_angle(q) -> bool:
    # Niven's theorem, applied to 2*theta: for nonzero q in H(-1,-1) with
    # cos(theta) = w / sqrt(nrd), some power of q is central iff
    # cos(2 theta) = 2 w^2/nrd - 1 lies in {0, +-1/2, +-1}.
    c2 = 2 * q.w * q.w / q.nrd() - 1
    return c2 in (Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1))


def test_central_order_matches_niven_oracle():
    rng = random.Random(53)
    for _ in range(400):
        q = sample_quaternion(H, rng, 6, unit=True)
        bounded = central_order(q, 12) is not None
        assert bounded == _has_rational_angle(q)


def test_commutator_examples():
    assert commutator(H.i, H.j) == H.from_rational(Fraction(-1))
    p = H.one() + H.i + 3 * H.k
    assert commutator(p, p) == H.one()
    c = commutator(H.one() + H.i, H.one() + 2 * H.j)
    assert c == H.element(Fraction(1, 5), Fraction(4, 5), Fraction(-2, 5), Fraction(2, 5))
    assert c.nrd() == 1
    assert c.trd() == Fraction(2, 5)
    with pytest.raises(ZeroElementError):
        commutator(H.zero(), H.i)


def test_commutator_norm_one_random():
    rng = random.Random(59)
    for _ in range(200):
        p = sample_quaternion(H, rng, 10, unit=True)
        q = sample_quaternion(H, rng, 10, unit=True)
        assert commutator(p, q).nrd() == 1
