import random
from fractions import Fraction

import mpmath
import pytest

from centalg.cyclo import ComplexBall, CyclotomicNumber as Cyc, ONE, ZERO
from centalg.errors import DivisionByZero


def test_i_squared():
    z4 = Cyc.zeta(4)
    assert z4 * z4 == -1


def test_vanishing_root_sum():
    z3 = Cyc.zeta(3)
    assert 1 + z3 + z3 ** 2 == ZERO


def test_quadratic_surd_product():
    # (-1 - i*sqrt7)/2 * (-1 + i*sqrt7)/2 = (1 + 7)/4 = 2, in Q(zeta28)
    g = Cyc.gauss_sum(7).lift(28)
    assert g * g == -7
    assert ((-1 - g) / 2) * ((-1 + g) / 2) == 2


def test_conjugation():
    z3 = Cyc.zeta(3)
    assert z3.conjugate() == Cyc.zeta(3, 2)
    g = Cyc.gauss_sum(7)
    v = (-3 + g) / 4
    assert v.conjugate() == (-3 - g) / 4
    q = Cyc.from_rational(Fraction(5, 3))
    assert q.conjugate() == q


def test_unit_norm():
    assert Cyc.zeta(5).has_unit_norm()
    g = Cyc.gauss_sum(7)
    assert ((-3 + g) / 4).has_unit_norm()
    assert not Cyc.from_rational(Fraction(1, 2)).has_unit_norm()


def test_embed():
    b = Cyc.zeta(4).embed(64)
    assert b.contains(mpmath.mpc(0, 1))
    assert b.rad < mpmath.mpf(2) ** -60
    g = Cyc.gauss_sum(7).lift(28)
    b = g.embed(128)
    with mpmath.workprec(200):
        assert b.contains(mpmath.mpc(0, mpmath.sqrt(7)))
    assert ZERO.embed(64).rad == 0


def test_division():
    x = Cyc.zeta(21, 5) + Fraction(2, 3)
    assert x / x == 1
    assert x.inverse() * x == 1
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


def test_minimal_order():
    assert (Cyc.zeta(4) ** 2).minimal_order() == 1
    assert Cyc.zeta(6).minimal_order() == 3  # -zeta3^2
    assert Cyc.gauss_sum(5).minimal_order() == 5


def test_root_of_unity_detection():
    assert Cyc.zeta(8).is_root_of_unity()
    assert Cyc.zeta(8).root_order() == 8
    assert (-ONE).root_order() == 2
    assert not (Cyc.from_rational(2)).is_root_of_unity()


def _random_cyc(rng, order):
    return Cyc(order, {rng.randrange(order): Fraction(rng.randrange(-4, 5),
                                                      rng.randrange(1, 4))
                       for _ in range(3)})


def test_ring_axioms_sampled():
    rng = random.Random(0)
    for _ in range(40):
        m = rng.choice([3, 4, 5, 6, 8, 12])
        a, b, c = (_random_cyc(rng, m) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_conjugation_is_automorphism():
    rng = random.Random(1)
    for _ in range(30):
        m = rng.choice([5, 7, 9, 12])
        a, b = _random_cyc(rng, m), _random_cyc(rng, m)
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a


def test_embed_respects_arithmetic():
    rng = random.Random(2)
    for _ in range(20):
        m = rng.choice([4, 5, 7, 12])
        a, b = _random_cyc(rng, m), _random_cyc(rng, m)
        prod = (a * b).embed(128)
        sep = a.embed(128) * b.embed(128)
        assert prod.overlaps(sep)


def test_canonicality():
    rng = random.Random(3)
    for _ in range(30):
        a = _random_cyc(rng, 12)
        assert (a - a).is_zero()
        assert a - a == ZERO
    # structural equality equals value equality across orders
    assert Cyc.zeta(3).lift(12) == Cyc.zeta(3)
    assert hash(Cyc.zeta(3).lift(12)) == hash(Cyc.zeta(3))


def test_json_roundtrip():
    g = (Cyc.gauss_sum(7) + Fraction(1, 2)) / 3
    data = g.to_json()
    assert Cyc.from_json(data) == g


def test_ball_arithmetic():
    a = ComplexBall(mpmath.mpc(1, 2), 1e-30, 128)
    b = ComplexBall(mpmath.mpc(3, -1), 1e-30, 128)
    c = a * b + a
    assert c.contains(mpmath.mpc(1, 2) * mpmath.mpc(3, -1) + mpmath.mpc(1, 2))
    assert (a - a).contains_zero()
    assert a.abs_squared().contains(5)
    d = a / a
    assert d.contains(1)
    s = ComplexBall(mpmath.mpc(5), 0, 128).sqrt()
    with mpmath.workprec(200):
        assert s.contains(mpmath.sqrt(mpmath.mpf(5)))
