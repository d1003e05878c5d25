import json
import random
from fractions import Fraction

import pytest

from monolink.exactcoef import (APoly, EpsScalar, LaurentQT, RatQT, _kron_mul, eps_orient,
                                series_nonneg)
from monolink.verify import rational_orient, truncated_series, truncation_oracle

q = LaurentQT.monomial((2, 0))
t = LaurentQT.monomial((0, 2))
a = APoly.monomial((1, 0, 0))


def rand_laurent(rng, n=4, span=3):
    return LaurentQT({(rng.randint(-span, span), rng.randint(-span, span)): rng.randint(-4, 4)
                      for _ in range(n)})


def rand_apoly(rng, n=4):
    return APoly({(rng.randint(-2, 2), rng.randint(-3, 3), rng.randint(-3, 3)): rng.randint(-4, 4)
                  for _ in range(n)})


def rand_rat(rng):
    den = [(1 - LaurentQT.monomial((0, 2 * rng.randint(1, 3)))), 1]
    return RatQT(rand_laurent(rng), [tuple(den)]) + RatQT(rand_laurent(rng, 2))


# -- ring axioms ----------------------------------------------------------------

@pytest.mark.parametrize("seed", range(20))
def test_laurent_ring_axioms(seed):
    rng = random.Random(seed)
    x, y, z = (rand_laurent(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == LaurentQT.const(0)
    m = LaurentQT.monomial((rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice((1, -1, 2)))
    assert m * (1 / m) == 1


@pytest.mark.parametrize("seed", range(20))
def test_apoly_ring_axioms(seed):
    rng = random.Random(100 + seed)
    x, y, z = (rand_apoly(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x + y) * z == x * z + y * z
    assert a * a ** -1 == 1


@pytest.mark.parametrize("seed", range(15))
def test_ratqt_field_axioms(seed):
    rng = random.Random(200 + seed)
    x, y, z = (rand_rat(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x
    if x:
        assert x * x.inverse() == RatQT(1) if x.num.is_monomial() else True
    u = RatQT(1 - t, [(1 - q * t, 2)])
    assert u * (RatQT(1) / u) == 1


def test_ratqt_equality_is_cross_multiplication():
    x = RatQT((1 - t) * (1 + t), [(1 - t, 1)])
    assert x == 1 + t
    assert RatQT(1 - t * t, [(1 - t, 1), (1 + t, 1)]) == 1
    assert RatQT(q, [(1 - t, 1)]) != RatQT(q, [(1 - t * t, 1)])


def test_half_powers():
    Q = LaurentQT.monomial((1, 0))
    assert Q * Q == q
    assert not Q.has_integer_powers() and q.has_integer_powers()
    assert (Q + t).swap_qt() == LaurentQT.monomial((0, 1)) + q


def test_substitutions():
    f = q ** 2 + 3 * q * t - t
    assert f.subs_t_inv_q() == q ** 2 + 3 - q ** -1
    assert f.at_t1() == q ** 2 + 3 * q - 1
    assert f.swap_qt() == t ** 2 + 3 * q * t - q


@pytest.mark.parametrize("seed", range(300))
def test_kronecker_multiply_matches_naive(seed):
    rng = random.Random(seed)
    x = rand_laurent(rng, rng.randint(1, 30), 8)
    y = rand_laurent(rng, rng.randint(13, 40), 8)
    if rng.random() < 0.3:
        y = y * Fraction(1, rng.randint(2, 5))
    naive = {}
    for e1, c1 in x.terms.items():
        for e2, c2 in y.terms.items():
            k = (e1[0] + e2[0], e1[1] + e2[1])
            naive[k] = naive.get(k, 0) + c1 * c2
    naive = {k: v for k, v in naive.items() if v}
    fast = _kron_mul(x.terms, y.terms, 2)
    if fast is not None:
        assert {k: v for k, v in fast.items() if v} == naive
    assert (x * y).terms == naive


def test_json_roundtrip():
    rng = random.Random(5)
    for _ in range(20):
        x = rand_laurent(rng) * Fraction(rng.randint(1, 5), rng.randint(1, 5))
        blob = json.loads(json.dumps(x.to_json()))
        assert LaurentQT.from_json(blob) == x
        y = rand_apoly(rng)
        assert APoly.from_json(json.loads(json.dumps(y.to_json()))) == y


def test_json_uses_half_power_exponents():
    rows = q.to_json()
    assert rows == [[2, 0, "1", "1"]]
    rows = (a * t).to_json()
    assert rows == [[1, 0, 2, "1", "1"]]


# -- series_nonneg -----------------------------------------------------------------

def test_series_examples():
    assert series_nonneg([1], 3)
    assert series_nonneg([1, -1], 1)
    assert not series_nonneg([1, -2], 1)
    assert series_nonneg([], 4)
    assert not series_nonneg([-1], 0)
    # coefficients of F for RU*RU, one q-power at a time, with k = 2
    assert series_nonneg([1, 1], 1)   # s_11
    assert series_nonneg([0, 1], 1)   # q^0 part of s_2
    assert series_nonneg([1, -1], 1)  # q^1 part of s_2


def test_series_late_negative():
    # p(1) < 0 forces negative coefficients, but only past degree 100
    p = [4, 0, -1, 5, -4, 2, -3, -4]
    assert all(c >= 0 for c in truncated_series(p, 4, 50))
    assert not series_nonneg(p, 4)
    assert min(truncated_series(p, 4, 200)) < 0


def test_series_against_truncation():
    rng = random.Random(2024)
    for _ in range(1000):
        p = [rng.randint(-5, 5) for _ in range(rng.randint(1, 13))]
        j = rng.randint(0, 6)
        got = series_nonneg(p, j)
        assert got == truncation_oracle(p, j), (p, j)
        if got:
            # the plain deg + 50 window never disagrees with a positive answer
            assert all(c >= 0 for c in truncated_series(p, j, 50))


# -- eps_orient --------------------------------------------------------------------

E = EpsScalar


def test_eps_orient_examples():
    assert eps_orient((0, 0), (1, 0), (0, 1)) == 1
    assert eps_orient((0, 0), (1, 1), (2, 2)) == 0
    pt = (E(0, -1), E(0, 1))
    got = eps_orient(pt, (1, 1), (E(2, -1), E(2, 1)))
    # det = (1 + e)(2) - (1 - e)(2) = 4e at first order
    assert got == 1
    assert eps_orient((1, 1), pt, (E(2, -1), E(2, 1))) == -1


def test_eps_scalar_ordering():
    assert E(0, 1) > 0 and E(0, -1) < 0 and E(1, -100) > 0
    assert E(0, 0, 1).sign() == 1
    with pytest.raises(ArithmeticError):
        E(0, 0, 1) * E(0, 1)


def test_eps_orient_against_rational_sampling():
    rng = random.Random(99)
    checked = 0
    while checked < 10000:
        pts = [tuple(E(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(2)) for _ in range(3)]
        got = eps_orient(*pts)
        if got == 0:
            continue
        checked += 1
        assert got == rational_orient(*pts), pts


def test_eps_orient_integer_points_sampled():
    rng = random.Random(7)
    for _ in range(2000):
        pts = [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(3)]
        (x1, y1), (x2, y2), (x3, y3) = pts
        d = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
        assert eps_orient(*pts) == (d > 0) - (d < 0)
