import random
from itertools import permutations

import pytest
import sympy as sp

from monolink.daha import (NPoly, apply_T, apply_X, apply_Y, apply_Y1, apply_R_step,
                           symmetrize, D_apply, F_of, F_of_sym, gamma, delta, npoly_from_sym)
from monolink.curve import enumerate_curves, skein_triple
from monolink.exactcoef import LaurentQT, RatQT
from monolink.symfunc import DEFAULT, Alphabet

Q = LaurentQT.monomial((1, 0))
T = LaurentQT.monomial((0, 1))


def rand_poly(rng, N, deg, nterms=4, scalars=True):
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, deg)
        e = [0] * N
        for _ in range(d):
            e[rng.randrange(N)] += 1
        c = LaurentQT.const(rng.randint(-3, 3))
        if scalars:
            c = c * Q ** rng.randint(-2, 2) * T ** rng.randint(-2, 2)
        terms[tuple(e)] = terms.get(tuple(e), LaurentQT.const(0)) + c
    return NPoly.from_dict(N, terms)


# -- sympy oracle --------------------------------------------------------------

qs, ts = sp.symbols("qs ts")


def to_sympy(f, xs):
    expr = 0
    for e, c in f.to_dict().items():
        num = sum(v * qs ** k[0] * ts ** k[1] for k, v in c.num.terms.items())
        den = 1
        for g, m in c.den.items():
            den *= sum(v * qs ** k[0] * ts ** k[1] for k, v in g.terms.items()) ** m
        mono = 1
        for x, a in zip(xs, e):
            mono *= x ** a
        expr += num / den * mono
    return expr


def sympy_T(expr, xs, i):
    xi, xj = xs[i - 1], xs[i]
    sw = expr.subs({xi: xj, xj: xi}, simultaneous=True)
    return sp.cancel(ts ** -1 * sw + (ts ** -1 - ts) / (xi / xj - 1) * (sw - expr))


@pytest.mark.parametrize("seed", range(6))
def test_T_matches_sympy_oracle(seed):
    rng = random.Random(seed)
    N = 3
    xs = sp.symbols("x1:%d" % (N + 1))
    f = rand_poly(rng, N, 3)
    for i in (1, 2):
        got = to_sympy(apply_T(i, f), xs)
        want = sympy_T(to_sympy(f, xs), xs, i)
        assert sp.simplify(got - want) == 0


def test_T_examples():
    one = NPoly.one(3)
    assert apply_T(1, one) == one.scale(T ** -1)
    x2 = NPoly.from_dict(2, {(0, 1): 1})
    want = NPoly.from_dict(2, {(1, 0): T ** -1, (0, 1): T ** -1 - T})
    assert apply_T(1, x2) == want
    with pytest.raises(IndexError):
        apply_T(3, one)


@pytest.mark.parametrize("seed", range(5))
def test_hecke_relations(seed):
    rng = random.Random(seed)
    f = rand_poly(rng, 3, 3)
    for i in (1, 2):
        g = apply_T(i, f)
        # (T + t^1/2)(T - t^-1/2) f = 0
        h = apply_T(i, g - f.scale(T ** -1)) + (g - f.scale(T ** -1)).scale(T)
        assert h.is_zero()
        assert apply_T(i, apply_T(i, f, inverse=True)) == f
    a = apply_T(1, apply_T(2, apply_T(1, f)))
    b = apply_T(2, apply_T(1, apply_T(2, f)))
    assert a == b
    f4 = rand_poly(rng, 4, 2)
    assert apply_T(1, apply_T(3, f4)) == apply_T(3, apply_T(1, f4))


@pytest.mark.parametrize("seed", range(4))
def test_daha_relations(seed):
    rng = random.Random(100 + seed)
    N = 3
    f = rand_poly(rng, N, 3)
    # Y's commute
    assert apply_Y(1, apply_Y(2, f)) == apply_Y(2, apply_Y(1, f))
    assert apply_Y(2, apply_Y(3, f)) == apply_Y(3, apply_Y(2, f))
    for i in (1, 2):
        # T_i X_i T_i = X_{i+1} and T_i^-1 Y_i T_i^-1 = Y_{i+1}
        assert apply_T(i, apply_X(i, apply_T(i, f))) == apply_X(i + 1, f)
        lhs = apply_T(i, apply_Y(i, apply_T(i, f, True)), True)
        assert lhs == apply_Y(i + 1, f)
        assert apply_Y(i, apply_Y(i, f), inverse=True) == f
    # Y_1 X_1...X_N = q X_1...X_N Y_1
    def allX(g):
        for j in range(1, N + 1):
            g = apply_X(j, g)
        return g
    assert apply_Y1(allX(f)) == allX(apply_Y1(f)).scale(Q ** 2)
    # X_1^-1 Y_2 = Y_2 X_1^-1 T_1^-2 in the form Y_2 T_1^2 X_1 = X_1 Y_2
    lhs = apply_Y(2, apply_T(1, apply_T(1, apply_X(1, f))))
    assert lhs == apply_X(1, apply_Y(2, f))
    # far-apart generators commute, N = 4
    f4 = rand_poly(rng, 4, 2)
    assert apply_T(1, apply_X(3, f4)) == apply_X(3, apply_T(1, f4))
    assert apply_T(1, apply_Y(3, f4)) == apply_Y(3, apply_T(1, f4))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_Y1(N):
    rng = random.Random(N)
    one = NPoly.one(N)
    assert apply_Y1(one) == one
    f = rand_poly(rng, N, 3)
    assert apply_Y1(apply_Y1(f), inverse=True) == f
    assert apply_Y1(apply_Y1(f, inverse=True)) == f


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_R_step(N):
    rng = random.Random(7 + N)
    f = rand_poly(rng, N, 2)
    want = apply_Y1(apply_X(1, apply_Y1(f, inverse=True)))
    assert apply_R_step(f) == want
    if N == 1:
        assert apply_R_step(NPoly.one(1)) == NPoly.from_dict(1, {(1,): 1})
    g = rand_poly(rng, N, 0, scalars=False) + NPoly.from_dict(N, {(0,) * (N - 1) + (2,): 1})
    assert apply_R_step(g).degree() == g.degree() + 1


def brute_e(f):
    """Sum over S_N of t^(-l(w)/2) T_w f, normalised."""
    N = f.N
    tot = None
    norm = LaurentQT.const(0)
    for perm in permutations(range(N)):
        # reduced word by bubble sort
        p = list(perm)
        word = []
        changed = True
        while changed:
            changed = False
            for i in range(N - 1):
                if p[i] > p[i + 1]:
                    p[i], p[i + 1] = p[i + 1], p[i]
                    word.append(i + 1)
                    changed = True
        g = f
        for i in reversed(word):
            g = apply_T(i, g)
        g = g.scale(T ** -len(word))
        tot = g if tot is None else tot + g
        norm = norm + T ** (-2 * len(word))
    return tot.divide_by(norm)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_symmetrize(N):
    rng = random.Random(20 + N)
    one = NPoly.one(N)
    assert symmetrize(one) == one
    f = rand_poly(rng, N, 2)
    e = symmetrize(f)
    assert e.is_symmetric()
    for i in range(1, N):
        assert apply_T(i, e) == e.scale(T ** -1)
    assert symmetrize(e) == e
    assert e == brute_e(f)


def test_symmetrize_x1():
    f = NPoly.from_dict(2, {(1, 0): 1})
    e = symmetrize(f)
    assert apply_T(1, e) == e.scale(T ** -1)
    assert e.is_symmetric()


def test_D_apply_examples():
    N = 2
    one = NPoly.one(N)
    g = symmetrize(one)
    for op in "RURU"[::-1]:
        g = apply_Y1(g) if op == "U" else apply_Y1(apply_X(1, apply_Y1(g, True)))
    want = symmetrize(g).scale(gamma(N))
    assert D_apply("RURU", N) == want
    g = symmetrize(one)
    for op in "RU"[::-1]:
        g = apply_Y1(g) if op == "U" else apply_R_step(g)
    g = symmetrize(g).scale(gamma(N))
    for op in "RU"[::-1]:
        g = apply_Y1(g) if op == "U" else apply_R_step(g)
    want = symmetrize(g).scale(gamma(N))
    assert D_apply("RU*RU", N) == want


@pytest.mark.parametrize("w1,w2", [("RU", "RU"), ("RRU", "RUU"), ("RU", "RURU")])
def test_multiplicativity(w1, w2):
    N = 3
    left = D_apply(w1 + "*" + w2, N)
    right = D_apply(w1, N, D_apply(w2, N))
    assert left == right


def test_suffix_cache():
    cache = {}
    for C in enumerate_curves(2, 3):
        assert D_apply(C, 2, cache=cache) == D_apply(C, 2)


def test_F_of_examples():
    s = DEFAULT.s
    q = LaurentQT.monomial((2, 0))
    t = LaurentQT.monomial((0, 2))
    assert F_of("RURU") == s(1, 1) + s(2) * (q + t)
    assert F_of("RRUU") == s(2)
    assert F_of("RU*RU") == s(1, 1) + s(2) * (q + t - q * t)
    assert F_of("RU") == s(1)


def test_constants():
    assert gamma(3) == 1 - LaurentQT.monomial((0, 6))
    d = delta()
    # delta at t = 1/q is 1/(q^-1/2 - q^1/2)
    sub = d.map(lambda c: LaurentQT({(k[0] - k[1], 0): v for k, v in c.terms.items()}))
    want = RatQT(1) / (LaurentQT.monomial((-1, 0)) - LaurentQT.monomial((1, 0)))
    assert sub == want


@pytest.mark.parametrize("N", range(1, 6))
@pytest.mark.parametrize("d", range(1, 6))
def test_horizontal_element_on_one(N, d):
    # gamma e_N Y_1 X_1^d Y_1^-1 e_N . 1 = (-t)^d e_d[(1 - 1/t) X_N]
    one = NPoly.one(N)
    g = apply_Y1(one, inverse=True)
    for _ in range(d):
        g = apply_X(1, g)
    g = apply_Y1(g)
    lhs = symmetrize(g).scale(gamma(N))
    e = DEFAULT.e(d)
    ed = e.plethysm(Alphabet(0, 1 - LaurentQT.monomial((0, -2)))).map_coeffs(
        lambda c: c * LaurentQT.monomial((0, 2 * d), (-1) ** d))
    rhs = npoly_from_sym(ed, N)
    assert lhs == rhs


@pytest.mark.parametrize("C", enumerate_curves(1, 3) + enumerate_curves(2, 2)
                         + enumerate_curves(3, 2) + enumerate_curves(3, 3)
                         + enumerate_curves(2, 3), ids=lambda c: c.word)
def test_stability(C):
    F = F_of(C)
    for N in (C.m + 1, C.m + 2):
        assert F_of(C, N) == F


def skein_cases():
    out = []
    for m in range(1, 5):
        for n in range(1, 5):
            for C in enumerate_curves(m, n):
                if "*" in C.word:
                    out.append(C)
    return out


@pytest.mark.parametrize("C0", skein_cases(), ids=lambda c: c.word)
def test_skein_polynomial_level(C0):
    # every star of C0 gives a skein triple
    for pos, ch in enumerate(C0.word):
        if ch != "*":
            continue
        plus, minus = skein_triple(C0, pos)
        N = C0.m
        lhs = D_apply(plus, N)
        rhs = D_apply(minus, N).scale(LaurentQT.monomial((2, 2))) + D_apply(C0, N)
        assert lhs == rhs


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 5)])
def test_qt_symmetry_and_degree(m, n):
    for C in enumerate_curves(m, n):
        F = F_of(C)
        assert F.is_homogeneous() and F.degree() == m
        assert F == F.swap_qt()


@pytest.mark.parametrize("C", [C for m in range(1, 4) for n in range(1, 5)
                               for C in enumerate_curves(m, n)], ids=lambda c: c.word)
def test_block_symmetric_path(C):
    assert F_of_sym(C) == F_of(C)
