import random
from fractions import Fraction
from itertools import product

import pytest

from monolink.curve import enumerate_curves, parse, skein_triple, stats
from monolink.exactcoef import APoly, LaurentQT, RatQT
from monolink.homfly import (Q, UNKNOT, BraidWord, HeckeElt, annulus_powersum_check,
                             char_trace, coxeter_braid, hecke_normal_form, homfly, homfly_braid,
                             homfly_skein_tree, phi_annulus, random_braid, splice, superpoly,
                             trace_braid, verify_prop_1_19, verify_trace_formula, _rep)
from monolink.symfunc import DEFAULT, partitions

s = DEFAULT.s
q = LaurentQT.monomial((2, 0))
t = LaurentQT.monomial((0, 2))
a = APoly.monomial((1, 0, 0))


def necklaces(m, max_len):
    """Cyclically reduced braid words up to rotation."""
    gens = [(i, e) for i in range(1, m) for e in (1, -1)]
    seen = set()
    out = []
    for L in range(max_len + 1):
        for w in product(gens, repeat=L):
            if any(w[k][0] == w[k - 1][0] and w[k][1] == -w[k - 1][1] for k in range(L)) and L > 1:
                continue
            key = min(w[k:] + w[:k] for k in range(L)) if L else ()
            if key not in seen:
                seen.add(key)
                out.append(BraidWord(m, key))
    return out


# -- braids -------------------------------------------------------------------

def test_coxeter_examples():
    assert coxeter_braid("RURU").writhe == 3
    assert coxeter_braid("RURU") == BraidWord(2, [(1, 1)] * 3)
    assert coxeter_braid("RRUU").writhe == 1
    assert coxeter_braid("RU*RU").writhe == 2


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, 6)])
def test_writhe_formula(m, n):
    for C in enumerate_curves(m, n):
        assert coxeter_braid(C).writhe == stats(C).writhe


def test_writhe_skein_additivity():
    for m in range(1, 6):
        for n in range(1, 6):
            for C0 in enumerate_curves(m, n):
                for pos, ch in enumerate(C0.word):
                    if ch == "*":
                        plus, minus = skein_triple(C0, pos)
                        w0 = stats(C0).writhe
                        assert stats(plus).writhe - 1 == w0 == stats(minus).writhe + 1


def test_braid_word_basics():
    b = BraidWord(3, [(1, 1), (2, -1), (2, 1)])
    assert b.reduce() == BraidWord(3, [(1, 1)])
    assert b.inverse().writhe == -b.writhe
    assert len(b.stabilize().components()) == len(b.components())
    with pytest.raises(ValueError):
        BraidWord(2, [(2, 1)])


# -- Hecke algebra ------------------------------------------------------------

def test_hecke_normal_form_small():
    assert hecke_normal_form(BraidWord(3)) == HeckeElt.one(3)
    T1 = HeckeElt.gen(2, 1)
    want = T1 - HeckeElt.one(2).scale(Q - Q ** -1)
    assert hecke_normal_form(BraidWord(2, [(1, 1)])) == want


@pytest.mark.parametrize("seed", range(4))
def test_hecke_relations(seed):
    rng = random.Random(seed)
    m = 4
    x = hecke_normal_form(random_braid(rng, m, 5))
    one = HeckeElt.one(m)
    for i in range(1, m):
        Ti = HeckeElt.gen(m, i)
        quad = (Ti - one.scale(Q)) * (Ti + one.scale(Q ** -1))
        assert quad.terms == {}
        assert x.mul_T(i).mul_T(i, inverse=True) == x
    for i in range(1, m - 1):
        assert x.mul_T(i).mul_T(i + 1).mul_T(i) == x.mul_T(i + 1).mul_T(i).mul_T(i + 1)
    assert x.mul_T(1).mul_T(3) == x.mul_T(3).mul_T(1)


def test_full_twist_central():
    ft = hecke_normal_form(BraidWord(3, [(1, 1), (2, 1)] * 3))
    for i in (1, 2):
        Ti = HeckeElt.gen(3, i)
        assert ft * Ti == Ti * ft


@pytest.mark.parametrize("lam", [lam for m in range(2, 6) for lam in partitions(m)])
def test_seminormal_relations(lam):
    rep = _rep(lam)
    m = sum(lam)
    for k in range(len(rep.basis)):
        e = {k: RatQT(1)}
        for i in range(1, m):
            # sigma_i sigma_i^-1 = 1
            assert _clean(rep.act(rep.act(e, i, 1), i, -1)) == _clean(e)
        for i in range(1, m - 1):
            lhs = rep.act(rep.act(rep.act(e, i, 1), i + 1, 1), i, 1)
            rhs = rep.act(rep.act(rep.act(e, i + 1, 1), i, 1), i + 1, 1)
            assert _clean(_sub(lhs, rhs)) == {}


def _sub(u, v):
    out = dict(u)
    for k, c in v.items():
        out[k] = out[k] - c if k in out else -c
    return out


def _clean(u):
    return {k: c for k, c in u.items() if c}


@pytest.mark.parametrize("r", [-3, -2, -1, 0, 1])
def test_trace_of_T1_powers(r):
    beta = BraidWord(2, [(1, -1 if r > 0 else 1)] * abs(r))
    half = LaurentQT.monomial((r, 0))
    want = s(1, 1) * (half ** -1 * (-1) ** abs(r)) + s(2) * half
    assert trace_braid(beta) == want


def test_example_traces():
    assert phi_annulus(coxeter_braid("RURU")) == (s(1, 1) * LaurentQT.monomial((-5, 0))
                                                  - s(2) * LaurentQT.monomial((1, 0)))
    assert phi_annulus(coxeter_braid("RRUU")) == (s(1, 1) * LaurentQT.monomial((-3, 0))
                                                  - s(2) * LaurentQT.monomial((-1, 0)))
    assert phi_annulus(coxeter_braid("RU*RU")) == s(1, 1) * LaurentQT.monomial((-4, 0)) + s(2)


@pytest.mark.parametrize("m", [3, 4])
def test_trace_axioms(m):
    rng = random.Random(m)
    for _ in range(4):
        b, g = random_braid(rng, m, 4), random_braid(rng, m, 3)
        assert trace_braid(b * g) == trace_braid(g * b)
        assert trace_braid(b.conjugate(g)) == trace_braid(b)
        assert char_trace(hecke_normal_form(b)) == trace_braid(b)
        x, y = hecke_normal_form(b), hecke_normal_form(g)
        assert char_trace(x * y) == char_trace(y * x)


@pytest.mark.parametrize("N", range(1, 6))
def test_annulus_powersums(N):
    assert annulus_powersum_check(N)


# -- HOMFLY -------------------------------------------------------------------

def test_unknot():
    assert homfly("RRUU") == UNKNOT
    assert homfly_braid(BraidWord(1)) == UNKNOT
    assert homfly_skein_tree(BraidWord(1)) == UNKNOT


@pytest.mark.parametrize("m", [1, 2, 3])
def test_oracle_exhaustive_small(m):
    for b in necklaces(m, 8):
        assert homfly_braid(b) == homfly_skein_tree(b), str(b)


def test_oracle_exhaustive_four_strands():
    for b in necklaces(4, 5):
        assert homfly_braid(b) == homfly_skein_tree(b), str(b)


def test_oracle_random_long():
    rng = random.Random(8)
    for _ in range(200):
        m = rng.randint(2, 4)
        b = random_braid(rng, m, rng.randint(6, 8))
        assert homfly_braid(b) == homfly_skein_tree(b), str(b)


def test_markov_invariance():
    rng = random.Random(50)
    for _ in range(50):
        m = rng.randint(1, 4)
        b = random_braid(rng, m, rng.randint(0, 6)) if m > 1 else BraidWord(1)
        P = homfly_skein_tree(b)
        assert homfly_braid(b) == P
        if m > 1:
            g = random_braid(rng, m, 3)
            assert homfly_braid(b.conjugate(g)) == P
        assert homfly_braid(b.stabilize(rng.choice((1, -1)))) == P


def test_superpoly_examples():
    assert superpoly("RURU", normalized=True) == (q + t) * a - a ** -1
    assert superpoly("RRUU", normalized=True) == a
    assert superpoly("RU*RU", normalized=True) == (q + t - q * t) * a - a ** -1


@pytest.mark.parametrize("word", ["RURU", "RRUU", "RU*RU"])
def test_prop_examples(word):
    rep = verify_prop_1_19(parse(word))
    assert rep.holds


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 5)])
def test_prop_all_small(m, n):
    for C in enumerate_curves(m, n):
        rep = verify_prop_1_19(C)
        assert rep.holds, C.word
        assert rep.writhe_formula == rep.writhe_braid


def test_trace_formula_small():
    for m in range(1, 4):
        for n in range(1, 4):
            for C in enumerate_curves(m, n):
                assert verify_trace_formula(C), C.word


def test_prop_negative_control():
    # the identity is sensitive: a wrong F must fail
    rep = verify_prop_1_19(parse("RURU"), F=s(2))
    assert not rep.holds


# -- splice diagrams ----------------------------------------------------------

def coaxial_inputs(limit=7):
    out = []

    def rec(acc, sm, sn):
        if acc:
            out.append(list(acc))
        for m in range(1, limit - sm + 1):
            for n in range(1, limit - sn + 1):
                rec(acc + [(m, n)], sm + m, sn + n)

    rec([], 0, 0)
    return out


def test_splice_torus_knot():
    dia, alg = splice([(3, 2)])
    assert alg and len(dia.nodes) == 1 and dia.node_edges() == []
    dia, alg = splice([(4, 2)])
    assert alg and len(dia.nodes) == 2


def test_splice_counterexample():
    assert splice([(1, 2), (2, 1)])[1] is False


def test_splice_example_shape():
    dia, alg = splice([(3, 2), (6, 4), (6, 4), (6, 15), (2, 5), (2, 5)])
    # two slope classes, two cable nodes for (6, 4) and one for (6, 15)
    assert len(dia.nodes) == 2 + 3
    assert sum(1 for _, kind in dia.leaves if kind == "arrow") == 6
    assert alg


def test_splice_convex_iff_algebraic():
    n_convex = 0
    for pairs in coaxial_inputs():
        slopes = [Fraction(m, n) for m, n in pairs]
        convex = all(x >= y for x, y in zip(slopes, slopes[1:]))
        n_convex += convex
        assert splice(pairs)[1] == convex, pairs
    assert n_convex > 100
