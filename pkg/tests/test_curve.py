import random
from collections import Counter

import pytest

from monolink.curve import (CurveError, _chains, almost_linear, classify_point, concat,
                            convex_expand, enumerate_curves, from_heights, parse, points_on,
                            primitive_curves, reflect, render, skein_expand, skein_triple,
                            slope_criterion, stats, to_json, z_convex)
from monolink.daha import F_of_sym
from monolink.exactcoef import LaurentQT

qt = LaurentQT.monomial((2, 2))


# -- grammar --------------------------------------------------------------------

def test_parse_examples():
    C = parse("RURU", 2, 2)
    assert C.is_primitive and (C.m, C.n) == (2, 2)
    C0 = parse("RU*RU", 2, 2)
    assert stats(C0).k == 2
    assert parse("RRRURRRURURRUURUU").m == 10


@pytest.mark.parametrize("word,msg", [
    ("URRU", "start with R"),
    ("RUUR", "end with U"),
    ("RUXU", "bad symbol"),
    ("R*UU", "between U and R"),
    ("RU*U", "between U and R"),
    ("RU**RU", "between U and R"),
])
def test_parse_errors(word, msg):
    with pytest.raises(CurveError, match=msg):
        parse(word)


def test_parse_count_mismatch():
    with pytest.raises(CurveError, match="count mismatch"):
        parse("RURU", 3, 2)


def test_enumerate_small():
    assert [C.word for C in enumerate_curves(2, 2)] == ["RRUU", "RU*RU", "RURU"]
    assert [C.word for C in enumerate_curves(1, 1)] == ["RU"]


def test_enumerate_counts():
    total = 0
    for m in range(1, 8):
        for n in range(1, 8):
            curves = enumerate_curves(m, n)
            words = [C.word for C in curves]
            assert words == sorted(set(words))
            assert len(curves) == len(enumerate_curves(n, m))
            total += len(curves)
    assert total == 24319


def test_render_roundtrip_and_invariants():
    for m in range(1, 8):
        for n in range(1, 8):
            for C in enumerate_curves(m, n):
                assert render(parse(C.word, m, n)) == C.word
                st = stats(C)
                assert sum(st.b) == n
                assert st.lam[0] == n and st.lam[-1] == 0
                assert st.k == C.word.count("*") + 1
                assert all((e == 0) == (i + 1 in st.S) for i, e in enumerate(st.eps))
                assert st.writhe == (st.k - 1) + (m - 1) + 2 * st.interior_below


# -- statistics -------------------------------------------------------------------

def test_stats_example():
    st = stats(parse("RUU*RURRU"))
    assert st.lam == (4, 3, 3, 2, 0)
    assert st.b == (1, 0, 1, 2)
    assert st.S == frozenset({3})
    assert st.eps == (1, 1, 0)


def test_writhe_examples():
    assert stats(parse("RURU")).writhe == 3
    assert stats(parse("RRUU")).writhe == 1
    # the stated value for the middle curve is 3; the formula gives 2
    assert stats(parse("RU*RU")).writhe == 2


def test_json_record():
    d = to_json(parse("RU*RU"))
    assert d == {"word": "RU*RU", "m": 2, "n": 2, "k": 2, "b": [1, 1], "eps": [0], "w": 2,
                 "zconvex": True, "weak_zconvex": True}


def test_classification():
    C = parse("RU*RU")
    assert classify_point(C, 1, 1) == 0
    assert classify_point(C, 1, 0) == -1
    assert classify_point(C, 1, 2) == 1
    assert points_on(C) == [(0, 0), (1, 1), (2, 2)]


def test_reflect_is_involution():
    for C in enumerate_curves(3, 4):
        R = reflect(C)
        assert (R.m, R.n) == (4, 3)
        assert reflect(R).word == C.word


def test_almost_linear():
    for m in range(1, 7):
        for n in range(1, 7):
            C = almost_linear(m, n)
            assert C.is_primitive
            assert z_convex(C)
            for x in range(1, m):
                # just above the line y = n x / m: points on the line are below C
                for y in range(n + 1):
                    want = 1 if y * m > n * x else -1
                    assert classify_point(C, x, y) == want


# -- Z-convexity ----------------------------------------------------------------

def test_zconvex_3x3():
    bad = [C.word for C in primitive_curves(3, 3) if not z_convex(C)]
    assert bad == ["RUURRU"]


def test_zconvex_piecewise_examples():
    up_then_flat = concat([almost_linear(1, 2), almost_linear(2, 1)])
    flat_then_up = concat([almost_linear(2, 1), almost_linear(1, 2)])
    assert not z_convex(up_then_flat)
    assert z_convex(flat_then_up)


def test_zconvex_matches_slope_criterion():
    seen = set()
    for m in range(1, 8):
        for n in range(1, 8):
            for chain in _chains(m, n):
                parts = [almost_linear(b[0] - a[0], b[1] - a[1]) for a, b in zip(chain, chain[1:])]
                C = concat(parts)
                if C.word in seen:
                    continue
                seen.add(C.word)
                assert z_convex(C) == slope_criterion(parts), C.word
    assert len(seen) > 1000


def test_weak_implied_by_strict_and_counts():
    strict = weak = 0
    for m in range(1, 8):
        for n in range(1, 8):
            for C in enumerate_curves(m, n):
                a, b = z_convex(C), z_convex(C, weak=True)
                assert b or not a, C.word
                strict += a
                weak += b
    assert (strict, weak) == (3313, 4257)


# -- skein expansions ------------------------------------------------------------

def test_skein_expand_examples():
    assert skein_expand(parse("RURU")) == [(LaurentQT.const(1), parse("RURU"))]
    got = [(c, C.word) for c, C in skein_expand(parse("RU*RU"))]
    assert got == [(LaurentQT.const(1), "RURU"), (-qt, "RRUU")]


def test_skein_expand_term_count():
    rng = random.Random(1)
    pool = [C for m in range(2, 6) for n in range(2, 6) for C in enumerate_curves(m, n)]
    for C in rng.sample(pool, 200):
        terms = skein_expand(C)
        assert len(terms) == 2 ** (stats(C).k - 1)
        assert all(D.is_primitive for _, D in terms)


def _expand_from(C, pos_order):
    """Skein expansion eliminating stars in a chosen order."""
    if C.is_primitive:
        return Counter({C.word: LaurentQT.const(1)})
    stars = [i for i, ch in enumerate(C.word) if ch == "*"]
    pos = stars[pos_order(len(stars))]
    plus, minus = skein_triple(C, pos)
    out = Counter()
    for coef, D in ((LaurentQT.const(1), plus), (-qt, minus)):
        for w, c in _expand_from(D, pos_order).items():
            out[w] = out.get(w, LaurentQT.const(0)) + coef * c
    return {w: c for w, c in out.items() if c}


def test_skein_expand_order_independent():
    for m in range(2, 6):
        for n in range(2, 6):
            for C in enumerate_curves(m, n):
                if stats(C).k < 3:
                    continue
                left = {D.word: c for c, D in skein_expand(C)}
                right = _expand_from(C, lambda k: k - 1)
                assert left == right, C.word


def test_skein_expand_k3_against_engine_a():
    C = parse("RU*RU*RU")
    assert stats(C).k == 3
    terms = skein_expand(C)
    assert len(terms) == 4
    tot = None
    for c, D in terms:
        x = F_of_sym(D) * c
        tot = x if tot is None else tot + x
    assert tot == F_of_sym(C)


def test_convex_expand_almost_linear():
    for m, n in [(2, 3), (3, 2), (4, 3)]:
        C = almost_linear(m, n)
        assert convex_expand(C) == [(LaurentQT.const(1), C)]


def test_convex_expand_rejects():
    with pytest.raises(CurveError):
        convex_expand(parse("RU*RU"))
    with pytest.raises(CurveError):
        convex_expand(parse("RUURRU"))


def test_from_heights():
    assert from_heights([0, 1, 2], stars={1}) == "RU*RU"
    assert from_heights([0, 0, 2]) == "RRUU"
