import pytest

from monolink.curve import enumerate_curves, parse, z_convex
from monolink.daha import F_of, F_of_sym
from monolink.eha import F_fast
from monolink.exactcoef import APoly, LaurentQT, series_nonneg
from monolink.magic import F_magic
from monolink.positivity import (PositivityError, PositivityReport, at_t1, census, classify,
                                 first_negative, path_area, t1_paths, t1_sum, unimodality)
from monolink.homfly import superpoly
from monolink.symfunc import DEFAULT

s, h = DEFAULT.s, DEFAULT.h
q = LaurentQT.monomial((2, 0))
t = LaurentQT.monomial((0, 2))


def test_classify_examples():
    rep = classify(parse("RU*RU"), F_of("RU*RU"))
    assert rep.series_positive and not rep.schur_positive and rep.k == 2
    rep = classify(parse("RUURRU"), F_of("RUURRU"), convexity=True)
    assert not rep.schur_positive and not rep.series_positive and rep.qt_symmetric
    assert not rep.zconvex and not rep.weak_zconvex
    lam, i, j, c = rep.witness
    assert lam == (3,) and c < 0
    want = q ** 4 + q ** 3 * t + q ** 2 * t ** 2 + q * t ** 3 + t ** 4 + q ** 2 * t + q * t ** 2 - q * t
    coeff = F_of("RUURRU")[(3,)]
    assert coeff == want
    # the witness is a real coefficient of that polynomial
    assert coeff.coefficient((2 * i, 2 * j)) == c


def test_witness_lookup_everywhere():
    for m in range(1, 4):
        for n in range(1, 4):
            for C in enumerate_curves(m, n):
                F = F_of(C)
                rep = classify(C, F)
                if rep.witness:
                    lam, i, j, c = rep.witness
                    assert F[lam].coefficient((2 * i, 2 * j)) == c < 0
                if rep.k == 1:
                    assert rep.series_positive == rep.schur_positive
                if rep.series_witness:
                    lam, i, j, c = rep.series_witness
                    row = [F[lam].coefficient((2 * i, 2 * e)) for e in range(0, 2 * m * n)]
                    assert first_negative(row, rep.k - 1) == (j, c)


def test_first_negative():
    assert first_negative([1, -1], 1) is None
    assert first_negative([1, -2], 1) == (1, -1)
    assert first_negative([4, 0, -1, 5, -4, 2, -3, -4], 4)[0] == 108


def test_half_integer_exponents_rejected():
    F = s(1) * LaurentQT.monomial((1, 0))
    with pytest.raises(PositivityError):
        classify(parse("RU"), F)


def test_zconvex_curves_are_series_positive():
    for m in range(1, 5):
        for n in range(1, 5):
            for C in enumerate_curves(m, n):
                if z_convex(C, weak=True):
                    assert classify(C, F_of_sym(C)).series_positive, C.word


def test_engine_independent_reports():
    for m in range(1, 4):
        for n in range(1, 4):
            for C in enumerate_curves(m, n):
                reps = {str(classify(C, f(C)).to_json()) for f in (F_of, F_fast, F_magic)}
                assert len(reps) == 1


def test_report_json_roundtrip():
    rep = classify(parse("RUURRU"), F_of("RUURRU"), convexity=True)
    back = PositivityReport.from_json(rep.to_json())
    assert back == rep


# -- unimodality ------------------------------------------------------------------

def test_unimodality_examples():
    assert unimodality(LaurentQT.const(3)).unimodal
    assert unimodality(superpoly("RURU", normalized=True)).unimodal
    bad = LaurentQT({(4, 0): 2, (2, 2): 1, (0, 4): 2})
    rep = unimodality(bad)
    assert not rep.unimodal
    assert rep.violations[0]["terms"] == [[2, 0, 2], [1, 1, 1], [0, 2, 2]]


def test_parity_unimodality():
    # even powers 1, 3, 1; odd powers 2, 1, 2
    P = LaurentQT({(2 * e, 0): c for e, c in enumerate([1, 2, 3, 1, 1, 2])})
    rep = unimodality(P)
    assert not rep.parity_unimodal
    assert unimodality(LaurentQT({(0, 0): 1, (4, 0): 2, (8, 0): 1})).parity_unimodal


def test_unimodality_per_a_degree():
    a = APoly.monomial((1, 0, 0))
    P = a * (q + t) + a ** -1 * LaurentQT({(4, 0): 2, (2, 2): 1, (0, 4): 2}).to_apoly()
    rep = unimodality(P)
    assert [v["a"] for v in rep.violations] == [-1]


# -- t = 1 ---------------------------------------------------------------------

def test_t1_examples():
    assert t1_sum(parse("RURU")) == h(1, 1) + h(2) * q
    assert t1_sum(parse("RURU")) == at_t1(F_of("RURU")).convert("h")
    assert t1_sum(parse("RU")) == h(1)
    paths = t1_paths(parse("RUURRU"))
    assert sorted(e for _, e, _ in paths) == [0, 1, 2, 2, 3, 4]
    assert t1_sum(parse("RU*RU")) == h(1, 1)


def test_t1_all_small():
    for m in range(1, 5):
        for n in range(1, 5):
            for C in enumerate_curves(m, n):
                F = F_of_sym(C)
                assert t1_sum(C) == at_t1(F).convert("h"), C.word
                assert sum(at_t1(F)[(m,)].at_t1().terms.values()) == len(t1_paths(C))


def test_path_area():
    assert path_area("RRUU") == 0
    assert path_area("UURR") == 4
    assert path_area("RURU") == 1


# -- census --------------------------------------------------------------------

def test_census_small():
    r = census(1, 1)
    assert (r.total, r.series_positive, r.weak_zconvex, r.zconvex) == (1, 1, 1, 1)
    # only the 2 x 2 block
    r = census(2, 2, m_min=2, n_min=2)
    assert (r.total, r.series_positive, r.weak_zconvex, r.zconvex) == (3, 3, 3, 3)
    # everything up to 2 x 2 adds RU, RRU and RUU
    r = census(2, 2)
    assert (r.total, r.series_positive, r.weak_zconvex, r.zconvex) == (6, 6, 6, 6)


def test_census_two_by_two_block():
    r = census(2, 2, audit=1.0)
    assert r.containments_hold and not r.audit["mismatches"]
    assert r.audit["sampled"] == r.total


def test_census_four():
    r = census(4, 4, audit=0.05, seed=3)
    assert r.total == sum(len(enumerate_curves(m, n)) for m in range(1, 5) for n in range(1, 5))
    assert r.containments_hold
    assert not r.audit["mismatches"]
    assert r.zconvex <= r.weak_zconvex <= r.series_positive <= r.total


class DictCache:
    def __init__(self):
        self.d = {}
        self.loaded = set()

    def get(self, w):
        return self.d.get(w)

    def hit(self, w):
        return w in self.loaded

    def put(self, w, F, rep, engine):
        self.d[w] = {"F": F.to_json(), "report": rep.to_json()}


def test_census_cache_reuse():
    cache = DictCache()
    first = census(3, 3, cache=cache)
    cache.loaded = set(cache.d)
    second = census(3, 3, cache=cache, cache_check=1.0)
    assert first.to_json()["total"] == second.to_json()["total"] == 31
    assert second.series_positive == first.series_positive
    assert second.cache_checks["sampled"] == 31 and not second.cache_checks["mismatches"]
