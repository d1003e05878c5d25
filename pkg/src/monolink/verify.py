"""Verification suites.

Each suite returns {"suite", "passed", "checked", "failures", ...}; failures
are short dicts carrying enough of both sides to see the difference.
"""

import random
import time
from fractions import Fraction
from importlib import resources

from .curve import enumerate_curves, parse, skein_triple, stats
from .exactcoef import APoly, EpsScalar, LaurentQT, RatQT, eps_orient, series_nonneg
from .notation import format_schur, parse_qt, parse_schur
from .symfunc import DEFAULT, Alphabet

q = LaurentQT.monomial((2, 0))
t = LaurentQT.monomial((0, 2))
A3_WORD = "RRRURRRURURRUURUU"

# keyed by (m_min, n_min, m_max, n_max)
CENSUS_EXPECTED = {
    (1, 1, 7, 7): {"total": 24319, "series_positive": 6781, "weak_zconvex": 4257, "zconvex": 3313},
    (2, 2, 2, 2): {"total": 3, "series_positive": 3, "weak_zconvex": 3, "zconvex": 3},
    (1, 1, 1, 1): {"total": 1, "series_positive": 1, "weak_zconvex": 1, "zconvex": 1},
}


def _data(name):
    return resources.files("monolink").joinpath("data", name).read_text()


def table1_reference():
    """The distinct F_C of the m, n <= 3 table, as SymF values."""
    return [parse_schur(line) for line in _data("table1.txt").splitlines()
            if line.strip() and not line.startswith("#")]


def a3_reference():
    """(s_10 coefficient, top a-degree HOMFLY coefficient) for the (10,7) curve."""
    return parse_qt(_data("a3_s10.txt").strip()), parse_qt(_data("a3_homfly_top.txt").strip())


def _curves(m_max, n_max):
    return [C for m in range(1, m_max + 1) for n in range(1, n_max + 1)
            for C in enumerate_curves(m, n)]


def _fn(engine):
    from .positivity import _engine
    return _engine(engine)


class _Run:
    def __init__(self, name):
        self.name = name
        self.checked = 0
        self.failures = []
        self.extra = {}
        self.t0 = time.time()

    def check(self, ok, **detail):
        self.checked += 1
        if not ok:
            self.failures.append(detail)
        return ok

    def report(self):
        out = {"suite": self.name, "passed": not self.failures, "checked": self.checked,
               "failures": self.failures, "seconds": round(time.time() - self.t0, 2)}
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------

def suite_table1(engines=("a", "b", "c"), **_):
    """Every curve with m, n <= 3 has a tabulated F_C; the engines agree."""
    from .daha import F_of
    run = _Run("table1")
    ref = table1_reference()
    hit = [False] * len(ref)
    curves = _curves(3, 3)
    for C in curves:
        F = F_of(C)
        idx = [i for i, R in enumerate(ref) if R == F]
        for i in idx:
            hit[i] = True
        run.check(bool(idx), word=C.word, engine="a", got=format_schur(F))
        for e in engines:
            if e == "a":
                continue
            G = _fn(e)(C)
            run.check(G == F, word=C.word, engine=e, got=format_schur(G), want=format_schur(F))
    for i, R in enumerate(ref):
        run.check(hit[i], unused_reference=format_schur(R))
    run.extra["curves"] = len(curves)
    run.extra["matches"] = sum(1 for f in run.failures if f.get("engine") == "a")
    run.extra["matches"] = len(curves) - run.extra["matches"]
    return run.report()


def suite_examples(**_):
    """The three curves RURU, RRUU, RU*RU through every intermediate stage."""
    from .daha import D_one, F_of
    from .eha import EhaExpr, almost_linear_expansion, curve_expansion
    from .homfly import superpoly
    run = _Run("examples")
    s = DEFAULT.s
    a = APoly.monomial((1, 0, 0))
    F_want = {"RURU": s(1, 1) + s(2) * (q + t), "RRUU": s(2),
              "RU*RU": s(1, 1) + s(2) * (q + t - q * t)}
    for w, want in F_want.items():
        got = F_of(w)
        run.check(got == want, item="F", word=w, got=format_schur(got), want=format_schur(want))
    P_want = {"RURU": (q + t) * a - a ** -1, "RRUU": a, "RU*RU": (q + t - q * t) * a - a ** -1}
    for w, want in P_want.items():
        got = superpoly(w, normalized=True)
        run.check(got == want, item="normalized superpolynomial", word=w, got=str(got), want=str(want))
    one_t = 1 - t
    D_want = {"RURU": one_t * ((1 - t * t - q * t) * s(1, 1) + q * s(2)),
              "RRUU": one_t * (-t * s(1, 1) + s(2)),
              "RU*RU": one_t ** 2 * ((1 + t - q * t) * s(1, 1) + q * s(2))}
    for w, want in D_want.items():
        got = D_one(w).convert("s")
        run.check(got == want, item="D_C . 1", word=w, got=format_schur(got), want=format_schur(want))
    half = RatQT(1) / 2
    u22 = EhaExpr.gen(2, 2)
    u11sq = EhaExpr.gen(1, 1, 2)
    k2 = (1 - t * t) * (q * q - 1)
    k11 = (1 - t) ** 2 * (q - 1) ** 2
    qt2 = RatQT(1) / (2 * q * t)
    u_want = {"RURU": u22 * (half * k2) + u11sq * (half * k11),
              "RRUU": u22 * (qt2 * k2) - u11sq * (qt2 * k11),
              "RU*RU": u11sq * RatQT(k11)}
    u_got = {"RURU": almost_linear_expansion(2, 2), "RRUU": curve_expansion("RRUU"),
             "RU*RU": curve_expansion("RU*RU")}
    for w, want in u_want.items():
        run.check(u_got[w] == want, item="u-expansion", word=w, got=str(u_got[w]), want=str(want))
    return run.report()


def suite_census(mmax=7, nmax=7, jobs=1, engine="b", cache=None, audit=0.01, progress=None,
                 mmin=1, nmin=1, **_):
    """Census counts, the containments and an Engine-A audit."""
    from .positivity import census
    run = _Run("census")
    res = census(mmax, nmax, jobs=jobs, engine=engine, audit=audit, cache=cache, progress=progress,
                 m_min=mmin, n_min=nmin)
    run.extra["counts"] = res.to_json()
    want = CENSUS_EXPECTED.get((mmin, nmin, mmax, nmax))
    if want:
        got = {k: getattr(res, k) for k in want}
        run.check(got == want, item="counts", got=got, want=want)
    run.check(res.containments_hold, item="containments", failures=res.containment_failures[:20])
    if res.audit:
        run.check(not res.audit["mismatches"], item="engine A audit", audit=res.audit)
    if res.cache_checks:
        run.check(not res.cache_checks["mismatches"], item="cache check", checks=res.cache_checks)
    return run.report()


def suite_skein(max=4, engine="a", **_):
    """F(C+) = qt F(C-) + F(C0) at every lattice point on every curve."""
    run = _Run("skein")
    fn = _fn(engine)
    memo = {}

    def F(C):
        if C.word not in memo:
            memo[C.word] = fn(C)
        return memo[C.word]

    for C0 in _curves(max, max):
        for pos, ch in enumerate(C0.word):
            if ch != "*":
                continue
            plus, minus = skein_triple(C0, pos)
            lhs = F(plus)
            rhs = F(minus) * (q * t) + F(C0)
            run.check(lhs == rhs, plus=plus.word, minus=minus.word, zero=C0.word,
                      got=format_schur(lhs), want=format_schur(rhs))
    return run.report()


def suite_prop2_9(max=5, **_):
    """gamma e_N Y_1 X_1^d Y_1^-1 e_N . 1 = (-t)^d e_d[(1 - 1/t) X_N]."""
    from .daha import NPoly, apply_X, apply_Y1, gamma, npoly_from_sym, symmetrize
    run = _Run("prop2_9")
    for N in range(1, max + 1):
        for d in range(1, max + 1):
            g = apply_Y1(NPoly.one(N), inverse=True)
            for _ in range(d):
                g = apply_X(1, g)
            lhs = symmetrize(apply_Y1(g)).scale(gamma(N))
            ed = DEFAULT.e(d).plethysm(Alphabet(0, 1 - LaurentQT.monomial((0, -2))))
            ed = ed.map_coeffs(lambda c: c * LaurentQT.monomial((0, 2 * d), (-1) ** d))
            run.check(lhs == npoly_from_sym(ed, N), N=N, d=d)
    return run.report()


def suite_symmetry(max=4, engine="a", **_):
    run = _Run("symmetry")
    fn = _fn(engine)
    for C in _curves(max, max):
        F = fn(C)
        run.check(F == F.swap_qt() and F.is_homogeneous() and F.degree() == C.m, word=C.word,
                  got=format_schur(F))
    return run.report()


def suite_prop1_19(max=4, **_):
    """delta^k P^E at t = 1/q against the Hecke-trace HOMFLY, plus three traces."""
    from .daha import F_of_sym
    from .homfly import coxeter_braid, phi_annulus, verify_prop_1_19
    run = _Run("prop1_19")
    for C in _curves(max, max):
        rep = verify_prop_1_19(C, F_of_sym(C))
        run.check(rep.holds, word=C.word, lhs=str(rep.lhs), rhs=str(rep.rhs))
    s = DEFAULT.s
    traces = {"RURU": s(1, 1) * LaurentQT.monomial((-5, 0)) - s(2) * LaurentQT.monomial((1, 0)),
              "RRUU": s(1, 1) * LaurentQT.monomial((-3, 0)) - s(2) * LaurentQT.monomial((-1, 0)),
              "RU*RU": s(1, 1) * LaurentQT.monomial((-4, 0)) + s(2)}
    for w, want in traces.items():
        got = phi_annulus(coxeter_braid(w))
        run.check(got == want, item="trace", word=w, got=format_schur(got), want=format_schur(want))
    return run.report()


def suite_writhe(max=5, **_):
    """Writhe from the curve statistics against the Coxeter braid."""
    from .homfly import coxeter_braid
    run = _Run("writhe")
    for C in _curves(max, max):
        w1, w2 = stats(C).writhe, coxeter_braid(C).writhe
        run.check(w1 == w2, word=C.word, formula=w1, braid=w2)
    run.extra["C0"] = {"word": "RU*RU", "stated": 3, "computed": stats(parse("RU*RU")).writhe,
                       "braid": coxeter_braid("RU*RU").writhe}
    return run.report()


def suite_a3(engine="b", **_):
    """The (10,7) curve: s_10 coefficient, its unimodality, the HOMFLY coefficient."""
    from .positivity import unimodality, _poly
    run = _Run("a3")
    C = parse(A3_WORD)
    want, homfly_top = a3_reference()
    F = _fn(engine)(C)
    got = _poly(F[(10,)])
    run.check(got == want, item="s_10 coefficient", got=str(got), want=str(want))
    rep = unimodality(got)
    viol = rep.violations
    run.extra["violations"] = viol
    run.check(not rep.unimodal, item="q,t-unimodal should fail")
    triple = {(7, 5, 6), (6, 6, 5), (5, 7, 6)}
    run.check(len(viol) == 1 and set(map(tuple, viol[0]["terms"])) == triple,
              item="violation at (7,5),(6,6),(5,7)", violations=viol)
    at = got.subs_t_inv_q() * LaurentQT.monomial((32, 0))
    run.check(at == homfly_top, item="t = 1/q times q^16", got=str(at), want=str(homfly_top))
    hrep = unimodality(homfly_top)
    run.check(not hrep.parity_unimodal, item="HOMFLY coefficient parity-unimodal should fail")
    return run.report()


def suite_t1(max=4, engine="a", **_):
    """Path sum at t = 1 against the specialization of F_C."""
    from .positivity import at_t1, t1_paths, t1_sum
    run = _Run("t1")
    fn = _fn(engine)
    for C in _curves(max, max):
        F = fn(C)
        lhs, rhs = t1_sum(C), at_t1(F)
        run.check(lhs == rhs.convert("h"), word=C.word, paths=format_schur(lhs), spec=format_schur(rhs))
        n_paths = len(t1_paths(C))
        top = F[(C.m,)]
        at11 = LaurentQT.const(top) if isinstance(top, int) else RatQT.coerce(top).to_poly()
        val = sum(at11.terms.values())
        run.check(val == n_paths, word=C.word, item="path count", paths=n_paths, coefficient=val)
    return run.report()


def suite_relations(degree=6, **_):
    from .eha import verify_relations
    run = _Run("relations")
    for row in verify_relations(degree):
        run.check(row["passed"], **{k: str(v) for k, v in row.items()})
    return run.report()


def suite_annulus(max=5, **_):
    from .homfly import annulus_powersum_check
    run = _Run("annulus")
    for N in range(1, max + 1):
        run.check(bool(annulus_powersum_check(N)), N=N)
    return run.report()


def coaxial_inputs(limit=7):
    """All lists of positive (m, n) with sum m, sum n <= limit."""
    out = []

    def rec(acc, sm, sn):
        if acc:
            out.append(list(acc))
        for m in range(1, limit - sm + 1):
            for n in range(1, limit - sn + 1):
                rec(acc + [(m, n)], sm + m, sn + n)

    rec([], 0, 0)
    return out


def suite_splice(max=7, **_):
    """Edge inequality holds for slope-nonincreasing inputs, fails otherwise."""
    from .homfly import splice
    run = _Run("splice")
    failing_increasing = 0
    for pairs in coaxial_inputs(max):
        slopes = [Fraction(m, n) for m, n in pairs]
        convex = all(x >= y for x, y in zip(slopes, slopes[1:]))
        alg = splice(pairs)[1]
        if convex:
            run.check(alg, pairs=pairs)
        elif not alg:
            failing_increasing += 1
    run.check(failing_increasing > 0, item="some slope-increasing input must fail")
    run.extra["increasing_failures"] = failing_increasing
    return run.report()


# ---------------------------------------------------------------------------
# property suites without a reference value

def truncated_series(p, j, extra=50):
    """Coefficients of p(t) / (1 - t)^j up to degree deg p + extra."""
    L = len(p) + extra
    row = list(p) + [0] * (L - len(p))
    for _ in range(j):
        acc = 0
        for i in range(L):
            acc += row[i]
            row[i] = acc
    return row


def truncation_oracle(p, j, window=50, limit=20000):
    """Nonnegativity by truncation.  The first negative coefficient can lie
    far beyond deg p + 50, so the window keeps growing up to `limit`."""
    while True:
        if any(c < 0 for c in truncated_series(p, j, window)):
            return False
        if window >= limit:
            return True
        window *= 4


def rational_orient(p1, p2, p3, eps=Fraction(1, 10 ** 9)):
    x1, y1 = (v.at(eps) if isinstance(v, EpsScalar) else v for v in p1)
    x2, y2 = (v.at(eps) if isinstance(v, EpsScalar) else v for v in p2)
    x3, y3 = (v.at(eps) if isinstance(v, EpsScalar) else v for v in p3)
    d = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
    return (d > 0) - (d < 0)


def _rand_eps(rng):
    # an integer coordinate plus an infinitesimal shift, as in the hull tests
    return EpsScalar(rng.randint(-20, 20), rng.randint(-20, 20))


def suite_properties(seed=0, series_cases=1000, eps_cases=10000, braids=50, **_):
    """HOMFLY Markov moves, series_nonneg, eps_orient and the DAHA relations."""
    from .homfly import BraidWord, homfly_braid, homfly_skein_tree, random_braid
    run = _Run("properties")
    rng = random.Random(seed)
    for _ in range(braids):
        m = rng.randint(1, 4)
        b = random_braid(rng, m, rng.randint(0, 6)) if m > 1 else BraidWord(1)
        P = homfly_skein_tree(b)
        moves = [b, b.stabilize(rng.choice((1, -1)))]
        if m > 1:
            moves.append(b.conjugate(random_braid(rng, m, 3)))
        run.check(all(homfly_braid(x) == P for x in moves), item="markov", braid=str(b))
    for _ in range(series_cases):
        p = [rng.randint(-5, 5) for _ in range(rng.randint(1, 13))]
        j = rng.randint(0, 6)
        run.check(series_nonneg(p, j) == truncation_oracle(p, j), item="series_nonneg", p=p, j=j)
    checked = 0
    while checked < eps_cases:
        pts = [(_rand_eps(rng), _rand_eps(rng)) for _ in range(3)]
        got = eps_orient(*pts)
        if got == 0:
            continue
        checked += 1
        run.check(got == rational_orient(*pts), item="eps_orient", points=str(pts))
    for i in range(4):
        run.check(_daha_relations(random.Random(100 + i)), item="daha relations", seed=100 + i)
    return run.report()


def _rand_npoly(rng, N, deg, nterms=4):
    from .daha import NPoly
    terms = {}
    for _ in range(nterms):
        e = [0] * N
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(N)] += 1
        c = LaurentQT.monomial((rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(-3, 3))
        terms[tuple(e)] = terms.get(tuple(e), LaurentQT.const(0)) + c
    return NPoly.from_dict(N, terms)


def _daha_relations(rng):
    from .daha import apply_T, apply_X, apply_Y, apply_Y1
    N = 3
    f = _rand_npoly(rng, N, 3)
    T = LaurentQT.monomial((0, 1))
    ok = True
    for i in (1, 2):
        g = apply_T(i, f) - f.scale(T ** -1)
        ok &= (apply_T(i, g) + g.scale(T)).is_zero()
        ok &= apply_T(i, apply_X(i, apply_T(i, f))) == apply_X(i + 1, f)
        ok &= apply_T(i, apply_Y(i, apply_T(i, f, True)), True) == apply_Y(i + 1, f)
    ok &= apply_T(1, apply_T(2, apply_T(1, f))) == apply_T(2, apply_T(1, apply_T(2, f)))
    ok &= apply_Y(1, apply_Y(2, f)) == apply_Y(2, apply_Y(1, f))

    def allX(g):
        for j in range(1, N + 1):
            g = apply_X(j, g)
        return g

    ok &= apply_Y1(allX(f)) == allX(apply_Y1(f)).scale(q)
    ok &= apply_Y(2, apply_T(1, apply_T(1, apply_X(1, f)))) == apply_X(1, apply_Y(2, f))
    f4 = _rand_npoly(rng, 4, 2)
    ok &= apply_T(1, apply_T(3, f4)) == apply_T(3, apply_T(1, f4))
    ok &= apply_T(1, apply_X(3, f4)) == apply_X(3, apply_T(1, f4))
    return bool(ok)


SUITES = {
    "table1": suite_table1, "examples": suite_examples, "census": suite_census,
    "skein": suite_skein, "prop2_9": suite_prop2_9, "symmetry": suite_symmetry,
    "prop1_19": suite_prop1_19, "writhe": suite_writhe, "a3": suite_a3, "t1": suite_t1,
    "relations": suite_relations, "annulus": suite_annulus, "splice": suite_splice,
    "properties": suite_properties,
}


def run_suite(name, **opts):
    if name not in SUITES:
        raise KeyError("unknown suite %r (choose from %s)" % (name, ", ".join(SUITES)))
    return SUITES[name](**opts)
