"""Positivity and symmetry diagnostics for F_C, the census over small curves,
unimodality of superpolynomial coefficients and the t = 1 path sum."""

import random
import time
from dataclasses import dataclass, field

from .exactcoef import APoly, LaurentQT, RatQT, series_nonneg
from .curve import enumerate_curves, parse, points_on, classify_point, stats, z_convex
from .symfunc import DEFAULT, SymF


class PositivityError(ValueError):
    pass


def _poly(c):
    """Coefficient as a LaurentQT in integer powers of q and t."""
    if isinstance(c, RatQT):
        if not c.is_polynomial():
            raise PositivityError("coefficient is not a Laurent polynomial: %s" % c)
        c = c.to_poly()
    if isinstance(c, int):
        c = LaurentQT.const(c)
    for (eq, et) in c.terms:
        if eq % 2 or et % 2:
            raise PositivityError("half-integral exponent in %s" % c)
    return c


def _t_slices(c):
    """{q-power: ([t-coefficients low to high], lowest t-power)}."""
    rows = {}
    for (eq, et), v in c.terms.items():
        rows.setdefault(eq // 2, {})[et // 2] = v
    out = {}
    for i, row in rows.items():
        lo, hi = min(row), max(row)
        out[i] = ([row.get(j, 0) for j in range(lo, hi + 1)], lo)
    return out


def first_negative(p, j):
    """(n, c): the first negative coefficient c of t^n in p(t)/(1-t)^j, or None."""
    if series_nonneg(p, j):
        return None
    # p_i summed j times; a negative value exists, so the scan terminates
    row = list(p)
    n = 0
    while True:
        if n >= len(row):
            row.append(0)
        acc = row[:n + 1]
        for _ in range(j):
            s, nxt = 0, []
            for v in acc:
                s += v
                nxt.append(s)
            acc = nxt
        if acc[n] < 0:
            return n, acc[n]
        n += 1


@dataclass
class PositivityReport:
    word: str
    k: int
    schur_positive: bool
    series_positive: bool
    qt_symmetric: bool
    witness: tuple = None
    series_witness: tuple = None
    zconvex: bool = None
    weak_zconvex: bool = None
    unimodal: dict = field(default=None, repr=False)

    @classmethod
    def from_json(cls, d):
        tup = lambda w: (tuple(w[0]),) + tuple(w[1:]) if w else None
        return cls(d["word"], d["k"], d["schur_positive"], d["series_positive"],
                   d["qt_symmetric"], tup(d.get("witness")), tup(d.get("series_witness")),
                   d.get("zconvex"), d.get("weak_zconvex"), d.get("unimodal"))

    def to_json(self):
        d = {"word": self.word, "k": self.k, "schur_positive": self.schur_positive,
             "series_positive": self.series_positive, "qt_symmetric": self.qt_symmetric,
             "witness": list(self.witness) if self.witness else None,
             "series_witness": list(self.series_witness) if self.series_witness else None}
        if self.zconvex is not None:
            d["zconvex"] = self.zconvex
            d["weak_zconvex"] = self.weak_zconvex
        if self.unimodal is not None:
            d["unimodal"] = self.unimodal
        return d


def classify(C, F, convexity=False):
    """Positivity report for F = F_C in the Schur basis.

    Witnesses are (partition, q-power, t-power, coefficient).  For the
    series the coefficient is that of (1 - t)^(1-k) F_C.
    """
    if isinstance(C, str):
        C = parse(C)
    k = stats(C).k
    F = F.convert("s") if F.basis != "s" else F
    witness = series_w = None
    sym = True
    # s_m first, then down in reverse lexicographic order
    for lam in sorted(F.terms, reverse=True):
        c = _poly(F.terms[lam])
        if c.swap_qt() != c:
            sym = False
        for i, (row, lo) in sorted(_t_slices(c).items()):
            if witness is None:
                for j, v in enumerate(row):
                    if v < 0:
                        witness = (lam, i, lo + j, v)
                        break
            if series_w is None:
                hit = first_negative(row, k - 1)
                if hit:
                    series_w = (lam, i, lo + hit[0], hit[1])
    rep = PositivityReport(C.word, k, witness is None, series_w is None, sym, witness, series_w)
    if convexity:
        rep.zconvex = z_convex(C)
        rep.weak_zconvex = z_convex(C, weak=True)
    return rep


# ---------------------------------------------------------------------------
# unimodality

def _unimodal(seq):
    """Index of the first interior dip (as a run of positions), or None."""
    n = len(seq)
    i = 0
    while i + 1 < n and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < n and seq[i] >= seq[i + 1]:
        i += 1
    if i + 1 >= n:
        return None
    # seq[i] < seq[i+1] after a descent: back up to the valley run
    hi = i
    lo = i
    while lo > 0 and seq[lo - 1] == seq[hi]:
        lo -= 1
    return lo - 1, hi + 1


@dataclass
class UnimodalityReport:
    unimodal: bool
    parity_unimodal: bool
    violations: list

    def to_json(self):
        return {"unimodal": self.unimodal, "parity_unimodal": self.parity_unimodal,
                "violations": self.violations}


def _slice_report(c, adeg):
    """Anti-diagonal and parity checks for one q,t Laurent polynomial."""
    viol = []
    diag = {}
    for (eq, et), v in c.terms.items():
        diag.setdefault(eq + et, {})[eq] = v
    for d in sorted(diag):
        row = diag[d]
        hi, lo = max(row), min(row)
        qs = list(range(hi, lo - 1, -2))
        seq = [row.get(x, 0) for x in qs]
        hit = _unimodal(seq)
        if hit:
            a, b = hit
            viol.append({"a": adeg, "kind": "antidiagonal",
                         "terms": [[qs[j] // 2, (d - qs[j]) // 2, seq[j]] for j in range(a, b + 1)]})
    parity_ok = True
    if all(et == 0 for _, et in c.terms):
        by_q = {eq // 2: v for (eq, _), v in c.terms.items()} if all(eq % 2 == 0 for eq, _ in c.terms) \
            else {eq: v for (eq, _), v in c.terms.items()}
        hi, lo = max(by_q), min(by_q)
        for par in (0, 1):
            qs = [x for x in range(hi, lo - 1, -1) if x % 2 == par]
            seq = [by_q.get(x, 0) for x in qs]
            while seq and seq[0] == 0:
                seq.pop(0)
                qs.pop(0)
            while seq and seq[-1] == 0:
                seq.pop()
                qs.pop()
            hit = _unimodal(seq)
            if hit:
                parity_ok = False
                a, b = hit
                viol.append({"a": adeg, "kind": "parity", "parity": par,
                             "terms": [[qs[j], seq[j]] for j in range(a, b + 1)]})
    return viol, parity_ok


def unimodality(P):
    """q,t-unimodality per a-degree (along each anti-diagonal q^i t^j, i + j fixed)
    and parity-unimodality of t-free slices.

    Accepts an APoly, a LaurentQT (treated as a single slice) or a RatQT
    that is a polynomial.
    """
    if isinstance(P, RatQT):
        P = P.to_poly()
    if isinstance(P, int):
        P = LaurentQT.const(P)
    slices = P.by_a_degree() if isinstance(P, APoly) else {0: P}
    viol = []
    par = True
    for adeg in sorted(slices):
        v, p = _slice_report(slices[adeg], adeg)
        viol.extend(v)
        par = par and p
    return UnimodalityReport(not any(x["kind"] == "antidiagonal" for x in viol), par, viol)


# ---------------------------------------------------------------------------
# t = 1

def _paths(m, n):
    def rec(x, y, acc):
        if (x, y) == (m, n):
            yield acc
            return
        if x < m:
            yield from rec(x + 1, y, acc + "R")
        if y < n:
            yield from rec(x, y + 1, acc + "U")
    yield from rec(0, 0, "")


def _vertices(word):
    x = y = 0
    pts = [(0, 0)]
    for ch in word:
        if ch == "R":
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return pts


def path_area(word):
    """Unit squares below the path inside the rectangle."""
    y = a = 0
    for ch in word:
        if ch == "U":
            y += 1
        else:
            a += y
    return a


def _runs(word):
    """Sizes a_0..a_n of the horizontal runs at each height."""
    runs = [0]
    for ch in word:
        if ch == "R":
            runs[-1] += 1
        else:
            runs.append(0)
    return tuple(runs)


def t1_paths(C):
    """Lattice paths below C through every lattice point on C, with their q-exponent."""
    if isinstance(C, str):
        C = parse(C)
    on = set(points_on(C))
    top = path_area(stats(C).path)
    out = []
    for w in _paths(C.m, C.n):
        pts = _vertices(w)
        if any(classify_point(C, *p) > 0 for p in pts):
            continue
        if not on.issubset(pts):
            continue
        out.append((w, top - path_area(w), _runs(w)))
    return out


def t1_sum(C, ring=DEFAULT):
    """sum_P q^(area(P_C) - area(P)) h_P, in the h basis."""
    terms = {}
    for _, e, runs in t1_paths(C):
        lam = tuple(sorted((r for r in runs if r), reverse=True))
        terms[lam] = terms.get(lam, 0) + LaurentQT.monomial((2 * e, 0))
    return SymF(ring, "h", {k: v for k, v in terms.items() if v})


def at_t1(F):
    return F.map_coeffs(lambda c: _poly(c).at_t1())


# ---------------------------------------------------------------------------
# census

@dataclass
class CensusResult:
    m_max: int
    n_max: int
    total: int = 0
    series_positive: int = 0
    weak_zconvex: int = 0
    zconvex: int = 0
    schur_positive: int = 0
    containment_failures: list = field(default_factory=list)
    audit: dict = field(default_factory=dict)
    cache_checks: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def containments_hold(self):
        return not self.containment_failures

    def to_json(self):
        return {"m_max": self.m_max, "n_max": self.n_max, "total": self.total,
                "series_positive": self.series_positive, "weak_zconvex": self.weak_zconvex,
                "zconvex": self.zconvex, "schur_positive": self.schur_positive,
                "containments_hold": self.containments_hold,
                "containment_failures": self.containment_failures, "audit": self.audit,
                "cache_checks": self.cache_checks, "seconds": round(self.seconds, 1)}


def _engine(name):
    if name == "a":
        from .daha import F_of_sym
        return F_of_sym
    if name == "b":
        from .eha import F_fast
        return F_fast
    if name == "c":
        from .magic import F_magic
        return F_magic
    raise ValueError("unknown engine %r" % name)


def _work(args):
    """Census record for one (m, n) block of curves."""
    m, n, engine = args
    fn = _engine(engine)
    out = []
    for C in enumerate_curves(m, n):
        F = fn(C)
        out.append((C.word, F, classify(C, F, convexity=True)))
    return out


def census(m_max, n_max, jobs=1, engine="b", audit=0.01, seed=0, cache=None,
           cache_check=0.001, progress=None, m_min=1, n_min=1):
    """Counts over all curves with m_min <= m <= m_max, n_min <= n <= n_max.

    The F_C come from `engine` (B by default).  A seeded random fraction
    `audit` of the curves is recomputed by Engine A and compared.  With a
    cache, hits skip the computation and a fraction `cache_check` of them
    is recomputed.
    """
    t0 = time.time()
    res = CensusResult(m_max, n_max)
    blocks = [(m, n) for m in range(m_min, m_max + 1) for n in range(n_min, n_max + 1)]
    records = {}
    todo = []
    for m, n in blocks:
        if cache is not None and all(cache.get(C.word) is not None for C in enumerate_curves(m, n)):
            for C in enumerate_curves(m, n):
                rec = cache.get(C.word)
                rep = rec["report"]
                if isinstance(rep, dict):
                    rep = PositivityReport.from_json(rep)
                records[C.word] = (C, _as_symf(rec["F"]), rep)
        else:
            todo.append((m, n, engine))
    if jobs > 1 and len(todo) > 1:
        from multiprocessing import Pool
        # largest blocks first so the pool stays busy
        todo.sort(key=lambda b: -(b[0] * b[1]))
        with Pool(jobs) as pool:
            chunks = pool.imap_unordered(_work, todo)
            for block in chunks:
                _absorb(block, records, cache, engine, progress)
    else:
        for b in todo:
            _absorb(_work(b), records, cache, engine, progress)
    rng = random.Random(seed)
    words = sorted(records, key=lambda w: (records[w][0].m, records[w][0].n, w))
    for w in words:
        C, F, rep = records[w]
        res.total += 1
        res.series_positive += rep.series_positive
        res.schur_positive += rep.schur_positive
        res.weak_zconvex += rep.weak_zconvex
        res.zconvex += rep.zconvex
        if rep.zconvex and not rep.weak_zconvex:
            res.containment_failures.append([w, "zconvex but not weakly zconvex"])
        if rep.weak_zconvex and not rep.series_positive:
            res.containment_failures.append([w, "weakly zconvex but not series positive"])
    if audit:
        k = max(1, round(audit * len(words)))
        sample = sorted(rng.sample(words, k))
        ref = _engine("a")
        bad = [w for w in sample if ref(records[w][0]) != records[w][1]]
        res.audit = {"engine": "a", "sampled": k, "mismatches": bad}
    if cache is not None and cache_check:
        hits = [w for w in words if getattr(cache, "hit", lambda _: False)(w)]
        if hits:
            k = max(1, round(cache_check * len(hits)))
            fn = _engine(engine)
            sample = sorted(rng.sample(hits, k))
            bad = [w for w in sample if fn(records[w][0]) != records[w][1]]
            res.cache_checks = {"sampled": k, "mismatches": bad}
    res.seconds = time.time() - t0
    return res


def _as_symf(F):
    if isinstance(F, SymF):
        return F
    return SymF.from_json(DEFAULT, F)


def _absorb(block, records, cache, engine, progress):
    for w, F, rep in block:
        C = parse(w)
        records[w] = (C, F, rep)
        if cache is not None:
            cache.put(w, F, rep, engine)
    if progress and block:
        C = parse(block[0][0])
        progress(C.m, C.n, len(block))
