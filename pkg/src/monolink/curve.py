"""Monotone lattice curves encoded as words over R, U and *.

A curve from (0,0) to (m,n) is determined by its column heights
a_x = floor(f(x)) for x = 0..m and the set of columns where it passes
through the lattice point (x, a_x).  In the word, the U's before the
(x+1)-th R bring the height to a_x, and a * after them marks that
(x, a_x) lies on the curve.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcoef import EpsScalar, LaurentQT, eps_orient

STAR = "*"


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    m: int
    n: int
    word: str

    def __str__(self):
        return self.word

    @property
    def heights(self):
        return _heights(self.word)[0]

    @property
    def stars(self):
        return _heights(self.word)[1]

    @property
    def is_primitive(self):
        return STAR not in self.word


@lru_cache(maxsize=None)
def _heights(word):
    """Column heights a_0..a_m and the set of starred columns."""
    a, stars = [0], set()
    h = r = 0
    for ch in word:
        if ch == "R":
            if r:
                a.append(h)
            r += 1
        elif ch == "U":
            h += 1
        else:
            stars.add(r)
    a.append(h)
    return tuple(a), frozenset(stars)


def parse(word, m=None, n=None):
    """Validate a curve word.  m and n default to the letter counts."""
    word = word.strip()
    for pos, ch in enumerate(word):
        if ch not in "RU*":
            raise CurveError("bad symbol %r at position %d" % (ch, pos))
    r, u = word.count("R"), word.count("U")
    if m is None:
        m = r
    if n is None:
        n = u
    if m < 1 or n < 1:
        raise CurveError("m and n must be positive")
    if r != m or u != n:
        raise CurveError("count mismatch: word has %d R and %d U, expected %d and %d" % (r, u, m, n))
    if word[0] != "R":
        raise CurveError("word must start with R (position 0)")
    if word[-1] != "U":
        raise CurveError("word must end with U (position %d)" % (len(word) - 1))
    for pos, ch in enumerate(word):
        if ch == STAR:
            if word[pos - 1] != "U" or pos + 1 >= len(word) or word[pos + 1] != "R":
                raise CurveError("* at position %d must sit between U and R" % pos)
    return CurveSpec(m, n, word)


def render(C):
    return C.word


def from_heights(a, stars=()):
    """Word for column heights a_0..a_m (a_0 = 0, a_m = n) and starred columns."""
    m = len(a) - 1
    out = []
    for x in range(m):
        if x > 0:
            out.append("U" * (a[x] - a[x - 1]))
            if x in stars:
                out.append(STAR)
        out.append("R")
    out.append("U" * (a[m] - a[m - 1]))
    return "".join(out)


def _enum_words(m, n):
    words = []

    def rec(x, prev, acc):
        if x == m:
            words.append(acc + "U" * (n - prev))
            return
        for h in range(prev, n):
            step = acc + "U" * (h - prev)
            rec(x + 1, h, step + "R")
            if h > prev:
                rec(x + 1, h, step + "*R")

    rec(1, 0, "R")
    return sorted(words)


def enumerate_curves(m, n):
    """All monotone curves (0,0) -> (m,n) in lexicographic word order."""
    return [CurveSpec(m, n, w) for w in _enum_words(m, n)]


def primitive_curves(m, n):
    return [C for C in enumerate_curves(m, n) if C.is_primitive]


# ---------------------------------------------------------------------------
# lattice classification

def classify_point(C, x, y):
    """-1 strictly below, 0 on, +1 strictly above C."""
    a, stars = _heights(C.word)
    if (x, y) == (0, 0) or (x, y) == (C.m, C.n):
        return 0
    if x == 0:
        return 1 if y > 0 else -1
    if y > a[x]:
        return 1
    if y == a[x] and x in stars:
        return 0
    return -1


def points_on(C):
    a, stars = _heights(C.word)
    return [(0, 0)] + [(x, a[x]) for x in sorted(stars)] + [(C.m, C.n)]


def points_above(C):
    a, _ = _heights(C.word)
    pts = [(0, y) for y in range(1, C.n + 1)]
    for x in range(1, C.m + 1):
        pts.extend((x, y) for y in range(a[x] + 1, C.n + 1))
    return pts


def points_strictly_below(C):
    a, stars = _heights(C.word)
    pts = [(x, y) for x in range(1, C.m + 1) for y in range(0, a[x] + 1)]
    return [p for p in pts if classify_point(C, *p) == -1]


@dataclass(frozen=True)
class CurveStats:
    k: int
    segments: tuple
    path: str
    lam: tuple
    b: tuple
    S: frozenset
    eps: tuple
    area: int
    interior_below: int
    writhe: int

    def to_json(self):
        return {"k": self.k, "b": list(self.b), "eps": list(self.eps), "w": self.writhe,
                "lambda": list(self.lam), "S": sorted(self.S), "area": self.area,
                "b_interior": self.interior_below, "path": self.path,
                "segments": [s.word for s in self.segments]}


def segments(C):
    parts = C.word.split(STAR)
    return tuple(CurveSpec(p.count("R"), p.count("U"), p) for p in parts)


@lru_cache(maxsize=None)
def _stats(C):
    m = C.m
    a, stars = _heights(C.word)
    lam = tuple(a[m - i] for i in range(m + 1))
    b = tuple(lam[i - 1] - lam[i] for i in range(1, m + 1))
    S = frozenset(m - x for x in stars)
    eps = tuple(0 if i in S else 1 for i in range(1, m))
    area = sum(a[:m])
    interior = sum(a[x] - (1 if x in stars else 0) for x in range(1, m))
    k = 1 + len(stars)
    w = (k - 1) + (m - 1) + 2 * interior
    return CurveStats(k, segments(C), C.word.replace(STAR, ""), lam, b, S, eps, area, interior, w)


def stats(C):
    return _stats(C)


def to_json(C, with_convexity=True):
    s = stats(C)
    d = {"word": C.word, "m": C.m, "n": C.n, "k": s.k, "b": list(s.b), "eps": list(s.eps),
         "w": s.writhe}
    if with_convexity:
        d["zconvex"] = z_convex(C)
        d["weak_zconvex"] = z_convex(C, weak=True)
    return d


def reflect(C):
    """Image of C under (x, y) -> (n - y, m - x): a curve (0,0) -> (n,m)."""
    m, n = C.m, C.n
    # reversing the traversal swaps R and U; the stars stay between U and R
    w = C.word[::-1].translate(str.maketrans("RU", "UR"))
    return CurveSpec(n, m, w)


# ---------------------------------------------------------------------------
# almost linear curves and skein triples

def almost_linear(m, n):
    """The primitive curve passing just above the diagonal to (m, n)."""
    a = [(n * x) // m for x in range(m)] + [n]
    return CurveSpec(m, n, from_heights(a))


def concat(parts):
    """Join curves end to end; the junctions become lattice points on the curve."""
    return CurveSpec(sum(p.m for p in parts), sum(p.n for p in parts),
                     STAR.join(p.word for p in parts))


def skein_triple(C, star_index=None):
    """(C+, C-) for the leftmost star of C (or the given position in C.word)."""
    w = C.word
    pos = w.index(STAR) if star_index is None else star_index
    plus = w[:pos] + w[pos + 1:]
    minus = w[:pos - 1] + "RU" + w[pos + 2:]
    return CurveSpec(C.m, C.n, plus), CurveSpec(C.m, C.n, minus)


def skein_expand(C):
    """C as a signed sum of primitive curves: D_C0 = D_C+ - qt D_C-."""
    if C.is_primitive:
        return [(LaurentQT.const(1), C)]
    plus, minus = skein_triple(C)
    out = {}
    order = []
    for coef, D in ([(LaurentQT.const(1), plus), (LaurentQT.monomial((2, 2), -1), minus)]):
        for c2, E in skein_expand(D):
            key = E.word
            if key not in out:
                order.append(key)
                out[key] = (coef * c2, E)
            else:
                out[key] = (out[key][0] + coef * c2, E)
    return [out[k] for k in order if out[k][0]]


# ---------------------------------------------------------------------------
# Z-convexity

def _hull(points):
    """Convex hull (counter-clockwise, no collinear points) of EpsScalar points."""
    pts = sorted(set(points), key=_EpsKey)
    if len(pts) <= 1:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and eps_orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and eps_orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class _EpsKey:
    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __lt__(self, other):
        a, b = self.p, other.p
        s = (a[0] - b[0]).sign()
        if s:
            return s < 0
        return (a[1] - b[1]).sign() < 0


def _inside(hull, pt):
    """Point inside or on the boundary of the hull polygon."""
    if not hull:
        return False
    if len(hull) == 1:
        return hull[0] == pt
    if len(hull) == 2:
        a, b = hull
        if eps_orient(a, b, pt) != 0:
            return False
        return (min(a[0], b[0], key=_EpsKey) <= pt[0] <= max(a[0], b[0], key=_EpsKey)
                and min(a[1], b[1], key=_EpsKey) <= pt[1] <= max(a[1], b[1], key=_EpsKey))
    n = len(hull)
    return all(eps_orient(hull[i], hull[(i + 1) % n], pt) >= 0 for i in range(n))


def hull_set(C, weak=False):
    E = EpsScalar
    above = points_above(C)
    on = points_on(C)
    if weak:
        on = [on[0], on[-1]]
    pts = [(E(x), E(y)) for x, y in above]
    pts += [(E(x, -1), E(y, 1)) for x, y in on]
    return pts


def z_convex(C, weak=False):
    """Exact Z-convexity (weak: only the two corner points are shifted)."""
    hull = _hull(hull_set(C, weak))
    above = set(points_above(C))
    E = EpsScalar
    for x in range(C.m + 1):
        for y in range(C.n + 1):
            if (x, y) in above:
                continue
            if _inside(hull, (E(x), E(y))):
                return False
    return True


def slope_criterion(parts):
    """Slopes of the almost linear pieces weakly decrease: m_1/n_1 >= m_2/n_2 >= ..."""
    return all(Fraction(p.m, p.n) >= Fraction(r.m, r.n) for p, r in zip(parts, parts[1:]))


# ---------------------------------------------------------------------------
# expansion of a Z-convex primitive curve in piecewise almost linear ones

def _chains(m, n):
    """All chains of lattice points (0,0) < p_1 < ... < (m,n) strictly increasing."""
    out = []

    def rec(x, y, acc):
        if (x, y) == (m, n):
            out.append(tuple(acc))
            return
        for x2 in range(x + 1, m + 1):
            for y2 in range(y + 1, n + 1):
                if (x2 == m) != (y2 == n):
                    continue
                rec(x2, y2, acc + [(x2, y2)])

    rec(0, 0, [(0, 0)])
    return out


def convex_expand(C):
    """D_C = sum (-1)^(k-1)/(qt)^(k-1+a(C,C')) D_C'_1 ... D_C'_k.

    C' runs over concatenations of almost linear pieces that never dip
    below C; a(C, C') counts lattice points strictly between the two.
    """
    if not C.is_primitive:
        raise CurveError("convex_expand needs a primitive curve")
    if not z_convex(C):
        raise CurveError("convex_expand needs a Z-convex curve")
    below = points_strictly_below(C)
    above = set(points_above(C))
    out = []
    for chain in _chains(C.m, C.n):
        parts = [almost_linear(q[0] - p[0], q[1] - p[1]) for p, q in zip(chain, chain[1:])]
        if not slope_criterion(parts):
            continue
        Cp = concat(parts)
        # a point below C may not sit on or above C'
        if any(classify_point(Cp, *p) >= 0 for p in below):
            continue
        a = sum(1 for p in above if classify_point(Cp, *p) == -1)
        k = len(parts)
        coef = LaurentQT.monomial((-2 * (k - 1 + a), -2 * (k - 1 + a)), (-1) ** (k - 1))
        out.append((coef, Cp))
    return out
