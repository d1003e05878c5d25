"""Braids, the finite Hecke algebra, character traces and HOMFLY polynomials.

Conventions: sigma_i is a positive crossing and maps to T_i^-1 in the Hecke
algebra with (T_i - q^1/2)(T_i + q^-1/2) = 0.  The annular closure of a
braid goes to symmetric functions by

    phi(beta) = (-q^1/2)^-m  omega  sum_lam Tr(T_beta; V_lam) s_lam

and to the disk by F -> F[(a - 1/a)/(1 - 1/q)], which gives a^w P(a, q)
with P(unknot) = (a - 1/a)/(q^-1/2 - q^1/2).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactcoef import APoly, LaurentQT, RatQT
from .curve import parse, stats
from .magic import syt
from .symfunc import DEFAULT, Alphabet, SymF, partitions, plethysm

Q = LaurentQT.monomial((1, 0))      # q^1/2
q = Q * Q
A = APoly.monomial((1, 0, 0))
Z = Q ** -1 - Q                      # the skein parameter q^-1/2 - q^1/2
UNKNOT = RatQT(A - A ** -1, [(Z, 1)])


# ---------------------------------------------------------------------------
# braid words

@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        for i, s in self.letters:
            if not 1 <= i < self.m or s not in (1, -1):
                raise ValueError("bad letter (%d, %d) for %d strands" % (i, s, self.m))

    @property
    def writhe(self):
        return sum(s for _, s in self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if self.m != other.m:
            raise ValueError("strand counts differ")
        return BraidWord(self.m, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.m, [(i, -s) for i, s in reversed(self.letters)])

    def conjugate(self, g):
        return g * self * g.inverse()

    def stabilize(self, sign=1):
        """Markov stabilization: add a strand and the letter sigma_m^sign."""
        return BraidWord(self.m + 1, self.letters + ((self.m, sign),))

    def reduce(self):
        out = []
        for x in self.letters:
            if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
                out.pop()
            else:
                out.append(x)
        return BraidWord(self.m, out)

    def permutation(self):
        """Where the strand starting at position p (0-based) ends up."""
        perm = list(range(self.m))
        pos = list(range(self.m))
        for i, _ in self.letters:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        for p, strand in enumerate(pos):
            perm[strand] = p
        return tuple(perm)

    def components(self):
        perm = self.permutation()
        seen, out = set(), []
        for p in range(self.m):
            if p not in seen:
                cyc = []
                while p not in seen:
                    seen.add(p)
                    cyc.append(p)
                    p = perm[p]
                out.append(cyc)
        return out

    def to_json(self):
        return {"m": self.m, "letters": [list(x) for x in self.letters], "writhe": self.writhe}

    def __str__(self):
        return " ".join("s%d%s" % (i, "" if s > 0 else "^-1") for i, s in self.letters) or "1"


def jucys_murphy(i, m):
    """l_i = sigma_(i-1) ... sigma_1 sigma_1 ... sigma_(i-1); l_1 is the identity."""
    down = [(j, 1) for j in range(i - 1, 0, -1)]
    return BraidWord(m, down + down[::-1])


def quasi_coxeter(eps):
    m = len(eps) + 1
    return BraidWord(m, [(i, 1) for i, e in enumerate(eps, 1) if e])


def coxeter_braid(C):
    """l_1^b_1 ... l_m^b_m cox(eps) from the b- and eps-data of C."""
    if isinstance(C, str):
        C = parse(C)
    st = stats(C)
    m = C.m
    w = BraidWord(m)
    for i, b in enumerate(st.b, 1):
        for _ in range(b):
            w = w * jucys_murphy(i, m)
    return w * quasi_coxeter(st.eps)


# ---------------------------------------------------------------------------
# Hecke algebra in the T_w basis

def _length(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def lehmer(w):
    return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))


def reduced_word(w):
    """Generators i with T_w = T_i1 T_i2 ... (bubble sort from the right)."""
    w = list(w)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    return word[::-1]


class HeckeElt:
    """sum c_w T_w over permutations w of 0..m-1 (one-line notation)."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, m):
        return cls(m, {tuple(range(m)): LaurentQT.const(1)})

    @classmethod
    def gen(cls, m, i):
        return cls.one(m).mul_T(i)

    def mul_T(self, i, inverse=False):
        """Right multiplication by T_i (or T_i^-1 = T_i - q^1/2 + q^-1/2)."""
        out = {}

        def add(w, c):
            v = out.get(w)
            out[w] = c if v is None else v + c

        for w, c in self.terms.items():
            ws = list(w)
            ws[i - 1], ws[i] = ws[i], ws[i - 1]
            ws = tuple(ws)
            if w[i - 1] < w[i]:
                add(ws, c)
            else:
                add(ws, c)
                add(w, c * (Q - Q ** -1))
            if inverse:
                add(w, c * (Q ** -1 - Q))
        return HeckeElt(self.m, out)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElt(self.m, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return HeckeElt(self.m, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HeckeElt):
            return self.scale(other)
        tot = HeckeElt(self.m)
        for w, c in other.terms.items():
            part = self
            for i in reduced_word(w):
                part = part.mul_T(i)
            tot = tot + part.scale(c)
        return tot

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and (self - other).terms == {}

    __hash__ = None

    def by_lehmer(self):
        return {lehmer(w): c for w, c in self.terms.items()}


def hecke_normal_form(beta):
    """Image of a braid word: sigma_i -> T_i^-1, sigma_i^-1 -> T_i."""
    x = HeckeElt.one(beta.m)
    for i, s in beta.letters:
        x = x.mul_T(i, inverse=(s > 0))
    return x


# ---------------------------------------------------------------------------
# seminormal representations and traces

def _content(cell):
    r, c = cell
    return c - r


class _Rep:
    """Young's seminormal form of V_lam for g_i = q^1/2 T_i, (g - q)(g + 1) = 0."""

    def __init__(self, lam):
        self.lam = lam
        self.basis = syt(lam)
        self.index = {T.cells: k for k, T in enumerate(self.basis)}
        self.gens = {}
        m = sum(lam)
        for i in range(1, m):
            self.gens[i] = [self._column(T, i) for T in self.basis]

    def _column(self, T, i):
        a = _content(T.cells[i]) - _content(T.cells[i - 1])
        qa = q ** a
        d = RatQT((q - 1) * qa, [(qa - 1, 1)])
        col = {self.index[T.cells]: d}
        if abs(a) > 1:
            cells = list(T.cells)
            cells[i - 1], cells[i] = cells[i], cells[i - 1]
            k = self.index[tuple(cells)]
            if a > 0:
                col[k] = RatQT(1)
            else:
                b = -a
                col[k] = RatQT((q ** (b + 1) - 1) * (q ** b - q), [(q ** b - 1, 2)])
        return col

    def act(self, vec, i, sign):
        """Apply sigma_i^sign, i.e. T_i^-sign, to a sparse column vector."""
        out = {}
        for k, c in vec.items():
            for j, g in self.gens[i][k].items():
                v = c * g
                out[j] = out[j] + v if j in out else v
        if sign > 0:
            # T^-1 = q^-1/2 (g - q + 1)
            for k, c in vec.items():
                v = c * (1 - q)
                out[k] = out[k] + v if k in out else v
        # T = q^-1/2 g as well
        return {k: v * Q ** -1 for k, v in out.items() if v}

    def trace(self, letters):
        tot = RatQT(0)
        for k in range(len(self.basis)):
            vec = {k: RatQT(1)}
            for i, s in reversed(letters):
                vec = self.act(vec, i, s)
            tot = tot + vec.get(k, RatQT(0))
        return tot


@lru_cache(maxsize=None)
def _rep(lam):
    return _Rep(lam)


def _poly(c):
    return c.to_poly() if isinstance(c, RatQT) and c.is_polynomial() else c


def trace_braid(beta):
    """Tr_Lambda(T_beta) = sum_lam Tr(T_beta; V_lam) s_lam."""
    if beta.m > 8:
        raise ValueError("traces are supported for at most 8 strands")
    d = {}
    for lam in partitions(beta.m):
        v = _rep(lam).trace(beta.letters)
        if v:
            d[lam] = _poly(v)
    return SymF(DEFAULT, "s", d)


def char_trace(x):
    """Tr_Lambda of a Hecke element given in the T_w basis."""
    tot = SymF(DEFAULT, "s", {})
    for w, c in x.terms.items():
        # T_w = T_i1 ... T_ik = image of sigma_i1^-1 ... sigma_ik^-1
        beta = BraidWord(x.m, [(i, -1) for i in reduced_word(w)])
        tot = tot + trace_braid(beta) * c
    return tot


def phi_annulus(beta):
    """(-q^1/2)^-m omega Tr_Lambda(T_beta)."""
    tr = trace_braid(beta).omega()
    return tr * (-Q) ** -beta.m


def _disk(F):
    """F[(a - 1/a)/(1 - 1/q)] as a RatQT with an a-polynomial numerator."""
    X = Alphabet(A - A ** -1) / (1 - q ** -1)
    v = plethysm(F, X)
    return RatQT(v) if not isinstance(v, RatQT) else v


def homfly_braid(beta):
    """HOMFLY of the closure of beta, P(unknot) = (a - 1/a)/(q^-1/2 - q^1/2)."""
    if beta.m == 0:
        return RatQT(1)
    return _disk(phi_annulus(beta)) * A ** -beta.writhe


def homfly(C):
    """HOMFLY of the link of C, through its Coxeter braid."""
    return homfly_braid(coxeter_braid(C))


def top_a_coefficient(P):
    """(a-degree, coefficient) of the lowest power of a in P."""
    num = P.num if isinstance(P, RatQT) else P
    slices = num.by_a_degree()
    e = min(slices)
    c = RatQT(slices[e], [(f, k) for f, k in P.den.items()]) if isinstance(P, RatQT) else slices[e]
    return e, c


# ---------------------------------------------------------------------------
# superpolynomials and the t = 1/q comparison

def superpoly(C, F=None, normalized=False):
    """F_C[a - 1/a]; with normalized=True divided by (a - 1/a)."""
    if F is None:
        from .daha import F_of
        F = F_of(C)
    v = plethysm(F, Alphabet(A - A ** -1))
    v = v if isinstance(v, APoly) else APoly.const(v) if not isinstance(v, RatQT) else v.to_poly()
    if normalized:
        r = v.exact_div(A - A ** -1)
        if r is None:
            raise ArithmeticError("superpolynomial not divisible by a - 1/a")
        return r
    return v


def _at_t_inv_q(F):
    return F.map_coeffs(lambda c: LaurentQT.const(c).subs_t_inv_q() if isinstance(c, int) else c.subs_t_inv_q())


@dataclass
class Prop119Report:
    word: str
    holds: bool
    k: int
    writhe_formula: int
    writhe_braid: int
    lhs: object = field(repr=False, default=None)
    rhs: object = field(repr=False, default=None)

    def to_json(self):
        return {"word": self.word, "holds": self.holds, "k": self.k,
                "writhe_formula": self.writhe_formula, "writhe_braid": self.writhe_braid,
                "lhs": str(self.lhs), "rhs": str(self.rhs)}


def verify_prop_1_19(C, F=None):
    """delta^k P^E(a, q, 1/q) against a^w P^HOMFLY(a, q), computed independently.

    The left side comes from F_C (DAHA route unless F is given); the right
    side from the Hecke trace of the Coxeter braid.
    """
    if isinstance(C, str):
        C = parse(C)
    if F is None:
        from .daha import F_of
        F = F_of(C)
    st = stats(C)
    beta = coxeter_braid(C)
    P = plethysm(_at_t_inv_q(F), Alphabet(A - A ** -1))
    lhs = RatQT(P, [(Z, st.k)]) if st.k else RatQT(P)
    rhs = homfly_braid(beta) * A ** beta.writhe
    return Prop119Report(C.word, lhs == rhs, st.k, st.writhe, beta.writhe, lhs, rhs)


def verify_trace_formula(C, F=None):
    """F_C at t = 1/q against (q^-1/2 - q^1/2)^k Tr(T_C)[X/(q^-1/2 - q^1/2)]."""
    if isinstance(C, str):
        C = parse(C)
    if F is None:
        from .daha import F_of
        F = F_of(C)
    st = stats(C)
    tr = trace_braid(coxeter_braid(C))
    rhs = plethysm(tr, Alphabet.X() / Z) * (RatQT(Z) ** st.k)
    rhs = rhs.map_coeffs(_poly)
    return _at_t_inv_q(F) == rhs


# ---------------------------------------------------------------------------
# annulus: W_N goes to p_N

def annulus_W_trace(N):
    """Tr_Lambda of (q^1/2 - q^-1/2)/(q^N/2 - q^-N/2) sum_i A_(i, N-1-i)."""
    if N == 0:
        return DEFAULT.one()
    tot = SymF(DEFAULT, "s", {})
    for i in range(N):
        beta = BraidWord(N, [(j, 1) for j in range(1, i + 1)] + [(j, -1) for j in range(i + 1, N)])
        tot = tot + trace_braid(beta)
    c = RatQT(Q - Q ** -1, [(Q ** N - Q ** -N, 1)])
    return (tot * c).map_coeffs(_poly)


def annulus_powersum_check(N):
    if N > 6:
        raise ValueError("N <= 6")
    return annulus_W_trace(N) == DEFAULT.p(N).convert("s")


# ---------------------------------------------------------------------------
# skein-tree HOMFLY (independent oracle, descending diagrams)

def _walk(beta):
    """Crossing indices in traversal order, with an over/under flag, and the
    number of components.  Each component starts at its lowest position at
    the bottom of the braid."""
    seq = []
    comps = beta.components()
    for cyc in comps:
        p = min(cyc)
        start = p
        while True:
            for k, (i, s) in enumerate(beta.letters):
                if p == i - 1:
                    seq.append((k, s > 0))
                    p = i
                elif p == i:
                    seq.append((k, s < 0))
                    p = i - 1
            if p == start:
                break
    return seq, len(comps)


@lru_cache(maxsize=None)
def _skein_tree(m, letters):
    beta = BraidWord(m, letters)
    seq, c = _walk(beta)
    seen = set()
    bad = None
    for k, over in seq:
        if k in seen:
            continue
        seen.add(k)
        if not over:
            bad = k
            break
    if bad is None:
        return UNKNOT ** c
    i, s = letters[bad]
    flipped = letters[:bad] + ((i, -s),) + letters[bad + 1:]
    smoothed = letters[:bad] + letters[bad + 1:]
    if s > 0:
        return (_skein_tree(m, flipped) * A ** -2
                + _skein_tree(m, smoothed) * (RatQT(Z) * A ** -1))
    return _skein_tree(m, flipped) * A ** 2 - _skein_tree(m, smoothed) * (RatQT(Z) * A)


def homfly_skein_tree(beta):
    """HOMFLY of a braid closure by resolving crossings until descending."""
    return _skein_tree(beta.m, beta.letters)


def random_braid(rng, m, length):
    return BraidWord(m, [(rng.randint(1, m - 1), rng.choice((1, -1))) for _ in range(length)])


# ---------------------------------------------------------------------------
# splice diagrams of coaxial almost torus links

@dataclass
class SpliceDiagram:
    nodes: list
    leaves: list      # (id, "arrow" | "bullet")
    edges: list       # (u, v, label at u, label at v); leaf ends carry no label

    def node_edges(self):
        ids = set(self.nodes)
        return [e for e in self.edges if e[0] in ids and e[1] in ids]

    def labels_at(self, v, skip):
        out = []
        for e in self.edges:
            if e is skip:
                continue
            if e[0] == v and e[2] is not None:
                out.append(e[2])
            elif e[1] == v and e[3] is not None:
                out.append(e[3])
        return out

    def edge_checks(self):
        """(edge, x*y, product of the other labels at both ends) for node-node edges."""
        out = []
        for e in self.node_edges():
            x, y = e[2], e[3]
            prod = 1
            for z in self.labels_at(e[0], e) + self.labels_at(e[1], e):
                prod *= z
            out.append((e, x * y, prod))
        return out

    def to_json(self):
        return {"nodes": self.nodes, "leaves": [list(l) for l in self.leaves],
                "edges": [list(e) for e in self.edges]}


def splice(pairs):
    """Splice diagram of the coaxial almost torus link T_(m1,n1),...; returns
    (diagram, algebraic) where algebraic means every node-node edge passes
    the edge inequality x*y > product of the neighbouring labels."""
    pairs = [(int(m), int(n)) for m, n in pairs]
    if not pairs or any(m < 1 or n < 1 for m, n in pairs):
        raise ValueError("pairs must be positive")
    groups = []
    for m, n in pairs:
        if groups and Fraction(m, n) == groups[-1][0]:
            groups[-1][1].append((m, n))
        else:
            groups.append((Fraction(m, n), [(m, n)]))
    nodes, leaves, edges = [], [], []
    counter = [0]

    def new(kind=None):
        counter[0] += 1
        name = "%s%d" % ("N" if kind is None else kind[0], counter[0])
        if kind is None:
            nodes.append(name)
        else:
            leaves.append((name, kind))
        return name

    prev = None
    for gi, (slope, members) in enumerate(groups):
        p, qq = slope.numerator, slope.denominator
        N = new()
        up = prev if prev is not None else new("bullet")
        if prev is not None:
            edges.append((prev[0], N, prev[1], qq))
        else:
            edges.append((N, up, qq, None))
        for m, n in members:
            d = gcd(m, n)
            if d == 1:
                edges.append((N, new("arrow"), 1, None))
            else:
                R = new()
                edges.append((N, R, 1, d * p * qq + 1))
                edges.append((R, new("arrow"), 1, None))
                edges.append((R, new("bullet"), d, None))
        prev = (N, p)
    edges.append((prev[0], new("bullet"), prev[1], None))
    dia = SpliceDiagram(nodes, leaves, edges)
    algebraic = all(xy > prod for _, xy, prod in dia.edge_checks())
    return dia, algebraic
