"""The ring of symmetric functions with exact coefficients.

Elements are stored in one basis at a time; all conversions go through
the power-sum basis.  Coefficients can be ints, Fractions, LaurentQT,
APoly or RatQT values.
"""

from fractions import Fraction

from ..exactcoef import LaurentQT, RatQT
from . import combinat as P
from .combinat import chi, partitions, zee, sign, conjugate

BASES = {
    "m": "m", "monomial": "m",
    "e": "e", "elementary": "e",
    "h": "h", "homogeneous": "h",
    "p": "p", "power": "p",
    "s": "s", "schur": "s",
    "P": "P", "macdonaldP": "P",
    "Ht": "Ht", "modifiedMacdonald": "Ht",
}

LONG = {"m": "monomial", "e": "elementary", "h": "homogeneous", "p": "power",
        "s": "schur", "P": "macdonaldP", "Ht": "modifiedMacdonald"}


class DegreeBoundError(ValueError):
    pass


def _is_zero(c):
    return not c


def _add_into(d, key, val):
    cur = d.get(key)
    if cur is None:
        if val:
            d[key] = val
    else:
        cur = cur + val
        if cur:
            d[key] = cur
        else:
            del d[key]


class SymRing:
    """Holds transition tables up to a degree bound."""

    def __init__(self, degree_bound=12):
        self.degree_bound = degree_bound
        self._to_p = {}
        self._from_p = {}
        self._macdonald = None

    def check(self, n):
        if n > self.degree_bound:
            raise DegreeBoundError("degree %d exceeds bound %d" % (n, self.degree_bound))

    # -- classical transition tables (rational) -------------------------------
    def e_n(self, n):
        """e_n in the power basis."""
        return {mu: Fraction(sign(mu), zee(mu)) for mu in partitions(n)}

    def h_n(self, n):
        return {mu: Fraction(1, zee(mu)) for mu in partitions(n)}

    def _product_expansion(self, lam, single):
        out = {(): Fraction(1)}
        for part in lam:
            new = {}
            for a, c in out.items():
                for b, d in single(part).items():
                    key = tuple(sorted(a + b, reverse=True))
                    new[key] = new.get(key, 0) + c * d
            out = new
        return {k: v for k, v in out.items() if v}

    def to_p(self, basis, lam):
        """Expansion of the basis element b_lam in power sums, rational coefficients."""
        key = (basis, lam)
        n = sum(lam)
        self.check(n)
        r = self._to_p.get(key)
        if r is not None:
            return r
        if basis == "p":
            r = {lam: Fraction(1)}
        elif basis == "s":
            r = {mu: Fraction(chi(lam, mu), zee(mu)) for mu in partitions(n) if chi(lam, mu)}
        elif basis == "e":
            r = self._product_expansion(lam, self.e_n)
        elif basis == "h":
            r = self._product_expansion(lam, self.h_n)
        elif basis == "m":
            self._invert("m", n)
            r = self._to_p[key]
        else:
            raise KeyError(basis)
        self._to_p[key] = r
        return r

    def from_p(self, basis, mu):
        """Expansion of p_mu in the given classical basis."""
        key = (basis, mu)
        n = sum(mu)
        self.check(n)
        r = self._from_p.get(key)
        if r is not None:
            return r
        if basis == "p":
            r = {mu: Fraction(1)}
        elif basis == "s":
            r = {lam: Fraction(chi(lam, mu)) for lam in partitions(n) if chi(lam, mu)}
        elif basis == "m":
            r = {lam: Fraction(P.p_to_m_coeff(mu, lam)) for lam in partitions(n)
                 if P.p_to_m_coeff(mu, lam)}
        else:
            self._invert(basis, n)
            return self._from_p[key]
        self._from_p[key] = r
        return r

    def _invert(self, basis, n):
        parts = partitions(n)
        if basis == "m":
            M = [[self.from_p("m", mu).get(lam, 0) for lam in parts] for mu in parts]
            inv = P.mat_inverse(M)
            for i, lam in enumerate(parts):
                self._to_p[("m", lam)] = {mu: inv[i][j] for j, mu in enumerate(parts) if inv[i][j]}
        else:
            M = [[self.to_p(basis, lam).get(mu, 0) for mu in parts] for lam in parts]
            inv = P.mat_inverse(M)
            for i, mu in enumerate(parts):
                self._from_p[(basis, mu)] = {lam: inv[i][j] for j, lam in enumerate(parts)
                                             if inv[i][j]}

    @property
    def macdonald(self):
        if self._macdonald is None:
            from .macdonald import MacdonaldCache
            self._macdonald = MacdonaldCache(self)
        return self._macdonald

    # -- constructors -------------------------------------------------------
    def elem(self, basis, lam, coeff=1):
        basis = BASES[basis]
        lam = tuple(lam)
        self.check(sum(lam))
        return SymF(self, basis, {lam: coeff})

    def s(self, *lam):
        return self.elem("s", lam)

    def p(self, *lam):
        return self.elem("p", lam)

    def e(self, *lam):
        return self.elem("e", lam)

    def h(self, *lam):
        return self.elem("h", lam)

    def m(self, *lam):
        return self.elem("m", lam)

    def zero(self, basis="s"):
        return SymF(self, BASES[basis], {})

    def one(self):
        return SymF(self, "p", {(): 1})


class SymF:
    """A symmetric function: basis tag plus {partition: coefficient}."""

    __slots__ = ("ring", "basis", "terms")

    def __init__(self, ring, basis, terms):
        self.ring = ring
        self.basis = BASES[basis]
        self.terms = {tuple(k): v for k, v in terms.items() if v}

    # -- basics -------------------------------------------------------------
    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(k) for k in self.terms}) <= 1

    def coefficient(self, lam):
        return self.terms.get(tuple(lam), 0)

    def __getitem__(self, lam):
        return self.coefficient(lam)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def map_coeffs(self, fn):
        return SymF(self.ring, self.basis, {k: fn(v) for k, v in self.terms.items()})

    def _same(self, other):
        if other.basis != self.basis:
            other = other.convert(self.basis)
        return other

    def __add__(self, other):
        if isinstance(other, SymF):
            other = self._same(other)
            d = dict(self.terms)
            for k, v in other.terms.items():
                _add_into(d, k, v)
            return SymF(self.ring, self.basis, d)
        if not other:
            return self
        return self + self.ring.one().map_coeffs(lambda c: other).convert(self.basis)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymF):
            a = self.convert("p")
            b = other.convert("p")
            d = {}
            for k1, v1 in a.terms.items():
                for k2, v2 in b.terms.items():
                    _add_into(d, tuple(sorted(k1 + k2, reverse=True)), v1 * v2)
            res = SymF(self.ring, "p", d)
            return res if self.basis == "p" else res.convert(self.basis)
        return self.map_coeffs(lambda c: c * other)

    def __rmul__(self, other):
        return self.map_coeffs(lambda c: other * c)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self.map_coeffs(lambda c: c * (1 / other))
        return self.map_coeffs(lambda c: RatQT(c) / other)

    def __eq__(self, other):
        if isinstance(other, SymF):
            diff = self - other
            return all(_is_zero(v) for v in diff.terms.values())
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    # -- conversions --------------------------------------------------------
    def convert(self, basis):
        basis = BASES[basis]
        if basis == self.basis:
            return self
        ring = self.ring
        if self.basis in ("P", "Ht"):
            p = ring.macdonald.to_p_elem(self)
        elif self.basis == "p":
            p = self
        else:
            d = {}
            for lam, c in self.terms.items():
                for mu, r in ring.to_p(self.basis, lam).items():
                    _add_into(d, mu, c * r)
            p = SymF(ring, "p", d)
        if basis == "p":
            return p
        if basis in ("P", "Ht"):
            return ring.macdonald.from_p_elem(p, basis)
        d = {}
        for mu, c in p.terms.items():
            for lam, r in ring.from_p(basis, mu).items():
                _add_into(d, lam, c * r)
        return SymF(ring, basis, d)

    def omega(self):
        if self.basis in ("s",):
            return SymF(self.ring, "s", {conjugate(k): v for k, v in self.terms.items()})
        if self.basis in ("e", "h"):
            return SymF(self.ring, "h" if self.basis == "e" else "e", self.terms).convert(self.basis)
        p = self.convert("p")
        res = SymF(self.ring, "p", {k: (v if sign(k) == 1 else -v) for k, v in p.terms.items()})
        return res.convert(self.basis)

    def plethysm(self, alphabet):
        from .alphabet import plethysm
        return plethysm(self, alphabet)

    def swap_qt(self):
        return self.map_coeffs(lambda c: c.swap_qt() if hasattr(c, "swap_qt") else c)

    def __str__(self):
        if not self.terms:
            return "0"
        name = {"s": "s", "m": "m", "e": "e", "h": "h", "p": "p", "P": "P", "Ht": "Ht"}[self.basis]
        out = []
        for lam in sorted(self.terms, key=lambda l: (sum(l), tuple(-x for x in l)), reverse=True):
            c = self.terms[lam]
            label = "%s%s" % (name, "".join(map(str, lam)) if all(x < 10 for x in lam)
                              else "[" + ",".join(map(str, lam)) + "]")
            cs = str(c)
            if cs == "1":
                out.append(label)
            elif cs == "-1":
                out.append("-" + label)
            else:
                out.append("(%s)*%s" % (cs, label))
        return " + ".join(out)

    __repr__ = __str__

    def to_json(self):
        terms = []
        for lam in sorted(self.terms, key=lambda l: (sum(l), l)):
            c = self.terms[lam]
            if isinstance(c, (int, Fraction)):
                c = LaurentQT.const(c)
            terms.append({"partition": list(lam), "coeff": c.to_json()})
        return {"basis": LONG[self.basis], "terms": terms}

    @classmethod
    def from_json(cls, ring, data):
        terms = {}
        for row in data["terms"]:
            c = row["coeff"]
            if isinstance(c, dict):
                c = RatQT(LaurentQT.from_json(c["num"]),
                          [(LaurentQT.from_json(f), k) for f, k in c["den"]])
            else:
                c = LaurentQT.from_json(c)
            terms[tuple(row["partition"])] = c
        return cls(ring, BASES[data["basis"]], terms)


def hall(f, g):
    """Hall inner product <f, g> with <p_lam, p_mu> = z_lam delta."""
    a, b = f.convert("p"), g.convert("p")
    tot = 0
    for lam, c in a.terms.items():
        d = b.terms.get(lam)
        if d:
            tot = tot + c * d * zee(lam)
    return tot


def qt_weight(lam):
    """z_lam prod (1 - q^lam_i)/(1 - t^lam_i) as a RatQT."""
    num = LaurentQT.const(zee(lam))
    den = []
    for x in lam:
        num = num * (1 - LaurentQT.monomial((2 * x, 0)))
        den.append((1 - LaurentQT.monomial((0, 2 * x)), 1))
    return RatQT(num, den)


def qt_inner(f, g):
    a, b = f.convert("p"), g.convert("p")
    tot = RatQT(0)
    for lam, c in a.terms.items():
        d = b.terms.get(lam)
        if d:
            tot = tot + RatQT(c) * d * qt_weight(lam)
    return tot


DEFAULT = SymRing(12)
