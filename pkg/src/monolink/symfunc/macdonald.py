"""Macdonald polynomials P, J and the modified H~, and nabla.

P_mu comes from Gram-Schmidt in the power basis with the (q,t) inner
product, walking partitions upward in dominance.  H~_mu is obtained as
t^n(mu) J_mu[X/(1 - 1/t); q, 1/t].
"""

from fractions import Fraction

from ..exactcoef import LaurentQT, RatQT
from .core import SymF, _add_into, qt_weight
from .combinat import (arm_leg, cells, conjugate, dominates, n_stat, partitions,
                         p_to_m_coeff)


def _q(e):
    return LaurentQT.monomial((2 * e, 0))


def _t(e):
    return LaurentQT.monomial((0, 2 * e))


def _qt(a, b):
    return LaurentQT.monomial((2 * a, 2 * b))


def c_J(mu):
    """J_mu = c_J(mu) P_mu with c_J = prod (1 - q^a t^(l+1))."""
    r = LaurentQT.const(1)
    for c in cells(mu):
        a, l = arm_leg(mu, c)
        r = r * (1 - _qt(a, l + 1))
    return r


def nabla_eigenvalue(mu):
    return _qt(n_stat(conjugate(mu)), n_stat(mu))


def B_mu(mu):
    """sum over cells of q^(col) t^(row), 0-based."""
    r = LaurentQT.const(0)
    for i, j in cells(mu):
        r = r + _qt(j, i)
    return r


def _pdict_inner(a, b):
    tot = RatQT(0)
    for lam, c in a.items():
        d = b.get(lam)
        if d:
            tot = tot + RatQT(c) * d * qt_weight(lam)
    return tot


def _subs_t_inv(c):
    if isinstance(c, (int, Fraction)):
        return c
    return c.subs_t_inv()


class MacdonaldCache:
    """Write-once store of P_mu (power and monomial bases) and H~_mu (Schur)."""

    def __init__(self, ring):
        self.ring = ring
        self.P_p = {}
        self.P_m = {}
        self.H = {}
        self._done = set()

    # -- P ----------------------------------------------------------------
    def _build(self, n):
        if n in self._done:
            return
        self.ring.check(n)
        ring = self.ring
        order = sorted(partitions(n))          # increasing lex, refines dominance
        norms = {}
        for mu in order:
            m_mu = {k: RatQT(v) for k, v in ring.to_p("m", mu).items()}
            vec = dict(m_mu)
            for nu in order:
                if nu == mu:
                    break
                if not dominates(mu, nu):
                    continue
                coef = _pdict_inner(m_mu, self.P_p[nu]) / norms[nu]
                if not coef:
                    continue
                for lam, v in self.P_p[nu].items():
                    _add_into(vec, lam, -(coef * v))
            self.P_p[mu] = vec
            norms[mu] = _pdict_inner(vec, vec)
            m_exp = {}
            for lam, v in vec.items():
                for nu in partitions(n):
                    c = p_to_m_coeff(lam, nu)
                    if c:
                        _add_into(m_exp, nu, v * c)
            self.P_m[mu] = m_exp
        self._done.add(n)

    def P(self, mu):
        mu = tuple(mu)
        self._build(sum(mu))
        return SymF(self.ring, "p", self.P_p[mu])

    def J(self, mu):
        mu = tuple(mu)
        c = c_J(mu)
        return self.P(mu).map_coeffs(lambda v: v * c)

    def Ht(self, mu):
        """Modified Macdonald polynomial in the Schur basis (LaurentQT coefficients)."""
        mu = tuple(mu)
        r = self.H.get(mu)
        if r is not None:
            return r
        J = self.J(mu)
        tn = _t(n_stat(mu))
        d = {}
        for lam, v in J.terms.items():
            den = [(1 - _t(-x), 1) for x in lam]
            d[lam] = RatQT(v).subs_t_inv() * RatQT(tn, den)
        s = SymF(self.ring, "p", d).convert("s")
        out = {}
        for lam, v in s.terms.items():
            out[lam] = RatQT(v).to_poly()
        r = SymF(self.ring, "s", out)
        self.H[mu] = r
        return r

    # -- expansions in Macdonald bases ------------------------------------
    def _expand_P(self, f_p):
        """Coefficients d_mu with f = sum d_mu P_mu, f given as a power-basis dict."""
        out = {}
        by_deg = {}
        for lam, v in f_p.items():
            by_deg.setdefault(sum(lam), {})[lam] = v
        for n, part in by_deg.items():
            self._build(n)
            m_exp = {}
            for lam, v in part.items():
                for nu in partitions(n):
                    c = p_to_m_coeff(lam, nu)
                    if c:
                        _add_into(m_exp, nu, RatQT(v) * c)
            for mu in partitions(n):       # decreasing lex: leading terms first
                c = m_exp.get(mu)
                if not c:
                    continue
                out[mu] = c
                for nu, v in self.P_m[mu].items():
                    _add_into(m_exp, nu, -(c * v))
            assert not any(m_exp.values())
        return out

    def from_p_elem(self, f, basis):
        p = f.convert("p")
        if basis == "P":
            return SymF(self.ring, "P", self._expand_P(p.terms))
        # H~: sigma(f)[X(1-t)] = sum sigma(c_mu) t^-n(mu) J_mu
        g = {}
        for lam, v in p.terms.items():
            w = RatQT(_subs_t_inv(v))
            for x in lam:
                w = w * (1 - _t(x))
            g[lam] = w
        d = self._expand_P(g)
        out = {}
        for mu, v in d.items():
            c = RatQT(v) * RatQT(_t(n_stat(mu)), [(c_J(mu), 1)])
            out[mu] = c.subs_t_inv()
        return SymF(self.ring, "Ht", out)

    def to_p_elem(self, f):
        d = {}
        for mu, c in f.terms.items():
            if f.basis == "P":
                src = self.P(mu)
            else:
                src = self.Ht(mu).convert("p")
            for lam, v in src.terms.items():
                _add_into(d, lam, RatQT(c) * v)
        return SymF(self.ring, "p", d)


def macdonald(mu, variant="P", ring=None):
    from .core import DEFAULT
    ring = ring or DEFAULT
    cache = ring.macdonald
    if variant == "P":
        return cache.P(mu)
    if variant == "J":
        return cache.J(mu)
    if variant in ("modified", "Ht", "H"):
        return cache.Ht(mu)
    raise ValueError(variant)


def nabla(f, power=1):
    """nabla^(+-1) f: scale the H~_mu component by (q^n(mu') t^n(mu))^(+-1)."""
    ring = f.ring
    H = f.convert("Ht")
    out = {}
    for mu, c in H.terms.items():
        ev = nabla_eigenvalue(mu)
        out[mu] = RatQT(c) * (ev if power == 1 else ev ** -1)
    res = SymF(ring, "Ht", out).convert("s")
    return res.map_coeffs(lambda c: c.to_poly() if isinstance(c, RatQT) and c.is_polynomial() else c)
