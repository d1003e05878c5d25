"""Plethystic alphabets and substitution.

An alphabet is z^j * (c + x * X) where c and x are scalars (LaurentQT,
APoly or RatQT).  p_k of it is z^(jk) * (c_k + x_k p_k), where c_k is c
with every variable raised to the k-th power.
"""

from fractions import Fraction

from ..exactcoef import RatQT
from .core import SymF, _add_into
from .combinat import partitions, zee


def adams(c, k):
    if isinstance(c, (int, Fraction)):
        return c
    return c.adams(k)


class Alphabet:
    __slots__ = ("const", "xcoef", "zpow")

    def __init__(self, const=0, xcoef=0, zpow=0):
        self.const = const
        self.xcoef = xcoef
        self.zpow = zpow

    @classmethod
    def X(cls):
        return cls(0, 1)

    @classmethod
    def scalar(cls, c):
        return cls(c, 0)

    def _lift(self, other):
        if isinstance(other, Alphabet):
            return other
        return Alphabet(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        if o.zpow != self.zpow and (o.const or o.xcoef) and (self.const or self.xcoef):
            raise ValueError("cannot add alphabets with different z-powers")
        zp = self.zpow if (self.const or self.xcoef) else o.zpow
        return Alphabet(self.const + o.const, self.xcoef + o.xcoef, zp)

    __radd__ = __add__

    def __neg__(self):
        return Alphabet(-self.const, -self.xcoef, self.zpow)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, c):
        """Multiply by a scalar (a product of alphabets with X twice is not needed)."""
        if isinstance(c, Alphabet):
            if c.xcoef and self.xcoef:
                raise ValueError("X * X alphabets not supported")
            if c.xcoef:
                self, c = c, self
            if c.xcoef:
                raise ValueError
            return Alphabet(self.const * c.const, self.xcoef * c.const, self.zpow + c.zpow)
        return Alphabet(self.const * c, self.xcoef * c, self.zpow)

    __rmul__ = __mul__

    def __truediv__(self, c):
        """Divide by a scalar, read as a geometric series: p_k[A/c] = p_k[A]/p_k[c]."""
        inv = RatQT(1) / c
        return Alphabet(RatQT(self.const) * inv if self.const else 0,
                        RatQT(self.xcoef) * inv if self.xcoef else 0, self.zpow)

    def times_z(self, j=1):
        return Alphabet(self.const, self.xcoef, self.zpow + j)

    def pk(self, k):
        """(scalar part, X part) of p_k[A], ignoring the z power."""
        return adams(self.const, k), adams(self.xcoef, k)



def plethysm(f, A):
    """f[A].  Returns a scalar when A has no X, else a SymF in the power basis
    converted back to the basis of f."""
    A = A if isinstance(A, Alphabet) else Alphabet(A, 0)
    p = f.convert("p")
    cache = {}

    def factor(k):
        r = cache.get(k)
        if r is None:
            r = cache[k] = A.pk(k)
        return r

    if not A.xcoef:
        tot = 0
        for lam, c in p.terms.items():
            term = c
            for k in lam:
                term = term * factor(k)[0]
            tot = tot + term
        return tot
    d = {}
    for lam, c in p.terms.items():
        # expand prod_i (c_k + x_k p_k)
        partial = {(): c}
        for k in lam:
            ck, xk = factor(k)
            new = {}
            for mu, v in partial.items():
                if ck:
                    _add_into(new, mu, v * ck)
                if xk:
                    _add_into(new, tuple(sorted(mu + (k,), reverse=True)), v * xk)
            partial = new
        for mu, v in partial.items():
            _add_into(d, mu, v)
    res = SymF(f.ring, "p", d)
    return res if f.basis == "p" else res.convert(f.basis)


def omega_exp(A, order, ring=None):
    """Truncated Omega[A] = exp(sum p_k[A]/k) as {z-power: coefficient}.

    For A = z^j A' this is sum_n z^(jn) h_n[A']; terms with |jn| > order
    are dropped (for j = 0 the cut is n <= order).
    """
    from .core import DEFAULT
    ring = ring or DEFAULT
    A = A if isinstance(A, Alphabet) else Alphabet(A, 0)
    inner = Alphabet(A.const, A.xcoef, 0)
    j = A.zpow
    out = {}
    n = 0
    while (abs(j * n) <= order) if j else n <= order:
        hn = SymF(ring, "p", {mu: Fraction(1, zee(mu)) for mu in partitions(n)})
        val = plethysm(hn, inner)
        if isinstance(val, SymF):
            val = val.convert("s")
        key = j * n
        if key in out:
            out[key] = out[key] + val
        else:
            out[key] = val
        n += 1
        if not A.const and not A.xcoef:
            break
    return out
