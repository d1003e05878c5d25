"""Exact scalars: Laurent polynomials in q^(1/2), t^(1/2) (and a), rational
functions with factored denominators, infinitesimal eps-scalars and the
series nonnegativity test.

Exponents of Q = q^(1/2) and T = t^(1/2) are stored as integers, so the
term (2, 0) means q and (1, 0) means q^(1/2).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "LaurentQT", "APoly", "RatQT", "EpsScalar", "series_nonneg", "eps_orient",
    "q", "t", "Q", "T", "A", "one", "zero", "qt_monomial", "cyclotomic",
]


def _num(c):
    """Normalise a scalar coefficient: ints stay ints, Fractions collapse."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def _denom_lcm(vals):
    D = 1
    for v in vals:
        if type(v) is not int:
            e = v.denominator
            D = D * e // gcd(D, e)
    return D


def _kron_mul(a, b, nv):
    """Product of two term dicts by Kronecker substitution, or None if too sparse.

    Each operand is packed into one big integer with a fixed number of
    bytes per exponent slot, the integers are multiplied, and the signed
    digits of the product are read back.
    """
    if not a or not b:
        return {}
    lo, step, size = [], [], []
    for i in range(nv):
        ea = [k[i] for k in a]
        eb = [k[i] for k in b]
        la, lb = min(ea), min(eb)
        g = 0
        for x in ea:
            g = gcd(g, x - la)
        for x in eb:
            g = gcd(g, x - lb)
        g = g or 1
        lo.append((la, lb))
        step.append(g)
        size.append((max(ea) - la) // g + (max(eb) - lb) // g + 1)
    mult = [1] * nv
    for i in range(nv - 2, -1, -1):
        mult[i] = mult[i + 1] * size[i + 1]
    nslots = mult[0] * size[0]
    if nslots > 4 * len(a) * len(b):
        return None
    Da, Db = _denom_lcm(a.values()), _denom_lcm(b.values())
    ia = {k: int(v * Da) for k, v in a.items()}
    ib = {k: int(v * Db) for k, v in b.items()}
    bound = max(map(abs, ia.values())) * max(map(abs, ib.values())) * min(len(a), len(b))
    nb = bound.bit_length() // 8 + 1

    def pack(terms, which):
        pos = bytearray(nslots * nb)
        neg = bytearray(nslots * nb)
        for k, v in terms.items():
            slot = 0
            for i in range(nv):
                slot += (k[i] - lo[i][which]) // step[i] * mult[i]
            if v > 0:
                pos[slot * nb:(slot + 1) * nb] = v.to_bytes(nb, "little")
            else:
                neg[slot * nb:(slot + 1) * nb] = (-v).to_bytes(nb, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    half = 1 << (8 * nb - 1)
    pattern = half.to_bytes(nb, "little")
    off = int.from_bytes(pattern * nslots, "little")
    raw = (pack(ia, 0) * pack(ib, 1) + off).to_bytes(nslots * nb, "little")
    D = Da * Db
    base = tuple(lo[i][0] + lo[i][1] for i in range(nv))
    out = {}
    for slot in range(nslots):
        chunk = raw[slot * nb:(slot + 1) * nb]
        if chunk == pattern:
            continue
        v = int.from_bytes(chunk, "little") - half
        r, k = slot, []
        for i in range(nv):
            x, r = divmod(r, mult[i])
            k.append(base[i] + x * step[i])
        out[tuple(k)] = v if D == 1 else _num(Fraction(v, D))
    return out


class _Laurent:
    """Sparse Laurent polynomial with rational coefficients.

    `terms` maps exponent tuples of length NV to nonzero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("terms", "_h")
    NV = 0
    VARS = ()

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {k: _num(v) for k, v in terms.items() if v}
        else:
            d = {}
            for k, v in terms:
                d[k] = d.get(k, 0) + v
            self.terms = {k: _num(v) for k, v in d.items() if v}
        self._h = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._h = None
        return obj

    @classmethod
    def const(cls, c):
        c = _num(c)
        return cls._raw({(0,) * cls.NV: c} if c else {})

    @classmethod
    def monomial(cls, exps, c=1):
        c = _num(c)
        return cls._raw({tuple(exps): c} if c else {})

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self.const(other)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        d = dict(self.terms)
        for k, v in o.terms.items():
            w = d.get(k)
            if w is None:
                d[k] = v
            else:
                w += v
                if w:
                    d[k] = _num(w)
                else:
                    del d[k]
        return self._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._raw({})
            return self._raw({k: _num(v * other) for k, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, vb), = b.items()
            if self.NV == 2:
                x, y = kb
                return self._raw({(k[0] + x, k[1] + y): _num(v * vb) for k, v in a.items()})
            return self._raw({tuple(i + j for i, j in zip(k, kb)): _num(v * vb)
                              for k, v in a.items()})
        if len(b) > 12:
            r = _kron_mul(a, b, self.NV)
            if r is not None:
                return self._raw(r)
        d = {}
        get = d.get
        if self.NV == 2:
            for (x1, y1), v1 in b.items():
                for (x2, y2), v2 in a.items():
                    k = (x1 + x2, y1 + y2)
                    d[k] = get(k, 0) + v1 * v2
        else:
            for k1, v1 in b.items():
                for k2, v2 in a.items():
                    k = tuple(i + j for i, j in zip(k1, k2))
                    d[k] = get(k, 0) + v1 * v2
        return self._raw({k: _num(v) for k, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("negative power of a non-monomial Laurent polynomial")
            (k, v), = self.terms.items()
            return self._raw({tuple(e * x for x in k): _num(Fraction(1) / Fraction(v) ** (-e))})
        result = self.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_monomial():
            return self * o ** -1
        return RatQT(self) / o

    def __rtruediv__(self, other):
        return RatQT(other) / self

    def __eq__(self, other):
        if isinstance(other, RatQT):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._h is None:
            self._h = hash((type(self).__name__, frozenset(self.terms.items())))
        return self._h

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.NV, 0)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def min_exponents(self):
        ks = list(self.terms)
        return tuple(min(k[i] for k in ks) for i in range(self.NV))

    def max_exponents(self):
        ks = list(self.terms)
        return tuple(max(k[i] for k in ks) for i in range(self.NV))

    def leading(self):
        """Lexicographically largest exponent and its coefficient."""
        k = max(self.terms)
        return k, self.terms[k]

    def shift(self, exps):
        return self._raw({tuple(i + j for i, j in zip(k, exps)): v for k, v in self.terms.items()})

    def map_exponents(self, fn):
        d = {}
        for k, v in self.terms.items():
            k2 = fn(k)
            d[k2] = d.get(k2, 0) + v
        return self._raw({k: v for k, v in d.items() if v})

    def adams(self, k):
        """Plethystic p_k: replace every variable by its k-th power."""
        return self._raw({tuple(k * x for x in e): v for e, v in self.terms.items()})

    def has_integer_powers(self):
        """True when every q and t exponent is an integer (even in Q, T)."""
        return all(k[-1] % 2 == 0 and k[-2] % 2 == 0 for k in self.terms)

    def evaluate(self, values):
        """Evaluate at rational values of the formal variables (Q, T, ...)."""
        tot = Fraction(0)
        for k, v in self.terms.items():
            term = Fraction(v)
            for x, e in zip(values, k):
                term *= Fraction(x) ** e
            tot += term
        return tot

    def is_nonneg(self):
        return all(v > 0 for v in self.terms.values())

    # -- division -----------------------------------------------------------
    def exact_div(self, g):
        """Quotient self/g if g divides self in the Laurent ring, else None."""
        g = self._coerce(g) if not isinstance(g, _Laurent) else g
        if g is None or not g.terms:
            raise ZeroDivisionError
        if not self.terms:
            return self
        if type(g) is not type(self):
            if isinstance(self, APoly) and isinstance(g, LaurentQT):
                return self._exact_div_qt(g)
            g = self._coerce(g)
        if g.is_monomial():
            return self * g ** -1
        lo_f = self.min_exponents()
        lo_g = g.min_exponents()
        hi_f = self.max_exponents()
        hi_g = g.max_exponents()
        lo = tuple(a - b for a, b in zip(lo_f, lo_g))
        hi = tuple(a - b for a, b in zip(hi_f, hi_g))
        if any(x < y for x, y in zip(hi, lo)):
            return None
        lg, cg = g.leading()
        gt = g.terms
        rem = dict(self.terms)
        quo = {}
        while rem:
            lr = max(rem)
            e = tuple(a - b for a, b in zip(lr, lg))
            if any(x < y or x > z for x, y, z in zip(e, lo, hi)):
                return None
            c = _num(Fraction(rem[lr]) / cg) if not isinstance(cg, int) or rem[lr] % cg else rem[lr] // cg
            quo[e] = c
            for k, v in gt.items():
                kk = tuple(a + b for a, b in zip(k, e))
                w = rem.get(kk, 0) - c * v
                if w:
                    rem[kk] = _num(w)
                else:
                    rem.pop(kk, None)
        return self._raw(quo)

    # -- display ------------------------------------------------------------
    def _mono_str(self, k):
        parts = []
        for name, e in zip(self.VARS, k):
            if e == 0:
                continue
            if name in ("q", "t"):
                if e % 2 == 0:
                    e2 = e // 2
                    parts.append(name if e2 == 1 else "%s^%d" % (name, e2))
                else:
                    parts.append("%s^(%d/2)" % (name, e))
            else:
                parts.append(name if e == 1 else "%s^%d" % (name, e))
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            m = self._mono_str(k)
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if m:
                body = m if a == 1 else "%s*%s" % (a, m)
            else:
                body = str(a)
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += " %s %s" % (sign, body)
        return s

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self)

    def to_json(self):
        return [list(k) + [str(Fraction(v).numerator), str(Fraction(v).denominator)]
                for k, v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(row[:cls.NV]): Fraction(int(row[cls.NV]), int(row[cls.NV + 1]))
                    for row in data})


class LaurentQT(_Laurent):
    """Laurent polynomial in Q = q^(1/2), T = t^(1/2)."""

    __slots__ = ()
    NV = 2
    VARS = ("q", "t")

    def _coerce(self, other):
        if isinstance(other, LaurentQT):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentQT._raw({(0, 0): _num(other)} if other else {})
        return None

    def swap_qt(self):
        return LaurentQT._raw({(b, a): v for (a, b), v in self.terms.items()})

    def subs_t_inv_q(self):
        """Substitute t = q^(-1), i.e. T -> Q^(-1)."""
        return self.map_exponents(lambda k: (k[0] - k[1], 0))

    def subs_t_inv(self):
        return LaurentQT._raw({(a, -b): v for (a, b), v in self.terms.items()})

    def subs_q_inv(self):
        return LaurentQT._raw({(-a, b): v for (a, b), v in self.terms.items()})

    def at_t1(self):
        return self.map_exponents(lambda k: (k[0], 0))

    def to_apoly(self):
        return APoly._raw({(0, a, b): v for (a, b), v in self.terms.items()})

    def by_q_power(self):
        """Group by the Q exponent: {eQ: {eT: coeff}}."""
        out = {}
        for (a, b), v in self.terms.items():
            out.setdefault(a, {})[b] = v
        return out


class APoly(_Laurent):
    """Laurent polynomial in a, Q = q^(1/2), T = t^(1/2)."""

    __slots__ = ()
    NV = 3
    VARS = ("a", "q", "t")

    def _coerce(self, other):
        if isinstance(other, APoly):
            return other
        if isinstance(other, LaurentQT):
            return other.to_apoly()
        if isinstance(other, (int, Fraction)):
            return APoly._raw({(0, 0, 0): _num(other)} if other else {})
        return None

    def by_a_degree(self):
        out = {}
        for (e, a, b), v in self.terms.items():
            out.setdefault(e, {})[(a, b)] = v
        return {e: LaurentQT._raw(d) for e, d in out.items()}

    @classmethod
    def from_a_slices(cls, slices):
        d = {}
        for e, p in slices.items():
            for (a, b), v in p.terms.items():
                d[(e, a, b)] = v
        return cls._raw(d)

    def _exact_div_qt(self, g):
        out = {}
        for e, p in self.by_a_degree().items():
            r = p.exact_div(g)
            if r is None:
                return None
            out[e] = r
        return APoly.from_a_slices(out)

    def subs_t_inv_q(self):
        return self.map_exponents(lambda k: (k[0], k[1] - k[2], 0))

    def swap_qt(self):
        return APoly._raw({(e, b, a): v for (e, a, b), v in self.terms.items()})


# ---------------------------------------------------------------------------
# handy constants

one = LaurentQT.const(1)
zero = LaurentQT.const(0)
Q = LaurentQT.monomial((1, 0))
T = LaurentQT.monomial((0, 1))
q = LaurentQT.monomial((2, 0))
t = LaurentQT.monomial((0, 2))
A = APoly.monomial((1, 0, 0))


def qt_monomial(eq, et, c=1):
    """c * q^eq * t^et with integer (or half-integer via Fraction) powers."""
    return LaurentQT.monomial((int(2 * eq), int(2 * et)), c)


# ---------------------------------------------------------------------------
# cyclotomic splitting of denominator factors

@lru_cache(maxsize=None)
def cyclotomic(n):
    """Coefficient list (low to high) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div(num, cyclotomic(d))
    return tuple(num)


def _poly_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a[:len(b) - 1])
    return out


def _totient(n):
    r, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            r -= r // p
        p += 1
    if m > 1:
        r -= r // m
    return r


def _cyclo_factor(d, alpha, beta):
    """Phi_d(Q^alpha T^beta) shifted to have nonnegative exponents."""
    coeffs = cyclotomic(d)
    terms = {(alpha * i, beta * i): c for i, c in enumerate(coeffs) if c}
    lo = min(k[1] for k in terms)
    if lo:
        terms = {(a, b - lo): c for (a, b), c in terms.items()}
    return LaurentQT._raw(terms)


def _hull_edges(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        if len(pts) == 2:
            return [(pts[0], pts[1])]
        return []

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _split_factor(g):
    """Split a LaurentQT into (unit, [(irreducible binomial factor, mult)], rest).

    unit is a LaurentQT monomial, the factors are cyclotomic polynomials in a
    primitive monomial, rest is what remains (normalised, possibly 1).
    """
    if not g.terms:
        raise ZeroDivisionError("zero denominator factor")
    lo = g.min_exponents()
    unit = LaurentQT.monomial(lo)
    g = g.shift((-lo[0], -lo[1]))
    factors = {}
    changed = True
    while changed and len(g.terms) > 1:
        changed = False
        for (p0, p1) in _hull_edges(list(g.terms)):
            dx, dy = p1[0] - p0[0], p1[1] - p0[1]
            L = gcd(abs(dx), abs(dy))
            a, b = dx // L, dy // L
            if a < 0 or (a == 0 and b < 0):
                a, b = -a, -b
            for d in range(1, L + 1):
                if _totient(d) > L:
                    continue
                f = _cyclo_factor(d, a, b)
                while True:
                    r = g.exact_div(f)
                    if r is None:
                        break
                    factors[f] = factors.get(f, 0) + 1
                    lo = r.min_exponents()
                    unit = unit * LaurentQT.monomial(lo)
                    g = r.shift((-lo[0], -lo[1]))
                    changed = True
            if changed:
                break
    k, c = g.leading()
    if len(g.terms) == 1:
        unit = unit * c
        rest = None
    else:
        unit = unit * c
        g = g * (Fraction(1) / Fraction(c))
        rest = g
    if rest is not None:
        factors[rest] = factors.get(rest, 0) + 1
    return unit, factors


_split_cache = {}


def split_factor(g):
    r = _split_cache.get(g)
    if r is None:
        r = _split_factor(g)
        if len(_split_cache) < 200000:
            _split_cache[g] = r
    return r


class RatQT:
    """Quotient num / prod(f^k) with num a LaurentQT or APoly and factors in Q, T.

    Denominator factors are kept split into irreducible cyclotomic pieces
    where possible; cancellation is by exact trial division.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _clean=False):
        if isinstance(num, RatQT):
            if den:
                raise TypeError("RatQT(RatQT, den)")
            self.num, self.den = num.num, num.den
            return
        if isinstance(num, (int, Fraction)):
            num = LaurentQT.const(num)
        self.num = num
        if not den:
            self.den = {}
            return
        if _clean:
            self.den = den
            return
        d = {}
        for f, k in (den.items() if isinstance(den, dict) else den):
            if isinstance(f, (int, Fraction)):
                f = LaurentQT.const(f)
            unit, parts = split_factor(f)
            self.num = self.num * unit ** (-k)
            for p, j in parts.items():
                d[p] = d.get(p, 0) + j * k
        self.den = d
        self._cancel()

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def _cancel(self):
        if not self.num:
            self.den = {}
            return
        for f in list(self.den):
            k = self.den[f]
            while k:
                r = self.num.exact_div(f)
                if r is None:
                    break
                self.num = r
                k -= 1
            if k:
                self.den[f] = k
            else:
                del self.den[f]

    @staticmethod
    def coerce(x):
        if isinstance(x, RatQT):
            return x
        if isinstance(x, (int, Fraction, LaurentQT, APoly)):
            return RatQT(x)
        return None

    def den_product(self):
        r = one
        for f, k in self.den.items():
            r = r * f ** k
        return r

    def __add__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            r = RatQT._make(self.num + o.num, dict(self.den))
            r._cancel()
            return r
        den = dict(self.den)
        for f, k in o.den.items():
            if den.get(f, 0) < k:
                den[f] = k
        a = self.num
        for f, k in den.items():
            e = k - self.den.get(f, 0)
            if e:
                a = a * f ** e
        b = o.num
        for f, k in den.items():
            e = k - o.den.get(f, 0)
            if e:
                b = b * f ** e
        r = RatQT._make(a + b, den)
        r._cancel()
        return r

    __radd__ = __add__

    def __neg__(self):
        return RatQT._make(-self.num, dict(self.den))

    def __sub__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatQT(0)
            return RatQT._make(self.num * other, dict(self.den))
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        den = dict(self.den)
        for f, k in o.den.items():
            den[f] = den.get(f, 0) + k
        r = RatQT._make(self.num * o.num, den)
        if self.den and o.den or (self.den and len(o.num) > 1) or (o.den and len(self.num) > 1):
            r._cancel()
        return r

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError
        if isinstance(self.num, APoly):
            if all(k[0] == 0 for k in self.num.terms):
                num = LaurentQT._raw({k[1:]: v for k, v in self.num.terms.items()})
            elif self.num.is_monomial():
                (k, v), = self.num.terms.items()
                return RatQT(APoly._raw({tuple(-x for x in k): _num(Fraction(1) / v)}) * self.den_product())
            else:
                raise ZeroDivisionError("cannot invert a non-monomial in a")
        else:
            num = self.num
        r = RatQT(self.den_product(), {num: 1})
        return r

    def __truediv__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = RatQT(1)
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other):
        o = RatQT.coerce(other)
        if o is None:
            return NotImplemented
        a = self.num
        for f, k in o.den.items():
            a = a * f ** k
        b = o.num
        for f, k in self.den.items():
            b = b * f ** k
        return (a - b).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return not self.den

    def to_poly(self):
        if self.den:
            raise ValueError("not a Laurent polynomial: %s" % self)
        return self.num

    def adams(self, k):
        return RatQT(self.num.adams(k), [(f.adams(k), m) for f, m in self.den.items()])

    def map(self, fn):
        """Apply a substitution given as a function on Laurent polynomials."""
        return RatQT(fn(self.num), [(fn(f), m) for f, m in self.den.items()])

    def swap_qt(self):
        return self.map(lambda p: p.swap_qt())

    def subs_t_inv_q(self):
        return self.map(lambda p: p.subs_t_inv_q())

    def subs_t_inv(self):
        return self.map(lambda p: p.subs_t_inv())

    def evaluate(self, values):
        d = Fraction(1)
        for f, k in self.den.items():
            d *= f.evaluate(values) ** k
        return self.num.evaluate(values if isinstance(self.num, LaurentQT) else values) / d

    def __str__(self):
        if not self.den:
            return str(self.num)
        den = " * ".join("(%s)%s" % (f, "" if k == 1 else "^%d" % k) for f, k in self.den.items())
        return "(%s) / (%s)" % (self.num, den)

    __repr__ = __str__

    def to_json(self):
        return {"num": self.num.to_json(),
                "den": [[f.to_json(), k] for f, k in self.den.items()]}


# ---------------------------------------------------------------------------

class EpsScalar:
    """c0 + c1 eps + c2 eps^2 for a positive infinitesimal eps."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0):
        self.c = (_num(c0), _num(c1), _num(c2))

    @classmethod
    def lift(cls, x):
        return x if isinstance(x, EpsScalar) else cls(x)

    def degree(self):
        for i in (2, 1, 0):
            if self.c[i]:
                return i
        return -1

    def __add__(self, o):
        o = EpsScalar.lift(o)
        return EpsScalar(*(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return EpsScalar(*(-a for a in self.c))

    def __sub__(self, o):
        return self + (-EpsScalar.lift(o))

    def __rsub__(self, o):
        return EpsScalar.lift(o) - self

    def __mul__(self, o):
        o = EpsScalar.lift(o)
        if self.degree() + o.degree() > 2:
            raise ArithmeticError("eps-degree exceeds 2")
        a, b = self.c, o.c
        return EpsScalar(a[0] * b[0], a[0] * b[1] + a[1] * b[0],
                         a[0] * b[2] + a[1] * b[1] + a[2] * b[0])

    __rmul__ = __mul__

    def sign(self):
        for x in self.c:
            if x:
                return 1 if x > 0 else -1
        return 0

    def __eq__(self, o):
        return self.c == EpsScalar.lift(o).c

    def __hash__(self):
        return hash(self.c)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def at(self, eps):
        eps = Fraction(eps)
        return self.c[0] + self.c[1] * eps + self.c[2] * eps * eps

    def __repr__(self):
        return "Eps(%s, %s, %s)" % self.c


def eps_orient(p1, p2, p3):
    """Sign of det(p2 - p1, p3 - p1) for points with EpsScalar coordinates."""
    if all(type(v) is EpsScalar and not v.c[2] for p in (p1, p2, p3) for v in p):
        # degree-1 inputs: expand the determinant directly
        (a0, a1), (b0, b1) = p1[0].c[:2], p1[1].c[:2]
        ux, uxe = p2[0].c[0] - a0, p2[0].c[1] - a1
        uy, uye = p2[1].c[0] - b0, p2[1].c[1] - b1
        vx, vxe = p3[0].c[0] - a0, p3[0].c[1] - a1
        vy, vye = p3[1].c[0] - b0, p3[1].c[1] - b1
        for d in (ux * vy - uy * vx, ux * vye + uxe * vy - uy * vxe - uye * vx,
                  uxe * vye - uye * vxe):
            if d:
                return 1 if d > 0 else -1
        return 0
    x1, y1 = (EpsScalar.lift(v) for v in p1)
    x2, y2 = (EpsScalar.lift(v) for v in p2)
    x3, y3 = (EpsScalar.lift(v) for v in p3)
    det = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
    return det.sign()


# ---------------------------------------------------------------------------

def _binom_poly(shift, r):
    """Coefficients (in n, low to high) of binom(n + shift, r) as Fractions."""
    poly = [Fraction(1)]
    for i in range(1, r + 1):
        # multiply by (n + shift - r + i) / i
        c = Fraction(shift - r + i, i)
        inv = Fraction(1, i)
        new = [Fraction(0)] * (len(poly) + 1)
        for j, a in enumerate(poly):
            new[j] += a * c
            new[j + 1] += a * inv
        poly = new
    return poly


def series_nonneg(p, j):
    """Is every coefficient of p(t) / (1 - t)^j nonnegative?

    p is a coefficient list, lowest degree first.
    """
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    if not p:
        return True
    if j == 0:
        return all(c >= 0 for c in p)
    deg = len(p) - 1
    row = p
    all_ok = all(c >= 0 for c in row)
    for _ in range(j):
        acc, new = 0, []
        for c in row:
            acc += c
            new.append(acc)
        row = new
        all_ok = all_ok and all(c >= 0 for c in row)
    if all_ok:
        return True
    if any(c < 0 for c in row):
        return False
    # level-j tail g(n) = sum_i p_i binom(n - i + j - 1, j - 1) for n > deg
    g = [Fraction(0)] * j
    for i, c in enumerate(p):
        if c:
            for e, v in enumerate(_binom_poly(j - 1 - i, j - 1)):
                g[e] += c * v
    while g and g[-1] == 0:
        g.pop()
    if not g:
        return True
    lead = g[-1]
    if len(g) == 1:
        return lead >= 0
    bound = 1 + max(abs(c / lead) for c in g[:-1])
    top = int(bound) + 2
    for n in range(deg + 1, max(top, deg + 1) + 1):
        val = sum(c * n ** e for e, c in enumerate(g))
        if val < 0:
            return False
    return lead > 0
