"""Engine A: the polynomial representation of the double affine Hecke algebra.

Polynomials in x_1..x_N are stored per homogeneous degree as dense integer
arrays indexed by (monomial, Q exponent, T exponent), with Q = q^(1/2) and
T = t^(1/2).  Normalisations of the symmetrisers are kept aside as a
factored denominator and only divided out when the result is read off.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import sparse

from .exactcoef import LaurentQT, RatQT
from .curve import parse
from .symfunc import DEFAULT, SymF, partitions
from .symfunc.combinat import chi
from .symfunc.core import _add_into

_LIMIT = 1 << 52


# ---------------------------------------------------------------------------
# monomial bases and the permutation/divided-difference tables

def _compositions(N, d):
    out = []

    def rec(i, rem, acc):
        if i == N - 1:
            out.append(tuple(acc + [rem]))
            return
        for v in range(rem, -1, -1):
            rec(i + 1, rem - v, acc + [v])

    if N == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


class _Space:
    """Monomials of degree d in N variables plus operator tables."""

    def __init__(self, N, d):
        self.N, self.d = N, d
        self.monos = _compositions(N, d)
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.M = len(self.monos)
        self._s = {}
        self._dd = {}
        self._rho = None
        self._rho_inv = None
        self._up = None
        self._sorted = None

    def s_perm(self, i):
        """perm[j] = index of s_i(mono_j) (0-based i swaps positions i, i+1)."""
        r = self._s.get(i)
        if r is None:
            r = np.empty(self.M, dtype=np.int64)
            for j, a in enumerate(self.monos):
                b = list(a)
                b[i], b[i + 1] = b[i + 1], b[i]
                r[j] = self.index[tuple(b)]
            self._s[i] = r
        return r

    def divdiff(self, i):
        """Sparse matrix of f -> x_{i+1} (s_i f - f)/(x_i - x_{i+1}) (0-based i)."""
        r = self._dd.get(i)
        if r is None:
            rows, cols, vals = [], [], []
            for j, a in enumerate(self.monos):
                al, be = a[i], a[i + 1]
                if al == be:
                    continue
                lo, hi = min(al, be), max(al, be)
                sgn = -1 if al > be else 1
                L = hi - lo
                for u in range(L):
                    b = list(a)
                    b[i] = lo + u
                    b[i + 1] = lo + (L - 1 - u) + 1
                    rows.append(self.index[tuple(b)])
                    cols.append(j)
                    vals.append(sgn)
            r = sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                                  shape=(self.M, self.M), dtype=np.int64)
            r.sum_duplicates()
            self._dd[i] = r
        return r

    def rho(self):
        """(perm, a_1): rho x^a = q^(a_1) x^(a_2, ..., a_N, a_1)."""
        if self._rho is None:
            perm = np.empty(self.M, dtype=np.int64)
            sh = np.empty(self.M, dtype=np.int64)
            for j, a in enumerate(self.monos):
                perm[j] = self.index[a[1:] + a[:1]]
                sh[j] = a[0]
            self._rho = (perm, sh)
        return self._rho

    def rho_inv(self):
        """(perm, -b_N): rho^-1 x^b = q^(-b_N) x^(b_N, b_1, ..., b_{N-1})."""
        if self._rho_inv is None:
            perm = np.empty(self.M, dtype=np.int64)
            sh = np.empty(self.M, dtype=np.int64)
            for j, b in enumerate(self.monos):
                perm[j] = self.index[b[-1:] + b[:-1]]
                sh[j] = -b[-1]
            self._rho_inv = (perm, sh)
        return self._rho_inv

    def up(self):
        """Index map for multiplication by x_1 into degree d + 1."""
        if self._up is None:
            nxt = space(self.N, self.d + 1)
            self._up = np.array([nxt.index[(a[0] + 1,) + a[1:]] for a in self.monos],
                                dtype=np.int64)
        return self._up

    def sorted_index(self):
        if self._sorted is None:
            self._sorted = np.array([self.index[tuple(sorted(a, reverse=True))]
                                     for a in self.monos], dtype=np.int64)
        return self._sorted


@lru_cache(maxsize=None)
def space(N, d):
    return _Space(N, d)


# ---------------------------------------------------------------------------
# dense coefficient blocks

class _Block:
    """Homogeneous piece: arr[j, iQ, iT] is the coefficient of
    x^mono_j Q^(oQ+iQ) T^(oT+iT)."""

    __slots__ = ("sp", "arr", "oQ", "oT")

    def __init__(self, sp, arr, oQ, oT):
        self.sp, self.arr, self.oQ, self.oT = sp, arr, oQ, oT

    def fix(self):
        a = self.arr
        if a.dtype != object and a.size and max(a.max(), -a.min()) > _LIMIT:
            self.arr = a.astype(object)
        return self

    def trim(self):
        a = self.arr
        if a.size == 0:
            return self
        nz = a != 0
        if not nz.any():
            self.arr = a[:, :0, :0]
            return self
        qs = np.nonzero(nz.any(axis=(0, 2)))[0]
        ts = np.nonzero(nz.any(axis=(0, 1)))[0]
        q0, q1, t0, t1 = qs[0], qs[-1] + 1, ts[0], ts[-1] + 1
        if (q0, q1, t0, t1) != (0, a.shape[1], 0, a.shape[2]):
            self.arr = a[:, q0:q1, t0:t1].copy()
            self.oQ += int(q0)
            self.oT += int(t0)
        return self

    def is_zero(self):
        return self.arr.size == 0 or not self.arr.any()

    def copy(self):
        return _Block(self.sp, self.arr.copy(), self.oQ, self.oT)

    def shifted(self, dQ, dT):
        return _Block(self.sp, self.arr, self.oQ + dQ, self.oT + dT)


def _dtype(*arrs):
    return object if any(a.dtype == object for a in arrs) else np.int64


def _add_blocks(b1, b2, sign=1):
    if b1 is None:
        return b2 if sign == 1 else _Block(b2.sp, -b2.arr, b2.oQ, b2.oT)
    if b2.arr.size == 0:
        return b1
    if b1.arr.size == 0:
        return _add_blocks(None, b2, sign)
    a1, a2 = b1.arr, b2.arr
    oQ = min(b1.oQ, b2.oQ)
    oT = min(b1.oT, b2.oT)
    eQ = max(b1.oQ + a1.shape[1], b2.oQ + a2.shape[1])
    eT = max(b1.oT + a1.shape[2], b2.oT + a2.shape[2])
    out = np.zeros((a1.shape[0], eQ - oQ, eT - oT), dtype=_dtype(a1, a2))
    out[:, b1.oQ - oQ:b1.oQ - oQ + a1.shape[1], b1.oT - oT:b1.oT - oT + a1.shape[2]] += a1
    if sign == 1:
        out[:, b2.oQ - oQ:b2.oQ - oQ + a2.shape[1], b2.oT - oT:b2.oT - oT + a2.shape[2]] += a2
    else:
        out[:, b2.oQ - oQ:b2.oQ - oQ + a2.shape[1], b2.oT - oT:b2.oT - oT + a2.shape[2]] -= a2
    return _Block(b1.sp, out, oQ, oT).fix()


def _mul_laurent(b, p):
    """Multiply a block by a LaurentQT with integer coefficients."""
    acc = None
    for (eq, et), c in p.terms.items():
        c = int(c)
        term = _Block(b.sp, b.arr * c, b.oQ + eq, b.oT + et)
        acc = _add_blocks(acc, term)
    return acc.fix()


def _spmm(mat, arr):
    M = arr.shape[0]
    flat = arr.reshape(M, -1)
    shape = (mat.shape[0],) + arr.shape[1:]
    if arr.dtype == object:
        coo = mat.tocoo()
        out = np.zeros((mat.shape[0], flat.shape[1]), dtype=object)
        for r, c, v in zip(coo.row, coo.col, coo.data):
            out[r] += flat[c] * int(v)
        return out.reshape(shape)
    return np.asarray(mat @ flat).reshape(shape)


def _T_block(b, i, inverse=False):
    sp = b.sp
    a = b.arr
    if a.size == 0:
        return b
    perm = sp.s_perm(i)
    S = np.empty_like(a)
    S[perm] = a
    Dl = _spmm(sp.divdiff(i), a)
    M, nQ, nT = a.shape
    width = nT + 2
    out = np.zeros((M, nQ, width), dtype=a.dtype)
    # T^-1 (S + Dl) - T Dl, offsets oT - 1
    out[:, :, 0:nT] += S
    out[:, :, 0:nT] += Dl
    out[:, :, 2:] -= Dl
    if inverse:
        # + (T - T^-1) f
        out[:, :, 2:] += a
        out[:, :, 0:nT] -= a
    return _Block(sp, out, b.oQ, b.oT - 1).fix().trim()


def _rho_block(b, inverse=False):
    sp = b.sp
    a = b.arr
    perm, sh = sp.rho_inv() if inverse else sp.rho()
    d = sp.d
    M, nQ, nT = a.shape
    lo = -2 * d if inverse else 0
    out = np.zeros((M, nQ + 2 * d, nT), dtype=a.dtype)
    for v in range(-d, d + 1):
        rows = np.nonzero(sh == v)[0]
        if rows.size == 0:
            continue
        s = 2 * v - lo
        out[perm[rows], s:s + nQ, :] = a[rows]
    return _Block(sp, out, b.oQ + lo, b.oT).trim()


def _x1_block(b):
    sp = b.sp
    nxt = space(sp.N, sp.d + 1)
    a = b.arr
    out = np.zeros((nxt.M,) + a.shape[1:], dtype=a.dtype)
    out[sp.up()] = a
    return _Block(nxt, out, b.oQ, b.oT)


def _xi_block(b, i):
    sp = b.sp
    nxt = space(sp.N, sp.d + 1)
    idx = np.array([nxt.index[m[:i] + (m[i] + 1,) + m[i + 1:]] for m in sp.monos],
                   dtype=np.int64)
    a = b.arr
    out = np.zeros((nxt.M,) + a.shape[1:], dtype=a.dtype)
    out[idx] = a
    return _Block(nxt, out, b.oQ, b.oT)


# ---------------------------------------------------------------------------

class NPoly:
    """Polynomial in x_1..x_N with Laurent coefficients in q^(1/2), t^(1/2),
    divided by a global factored denominator."""

    __slots__ = ("N", "blocks", "den")

    def __init__(self, N, blocks=None, den=None):
        self.N = N
        self.blocks = blocks or {}
        self.den = dict(den or {})

    @classmethod
    def one(cls, N):
        sp = space(N, 0)
        return cls(N, {0: _Block(sp, np.ones((1, 1, 1), dtype=np.int64), 0, 0)})

    @classmethod
    def from_dict(cls, N, terms):
        """terms: {exponent tuple: int or LaurentQT with integer coefficients}."""
        by_deg = {}
        for e, c in terms.items():
            if len(e) != N:
                raise ValueError("exponent length")
            c = LaurentQT.const(c) if isinstance(c, (int, Fraction)) else c
            if c:
                by_deg.setdefault(sum(e), []).append((tuple(e), c))
        blocks = {}
        for d, items in by_deg.items():
            sp = space(N, d)
            allk = [k for _, c in items for k in c.terms]
            qs = [k[0] for k in allk]
            ts = [k[1] for k in allk]
            oQ, oT = min(qs), min(ts)
            arr = np.zeros((sp.M, max(qs) - oQ + 1, max(ts) - oT + 1), dtype=object)
            for e, c in items:
                for (eq, et), v in c.terms.items():
                    if Fraction(v).denominator != 1:
                        raise ValueError("NPoly numerators must have integer coefficients")
                    arr[sp.index[e], eq - oQ, et - oT] += int(v)
            blk = _Block(sp, arr, oQ, oT)
            blk.arr = blk.arr.astype(np.int64) if all(
                abs(int(x)) < _LIMIT for x in arr.flat) else arr
            blocks[d] = blk
        return cls(N, blocks)

    def _with(self, blocks, den=None):
        return NPoly(self.N, {d: b for d, b in blocks.items() if not b.is_zero()},
                     self.den if den is None else den)

    def map_blocks(self, fn):
        return self._with({d: fn(b) for d, b in self.blocks.items()})

    def degree(self):
        return max(self.blocks, default=-1)

    def is_zero(self):
        return not self.blocks

    def den_poly(self):
        r = LaurentQT.const(1)
        for f, k in self.den.items():
            r = r * f ** k
        return r

    def numerator_terms(self):
        """{exponent tuple: LaurentQT} of the numerator."""
        out = {}
        for d, b in self.blocks.items():
            a = b.arr
            for j, qi, ti in zip(*np.nonzero(a)):
                e = b.sp.monos[j]
                out.setdefault(e, {})[(int(qi) + b.oQ, int(ti) + b.oT)] = int(a[j, qi, ti])
        return {e: LaurentQT(d) for e, d in out.items()}

    def to_dict(self):
        """{exponent tuple: RatQT}."""
        den = list(self.den.items())
        return {e: RatQT(c, den) for e, c in self.numerator_terms().items()}

    def coefficient(self, e):
        e = tuple(e)
        b = self.blocks.get(sum(e))
        if b is None:
            return RatQT(0)
        j = b.sp.index[e]
        sl = b.arr[j]
        terms = {(int(qi) + b.oQ, int(ti) + b.oT): int(sl[qi, ti]) for qi, ti in zip(*np.nonzero(sl))}
        return RatQT(LaurentQT(terms), list(self.den.items()))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        a, b = self, other
        if a.den != b.den:
            den = dict(a.den)
            for f, k in b.den.items():
                den[f] = max(den.get(f, 0), k)
            a = a._rescale(den)
            b = b._rescale(den)
        blocks = dict(a.blocks)
        for d, blk in b.blocks.items():
            blocks[d] = _add_blocks(blocks.get(d), blk, sign).trim()
        return a._with(blocks, dict(a.den))

    def _rescale(self, den):
        mult = LaurentQT.const(1)
        for f, k in den.items():
            e = k - self.den.get(f, 0)
            if e:
                mult = mult * f ** e
        return self.scale(mult)._with_den(den)

    def _with_den(self, den):
        return NPoly(self.N, self.blocks, den)

    def scale(self, p):
        """Multiply by a LaurentQT (integer coefficients) or int."""
        if isinstance(p, int):
            p = LaurentQT.const(p)
        return self._with({d: _mul_laurent(b, p).trim() for d, b in self.blocks.items()})

    def divide_by(self, f):
        """Record division by the LaurentQT factor f."""
        den = dict(self.den)
        den[f] = den.get(f, 0) + 1
        return NPoly(self.N, self.blocks, den)

    def __eq__(self, other):
        if not isinstance(other, NPoly):
            return NotImplemented
        if self.N != other.N:
            return False
        return (self - other).is_zero()

    def is_symmetric(self):
        for b in self.blocks.values():
            for i in range(self.N - 1):
                perm = b.sp.s_perm(i)
                if not np.array_equal(b.arr[perm], b.arr):
                    return False
        return True

    def __repr__(self):
        return "NPoly(N=%d, %s)" % (self.N, {e: str(c) for e, c in self.to_dict().items()})


# ---------------------------------------------------------------------------
# operators

def apply_T(i, f, inverse=False):
    """T_i (1-based i) acting on f."""
    if not 1 <= i <= f.N - 1:
        raise IndexError("T_%d undefined for N = %d" % (i, f.N))
    return f.map_blocks(lambda b: _T_block(b, i - 1, inverse))


def apply_rho(f, inverse=False):
    return f.map_blocks(lambda b: _rho_block(b, inverse))


def apply_X1(f):
    """Multiplication by X_1 = q^-1 x_1."""
    return NPoly(f.N, {d + 1: _x1_block(b).shifted(-2, 0) for d, b in f.blocks.items()}, f.den)


def mult_x1(f):
    return NPoly(f.N, {d + 1: _x1_block(b) for d, b in f.blocks.items()}, f.den)


def apply_Y1(f, inverse=False):
    """Y_1 = t^((N-1)/2) T_1 ... T_{N-1} rho."""
    N = f.N
    if not inverse:
        g = apply_rho(f)
        for i in range(N - 1, 0, -1):
            g = apply_T(i, g)
        return g.map_blocks(lambda b: b.shifted(0, N - 1))
    g = f
    for i in range(1, N):
        g = apply_T(i, g, inverse=True)
    g = apply_rho(g, inverse=True)
    return g.map_blocks(lambda b: b.shifted(0, -(N - 1)))


def apply_X(i, f):
    """X_i = multiplication by q^-1 x_i (1-based i)."""
    return NPoly(f.N, {d + 1: _xi_block(b, i - 1).shifted(-2, 0) for d, b in f.blocks.items()},
                 f.den)


def apply_Y(i, f, inverse=False):
    """Y_i = t^((N-1)/2) T_i ... T_{N-1} rho T_1^-1 ... T_{i-1}^-1 (1-based i)."""
    N = f.N
    if i == 1:
        return apply_Y1(f, inverse)
    g = f
    if not inverse:
        for j in range(i - 1, 0, -1):
            g = apply_T(j, g, inverse=True)
        g = apply_rho(g)
        for j in range(N - 1, i - 1, -1):
            g = apply_T(j, g)
        return g.map_blocks(lambda b: b.shifted(0, N - 1))
    for j in range(i, N):
        g = apply_T(j, g, inverse=True)
    g = apply_rho(g, inverse=True)
    for j in range(1, i):
        g = apply_T(j, g)
    return g.map_blocks(lambda b: b.shifted(0, -(N - 1)))


def apply_R_step(f):
    """Y_1 X_1 Y_1^-1 = T_1 ... T_{N-1} T_{N-1} ... T_1 (x_1 .)"""
    N = f.N
    g = mult_x1(f)
    for i in range(1, N):
        g = apply_T(i, g)
    for i in range(N - 1, 0, -1):
        g = apply_T(i, g)
    return g


def _tpow(e):
    return LaurentQT.monomial((0, e))


def symmetrize(f, k=None):
    """e_[1,k] f via the recursion over parabolic cosets."""
    k = f.N if k is None else k
    g = f
    for j in range(2, k + 1):
        h = g
        acc = g
        for i in range(j - 1, 0, -1):
            h = apply_T(i, h)
            acc = acc + h.map_blocks(lambda b, s=j - i: b.shifted(0, -s))
        # (1 - t^-1)/(1 - t^-j) = t^(j-1) (1 - t)/(1 - t^j)
        acc = acc.scale(_tpow(2 * (j - 1)) * (1 - _tpow(2)))
        g = acc.divide_by(1 - _tpow(2 * j))
    return g


def gamma(N):
    """gamma_{N;t} = 1 - t^N."""
    return 1 - _tpow(2 * N)


def delta():
    """delta_{q,t} = 1/(t^(1/2)(1 - q))."""
    return RatQT(_tpow(-1), [(1 - LaurentQT.monomial((2, 0)), 1)])


class DahaConstants:
    def __init__(self, N):
        self.N = N
        self.gamma = gamma(N)
        self.delta = delta()


def D_apply(C, N, f=None, cache=None):
    """D_C^(N) f, factors applied right to left.

    With f = 1 a dict passed as `cache` memoises the state after every word
    suffix, so curves sharing a suffix share the work.
    """
    if isinstance(C, str):
        C = parse(C)
    w = C.word
    if f is None or _is_one(f):
        f = NPoly.one(N)
        g, start = f, len(w)
        if cache is not None:
            for p in range(len(w)):
                hit = cache.get((N, w[p:]))
                if hit is not None:
                    g, start = hit, p
                    break
    else:
        cache = None
        g, start = symmetrize(f), len(w)
    ge = gamma(N)
    for p in range(start - 1, -1, -1):
        ch = w[p]
        if ch == "U":
            g = apply_Y1(g)
        elif ch == "R":
            g = apply_R_step(g)
        else:
            g = symmetrize(g).scale(ge)
        if cache is not None:
            cache[(N, w[p:])] = g
    return symmetrize(g).scale(ge)


def _is_one(f):
    if f.den or list(f.blocks) != [0]:
        return False
    b = f.blocks[0]
    return b.arr.shape == (1, 1, 1) and b.oQ == 0 and b.oT == 0 and int(b.arr[0, 0, 0]) == 1


def monomial_coefficients(P, N=None):
    """Coefficients of m_lam (lam with at most N parts) in a symmetric NPoly."""
    out = {}
    den = P.den_poly()
    for d, b in P.blocks.items():
        for lam in partitions(d):
            if len(lam) > P.N:
                continue
            e = tuple(lam) + (0,) * (P.N - len(lam))
            j = b.sp.index[e]
            sl = b.arr[j]
            terms = {(int(qi) + b.oQ, int(ti) + b.oT): int(sl[qi, ti])
                     for qi, ti in zip(*np.nonzero(sl))}
            if not terms:
                continue
            c = LaurentQT(terms)
            r = c.exact_div(den)
            if r is None:
                raise ArithmeticError("coefficient of m%s is not a Laurent polynomial" % (lam,))
            out[lam] = r
    return out


@lru_cache(maxsize=None)
def _W(m):
    r = LaurentQT.const(1)
    for k in range(1, m + 1):
        r = r * (1 - _tpow(2 * k))
    return r


def plethysm_1mt(mcoeffs, m, ring=DEFAULT):
    """F[X/(1-t)] in the Schur basis for F = sum c_lam m_lam homogeneous of degree m."""
    pco = {}
    for lam, c in mcoeffs.items():
        for mu, r in ring.to_p("m", lam).items():
            _add_into(pco, mu, c * r)
    W = _W(m)
    s = {}
    for mu, c in pco.items():
        den = LaurentQT.const(1)
        for x in mu:
            den = den * (1 - _tpow(2 * x))
        c = c * W.exact_div(den)
        for lam in partitions(m):
            ch = chi(lam, mu)
            if ch:
                _add_into(s, lam, c * ch)
    out = {}
    for lam, c in s.items():
        r = c.exact_div(W)
        if r is None:
            raise ArithmeticError("plethysm by X/(1-t) left a denominator")
        out[lam] = r
    return SymF(ring, "s", out)


def lift(P, ring=DEFAULT):
    """Symmetric NPoly -> SymF in the monomial basis (parts limited by N)."""
    if not P.is_symmetric():
        raise ArithmeticError("polynomial is not symmetric")
    return SymF(ring, "m", monomial_coefficients(P))


def F_of(C, N=None, ring=DEFAULT):
    """F_C = (D_C . 1)[X/(1-t)] in the Schur basis."""
    if isinstance(C, str):
        C = parse(C)
    N = C.m if N is None else N
    P = D_apply(C, N)
    if set(P.blocks) - {C.m}:
        raise ArithmeticError("D_C . 1 is not homogeneous of degree m")
    if not P.is_symmetric():
        raise ArithmeticError("D_C . 1 is not symmetric")
    F = plethysm_1mt(monomial_coefficients(P), C.m, ring)
    for c in F.terms.values():
        if not c.has_integer_powers():
            raise ArithmeticError("half-integer power left in F_C")
    return F


def D_one(C, N=None, ring=DEFAULT):
    """D_C . 1 as a SymF in the monomial basis (before the plethysm)."""
    if isinstance(C, str):
        C = parse(C)
    N = C.m if N is None else N
    return lift(D_apply(C, N), ring)


# ---------------------------------------------------------------------------
# symmetric functions in and out of N variables

def npoly_from_sym(f, N):
    """Restrict a SymF with integer-Laurent coefficients to N variables."""
    m = f.convert("m")
    terms = {}
    for lam, c in m.terms.items():
        if len(lam) > N:
            continue
        c = c if not isinstance(c, RatQT) else c.to_poly()
        base = tuple(lam) + (0,) * (N - len(lam))
        for e in set(_perms(base)):
            terms[e] = c
    return NPoly.from_dict(N, terms)


def _perms(t):
    from itertools import permutations
    return permutations(t)


def act_on_sym(C, f, N, ring=DEFAULT):
    """D_C^(N) applied to the symmetric function f restricted to N variables,
    read back as a SymF (monomial basis, RatQT coefficients)."""
    if isinstance(C, str):
        C = parse(C)
    P = D_apply(C, N, npoly_from_sym(f, N))
    den = list(P.den.items())
    mco = {}
    for d, b in P.blocks.items():
        for lam in partitions(d):
            if len(lam) > N:
                continue
            e = tuple(lam) + (0,) * (N - len(lam))
            sl = b.arr[b.sp.index[e]]
            terms = {(int(qi) + b.oQ, int(ti) + b.oT): int(sl[qi, ti])
                     for qi, ti in zip(*np.nonzero(sl))}
            if terms:
                mco[lam] = RatQT(LaurentQT(terms), den)
    return SymF(ring, "m", mco)


# ---------------------------------------------------------------------------
# block-symmetric evaluation on symmetric inputs
#
# On a symmetric input every state between two symmetrisers is symmetric in
# x_2..x_N (Y_1 and X_1 commute with T_2..T_{N-1}), and partial T-chains keep
# symmetry on known runs of variables.  A polynomial symmetric in each block
# of consecutive variables is stored on the basis prod_b m_{alpha_b}(x_b), so
# the same operators run on a far smaller space.

def _parts_upto(d, k):
    """Partitions of d with at most k parts, padded with zeros to length k."""
    out = []
    for lam in partitions(d):
        if len(lam) <= k:
            out.append(tuple(lam) + (0,) * (k - len(lam)))
    return out


class _PSpace:
    def __init__(self, N, d, blocks):
        self.N, self.d, self.blocks = N, d, blocks
        self.monos = []
        self._fill(0, d, [])
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.M = len(self.monos)
        self._cache = {}

    def _fill(self, b, rem, acc):
        if b == len(self.blocks) - 1:
            for p in _parts_upto(rem, self.blocks[b]):
                self.monos.append(tuple(acc) + (p,))
            return
        for e in range(rem + 1):
            for p in _parts_upto(e, self.blocks[b]):
                self._fill(b + 1, rem - e, acc + [p])

    def start(self, b):
        return sum(self.blocks[:b])

    def block_of(self, pos):
        s = 0
        for b, size in enumerate(self.blocks):
            if pos < s + size:
                return b, s
            s += size
        raise IndexError(pos)

    # T_i on singleton blocks b, b+1 --------------------------------------
    def s_perm(self, b):
        key = ("s", b)
        r = self._cache.get(key)
        if r is None:
            r = np.empty(self.M, dtype=np.int64)
            for j, m in enumerate(self.monos):
                mm = list(m)
                mm[b], mm[b + 1] = m[b + 1], m[b]
                r[j] = self.index[tuple(mm)]
            self._cache[key] = r
        return r

    def divdiff(self, b):
        key = ("dd", b)
        r = self._cache.get(key)
        if r is None:
            rows, cols, vals = [], [], []
            for j, m in enumerate(self.monos):
                al, be = m[b][0], m[b + 1][0]
                if al == be:
                    continue
                lo, hi = min(al, be), max(al, be)
                sgn = -1 if al > be else 1
                L = hi - lo
                for u in range(L):
                    mm = list(m)
                    mm[b] = (lo + u,)
                    mm[b + 1] = (lo + L - u,)
                    rows.append(self.index[tuple(mm)])
                    cols.append(j)
                    vals.append(sgn)
            r = sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                                  shape=(self.M, self.M), dtype=np.int64)
            r.sum_duplicates()
            self._cache[key] = r
        return r

    # structure changes ------------------------------------------------------
    def refine(self, b, s1):
        """Split block b into sizes (s1, size - s1): matrix new <- old."""
        key = ("ref", b, s1)
        r = self._cache.get(key)
        if r is None:
            size = self.blocks[b]
            nb = self.blocks[:b] + (s1, size - s1) + self.blocks[b + 1:]
            new = pspace(self.N, self.d, nb)
            rows, cols = [], []
            for j, m in enumerate(self.monos):
                for beta, gamma_ in _splits(m[b], s1):
                    rows.append(new.index[m[:b] + (beta, gamma_) + m[b + 1:]])
                    cols.append(j)
            mat = sparse.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)),
                                    shape=(new.M, self.M), dtype=np.int64)
            r = self._cache[key] = (new, mat)
        return r

    def coarsen(self, b):
        """Merge blocks b, b+1 (the polynomial must be symmetric across them)."""
        key = ("co", b)
        r = self._cache.get(key)
        if r is None:
            nb = self.blocks[:b] + (self.blocks[b] + self.blocks[b + 1],) + self.blocks[b + 2:]
            new = pspace(self.N, self.d, nb)
            s1 = self.blocks[b]
            idx = np.empty(new.M, dtype=np.int64)
            for j, m in enumerate(new.monos):
                a = m[b]
                idx[j] = self.index[m[:b] + (a[:s1], a[s1:]) + m[b + 1:]]
            r = self._cache[key] = (new, idx)
        return r

    def rho(self):
        """First block must be a singleton: x_1^a h(x_2..) -> q^a h(x_1..) x_N^a."""
        key = ("rho",)
        r = self._cache.get(key)
        if r is None:
            nb = self.blocks[1:] + (1,)
            new = pspace(self.N, self.d, nb)
            perm = np.empty(self.M, dtype=np.int64)
            sh = np.empty(self.M, dtype=np.int64)
            for j, m in enumerate(self.monos):
                perm[j] = new.index[m[1:] + (m[0],)]
                sh[j] = m[0][0]
            r = self._cache[key] = (new, perm, sh)
        return r

    def up(self):
        key = ("up",)
        r = self._cache.get(key)
        if r is None:
            new = pspace(self.N, self.d + 1, self.blocks)
            idx = np.array([new.index[((m[0][0] + 1,),) + m[1:]]
                            for m in self.monos], dtype=np.int64)
            r = self._cache[key] = (new, idx)
        return r


def _splits(alpha, s1):
    """Distinct ways to split the multiset alpha into sorted tuples of sizes s1, rest."""
    out = set()
    n = len(alpha)
    from itertools import combinations
    for pick in combinations(range(n), s1):
        beta = tuple(alpha[i] for i in pick)
        ps = set(pick)
        gamma_ = tuple(alpha[i] for i in range(n) if i not in ps)
        out.add((beta, gamma_))
    return sorted(out)


@lru_cache(maxsize=None)
def pspace(N, d, blocks):
    return _PSpace(N, d, blocks)


class _PState:
    """Per-degree blocks over a block-symmetric space."""

    def __init__(self, blk):
        self.blk = blk

    @property
    def sp(self):
        return self.blk.sp


def _p_refine(blk, b, s1):
    new, mat = blk.sp.refine(b, s1)
    return _Block(new, _spmm(mat, blk.arr) if blk.arr.size else
                  np.zeros((new.M,) + blk.arr.shape[1:], dtype=blk.arr.dtype), blk.oQ, blk.oT).fix()


def _p_coarsen(blk, b):
    new, idx = blk.sp.coarsen(b)
    return _Block(new, blk.arr[idx], blk.oQ, blk.oT)


def _p_isolate(blk, pos):
    """Refine so that variable pos (0-based) is a singleton block."""
    b, s = blk.sp.block_of(pos)
    size = blk.sp.blocks[b]
    if pos > s:
        blk = _p_refine(blk, b, pos - s)
        b += 1
        size -= pos - s
    if size > 1:
        blk = _p_refine(blk, b, 1)
    return blk


def _p_merge_range(blk, lo, hi):
    """Coarsen so that variables lo..hi-1 form one block (they must already be
    a union of consecutive blocks)."""
    while True:
        b, s = blk.sp.block_of(lo)
        if s != lo:
            raise ValueError("range does not start at a block boundary")
        if s + blk.sp.blocks[b] >= hi:
            if s + blk.sp.blocks[b] != hi:
                raise ValueError("range does not end at a block boundary")
            return blk
        blk = _p_coarsen(blk, b)


def _p_T(blk, i):
    """T_i (1-based) with variables i-1, i isolated first."""
    blk = _p_isolate(blk, i - 1)
    blk = _p_isolate(blk, i)
    b, _ = blk.sp.block_of(i - 1)
    return _T_block(blk, b)


def _p_rho(blk):
    new, perm, sh = blk.sp.rho()
    a = blk.arr
    d = blk.sp.d
    M, nQ, nT = a.shape
    out = np.zeros((new.M, nQ + 2 * d, nT), dtype=a.dtype)
    for v in range(d + 1):
        rows = np.nonzero(sh == v)[0]
        if rows.size:
            out[perm[rows], 2 * v:2 * v + nQ, :] = a[rows]
    return _Block(new, out, blk.oQ, blk.oT).trim()


def _p_x1(blk):
    new, idx = blk.sp.up()
    a = blk.arr
    out = np.zeros((new.M,) + a.shape[1:], dtype=a.dtype)
    out[idx] = a
    return _Block(new, out, blk.oQ, blk.oT)


def _p_Y1(blk):
    """Y_1 on a state with blocks (1, N-1)."""
    N = blk.sp.N
    blk = _p_rho(blk)
    for k in range(N - 1, 0, -1):
        blk = _p_T(blk, k).trim()
        blk = _p_merge_range(blk, k, N)
    return blk.shifted(0, N - 1)


def _p_R(blk):
    """Y_1 X_1 Y_1^-1 on a state with blocks (1, N-1)."""
    N = blk.sp.N
    blk = _p_x1(blk)
    for k in range(1, N):
        blk = _p_T(blk, k).trim()
        blk = _p_merge_range(blk, 0, k)
    for k in range(N - 1, 0, -1):
        blk = _p_T(blk, k).trim()
        blk = _p_merge_range(blk, k, N)
    return blk


def _p_gamma_e(blk):
    """gamma_N e_N on a state symmetric in x_2..x_N; returns blocks (N,)."""
    N, d = blk.sp.N, blk.sp.d
    target = pspace(N, d, (N,))
    terms = []
    h = blk
    for j in range(1, N + 1):
        if j > 1:
            h = _p_T(h, j - 1).trim()
            h = _p_merge_range(h, 0, j - 1)
        sp = h.sp
        rows = []
        for (lam,) in target.monos:
            key = []
            if j > 1:
                key.append(lam[:j - 1])
            key.append((lam[j - 1],))
            if j < N:
                key.append(lam[j:])
            rows.append(sp.index[tuple(key)])
        terms.append(_Block(target, h.arr[np.array(rows, dtype=np.int64)], h.oQ, h.oT - (j - 1)))
    acc = None
    for t_ in terms:
        acc = _add_blocks(acc, t_)
    # t^(N-1) (1 - t)
    acc = _add_blocks(acc.shifted(0, 2 * (N - 1)), acc.shifted(0, 2 * N), -1)
    return acc.trim()


def _p_from_m(N, coeffs):
    """Sym(1..N) state(s) from {partition: int or LaurentQT}, grouped by degree."""
    by_deg = {}
    for lam, c in coeffs.items():
        if len(lam) > N:
            continue
        c = LaurentQT.const(c) if isinstance(c, (int, Fraction)) else c
        if c:
            by_deg.setdefault(sum(lam), []).append((tuple(lam) + (0,) * (N - len(lam)), c))
    out = {}
    for d, items in by_deg.items():
        sp = pspace(N, d, (N,))
        keys = [k for _, c in items for k in c.terms]
        oQ = min(k[0] for k in keys)
        oT = min(k[1] for k in keys)
        arr = np.zeros((sp.M, max(k[0] for k in keys) - oQ + 1, max(k[1] for k in keys) - oT + 1),
                       dtype=object)
        for lam, c in items:
            for (eq, et), v in c.terms.items():
                if Fraction(v).denominator != 1:
                    raise ValueError("integer coefficients required")
                arr[sp.index[(lam,)], eq - oQ, et - oT] += int(v)
        small = all(abs(int(x)) < _LIMIT for x in arr.flat)
        out[d] = _Block(sp, arr.astype(np.int64) if small else arr, oQ, oT)
    return out


def _p_to_m(blocks):
    out = {}
    for blk in blocks.values():
        a = blk.arr
        for j, (lam,) in enumerate(blk.sp.monos):
            sl = a[j]
            nz = np.nonzero(sl)
            if len(nz[0]) == 0:
                continue
            terms = {(int(qi) + blk.oQ, int(ti) + blk.oT): int(sl[qi, ti]) for qi, ti in zip(*nz)}
            out[tuple(x for x in lam if x)] = LaurentQT(terms)
    return out


def D_apply_sym(C, N, f=None):
    """D_C^(N) on a symmetric polynomial given by m_lam coefficients.

    f: {partition: int or LaurentQT} (default 1).  Returns the same kind of
    dict; no denominators appear.
    """
    if isinstance(C, str):
        C = parse(C)
    f = {(): 1} if f is None else f
    state = _p_from_m(N, f)
    out = {}
    for d, blk in state.items():
        w = C.word
        for p in range(len(w) - 1, -1, -1):
            ch = w[p]
            if ch == "*":
                blk = _p_gamma_e(blk)
                continue
            if blk.sp.blocks == (N,) and N > 1:
                blk = _p_refine(blk, 0, 1)
            blk = _p_Y1(blk) if ch == "U" else _p_R(blk)
        if blk.sp.blocks == (N,) and N > 1:
            blk = _p_refine(blk, 0, 1)
        blk = _p_gamma_e(blk)
        out[blk.sp.d] = blk
    res = _p_to_m(out)
    return res


def F_of_sym(C, N=None, ring=DEFAULT):
    """F_C through the block-symmetric evaluation."""
    if isinstance(C, str):
        C = parse(C)
    N = C.m if N is None else N
    mco = D_apply_sym(C, N)
    if any(sum(l) != C.m for l in mco):
        raise ArithmeticError("D_C . 1 is not homogeneous of degree m")
    return plethysm_1mt(mco, C.m, ring)
