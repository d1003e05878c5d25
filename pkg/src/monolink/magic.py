"""Engine C: F_C as a sum over standard Young tableaux.

For a tableau T with m boxes put z_i = q^(c-1) t^(r-1) where i sits in row r,
column c (French convention, so row 1 is the longest).  Then

    F_{b,eps} = sum_T wt(T; eps) z_1^b_1 ... z_m^b_m nabla^-1 H~_sh(T)

and F_C is omega F_{b_C, eps_C} up to the calibrated convention.  Factors
of wt that vanish identically are dropped on both sides of the fraction.
"""

from functools import lru_cache
from itertools import product

from .exactcoef import LaurentQT, RatQT
from .curve import enumerate_curves, parse, stats
from .symfunc import DEFAULT, SymF, nabla_eigenvalue, partitions

SIGNS = ("+", "-")


class Tableau:
    """A standard Young tableau stored as the cell of each entry 1..m."""

    __slots__ = ("shape", "cells")

    def __init__(self, shape, cells):
        self.shape = tuple(shape)
        self.cells = tuple(cells)

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return "Tableau(%r, %r)" % (self.shape, self.cells)

    def rows(self):
        out = [[0] * r for r in self.shape]
        for i, (r, c) in enumerate(self.cells, 1):
            out[r][c] = i
        return out

    def is_standard(self):
        g = self.rows()
        for r, row in enumerate(g):
            for c, v in enumerate(row):
                if c and row[c - 1] > v:
                    return False
                if r and g[r - 1][c] > v:
                    return False
        return sorted(v for row in g for v in row) == list(range(1, len(self.cells) + 1))

    def z(self):
        return [_z(r, c) for r, c in self.cells]


def _z(r, c):
    return LaurentQT.monomial((2 * c, 2 * r))


@lru_cache(maxsize=None)
def syt(shape):
    """All standard tableaux of a shape, in lexicographic order of row choices."""
    shape = tuple(shape)
    n = sum(shape)
    out = []
    filled = [0] * len(shape)
    where = []

    def rec():
        if len(where) == n:
            out.append(Tableau(shape, where))
            return
        for r, length in enumerate(shape):
            c = filled[r]
            if c < length and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                where.append((r, c))
                rec()
                where.pop()
                filled[r] -= 1

    rec()
    return tuple(out)


def all_syt(m):
    return [T for lam in partitions(m) for T in syt(lam)]


def _exp(r, c):
    return (2 * c, 2 * r)


def _binom(e, counts, unit, k):
    """Record (1 - X^e)^k, X^e a q,t monomial; returns the updated unit.

    1 - X^-e is rewritten as -X^-e (1 - X^e) so that every key is positive.
    Identically-zero factors (e = 0) are skipped.
    """
    if e == (0, 0):
        return unit
    if e < (0, 0):
        unit = unit * LaurentQT.monomial(e, -1) ** k
        e = (-e[0], -e[1])
    counts[e] = counts.get(e, 0) + k
    return unit


def weight(T, eps):
    """wt(T; eps) as an exact RatQT."""
    zs = [_exp(r, c) for r, c in T.cells]
    m = len(zs)
    if len(eps) != m - 1:
        raise ValueError("eps must have length %d" % (m - 1))
    counts = {}
    unit = LaurentQT.const(1)
    for i in range(1, m):
        zi, zp = zs[i], zs[i - 1]
        unit = _binom((-zi[0], -zi[1]), counts, unit, -1)
        if eps[i - 1]:
            unit = _binom((2 + zp[0] - zi[0], 2 + zp[1] - zi[1]), counts, unit, -1)
    for i in range(m):
        for j in range(i + 1, m):
            r = (zs[i][0] - zs[j][0], zs[i][1] - zs[j][1])
            unit = _binom(r, counts, unit, 1)
            unit = _binom((r[0] + 2, r[1] + 2), counts, unit, 1)
            unit = _binom((r[0] + 2, r[1]), counts, unit, -1)
            unit = _binom((r[0], r[1] + 2), counts, unit, -1)
    num = unit
    den = []
    for e, k in counts.items():
        f = 1 - LaurentQT.monomial(e)
        if k > 0:
            num = num * f ** k
        elif k < 0:
            den.append((f, -k))
    return RatQT(num, den)


def F_be(b, eps):
    """F_{b,eps} in the Schur basis, before omega."""
    m = len(b)
    H = {}
    for lam in partitions(m):
        c = RatQT(0)
        for T in syt(lam):
            zb = LaurentQT.const(1)
            for zi, bi in zip(T.z(), b):
                zb = zb * zi ** bi
            c = c + weight(T, eps) * zb
        if c:
            H[lam] = c * nabla_eigenvalue(lam) ** -1
    F = SymF(DEFAULT, "Ht", H).convert("s")
    return F.map_coeffs(lambda c: c.to_poly() if isinstance(c, RatQT) and c.is_polynomial() else c)


def candidates():
    for order, sgn, om in product(("forward", "reversed"), SIGNS, (True, False)):
        yield {"order": order, "sign": sgn, "omega": om}


def _value(C, conv):
    st = stats(C)
    b, eps = st.b, st.eps
    if conv["order"] == "reversed":
        b, eps = b[::-1], eps[::-1]
    F = F_be(b, eps)
    if conv["omega"]:
        F = F.omega()
    return -F if conv["sign"] == "-" else F


def calibrate(curves=None, truth=None):
    """Conventions (over `candidates`) under which Engine C matches Engine A."""
    if curves is None:
        from .daha import F_of
        curves = [C for m in range(1, 4) for n in range(1, 4) for C in enumerate_curves(m, n)]
        truth = [F_of(C) for C in curves]
    return [conv for conv in candidates()
            if all(_value(C, conv) == F for C, F in zip(curves, truth))]


def F_magic(C, calibration=None):
    """F_C by the tableau formula (Schur basis)."""
    from .eha import CalibrationError, load_calibration
    if isinstance(C, str):
        C = parse(C)
    rec = calibration or load_calibration()
    if "magic" not in rec:
        raise CalibrationError("calibration record has no Engine C convention; rerun calibrate")
    DEFAULT.check(C.m)
    return _value(C, rec["magic"]["convention"])
