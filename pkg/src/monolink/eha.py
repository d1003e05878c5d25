"""Engine B: F_C through the operators D_k on symmetric functions.

    sum_k (-z)^-k D_k = Omega[-X/z] . Omega[zMX]^perp,   M = (1-t)(1-q)

so D_k F = sum_j (-1)^j e_{j+k} G_j where F[X + zM] = sum_j z^j G_j.
A primitive curve is evaluated as omega of a sum of D-compositions read off
from the b-sequence of its reflection (the convention is fixed once by
`calibrate` and stored in a record file); curves through
lattice points go through the skein expansion first.

Also here: formal expressions in the generators u_x, and a check of the
commutation relations they satisfy, realised as operators on symmetric
polynomials through Engine A.
"""

import hashlib
import json
import os
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd

from .exactcoef import LaurentQT, RatQT
from .curve import (CurveError, almost_linear, convex_expand, enumerate_curves,
                    parse, reflect, skein_expand, stats, z_convex)
from .symfunc import DEFAULT, SymF, partitions
from .symfunc.combinat import sign, zee
from .symfunc.core import _add_into

DATA = os.path.join(os.path.dirname(__file__), "data")
CALIBRATION_PATH = os.path.join(DATA, "calibration.json")


class CalibrationError(RuntimeError):
    pass


def _qt(a, b, c=1):
    return LaurentQT.monomial((2 * a, 2 * b), c)


ONE = LaurentQT.const(1)
M = (1 - _qt(0, 1)) * (1 - _qt(1, 0))


def alpha(i):
    """alpha_i = (1 - q^-i)(1 - t^-i)(1 - (qt)^i)/i."""
    return RatQT((1 - _qt(-i, 0)) * (1 - _qt(0, -i)) * (1 - _qt(i, i))) / i


def c_coef(d, lam):
    """c^d_lam = (-t)^d eps_lam z_lam^-1 prod (1 - t^-lam_i)."""
    r = _qt(0, d, Fraction((-1) ** d * sign(lam), zee(lam)))
    for x in lam:
        r = r * (1 - _qt(0, -x))
    return r


# ---------------------------------------------------------------------------
# the D_k operators in the power basis

@lru_cache(maxsize=None)
def _shift_table(lam):
    """p_lam[X + zM] as {(j, mu): coefficient}."""
    mult = {}
    for r in lam:
        mult[r] = mult.get(r, 0) + 1
    out = {(0, ()): ONE}
    for r, m in mult.items():
        cr = (1 - _qt(r, 0)) * (1 - _qt(0, r))
        new = {}
        for (j, mu), c in out.items():
            for i in range(m + 1):
                key = (j + r * i, tuple(sorted(mu + (r,) * (m - i), reverse=True)))
                _add_into(new, key, c * (comb(m, i) * cr ** i))
        out = new
    return out


@lru_cache(maxsize=None)
def _op_table(lam, k):
    """D_k p_lam in the power basis."""
    res = {}
    for (j, mu), c in _shift_table(lam).items():
        n = j + k
        if n < 0:
            continue
        cj = c if j % 2 == 0 else -c
        for rho in partitions(n):
            _add_into(res, tuple(sorted(rho + mu, reverse=True)),
                      cj * Fraction(sign(rho), zee(rho)))
    return res


def _Dk(k, F):
    res = {}
    for lam, c in F.items():
        for nu, v in _op_table(lam, k).items():
            _add_into(res, nu, c * v)
    return res


@lru_cache(maxsize=None)
def _op_table_s(lam, k):
    """D_k s_lam in the Schur basis; the entries are integral."""
    p = DEFAULT.s(*lam).convert("p")
    out = SymF(DEFAULT, "p", _Dk(k, p.terms)).convert("s")
    rows = []
    for nu, c in out.terms.items():
        c = LaurentQT.const(c) if not isinstance(c, LaurentQT) else c
        if any(Fraction(v).denominator != 1 for v in c.terms.values()):
            raise ArithmeticError("non-integral D_%d s_%s" % (k, lam))
        rows.append((nu, LaurentQT({e: int(v) for e, v in c.terms.items()})))
    return tuple(rows)


def _Dk_s(k, F):
    res = {}
    for lam, c in F.items():
        for nu, v in _op_table_s(lam, k):
            _add_into(res, nu, c * v)
    return res


def apply_Dk(k, F):
    """D_k F; the result is in the power basis."""
    p = F.convert("p")
    return SymF(F.ring, "p", _Dk(k, p.terms))


# ---------------------------------------------------------------------------
# compositions along a (b, eps) pair

_ETA = {}
_ONE = {(): ONE}


def _eta_suffix(b, eps, k):
    """sum over k' of (qt)^k' D_{b_0 - k + k'} (value for the tail at k').

    Only terms whose partial degrees stay nonnegative can reach a nonzero
    result on 1, which bounds every k'.
    """
    key = (b, eps, k)
    r = _ETA.get(key)
    if r is not None:
        return r
    if len(b) == 1:
        a = b[0] - k
        r = _Dk_s(a, _ONE) if a >= 0 else {}
    else:
        r = {}
        kmax = sum(b[1:]) if eps[0] else 0
        for kp in range(kmax + 1):
            sub = _eta_suffix(b[1:], eps[1:], kp)
            if not sub:
                continue
            a = b[0] - k + kp
            w = _qt(kp, kp)
            for nu, v in _Dk_s(a, sub).items():
                _add_into(r, nu, v * w)
    _ETA[key] = r
    return r


def eta_on_one(b, eps):
    """D_{b,eps} . 1 in the Schur basis (eps has length len(b) - 1)."""
    b, eps = tuple(b), tuple(eps)
    if len(eps) != len(b) - 1:
        raise ValueError("eps must have length len(b) - 1")
    return SymF(DEFAULT, "s", _eta_suffix(b, eps, 0))


def clear_cache():
    _ETA.clear()


# ---------------------------------------------------------------------------
# calibration of the b/eps convention against Engine A

SIGNS = {
    "1": lambda m, n: 1,
    "(-1)^m": lambda m, n: (-1) ** m,
    "(-1)^n": lambda m, n: (-1) ** n,
    "(-1)^(m+n)": lambda m, n: (-1) ** (m + n),
    "(-1)^(m+gcd)": lambda m, n: (-1) ** (m + gcd(m, n)),
}


def candidates():
    for src, order, sgn, om in product(("curve", "reflected"), ("forward", "reversed"),
                                       sorted(SIGNS), (True, False)):
        yield {"b_source": src, "order": order, "sign": sgn, "omega": om}


def _record_id(conv):
    blob = json.dumps(conv, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _primitive_value(C, conv):
    D = reflect(C) if conv["b_source"] == "reflected" else C
    st = stats(D)
    b, eps = tuple(st.b), tuple(st.eps)
    if conv["order"] == "reversed":
        b, eps = b[::-1], eps[::-1]
    F = eta_on_one(b, eps)
    if conv["omega"]:
        F = F.omega()
    s = SIGNS[conv["sign"]](C.m, C.n)
    return F if s == 1 else -F


def _value(C, conv):
    tot = None
    for coef, P in skein_expand(C):
        term = _primitive_value(P, conv) * coef
        tot = term if tot is None else tot + term
    return tot


def calibration_curves():
    return [C for m in range(1, 4) for n in range(1, 4) for C in enumerate_curves(m, n)]


def calibrate(write=False, path=CALIBRATION_PATH):
    """Pick the unique convention matching Engine A on all curves with m, n <= 3."""
    from .daha import F_of
    curves = calibration_curves()
    truth = [F_of(C) for C in curves]
    hits = []
    for conv in candidates():
        try:
            ok = all(_value(C, conv) == F for C, F in zip(curves, truth))
        except ArithmeticError:
            ok = False
        if ok:
            hits.append(conv)
    if len(hits) != 1:
        raise CalibrationError("%d conventions match Engine A (need exactly 1)" % len(hits))
    conv = hits[0]
    rec = {"version": 1, "convention": conv, "id": _record_id(conv), "curves_checked": len(curves),
           "candidates": sum(1 for _ in candidates())}
    from . import magic
    mhits = magic.calibrate(curves, truth)
    if len(mhits) != 1:
        raise CalibrationError("%d Engine C conventions match Engine A (need exactly 1)" % len(mhits))
    rec["magic"] = {"convention": mhits[0], "id": _record_id(mhits[0]),
                    "candidates": sum(1 for _ in magic.candidates())}
    if write:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            json.dump(rec, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return rec


_LOADED = {}


def load_calibration(path=CALIBRATION_PATH):
    rec = _LOADED.get(path)
    if rec is not None:
        return rec
    try:
        with open(path) as fh:
            rec = json.load(fh)
    except FileNotFoundError:
        raise CalibrationError("no calibration record at %s; run `monolink calibrate`" % path)
    if rec.get("version") != 1 or rec.get("id") != _record_id(rec.get("convention", {})):
        raise CalibrationError("calibration record at %s is corrupt" % path)
    mag = rec.get("magic")
    if mag is not None and mag.get("id") != _record_id(mag.get("convention", {})):
        raise CalibrationError("Engine C entry of %s is corrupt" % path)
    _LOADED[path] = rec
    return rec


def F_fast(C, calibration=None):
    """F_C by Engine B (Schur basis)."""
    if isinstance(C, str):
        C = parse(C)
    rec = calibration or load_calibration()
    return _value(C, rec["convention"])


# ---------------------------------------------------------------------------
# formal expressions in the generators u_x

class EhaExpr:
    """Formal sum of coefficient * ordered product of u_x powers."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        for factors, c in (terms or {}).items() if isinstance(terms, dict) else (terms or []):
            f = _norm_factors(factors)
            _add_into(d, f, RatQT(c))
        self.terms = d

    @classmethod
    def gen(cls, m, n, power=1):
        return cls({((m, n, power),): 1})

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    def __add__(self, other):
        d = dict(self.terms)
        for f, c in other.terms.items():
            _add_into(d, f, c)
        return EhaExpr(d)

    def __neg__(self):
        return EhaExpr({f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, EhaExpr):
            d = {}
            for f1, c1 in self.terms.items():
                for f2, c2 in other.terms.items():
                    _add_into(d, _norm_factors(f1 + f2), c1 * c2)
            return EhaExpr(d)
        return EhaExpr({f: c * other for f, c in self.terms.items()})

    def __rmul__(self, other):
        return EhaExpr({f: other * c for f, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, EhaExpr):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def bidegree(self):
        degs = {tuple(map(sum, zip(*[(m * p, n * p) for m, n, p in f]))) if f else (0, 0)
                for f in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous expression")
        return degs.pop() if degs else None

    def to_json(self):
        out = []
        for f in sorted(self.terms):
            out.append({"coeff": self.terms[f].to_json(), "factors": [list(x) for x in f]})
        return {"terms": out}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for f in sorted(self.terms):
            mono = " ".join("u[%d,%d]%s" % (m, n, "^%d" % p if p > 1 else "") for m, n, p in f)
            parts.append("(%s)%s" % (self.terms[f], " " + mono if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _norm_factors(factors):
    out = []
    for m, n, p in factors:
        if out and out[-1][:2] == (m, n):
            out[-1] = (m, n, out[-1][2] + p)
        else:
            out.append((m, n, p))
    return tuple(out)


def P_E(m, n):
    """P^E_x = (q^d(x) - 1) u_x."""
    d = gcd(m, n)
    return EhaExpr.gen(m, n) * RatQT(_qt(d, 0) - 1)


def almost_linear_expansion(m, n):
    """D_{m,n} = sum_lam c^d_lam prod_j P^E_{lam_j (m,n)/d}."""
    if m < 1 or n < 1:
        raise ValueError("m, n >= 1")
    d = gcd(m, n)
    m0, n0 = m // d, n // d
    tot = EhaExpr()
    for lam in partitions(d):
        term = EhaExpr.scalar(c_coef(d, lam))
        for x in lam:
            term = term * P_E(x * m0, x * n0)
        tot = tot + term
    return tot


def _is_almost_linear(C):
    return C.is_primitive and C.word == almost_linear(C.m, C.n).word


def curve_expansion(C):
    """D_C as an EhaExpr, through skein and the convex expansion."""
    if isinstance(C, str):
        C = parse(C)
    if not C.is_primitive:
        tot = EhaExpr()
        for coef, P in skein_expand(C):
            tot = tot + curve_expansion(P) * RatQT(coef)
        return tot
    if _is_almost_linear(C):
        return almost_linear_expansion(C.m, C.n)
    if not z_convex(C):
        raise CurveError("%s is neither Z-convex nor reducible by skein" % C.word)
    tot = EhaExpr()
    for coef, Cp in convex_expand(C):
        term = EhaExpr.scalar(coef)
        for seg in Cp.word.split("*"):
            term = term * almost_linear_expansion(seg.count("R"), seg.count("U"))
        tot = tot + term
    return tot


# ---------------------------------------------------------------------------
# relations realised on symmetric polynomials (Engine A)
#
# A value is (numerator, denominator): numerator maps partitions (at most N
# parts) to LaurentQT, denominator is a LaurentQT.

def _v_add(a, b, sb=1):
    (na, da), (nb, db) = a, b
    out = {}
    for lam, c in na.items():
        _add_into(out, lam, c * db)
    for lam, c in nb.items():
        _add_into(out, lam, c * da * sb)
    return out, da * db


def _v_scale(a, c):
    return {k: v * c for k, v in a[0].items()}, a[1]


def _v_eq(a, b):
    n, _ = _v_add(a, b, -1)
    return not n


def _mult_p1(num, N):
    out = {}
    for lam, c in num.items():
        lam = list(lam)
        # p_1 m_lam = sum over parts (and a new part) raised by one, with multiplicity
        for i in range(len(lam) + (1 if len(lam) < N else 0)):
            mu = lam + [0] if i == len(lam) else list(lam)
            if i > 0 and mu[i] == mu[i - 1] and i < len(lam):
                continue
            mu[i] += 1
            mu = tuple(sorted(mu, reverse=True))
            mult = sum(1 for x in mu if x == lam[i] + 1) if i < len(lam) else sum(1 for x in mu if x == 1)
            _add_into(out, mu, c * mult)
    return out


class _U:
    """u_x as an operator on (numerator, denominator) values in N variables."""

    def __init__(self, x, N):
        self.x, self.N = x, N

    def __call__(self, v):
        from .daha import D_apply_sym
        num, den = v
        m, n = self.x
        N = self.N
        q = _qt(1, 0)
        K = (1 - _qt(0, 1)) * (q - 1)
        if (m, n) == (1, 0):
            return _mult_p1(num, N), den * (q - 1)
        if gcd(m, n) == 1:
            return D_apply_sym(almost_linear(m, n), N, num), den * K
        if (m, n) == (2, 2):
            a = D_apply_sym("RURU", N, num)
            b = D_apply_sym("RU", N, D_apply_sym("RU", N, num))
            out = {}
            for lam, c in a.items():
                _add_into(out, lam, c * 2)
            for lam, c in b.items():
                _add_into(out, lam, -c)
            return out, den * (1 - _qt(0, 2)) * (_qt(2, 0) - 1)
        raise NotImplementedError("u_%s" % (self.x,))


def _commutator(uy, ux, v):
    return _v_add(uy(ux(v)), ux(uy(v)), -1)


def _rel_commutator(y, x, z):
    def check(v, N):
        uy, ux, uz = _U(y, N), _U(x, N), _U(z, N)
        return _v_eq(_commutator(uy, ux, v), uz(v))
    return "[u_%s, u_%s] = u_%s" % (_fmt(y), _fmt(x), _fmt(z)), x[0] + y[0], check


def _rel_collinear(y, x):
    def check(v, N):
        return not _commutator(_U(y, N), _U(x, N), v)[0]
    return "[u_%s, u_%s] = 0" % (_fmt(y), _fmt(x)), x[0] + y[0], check


def _rel_u22():
    q, t = _qt(1, 0), _qt(0, 1)
    den = (1 + q) * (1 + t) * (1 + _qt(1, 1))

    def check(v, N):
        u22, u12, u10, u11 = _U((2, 2), N), _U((1, 2), N), _U((1, 0), N), _U((1, 1), N)
        lhs = _v_scale(u22(v), den)
        rhs = _v_add(_v_scale(_commutator(u12, u10, v), 2 * _qt(1, 1)),
                     _v_scale(u11(u11(v)), (1 - q) * (1 - t) * (1 - _qt(1, 1))), -1)
        return _v_eq(lhs, rhs)
    return "u_{2,2} (1+q)(1+t)(1+qt) = 2qt[u_{1,2}, u_{1,0}] - (1-q)(1-t)(1-qt)u_{1,1}^2", 2, check


def _fmt(x):
    return "{%d,%d}" % x


def relations():
    return [
        _rel_commutator((1, 2), (1, 1), (2, 3)),
        _rel_commutator((1, 1), (1, 0), (2, 1)),
        _rel_commutator((1, 3), (1, 2), (2, 5)),
        _rel_u22(),
        _rel_collinear((1, 1), (2, 2)),
    ]


def verify_relations(D, which=None, N=None):
    """Check each relation on every m_lam with |lam| <= D.

    Symmetric polynomials are taken in N = D + (degree raise) variables, so
    the truncation to N variables loses nothing on inputs and outputs.
    """
    report = []
    for name, raise_by, check in relations():
        if which is not None and not any(w in name for w in which):
            continue
        n_vars = N or max(1, D + raise_by)
        basis = [lam for d in range(D + 1) for lam in partitions(d) if len(lam) <= n_vars]
        failed = [lam for lam in basis if not check(({lam: ONE}, ONE), n_vars)]
        report.append({"relation": name, "degree_bound": D, "N": n_vars, "checked": len(basis),
                       "passed": not failed, "failures": [list(l) for l in failed]})
    return report
