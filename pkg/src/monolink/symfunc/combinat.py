"""Partitions and the character table of the symmetric group."""

from fractions import Fraction
from functools import lru_cache
from math import factorial


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts if x)
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("not a partition: %r" % (parts,))
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def conjugate(self):
        return Partition(conjugate(self))

    @property
    def n(self):
        return n_stat(self)

    @property
    def multiplicities(self):
        return multiplicities(self)

    @property
    def z(self):
        return zee(self)

    @property
    def sign(self):
        return sign(self)


@lru_cache(maxsize=None)
def partitions(n):
    """Partitions of n in decreasing lexicographic order."""
    out = []

    def rec(rem, mx, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rem, mx), 0, -1):
            acc.append(k)
            rec(rem - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def conjugate(lam):
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def n_stat(lam):
    return sum(i * x for i, x in enumerate(lam))


def multiplicities(lam):
    d = {}
    for x in lam:
        d[x] = d.get(x, 0) + 1
    return d


@lru_cache(maxsize=None)
def zee(lam):
    r = 1
    for i, m in multiplicities(lam).items():
        r *= i ** m * factorial(m)
    return r


def sign(lam):
    return -1 if (sum(lam) - len(lam)) % 2 else 1


def dominates(lam, mu):
    """lam >= mu in dominance order (same size)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def cells(lam):
    """Cells (row, col), 0-based, row 0 the longest."""
    return [(i, j) for i, x in enumerate(lam) for j in range(x)]


def arm_leg(lam, cell):
    i, j = cell
    lc = conjugate(lam)
    return lam[i] - j - 1, lc[j] - i - 1


def hook_count(lam):
    """Number of standard Young tableaux of shape lam."""
    n = sum(lam)
    prod = 1
    for c in cells(lam):
        a, l = arm_leg(lam, c)
        prod *= a + l + 1
    return factorial(n) // prod


@lru_cache(maxsize=None)
def chi(lam, mu):
    """Irreducible character chi^lam at cycle type mu (Murnaghan-Nakayama)."""
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    L = len(lam)
    beta = [lam[i] + (L - 1 - i) for i in range(L)]
    bs = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bs:
            continue
        between = sum(1 for x in beta if c < x < b)
        new = sorted([x for x in beta if x != b] + [c], reverse=True)
        nl = tuple(x - (L - 1 - i) for i, x in enumerate(new))
        nl = tuple(x for x in nl if x > 0)
        total += (-1) ** between * chi(nl, rest)
    return total


@lru_cache(maxsize=None)
def p_to_m_coeff(lam, mu):
    """Coefficient of m_mu in p_lam."""
    parts = lam
    cap = tuple(mu)

    @lru_cache(maxsize=None)
    def rec(i, cap):
        if i == len(parts):
            return 1 if not any(cap) else 0
        tot = 0
        for j, c in enumerate(cap):
            if c >= parts[i]:
                tot += rec(i + 1, cap[:j] + (c - parts[i],) + cap[j + 1:])
        return tot

    return rec(0, cap)


def mat_inverse(M):
    """Inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                rowc = A[col]
                A[r] = [x - f * y for x, y in zip(A[r], rowc)]
    return [row[n:] for row in A]
