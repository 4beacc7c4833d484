"""
Dense matrices over Q(zeta_M) with a common denominator.

Entries are stored as an int64 array of shape (rows, cols, phi(M)) holding
power-basis numerators, plus one positive integer denominator.  This is
the workhorse behind group elements; single entries convert to CycNum.
"""

from functools import lru_cache, reduce
from math import gcd

import numpy as np
from flint import fmpz_mat

from .cyclo import CycNum, canonical_conductor, power_table, totient


@lru_cache(maxsize=None)
def _tables(M):
    P = np.array(power_table(M), dtype=np.int64)  # (M, phi)
    n = P.shape[1]
    s = np.arange(n)
    red = P[(s[:, None] + s[None, :]) % M]  # (phi, phi, phi)
    return P, red


@lru_cache(maxsize=None)
def _galois_matrix(M, a):
    """G with (coeffs of x) @ G = coeffs of x under zeta -> zeta^a."""
    P, _ = _tables(M)
    n = P.shape[1]
    return P[(a * np.arange(n)) % M]


def _cyc_parts(x, M):
    x = CycNum.coerce(x)
    if x.m != M:
        x = x.embed(M)
    return list(x.num), x.den


class CycMat:
    __slots__ = ("M", "num", "den", "_key")

    def __init__(self, M, num, den=1, normalize=True):
        if canonical_conductor(M) != M:
            raise ValueError(f"conductor {M} is not canonical")
        num = np.asarray(num, dtype=np.int64)
        if normalize:
            g = int(np.gcd.reduce(num.ravel())) if num.size else 0
            g = gcd(g, den)
            if g > 1:
                num = num // g
                den //= g
        self.M = M
        self.num = num
        self.den = int(den)
        self._key = None

    # construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, M, rows):
        rows = [list(r) for r in rows]
        parts = [[_cyc_parts(x, M) for x in r] for r in rows]
        den = reduce(lambda a, b: a * b // gcd(a, b), (d for r in parts for _, d in r), 1)
        num = np.array([[[c * (den // d) for c in n] for n, d in r] for r in parts], dtype=np.int64)
        return cls(M, num, den)

    @classmethod
    def identity(cls, n, M):
        num = np.zeros((n, n, totient(M)), dtype=np.int64)
        num[np.arange(n), np.arange(n), 0] = 1
        return cls(M, num, 1, normalize=False)

    @classmethod
    def permutation(cls, perm, M):
        """b_w -> b_{perm[w]}."""
        n = len(perm)
        num = np.zeros((n, n, totient(M)), dtype=np.int64)
        num[np.asarray(perm), np.arange(n), 0] = 1
        return cls(M, num, 1, normalize=False)

    @classmethod
    def diagonal_roots(cls, exps, M):
        """diag(zeta_M^e)."""
        P, _ = _tables(M)
        exps = np.asarray(exps, dtype=np.int64) % M
        n = len(exps)
        num = np.zeros((n, n, P.shape[1]), dtype=np.int64)
        num[np.arange(n), np.arange(n)] = P[exps]
        return cls(M, num, 1, normalize=False)

    @classmethod
    def from_root_exponents(cls, exps, M, scale=None):
        """Matrix of zeta_M^exps[i, j] (entries with exps < 0 are zero), times an optional CycNum."""
        P, _ = _tables(M)
        exps = np.asarray(exps, dtype=np.int64)
        num = P[exps % M] * (exps >= 0)[..., None]
        out = cls(M, num, 1, normalize=False)
        return out.scale(scale) if scale is not None else out

    # basic queries --------------------------------------------------------

    @property
    def shape(self):
        return self.num.shape[:2]

    @property
    def key(self):
        if self._key is None:
            self._key = (self.den, self.num.shape, self.num.tobytes())
        return self._key

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        if not isinstance(other, CycMat):
            return NotImplemented
        if self.M != other.M:
            return False
        return self.den == other.den and np.array_equal(self.num, other.num)

    def entry(self, i, j):
        return CycNum(self.M, [int(c) for c in self.num[i, j]], self.den)

    def entries(self):
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def is_identity(self):
        return self == CycMat.identity(self.shape[0], self.M)

    def is_diagonal(self):
        r, c = self.shape
        off = self.num.copy()
        off[np.arange(r), np.arange(c)] = 0
        return not off.any()

    def is_monomial(self):
        nz = self.num.any(axis=2)
        return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.M != other.M:
            raise ValueError("conductor mismatch")

    def __matmul__(self, other):
        self._check(other)
        _, red = _tables(self.M)
        a = int(np.abs(self.num).max(initial=0))
        b = int(np.abs(other.num).max(initial=0))
        n = self.num.shape[2]
        if a * b * self.shape[1] * n * n * max(1, int(np.abs(red).max())) > (1 << 62):
            raise OverflowError("cyclotomic matrix product would overflow int64")
        T = np.einsum("ijs,jkt->ikst", self.num, other.num)
        out = np.einsum("ikst,stu->iku", T, red)
        return CycMat(self.M, out, self.den * other.den)

    def __add__(self, other):
        self._check(other)
        den = self.den * other.den // gcd(self.den, other.den)
        return CycMat(self.M, self.num * (den // self.den) + other.num * (den // other.den), den)

    def __neg__(self):
        return CycMat(self.M, -self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x):
        """Multiply every entry by the CycNum x."""
        n, d = _cyc_parts(x, self.M)
        _, red = _tables(self.M)
        out = np.einsum("ijs,t,stu->iju", self.num, np.asarray(n, dtype=np.int64), red)
        return CycMat(self.M, out, self.den * d)

    def galois(self, a):
        """Entrywise zeta -> zeta^a."""
        a %= self.M
        if a == 1:
            return self
        return CycMat(self.M, self.num @ _galois_matrix(self.M, a), self.den, normalize=False)

    @property
    def T(self):
        return CycMat(self.M, self.num.transpose(1, 0, 2), self.den, normalize=False)

    def conj_T(self):
        return self.galois(-1).T

    def kron(self, other):
        self._check(other)
        _, red = _tables(self.M)
        T = np.einsum("ijs,klt->ikjlst", self.num, other.num)
        out = np.einsum("ikjlst,stu->ikjlu", T, red)
        r = self.shape[0] * other.shape[0]
        c = self.shape[1] * other.shape[1]
        return CycMat(self.M, out.reshape(r, c, -1), self.den * other.den)

    def power(self, e):
        out = CycMat.identity(self.shape[0], self.M)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    # numerics for display / sanity ------------------------------------------

    def to_complex(self):
        n = self.num.shape[2]
        z = np.exp(2j * np.pi * np.arange(n) / self.M)
        return (self.num @ z) / self.den

    def __repr__(self):
        return f"CycMat({self.shape[0]}x{self.shape[1]}, M={self.M}, den={self.den})"


# ----------------------------------------------------------------------
# exact rank over Q(zeta_M) via restriction of scalars


@lru_cache(maxsize=None)
def _mult_blocks(M):
    """B[k] = matrix of multiplication by zeta^k on the power basis, k < phi(M)."""
    P, _ = _tables(M)
    n = P.shape[1]
    s = np.arange(n)
    return np.stack([P[(k + s) % M] for k in range(n)])  # B[k][s] = coeffs of zeta^(k+s)


def rational_blowup(M, num):
    """Integer matrix of size (r*phi, c*phi) representing the K-linear map num (r, c, phi)."""
    num = np.asarray(num, dtype=np.int64)
    r, c, n = num.shape
    B = _mult_blocks(M)  # (n, n, n): B[k, s, u]
    big = np.einsum("ijk,ksu->iujs", num, B)  # row (i, u), column (j, s)
    return big.reshape(r * n, c * n)


def rank_over_K(M, num):
    """Exact rank over Q(zeta_M) of an integral (r, c, phi) coefficient array."""
    num = np.asarray(num, dtype=np.int64)
    r, c, n = num.shape
    if r == 0 or c == 0:
        return 0
    big = rational_blowup(M, num)
    rk = fmpz_mat(big.tolist()).rank()
    assert rk % n == 0
    return rk // n


def rank_integer(mat):
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return fmpz_mat([[int(v) for v in row] for row in mat]).rank()
