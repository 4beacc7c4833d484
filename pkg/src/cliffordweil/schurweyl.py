"""
Full weight enumerators of Type (N, N) codes as endomorphisms of W^{(x)N}.

W = C[V^m].  The dual space is identified with W through the monomial basis,
so a code C <= V^{2N} gives the 0/1 matrix M_C with (M_C)_{u,w} = 1 iff every
layer (u^(k) | w^(k)) lies in C.
"""

from dataclasses import dataclass

import numpy as np

from .codes import enumerate_codes
from .conjinv import _symbol_indices, fixed_dim, fixed_space
from .cwgroup import group_for
from .cycmat import CycMat, rank_integer
from .cyclo import totient
from .errors import CapExceeded, PreconditionError
from .typespec import TwistedSum

ENDO_CAP = 4096


@dataclass(frozen=True)
class Endo:
    v: int  # |V^m|
    N: int
    m: int
    support: tuple  # sorted (row, col) pairs

    @property
    def dim(self):
        return self.v**self.N

    def dense(self):
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        if self.support:
            r, c = np.array(self.support).T
            out[r, c] = 1
        return out

    def cycmat(self, M):
        num = np.zeros((self.dim, self.dim, totient(M)), dtype=np.int64)
        num[:, :, 0] = self.dense()
        return CycMat(M, num, 1)


def _check_nn(C):
    ts = C.ts
    N = ts.N // 2
    f = ts.base.conductor
    if ts.N % 2 or tuple(a % f for a in ts.twist) != tuple(a % f for a in TwistedSum.nn(ts.base, N).twist):
        raise PreconditionError("code_to_endo needs a code of Type (N, N)")
    return N


def code_to_endo(C, m=1):
    N = _check_nn(C)
    v = C.ts.q**m
    if v**N > ENDO_CAP:
        raise CapExceeded(f"dimension {v**N} exceeds {ENDO_CAP}")
    idx = np.unique(_symbol_indices(C, m), axis=0)
    weights = v ** np.arange(N - 1, -1, -1)
    rows = idx[:, :N] @ weights
    cols = idx[:, N:] @ weights
    pairs = tuple(sorted(zip(rows.tolist(), cols.tolist())))
    return Endo(v, N, m, pairs)


def tensor_power(g, N):
    out = CycMat.identity(1, g.M)
    for _ in range(N):
        out = out.kron(g)
    return out


def commutant_dim(G, N):
    """dim of the matrices commuting with g^{(x)N} for every generator g."""
    if N == 0:
        return 1
    M = G.M
    fs = fixed_space(G, (1,) * N + (M - 1,) * N, (1,) * (2 * N))
    return fixed_dim(fs)


def commutes(G, endo):
    """Exact check g^{(x)N} M_C = M_C g^{(x)N} for all generators."""
    X = endo.cycmat(G.M)
    for g in G.matrices:
        gN = tensor_power(g, endo.N)
        if gN @ X != X @ gN:
            return False
    return True


@dataclass
class SchurWeylReport:
    type_name: str
    m: int
    N: int
    t_N: int
    span_dim: int
    commutant_dim: int
    commute: bool
    basis: bool

    @property
    def verdict(self):
        ok = self.commute and self.span_dim == self.commutant_dim
        if self.m >= self.N:
            ok = ok and self.basis
        return "PASS" if ok else "FAIL"

    def format(self):
        return (
            f"type = {self.type_name}\nm = {self.m}\nN = {self.N}\nt_N = {self.t_N}\n"
            f"span_dim = {self.span_dim}\ncommutant_dim = {self.commutant_dim}\n"
            f"commute = {self.commute}\nbasis = {self.basis}\nverdict = {self.verdict}\n"
        )


def verify_schurweyl(t, m, N):
    ts = TwistedSum.nn(t, N)
    codes = enumerate_codes(ts)
    G = group_for(t, m)
    endos = [code_to_endo(C, m) for C in codes]
    commute = all(commutes(G, e) for e in endos)
    span = rank_integer(np.array([e.dense().ravel() for e in endos])) if endos else 0
    return SchurWeylReport(t.name, m, N, len(codes), span, commutant_dim(G, N), commute, span == len(codes))
