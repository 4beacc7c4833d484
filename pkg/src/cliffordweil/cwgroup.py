"""
Clifford-Weil groups at genus m as exact matrices over Q(zeta_M).

Basis vectors b_w are indexed by w = (w_1, ..., w_m) in V^m with w_1 the
most significant digit, idx(w) = sum_k w_k q^(m-k).  A matrix acts on
column vectors, so a permutation generator sends b_w to b_{A w}.
"""

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import numpy as np

from .cycmat import CycMat
from .cyclo import CycNum, format_cyc, gauss_sqrt
from .errors import CapExceeded, PreconditionError
from .fqlinalg import all_vectors, is_invertible, matmul
from .typespec import TwistedSum, galois_setup

CLOSURE_CAP = 10**6


def points(t, m):
    """All of V^m in index order, shape (q^m, m)."""
    return all_vectors(t.q, m)


def index_of(t, W):
    W = np.asarray(W, dtype=np.int64)
    q = t.q
    idx = np.zeros(W.shape[:-1], dtype=np.int64)
    for k in range(W.shape[-1]):
        idx = idx * q + W[..., k]
    return idx


def ambient(t):
    return galois_setup(t).ambient


# ----------------------------------------------------------------------
# the three kinds of generators


def gen_mr(t, m, A):
    """Permutation b_w -> b_{A w} for A in GL_m(F_q)."""
    F = t.alphabet
    A = np.asarray(A, dtype=np.int64).reshape(m, m)
    if not is_invertible(F, A):
        raise PreconditionError("m_A needs an invertible matrix")
    W = points(t, m)
    img = matmul(F, W, A.T)  # rows: (A w)^T
    return CycMat.permutation(index_of(t, img), ambient(t))


def phi_pullback(t, m, k=0, coord=0):
    """The map w -> phi_k(w_coord) on V^m, as Fractions."""
    phi = t.phi_gens[k]
    return tuple(phi[int(w[coord])] for w in points(t, m))


def cross_term(t, m, i=0, j=1):
    """w -> beta(w_i, w_j)."""
    return tuple(t.beta[int(w[i])][int(w[j])] for w in points(t, m))


def phase_exponents(t, phi, a=1):
    """Exponents e with zeta_M^e = exp(2 pi i a phi(w))."""
    M = ambient(t)
    out = []
    for v in phi:
        v = Fraction(v) * a * M
        if v.denominator != 1:
            raise PreconditionError("phase map has values outside (1/M)Z/Z")
        out.append(int(v) % M)
    return np.array(out, dtype=np.int64)


def gen_dphi(t, m, phi, a=1):
    """diag(exp(2 pi i a phi(w)))."""
    if len(phi) != t.q**m:
        raise PreconditionError("phi must be a table on V^m")
    return CycMat.diagonal_roots(phase_exponents(t, phi, a), ambient(t))


def fourier_exponents(t, m, a=1):
    """Exponent matrix of h on coordinate 1: entry (u, w) is a*beta(u_1, w_1)*M, or -1 off support."""
    M = ambient(t)
    W = points(t, m)
    same_rest = (W[:, None, 1:] == W[None, :, 1:]).all(axis=2)
    b = np.array([[int(Fraction(t.beta[u][w]) * a * M) % M for w in range(t.q)] for u in range(t.q)])
    E = b[W[:, 0][:, None], W[:, 0][None, :]]
    return np.where(same_rest, E, -1)


def gen_h(t, m, a=1, iota="E11"):
    """Partial Fourier transform q^(-1/2) (exp(2 pi i a beta(u_1, w_1))) on coordinate 1."""
    if iota not in ("E11", 1) or (iota == 1 and m != 1):
        raise PreconditionError("only iota = E_11 (or 1 at genus 1) is supported")
    M = ambient(t)
    inv_sqrt = 1 / gauss_sqrt(t.q).embed(M) if gauss_sqrt(t.q).m != M else 1 / gauss_sqrt(t.q)
    return CycMat.from_root_exponents(fourier_exponents(t, m, a), M, inv_sqrt)


def gl_generators(t, m):
    """Generators of GL_m(F_q): a primitive scaling, a transvection and coordinate permutations."""
    F = t.alphabet
    gens = []
    D = np.eye(m, dtype=np.int64)
    D[0, 0] = F.primitive
    if F.q > 2:
        gens.append(("m_diag", D))
    if m >= 2:
        E = np.eye(m, dtype=np.int64)
        E[0, 1] = 1
        gens.append(("m_transvection", E))
        S = np.eye(m, dtype=np.int64)[[1, 0] + list(range(2, m))]
        gens.append(("m_swap", S))
    if m >= 3:
        C = np.eye(m, dtype=np.int64)[list(range(1, m)) + [0]]
        gens.append(("m_cycle", C))
    return gens


# ----------------------------------------------------------------------


@dataclass
class Generator:
    label: str
    kind: str  # "perm", "diag", "fourier"
    data: object  # GL matrix, phase table or None

    def matrix(self, t, m, a=1):
        if self.kind == "perm":
            return gen_mr(t, m, self.data)
        if self.kind == "diag":
            return gen_dphi(t, m, self.data, a)
        return gen_h(t, m, a)


@dataclass
class CWGroup:
    t: object
    m: int
    generators: list
    matrices: list
    elements: list = None
    order: int = None
    twist: tuple = None
    _twisted: dict = dc_field(default_factory=dict, repr=False)

    @property
    def v(self):
        return self.t.q**self.m

    @property
    def M(self):
        return ambient(self.t)

    def labeled(self):
        return list(zip((g.label for g in self.generators), self.matrices))

    def twisted_matrix(self, i, a):
        """Generator i built with twist exponent a (the factor for a coordinate with twist a)."""
        key = (i, a % self.t.conductor)
        if key not in self._twisted:
            self._twisted[key] = self.generators[i].matrix(self.t, self.m, a)
        return self._twisted[key]

    def closure(self, cap=CLOSURE_CAP):
        self.elements, self.order = closure(self.matrices, cap)
        return self.order


def group_for(t, m=1, twist=None):
    """C_m(rho) (or C(rho^a) via twist, whose generators act factorwise on V^N)."""
    if isinstance(t, TwistedSum):
        twist = t.twist
        t = t.base
    gens = [Generator(label, "perm", A) for label, A in gl_generators(t, m)]
    for k in range(len(t.phi_gens)):
        gens.append(Generator(f"d_phi{k}", "diag", phi_pullback(t, m, k)))
    if m >= 2:
        gens.append(Generator("d_cross", "diag", cross_term(t, m)))
    gens.append(Generator("h", "fourier", None))
    mats = [g.matrix(t, m) for g in gens]
    return CWGroup(t, m, gens, mats, twist=tuple(twist) if twist is not None else None)


def closure(gens, cap=CLOSURE_CAP):
    """Breadth-first closure under right multiplication by the generators."""
    if not gens:
        raise PreconditionError("no generators")
    I = CycMat.identity(gens[0].shape[0], gens[0].M)
    seen = {I.key: I}
    queue = deque([I])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y.key not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"group closure exceeds {cap} elements")
                seen[y.key] = y
                queue.append(y)
    elements = sorted(seen.values(), key=lambda e: e.key)
    return elements, len(elements)


def is_unitary(g):
    return (g @ g.conj_T()).is_identity()


def contains(elements, g):
    keys = {e.key for e in elements}
    return g.key in keys


def dump_matrix(g, label=""):
    lines = [f"# {label} size={g.shape[0]}x{g.shape[1]} conductor={g.M}"]
    r, c = g.shape
    for i in range(r):
        for j in range(c):
            if g.num[i, j].any():
                lines.append(f"{i} {j} {format_cyc(g.entry(i, j))}")
    return "\n".join(lines) + "\n"


def load_matrix(text):
    from .cyclo import parse_cyc

    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = dict(tok.split("=", 1) for tok in lines[0].lstrip("#").split() if "=" in tok)
    r, c = (int(x) for x in head["size"].split("x"))
    M = int(head["conductor"])
    rows = [[CycNum.zero(M) for _ in range(c)] for _ in range(r)]
    for ln in lines[1:]:
        i, j, rest = ln.split(" ", 2)
        rows[int(i)][int(j)] = parse_cyc(rest)
    return CycMat.from_entries(M, rows)
