"""Row reduction and null spaces over a table-driven F_q (numpy int arrays)."""

import numpy as np


def rref(F, M):
    """Reduced row echelon form of M over F.  Returns (R, pivots) with zero rows dropped."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("matrix expected")
    rows, cols = A.shape
    pivots = []
    r = 0
    mul, sub, inv = F.mul, F.sub, F.inv
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = mul[inv[lead], A[r]]
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = sub[A[hit], mul[col[hit][:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(F, M):
    return len(rref(F, M)[1]) if np.size(M) else 0


def nullspace(F, M, ncols=None):
    """Basis (rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        n = ncols if ncols is not None else M.shape[1]
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    neg = F.neg
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = neg[R[r, fc]]
    return basis


def dot(F, x, y):
    """Standard F_q dot products along the last axis, broadcasting."""
    prod = F.mul[x, y]
    acc = prod[..., 0]
    for i in range(1, prod.shape[-1]):
        acc = F.add[acc, prod[..., i]]
    return acc


def span_all(F, G):
    """All q^k codewords of the row space of G (k x N)."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    words = np.zeros((1, n), dtype=np.int64)
    for r in range(k):
        row = G[r]
        layers = [F.add[words, F.mul[c, row][None, :]] for c in range(F.q)]
        words = np.concatenate(layers, axis=0)
    return words


def all_vectors(q, n):
    """All q^n vectors in lexicographic order (first coordinate slowest)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def matmul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return dot(F, A[:, None, :], B.T[None, :, :])


def is_invertible(F, A):
    A = np.asarray(A, dtype=np.int64)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]
