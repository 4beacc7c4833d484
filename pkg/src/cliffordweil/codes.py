"""
Self-dual isotropic codes in a twisted sum rho^a.

Codes are F_q-subspaces of F_q^N stored by their reduced row echelon
generator matrix.  Duality is taken for the twisted form
B_a(x, y) = sum_i a_i x_i y_i (a_i read in the prime field), which is the
F_q-linear shadow of sum_i a_i beta(x_i, y_i) since beta(x, y) = psi(x y)
for a nondegenerate character psi.

Equivalence is the action of Sym(D_1) x ... x Sym(D_n) on coordinates,
where the blocks D_j collect the coordinates with the same Galois twist.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, prod

import numpy as np

from .errors import CapExceeded, PreconditionError
from .fqlinalg import all_vectors, dot, nullspace, rref, span_all
from .typespec import TwistedSum, builtin

WORD_CAP = 10**6


class Code:
    """A linear code in rho^a, canonically stored in RREF."""

    __slots__ = ("ts", "gens", "pivots", "_key")

    def __init__(self, ts, gens):
        G = np.asarray(gens, dtype=np.int64).reshape(-1, ts.N) if np.size(gens) else np.zeros((0, ts.N), np.int64)
        if G.size and (G.min() < 0 or G.max() >= ts.q):
            raise PreconditionError("generator entries must be alphabet elements 0..q-1")
        R, piv = rref(ts.alphabet, G) if G.size else (G, ())
        R.flags.writeable = False
        self.ts = ts
        self.gens = R
        self.pivots = piv
        self._key = None

    @property
    def N(self):
        return self.ts.N

    @property
    def k(self):
        return self.gens.shape[0]

    @property
    def size(self):
        return self.ts.q ** self.k

    @property
    def key(self):
        if self._key is None:
            self._key = (self.k, self.gens.tobytes())
        return self._key

    def __eq__(self, other):
        return isinstance(other, Code) and other.ts == self.ts and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def words(self, cap=WORD_CAP):
        if self.size > cap:
            raise CapExceeded(f"|C| = {self.size} exceeds the word cap {cap}")
        return span_all(self.ts.alphabet, self.gens)

    def parity_check(self):
        """H with x in C iff H x^T = 0 (standard dot product)."""
        return nullspace(self.ts.alphabet, self.gens, ncols=self.N)

    def contains(self, x):
        H = self.parity_check()
        if H.shape[0] == 0:
            return True
        return not dot(self.ts.alphabet, H, np.asarray(x)[None, :]).any()

    def permuted(self, perm):
        """C o pi: coordinate i of the image is coordinate perm[i] of C."""
        return Code(self.ts, self.gens[:, list(perm)])

    def matrix_str(self):
        F = self.ts.alphabet
        return "\n".join(" ".join(F.label(int(v)) for v in row) for row in self.gens)

    def __repr__(self):
        rows = ["".join(str(int(v)) for v in r) for r in self.gens]
        return f"Code({self.ts.base.name}, a={self.ts.twist}, <{','.join(rows) or '0'}>)"


# ----------------------------------------------------------------------
# forms and predicates


def twisted_form(ts, X, Y):
    """B_a(x, y) in F_q, broadcasting over leading axes."""
    F = ts.alphabet
    s = np.asarray(ts.scalars, dtype=np.int64)
    return dot(F, F.mul[s, np.asarray(X)], np.asarray(Y))


def dual(C):
    ts = C.ts
    if C.k == 0:
        return Code(ts, np.eye(ts.N, dtype=np.int64))
    s = np.asarray(ts.scalars, dtype=np.int64)
    M = ts.alphabet.mul[s[None, :], C.gens]
    return Code(ts, nullspace(ts.alphabet, M))


def _iso_weights(ts):
    """W[t, i, x] = a_i * (phi o lambda)(x) * f, for all generators phi and units lambda."""
    t = ts.base
    F = ts.alphabet
    f = t.conductor
    tabs = []
    for phi in t.phi_int:
        for lam in F.units:
            tabs.append([phi[int(F.mul[lam, x])] for x in range(F.q)])
    tabs = np.asarray(tabs, dtype=np.int64).reshape(-1, F.q)
    a = np.asarray(ts.twist, dtype=np.int64) % f
    return (a[None, :, None] * tabs[:, None, :]) % f


def isotropy_values(ts, words, scaled=True):
    """Rows: words; columns: sum_i a_i phi(c_i) * f mod f for each phi generator."""
    t = ts.base
    f = t.conductor
    words = np.asarray(words, dtype=np.int64)
    a = np.asarray(ts.twist, dtype=np.int64) % f
    out = []
    for phi in t.phi_int:
        tab = np.asarray(phi, dtype=np.int64)
        out.append((tab[words] * a[None, :]).sum(axis=1) % f)
    vals = np.stack(out, axis=1) if out else np.zeros((len(words), 0), np.int64)
    if scaled:
        return vals
    return [[Fraction(int(v), f) for v in row] for row in vals]


def _row_ok(ts, rows, W=None):
    """Vectors x with B_a(x, x) = 0 and every scalar multiple isotropic."""
    rows = np.asarray(rows, dtype=np.int64)
    if W is None:
        W = _iso_weights(ts)
    f = ts.base.conductor
    ok = twisted_form(ts, rows, rows) == 0
    idx = np.arange(rows.shape[1])
    for Wt in W:
        ok &= Wt[idx[None, :], rows].sum(axis=1) % f == 0
    return ok


def is_self_dual(C):
    if 2 * C.k != C.N:
        return False
    return not twisted_form(C.ts, C.gens[:, None, :], C.gens[None, :, :]).any()


def is_isotropic(C, cap=WORD_CAP):
    return not isotropy_values(C.ts, C.words(cap)).any()


def is_type(C, cap=WORD_CAP):
    """Self-dual and isotropic on every codeword."""
    return is_self_dual(C) and is_isotropic(C, cap)


def is_isotropic_vector(ts, x):
    return bool(_row_ok(ts, np.asarray(x)[None, :])[0])


# ----------------------------------------------------------------------
# the equivalence group


def block_group_order(ts):
    return prod(factorial(d) for d in ts.degree)


def block_permutations(ts, cap=2 * 10**6):
    """All elements of Sym(D_1) x ... x Sym(D_n) as an array of perms of range(N)."""
    order = block_group_order(ts)
    if order > cap:
        raise CapExceeded(f"equivalence group of order {order} exceeds {cap}")
    perms = np.tile(np.arange(ts.N, dtype=np.int64), (1, 1))
    for blk in ts.blocks:
        if len(blk) < 2:
            continue
        local = np.array(list(permutations(blk)), dtype=np.int64)
        new = np.repeat(perms, len(local), axis=0)
        new[:, list(blk)] = np.tile(local, (len(perms), 1))
        perms = new
    return perms


def block_generators(ts):
    """Adjacent transpositions inside each block."""
    gens = []
    for blk in ts.blocks:
        for i, j in zip(blk, blk[1:]):
            p = list(range(ts.N))
            p[i], p[j] = j, i
            gens.append(tuple(p))
    return gens


def _contained_mask(C_gens, H, F, perms):
    """For each perm, is the row space of C_gens[:, perm] inside ker(H)?"""
    if H.shape[0] == 0 or C_gens.shape[0] == 0:
        return np.ones(len(perms), dtype=bool)
    out = np.empty(len(perms), dtype=bool)
    chunk = max(1, 4_000_000 // (C_gens.shape[0] * H.shape[0] * C_gens.shape[1]))
    for s in range(0, len(perms), chunk):
        P = perms[s:s + chunk]
        Gp = C_gens[:, P].transpose(1, 0, 2)  # (p, k, N)
        vals = dot(F, Gp[:, :, None, :], H[None, None, :, :])
        out[s:s + chunk] = ~vals.reshape(len(P), -1).any(axis=1)
    return out


def aut_order(C):
    """Order of the stabiliser of C in the block permutation group."""
    if max(C.ts.degree, default=0) > 6:
        raise CapExceeded("direct automorphism count needs blocks of size <= 6")
    perms = block_permutations(C.ts)
    return int(_contained_mask(C.gens, C.parity_check(), C.ts.alphabet, perms).sum())


def _punctured_key(F, G, cols):
    if G.shape[0] == 0:
        return ()
    R, _ = rref(F, G[:, cols])
    return R.tobytes()


def _equivalent_backtrack(C, D):
    ts = C.ts
    F = ts.alphabet
    N = ts.N
    order = [i for blk in ts.blocks for i in blk]
    block_of = ts.block_of
    HD = D.parity_check()
    perm = [None] * N

    def rec(pos, used):
        if pos == N:
            return _contained_mask(C.gens, HD, F, np.array([perm]))[0]
        i = order[pos]
        done = order[:pos + 1]
        for j in ts.blocks[block_of[i]]:
            if j in used:
                continue
            perm[i] = j
            if _punctured_key(F, D.gens, done) == _punctured_key(F, C.gens, [perm[x] for x in done]):
                if rec(pos + 1, used | {j}):
                    return True
        perm[i] = None
        return False

    return tuple(perm) if rec(0, frozenset()) else None


def equivalent(C, D):
    """A block permutation pi with D = C o pi, or None."""
    if C.ts != D.ts:
        raise PreconditionError("codes live in different twisted sums")
    if C.k != D.k:
        return None
    if C == D:
        return tuple(range(C.N))
    if max(C.ts.degree, default=0) > 6:
        return _equivalent_backtrack(C, D)
    perms = block_permutations(C.ts)
    hit = np.nonzero(_contained_mask(C.gens, D.parity_check(), C.ts.alphabet, perms))[0]
    return tuple(int(v) for v in perms[hit[0]]) if hit.size else None


def signature(C, cap=WORD_CAP):
    """A block-permutation invariant: multiset of per-block symbol compositions."""
    W = C.words(cap)
    q = C.ts.q
    parts = []
    for blk in C.ts.blocks:
        if not blk:
            continue
        sub = W[:, list(blk)]
        parts.append(np.stack([(sub == x).sum(axis=1) for x in range(q)], axis=1))
    if not parts:
        return (C.k,)
    comp = np.concatenate(parts, axis=1)
    rows, counts = np.unique(comp, axis=0, return_counts=True)
    return (C.k, rows.tobytes(), counts.tobytes())


def canonical_form(C):
    """Smallest RREF key over the equivalence orbit (orbit search)."""
    seen = {C.key: C}
    frontier = [C]
    gens = block_generators(C.ts)
    while frontier:
        nxt = []
        for X in frontier:
            for g in gens:
                Y = X.permuted(g)
                if Y.key not in seen:
                    seen[Y.key] = Y
                    nxt.append(Y)
        frontier = nxt
    return seen[min(seen)]


# ----------------------------------------------------------------------
# classifications


@dataclass
class Classification:
    ts: TwistedSum
    classes: list
    aut_orders: list
    t: int = None
    method: str = ""
    orbit_sizes: list = dc_field(default_factory=list)

    @property
    def group_order(self):
        return block_group_order(self.ts)

    def mass(self):
        return sum((Fraction(1, a) for a in self.aut_orders), Fraction(0))


def mass_check(cl):
    """t / |group| == sum 1/|Aut(C_i)|, exactly."""
    if cl.t is None:
        raise PreconditionError("mass check needs the exact code count t")
    return Fraction(cl.t, cl.group_order) == cl.mass()


def enumerate_codes(ts, cap=WORD_CAP):
    """Every code of Type rho^a, in a deterministic order (RREF search)."""
    N = ts.N
    q = ts.q
    if q**N > cap:
        raise CapExceeded(f"q^N = {q**N} exceeds the brute-force cap {cap}")
    if N % 2:
        return []
    k = N // 2
    F = ts.alphabet
    W = _iso_weights(ts)
    found = []
    for P in combinations(range(N), k):
        cands = []
        for t, p in enumerate(P):
            free = [c for c in range(p + 1, N) if c not in P]
            rows = np.zeros((q ** len(free), N), dtype=np.int64)
            rows[:, p] = 1
            if free:
                rows[:, free] = all_vectors(q, len(free))
            rows = rows[_row_ok(ts, rows, W)]
            if len(rows) == 0:
                break
            cands.append(rows)
        if len(cands) < k:
            continue

        def rec(t, pool, chosen):
            if t == k:
                found.append(np.array(chosen))
                return
            for r in pool[0]:
                rest = [c[twisted_form(ts, c, r[None, :]) == 0] for c in pool[1:]]
                if any(len(c) == 0 for c in rest):
                    continue
                rec(t + 1, rest, chosen + [r])

        rec(0, cands, [])
    return [Code(ts, G) for G in found]


def enumerate_bruteforce(ts, cap=WORD_CAP):
    codes = enumerate_codes(ts, cap)
    index = {C.key: i for i, C in enumerate(codes)}
    parent = list(range(len(codes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gens = block_generators(ts)
    for i, C in enumerate(codes):
        for g in gens:
            j = index[C.permuted(g).key]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits = {}
    for i in range(len(codes)):
        orbits.setdefault(find(i), []).append(i)
    order = block_group_order(ts)
    reps, auts, sizes = [], [], []
    for members in orbits.values():
        rep = min((codes[i] for i in members), key=lambda C: C.key)
        reps.append(rep)
        sizes.append(len(members))
        auts.append(order // len(members))
    ranked = sorted(range(len(reps)), key=lambda i: (-auts[i], reps[i].key))
    return Classification(
        ts,
        [reps[i] for i in ranked],
        [auts[i] for i in ranked],
        len(codes),
        "bruteforce",
        [sizes[i] for i in ranked],
    )


def isotropic_lines(ts):
    """One normalised representative (first nonzero entry 1) per isotropic line."""
    vecs = all_vectors(ts.q, ts.N)[1:]
    first = vecs[np.arange(len(vecs)), (vecs != 0).argmax(axis=1)]
    vecs = vecs[first == 1]
    return vecs[_row_ok(ts, vecs)]


def neighbor(C, x):
    """(C cap x^perp) + <x>."""
    ts = C.ts
    x = np.asarray(x, dtype=np.int64)
    if not is_self_dual(C):
        raise PreconditionError("neighbor needs a self-dual code")
    if not is_isotropic_vector(ts, x):
        raise PreconditionError("x must be self-orthogonal and isotropic")
    if C.contains(x):
        raise PreconditionError("x lies in C")
    F = ts.alphabet
    w = twisted_form(ts, C.gens, x[None, :])
    ker = nullspace(F, w[None, :])
    sub = np.stack([span_combo(F, v, C.gens) for v in ker]) if len(ker) else np.zeros((0, ts.N), np.int64)
    return Code(ts, np.vstack([sub, x[None, :]]))


def span_combo(F, coeffs, G):
    acc = np.zeros(G.shape[1], dtype=np.int64)
    for c, row in zip(coeffs, G):
        acc = F.add[acc, F.mul[int(c), row]]
    return acc


def classify_neighbors(ts, seed, t=None):
    """Neighbor-graph closure from seed, modulo equivalence."""
    if not is_type(seed):
        raise PreconditionError("seed is not of Type rho^a")
    lines = isotropic_lines(ts)
    reps = [seed]
    sigs = [signature(seed)]
    known = {seed.key: 0}
    queue = [0]
    while queue:
        ci = queue.pop(0)
        C = reps[ci]
        H = C.parity_check()
        outside = dot(ts.alphabet, H[None, :, :], lines[:, None, :]).any(axis=1)
        for x in lines[outside]:
            D = neighbor(C, x)
            if D.key in known:
                continue
            sig = signature(D)
            cls = None
            for j, R in enumerate(reps):
                if sigs[j] == sig and equivalent(R, D) is not None:
                    cls = j
                    break
            if cls is None:
                cls = len(reps)
                reps.append(D)
                sigs.append(sig)
                queue.append(cls)
            known[D.key] = cls
    canon = [canonical_form(R) for R in reps]
    auts = [aut_order(R) for R in canon]
    ranked = sorted(range(len(canon)), key=lambda i: (-auts[i], canon[i].key))
    return Classification(ts, [canon[i] for i in ranked], [auts[i] for i in ranked], t, "neighbors")


def same_classes(cl1, cl2):
    """Do two classifications list the same equivalence classes?"""
    if len(cl1.classes) != len(cl2.classes):
        return False
    keys1 = sorted(canonical_form(C).key for C in cl1.classes)
    keys2 = sorted(canonical_form(C).key for C in cl2.classes)
    return keys1 == keys2


# ----------------------------------------------------------------------
# orthogonal double cosets


def orthogonal_group(F, n, all_ones=False, cap=10**6):
    """O_n(F_q) = {A : A A^T = I}, optionally with 1 A = 1."""
    vecs = all_vectors(F.q, n)
    norms = dot(F, vecs, vecs)
    unit = vecs[norms == 1]
    out = []

    def rec(rows):
        if len(out) > cap:
            raise CapExceeded(f"|O_{n}(F_{F.q})| exceeds {cap}")
        if len(rows) == n:
            A = np.array(rows)
            if all_ones:
                colsum = A[0]
                for r in A[1:]:
                    colsum = F.add[colsum, r]
                if (colsum != 1).any():
                    return
            out.append(A)
            return
        pool = unit
        if rows:
            pool = unit[~dot(F, unit[:, None, :], np.array(rows)[None, :, :]).any(axis=1)]
        for u in pool:
            rec(rows + [u])

    rec([])
    return out


def double_cosets(ts, all_ones=True, type_only=True):
    """One (I_N | A) per Sym_N x Sym_N double coset of O_N(F_q).

    ts must be of Type (N, N).  With type_only, only codes of Type rho^a are kept.
    """
    N = ts.N // 2
    if ts.twist != (1,) * N + (-1,) * N:
        raise PreconditionError("double cosets need the twist (1^N, (-1)^N)")
    F = ts.alphabet
    mats = orthogonal_group(F, N, all_ones)
    I = np.eye(N, dtype=np.int64)
    if type_only:
        mats = [A for A in mats if is_type(Code(ts, np.hstack([I, A])))]
    index = {A.tobytes(): i for i, A in enumerate(mats)}
    parent = list(range(len(mats)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    swaps = []
    for i in range(N - 1):
        p = list(range(N))
        p[i], p[i + 1] = i + 1, i
        swaps.append(p)
    for i, A in enumerate(mats):
        for p in swaps:
            for B in (A[p], A[:, p]):
                j = index[np.ascontiguousarray(B).tobytes()]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in range(len(mats))})
    reps = []
    for r in roots:
        members = [mats[i] for i in range(len(mats)) if find(i) == r]
        A = min(members, key=lambda M: M.tobytes())
        reps.append(Code(ts, np.hstack([I, A])))
    return reps


# ----------------------------------------------------------------------
# constructions


def trivial(base, n):
    ts = TwistedSum.nn(base, n)
    I = np.eye(n, dtype=np.int64)
    return Code(ts, np.hstack([I, I]))


def half_space(base, n):
    return TwistedSum(base, (1,) * n)


def double(C):
    """Double(C) = {(d, d + c) : d in C^perp, c in C} in rho^(N, N)."""
    ts = C.ts
    if ts.twist != (1,) * ts.N:
        raise PreconditionError("double expects a code in rho^N with trivial twist")
    if C.k and twisted_form(ts, C.gens[:, None, :], C.gens[None, :, :]).any():
        raise PreconditionError("C is not self-orthogonal")
    if C.k and not is_isotropic(C):
        raise PreconditionError("C is not isotropic")
    n = ts.N
    big = TwistedSum.nn(ts.base, n)
    D = dual(C).gens
    rows = [np.hstack([D, D])]
    if C.k:
        rows.append(np.hstack([np.zeros_like(C.gens), C.gens]))
    return Code(big, np.vstack(rows))


def direct_sum(C1, C2):
    """Orthogonal sum of two codes of Types (N1, N1) and (N2, N2), kept in (N, N) layout."""
    n1, n2 = C1.N // 2, C2.N // 2
    ts = TwistedSum.nn(C1.ts.base, n1 + n2)
    G1, G2 = C1.gens, C2.gens
    top = np.hstack([G1[:, :n1], np.zeros((C1.k, n2), np.int64), G1[:, n1:], np.zeros((C1.k, n2), np.int64)])
    bot = np.hstack([np.zeros((C2.k, n1), np.int64), G2[:, :n2], np.zeros((C2.k, n1), np.int64), G2[:, n2:]])
    return Code(ts, np.vstack([top, bot]))


def decompose(C):
    """Indecomposable summands as (coordinates, Code) pairs, ordered by first coordinate.

    The parts are the connected components of the matroid of C: pivot
    column of row r joined to every non-pivot column where row r is nonzero.
    """
    N = C.N
    parent = list(range(N))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for r, p in enumerate(C.pivots):
        for c in np.nonzero(C.gens[r])[0]:
            a, b = find(p), find(int(c))
            if a != b:
                parent[max(a, b)] = min(a, b)
    parts = {}
    for i in range(N):
        parts.setdefault(find(i), []).append(i)
    out = []
    for coords in sorted(parts.values()):
        rows = [r for r, p in enumerate(C.pivots) if find(p) == find(coords[0])]
        sub_ts = TwistedSum(C.ts.base, [C.ts.twist[i] for i in coords])
        G = C.gens[np.ix_(rows, coords)] if rows else np.zeros((0, len(coords)), np.int64)
        out.append((tuple(coords), Code(sub_ts, G)))
    return out


def is_indecomposable(C):
    return len(decompose(C)) == 1


# ----------------------------------------------------------------------
# codes listed in the classification tables

_W, _W2 = 2, 3  # omega, omega^2 in the F_4 encoding


def _rows(*rows):
    return np.array(rows, dtype=np.int64)


def Q4(base):
    return Code(half_space(base, 4), _rows([1, 0, _W, _W2], [0, 1, _W2, _W]))


def C44_F4(base):
    return Code(
        TwistedSum.nn(base, 4),
        _rows(
            [1, 0, 0, 0, 1, 1, _W, _W2],
            [0, 1, 0, 0, 1, 1, _W2, _W],
            [0, 0, 1, 0, _W2, _W, 1, 1],
            [0, 0, 0, 1, _W, _W2, 1, 1],
        ),
    )


def C44_F5(base):
    return Code(
        TwistedSum.nn(base, 4),
        _rows(
            [1, 0, 0, 0, 0, 3, 4, 4],
            [0, 1, 0, 0, 3, 2, 3, 3],
            [0, 0, 1, 0, 4, 3, 0, 4],
            [0, 0, 0, 1, 4, 3, 4, 0],
        ),
    )


def identity_plus(base, n, c):
    """<I_n | c J_n - I_n>."""
    F = base.alphabet
    J = np.full((n, n), c % F.p, dtype=np.int64)
    A = J.copy()
    for i in range(n):
        A[i, i] = F.sub[J[i, i], 1]
    return Code(TwistedSum.nn(base, n), np.hstack([np.eye(n, dtype=np.int64), A]))


def double_of(base, *rows):
    rows = _rows(*rows)
    return double(Code(half_space(base, rows.shape[1]), rows))


def listed_codes_4IIE(t):
    return [
        trivial(t, 1),
        double_of(t, [1, _W, _W2]),
        double_of(t, [1, 1, 1, 1]),
        double(Q4(t)),
        C44_F4(t),
    ]


def listed_codes(name):
    """Indecomposable codes named in the tables, as (label, Code)."""
    t = builtin(name)
    T = [("T_{1,1}", trivial(t, 1))]
    if name == "4II_E":
        return T + [
            ("Double(<(1,w,w^2)>)", double_of(t, [1, _W, _W2])),
            ("Double(<(1,1,1,1)>)", double_of(t, [1, 1, 1, 1])),
            ("Double(Q_4)", double(Q4(t))),
            ("C_{4,4}(F_4)", C44_F4(t)),
        ]
    if name == "3_1E":
        return T + [
            ("Double(<(1,1,1)>)", double_of(t, [1, 1, 1])),
            ("<I_4|2J_4-I_4>", identity_plus(t, 4, 2)),
        ]
    if name == "5_1E":
        return T + [
            ("<I_3|4J_3-I_3>", identity_plus(t, 3, 4)),
            ("<I_4|3J_4-I_4>", identity_plus(t, 4, 3)),
            ("Double(<(1,2,3,4)>)", double_of(t, [1, 2, 3, 4])),
            ("C_{4,4}(F_5)", C44_F5(t)),
        ]
    if name == "2II":
        return T + [("Double(<(1,1,1,1)>)", double_of(t, [1, 1, 1, 1]))]
    raise KeyError(name)


def balanced_summands(C):
    """Summands of Type (N_i, N_i): support components, with unbalanced ones grouped.

    Components whose left and right coordinate counts differ (e.g. the two
    copies of a self-dual code inside its double) are merged into the
    smallest groups that balance, scanning subsets in a fixed order.
    """
    left = set(C.ts.blocks[C.ts.galois.index(1)])
    comps = decompose(C)
    out = [c for c in comps if 2 * len(left.intersection(c[0])) == len(c[0])]
    loose = [c for c in comps if 2 * len(left.intersection(c[0])) != len(c[0])]
    while loose:
        bal = [len(left.intersection(c)) * 2 - len(c) for c, _ in loose]
        pick = None
        for r in range(2, len(loose) + 1):
            for sub in combinations(range(len(loose)), r):
                if sum(bal[i] for i in sub) == 0:
                    pick = sub
                    break
            if pick:
                break
        if pick is None:
            raise PreconditionError("code does not split into balanced summands")
        coords = sorted(i for j in pick for i in loose[j][0])
        out.append((tuple(coords), _restrict(C, coords)))
        loose = [c for j, c in enumerate(loose) if j not in pick]
    out.sort(key=lambda c: c[0])
    return out


def _restrict(C, coords):
    """The subcode supported on coords, as a code of the restricted twisted sum."""
    inside = set(coords)
    rows = [r for r, p in enumerate(C.pivots) if p in inside and all(C.gens[r, c] == 0 for c in range(C.N) if c not in inside)]
    sub_ts = TwistedSum(C.ts.base, [C.ts.twist[i] for i in coords])
    G = C.gens[np.ix_(rows, list(coords))] if rows else np.zeros((0, len(coords)), np.int64)
    return Code(sub_ts, G)


def indecomposable_classes(cl):
    """Distinct (up to equivalence) balanced indecomposable summands of the representatives."""
    found = []
    for C in cl.classes:
        for _, S in balanced_summands(C):
            S = _as_nn(S)
            if S is None:
                continue
            if not any(X.ts == S.ts and equivalent(X, S) is not None for X in found):
                found.append(S)
    return found


def _as_nn(S):
    """View a summand with twist (1^a, (-1)^b) sorted as a code of Type (a, b)."""
    tw = S.ts.twist
    f = S.ts.base.conductor
    left = [i for i, a in enumerate(tw) if a % f == 1]
    right = [i for i, a in enumerate(tw) if a % f == f - 1]
    if len(left) + len(right) != len(tw):
        return None
    ts = TwistedSum(S.ts.base, (1,) * len(left) + (-1,) * len(right))
    return Code(ts, S.gens[:, left + right])


# ----------------------------------------------------------------------
# text formats


def format_code(C):
    ts = C.ts
    head = f"type={ts.base.name} a={','.join(str(a) for a in ts.twist)} N={ts.N}"
    body = ["".join(str(int(v)) for v in row) for row in C.gens]
    return "\n".join([head] + body) + "\n"


def parse_code(text, base=None):
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    fields = dict(tok.split("=", 1) for tok in lines[0].split())
    if base is None:
        base = builtin(fields["type"])
    twist = [int(a) for a in fields["a"].split(",")] if fields["a"] else []
    ts = TwistedSum(base, twist)
    if int(fields["N"]) != ts.N:
        raise PreconditionError("header N disagrees with the twist length")
    rows = [[int(ch) for ch in ln] for ln in lines[1:]]
    if any(len(r) != ts.N for r in rows):
        raise PreconditionError("every generator row needs N digits")
    return Code(ts, np.array(rows, dtype=np.int64).reshape(-1, ts.N))


def _decomp_str(C):
    parts = decompose(C)
    return " + ".join(f"{len(S.ts.twist)}:{S.k}" for _, S in parts)


def format_classification(cl):
    ts = cl.ts
    out = [
        f"type={ts.base.name} a={','.join(str(a) for a in ts.twist)} N={ts.N}",
        f"method={cl.method} classes={len(cl.classes)}",
        "",
    ]
    for i, (C, a) in enumerate(zip(cl.classes, cl.aut_orders), 1):
        out.append(f"class {i}: |Aut| = {a}")
        out.append(f"decomposition (length:dim) = {_decomp_str(C)}")
        out += ["  " + "".join(str(int(v)) for v in row) for row in C.gens]
        out.append("")
    mass = cl.mass()
    out.append(f"sum 1/|Aut| = {mass.numerator}/{mass.denominator}")
    if cl.t is not None:
        lhs = Fraction(cl.t, cl.group_order)
        out.append(f"t = {cl.t}")
        out.append(f"t/|group| = {lhs.numerator}/{lhs.denominator}")
        out.append(f"mass identity: {'PASS' if lhs == mass else 'FAIL'}")
    return "\n".join(out) + "\n"
