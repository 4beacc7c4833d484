"""
Gamma-conjugate polynomials, conjugate weight enumerators and invariants.

Variables are x_i o alpha_j with i an index into V^m (see cwgroup) and j
a position in the fixed enumeration of Gamma.  A monomial is stored as one
sorted tuple of variable indices per Galois position; its exponent matrix
is derived on demand.

Invariant dimensions are computed exactly.  The generators of a
Clifford-Weil group split into monomial ones (permutations m_A and phases
d_phi) generating a subgroup M, and the Fourier generator h.  The
M-invariants are spanned by orbit sums of monomials on which the diagonal
part of M acts trivially.  Inside that span, v is h-invariant iff the
M-average of h(v) is v again: h is unitary for the Fischer inner product,
the average is the orthogonal projection, and equality in Cauchy-Schwarz
forces h(v) = v.  Only orbit sums of h-images are ever needed, and h is
sparse enough at genus m >= 2 that those come from short permanents.
"""

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial, gcd, prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .codes import Code, enumerate_bruteforce
from .cycmat import CycMat, _cyc_parts, _tables, rank_integer, rank_over_K
from .cyclo import CycNum, GaloisAut, apply_aut, totient
from .errors import CapExceeded, ConsistencyError, PreconditionError
from .typespec import TwistedSum, builtin, galois_setup, sign_condition

BASIS_CAP = 2 * 10**6
PAIR_CHUNK = 60_000


# ----------------------------------------------------------------------
# monomials and polynomials


class ConjMonomial:
    """prod_j prod_{i in blocks[j]} x_i o alpha_j."""

    __slots__ = ("blocks", "v")

    def __init__(self, blocks, v):
        self.blocks = tuple(tuple(sorted(b)) for b in blocks)
        self.v = v

    @classmethod
    def from_exponents(cls, E):
        E = np.asarray(E)
        v, n = E.shape
        return cls([[i for i in range(v) for _ in range(int(E[i, j]))] for j in range(n)], v)

    def exponents(self):
        E = np.zeros((self.v, len(self.blocks)), dtype=np.int64)
        for j, b in enumerate(self.blocks):
            for i in b:
                E[i, j] += 1
        return E

    @property
    def degree(self):
        return tuple(len(b) for b in self.blocks)

    def sort_key(self):
        return tuple(self.exponents().ravel())

    def __mul__(self, other):
        if self.v != other.v or len(self.blocks) != len(other.blocks):
            raise PreconditionError("monomials from different rings")
        return ConjMonomial([a + b for a, b in zip(self.blocks, other.blocks)], self.v)

    def __eq__(self, other):
        return isinstance(other, ConjMonomial) and (self.v, self.blocks) == (other.v, other.blocks)

    def __hash__(self):
        return hash((self.v, self.blocks))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        parts = []
        for j, b in enumerate(self.blocks):
            for i, e in sorted(Counter(b).items()):
                parts.append(f"x{i}o{j + 1}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"


def monomial_count(v, d):
    """prod_j binom(d_j + v - 1, d_j)."""
    return prod(comb(dj + v - 1, dj) for dj in d)


def monomials_of_degree(v, d, cap=BASIS_CAP):
    """All monomials of multidegree d in v variables per Galois position, lexicographic."""
    count = monomial_count(v, d)
    if count > cap:
        raise CapExceeded(f"{count} monomials exceed the basis cap {cap}")
    per_block = [list(combinations_with_replacement(range(v), dj)) for dj in d]
    mons = [ConjMonomial(blocks, v) for blocks in product(*per_block)]
    mons.sort(key=ConjMonomial.sort_key)
    return mons


class ConjPoly:
    """Finite sum of ConjMonomials with CycNum coefficients (zeros dropped)."""

    __slots__ = ("terms", "v", "n")

    def __init__(self, terms, v, n):
        self.v = v
        self.n = n
        clean = {}
        for mon, c in terms.items():
            c = CycNum.coerce(c)
            if not c.is_zero():
                clean[mon] = c
        self.terms = clean

    @classmethod
    def constant(cls, c, v, n):
        return cls({ConjMonomial([()] * n, v): c}, v, n)

    def __add__(self, other):
        out = dict(self.terms)
        for mon, c in other.terms.items():
            out[mon] = out[mon] + c if mon in out else c
        return ConjPoly(out, self.v, self.n)

    def __neg__(self):
        return ConjPoly({m: -c for m, c in self.terms.items()}, self.v, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ConjPoly):
            c = CycNum.coerce(other)
            return ConjPoly({m: x * c for m, x in self.terms.items()}, self.v, self.n)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = m1 * m2
                val = c1 * c2
                out[mon] = out[mon] + val if mon in out else val
        return ConjPoly(out, self.v, self.n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConjPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {m.degree for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def at_ones(self):
        """Value with every variable set to 1."""
        total = CycNum.zero()
        for c in self.terms.values():
            total = total + c
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        return " + ".join(f"({c})*{m}" for m, c in self.sorted_terms()[:6]) + (" + ..." if len(self.terms) > 6 else "")


# ----------------------------------------------------------------------
# weight enumerators


def _symbol_indices(C, m, cap=4 * 10**6):
    """Rows: m-tuples of codewords; columns: per coordinate, the V^m index of (c^1_i, ..., c^m_i)."""
    W = C.words()
    total = len(W) ** m
    if total > cap:
        raise CapExceeded(f"|C|^m = {total} exceeds {cap}")
    q = C.ts.q
    idx = np.zeros((1, C.N), dtype=np.int64)
    for _ in range(m):
        idx = (idx[:, None, :] * q + W[None, :, :]).reshape(-1, C.N)
    return idx


def ccwe_counts(C, m):
    """ccwe_m(C) as {blocks: count}, blocks being the per-Galois-position sorted index tuples."""
    idx = _symbol_indices(C, m)
    ts = C.ts
    cols = []
    for blk in ts.blocks:
        sub = np.sort(idx[:, list(blk)], axis=1) if blk else np.zeros((len(idx), 0), np.int64)
        cols.append(sub)
    flat = np.concatenate(cols, axis=1)
    v = ts.q**m
    if flat.shape[1] and v ** flat.shape[1] < 2**62:
        # one integer per row: a 1-d unique is far cheaper than a row-wise one
        keys, counts = np.unique(flat @ (v ** np.arange(flat.shape[1] - 1, -1, -1)), return_counts=True)
        rows = (keys[:, None] // (v ** np.arange(flat.shape[1] - 1, -1, -1))) % v
    else:
        rows, counts = np.unique(flat, axis=0, return_counts=True)
    degs = ts.degree
    out = {}
    for row, c in zip(rows.tolist(), counts.tolist()):
        blocks, pos = [], 0
        for d in degs:
            blocks.append(tuple(row[pos:pos + d]))
            pos += d
        out[tuple(blocks)] = c
    return out


def ccwe(C, m=1):
    """Gamma-conjugate complete weight enumerator of genus m."""
    v = C.ts.q**m
    n = len(C.ts.blocks)
    return ConjPoly({ConjMonomial(b, v): c for b, c in ccwe_counts(C, m).items()}, v, n)


def fwe_support(C, m=1):
    """Flat indices into (V^m)^N of the support of fwe_m(C) (sorted)."""
    idx = _symbol_indices(C, m)
    v = C.ts.q**m
    flat = np.zeros(len(idx), dtype=np.int64)
    for i in range(C.N):
        flat = flat * v + idx[:, i]
    return np.sort(flat)


def fwe(C, m=1, cap=2 * 10**6):
    """0/1 indicator of C^m inside (V^m)^N as a flat int array."""
    v = C.ts.q**m
    size = v**C.N
    if size > cap:
        raise CapExceeded(f"(V^m)^N has {size} points, above {cap}")
    out = np.zeros(size, dtype=np.int64)
    out[fwe_support(C, m)] = 1
    return out


def sigma(w, ts, m=1):
    """K-linear map b_u -> prod_i x_{u_i} o alpha_{j(i)} on K (V^m)^N.

    w is a dense coefficient list or a dict {flat index: coefficient}.
    """
    v = ts.q**m
    N = ts.N
    items = w.items() if isinstance(w, dict) else ((i, c) for i, c in enumerate(w) if c)
    terms = {}
    for flat, c in items:
        digits = []
        for _ in range(N):
            digits.append(flat % v)
            flat //= v
        digits.reverse()
        blocks = [[digits[i] for i in blk] for blk in ts.blocks]
        mon = ConjMonomial(blocks, v)
        c = CycNum.coerce(c)
        terms[mon] = terms[mon] + c if mon in terms else c
    return ConjPoly(terms, v, len(ts.blocks))


def phi_projection(P, q):
    """Phi_m: x_(v_1..v_m) -> x_(v_1..v_{m-1}) if v_m = 0, else 0."""
    if P.v % q or P.v < q:
        raise PreconditionError("polynomial is not of genus >= 1 over this alphabet")
    v2 = P.v // q
    out = {}
    for mon, c in P.terms.items():
        if any(i % q for b in mon.blocks for i in b):
            continue
        new = ConjMonomial([[i // q for i in b] for b in mon.blocks], v2)
        out[new] = out[new] + c if new in out else c
    return ConjPoly(out, v2, P.n)


# ----------------------------------------------------------------------
# the invariant engine


def _ambient_exponents(t):
    g = galois_setup(t)
    return [aut.a for aut in g.gamma]


def _generator_parts(G):
    """Split generators into permutations, diagonal phase vectors and the rest."""
    perms, diags, dense = [], [], []
    for gen, mat in zip(G.generators, G.matrices):
        if gen.kind == "perm":
            perms.append(np.argmax(mat.num.any(axis=2), axis=0))  # column w -> row perm[w]
        elif gen.kind == "diag":
            from .cwgroup import phase_exponents

            diags.append(phase_exponents(G.t, gen.data))
        else:
            dense.append((gen.label, mat))
    return perms, diags, dense


def _character_basis(perms, diags, M, v):
    """Generators of the group of phase vectors produced by conjugating diags with perms."""
    seen = set()
    orbit = []
    frontier = [tuple(int(x) % M for x in d) for d in diags]
    for d in frontier:
        if d not in seen:
            seen.add(d)
            orbit.append(d)
    while frontier:
        nxt = []
        for d in frontier:
            arr = np.array(d)
            for p in perms:
                img = np.empty(v, dtype=np.int64)
                img[p] = arr  # phase of b_{p(w)} is that of b_w
                key = tuple(int(x) for x in img)
                if key not in seen:
                    seen.add(key)
                    orbit.append(key)
                    nxt.append(key)
        frontier = nxt
    # keep a subset generating the same subgroup
    basis, span = [], {tuple([0] * v)}
    for d in orbit:
        if d in span:
            continue
        basis.append(d)
        new = set(span)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                w = tuple((a + b) % M for a, b in zip(s, d))
                if w not in new:
                    new.add(w)
                    nxt.append(w)
            frontier = nxt
        span = new
    return np.array(basis, dtype=np.int64).reshape(-1, v)


@dataclass
class FixedSpace:
    """Monomial reduction data for one group, block layout and degree."""

    G: object
    exps: tuple  # ambient Galois exponent per block
    degs: tuple
    monomials: np.ndarray  # (count, D) admissible monomials, blocks concatenated
    orbit: np.ndarray  # orbit id per monomial
    orbit_size: np.ndarray
    orbit_rep: np.ndarray
    dense: list
    stats: dict = dc_field(default_factory=dict)

    @property
    def n_orbits(self):
        return len(self.orbit_size)

    def codes(self, rows):
        v = self.G.v
        out = np.zeros(len(rows), dtype=np.int64)
        for t in range(rows.shape[1]):
            out = out * v + rows[:, t]
        return out


def _block_slices(degs):
    out, pos = [], 0
    for d in degs:
        out.append(slice(pos, pos + d))
        pos += d
    return out


def _sort_blocks(rows, degs):
    rows = rows.copy()
    for sl in _block_slices(degs):
        if sl.stop - sl.start > 1:
            rows[:, sl] = np.sort(rows[:, sl], axis=1)
    return rows


def fixed_space(G, exps, degs, trivial_monomial_group=False, cap=BASIS_CAP):
    """Admissible monomials and their orbits for blocks (ambient exponent, degree)."""
    t = G.t
    v = G.v
    M = G.M
    exps = tuple(int(a) for a in exps)
    degs = tuple(int(d) for d in degs)
    D = sum(degs)
    if v ** max(D, 1) >= 1 << 62:
        raise CapExceeded("monomial codes would overflow")
    perms, diags, dense = _generator_parts(G)
    if trivial_monomial_group:
        dense = [(gen.label, mat) for gen, mat in zip(G.generators, G.matrices)]
        perms, diags = [], []
    chars = _character_basis(perms, diags, M, v) if diags else np.zeros((0, v), np.int64)

    # meet in the middle over blocks: admissible iff every character sums to 0 mod M
    parts = []
    for a, d in zip(exps, degs):
        combos = list(combinations_with_replacement(range(v), d))
        mons = np.array(combos, dtype=np.int64).reshape(len(combos), d)
        val = (a * chars[:, mons].sum(axis=2).T) % M if len(chars) else np.zeros((len(mons), 0), np.int64)
        parts.append((mons, val))
    total = prod(len(p[0]) for p in parts)
    if trivial_monomial_group and total > cap:
        raise CapExceeded(f"{total} monomials exceed the basis cap {cap}")
    mons, val = parts[0] if parts else (np.zeros((1, 0), np.int64), np.zeros((1, len(chars)), np.int64))
    for k, (m2, v2) in enumerate(parts[1:], 1):
        last = k == len(parts) - 1
        if last and len(chars):
            # hash join on val + v2 = 0
            need = {}
            for i, row in enumerate(((-v2) % M).tolist()):
                need.setdefault(tuple(row), []).append(i)
            li, ri = [], []
            for i, row in enumerate(val.tolist()):
                for j in need.get(tuple(row), ()):
                    li.append(i)
                    ri.append(j)
            li = np.array(li, dtype=np.int64)
            ri = np.array(ri, dtype=np.int64)
            mons = np.concatenate([mons[li], m2[ri]], axis=1)
            val = np.zeros((len(li), len(chars)), np.int64)
        else:
            if len(mons) * len(m2) > 50 * cap:
                raise CapExceeded("intermediate monomial product too large")
            li = np.repeat(np.arange(len(mons)), len(m2))
            ri = np.tile(np.arange(len(m2)), len(mons))
            mons = np.concatenate([mons[li], m2[ri]], axis=1)
            val = (val[li] + v2[ri]) % M
    if len(chars):
        keep = ~val.any(axis=1)
        mons = mons[keep]
    if len(mons) > cap:
        raise CapExceeded(f"{len(mons)} admissible monomials exceed the cap {cap}")

    fs = FixedSpace(G, exps, degs, mons, None, None, None, dense)
    codes = fs.codes(mons)
    order = np.argsort(codes)
    mons, codes = mons[order], codes[order]
    fs.monomials = mons
    n = len(mons)
    rows, cols = [np.arange(n)], [np.arange(n)]
    for p in perms:
        img = _sort_blocks(p[mons], degs)
        pos = np.searchsorted(codes, fs.codes(img))
        if (pos >= n).any() or (codes[np.minimum(pos, n - 1)] != fs.codes(img)).any():
            raise ConsistencyError("admissible monomials are not closed under the permutations")
        rows.append(np.arange(n))
        cols.append(pos)
    graph = coo_matrix((np.ones(sum(len(r) for r in rows)), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    n_orb, labels = connected_components(graph, directed=True, connection="weak") if n else (0, np.zeros(0, np.int64))
    # relabel orbits by their smallest member for determinism
    first = np.full(n_orb, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n))
    rank = np.argsort(np.argsort(first))
    fs.orbit = rank[labels]
    fs.orbit_size = np.bincount(fs.orbit, minlength=n_orb)
    fs.orbit_rep = np.sort(first)
    fs.stats = {"admissible": n, "orbits": int(n_orb), "characters": len(chars)}
    return fs


def _support_classes(E):
    """Component label per index of the bipartite support graph of E >= 0."""
    v = E.shape[0]
    r, c = np.nonzero(E >= 0)
    g = coo_matrix((np.ones(len(r)), (r, c + v)), shape=(2 * v, 2 * v))
    _, lab = connected_components(g, directed=False)
    return lab[:v]


def _fourier_data(mat):
    """Recover (exponent matrix E, scalar s) with mat = s * zeta^E (E = -1 off support)."""
    M = mat.M
    P, _ = _tables(M)
    r, c = mat.shape
    nz = mat.num.any(axis=2)
    i0, j0 = np.argwhere(nz)[0]
    s = mat.entry(i0, j0)
    E = -np.ones((r, c), dtype=np.int64)
    inv = 1 / s
    for i, j in np.argwhere(nz):
        x = mat.entry(i, j) * inv
        for e in range(M):
            if x == CycNum.root(M, e):
                E[i, j] = e
                break
        else:
            raise PreconditionError("non-monomial generator is not a scaled root-of-unity matrix")
    return E, s


def _perm_table(d):
    return np.array(list(permutations(range(d))), dtype=np.int64).reshape(-1, d)


def _mult_factorials(rows):
    """prod over distinct values of (multiplicity)! for each row of a sorted block."""
    if rows.shape[1] == 0:
        return np.ones(len(rows), dtype=np.int64)
    out = np.ones(len(rows), dtype=np.int64)
    run = np.ones(len(rows), dtype=np.int64)
    for t in range(1, rows.shape[1]):
        same = rows[:, t] == rows[:, t - 1]
        run = np.where(same, run + 1, 1)
        out *= run
    return out


def _pair_histograms(fs, E, tgt, src):
    """Exponent histograms (P, M) of sum over arrangements of prod zeta^(-a E[k, i])."""
    M = fs.G.M
    A = fs.monomials
    hist = None
    for sl, a, d in zip(_block_slices(fs.degs), fs.exps, fs.degs):
        I = A[tgt, sl]
        K = A[src, sl]
        P = len(tgt)
        h = np.zeros((P, M), dtype=np.int64)
        if d == 0:
            h[:, 0] = 1
        else:
            perms = _perm_table(d)
            ET = E[K[:, None, :], I[:, perms]]  # (P, d!, d): E[k_t, i_pi(t)]
            ok = (ET >= 0).all(axis=2)
            s = (-a * ET.sum(axis=2)) % M
            flat = (np.arange(P)[:, None] * M + s)[ok]
            h = np.bincount(flat, minlength=P * M).reshape(P, M)
            mf = _mult_factorials(I)
            if (h % mf[:, None]).any():
                raise ConsistencyError("arrangement count not divisible by multiplicities")
            h //= mf[:, None]
        if hist is None:
            hist = h
        else:
            new = np.zeros_like(hist)
            for x in range(M):
                if not hist[:, x].any():
                    continue
                for y in range(M):
                    new[:, (x + y) % M] += hist[:, x] * h[:, y]
            hist = new
    return hist


def _class_groups(fs, classes):
    """Group id per monomial: monomials whose per-block class multisets agree."""
    A = fs.monomials
    cl = classes[A] if A.size else A
    cl = _sort_blocks(cl, fs.degs)
    _, inv = np.unique(cl, axis=0, return_inverse=True)
    inv = np.asarray(inv).ravel()
    order = np.argsort(inv, kind="stable")
    bounds = np.searchsorted(inv[order], np.arange(inv.max(initial=-1) + 2))
    return inv, order, bounds


def _pairs_for_targets(groups, targets):
    """(target, source) pairs with the source in the target's group."""
    inv, order, bounds = groups
    tg, sr = [], []
    for t in targets:
        g = inv[t]
        members = order[bounds[g]:bounds[g + 1]]
        tg.append(np.full(len(members), t, dtype=np.int64))
        sr.append(members)
    if not tg:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(tg), np.concatenate(sr)


def pair_count(fs):
    """Number of (target, source) pairs the exact orbit equations need."""
    total = 0
    for _, mat in fs.dense:
        inv, _, bounds = _class_groups(fs, _support_classes(_fourier_data(mat)[0]))
        sizes = np.diff(bounds).astype(np.int64)
        total += int((sizes**2).sum())
    return total


def _block_scalar(fs, s):
    """prod_j alpha_{a_j}(s)^{d_j}."""
    M = fs.G.M
    c0 = CycNum.one(M)
    for a, d in zip(fs.exps, fs.degs):
        c0 = c0 * apply_aut(GaloisAut(M, a), s) ** d
    return c0


def _accumulate(fs, E, tgt, src, row_of, n_rows):
    """Sum of h-coefficients into cells (row_of[target pair], orbit of source), exponent basis."""
    M = fs.G.M
    n_orb = fs.n_orbits
    acc = np.zeros((n_rows * n_orb, M), dtype=np.int64)
    for start in range(0, len(tgt), PAIR_CHUNK):
        tt = tgt[start:start + PAIR_CHUNK]
        ss = src[start:start + PAIR_CHUNK]
        h = _pair_histograms(fs, E, tt, ss)
        cell = row_of[start:start + PAIR_CHUNK] * n_orb + fs.orbit[ss]
        for e in range(M):
            if h[:, e].any():
                acc[:, e] += np.bincount(cell, weights=h[:, e], minlength=n_rows * n_orb).astype(np.int64)
    return acc


def orbit_equations(fs):
    """Exact matrices over K whose common null space is the invariant space in orbit coordinates.

    Row O of the block for h is  sum_{mu in O} (h v)[mu] - |O| c_O.
    """
    M = fs.G.M
    n_orb = fs.n_orbits
    P_tab, _ = _tables(M)
    blocks = []
    for label, mat in fs.dense:
        E, s = _fourier_data(mat)
        groups = _class_groups(fs, _support_classes(E))
        tgt, src = _pairs_for_targets(groups, np.arange(len(fs.monomials)))
        acc = _accumulate(fs, E, tgt, src, fs.orbit[tgt], n_orb)
        num = (acc @ P_tab).reshape(n_orb, n_orb, -1)
        Emat = CycMat(M, num, 1).scale(_block_scalar(fs, s))
        diag = np.zeros_like(CycMat.identity(n_orb, M).num)
        diag[np.arange(n_orb), np.arange(n_orb), 0] = fs.orbit_size
        blocks.append((label, Emat - CycMat(M, diag, 1)))
        fs.stats[f"pairs[{label}]"] = int(len(tgt))
    return blocks


def pointwise_equations(fs, targets):
    """Rows  (h v)[mu] - v[mu]  for the given target monomials (necessary conditions)."""
    M = fs.G.M
    n_orb = fs.n_orbits
    P_tab, _ = _tables(M)
    targets = np.asarray(targets, dtype=np.int64)
    blocks = []
    for label, mat in fs.dense:
        E, s = _fourier_data(mat)
        tgt, src = _pairs_for_targets(_class_groups(fs, _support_classes(E)), targets)
        row_of = np.searchsorted(targets, tgt) if len(targets) else tgt
        acc = _accumulate(fs, E, tgt, src, row_of, len(targets))
        num = (acc @ P_tab).reshape(len(targets), n_orb, -1)
        Emat = CycMat(M, num, 1).scale(_block_scalar(fs, s))
        ident = np.zeros_like(Emat.num)
        ident[np.arange(len(targets)), fs.orbit[targets], 0] = Emat.den
        blocks.append((label, CycMat(M, Emat.num - ident, Emat.den, normalize=False)))
    return blocks


def _stack(eqs):
    if not eqs:
        return None
    l = 1
    for _, e in eqs:
        l = l * e.den // gcd(l, e.den)
    return np.concatenate([e.num * (l // e.den) for _, e in eqs], axis=0)


PAIR_CAP = 2 * 10**7


def fixed_dim(fs, lower=None, pair_cap=PAIR_CAP):
    """Dimension of the common fixed space described by fs.

    Exact when the orbit equations fit under pair_cap.  Otherwise pointwise
    equations at growing sets of target monomials give an upper bound, which
    certifies the value once it meets a known lower bound.  fs.stats records
    the method and, if uncertified, both bounds.
    """
    n = fs.n_orbits
    M = fs.G.M
    if n == 0:
        fs.stats["method"] = "empty"
        return 0
    if not fs.dense:
        fs.stats["method"] = "orbits"
        return n
    if pair_count(fs) <= pair_cap:
        fs.stats["method"] = "orbits"
        return n - rank_over_K(M, _stack(orbit_equations(fs)))
    if lower is None:
        raise CapExceeded("orbit equations exceed the pair cap and no lower bound was supplied")
    chosen = set(int(x) for x in fs.orbit_rep)
    stride = 0
    upper = n
    while True:
        targets = np.array(sorted(chosen), dtype=np.int64)
        block = _stack(pointwise_equations(fs, targets))
        upper = n - rank_over_K(M, block)
        fs.stats.update(method="certificate", targets=len(targets), upper=upper, lower=lower)
        if upper == lower or len(chosen) >= len(fs.monomials):
            break
        # deterministic batches: every k-th monomial with a shifting offset
        step = max(1, len(fs.monomials) // (2 * n))
        chosen.update(range(stride % step, len(fs.monomials), step))
        stride += 1
    if upper < lower:
        raise ConsistencyError(f"upper bound {upper} below lower bound {lower}")
    if upper != lower:
        fs.stats["method"] = "pointwise"  # every target used: exact, and the lower bound was not sharp
    return upper


def block_layout(G, d):
    """(ambient exponent, degree) per Galois position for degree vector d."""
    exps = _ambient_exponents(G.t)
    if len(d) != len(exps):
        raise PreconditionError(f"degree vector needs {len(exps)} entries")
    return exps, tuple(d)


def invariant_dim(G, d, method="orbits"):
    """dim of the degree-d part of the Gamma-conjugate invariant ring of G."""
    exps, degs = block_layout(G, d)
    if method == "orbits":
        return fixed_dim(fixed_space(G, exps, degs))
    if method == "dense":
        return invariant_dim_dense(G, d)
    raise ValueError(method)


# ----------------------------------------------------------------------
# the literal method: stacked (A_d(g) - I) on the full monomial basis


def _apply_linear_to_monomial(T_blocks, mon, M):
    """Image of one monomial under block substitutions x_k -> sum_i T[i, k] x_i (dict exps -> CycNum)."""
    out = {(): CycNum.one(M)}
    for T, blk in zip(T_blocks, mon.blocks):
        poly = {(): CycNum.one(M)}
        for k in blk:
            nxt = {}
            for key, c in poly.items():
                for i in range(T.shape[0]):
                    x = T.entry(i, k) if T.num[i, k].any() else None
                    if x is None:
                        continue
                    nk = tuple(sorted(key + (i,)))
                    val = c * x
                    nxt[nk] = nxt[nk] + val if nk in nxt else val
            poly = nxt
        comb_ = {}
        for k1, c1 in out.items():
            for k2, c2 in poly.items():
                key = k1 + (k2,)
                comb_[key] = c1 * c2
        out = comb_
    return out


def act(g, P, exps, inverse=True):
    """A_d(g) P: x_k o alpha_j -> sum_i alpha_j(g^-1)[i, k] x_i o alpha_j."""
    M = g.M
    base = g.conj_T() if inverse else g
    T_blocks = [base.galois(a) for a in exps]
    out = {}
    for mon, c in P.terms.items():
        for key, x in _apply_linear_to_monomial(T_blocks, mon, M).items():
            new = ConjMonomial(key, P.v)
            val = c * x
            out[new] = out[new] + val if new in out else val
    return ConjPoly(out, P.v, P.n)


def invariant_dim_dense(G, d, cap=3000):
    """Nullity of the stacked (A_d(g) - I) over the generators, on all monomials of degree d."""
    exps, degs = block_layout(G, d)
    mons = monomials_of_degree(G.v, degs, cap)
    index = {m.blocks: i for i, m in enumerate(mons)}
    n = len(mons)
    M = G.M
    blocks = []
    for mat in G.matrices:
        T_blocks = [mat.conj_T().galois(a) for a in exps]
        cells = []
        den = 1
        for j, mon in enumerate(mons):
            for key, c in _apply_linear_to_monomial(T_blocks, mon, M).items():
                num, dn = _cyc_parts(c, M)
                cells.append((index[key], j, num, dn))
                den = den * dn // gcd(den, dn)
        A = np.zeros((n, n, totient(M)), dtype=np.int64)
        for i, j, num, dn in cells:
            A[i, j] += np.array(num, dtype=np.int64) * (den // dn)
        A[np.arange(n), np.arange(n), 0] -= den
        blocks.append(A)
    return n - rank_over_K(M, np.concatenate(blocks, axis=0))


# ----------------------------------------------------------------------
# invariance of weight enumerators


def poly_in_orbit_coords(fs, counts):
    """Orbit coordinates of a polynomial given as {blocks: integer}; None if not M-invariant."""
    A = fs.monomials
    codes = fs.codes(A)
    vec = np.zeros(len(A), dtype=np.int64)
    for blocks, c in counts.items():
        row = np.array([i for b in blocks for i in b], dtype=np.int64)[None, :]
        code = fs.codes(row)[0]
        pos = np.searchsorted(codes, code)
        if pos >= len(codes) or codes[pos] != code:
            return None  # support outside the admissible monomials
        vec[pos] = c
    coords = np.zeros(fs.n_orbits, dtype=np.int64)
    coords[fs.orbit] = vec
    if (coords[fs.orbit] != vec).any():
        return None
    return coords


def is_invariant_counts(fs, counts, eqs=None):
    """Exact test that an integer polynomial is fixed by every generator."""
    c = poly_in_orbit_coords(fs, counts)
    if c is None:
        return False
    if eqs is None:
        eqs = orbit_equations(fs)
    for _, E in eqs:
        val = np.einsum("ijk,j->ik", E.num, c)
        if val.any():
            return False
    return True


@lru_cache(maxsize=4096)
def _fourier_fixed(C):
    """Is fwe_1(C) fixed by h acting factorwise with the twist of C?"""
    from .cwgroup import gen_h

    ts = C.ts
    t = ts.base
    M = galois_setup(t).ambient
    vec = tensor_from_indicator(fwe(C, 1), t.q, C.N, M)
    img = apply_factors(vec, [gen_h(t, 1, a) for a in ts.twist], M)
    return same_tensor(img, vec)


def enumerator_invariant(C, G):
    """Exact check that fwe_m(C) is fixed by the generators of G acting with the twist of C.

    Permutations must preserve the support and phases must vanish on it.  The
    Fourier generator only touches the first layer of V^m, so its check
    reduces to fwe_1(C) under the genus-1 transform.
    """
    from .cwgroup import phase_exponents

    ts = C.ts
    t, M = G.t, G.M
    v = G.v
    idx = _symbol_indices(C, G.m)  # rows are distinct points of C^m, digits in V^m
    weights = v ** np.arange(C.N - 1, -1, -1)
    flat = np.sort(idx @ weights)
    for i, gen in enumerate(G.generators):
        if gen.kind == "perm":
            p = np.argmax(G.matrices[i].num.any(axis=2), axis=0)
            if not np.array_equal(np.sort(p[idx] @ weights), flat):
                return False
        elif gen.kind == "diag":
            tot = np.zeros(len(idx), dtype=np.int64)
            for k, a in enumerate(ts.twist):
                tot += phase_exponents(t, gen.data, a)[idx[:, k]]
            if (tot % M).any():
                return False
        elif not _fourier_fixed(C):
            return False
    return True


# ----------------------------------------------------------------------
# Molien series


@dataclass
class SeriesTrunc:
    caps: tuple
    coeffs: dict  # degree vector -> CycNum

    def __getitem__(self, d):
        return self.coeffs.get(tuple(d), CycNum.zero())

    def dump(self):
        lines = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            val = c.to_fraction() if c.is_rational() else c
            if isinstance(val, Fraction):
                val = f"{val.numerator}" if val.denominator == 1 else f"{val.numerator}/{val.denominator}"
            lines.append(" ".join(str(x) for x in d) + f" : {val}")
        return "\n".join(lines) + "\n"


def char_poly(g):
    """Coefficients c_0..c_v of det(I - z g) = sum c_k z^k (Faddeev-LeVerrier)."""
    n = g.shape[0]
    M = g.M
    I = CycMat.identity(n, M)
    Mk = CycMat(M, np.zeros_like(I.num), 1)
    coeffs = [CycNum.one(M)]  # of det(xI - g): x^n + a_{n-1} x^{n-1} + ...
    AM = None
    for k in range(1, n + 1):
        Mk = (g @ Mk if AM is not None else CycMat(M, np.zeros_like(I.num), 1)) + I.scale(coeffs[-1])
        AM = g @ Mk
        tr = CycNum.zero(M)
        for i in range(n):
            tr = tr + AM.entry(i, i)
        coeffs.append(tr * Fraction(-1, k))
    # det(I - z g) = sum_k a_{n-k} z^k with a_n = 1, i.e. coeffs[k] in our ordering
    return coeffs


def _inverse_series(c, cap):
    """Power series 1 / (c_0 + c_1 z + ...) up to z^cap (c_0 = 1)."""
    out = [CycNum.one(c[0].m)]
    for k in range(1, cap + 1):
        s = CycNum.zero(c[0].m)
        for i in range(1, min(k, len(c) - 1) + 1):
            s = s + c[i] * out[k - i]
        out.append(-s)
    return out


def molien(G, caps, exps=None):
    """Truncated conjugate Hilbert series (1/|G|) sum_g prod_j 1/det(I - z_j alpha_j(g))."""
    if G.elements is None:
        G.closure()
    if exps is None:
        exps = _ambient_exponents(G.t)
    caps = tuple(caps)
    if len(caps) != len(exps):
        raise PreconditionError("one cap per Galois position")
    classes = Counter()
    reps = {}
    for g in G.elements:
        cp = char_poly(g)
        key = tuple(x.num + (x.den,) for x in cp)
        classes[key] += 1
        reps[key] = cp
    total = {}
    M = G.M
    for key, count in classes.items():
        cp = reps[key]
        series = []
        for a, cap in zip(exps, caps):
            aut = GaloisAut(M, a)
            series.append(_inverse_series([apply_aut(aut, x) for x in cp], cap))
        for d in product(*(range(c + 1) for c in caps)):
            term = CycNum.rational(count, M)
            for s, k in zip(series, d):
                term = term * s[k]
            total[d] = total[d] + term if d in total else term
    out = {d: x * Fraction(1, G.order) for d, x in total.items()}
    for d, x in out.items():
        if not x.is_rational():
            raise ConsistencyError(f"Molien coefficient at {d} is not rational: {x}")
        f = x.to_fraction()
        if f.denominator != 1 or f < 0:
            raise ConsistencyError(f"Molien coefficient at {d} is {f}, not a nonnegative integer")
    return SeriesTrunc(caps, out)


# ----------------------------------------------------------------------
# main theorem check


@dataclass
class MainReport:
    type_name: str
    twist: tuple
    genus: int
    degree: tuple
    classes: int
    rank: int
    invariant_dim: int
    monomial_count: int
    verdict: str
    note: str = ""
    stats: dict = dc_field(default_factory=dict)

    def format(self):
        lines = [
            f"type = {self.type_name}",
            f"twist = {','.join(str(a) for a in self.twist)}",
            f"genus = {self.genus}",
            f"degree = {' '.join(str(x) for x in self.degree)}",
            f"classes = {self.classes}",
            f"rank = {self.rank}",
            f"invariant_dim = {self.invariant_dim}",
            f"monomial_count = {self.monomial_count}",
            f"verdict = {self.verdict}",
        ]
        if self.note:
            lines.append(f"note = {self.note}")
        return "\n".join(lines) + "\n"


def ccwe_rank(codes, m):
    """Rank of the integer matrix of ccwe_m coefficients (rows: codes)."""
    polys = [ccwe_counts(C, m) for C in codes]
    mons = sorted({k for p in polys for k in p})
    col = {k: i for i, k in enumerate(mons)}
    mat = np.zeros((len(polys), len(mons)), dtype=np.int64)
    for r, p in enumerate(polys):
        for k, c in p.items():
            mat[r, col[k]] = c
    return rank_integer(mat)


def verify_main(ts, m=1, classification=None, group=None):
    from .cwgroup import group_for

    t = ts.base
    deg = ts.degree
    count = monomial_count(t.q**m, deg)
    if not sign_condition(ts):
        cl = classification or enumerate_bruteforce(ts)
        G = group or group_for(t, m)
        a = invariant_dim(G, deg)
        return MainReport(
            t.name, ts.twist, m, deg, len(cl.classes), ccwe_rank(cl.classes, m) if cl.classes else 0, a, count,
            "REFUSED", f"sign condition fails; {cl.t} codes, invariant dimension {a}",
        )
    cl = classification or enumerate_bruteforce(ts)
    G = group or group_for(t, m)
    r = ccwe_rank(cl.classes, m) if cl.classes else 0
    exps, degs = block_layout(G, deg)
    fs = fixed_space(G, exps, degs)
    invariant = all(enumerator_invariant(C, G) for C in cl.classes)
    if not invariant:
        return MainReport(t.name, ts.twist, m, deg, len(cl.classes), r, -1, count, "FAIL", "a weight enumerator is not invariant")
    a = fixed_dim(fs, lower=r)
    verdict = "PASS" if r == a else "FAIL"
    return MainReport(t.name, ts.twist, m, deg, len(cl.classes), r, a, count, verdict, stats=dict(fs.stats))


# ----------------------------------------------------------------------
# tensor application of factorwise operators (exact)


def apply_factors(vec, mats, M):
    """Apply mats[i] along axis i of a coefficient tensor.

    vec: (num, den) with num of shape (v,)*N + (phi,).
    """
    num, den = vec
    _, red = _tables(M)
    n = red.shape[0]
    # K-linear map of g as an integer matrix on (w, t) -> (u, z)
    for i, g in enumerate(mats):
        den *= g.den
        v = g.shape[0]
        big = np.einsum("uws,stz->uzwt", g.num, red).reshape(v * n, g.shape[1] * n)
        moved = np.moveaxis(num, i, -2)  # (..., w, t)
        shape = moved.shape
        flat = moved.reshape(-1, shape[-2] * n)
        bound = int(np.abs(flat).max(initial=0)) * int(np.abs(big).sum(axis=1).max(initial=0))
        if bound < 2**53:
            # every partial sum is an integer below 2^53, so float64 BLAS is exact
            flat = np.rint(flat.astype(np.float64) @ big.T.astype(np.float64)).astype(np.int64)
        else:
            flat = flat @ big.T
        num = np.moveaxis(flat.reshape(shape[:-2] + (v, n)), -2, i)
    g = gcd(int(np.gcd.reduce(num.ravel())) if num.size else 0, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


def tensor_from_indicator(ind, v, N, M):
    num = np.zeros((v**N, _tables(M)[0].shape[1]), dtype=np.int64)
    num[:, 0] = ind
    return num.reshape((v,) * N + (-1,)), 1


def same_tensor(a, b):
    (n1, d1), (n2, d2) = a, b
    return np.array_equal(n1 * d2, n2 * d1)


# ----------------------------------------------------------------------
# the sign-condition counterexample


def counterexample_demo():
    """The anti-invariant Sigma over F_5^4 for twist (1,2,2,2).

    The representation is F_5 with beta = xy/5 and quadratic maps only: a
    linear phase x/5 would not fix Sigma, so the 5_1E descriptor is not used.
    """
    from .cwgroup import group_for
    from .typespec import quadratic_prime_type

    t = quadratic_prime_type(5)
    ts = TwistedSum(t, (1, 2, 2, 2))
    q = 5
    report = {}
    report["sign_condition"] = (sign_condition(ts) is False, f"sign condition holds: {sign_condition(ts)}")

    pts = np.indices((q,) * 4).reshape(4, -1).T
    form = (pts[:, 0] ** 2 + 2 * (pts[:, 1] ** 2 + pts[:, 2] ** 2 + pts[:, 3] ** 2)) % q
    I = (form == 0) & pts.any(axis=1)
    Sigma = np.where(I, -1, 0)
    Sigma[0] = 4
    report["|I|"] = (True, f"|I| = {int(I.sum())}")

    G = group_for(t, 1)
    M = G.M
    vec = tensor_from_indicator(Sigma, q, 4, M)
    for i, gen in enumerate(G.generators):
        mats = [G.twisted_matrix(i, a) for a in ts.twist]
        img = apply_factors(vec, mats, M)
        if gen.kind == "fourier":
            neg = (-img[0], img[1])
            report[f"h(Sigma) = -Sigma"] = (same_tensor(neg, vec), "exact tensor product")
        else:
            report[f"{gen.label}(Sigma) = Sigma"] = (same_tensor(img, vec), "exact tensor product")

    sig = sigma({i: int(c) for i, c in enumerate(Sigma) if c}, ts)
    report["sigma(Sigma) != 0"] = (not sig.is_zero() and sig.degrees() == {(1, 3, 0, 0)}, f"{len(sig.terms)} monomials of degree (1,3,0,0)")

    a = invariant_dim(G, ts.degree)
    report["invariant_dim(1,3,0,0) = 1"] = (a == 1, f"dimension {a}")
    cl = enumerate_bruteforce(ts)
    report["no codes of Type rho^(1,2,2,2)"] = (cl.t == 0, f"t = {cl.t}")
    return report
