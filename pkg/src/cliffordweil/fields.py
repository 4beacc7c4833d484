"""Small finite fields F_q (q <= 9 or so) given by explicit tables.

Elements are the integers 0..q-1.  For q = p^k the integer with base-p
digits (c_0, ..., c_{k-1}) (least significant first) encodes
c_0 + c_1 x + ... in F_p[x]/(g).  With g = x^2 + x + 1 this gives the
usual F_4 labels 0, 1, w, w^2 = 0, 1, 2, 3.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .cyclo import is_prime_power

# Conway polynomials, low degree first, monic leading coefficient omitted
_MODULI = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (3, 2): (2, 2),
    (2, 4): (1, 1, 0, 0),
    (5, 2): (2, 4),
    (7, 2): (3, 6),
}


class FieldAlphabet:
    def __init__(self, q):
        pk = is_prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        self.add, self.mul = _tables(q)
        self.add.flags.writeable = False
        self.mul.flags.writeable = False
        self.neg = np.array([int(np.where(self.add[x] == 0)[0][0]) for x in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.where(self.mul[x] == 1)[0][0])
        self.inv = inv
        self.sub = self.add[:, self.neg]
        self.elements = tuple(range(q))
        self.units = tuple(range(1, q))
        self.primitive = self._find_primitive()

    def _find_primitive(self):
        for g in range(1, self.q):
            x, seen = 1, set()
            for _ in range(self.q - 1):
                x = int(self.mul[x, g])
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        raise AssertionError("no primitive element")

    def trace(self, x):
        """Absolute trace to F_p, returned as an int in 0..p-1."""
        acc, y = 0, x
        for _ in range(self.k):
            acc = int(self.add[acc, y])
            y = self.power(y, self.p)
        assert acc < self.p
        return acc

    def power(self, x, e):
        out = 1
        for _ in range(e):
            out = int(self.mul[out, x])
        return out

    def scalar(self, n):
        """Image of the integer n in F_q."""
        return n % self.p

    def label(self, x):
        if self.q == 4:
            return ("0", "1", "w", "w^2")[x]
        return str(x)

    def check_axioms(self):
        """Exhaustive field-axiom check; returns a list of failure strings."""
        q, add, mul = self.q, self.add, self.mul
        bad = []
        r = range(q)
        for x, y, z in product(r, r, r):
            if add[add[x, y], z] != add[x, add[y, z]]:
                bad.append(f"add not associative at {(x, y, z)}")
            if mul[mul[x, y], z] != mul[x, mul[y, z]]:
                bad.append(f"mul not associative at {(x, y, z)}")
            if mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
                bad.append(f"not distributive at {(x, y, z)}")
            if len(bad) > 5:
                return bad
        for x, y in product(r, r):
            if add[x, y] != add[y, x] or mul[x, y] != mul[y, x]:
                bad.append(f"not commutative at {(x, y)}")
        for x in r:
            if add[x, 0] != x or mul[x, 1] != x:
                bad.append(f"identity fails at {x}")
            if add[x, self.neg[x]] != 0:
                bad.append(f"no additive inverse for {x}")
            if x and mul[x, self.inv[x]] != 1:
                bad.append(f"no multiplicative inverse for {x}")
        return bad

    def __eq__(self, other):
        return isinstance(other, FieldAlphabet) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __repr__(self):
        return f"FieldAlphabet(q={self.q})"


@lru_cache(maxsize=None)
def _tables(q):
    p, k = is_prime_power(q)
    if k == 1:
        a = np.arange(p)
        return (a[:, None] + a[None, :]) % p, (a[:, None] * a[None, :]) % p
    if (p, k) not in _MODULI:
        raise ValueError(f"no modulus stored for F_{q}")
    low = _MODULI[(p, k)]

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def encode(d):
        return sum(c * p**i for i, c in enumerate(d))

    def polymul(a, b):
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod_[i + j] += x * y
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod_[deg] % p
            if c:
                prod_[deg] = 0
                for i, g in enumerate(low):
                    prod_[deg - k + i] -= c * g
        return [c % p for c in prod_[:k]]

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(q):
            dx, dy = digits(x), digits(y)
            add[x, y] = encode([(a + b) % p for a, b in zip(dx, dy)])
            mul[x, y] = encode(polymul(dx, dy))
    return add, mul


@lru_cache(maxsize=None)
def field(q):
    return FieldAlphabet(q)
