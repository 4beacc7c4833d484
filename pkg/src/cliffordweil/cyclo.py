"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as integer numerators over the power basis
zeta^0, ..., zeta^(phi(m)-1) (reduced modulo the m-th cyclotomic polynomial)
together with one positive common denominator.  Conductors congruent to
2 mod 4 are folded to m/2, so every element has a unique normal form and
can be hashed.
"""

from fractions import Fraction
from numbers import Integral
from functools import lru_cache, reduce
from math import gcd
import re

import sympy


def _lcm(a, b):
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def totient(m):
    return int(sympy.totient(m))


def canonical_conductor(m):
    if m <= 0:
        raise ValueError("conductor must be positive")
    if m % 4 == 2:
        return m // 2
    return m


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m):
    """Integer coefficients (low degree first) of the m-th cyclotomic polynomial."""
    # Phi_m = prod_{d | m} (x^d - 1)^mu(m/d)
    num = [1]
    den = [1]

    def mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    out[i + j] += a * b
        return out

    for d in sympy.divisors(m):
        mu = sympy.mobius(m // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = mul(num, factor)
        else:
            den = mul(den, factor)
    # exact division num / den
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, b in enumerate(den):
            num[k + j] -= c * b
    assert not any(num), "cyclotomic division left a remainder"
    return tuple(out)


@lru_cache(maxsize=None)
def power_table(m):
    """Row k is zeta_m^k (0 <= k < m) written in the reduced power basis."""
    n = totient(m)
    phi_poly = cyclotomic_coeffs(m)
    rows = []
    cur = [0] * n
    cur[0] = 1
    for k in range(m):
        rows.append(tuple(cur))
        # multiply by zeta: shift and reduce x^n = -sum c_i x^i
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for i in range(n):
                nxt[i] -= top * phi_poly[i]
        cur = nxt
    return tuple(rows)


def _reduce_exponents(m, acc):
    """Collapse a length-m list indexed by exponent into the power basis."""
    n = totient(m)
    table = power_table(m)
    out = list(acc[:n])
    for k in range(n, m):
        a = acc[k]
        if a:
            row = table[k]
            for i in range(n):
                if row[i]:
                    out[i] += a * row[i]
    return out


class CycNum:
    """Element of Q(zeta_m), immutable."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m, num, den=1):
        # internal constructor: num is a sequence of ints of length phi(m)
        if den < 0:
            den = -den
            num = [-a for a in num]
        g = reduce(gcd, num, den)
        if g > 1:
            num = [a // g for a in num]
            den //= g
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("CycNum is immutable")

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def rational(cls, value, m=1):
        value = Fraction(value)
        m = canonical_conductor(m)
        num = [0] * totient(m)
        num[0] = value.numerator
        return cls(m, num, value.denominator)

    @classmethod
    def zero(cls, m=1):
        m = canonical_conductor(m)
        return cls(m, [0] * totient(m), 1)

    @classmethod
    def one(cls, m=1):
        return cls.rational(1, m)

    @classmethod
    def root(cls, m, k=1):
        """zeta_m ** k."""
        if m % 4 == 2:
            # zeta_{2h} = -zeta_h^((h+1)/2) for odd h
            h = m // 2
            e = (k * ((h + 1) // 2)) % h if h > 1 else 0
            sign = -1 if k % 2 else 1
            return cls(h, [sign * c for c in power_table(h)[e]], 1)
        return cls(m, list(power_table(m)[k % m]), 1)

    @classmethod
    def from_exponents(cls, m, acc, den=1):
        """Build sum_k acc[k] zeta_m^k / den from a length-m exponent vector."""
        if m % 4 == 2:
            h = m // 2
            out = [0] * h
            for k, a in enumerate(acc):
                if a:
                    sign = -1 if k % 2 else 1
                    e = (k * ((h + 1) // 2)) % h if h > 1 else 0
                    out[e] += sign * a
            return cls.from_exponents(h, out, den)
        return cls(m, _reduce_exponents(m, list(acc)), den)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, Fraction):
            return cls.rational(x)
        if isinstance(x, Integral):
            return cls.rational(int(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # ------------------------------------------------------------------
    # basic queries

    @property
    def conductor(self):
        return self.m

    @property
    def coeffs(self):
        return tuple(Fraction(a, self.den) for a in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def embed(self, m2):
        """Image in Q(zeta_m2); m2 must be a multiple of the conductor."""
        m2 = canonical_conductor(m2)
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise ValueError(f"cannot embed conductor {self.m} into {m2}")
        step = m2 // self.m
        acc = [0] * m2
        for k, a in enumerate(self.num):
            if a:
                acc[k * step] += a
        return CycNum(m2, _reduce_exponents(m2, acc), self.den)

    def restrict(self, m2):
        """Rewrite in Q(zeta_m2) for m2 | m, or raise if the element is not there."""
        m2 = canonical_conductor(m2)
        if m2 == self.m:
            return self
        if self.m % m2:
            return self.embed(m2)
        n2 = totient(m2)
        basis = [CycNum.root(m2, k).embed(self.m).num for k in range(n2)]
        mat = sympy.Matrix([list(row) for row in basis]).T
        rhs = sympy.Matrix(list(self.num))
        try:
            sol, params = mat.gauss_jordan_solve(rhs)
        except ValueError:
            raise ValueError(f"{self} does not lie in Q(zeta_{m2})") from None
        if params.shape[0]:
            raise ValueError("degenerate subfield basis")
        vals = [Fraction(int(s.p), int(s.q)) * Fraction(1, self.den) for s in sol]
        den = reduce(_lcm, (v.denominator for v in vals), 1)
        return CycNum(m2, [int(v * den) for v in vals], den)

    def minimal(self):
        """Same element at the smallest conductor containing it."""
        best = self
        for d in sorted(sympy.divisors(self.m)):
            if canonical_conductor(d) != d or d == self.m:
                continue
            try:
                return self.restrict(d)
            except ValueError:
                continue
        return best

    # ------------------------------------------------------------------
    # arithmetic

    def _unify(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.coerce(other)
        if other.m == self.m:
            return self, other
        m = canonical_conductor(_lcm(self.m, other.m))
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            x, y = self._unify(other)
        except TypeError:
            return NotImplemented
        if x.den == y.den:
            return CycNum(x.m, [a + b for a, b in zip(x.num, y.num)], x.den)
        return CycNum(x.m, [a * y.den + b * x.den for a, b in zip(x.num, y.num)], x.den * y.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, [-a for a in self.num], self.den)

    def __sub__(self, other):
        try:
            x, y = self._unify(other)
        except TypeError:
            return NotImplemented
        return x + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycNum(self.m, [a * other.numerator for a in self.num], self.den * other.denominator)
        try:
            x, y = self._unify(other)
        except TypeError:
            return NotImplemented
        m = x.m
        acc = [0] * m
        for i, a in enumerate(x.num):
            if a:
                for j, b in enumerate(y.num):
                    if b:
                        acc[(i + j) % m] += a * b
        return CycNum(m, _reduce_exponents(m, acc), x.den * y.den)

    __rmul__ = __mul__

    def conjugates(self):
        """All images under Gal(Q(zeta_m)/Q), identity first."""
        return [apply_aut(GaloisAut(self.m, a), self) for a in units(self.m)]

    def norm(self):
        prod = CycNum.one(self.m)
        for y in self.conjugates():
            prod = prod * y
        return prod.to_fraction()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("CycNum division by zero")
        if self.is_rational():
            return CycNum.rational(1 / self.to_fraction(), self.m)
        conj = self.conjugates()[1:]
        prod = CycNum.one(self.m)
        for y in conj:
            prod = prod * y
        nrm = (self * prod).to_fraction()
        return prod * (1 / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("CycNum division by zero")
            return self * (1 / Fraction(other))
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycNum.one(self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        """Complex conjugate (the automorphism zeta -> zeta^-1)."""
        return apply_aut(GaloisAut(self.m, -1), self)

    # ------------------------------------------------------------------
    # comparison, hashing, display

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.m == other.m:
            return self.den == other.den and self.num == other.num
        x, y = self._unify(other)
        return x.den == y.den and x.num == y.num

    def __hash__(self):
        # hash is only consistent across conductors for rationals; group
        # elements are always compared at a fixed ambient conductor
        if self._hash is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.m, self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(a * z**k for k, a in enumerate(self.num)) / self.den

    def evalf(self, dps=40):
        import mpmath

        with mpmath.workdps(dps):
            z = mpmath.exp(2j * mpmath.pi / self.m)
            return sum(a * z**k for k, a in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"CycNum({self})"

    def __str__(self):
        return format_cyc(self)


def units(m):
    return [a for a in range(1, m + 1) if gcd(a, m) == 1] if m > 1 else [1]


class GaloisAut:
    """The automorphism zeta_m -> zeta_m^a of Q(zeta_m)."""

    __slots__ = ("m", "a")

    def __init__(self, m, a):
        m = canonical_conductor(m)
        a %= m
        if m == 1:
            a = 1
        if gcd(a, m) != 1:
            raise ValueError(f"exponent {a} is not a unit mod {m}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a)

    def __setattr__(self, key, value):
        raise AttributeError("GaloisAut is immutable")

    @property
    def conductor(self):
        return self.m

    @property
    def exponent(self):
        return self.a

    def __mul__(self, other):
        m = canonical_conductor(_lcm(self.m, other.m))
        # lift both exponents to units mod m compatible with the originals
        return GaloisAut(m, _lift_unit(self.a, self.m, m) * _lift_unit(other.a, other.m, m))

    def __call__(self, x):
        return apply_aut(self, x)

    def __eq__(self, other):
        return isinstance(other, GaloisAut) and (self.m, self.a) == (other.m, other.a)

    def __hash__(self):
        return hash((self.m, self.a))

    def __repr__(self):
        return f"GaloisAut(m={self.m}, a={self.a})"


def _lift_unit(a, m, big):
    """Smallest b mod big with b = a mod m and gcd(b, big) = 1."""
    for b in range(a % m if m > 1 else 0, big + 1, m if m > 1 else 1):
        if b and gcd(b, big) == 1:
            return b
    raise ValueError("no unit lift")


def apply_aut(sigma, x):
    x = CycNum.coerce(x)
    if x.is_rational():
        return x
    m = sigma.m
    if m % x.m:
        raise ValueError(f"automorphism of conductor {m} cannot act on conductor {x.m}")
    if x.m != m:
        x = x.embed(m)
    acc = [0] * m
    a = sigma.a
    for k, c in enumerate(x.num):
        if c:
            acc[(a * k) % m] += c
    return CycNum(m, _reduce_exponents(m, acc), x.den)


def is_prime_power(q):
    if q < 2:
        return None
    f = sympy.factorint(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


@lru_cache(maxsize=None)
def gauss_sqrt(q):
    """Positive square root of a prime power q as an exact cyclotomic number.

    Odd prime roots come from the quadratic Gauss sum; sqrt(2) is
    zeta_8 + zeta_8^-1.
    """
    pk = is_prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    p, k = pk
    scale = p ** (k // 2)
    if k % 2 == 0:
        return CycNum.rational(scale)
    if p == 2:
        root = CycNum.root(8, 1) + CycNum.root(8, 7)
    else:
        g = CycNum.zero(p)
        for t in range(p):
            g = g + CycNum.root(p, t * t)
        if p % 4 == 1:
            root = g
        else:
            # the Gauss sum equals i*sqrt(p) here
            root = CycNum.root(4, 3) * g
    return root * scale


def sqrt_conductor(q):
    """Conductor of gauss_sqrt(q)."""
    return gauss_sqrt(q).m


# ----------------------------------------------------------------------
# textual form:  "a0 + a1*z^1 + ... @m"

def format_cyc(x):
    out = ""
    for k, a in enumerate(x.num):
        if not a:
            continue
        c = Fraction(a, x.den)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            term = str(c)
        elif c == 1:
            term = f"z^{k}"
        else:
            term = f"{c}*z^{k}"
        if not out:
            out = term if sign == "+" else f"-{term}"
        else:
            out += f" {sign} {term}"
    return f"{out or '0'} @{x.m}"


_TERM = re.compile(r"([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*z(?:\^(\d+))?)?")


def parse_cyc(text):
    """Inverse of format_cyc; the conductor suffix "@m" defaults to 1."""
    body, sep, m = text.rpartition("@")
    if not sep:
        body, m = text, "1"
    m = int(m)
    acc = [Fraction(0)] * m
    pos = 0
    body = body.strip()
    seen = False
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        match = _TERM.match(body, pos)
        sign, coeff, zpart, exp = match.groups()
        if match.end() == pos or (coeff is None and zpart is None):
            raise ValueError(f"cannot parse {text!r} at {body[pos:]!r}")
        if seen and sign is None:
            raise ValueError(f"missing operator in {text!r}")
        c = Fraction(coeff) if coeff is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = (int(exp) if exp is not None else 1) if zpart else 0
        acc[e % m] += c
        pos = match.end()
        seen = True
    den = reduce(_lcm, (c.denominator for c in acc), 1)
    return CycNum.from_exponents(m, [int(c * den) for c in acc], den)
