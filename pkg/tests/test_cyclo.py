from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cliffordweil.cyclo import (
    CycNum, GaloisAut, apply_aut, canonical_conductor, format_cyc, gauss_sqrt, parse_cyc, totient, units,
)

CONDUCTORS = [1, 3, 4, 5, 8, 12]


@st.composite
def cyc(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    num = draw(st.lists(st.integers(-6, 6), min_size=totient(m), max_size=totient(m)))
    den = draw(st.integers(1, 5))
    return CycNum(m, num, den)


@st.composite
def cyc_pair(draw):
    m = draw(st.sampled_from(CONDUCTORS))
    return draw(cyc(m)), draw(cyc(m)), draw(cyc(m))


@given(cyc_pair())
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == CycNum.zero(x.m)


@given(cyc())
def test_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == CycNum.one(x.m)


@given(cyc_pair(), st.integers(0, 100))
def test_galois_is_ring_hom(xyz, a):
    x, y, _ = xyz
    us = units(x.m)
    g = GaloisAut(x.m, us[a % len(us)])
    assert apply_aut(g, x * y) == apply_aut(g, x) * apply_aut(g, y)
    assert apply_aut(g, x + y) == apply_aut(g, x) + apply_aut(g, y)


@given(cyc())
def test_complex_embedding_is_a_hom(x):
    y = x * x + x
    assert abs(complex(y) - (complex(x) ** 2 + complex(x))) < 1e-9


@given(cyc())
def test_format_parse_roundtrip(x):
    assert parse_cyc(format_cyc(x)) == x


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27])
def test_gauss_sqrt_squares_to_q(q):
    r = gauss_sqrt(q)
    assert r * r == CycNum.rational(q)
    assert complex(r).real > 0 and abs(complex(r).imag) < 1e-12


def test_roots_of_unity():
    for m in (3, 4, 5, 6, 8, 10, 12):
        z = CycNum.root(m)
        assert z**m == CycNum.one()
        assert all(z**k != CycNum.one() for k in range(1, m))


def test_canonical_conductor():
    assert canonical_conductor(6) == 3
    assert canonical_conductor(10) == 5
    assert canonical_conductor(4) == 4


def test_rational_parts():
    x = CycNum.rational(Fraction(3, 4), 5)
    assert x.is_rational() and x.to_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        CycNum.root(5).to_fraction()


def test_embed_restrict_roundtrip():
    x = CycNum.root(4) + CycNum.rational(2)
    assert x.embed(12).restrict(4) == x
    assert gauss_sqrt(3).minimal().m == 12
