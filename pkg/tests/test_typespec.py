from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffordweil.cyclo import CycNum, apply_aut, gauss_sqrt
from cliffordweil.typespec import (
    BUILTIN_NAMES, TwistedSum, builtin, dump_type, galois_setup, is_valid, load_type, make_type,
    sign_condition, sign_epsilon, validate,
)
from oracles import LEGENDRE_5


def test_builtins_validate(type_name):
    rep = validate(builtin(type_name))
    assert all(ok for ok, _ in rep.values()), rep


@pytest.mark.parametrize("name,f,n", [("2II", 8, 4), ("3_1E", 3, 2), ("5_1E", 5, 4), ("4II_E", 4, 2)])
def test_conductor_and_gamma(name, f, n):
    t = builtin(name)
    assert t.conductor == f
    assert galois_setup(t).n == n


def test_2II_conductor_is_a_diagnostic():
    detail = validate(builtin("2II"))["conductor"][1]
    assert detail.startswith("DIAGNOSTIC")


def test_gamma_fixes_F():
    for name in BUILTIN_NAMES:
        g = galois_setup(builtin(name))
        for _, r in g.fixed_roots:
            assert all(apply_aut(aut, r) == r for aut in g.gamma)


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_epsilon_is_legendre_for_5(a):
    assert sign_epsilon(builtin("5_1E"), 1, a) == LEGENDRE_5[a]


def test_epsilon_multiplicative():
    for name in BUILTIN_NAMES:
        t = builtin(name)
        f = t.conductor
        us = galois_setup(t).unit_exponents
        for a in us:
            for b in us:
                assert sign_epsilon(t, 1, a * b % f) == sign_epsilon(t, 1, a) * sign_epsilon(t, 1, b)


def test_epsilon_trivial_for_p_3_mod_4():
    t = builtin("3_1E")
    assert all(sign_epsilon(t, 1, a) == 1 for a in (1, 2))


def test_sign_condition_examples():
    t = builtin("5_1E")
    assert not sign_condition(TwistedSum(t, (1, 2, 2, 2)))
    assert sign_condition(TwistedSum(t, (2, 2)))
    assert sign_condition(TwistedSum.nn(t, 3))


def test_degree_vectors():
    assert TwistedSum(builtin("5_1E"), (1, 2, 2, 2)).degree == (1, 3, 0, 0)
    assert TwistedSum.nn(builtin("2II"), 3).degree == (3, 0, 0, 3)
    assert TwistedSum.nn(builtin("3_1E"), 2).degree == (2, 2)


@given(st.lists(st.sampled_from([1, 2, 3, 4]), min_size=1, max_size=8))
def test_twisted_sum_blocks_partition(twist):
    ts = TwistedSum(builtin("5_1E"), twist)
    flat = sorted(i for b in ts.blocks for i in b)
    assert flat == list(range(len(twist)))
    assert sum(ts.degree) == len(twist)


def test_bad_twist_rejected():
    with pytest.raises(ValueError):
        TwistedSum(builtin("5_1E"), (5,))


def test_dump_load_roundtrip(type_name):
    t = builtin(type_name)
    u = load_type(dump_type(t))
    assert u.beta == t.beta and tuple(u.phi_gens) == tuple(t.phi_gens) and u.conductor == t.conductor


def test_invalid_types_detected():
    # singular form
    zero = [[Fraction(0)] * 3 for _ in range(3)]
    t = make_type(3, zero, [[Fraction(0)] * 3], 3, "bad")
    assert not validate(t)["beta_nonsingular"][0]
    # phi with phi(0) != 0
    beta = builtin("3_1E").beta
    t = make_type(3, beta, [[Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)]], 3, "bad")
    assert not is_valid(t)


def test_quadratic_type_has_no_linear_phase():
    t = builtin("5E")
    assert is_valid(t)
    assert len(t.phi_gens) == 1


def test_gauss_sqrt_galois_sign():
    r = gauss_sqrt(5)
    g = galois_setup(builtin("5_1E"))
    assert apply_aut(g.aut(2), r) == -r
    assert apply_aut(g.aut(4), r) == r
