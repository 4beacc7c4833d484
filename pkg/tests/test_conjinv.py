from math import comb, prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffordweil import codes as cd
from cliffordweil import conjinv as ci
from cliffordweil.cyclo import CycNum
from cliffordweil.errors import ConsistencyError
from cliffordweil.typespec import TwistedSum, builtin
from conftest import classes, closed_group, group
from oracles import MAIN, SIGMA_ISOTROPIC, TWO_II_DIMS


# ----------------------------------------------------------------------
# monomials


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.sampled_from([2, 4]), st.data())
def test_monomial_count_formula(v, n, data):
    d = tuple(data.draw(st.lists(st.integers(0, 5), min_size=n, max_size=n)))
    assert ci.monomial_count(v, d) == prod(comb(dj + v - 1, dj) for dj in d)
    if ci.monomial_count(v, d) <= 20000:
        mons = ci.monomials_of_degree(v, d)
        assert len(mons) == len(set(mons)) == ci.monomial_count(v, d)
        assert all(m.degree == d for m in mons)
        assert [m.sort_key() for m in mons] == sorted(m.sort_key() for m in mons)


@st.composite
def poly(draw, v=3, n=2):
    d = tuple(draw(st.integers(0, 2)) for _ in range(n))
    mons = ci.monomials_of_degree(v, d)
    picks = draw(st.lists(st.integers(0, len(mons) - 1), min_size=1, max_size=4))
    return ci.ConjPoly({mons[i]: draw(st.integers(-3, 3)) or 1 for i in picks}, v, n)


@settings(max_examples=40, deadline=None)
@given(poly(), poly())
def test_grading_and_ring_laws(p, r):
    (dp,), (dr,) = p.degrees(), r.degrees()
    assert (p * r).degrees() <= {tuple(a + b for a, b in zip(dp, dr))}
    assert p * r == r * p
    assert (p + r) - r == p
    assert (p * r).at_ones() == p.at_ones() * r.at_ones()


@settings(max_examples=40, deadline=None)
@given(poly(v=9), poly(v=9))
def test_phi_projection_is_ring_hom(p, r):
    assert ci.phi_projection(p * r, 3) == ci.phi_projection(p, 3) * ci.phi_projection(r, 3)
    assert ci.phi_projection(p + r, 3) == ci.phi_projection(p, 3) + ci.phi_projection(r, 3)


def test_phi_projection_constant():
    c = ci.ConjPoly.constant(CycNum.rational(7), 9, 2)
    assert ci.phi_projection(c, 3) == ci.ConjPoly.constant(CycNum.rational(7), 3, 2)


# ----------------------------------------------------------------------
# weight enumerators


def _sample_codes(name, N):
    return cd.enumerate_codes(TwistedSum.nn(builtin(name), N))


@pytest.mark.parametrize("m", [1, 2])
def test_ccwe_at_ones(type_name, m):
    for C in _sample_codes(type_name, 2):
        P = ci.ccwe(C, m)
        assert P.at_ones() == CycNum.rational(C.size**m)
        assert P.degrees() == {C.ts.degree}


@pytest.mark.parametrize("m", [1, 2])
def test_sigma_of_fwe_is_ccwe(type_name, m):
    for C in _sample_codes(type_name, 2):
        w = ci.fwe(C, m)
        assert w.sum() == C.size**m
        assert ci.sigma(w, C.ts, m) == ci.ccwe(C, m)


def test_phi_tower(type_name):
    q = builtin(type_name).q
    for C in _sample_codes(type_name, 3):
        assert ci.phi_projection(ci.ccwe(C, 2), q) == ci.ccwe(C, 1)


def test_ccwe_of_direct_sum_is_product():
    t = builtin("5_1E")
    A = cd.identity_plus(t, 3, 4)
    B = cd.trivial(t, 1)
    S = cd.direct_sum(A, B)
    for m in (1, 2):
        assert ci.ccwe(S, m) == ci.ccwe(A, m) * ci.ccwe(B, m)


def test_ccwe_trivial_code_3_1E():
    t = builtin("3_1E")
    P = ci.ccwe(cd.trivial(t, 1), 1)
    assert {m.blocks: c for m, c in P.terms.items()} == {((i,), (i,)): CycNum.rational(1) for i in range(3)}


# ----------------------------------------------------------------------
# invariant dimensions


DENSE_CASES = [("3_1E", (1, 1)), ("3_1E", (2, 1)), ("3_1E", (2, 2)), ("5_1E", (1, 0, 0, 1)),
               ("2II", (1, 0, 0, 1)), ("2II", (2, 0, 0, 2)), ("4II_E", (2, 2)), ("4II_E", (1, 0))]


@pytest.mark.parametrize("name,d", DENSE_CASES)
def test_orbit_method_matches_dense(name, d):
    G = group(name)
    assert ci.invariant_dim(G, d) == ci.invariant_dim(G, d, method="dense")


def test_degree_zero():
    assert ci.invariant_dim(group("3_1E"), (0, 0)) == 1


@pytest.mark.parametrize("name,caps", [("3_1E", (2, 2)), ("4II_E", (2, 2)), ("2II", (3, 0, 0, 3))])
def test_molien_matches_dims(name, caps):
    G = closed_group(name)
    s = ci.molien(G, caps)
    for d, c in s.coeffs.items():
        f = c.to_fraction()
        assert f.denominator == 1 and f >= 0
        assert f == ci.invariant_dim(G, d), d


def test_molien_2II_diagonal():
    s = ci.molien(closed_group("2II"), (5, 0, 0, 5))
    assert [s[(N, 0, 0, N)].to_fraction() for N in range(6)] == TWO_II_DIMS


def test_certificate_path_agrees():
    G = group("4II_E")
    ts = TwistedSum.nn(builtin("4II_E"), 4)
    fs = ci.fixed_space(G, *ci.block_layout(G, ts.degree))
    exact = ci.fixed_dim(fs)
    lower = ci.ccwe_rank(classes("4II_E", 4).classes, 1)
    assert ci.fixed_dim(fs, lower=lower, pair_cap=0) == exact == lower


def test_inconsistent_lower_bound_raises():
    G = group("3_1E")
    fs = ci.fixed_space(G, *ci.block_layout(G, (2, 2)))
    with pytest.raises(ConsistencyError):
        ci.fixed_dim(fs, lower=5, pair_cap=0)


# ----------------------------------------------------------------------
# invariance


@pytest.mark.parametrize("name", ["3_1E", "5_1E", "2II"])
def test_act_fixes_ccwe(name):
    G = group(name)
    exps = ci._ambient_exponents(G.t)
    for C in _sample_codes(name, 1 if name == "5_1E" else 2):
        P = ci.ccwe(C, 1)
        for label, g in G.labeled():
            assert ci.act(g, P, exps) == P, label


def test_act_moves_a_non_invariant():
    G = group("3_1E")
    exps = ci._ambient_exponents(G.t)
    P = ci.ConjPoly({ci.ConjMonomial([(0,), (1,)], 3): 1}, 3, 2)
    assert any(ci.act(g, P, exps) != P for g in G.matrices)


@pytest.mark.parametrize("m", [1, 2])
def test_enumerators_invariant(type_name, m):
    G = group(type_name, m)
    ts = TwistedSum.nn(builtin(type_name), 3)
    fs = ci.fixed_space(G, *ci.block_layout(G, ts.degree))
    eqs = ci.orbit_equations(fs)
    for C in cd.enumerate_codes(ts):
        assert ci.enumerator_invariant(C, G)
        assert ci.is_invariant_counts(fs, ci.ccwe_counts(C, m), eqs)


def test_non_code_is_not_invariant():
    t = builtin("3_1E")
    ts = TwistedSum.nn(t, 2)
    G = group("3_1E")
    fake = cd.Code(ts, np.array([[1, 0, 1, 0], [0, 1, 0, 2]]))
    assert not cd.is_type(fake)
    assert not ci.enumerator_invariant(fake, G)
    fs = ci.fixed_space(G, *ci.block_layout(G, ts.degree))
    assert not ci.is_invariant_counts(fs, ci.ccwe_counts(fake, 1))


# ----------------------------------------------------------------------
# main theorem and the sign condition


@pytest.mark.parametrize("key", [k for k in MAIN if k[1] <= 3])
def test_verify_main_small(key):
    name, N, m = key
    rep = ci.verify_main(TwistedSum.nn(builtin(name), N), m, classes(name, N), group(name, m))
    assert rep.verdict == "PASS"
    assert rep.rank == rep.invariant_dim == MAIN[key]
    assert "verdict = PASS" in rep.format()


def test_verify_main_refuses_without_sign_condition():
    rep = ci.verify_main(TwistedSum(builtin("5_1E"), (1, 2, 2, 2)))
    assert rep.verdict == "REFUSED"
    assert rep.classes == 0 and rep.rank == 0


def test_counterexample_demo():
    rep = ci.counterexample_demo()
    assert all(ok for ok, _ in rep.values()), rep
    assert rep["|I|"][1] == f"|I| = {SIGMA_ISOTROPIC}"
    assert rep["h(Sigma) = -Sigma"][0]
