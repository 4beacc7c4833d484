from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffordweil import codes as cd
from cliffordweil.errors import PreconditionError
from cliffordweil.typespec import TwistedSum, builtin
from conftest import classes
from oracles import AUT_ORDERS_N4, CLASS_COUNTS, CODE_COUNTS


def _counts_cases():
    for name, counts in CODE_COUNTS.items():
        for N, t in enumerate(counts, 1):
            yield name, N, t


@pytest.mark.parametrize("name,N,t", list(_counts_cases()))
def test_code_counts(name, N, t):
    assert len(cd.enumerate_codes(TwistedSum.nn(builtin(name), N))) == t


@pytest.mark.parametrize("name", list(CLASS_COUNTS))
def test_class_counts_and_mass(name):
    for N, c in enumerate(CLASS_COUNTS[name], 1):
        cl = classes(name, N)
        assert len(cl.classes) == c
        assert cl.t == CODE_COUNTS[name][N - 1]
        assert cd.mass_check(cl)
        assert sum(cl.orbit_sizes) == cl.t


@pytest.mark.parametrize("name", ["4II_E", "5_1E"])
def test_aut_orders_n4(name):
    cl = classes(name, 4)
    assert sorted(cl.aut_orders, reverse=True) == AUT_ORDERS_N4[name]
    assert [cd.aut_order(C) for C in cl.classes] == cl.aut_orders


@pytest.mark.parametrize("name,N", [("4II_E", 3), ("3_1E", 4), ("5_1E", 3), ("2II", 4)])
def test_neighbors_agree_with_bruteforce(name, N):
    ts = TwistedSum.nn(builtin(name), N)
    bf = classes(name, N)
    nb = cd.classify_neighbors(ts, cd.trivial(ts.base, N), bf.t)
    assert cd.same_classes(bf, nb)
    assert cd.mass_check(nb)


def test_all_enumerated_codes_are_of_type(type_name):
    for C in cd.enumerate_codes(TwistedSum.nn(builtin(type_name), 3)):
        assert cd.is_self_dual(C) and cd.is_isotropic(C) and C.k == 3


@pytest.mark.parametrize("name", ["4II_E", "3_1E", "5_1E", "2II"])
def test_listed_codes_are_representatives(name):
    for label, C in cd.listed_codes(name):
        assert cd.is_type(C), label
        assert cd.is_indecomposable(C) or label.startswith("Double"), label
        N = C.N // 2
        reps = classes(name, N).classes
        assert sum(cd.equivalent(R, C) is not None for R in reps) == 1, label


def test_double_of_self_dual_code_splits_in_two():
    D = cd.double(cd.Q4(builtin("4II_E")))
    assert len(cd.decompose(D)) == 2
    assert len(cd.balanced_summands(D)) == 1


def test_2II_indecomposables():
    found = []
    for N in range(1, 6):
        for S in cd.indecomposable_classes(classes("2II", N)):
            found.append(S.N // 2)
    assert sorted(set(found)) == [1, 4]


@pytest.mark.parametrize("name,N", [("3_1E", 4), ("5_1E", 3), ("5_1E", 4), ("4II_E", 2)])
def test_double_cosets_subset_of_classes(name, N):
    ts = TwistedSum.nn(builtin(name), N)
    reps = classes(name, N).classes
    for C in cd.double_cosets(ts):
        assert cd.is_type(C)
        assert any(cd.equivalent(R, C) is not None for R in reps)


def test_double_cosets_contain_identity_plus():
    t = builtin("3_1E")
    ts = TwistedSum.nn(t, 4)
    target = cd.identity_plus(t, 4, 2)
    assert any(cd.equivalent(C, target) is not None for C in cd.double_cosets(ts))
    t5 = builtin("5_1E")
    target = cd.identity_plus(t5, 4, 3)
    assert any(cd.equivalent(C, target) is not None for C in cd.double_cosets(TwistedSum.nn(t5, 4)))


def test_no_codes_for_bad_twist():
    assert cd.enumerate_codes(TwistedSum(builtin("5_1E"), (1, 2, 2, 2))) == []
    assert cd.enumerate_codes(TwistedSum(builtin("3_1E"), (1,))) == []


def test_dual_and_self_duality():
    C = cd.trivial(builtin("5_1E"), 2)
    assert cd.dual(C) == C
    ts = C.ts
    half = cd.Code(ts, C.gens[:1])
    assert not cd.is_self_dual(half)
    assert cd.dual(cd.dual(half)) == half


def test_neighbor_is_of_type():
    t = builtin("3_1E")
    ts = TwistedSum.nn(t, 3)
    C = cd.trivial(t, 3)
    n = 0
    for x in cd.isotropic_lines(ts):
        if C.contains(x):
            continue
        D = cd.neighbor(C, x)
        assert cd.is_type(D)
        n += 1
    assert n > 0


def test_neighbor_rejects_codeword():
    C = cd.trivial(builtin("3_1E"), 2)
    with pytest.raises(PreconditionError):
        cd.neighbor(C, C.gens[0])


@st.composite
def code_and_perm(draw):
    name = draw(st.sampled_from(["3_1E", "5_1E", "4II_E", "2II"]))
    N = draw(st.integers(2, 3))
    pool = cd.enumerate_codes(TwistedSum.nn(builtin(name), N))
    C = pool[draw(st.integers(0, len(pool) - 1))]
    perm = cd.block_permutations(C.ts)[draw(st.integers(0, cd.block_group_order(C.ts) - 1))]
    return C, tuple(int(p) for p in perm)


@settings(max_examples=40, deadline=None)
@given(code_and_perm())
def test_block_permutation_equivalence(cp):
    C, perm = cp
    D = C.permuted(perm)
    assert cd.is_type(D)
    pi = cd.equivalent(C, D)
    assert pi is not None and C.permuted(pi) == D
    assert cd.equivalent(D, C) is not None
    assert cd.signature(C) == cd.signature(D)
    assert cd.canonical_form(C) == cd.canonical_form(D)
    assert cd.aut_order(C) == cd.aut_order(D)


@settings(max_examples=30, deadline=None)
@given(code_and_perm())
def test_format_parse_roundtrip(cp):
    C, _ = cp
    assert cd.parse_code(cd.format_code(C)) == C


def test_direct_sum_is_of_type():
    t = builtin("5_1E")
    A = cd.identity_plus(t, 3, 4)
    S = cd.direct_sum(A, cd.trivial(t, 1))
    assert cd.is_type(S) and S.N == 8
    assert len(cd.decompose(S)) == 2


def test_mass_rational():
    cl = classes("4II_E", 4)
    assert cl.mass() == Fraction(cl.t, 24 * 24)


def test_code_rejects_bad_entries():
    ts = TwistedSum.nn(builtin("3_1E"), 1)
    with pytest.raises(PreconditionError):
        cd.Code(ts, np.array([[3, 1]]))
