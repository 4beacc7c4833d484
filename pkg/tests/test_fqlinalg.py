import numpy as np
from hypothesis import given, settings, strategies as st

from cliffordweil.fields import field
from cliffordweil.fqlinalg import all_vectors, dot, matmul, nullspace, rank, rref, span_all

QS = [2, 3, 4, 5, 7, 8, 9]


@st.composite
def matrix(draw):
    q = draw(st.sampled_from(QS))
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 6))
    vals = draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c))
    return field(q), np.array(vals, dtype=np.int64).reshape(r, c)


@given(st.sampled_from(QS))
def test_field_axioms(q):
    assert field(q).check_axioms() == []


@given(matrix())
def test_rank_nullity(FM):
    F, M = FM
    assert rank(F, M) + len(nullspace(F, M)) == M.shape[1]


@given(matrix())
def test_nullspace_is_orthogonal(FM):
    F, M = FM
    K = nullspace(F, M)
    if len(K):
        assert not dot(F, M[:, None, :], K[None, :, :]).any()


@given(matrix())
def test_rref_idempotent_and_same_span(FM):
    F, M = FM
    R, piv = rref(F, M)
    R2, piv2 = rref(F, R)
    assert np.array_equal(R, R2) and piv == piv2
    if len(R):
        a = {tuple(r) for r in span_all(F, R)}
        b = {tuple(r) for r in span_all(F, M)}
        assert a == b


def test_all_vectors_order():
    V = all_vectors(3, 2)
    assert V.shape == (9, 2)
    assert V[1].tolist() == [0, 1] and V[3].tolist() == [1, 0]


def test_matmul_identity():
    F = field(4)
    A = np.array([[1, 2], [3, 1]])
    assert np.array_equal(matmul(F, A, np.eye(2, dtype=np.int64)), A)


def test_f4_labels_and_trace():
    F = field(4)
    assert [F.label(x) for x in range(4)] == ["0", "1", "w", "w^2"]
    assert [F.trace(x) for x in range(4)] == [0, 0, 1, 1]
    assert F.mul[2, 2] == 3 and F.add[2, 3] == 1
