from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcat.kernel import (
    GF,
    ExactMatrix,
    FieldMismatch,
    FieldSpec,
    IntMatrix,
    Q,
    Subspace,
    inconsistency_certificate,
    kernel_basis,
    kron,
    rref,
    snf,
    solve,
)

FIELDS = [Q, GF(2), GF(5), GF(7)]


def mat(rows, field=Q, cols=None):
    return ExactMatrix.from_rows(field, rows, cols)


# -- examples --------------------------------------------------------------------


def test_rref_scaling():
    R, piv, rank = rref(mat([[2]]))
    assert R == mat([[1]]) and piv == [0] and rank == 1


def test_rref_rank_one():
    R, piv, rank = rref(mat([[1, 2], [2, 4]]))
    assert R == mat([[1, 2], [0, 0]]) and rank == 1


def test_rref_empty():
    R, piv, rank = rref(ExactMatrix.zeros(Q, 0, 0))
    assert R.shape == (0, 0) and rank == 0


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(Q, 3)) == []
    assert kernel_basis(mat([[1, 2], [2, 4]])) == [(Fraction(-2), Fraction(1))]
    assert kernel_basis(mat([[0]])) == [(Fraction(1),)]


def test_solve_examples():
    B = mat([[1, 2], [3, 4]])
    assert solve(ExactMatrix.identity(Q, 2), B).particular == B
    sol = solve(mat([[1, 1]]), mat([[1]]))
    assert sol.particular == mat([[1], [0]])
    assert sol.kernel == [(Fraction(-1), Fraction(1))]
    assert solve(mat([[0]]), mat([[1]])) is None


def test_inconsistency_certificate():
    A, B = mat([[1, 1], [2, 2]]), mat([[1], [3]])
    y = inconsistency_certificate(A, B)
    Y = mat([list(y)])
    assert (Y @ A).is_zero() and not (Y @ B).is_zero()


def test_kron_examples():
    assert kron(mat([[3]]), mat([[5]])) == mat([[15]])
    M = mat([[1, 2], [3, 4]])
    Z = [0, 0]
    assert kron(ExactMatrix.identity(Q, 2), M) == mat([[1, 2] + Z, [3, 4] + Z, Z + [1, 2], Z + [3, 4]])
    assert kron(mat([[1, 2]]), mat([[3], [4]])) == mat([[3, 6], [4, 8]])


def test_snf_examples():
    U, D, V = snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert D.diagonal() == [2, 4]
    assert snf(IntMatrix.identity(3))[1] == IntMatrix.identity(3)
    assert snf(IntMatrix.from_rows([[0]]))[1] == IntMatrix.from_rows([[0]])


def test_field_parsing_and_errors():
    assert FieldSpec.parse("F_5") == GF(5)
    assert FieldSpec.parse("Q") == Q
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        FieldSpec.parse("R")
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(FieldMismatch):
        kron(mat([[1]]), mat([[1]], GF(3)))
    assert GF(5)("1/2") == 3


def test_subspace_canonical():
    a = Subspace(Q, 3, [(1, 1, 0), (0, 1, 1)])
    b = Subspace(Q, 3, [(1, 2, 1), (1, 0, -1)])
    assert a == b and a.dim == 2
    assert (a & Subspace(Q, 3, [(1, 0, 0)])).dim == 0
    assert (a + Subspace(Q, 3, [(1, 0, 0)])).dim == 3


# -- properties ------------------------------------------------------------------


@st.composite
def matrices(draw, max_dim=5, fields=FIELDS):
    field = draw(st.sampled_from(fields))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    if field.p is None:
        entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    else:
        entry = st.integers(0, field.p - 1)
    rows = [[draw(entry) for _ in range(c)] for _ in range(r)]
    return ExactMatrix.from_rows(field, rows, c) if r else ExactMatrix.zeros(field, 0, c)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(M):
    R, _, _ = rref(M)
    assert rref(R)[0] == R


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_kernel_and_rank_nullity(M):
    K = kernel_basis(M)
    for v in K:
        assert (M @ ExactMatrix.column(M.field, v)).is_zero()
    assert rref(M)[2] + len(K) == M.cols


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_kron_mixed_product(data):
    field = data.draw(st.sampled_from(FIELDS))
    dims = [data.draw(st.integers(1, 3)) for _ in range(6)]
    ent = st.integers(-3, 3)

    def draw(r, c):
        return ExactMatrix.from_rows(field, [[data.draw(ent) for _ in range(c)] for _ in range(r)], c)

    A, B = draw(dims[0], dims[1]), draw(dims[2], dims[3])
    C, D = draw(dims[1], dims[4]), draw(dims[3], dims[5])
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)
    E = draw(2, 2)
    assert kron(kron(A, B), E) == kron(A, kron(B, E))


def _det(M):
    n = len(M)
    if n == 0:
        return 1
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1 :] for r in M[1:]]) for j in range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_properties(m, n, data):
    rows = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    M = IntMatrix.from_rows(rows, n)
    U, D, V = snf(M)
    assert U @ M @ V == D
    assert abs(_det(U.tolist())) == 1 and abs(_det(V.tolist())) == 1
    diag = D.diagonal()
    for i in range(len(diag)):
        for j in range(len(diag)):
            if i != j:
                assert D[i, j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    # product of the first k invariant factors = gcd of the k x k minors
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[rows[r][c] for c in cs] for r in rs]))
        prod = 1
        for d in diag[:k]:
            prod *= d
        assert prod == g
