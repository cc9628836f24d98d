from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mixwreath.core import GF, QQ, Field, SparseMatrix, Subspace, kernel, member, rank, rref, solve
from mixwreath.core import kernels


def dense(rows, field=QQ):
    return SparseMatrix.from_dense(rows, field)


def test_field_parse_and_names():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:7") == GF(7)
    assert GF(7).name == "Fp:7" and QQ.name == "Q"
    with pytest.raises(ValueError):
        Field.parse("Fp:8")
    with pytest.raises(ValueError):
        GF(1)


def test_scalar_coercion():
    assert QQ("3/6") == Fraction(1, 2)
    assert GF(5)(7) == 2
    assert GF(5)(Fraction(1, 2)) == 3
    assert QQ.to_str(Fraction(-3, 4)) == "-3/4"
    assert QQ.to_str(4) == "4"


def test_rref_examples():
    assert rref(SparseMatrix.identity(2)) == SparseMatrix.identity(2)
    assert rref(dense([[1, 2], [2, 4]])).to_dense() == [[1, 2], [0, 0]]
    assert rref(dense([[0, 1], [1, 0]])).to_dense() == [[1, 0], [0, 1]]


def test_kernel_examples():
    assert kernel(SparseMatrix.identity(3)).dim == 0
    assert kernel(SparseMatrix(2, 3)).dim == 3
    k = kernel(dense([[1, 1]]))
    assert k.dim == 1
    assert member(k, [1, -1])


def test_member_examples():
    s = Subspace(2, QQ, [{1: 1}])
    assert member(s, [0, 0])
    assert not member(s, [1, 0])
    assert member(Subspace(2, QQ, [{0: 1, 1: 1}]), [2, 2])
    with pytest.raises(ValueError):
        member(s, [1, 2, 3])


def test_rank_examples():
    assert rank(SparseMatrix.identity(4)) == 4
    assert rank(SparseMatrix(3, 3)) == 0
    assert rank(dense([[1, 2], [2, 4]])) == 1


def test_solve():
    m = dense([[1, 1], [1, -1]])
    x = solve(m, {0: 2, 1: 0})
    assert m.apply(x) == {0: 2}
    assert solve(dense([[1, 1], [2, 2]]), {0: 1, 1: 3}) is None


def test_rank_does_not_mutate():
    m = dense([[1, 2, 3], [2, 4, 7], [0, 1, 5]])
    before = m.to_dense()
    rank(m)
    rref(m)
    assert m.to_dense() == before


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([QQ, GF(5), GF(101)]))
def test_linear_algebra_properties(data, field):
    m = dense(data, field)
    r = rref(m)
    assert rref(r) == r
    assert rank(m) + kernel(m).dim == m.ncols
    for v in kernel(m).basis:
        assert m.apply(v) == {}
    # pivot columns strictly increase
    piv = [min(row) for row in r.rows if row]
    assert piv == sorted(set(piv))


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([0, 7, 10007]))
def test_backends_agree(data, p):
    if kernels.compiled_kernels is None:
        pytest.skip("compiled kernels not built")
    f = GF(p) if p else QQ
    rows = dense(data, f).rows
    a = kernels.py_kernels.echelonize([dict(r) for r in rows], p)
    b = kernels.compiled_kernels.echelonize([dict(r) for r in rows], p)
    assert a == b


def test_backend_reported():
    from mixwreath.core import BACKEND
    assert BACKEND in ("compiled", "python")
