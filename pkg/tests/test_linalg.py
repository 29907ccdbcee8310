from hypothesis import given, strategies as st

from talg.arrays import FieldArray, einsum
from talg.linalg import Inconsistent, nullspace, quotient_basis, rank, rref, solve_linear

from conftest import F1, F12, Q, frac_rank, int_matrices


def m1(rows):
    return FieldArray.from_ints(F1, rows)


def test_rref_identity_and_zero():
    eye = FieldArray.eye(F1, 3)
    red, piv = rref(eye)
    assert red == eye and piv == [0, 1, 2]
    red, piv = rref(FieldArray.zeros(F1, (2, 3)))
    assert red.is_zero() and piv == []


def test_rref_cyclotomic_rank_one():
    m = FieldArray.from_scalars(F12, [[1, Q], [Q * Q, 1]])
    assert Q * Q * Q == 1
    red, piv = rref(m)
    assert piv == [0]
    assert red[0].entries() == [1, Q]
    assert red[1].is_zero()


def test_nullspace_examples():
    assert nullspace(FieldArray.eye(F1, 3)) == []
    (v,) = nullspace(m1([[1, -1]]))
    assert v == m1([1, 1])


def test_quotient_basis_examples():
    qb = quotient_basis(3, [], F1)
    assert qb.dim == 3 and qb.projection == FieldArray.eye(F1, 3)
    qb = quotient_basis(2, [m1([1, 0]), m1([1, 1])])
    assert qb.dim == 0
    qb = quotient_basis(4, [m1([1, -1, 0, 0])])
    assert qb.dim == 3 and qb.relation_rank == 1
    assert qb.representatives == (1, 2, 3)
    assert qb.project(m1([1, 0, 0, 0])) == qb.project(m1([0, 1, 0, 0]))


def test_solve_examples():
    b = m1([3, -1])
    assert solve_linear(FieldArray.eye(F1, 2), b) == b
    res = solve_linear(FieldArray.zeros(F1, (2, 2)), m1([1, 0]))
    assert isinstance(res, Inconsistent) and not res
    assert solve_linear(m1([[1, 1], [0, 0]]), m1([2, 0])) == m1([2, 0])


@given(int_matrices())
def test_rank_matches_fraction_oracle(rows):
    assert rank(m1(rows)) == frac_rank(rows)


@given(int_matrices())
def test_rank_nullity_and_kernel(rows):
    m = m1(rows)
    ns = nullspace(m)
    assert rank(m) + len(ns) == m.shape[1]
    for v in ns:
        assert einsum("ij,j->i", m, v).is_zero()


@given(int_matrices())
def test_rref_idempotent(rows):
    red, piv = rref(m1(rows))
    red2, piv2 = rref(red)
    assert red2 == red and piv2 == piv
    assert piv == sorted(set(piv))


@given(int_matrices(cols=st.integers(2, 6)))
def test_quotient_consistency(rows):
    rel = m1(rows)
    qb = quotient_basis(rel.shape[1], rel)
    assert qb.dim + qb.relation_rank == qb.ambient_dim
    assert einsum("qa,ra->qr", qb.projection, rel).is_zero()
    sub = qb.projection[:, list(qb.representatives)]
    assert sub == FieldArray.eye(F1, qb.dim)


@given(int_matrices(), st.data())
def test_solve_consistent_systems(rows, data):
    m = m1(rows)
    x0 = m1(data.draw(st.lists(st.integers(-3, 3), min_size=m.shape[1], max_size=m.shape[1])))
    b = einsum("ij,j->i", m, x0)
    x = solve_linear(m, b)
    assert not isinstance(x, Inconsistent)
    assert einsum("ij,j->i", m, x) == b


def test_determinism():
    m = FieldArray.from_scalars(F12, [[1, Q, 0], [Q, Q * Q, 1], [2, 0, Q]])
    assert [v.literals() for v in nullspace(m)] == [v.literals() for v in nullspace(m)]
    assert rref(m)[0] == rref(m)[0]
