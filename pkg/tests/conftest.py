import cmath
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from talg import catalog, field
from talg.arrays import FieldArray
from talg.scalars import Cyc

settings.register_profile("talg", max_examples=40, deadline=None)
settings.load_profile("talg")

DATA = Path(__file__).resolve().parents[1] / "src" / "talg" / "data"

F1 = field(1)
F12 = field(12)
Q = F12.zeta(4)
I = F12.zeta(3)


def numeric(a: Cyc) -> complex:
    """Complex embedding zeta -> exp(2 pi i / n); an oracle independent of the
    reduction code."""
    z = cmath.exp(2j * cmath.pi / a.field.order)
    return sum(float(c) * z ** k for k, c in enumerate(a.coeffs))


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def cyc(fld):
    return st.lists(small_fracs, min_size=fld.phi, max_size=fld.phi).map(lambda cs: Cyc(fld, cs))


def vectors(fld, dim):
    return st.lists(cyc(fld), min_size=dim, max_size=dim).map(lambda xs: FieldArray.from_scalars(fld, xs))


def int_matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), lo=-3, hi=3):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def frac_rank(rows) -> int:
    """Plain Fraction Gaussian elimination (oracle for rank)."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@pytest.fixture(scope="session")
def z3dim2():
    return catalog("z3dim2")


@pytest.fixture(scope="session")
def mt2():
    return catalog("matrix_trivial", n=2)


@pytest.fixture(scope="session")
def one_dim():
    return catalog("one_dim")
