import numpy as np
import pytest
from hypothesis import given, strategies as st

from talg import _kernels, check_associativity
from talg.arrays import einsum

from conftest import F12, vectors

BACKENDS = _kernels.AVAILABLE


def test_compiled_backend_built():
    # the build compiles the extension; the fallback must still exist
    assert "python" in BACKENDS
    assert "cython" in BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


def test_using_restores():
    before = _kernels.backend()
    with _kernels.using("python"):
        assert _kernels.backend() == "python"
    assert _kernels.backend() == before


ints = st.integers(-(2 ** 70), 2 ** 70)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_matmul_backends_agree(n, k, m, data):
    big = data.draw(st.booleans())
    el = ints if big else st.integers(-50, 50)
    a = np.array(data.draw(st.lists(st.lists(el, min_size=k, max_size=k), min_size=n, max_size=n)),
                 dtype=object)
    b = np.array(data.draw(st.lists(st.lists(el, min_size=m, max_size=m), min_size=k, max_size=k)),
                 dtype=object)
    ref = [[sum(a[i, t] * b[t, j] for t in range(k)) for j in range(m)] for i in range(n)]
    for name in BACKENDS:
        with _kernels.using(name):
            assert _kernels.matmul(a, b).tolist() == ref


def test_int64_overflow_falls_back():
    a = np.array([[2 ** 62, 2 ** 62]], dtype=object)
    b = np.array([[4], [4]], dtype=object)
    for name in BACKENDS:
        with _kernels.using(name):
            assert _kernels.matmul(a, b).tolist() == [[2 ** 65]]


@given(vectors(F12, 3), vectors(F12, 3))
def test_einsum_backends_agree(u, v):
    outs = []
    for name in BACKENDS:
        with _kernels.using(name):
            outs.append(einsum("i,j->ij", u, v).scale(F12.zeta(5)))
    assert all(o == outs[0] for o in outs)


def test_checks_backend_independent(z3dim2, mt2):
    for alg in (z3dim2, mt2):
        res = {}
        for name in BACKENDS:
            with _kernels.using(name):
                r = check_associativity(alg, "strong")
                res[name] = (r.ok, r.as_dict())
        assert len({str(v) for v in res.values()}) == 1
