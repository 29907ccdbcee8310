from itertools import product

import pytest

from talg import FieldArray, catalog, metric_algebra, qskew_product
from talg.catalog import CATALOG, PauliFixture, export, parse_params
from talg.errors import PreconditionError
from talg.fileio import loads_algebra
from talg.ternary import check_associativity, check_star

from conftest import F1, F12, Q

# the dim-2 q-skew table, 0-based (n, i, j, k)
EQ5 = {(0, 1, 1, 0): 1, (0, 1, 0, 1): Q * Q, (0, 0, 1, 1): Q,
       (1, 0, 0, 1): 1, (1, 0, 1, 0): Q * Q, (1, 1, 0, 0): Q}


def test_z3dim2_table():
    rho = catalog("z3dim2").rho
    for idx in product(range(2), repeat=4):
        assert rho[idx] == EQ5.get(idx, 0)


def test_z3dim2_is_qskew_of_identity_metric():
    direct = qskew_product(metric_algebra(FieldArray.eye(F12, 2), "middle"), Q)
    assert catalog("z3dim2").rho == direct.rho


def test_matrix_trivial_sizes():
    for n in (1, 2, 3):
        alg = catalog("matrix_trivial", n=n)
        assert alg.dim == n * n
    assert check_associativity(catalog("matrix_trivial", n=2), "strong").ok


def test_matrix_trivial_star_is_conjugate_transpose():
    alg = catalog("matrix_trivial", n=2)
    # E_01* = E_10
    assert alg.star.literals()[2][1] == "1" and alg.star.literals()[1][1] == "0"
    assert check_star(alg).ok


def test_metric_signature():
    alg = catalog("metric", dimension=3, metric="diag(1,1,-1)")
    assert alg.declared_kind == "B"
    assert check_associativity(alg, "B").ok
    assert not check_associativity(alg, "strong").ok
    g = catalog("metric", dimension=3, metric="diag(1,1,-1)", variant="right")
    assert g.declared_kind == "none"


def test_pauli_fixture():
    fx = catalog("pauli_fixture")
    assert isinstance(fx, PauliFixture)
    s1, s2 = fx.sigma[:2]
    assert s1.literals() == [["0", "1"], ["1", "0"]]
    assert s2[0, 1] == -F12.zeta(3)


def test_free_truncated():
    alg = catalog("free_truncated", generators=1, max_degree=5)
    assert alg.dim == 3  # words x, xxx, xxxxx


def test_catalog_errors():
    with pytest.raises(KeyError):
        catalog("octonions")
    with pytest.raises(ValueError):
        catalog("metric", colour=3)
    with pytest.raises(PreconditionError):
        catalog("z3dim2", order=4)


def test_parse_params():
    assert parse_params(["n=3", "variant=left", "max-degree=7"]) == {"n": 3, "variant": "left", "max_degree": 7}
    with pytest.raises(ValueError):
        parse_params(["n"])


@pytest.mark.parametrize("name", [k for k in CATALOG if k != "pauli_fixture"])
def test_export_roundtrips(name):
    text = export(name)
    assert loads_algebra(text).rho == catalog(name).rho
