from itertools import product

import pytest

from talg import FieldArray, catalog, ternary_product
from talg.binary import matrix_algebra
from talg.errors import PreconditionError
from talg.trimodule import (
    Bimodule,
    ORDER,
    algebra_as_trimodule,
    build_UM,
    check_bimodule,
    check_um_consequences,
    check_um_grading,
    check_um_relations,
    regular_bimodule,
    trimodule_check,
    trimodule_check_all,
    trivial_trimodule,
    TriModule,
)

from conftest import F1


@pytest.fixture(scope="module")
def self_mt2(mt2):
    return algebra_as_trimodule(mt2)


def corrupt(tm, which="act_left", pos=(1, 2, 3, 0)):
    t = getattr(tm, which).copy()
    t.num[pos + (0,)] += 1
    acts = {k: getattr(tm, k) for k in ("act_left", "act_central", "act_right")}
    acts[which] = t
    return TriModule(tm.alg, kind=tm.kind, **acts)


def test_trivial_trimodule_from_bimodule():
    bm = regular_bimodule(matrix_algebra(2))
    assert check_bimodule(bm).ok
    tm = trivial_trimodule(bm)
    results = trimodule_check_all(tm)
    assert [r.name for r in results] == list(ORDER)
    assert all(r.ok for r in results)


def test_trivial_trimodule_actions_unfold(mt2):
    """[abm]_L = a(bm), [amb]_C = (am)b, [mab]_R = (ma)b with explicit matrices."""
    import numpy as np

    tm = trivial_trimodule(regular_bimodule(matrix_algebra(2)))
    units = [np.array([[int(r * 2 + c == u) for c in range(2)] for r in range(2)]) for u in range(4)]
    e = [mt2.basis(i) for i in range(4)]
    vec = lambda m: FieldArray.from_ints(F1, m.reshape(4))
    for a, b, m in product(range(4), repeat=3):
        A, B, M = units[a], units[b], units[m]
        assert tm.left(e[a], e[b], e[m]) == vec(A @ (B @ M))
        assert tm.central(e[a], e[m], e[b]) == vec((A @ M) @ B)
        assert tm.right(e[m], e[a], e[b]) == vec((M @ A) @ B)


def test_algebra_over_itself(self_mt2):
    assert trimodule_check(self_mt2).ok


def test_corrupted_action_reports_identity(self_mt2, mt2):
    bad = corrupt(self_mt2)
    res = trimodule_check(bad)
    assert not res.ok
    assert res.name == "lmod"
    # brute-force the first failing lmod tuple with the product helpers
    e = [mt2.basis(i) for i in range(4)]
    first = None
    for a, b, c, d, m in product(range(4), repeat=5):
        s1 = bad.left(e[a], e[b], bad.left(e[c], e[d], e[m]))
        s2 = bad.left(ternary_product(mt2, e[a], e[b], e[c]), e[d], e[m])
        s3 = bad.left(e[a], ternary_product(mt2, e[b], e[c], e[d]), e[m])
        if not (s1 == s2 == s3):
            first = (a, b, c, d, m)
            break
    assert res.counterexample.indices == first


def test_corrupted_central_and_right(self_mt2):
    for which in ("act_central", "act_right"):
        assert not trimodule_check(corrupt(self_mt2, which)).ok


def test_bimodule_failure_is_rejected():
    alg = matrix_algebra(2)
    bad = Bimodule(alg, alg.mult.scale(2), alg.mult)
    assert not check_bimodule(bad).ok
    with pytest.raises(PreconditionError):
        trivial_trimodule(bad)


def test_btype_self_module():
    """The metric algebra over itself passes the B replacements cmod and
    lcmod; the unchanged identities demand strong bracketings and fail."""
    tm = algebra_as_trimodule(catalog("metric", dimension=2))
    assert tm.kind == "B"
    res = {r.name: r.ok for r in trimodule_check_all(tm)}
    assert res["cmod"] and res["lcmod"]
    assert not res["lmod"]


def test_um_self_module(self_mt2):
    um = build_UM(self_mt2)
    assert um.dim_even == 4
    assert all(r.ok for r in check_um_relations(um))
    assert check_um_grading(um).ok
    cons = check_um_consequences(um)
    assert len(cons) == 8 and all(r.ok for r in cons)
    assert check_bimodule(um.bimodule).ok


def test_um_one_dim(one_dim):
    um = build_UM(algebra_as_trimodule(one_dim))
    assert um.dim_even <= 2
    assert um.dim_even == 1
    assert all(r.ok for r in check_um_consequences(um))
    assert check_um_grading(um).ok


def test_um_rejects_corrupted(self_mt2):
    with pytest.raises(PreconditionError):
        build_UM(corrupt(self_mt2))
