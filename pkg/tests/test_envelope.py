from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from talg import FieldArray, build_envelope, catalog, check_envelope_universal, envelope_multiply, metric_algebra
from talg.binary import matrix_algebra
from talg.envelope import check_envelope_associative, even_quotient, relation_tensor
from talg.errors import PreconditionError
from talg.linalg import rank

from conftest import F1, frac_rank


@pytest.fixture(scope="module")
def env_mt2(mt2):
    return build_envelope(mt2)


def test_one_dim_envelope(one_dim):
    env = build_envelope(one_dim)
    assert env.dim_even == 1 and env.dim == 2
    e = env.odd([1])
    ee = envelope_multiply(env, e, e)
    assert ee.odd.is_zero() and ee.even.entries() == [1]
    assert envelope_multiply(env, ee, e) == e
    assert envelope_multiply(env, ee, ee) == ee


def test_a0_dimension_against_fraction_oracle(mt2):
    """rank of the d^4 relation vectors [xyz](x)w - x(x)[yzw] by hand."""
    d = 4
    units = [np.array([[int(r * 2 + c == u) for c in range(2)] for r in range(2)]) for u in range(d)]

    def coord(m):
        return [int(m[u // 2, u % 2]) for u in range(d)]

    rows = []
    for x, y, z, w in product(range(d), repeat=4):
        xyz = coord(units[x] @ units[y] @ units[z])
        yzw = coord(units[y] @ units[z] @ units[w])
        rows.append([xyz[a] * (b == w) - (a == x) * yzw[b] for a in range(d) for b in range(d)])
    assert even_quotient(mt2).dim == d * d - frac_rank(rows) == 4


def test_z3dim2_quotient_and_precondition(z3dim2):
    rel = relation_tensor(z3dim2).reshape(16, 4)
    assert rank(rel) == 4
    assert even_quotient(z3dim2).dim == 0
    with pytest.raises(PreconditionError) as exc:
        build_envelope(z3dim2)
    assert exc.value.result.counterexample.indices == (0, 0, 0, 0, 1)


def test_envelope_products(env_mt2, mt2):
    env = env_mt2
    e = [env.odd(mt2.basis(i)) for i in range(4)]
    for a, b, c in product(range(4), repeat=3):
        ab = envelope_multiply(env, e[a], e[b])
        assert ab.odd.is_zero()
        assert ab.even == env.even_class(a, b)
        abc = envelope_multiply(env, ab, e[c])
        assert abc.even.is_zero()
        from talg import ternary_product

        iota = ternary_product(mt2, mt2.basis(a), mt2.basis(b), mt2.basis(c))
        assert abc.odd == iota
        assert envelope_multiply(env, e[a], envelope_multiply(env, e[b], e[c])).odd == iota
    zero = env.odd(FieldArray.zeros(F1, 4))
    assert envelope_multiply(env, zero, e[1]).is_zero()


def test_envelope_associative(env_mt2):
    assert check_envelope_associative(env_mt2).ok


def test_grading(env_mt2):
    u = env_mt2.binary.mult
    d = env_mt2.dim_odd
    parity = [0] * d + [1] * env_mt2.dim_even  # 0 odd, 1 even
    for x, y in product(range(env_mt2.dim), repeat=2):
        out = u[x, y]
        want = (parity[x] + parity[y] + 1) % 2  # odd*odd -> even
        for z in range(env_mt2.dim):
            if out[z]:
                assert parity[z] == want


def test_universal_identity_lift(env_mt2, mt2):
    target = matrix_algebra(2)
    lift = check_envelope_universal(env_mt2, target, FieldArray.eye(F1, 4))
    assert lift.ok
    # class(a (x) b) -> a b
    for a, b in product(range(4), repeat=2):
        cls = env_mt2.even_class(a, b)
        img = FieldArray.zeros(F1, 4)
        for r, c in enumerate(cls.entries()):
            if c:
                img = img + lift.matrix[:, 4 + r].scale(c)
        assert img == target.multiply(target.basis(a), target.basis(b))


def test_universal_zero_map(env_mt2):
    lift = check_envelope_universal(env_mt2, matrix_algebra(2), FieldArray.zeros(F1, (4, 4)))
    assert lift.ok and lift.matrix.is_zero()


def test_universal_rejects_non_hom(env_mt2):
    phi = FieldArray.eye(F1, 4).scale(2)
    with pytest.raises(PreconditionError):
        check_envelope_universal(env_mt2, matrix_algebra(2), phi)


@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_envelope_multiply_bilinear(vals):
    mt2 = catalog("matrix_trivial", n=2)
    env = build_envelope(mt2)
    x = env.odd(FieldArray.from_ints(F1, vals[:4]))
    y = env.odd(FieldArray.from_ints(F1, vals[4:]))
    s = envelope_multiply(env, x + y, x)
    assert s == envelope_multiply(env, x, x) + envelope_multiply(env, y, x)


def test_metric_algebras_have_trivial_even_part():
    alg = metric_algebra(FieldArray.eye(F1, 2), "middle")
    assert even_quotient(alg).dim == 0
