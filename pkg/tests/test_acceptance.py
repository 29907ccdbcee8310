"""The twelve acceptance criteria, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also written to the terminal when output is captured.
"""

import random
import time
import traceback
from itertools import product

import pytest

from talg import (
    Calculus,
    FieldArray,
    FreeTernary,
    build_envelope,
    build_omega1_binary,
    build_omega1_ternary,
    build_UM,
    catalog,
    check_ternary_leibniz,
    derivation_space,
    einsum,
    envelope_multiply,
    factor_calculus,
    free_product,
    lift_hom,
    metric_algebra,
    pauli_check,
    qskew_product,
    ternary_product,
)
from talg.binary import matrix_algebra
from talg.calculus import check_binary_leibniz, check_omega1_binary_bimodule, leibniz_terms
from talg.envelope import annihilates, check_envelope_associative, relation_tensor
from talg.errors import PreconditionError
from talg.free import bracketings, evaluate_bracketing
from talg.linalg import rank
from talg.ternary import check_associativity
from talg.trimodule import (
    algebra_as_trimodule,
    check_um_consequences,
    check_um_grading,
    check_um_relations,
    trimodule_check_all,
)

from conftest import F1, F12, Q


@pytest.fixture
def criterion(capsys):
    def run(number, title, body, limit=None):
        start = time.perf_counter()
        try:
            ok, note = body()
        except Exception as exc:  # becomes a FAIL line with the traceback attached
            ok, note = False, f"{type(exc).__name__}: {exc}"
            tb = traceback.format_exc()
        else:
            tb = None
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            ok, note = False, f"{note}; took {elapsed:.2f} s, limit {limit} s"
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({note}; {elapsed:.2f} s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line + ("\n" + tb if tb else "")
    return run


# 0-based (n, i, j, k) -> value of the dim-2 q-skew table
EQ5 = {(0, 1, 1, 0): 1, (0, 1, 0, 1): Q * Q, (0, 0, 1, 1): Q,
       (1, 0, 0, 1): 1, (1, 0, 1, 0): Q * Q, (1, 1, 0, 0): Q}


def test_criterion_01_table(criterion):
    def body():
        rho = qskew_product(metric_algebra(FieldArray.eye(F12, 2), "middle"), Q).rho
        mismatches = [idx for idx in product(range(2), repeat=4) if rho[idx] != EQ5.get(idx, 0)]
        nonzero = int(rho.nonzero_mask().sum())
        ok = not mismatches and nonzero == len(EQ5) == 6
        return ok, f"entrywise match over Q(zeta_12), {nonzero} nonzero entries with values 1, q, q^2"
    criterion(1, "dim-2 q-skew structure constants", body, limit=1)


def test_criterion_02_pauli(criterion):
    def body():
        rep = pauli_check(Q)
        ok = rep.ok and rep.factor == -2 * Q
        ok = ok and all(rep.lhs[t] == rep.rhs[t].scale(rep.factor) for t in product(range(2), repeat=3))
        return ok, f"single lambda = {rep.factor} on all 8 triples (-2q = {-2 * Q})"
    criterion(2, "Pauli closure", body, limit=1)


def test_criterion_03_trivial_strong(criterion):
    def body():
        res = check_associativity(catalog("matrix_trivial", n=2), "strong")
        return res.ok and res.checked == 4 ** 5, f"{res.checked} quintuples x 3 bracketings"
    criterion(3, "matrix_trivial(2) strongly associative", body, limit=5)


def test_criterion_04_negative_control(criterion):
    def body():
        alg = catalog("z3dim2")
        one, two = check_associativity(alg, "strong"), check_associativity(alg, "strong")
        ce = one.counterexample
        # brute-force lexicographic scan with the product helper
        e = [alg.basis(i) for i in range(2)]
        first = next(t for t in product(range(2), repeat=5)
                     if not (ternary_product(alg, ternary_product(alg, *[e[i] for i in t[:3]]), e[t[3]], e[t[4]])
                             == ternary_product(alg, e[t[0]], ternary_product(alg, *[e[i] for i in t[1:4]]), e[t[4]])
                             == ternary_product(alg, e[t[0]], e[t[1]], ternary_product(alg, *[e[i] for i in t[2:]]))))
        rho = alg.rho
        invariant = rho.reindex("njki->nijk") == rho.scale(Q * Q)
        ok = (not one.ok and ce.indices == two.counterexample.indices == first and invariant)
        return ok, f"first counterexample {ce.indices}, residual {ce.residual.literals()}, cyclic q^2 scaling holds"
    criterion(4, "z3dim2 negative control", body)


def _signature(n, fld=F1):
    g = FieldArray.eye(fld, n)
    g.num[n - 1, n - 1, 0] = -1
    return g


def test_criterion_05_metric_B(criterion):
    def body():
        seen = []
        for n in (2, 3, 4):
            for label, g in (("identity", FieldArray.eye(F1, n)), ("signature", _signature(n))):
                res = check_associativity(metric_algebra(g, "middle"), "B")
                if not res.ok:
                    return False, f"{label} dim {n} fails at {res.counterexample.indices}"
                seen.append(res.checked)
        return True, f"identity and diag(1,..,1,-1) for dims 2-4, {sum(seen)} quintuples"
    criterion(5, "metric algebras B-associative", body, limit=10)


def _envelope_ok(alg):
    env = build_envelope(alg)
    d = alg.dim
    rel = relation_tensor(alg).reshape(d ** 4, d * d)
    rho = alg.rho
    well = (annihilates(rho.reindex("nxyc->xycn").reshape(d * d, d, d), rel, 0)
            and annihilates(rho.reindex("naxy->axyn").reshape(d, d * d, d), rel, 1))
    assoc = check_envelope_associative(env).ok
    e = [env.odd(alg.basis(i)) for i in range(d)]
    embed = all(envelope_multiply(env, envelope_multiply(env, e[a], e[b]), e[c])
                == env.odd(ternary_product(alg, alg.basis(a), alg.basis(b), alg.basis(c)))
                for a, b, c in product(range(d), repeat=3))
    return well and assoc and embed, env.dim_even


def test_criterion_06_envelope(criterion):
    def body():
        ok2, k2 = _envelope_ok(catalog("matrix_trivial", n=2))
        ok1, k1 = _envelope_ok(catalog("one_dim"))
        return ok1 and ok2, f"dim A_0 = {k2} for matrix_trivial(2), {k1} for the 1-dim algebra"
    criterion(6, "envelope U_A", body)


def _omega_ok(alg):
    om = build_omega1_ternary(alg)
    checks = trimodule_check_all(om.tm)
    calc = Calculus.universal(om)
    leib = check_ternary_leibniz(calc)
    t = leibniz_terms(calc)
    d, k = alg.dim, om.k
    zero = FieldArray.zeros(alg.field, (d, d, d, om.dim))
    first = zero.copy()
    first[..., :d] = alg.rho.reindex("nfgh->fghn")
    eye = FieldArray.eye(alg.field, d)
    abc = einsum("fgq,hu->fghqu", om.env.oo, eye).reshape(d, d, d, k * d)
    a_bc = einsum("fu,ghq->fghuq", eye, om.env.oo).reshape(d, d, d, d * k)
    L, C, R = zero.copy(), zero.copy(), first.copy()
    L[..., d:d + k * d] = abc
    C[..., d:d + k * d] = -abc
    C[..., d + k * d:] = a_bc
    R[..., d + k * d:] = -a_bc
    cancel = t["L"] == L and t["C"] == C and t["R"] == R
    collapse = t["L"] + t["C"] + t["R"] == first == t["d[fgh]"]
    return all(r.ok for r in checks) and len(checks) == 6 and leib.ok and cancel and collapse, om.dim


def test_criterion_07_omega1(criterion):
    def body():
        ok2, n2 = _omega_ok(catalog("matrix_trivial", n=2))
        ok1, n1 = _omega_ok(catalog("one_dim"))
        return ok1 and ok2, f"six tri-module identities, Leibniz collapse to ([abc],0,0); dims {n2} and {n1}"
    criterion(7, "Omega^1_T suite", body, limit=60)


def test_criterion_08_binary_calculus(criterion):
    def body():
        om = build_omega1_binary(matrix_algebra(2))
        leib, bim = check_binary_leibniz(om), check_omega1_binary_bimodule(om)
        return leib.ok and bim.ok, f"{leib.checked} pairs, {bim.checked} bimodule tuples"
    criterion(8, "binary universal calculus", body)


def _antisymmetric(n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = FieldArray.zeros(F1, (n, n))
            m.num[i, j, 0], m.num[j, i, 0] = 1, -1
            out.append(m.reshape(n * n))
    return out


def test_criterion_09_derivations(criterion):
    def body():
        dims = []
        for n in (2, 3, 4):
            basis = derivation_space(metric_algebra(FieldArray.eye(F1, n), "middle"))
            oracle = _antisymmetric(n)
            joint = rank(FieldArray.stack([b.reshape(n * n) for b in basis] + oracle))
            if not (len(basis) == len(oracle) == joint == n * (n - 1) // 2):
                return False, f"n = {n}: {len(basis)} vs oracle {len(oracle)}"
            dims.append(len(basis))
        return True, f"dimensions {dims} equal the antisymmetric oracle"
    criterion(9, "derivation dimensions", body)


def test_criterion_10_um(criterion):
    def body():
        um = build_UM(algebra_as_trimodule(catalog("matrix_trivial", n=2)))
        rel = check_um_relations(um)
        cons = check_um_consequences(um)
        grade = check_um_grading(um)
        ok = len(rel) == 4 and all(r.ok for r in rel) and len(cons) == 8 and all(r.ok for r in cons) and grade.ok
        return ok, f"dim M_0 = {um.dim_even}, 4 relation families, 8 consequences, grading"
    criterion(10, "enveloping bimodule U_M", body)


def test_criterion_11_factorization(criterion):
    def body():
        alg = metric_algebra(FieldArray.eye(F1, 2), "middle")
        basis = derivation_space(alg)
        try:
            om = build_omega1_ternary(alg)
        except PreconditionError as exc:
            return False, (f"{len(basis)} derivation(s), but Omega^1_T of the metric algebra is undefined: "
                           f"{exc} (strong associativity fails at {exc.result.counterexample.indices})")
        results = [factor_calculus(om, Calculus.from_derivation(alg, D)) for D in basis]
        return all(r.ok for r in results), f"{len(results)} derivation(s) factor through D"
    criterion(11, "universal factorization", body)


def test_criterion_12_free(criterion):
    def body():
        rnd = random.Random(2024)
        free = FreeTernary(2, 7)
        target = catalog("matrix_trivial", n=2)

        def word(n):
            return tuple(rnd.randint(0, 1) for _ in range(n))

        for _ in range(50):
            la, lb = rnd.choice([(1, 1), (1, 3), (3, 1), (3, 3), (1, 5), (5, 1)])
            lc = rnd.choice([n for n in (1, 3, 5) if la + lb + n <= 7])
            a, b, c = word(la), word(lb), word(lc)
            if list(free_product(free.word(a), free.word(b), free.word(c)).terms) != [a + b + c]:
                return False, f"concatenation fails on {a}, {b}, {c}"
        for _ in range(50):
            lens = rnd.choice([(1,) * 5, (3, 1, 1, 1, 1), (1, 1, 3, 1, 1), (1, 1, 1, 1, 3)])
            u = [free.word(word(n)) for n in lens]
            one = free_product(free_product(*u[:3]), u[3], u[4])
            two = free_product(u[0], free_product(*u[1:4]), u[4])
            three = free_product(u[0], u[1], free_product(*u[2:]))
            if not one == two == three:
                return False, "bracketings disagree"
        phi = FieldArray.from_ints(F1, [[rnd.randint(-2, 2) for _ in range(2)] for _ in range(4)])
        for _ in range(50):
            w = word(rnd.choice((1, 3, 5)))
            img = lift_hom(phi, target, free.word(w))
            vecs = [phi[:, g] for g in w]
            if any(evaluate_bracketing(t, vecs, target.rho) != img for t in bracketings(len(w))):
                return False, f"lift depends on bracketing for {w}"
            if len(w) >= 3:
                # split w = u v x with u, v, x odd words
                cut1 = rnd.choice(range(1, len(w) - 1, 2))
                cut2 = rnd.choice(range(cut1 + 1, len(w), 2))
                parts = [free.word(w[:cut1]), free.word(w[cut1:cut2]), free.word(w[cut2:])]
                lifted = [lift_hom(phi, target, p) for p in parts]
                if lift_hom(phi, target, free_product(*parts)) != ternary_product(target, *lifted):
                    return False, f"lift is not multiplicative on {w}"
        return True, "concatenation, bracketings and lift checked on 50 random cases each"
    criterion(12, "free ternary algebra", body)
