"""Named example algebras.

``catalog(name, **params)`` builds each example exactly; ``CATALOG`` lists
the names with their parameters and defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as iproduct

from .arrays import FieldArray
from .binary import matrix_algebra
from .cubic import pauli_matrices
from .errors import PreconditionError
from .free import FreeTernary
from .scalars import ScalarField, field as _field, format_scalar, parse_scalar
from .ternary import (
    TernaryAlgebra,
    metric_algebra,
    one_dim_algebra,
    qskew_product,
    trivial_ternary,
)

__all__ = ["CATALOG", "catalog", "PauliFixture", "parse_params", "export"]


@dataclass(frozen=True)
class _Entry:
    summary: str
    params: dict


CATALOG = {
    "z3dim2": _Entry("q-skew product of the identity metric in dimension 2 (q = zeta^(order/3))",
                     {"order": 12}),
    "metric": _Entry("metric-induced product {abc} = <a,b>c (middle), <b,c>a (left) or <c,a>b (right)",
                     {"dimension": 2, "metric": "identity", "variant": "middle", "order": 1}),
    "matrix_trivial": _Entry("trivial ternary algebra [abc] = (ab)c of n x n matrices, star = conjugate transpose",
                             {"n": 2, "order": 1}),
    "pauli_fixture": _Entry("exact Pauli matrices with the z3dim2 algebra and q", {"order": 12}),
    "free_truncated": _Entry("odd words of length <= max_degree, concatenation, longer products set to zero",
                             {"generators": 1, "max_degree": 5, "order": 1}),
    "one_dim": _Entry("the one-dimensional algebra [abc] = abc, star = identity", {"order": 12}),
}


@dataclass(frozen=True, eq=False)
class PauliFixture:
    field: ScalarField
    q: object
    sigma: tuple
    algebra: TernaryAlgebra

    def export(self) -> dict:
        return {
            "field_order": self.field.order,
            "q": format_scalar(self.q),
            "sigma": [m.literals() for m in self.sigma],
        }


def _metric_matrix(spec, dim: int, fld: ScalarField) -> FieldArray:
    if isinstance(spec, FieldArray):
        return spec
    if spec is None or spec == "identity":
        return FieldArray.eye(fld, dim)
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("diag(") and s.endswith(")"):
            vals = [parse_scalar(t, fld) for t in s[5:-1].split(",")]
            if len(vals) != dim:
                raise ValueError(f"diag() needs {dim} entries")
            zero = fld.zero()
            return FieldArray.from_scalars(fld, [[vals[i] if i == j else zero for j in range(dim)]
                                                 for i in range(dim)])
        rows = [[parse_scalar(t, fld) for t in r.split(",")] for r in s.split(";")]
        return FieldArray.from_scalars(fld, rows)
    return FieldArray.from_scalars(fld, [[parse_scalar(str(v), fld) for v in row] for row in spec])


def _free_truncated(generators: int, max_degree: int, order: int) -> TernaryAlgebra:
    free = FreeTernary(generators, max_degree, order)
    fld = free.field
    words = [w for deg in range(1, max_degree + 1, 2) for w in free.words(deg)]
    index = {w: i for i, w in enumerate(words)}
    d = len(words)
    rho = FieldArray.zeros(fld, (d, d, d, d))
    for (i, a), (j, b), (k, c) in iproduct(enumerate(words), repeat=3):
        w = a + b + c
        if w in index:
            rho.num[index[w], i, j, k, 0] = 1
    meta = {"name": f"free_truncated({generators},{max_degree})",
            "basis": ["".join(f"x{t}" for t in w) for w in words]}
    return TernaryAlgebra(rho, None, "strong", name=meta["name"], metadata=meta)


def _check_order(order, divisor, name):
    if order % divisor:
        raise PreconditionError(f"{name} needs a field order divisible by {divisor}, got {order}")


def catalog(name: str, **params):
    """Build a named example (see ``CATALOG`` for names and parameters)."""
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}; known: {sorted(CATALOG)}")
    allowed = CATALOG[name].params
    unknown = set(params) - set(allowed)
    if unknown:
        raise ValueError(f"unknown parameters for {name}: {sorted(unknown)}")
    p = {**allowed, **params}
    order = int(p["order"])
    fld = _field(order)
    if name == "z3dim2":
        _check_order(order, 3, name)
        q = fld.zeta(order // 3)
        alg = qskew_product(metric_algebra(FieldArray.eye(fld, 2), "middle"), q)
        return TernaryAlgebra(alg.rho, None, "none", name="z3dim2", metadata={"name": "z3dim2"})
    if name == "metric":
        dim = int(p["dimension"])
        variant = p["variant"]
        g = _metric_matrix(p["metric"], dim, fld)
        alg = metric_algebra(g, variant)
        kind = "B" if variant in ("middle", "left") else "none"
        nm = f"metric_{variant}{dim}"
        return TernaryAlgebra(alg.rho, None, kind, name=nm, metadata={"name": nm})
    if name == "matrix_trivial":
        n = int(p["n"])
        alg = trivial_ternary(matrix_algebra(n, fld))
        star = FieldArray.zeros(fld, (n * n, n * n))
        for r in range(n):
            for c in range(n):
                # E_rc* = E_cr
                star.num[c * n + r, r * n + c, 0] = 1
        nm = f"matrix_trivial{n}"
        return TernaryAlgebra(alg.rho, star, "strong", name=nm, metadata={"name": nm})
    if name == "pauli_fixture":
        _check_order(order, 12, name)
        q = fld.zeta(order // 3)
        return PauliFixture(fld, q, pauli_matrices(fld), catalog("z3dim2", order=order))
    if name == "free_truncated":
        return _free_truncated(int(p["generators"]), int(p["max_degree"]), order)
    alg = one_dim_algebra(fld)
    return TernaryAlgebra(alg.rho, FieldArray.eye(fld, 1), "strong", name="one_dim",
                          metadata={"name": "one_dim"})


def parse_params(items) -> dict:
    """``["key=value", ...]`` -> dict with integers converted."""
    out = {}
    for item in items:
        if "=" not in item:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        key, value = item.split("=", 1)
        key = key.strip().replace("-", "_")
        value = value.strip()
        out[key] = int(value) if value.lstrip("-").isdigit() else value
    return out


def export(name: str, **params) -> str:
    """Canonical file text (or, for the Pauli fixture, a JSON document)."""
    from .fileio import dumps_algebra

    obj = catalog(name, **params)
    if isinstance(obj, PauliFixture):
        return json.dumps(obj.export(), indent=2) + "\n"
    return dumps_algebra(obj)
