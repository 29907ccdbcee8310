"""Finite-dimensional binary algebras given by multiplication tables.

These serve as the source of trivial ternary algebras, as targets of
envelope homomorphisms and as the base of the universal binary calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrays import FieldArray, einsum
from .checks import CheckResult, compare_sides
from .errors import DimensionError
from .scalars import ScalarField, field as _field

__all__ = ["BinaryAlgebra", "matrix_algebra", "check_binary_associative"]


@dataclass(frozen=True, eq=False)
class BinaryAlgebra:
    """``e_i e_j = sum_k mult[i, j, k] e_k``."""

    mult: FieldArray
    name: str = ""

    def __post_init__(self):
        s = self.mult.shape
        if len(s) != 3 or not (s[0] == s[1] == s[2]):
            raise DimensionError(f"multiplication table must be (d, d, d), got {s}")

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def field(self) -> ScalarField:
        return self.mult.field

    def multiply(self, x: FieldArray, y: FieldArray) -> FieldArray:
        return einsum("i,j,ijk->k", x, y, self.mult)

    def basis(self, i: int) -> FieldArray:
        v = FieldArray.zeros(self.field, (self.dim,))
        v.num[i, 0] = 1
        return v


def check_binary_associative(alg: BinaryAlgebra) -> CheckResult:
    m = alg.mult
    left = einsum("abp,pcn->abcn", m, m)
    right = einsum("bcp,apn->abcn", m, m)
    return compare_sides("associativity", "abc", [left, right], ["(ab)c", "a(bc)"])


def matrix_algebra(n: int, fld: ScalarField | int = 1) -> BinaryAlgebra:
    """Full n x n matrix algebra; basis E_rc indexed r*n + c (row major)."""
    if isinstance(fld, int):
        fld = _field(fld)
    d = n * n
    mult = FieldArray.zeros(fld, (d, d, d))
    for r in range(n):
        for s in range(n):
            for t in range(n):
                # E_rs E_st = E_rt
                mult.num[r * n + s, s * n + t, r * n + t, 0] = 1
    return BinaryAlgebra(mult, f"M{n}")
