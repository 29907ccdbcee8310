"""Exact linear algebra over Q(zeta_n): rref, nullspace, solve, quotients.

Elimination is fraction free over Z[zeta_n] (rows are kept primitive by
dividing out their content) and only the final normalisation divides by
the pivots.  Pivoting is fixed: columns left to right, and within a column
the first row at or below the current pivot row with a nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .arrays import FieldArray
from .errors import DimensionError
from .scalars import Cyc, ScalarField, lcm

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "solve_linear",
    "Inconsistent",
    "QuotientBasis",
    "quotient_basis",
    "span_rank",
]


def _scalar_matrix(fld: ScalarField, s):
    # matrix of x -> x * s on power-basis coordinates (integer s)
    return np.tensordot(s, fld.mul_table, axes=([0], [1]))


def _primitive(rows):
    if rows.size == 0:
        return rows
    flat = rows.reshape(rows.shape[0], -1)
    g = np.gcd.reduce(flat, axis=1)
    g[g == 0] = 1
    return (flat // g[:, None]).reshape(rows.shape)


def _echelon(fld: ScalarField, num):
    """Fraction-free Gauss-Jordan on an integer (rows, cols, phi) array.

    Returns the reduced integer rows (pivot rows first, zero rows dropped)
    and the pivot columns.
    """
    phi = fld.phi
    if num.shape[0] == 0 or num.shape[1] == 0:
        return num[:0], []
    m = num[(num != 0).reshape(num.shape[0], -1).any(axis=1)]
    m = _primitive(m)
    nrows, ncols = m.shape[0], m.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        col_nz = (m[r:, c] != 0).any(axis=1)
        hits = np.flatnonzero(col_nz)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        prow = m[r]
        piv = prow[c]
        others = np.flatnonzero((m[:, c] != 0).any(axis=1))
        others = others[others != r]
        if others.size:
            block = m[others]
            coeff = block[:, c]  # (k, phi)
            if phi == 1:
                new = block * piv[0] - coeff[:, :, None] * prow[None, :, :]
            else:
                scaled = np.tensordot(block, _scalar_matrix(fld, piv), axes=([2], [0]))
                pt = np.tensordot(prow, fld.mul_table, axes=([1], [1]))  # (cols, p, r)
                new = scaled - np.tensordot(coeff, pt, axes=([1], [1]))
            m[others] = _primitive(new)
        pivots.append(c)
        r += 1
    m = m[:r]
    return m, pivots


def rref(mat: FieldArray) -> tuple[FieldArray, list[int]]:
    """Reduced row echelon form (same shape as ``mat``) and pivot columns."""
    if mat.ndim != 2:
        raise DimensionError("rref expects a matrix")
    fld = mat.field
    nrows, ncols = mat.shape
    red, pivots = _echelon(fld, mat.num.copy())
    out = FieldArray.zeros(fld, (nrows, ncols))
    if not pivots:
        return out, pivots
    rows = []
    for i, c in enumerate(pivots):
        inv = Cyc(fld, (int(x) for x in red[i, c])).inverse()
        rows.append(FieldArray(fld, red[i]).scale(inv))
    den = reduce(lcm, (row.den for row in rows), 1)
    for i, row in enumerate(rows):
        out.num[i] = row.num * (den // row.den)
    out.den = den
    return out.normalized(), pivots


def rank(mat: FieldArray) -> int:
    if mat.ndim != 2:
        raise DimensionError("rank expects a matrix")
    return len(_echelon(mat.field, mat.num.copy())[1])


def span_rank(vectors, fld: ScalarField, dim: int) -> int:
    """Rank of the span of a sequence of length-``dim`` vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    return rank(FieldArray.stack(vectors).reshape(len(vectors), dim))


def nullspace(mat: FieldArray) -> list[FieldArray]:
    """Basis of {v : mat @ v = 0}, one vector per free column (ascending)."""
    red, pivots = rref(mat)
    ncols = mat.shape[1]
    fld = mat.field
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = FieldArray.zeros(fld, (ncols,)).with_den(red.den)
        v.num[f, 0] = red.den
        for i, c in enumerate(pivots):
            v.num[c] = -red.num[i, f]
        basis.append(v.normalized())
    return basis


@dataclass(frozen=True)
class Inconsistent:
    """Report for an inconsistent system: ``row`` is the echelon row whose
    pivot falls in the right-hand-side column."""

    row: int

    def __bool__(self):
        return False


def solve_linear(mat: FieldArray, rhs: FieldArray):
    """One solution of ``mat @ x = rhs`` with every free variable zero.

    ``rhs`` may be a vector or a matrix of right-hand sides (one per
    column).  Returns the solution or an :class:`Inconsistent` report.
    """
    if mat.ndim != 2:
        raise DimensionError("solve_linear expects a matrix")
    vec = rhs.ndim == 1
    b = rhs.reshape(rhs.shape[0], 1) if vec else rhs
    if b.shape[0] != mat.shape[0]:
        raise DimensionError(f"rhs has {b.shape[0]} rows, matrix has {mat.shape[0]}")
    ncols = mat.shape[1]
    aug = FieldArray.concatenate([mat, b], axis=1)
    red, pivots = rref(aug)
    for i, c in enumerate(pivots):
        if c >= ncols:
            return Inconsistent(i)
    x = FieldArray.zeros(mat.field, (ncols, b.shape[1])).with_den(red.den)
    for i, c in enumerate(pivots):
        x.num[c] = red.num[i, ncols:]
    x = x.normalized()
    return x.reshape(ncols) if vec else x


@dataclass(frozen=True, eq=False)
class QuotientBasis:
    """Coordinates on ``ambient / span(relations)``.

    ``representatives`` are the non-pivot ambient coordinates of the
    relation matrix's rref; ``projection`` (quotient_dim x ambient_dim) maps
    ambient coordinates to quotient coordinates.
    """

    ambient_dim: int
    relation_rank: int
    representatives: tuple[int, ...]
    projection: FieldArray

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def project(self, vec: FieldArray) -> FieldArray:
        from .arrays import einsum

        return einsum("qa,a->q", self.projection, vec)

    def lift(self, coords: FieldArray) -> FieldArray:
        """The ambient vector supported on the representatives."""
        out = FieldArray.zeros(coords.field, (self.ambient_dim,) + coords.shape[1:])
        out[list(self.representatives)] = coords
        return out


def quotient_basis(ambient_dim: int, relations, fld: ScalarField | None = None) -> QuotientBasis:
    """Quotient of the coordinate space by the span of ``relations``.

    ``relations`` is a (k, ambient_dim) FieldArray or a sequence of vectors.
    """
    if isinstance(relations, FieldArray):
        rel = relations
        fld = rel.field
    else:
        relations = list(relations)
        if not relations:
            if fld is None:
                raise ValueError("field required when there are no relations")
            rel = FieldArray.zeros(fld, (0, ambient_dim))
        else:
            rel = FieldArray.stack(relations)
            fld = rel.field
    if rel.ndim != 2 or rel.shape[1] != ambient_dim:
        raise DimensionError(f"relations must have length {ambient_dim}")
    red, pivots = rref(rel)
    pivset = set(pivots)
    reps = tuple(c for c in range(ambient_dim) if c not in pivset)
    proj = FieldArray.zeros(fld, (len(reps), ambient_dim)).with_den(red.den)
    for j, r in enumerate(reps):
        proj.num[j, r, 0] = red.den
        for i, c in enumerate(pivots):
            # e_c == -sum_f red[i, f] e_f  modulo the relations
            proj.num[j, c] = -red.num[i, r]
    return QuotientBasis(ambient_dim, len(pivots), reps, proj.normalized())
