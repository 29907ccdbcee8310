"""Cubic matrices: the slices of a structure tensor by its output index.

The triple product ``(x * y * z)_prs = sum_nmt x_npm y_mrt z_tsn`` and its
q-skew combination close on the slices of the dimension-2 q-skew algebra;
the closure coefficients are found by searching the finitely many ways of
reading them off the structure tensor.  The Pauli check measures the
uniform scalar relating ``s_i s_j s_k + q s_j s_k s_i + q^2 s_k s_i s_j``
to ``sum_m rho^m_ijk s_m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations

from .arrays import FieldArray, as_array, einsum
from .errors import DimensionError, PreconditionError
from .linalg import solve_linear
from .scalars import Cyc, ScalarField, as_scalar
from .ternary import TernaryAlgebra

__all__ = [
    "CubicMatrix",
    "cubic_triple_product",
    "cubic_qskew",
    "Convention",
    "CubicReport",
    "check_cubic_representation",
    "pauli_matrices",
    "PauliReport",
    "pauli_check",
    "uniform_factor",
]


@dataclass(frozen=True, eq=False)
class CubicMatrix:
    """Entries ``x[p, r, s]``."""

    entries: FieldArray

    def __post_init__(self):
        s = self.entries.shape
        if len(s) != 3 or len(set(s)) != 1:
            raise DimensionError(f"cubic matrix must be (d, d, d), got {s}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        return isinstance(other, CubicMatrix) and self.entries == other.entries

    __hash__ = None


def _entries(x):
    return x.entries if isinstance(x, CubicMatrix) else x


def cubic_triple_product(x, y, z) -> CubicMatrix:
    x, y, z = _entries(x), _entries(y), _entries(z)
    if not (x.shape == y.shape == z.shape) or x.ndim != 3:
        raise DimensionError("cubic matrices must share one (d, d, d) shape")
    return CubicMatrix(einsum("npm,mrt,tsn->prs", x, y, z))


def _slices_product(rho: FieldArray) -> FieldArray:
    """``T[i,j,k,p,r,s] = (rho^i * rho^j * rho^k)_prs`` for all slices."""
    return einsum("inpm,jmrt,ktsn->ijkprs", rho, rho, rho)


def cubic_qskew(alg: TernaryAlgebra, q) -> FieldArray:
    """``{rho^i rho^j rho^k}_q`` as a tensor indexed (i, j, k, p, r, s)."""
    q = as_scalar(q, alg.field)
    t = _slices_product(alg.rho)
    return t + t.reindex("jkiprs->ijkprs").scale(q) + t.reindex("kijprs->ijkprs").scale(q * q)


def uniform_factor(lhs: FieldArray, rhs: FieldArray) -> Cyc | None:
    """The scalar ``lam`` with ``lhs == lam * rhs``, or None.

    When ``rhs`` vanishes the answer is 0 if ``lhs`` vanishes too.
    """
    fld = lhs.field
    pos = rhs.first_nonzero()
    if pos is None:
        return fld.zero() if lhs.is_zero() else None
    lam = lhs[pos] / rhs[pos]
    return lam if lhs == rhs.scale(lam) else None


@dataclass(frozen=True)
class Convention:
    """Coefficients ``c^{ijk}_m = rho[axes]`` read with the tensor axes
    permuted so that they come out in order (i, j, k, m); ``conjugate``
    applies coefficient conjugation; ``slice_axes`` is the order in which
    the lower indices of the representing slices ``rho^m`` are read."""

    axes: str
    conjugate: bool
    slice_axes: str = "prs"

    def coefficients(self, rho: FieldArray) -> FieldArray:
        # rho is stored (n, i, j, k) -> letters "nijk"; ``axes`` names which
        # stored axis feeds each of (i, j, k, m)
        c = rho.reindex(f"nijk->{self.axes}")
        return c.conj() if self.conjugate else c

    def slices(self, rho: FieldArray) -> FieldArray:
        return rho.reindex(f"m{self.slice_axes}->mprs")

    def describe(self) -> str:
        # which of the coefficient letters (i, j, k, m) sits in each stored slot
        slot = {src: dst for src, dst in zip(self.axes, "ijkm")}
        idx = ",".join(slot[c] for c in "nijk")
        return (f"c[i,j,k,m] = {'conj ' if self.conjugate else ''}rho[{idx}], "
                f"slices rho^m[{','.join(self.slice_axes)}]")


def _conventions():
    for sl in permutations("prs"):
        for perm in permutations("nijk"):
            for conj in (False, True):
                yield Convention("".join(perm), conj, "".join(sl))


@dataclass(frozen=True, eq=False)
class CubicReport:
    closes: bool
    convention: Convention | None
    factor: Cyc | None
    span_coefficients: FieldArray | None
    matches: tuple = dc_field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.closes

    def __bool__(self):
        return self.closes


def check_cubic_representation(alg: TernaryAlgebra, q) -> CubicReport:
    """Test ``{rho^i rho^j rho^k}_q = lam * sum_m c^{ijk}_m rho^m``.

    Conventions are tried in a fixed order (slice index orders, then
    coefficient axis orders, both as listed by ``itertools.permutations``,
    unconjugated first);
    the first one admitting a uniform ``lam`` is reported along with the
    full list of matching conventions.  ``span_coefficients`` holds the
    exact coefficients of the q-skew products in the span of the slices
    (or None when some product leaves that span).
    """
    if alg.dim > 3:
        raise PreconditionError("cubic representation search is limited to dim <= 3")
    fld = alg.field
    q = as_scalar(q, fld)
    if q * q * q != 1 or q == 1:
        raise PreconditionError(f"q = {q} is not a primitive cube root of unity")
    d = alg.dim
    lhs = cubic_qskew(alg, q)
    rho = alg.rho

    # exact closure coefficients in the span of the slices
    slices = rho.reshape(d, d ** 3).T  # columns are the slices
    rhs = lhs.reshape(d ** 3, d ** 3).T  # column (ijk) is the product
    sol = solve_linear(slices, rhs)
    span = sol.T.reshape(d, d, d, d) if sol else None

    matches = []
    for conv in _conventions():
        pred = einsum("ijkm,mprs->ijkprs", conv.coefficients(rho), conv.slices(rho))
        lam = uniform_factor(lhs, pred)
        if lam is not None:
            matches.append((conv, lam))
    if not matches:
        return CubicReport(False, None, None, span, ())
    conv, lam = matches[0]
    return CubicReport(True, conv, lam, span, tuple(matches))


def pauli_matrices(fld: ScalarField) -> tuple[FieldArray, FieldArray, FieldArray]:
    """Exact sigma_1, sigma_2, sigma_3 (needs a field containing i)."""
    if fld.order % 4:
        raise PreconditionError(f"Q(zeta_{fld.order}) does not contain i")
    i = fld.zeta(fld.order // 4)
    one, zero = fld.one(), fld.zero()
    s1 = FieldArray.from_scalars(fld, [[zero, one], [one, zero]])
    s2 = FieldArray.from_scalars(fld, [[zero, -i], [i, zero]])
    s3 = FieldArray.from_scalars(fld, [[one, zero], [zero, -one]])
    return s1, s2, s3


@dataclass(frozen=True, eq=False)
class PauliReport:
    factor: Cyc | None
    lhs: FieldArray
    rhs: FieldArray
    failing: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        return self.factor is not None

    def __bool__(self):
        return self.ok


def pauli_check(q, alg: TernaryAlgebra | None = None) -> PauliReport:
    """Compare ``S_ijk = s_i s_j s_k + q s_j s_k s_i + q^2 s_k s_i s_j`` with
    ``sum_m rho^m_ijk s_m`` for the first two Pauli matrices.

    ``alg`` defaults to the dimension-2 q-skew algebra of the identity
    metric.  The report carries the single scalar ``lam`` with
    ``S = lam * rhs`` on all eight index triples, or the first triple
    where no common scalar exists.
    """
    if isinstance(q, Cyc):
        fld = q.field
    else:
        raise PreconditionError("q must be a field element")
    if fld.order % 12:
        raise PreconditionError(f"Q(zeta_{fld.order}) lacks i or a primitive cube root")
    if q * q * q != 1 or q == 1:
        raise PreconditionError(f"q = {q} is not a primitive cube root of unity")
    if alg is None:
        from .ternary import metric_algebra, qskew_product

        alg = qskew_product(metric_algebra(FieldArray.eye(fld, 2), "middle"), q)
    if alg.dim != 2 or alg.field is not fld:
        raise DimensionError("pauli_check needs a dimension-2 algebra over the field of q")
    s1, s2, _ = pauli_matrices(fld)
    sig = FieldArray.stack([s1, s2])  # (m, row, col)
    prod = einsum("iab,jbc,kcd->ijkad", sig, sig, sig)
    lhs = prod + prod.reindex("jkiad->ijkad").scale(q) + prod.reindex("kijad->ijkad").scale(q * q)
    rhs = einsum("mijk,mad->ijkad", alg.rho, sig)
    lam = uniform_factor(lhs, rhs)
    failing = None
    if lam is None:
        failing = _first_nonproportional(lhs, rhs)
    return PauliReport(lam, lhs, rhs, failing)


def _first_nonproportional(lhs: FieldArray, rhs: FieldArray):
    pos = rhs.first_nonzero()
    lam = lhs[pos] / rhs[pos] if pos is not None else lhs.field.zero()
    diff = lhs - rhs.scale(lam)
    first = diff.first_nonzero()
    return tuple(first[:3]) if first is not None else None
