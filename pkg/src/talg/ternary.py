"""Ternary algebras by structure constants.

Storage convention: ``rho[n, i, j, k]`` is the coefficient of ``e_n`` in
``[e_i e_j e_k]`` (0-based indices, output index first).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property

from .arrays import FieldArray, as_array, einsum
from .binary import BinaryAlgebra
from .checks import CheckResult, compare_sides
from .errors import DimensionError, PreconditionError
from .linalg import rank
from .scalars import Cyc, ScalarField, as_scalar

__all__ = [
    "KINDS",
    "TernaryAlgebra",
    "MetricCombination",
    "ternary_product",
    "check_associativity",
    "check_star",
    "apply_star",
    "star_to_btype",
    "symmetrize_product",
    "qskew_product",
    "metric_algebra",
    "trivial_ternary",
    "one_dim_algebra",
]

KINDS = ("strong", "B", "left", "right", "central")
_DECLARABLE = KINDS + ("none",)


@dataclass(frozen=True, eq=False)
class TernaryAlgebra:
    """A ternary algebra ``[e_i e_j e_k] = sum_n rho[n,i,j,k] e_n``.

    ``star`` (optional) is the matrix of the anti-linear anti-involution:
    column j holds the coordinates of ``e_j*``.  ``antilinear_middle`` marks
    algebras whose product conjugates the coefficients of the middle
    argument (B-type algebras obtained from a star over a non-real field).
    """

    rho: FieldArray
    star: FieldArray | None = None
    declared_kind: str = "none"
    antilinear_middle: bool = False
    name: str = ""
    metadata: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        s = self.rho.shape
        if len(s) != 4 or len(set(s)) != 1:
            raise DimensionError(f"structure tensor must be (d, d, d, d), got {s}")
        if self.star is not None and self.star.shape != (s[0], s[0]):
            raise DimensionError("star matrix must be dim x dim")
        if self.declared_kind not in _DECLARABLE:
            raise ValueError(f"unknown associativity kind {self.declared_kind!r}")

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def field(self) -> ScalarField:
        return self.rho.field

    @cached_property
    def middle_rho(self) -> FieldArray:
        """Structure tensor to use when a product sits in a middle slot."""
        return self.rho.conj() if self.antilinear_middle else self.rho

    def basis(self, i: int) -> FieldArray:
        v = FieldArray.zeros(self.field, (self.dim,))
        v.num[i, 0] = 1
        return v

    def with_tensor(self, rho: FieldArray, **kw) -> "TernaryAlgebra":
        kw.setdefault("declared_kind", "none")
        kw.setdefault("metadata", {})
        return replace(self, rho=rho, **kw)

    def verify_declared(self) -> CheckResult | None:
        if self.declared_kind == "none":
            return None
        return check_associativity(self, self.declared_kind)

    def is_strong(self) -> bool:
        return _strong_cache(self)


def _strong_cache(alg):
    res = alg.__dict__.get("_strong_ok")
    if res is None:
        res = check_associativity(alg, "strong").ok
        object.__setattr__(alg, "_strong_ok", res)
    return res


def ternary_product(alg: TernaryAlgebra, a, b, c) -> FieldArray:
    """``[a b c]`` for coordinate vectors; trilinear (middle slot anti-linear
    when ``alg.antilinear_middle``)."""
    a, b, c = (as_array(v, alg.field) for v in (a, b, c))
    for v in (a, b, c):
        if v.shape != (alg.dim,):
            raise DimensionError(f"expected vectors of length {alg.dim}, got {v.shape}")
    if alg.antilinear_middle:
        b = b.conj()
    return einsum("i,j,k,nijk->n", a, b, c, alg.rho)


def _sides(alg: TernaryAlgebra, kind: str):
    rho, mid = alg.rho, alg.middle_rho
    left = einsum("pabc,npde->abcden", rho, rho)           # [[abc]de]
    right = einsum("pcde,nabp->abcden", rho, rho)          # [ab[cde]]
    if kind == "B":
        centre = einsum("pdcb,nape->abcden", rho, mid)     # [a[dcb]e]
        centre_label = "[a[dcb]e]"
    else:
        centre = einsum("pbcd,nape->abcden", rho, mid)     # [a[bcd]e]
        centre_label = "[a[bcd]e]"
    return left, centre, right, centre_label


def check_associativity(alg: TernaryAlgebra, kind: str = "strong") -> CheckResult:
    """Exhaustive check over all basis quintuples (a, b, c, d, e).

    ``strong``/``B``: ``[[abc]de] = [a[bcd]e] = [ab[cde]]`` (resp. with the
    central form ``[a[dcb]e]``); ``left``: ``[[abc]de] = [a[bcd]e]``;
    ``right``: ``[a[bcd]e] = [ab[cde]]``; ``central``: ``[[abc]de] = [ab[cde]]``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown associativity kind {kind!r}; expected one of {KINDS}")
    left, centre, right, cl = _sides(alg, kind)
    if kind in ("strong", "B"):
        return compare_sides(kind, "abcde", [left, centre, right], ["[[abc]de]", cl, "[ab[cde]]"])
    if kind == "left":
        return compare_sides(kind, "abcde", [left, centre], ["[[abc]de]", cl])
    if kind == "right":
        return compare_sides(kind, "abcde", [centre, right], [cl, "[ab[cde]]"])
    return compare_sides(kind, "abcde", [left, right], ["[[abc]de]", "[ab[cde]]"])


def apply_star(alg: TernaryAlgebra, v) -> FieldArray:
    """``v*``: conjugate the coefficients, then apply the star matrix."""
    if alg.star is None:
        raise PreconditionError("algebra has no star structure")
    v = as_array(v, alg.field)
    return einsum("mn,n->m", alg.star, v.conj())


def check_star(alg: TernaryAlgebra) -> CheckResult:
    """Verify ``(a*)* = a`` and ``[abc]* = [c* b* a*]`` on basis triples."""
    if alg.star is None:
        raise PreconditionError("algebra has no star structure")
    s = alg.star
    d = alg.dim
    invol = einsum("mn,np->pm", s, s.conj())  # column p: (e_p*)*
    eye = FieldArray.eye(alg.field, d)
    res = compare_sides("star involution", "a", [invol, eye], ["(a*)*", "a"])
    if not res.ok:
        return res
    lhs = einsum("mn,nijk->ijkm", s, alg.rho.conj())
    smid = s.conj() if alg.antilinear_middle else s
    rhs = einsum("pk,qj,ri,mpqr->ijkm", s, smid, s, alg.rho)
    out = compare_sides("star", "abc", [lhs, rhs], ["[abc]*", "[c* b* a*]"])
    return CheckResult("star", out.counterexample, out.checked + d)


def star_to_btype(alg: TernaryAlgebra, verify: bool = True) -> TernaryAlgebra:
    """The product ``[a b c]_* = [a b* c]`` of a strongly associative
    star algebra; the result is B-type associative."""
    if alg.star is None:
        raise PreconditionError("algebra has no star structure")
    res = check_star(alg)
    if not res.ok:
        raise PreconditionError("star structure check failed", res)
    strong = check_associativity(alg, "strong")
    if not strong.ok:
        raise PreconditionError("input algebra is not strongly associative", strong)
    rho = einsum("nipk,pj->nijk", alg.rho, alg.star)
    out = TernaryAlgebra(rho, alg.star, "B", antilinear_middle=not alg.field.is_real,
                         name=f"{alg.name}_star" if alg.name else "")
    if verify:
        bres = check_associativity(out, "B")
        if not bres.ok:
            raise PreconditionError("star_to_btype produced a non-B-associative algebra", bres)
    return out


def symmetrize_product(alg: TernaryAlgebra) -> TernaryAlgebra:
    """``{abc}_sym = {abc} + {bca} + {cab}``."""
    rho = alg.rho
    out = rho + rho.reindex("njki->nijk") + rho.reindex("nkij->nijk")
    return alg.with_tensor(out, name=f"sym({alg.name})" if alg.name else "", star=None)


def qskew_product(alg: TernaryAlgebra, q) -> TernaryAlgebra:
    """``{abc}_q = {abc} + q{bca} + q^2{cab}`` for a primitive cube root q."""
    q = as_scalar(q, alg.field)
    if q * q * q != 1 or q == 1:
        raise PreconditionError(f"q = {q} is not a primitive cube root of unity")
    rho = alg.rho
    # reindex("njki->nijk") gives T[n,i,j,k] = rho[n,j,k,i]
    out = rho + rho.reindex("njki->nijk").scale(q) + rho.reindex("nkij->nijk").scale(q * q)
    return alg.with_tensor(out, name=f"qskew({alg.name})" if alg.name else "", star=None)


@dataclass(frozen=True, eq=False)
class MetricCombination:
    """``rho[n,i,j,k] = sum_lm M[l,m,n,i,j,k] g[l,m]`` with M symmetric in (l, m)."""

    metric: FieldArray
    m_tensor: FieldArray

    def __post_init__(self):
        d = self.metric.shape[0]
        if self.m_tensor.shape != (d,) * 6:
            raise DimensionError("M tensor must have shape (d,)*6")
        if self.m_tensor != self.m_tensor.reindex("lmnijk->mlnijk"):
            raise PreconditionError("M tensor is not symmetric in its first two indices")


def _check_metric(metric: FieldArray):
    if metric.ndim != 2 or metric.shape[0] != metric.shape[1]:
        raise DimensionError("metric must be a square matrix")
    if metric != metric.T:
        raise PreconditionError("metric is not symmetric")
    if rank(metric) != metric.shape[0]:
        raise PreconditionError("metric is degenerate")


def metric_algebra(metric, variant: str = "middle", fld: ScalarField | None = None) -> TernaryAlgebra:
    """Ternary product induced by a metric ``g``.

    ``middle``: ``{abc} = <a,b> c``; ``left``: ``<b,c> a``; ``right``:
    ``<c,a> b``.  ``metric`` may also be a :class:`MetricCombination`.
    """
    if isinstance(metric, MetricCombination):
        _check_metric(metric.metric)
        rho = einsum("lmnijk,lm->nijk", metric.m_tensor, metric.metric)
        return TernaryAlgebra(rho, name="metric_combination")
    if not isinstance(metric, FieldArray):
        if fld is None:
            raise ValueError("field required for a metric given as nested lists")
        metric = FieldArray.from_scalars(fld, metric)
    _check_metric(metric)
    d = metric.shape[0]
    eye = FieldArray.eye(metric.field, d)
    if variant == "middle":
        rho = einsum("ij,kn->nijk", metric, eye)
    elif variant == "left":
        rho = einsum("jk,in->nijk", metric, eye)
    elif variant == "right":
        rho = einsum("ki,jn->nijk", metric, eye)
    else:
        raise ValueError(f"unknown metric variant {variant!r}")
    return TernaryAlgebra(rho, name=f"metric_{variant}")


def trivial_ternary(alg: BinaryAlgebra, name: str = "") -> TernaryAlgebra:
    """``[abc] = (a b) c`` for an associative binary algebra."""
    m = alg.mult
    rho = einsum("ijt,tkn->nijk", m, m)
    return TernaryAlgebra(rho, name=name or f"trivial({alg.name})")


def one_dim_algebra(fld: ScalarField) -> TernaryAlgebra:
    """The algebra K with ``[abc] = abc``."""
    rho = FieldArray.zeros(fld, (1, 1, 1, 1))
    rho.num[0, 0, 0, 0, 0] = 1
    return TernaryAlgebra(rho, name="one_dim")
