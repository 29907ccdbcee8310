"""The universal binary envelope U_A = A_1 + A_0 of a strongly associative
ternary algebra.

A_1 is A itself; A_0 is A (x) A modulo the span of ``[xyz] (x) w - x (x) [yzw]``.
The ambient index of ``e_x (x) e_w`` is ``x * d + w``.  The four graded
products are realised as tables over the quotient representatives and
each is checked to be independent of the representative before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .arrays import FieldArray, as_array, einsum
from .binary import BinaryAlgebra, check_binary_associative
from .checks import CheckResult, compare_sides
from .errors import DimensionError, PreconditionError, WellDefinednessError
from .linalg import QuotientBasis, quotient_basis
from .ternary import TernaryAlgebra, check_associativity

__all__ = [
    "EnvelopeAlgebra",
    "GradedElement",
    "relation_tensor",
    "even_quotient",
    "build_envelope",
    "envelope_multiply",
    "UniversalLift",
    "check_envelope_universal",
    "annihilates",
]


def relation_tensor(alg: TernaryAlgebra) -> FieldArray:
    """``R[x, y, z, w, :]`` = ambient coordinates of ``[xyz] (x) w - x (x) [yzw]``."""
    d = alg.dim
    rho = alg.rho
    eye = FieldArray.eye(alg.field, d)
    first = einsum("nxyz,wv->xyzwnv", rho, eye)
    second = einsum("xn,vyzw->xyzwnv", eye, rho)
    return (first - second).reshape(d, d, d, d, d * d)


def even_quotient(alg: TernaryAlgebra) -> QuotientBasis:
    """A_0 as a quotient of the ambient A (x) A (no associativity required)."""
    d = alg.dim
    rel = relation_tensor(alg).reshape(d ** 4, d * d)
    return quotient_basis(d * d, rel)


def annihilates(ambient_map: FieldArray, relations: FieldArray, axis: int) -> bool:
    """True when contracting ``relations`` (k, ambient) into ``ambient_map``
    along ``axis`` gives zero."""
    moved = ambient_map.transpose((axis,) + tuple(i for i in range(ambient_map.ndim) if i != axis))
    flat = moved.reshape(moved.shape[0], -1)
    return einsum("ra,ab->rb", relations, flat).is_zero()


@dataclass(frozen=True, eq=False)
class EnvelopeAlgebra:
    """U_A with tables (indices of A_0 are quotient coordinates):

    ``oo[a, b, beta]``   odd * odd   -> even, class(a (x) b)
    ``eo[beta, c, n]``   even * odd  -> odd,  [x y c] for beta = class(x (x) y)
    ``oe[a, beta, n]``   odd * even  -> odd,  [a x y]
    ``ee[beta, gamma, delta]`` even * even -> even, class([x y z] (x) w)
    """

    base: TernaryAlgebra
    a0: QuotientBasis
    oo: FieldArray
    eo: FieldArray
    oe: FieldArray
    ee: FieldArray

    @property
    def dim_odd(self) -> int:
        return self.base.dim

    @property
    def dim_even(self) -> int:
        return self.a0.dim

    @property
    def dim(self) -> int:
        return self.dim_odd + self.dim_even

    @property
    def field(self):
        return self.base.field

    @cached_property
    def binary(self) -> BinaryAlgebra:
        """U_A as a binary algebra: odd basis first, then the even basis."""
        d, k = self.dim_odd, self.dim_even
        n = d + k
        m = FieldArray.zeros(self.field, (n, n, n))
        m[:d, :d, d:] = self.oo
        m[d:, :d, :d] = self.eo
        m[:d, d:, :d] = self.oe
        m[d:, d:, d:] = self.ee
        return BinaryAlgebra(m.normalized(), f"U({self.base.name})")

    def odd(self, vec) -> "GradedElement":
        vec = as_array(vec, self.field)
        return GradedElement(self, vec, FieldArray.zeros(self.field, (self.dim_even,)))

    def even(self, vec) -> "GradedElement":
        vec = as_array(vec, self.field)
        return GradedElement(self, FieldArray.zeros(self.field, (self.dim_odd,)), vec)

    def even_class(self, x: int, y: int) -> FieldArray:
        """Quotient coordinates of ``class(e_x (x) e_y)``."""
        return self.oo[x, y]

    def export(self) -> dict:
        return {
            "a0_dimension": self.dim_even,
            "representatives": [[r // self.dim_odd, r % self.dim_odd] for r in self.a0.representatives],
            "tables": {
                "odd_odd": self.oo.literals(),
                "even_odd": self.eo.literals(),
                "odd_even": self.oe.literals(),
                "even_even": self.ee.literals(),
            },
        }


@dataclass(frozen=True, eq=False)
class GradedElement:
    env: EnvelopeAlgebra
    odd: FieldArray
    even: FieldArray

    def __post_init__(self):
        if self.odd.shape != (self.env.dim_odd,) or self.even.shape != (self.env.dim_even,):
            raise DimensionError("graded element has the wrong shape")

    @property
    def vector(self) -> FieldArray:
        return FieldArray.concatenate([self.odd, self.even])

    @classmethod
    def from_vector(cls, env: EnvelopeAlgebra, vec: FieldArray) -> "GradedElement":
        d = env.dim_odd
        return cls(env, vec[:d], vec[d:])

    def __add__(self, other):
        _same_env(self, other)
        return GradedElement(self.env, self.odd + other.odd, self.even + other.even)

    def __sub__(self, other):
        _same_env(self, other)
        return GradedElement(self.env, self.odd - other.odd, self.even - other.even)

    def __eq__(self, other):
        return (isinstance(other, GradedElement) and other.env is self.env
                and self.odd == other.odd and self.even == other.even)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.odd.is_zero() and self.even.is_zero()


def _same_env(x, y):
    if not isinstance(y, GradedElement) or y.env is not x.env:
        raise ValueError("graded elements belong to different envelopes")


def envelope_multiply(env: EnvelopeAlgebra, x: GradedElement, y: GradedElement) -> GradedElement:
    if x.env is not env or y.env is not env:
        raise ValueError("graded elements belong to a different envelope")
    vec = env.binary.multiply(x.vector, y.vector)
    return GradedElement.from_vector(env, vec)


def build_envelope(alg: TernaryAlgebra) -> EnvelopeAlgebra:
    strong = check_associativity(alg, "strong")
    if not strong.ok:
        raise PreconditionError("the envelope needs a strongly associative algebra", strong)
    if alg.antilinear_middle:
        raise PreconditionError("the envelope needs a multilinear product")
    d = alg.dim
    fld = alg.field
    rho = alg.rho
    a0 = even_quotient(alg)
    proj = a0.projection  # (k, d*d)
    k = a0.dim
    reps = list(a0.representatives)
    rel = relation_tensor(alg).reshape(d ** 4, d * d)

    # even (x) odd and odd (x) even on the ambient A (x) A
    eo_amb = rho.reindex("nxyc->xycn").reshape(d * d, d, d)
    oe_amb = rho.reindex("naxy->axyn").reshape(d, d * d, d)
    # (x (x) y, z (x) w) -> class([xyz] (x) w)
    ee_amb = einsum("nxyz,bnw->xyzwb", rho, proj.reshape(k, d, d)).reshape(d * d, d * d, k)
    checks = [("even * odd", eo_amb, 0), ("odd * even", oe_amb, 1),
              ("even * even (left)", ee_amb, 0), ("even * even (right)", ee_amb, 1)]
    for label, amb, axis in checks:
        if not annihilates(amb, rel, axis):
            raise WellDefinednessError(f"{label} product depends on the representative")

    oo = proj.reshape(k, d, d).reindex("bxy->xyb")
    eo = eo_amb[reps] if k else FieldArray.zeros(fld, (0, d, d))
    oe = oe_amb[:, reps] if k else FieldArray.zeros(fld, (d, 0, d))
    ee = ee_amb[reps][:, reps] if k else FieldArray.zeros(fld, (0, 0, 0))
    return EnvelopeAlgebra(alg, a0, oo, eo, oe, ee)


@dataclass(frozen=True, eq=False)
class UniversalLift:
    """The homomorphism U_A -> B: ``matrix`` is (dim B) x (dim U_A)."""

    matrix: FieldArray
    homomorphism: CheckResult
    multiplicative: CheckResult

    @property
    def ok(self) -> bool:
        return self.multiplicative.ok

    def __bool__(self):
        return self.ok


def check_ternary_hom(alg: TernaryAlgebra, target: BinaryAlgebra, phi: FieldArray) -> CheckResult:
    """``phi([abc]) = phi(a) phi(b) phi(c)`` on basis triples."""
    m = target.mult
    lhs = einsum("nabc,pn->abcp", alg.rho, phi)
    ab = einsum("qa,rb,qrs->abs", phi, phi, m)
    rhs = einsum("abs,tc,stp->abcp", ab, phi, m)
    return compare_sides("ternary homomorphism", "abc", [lhs, rhs], ["phi([abc])", "phi(a)phi(b)phi(c)"])


def check_envelope_universal(env: EnvelopeAlgebra, target: BinaryAlgebra, phi) -> UniversalLift:
    """Extend a ternary homomorphism ``phi: A -> B`` (B binary associative,
    trivial ternary structure) to the binary homomorphism U_A -> B."""
    alg = env.base
    phi = as_array(phi, alg.field)
    if phi.shape != (target.dim, alg.dim):
        raise DimensionError(f"phi must be {target.dim} x {alg.dim}")
    hom = check_ternary_hom(alg, target, phi)
    if not hom.ok:
        raise PreconditionError("phi is not a ternary homomorphism", hom)
    d = alg.dim
    # class(a (x) b) -> phi(a) phi(b) on the ambient space
    amb = einsum("qa,rb,qrs->abs", phi, phi, target.mult).reshape(d * d, target.dim)
    rel = relation_tensor(alg).reshape(d ** 4, d * d)
    if not annihilates(amb, rel, 0):
        raise WellDefinednessError("even part of the lift does not factor through A_0")
    reps = list(env.a0.representatives)
    even = amb[reps].T if reps else FieldArray.zeros(alg.field, (target.dim, 0))
    matrix = FieldArray.concatenate([phi, even], axis=1)
    u = env.binary.mult
    lhs = einsum("xyz,pz->xyp", u, matrix)
    rhs = einsum("qx,ry,qrp->xyp", matrix, matrix, target.mult)
    mult = compare_sides("lift multiplicative", "xy", [lhs, rhs], ["phi~(x y)", "phi~(x) phi~(y)"])
    return UniversalLift(matrix, hom, mult)


def check_envelope_associative(env: EnvelopeAlgebra) -> CheckResult:
    return check_binary_associative(env.binary)


__all__ += ["check_ternary_hom", "check_envelope_associative"]
