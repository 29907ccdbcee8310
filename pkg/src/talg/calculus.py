"""First order differential calculi: the universal binary calculus
Omega^1_u of an associative algebra, the universal ternary calculus
Omega^1_T(A) = A + A_0 (x) A + A (x) A_0 with its differential D, ternary
derivations, and the factorisation of a calculus through Omega^1_T.

Coordinates on Omega^1_T (d = dim A, k = dim A_0):
``a`` -> ``a``; ``beta (x) b`` -> ``d + beta * d + b``;
``c (x) gamma`` -> ``d + k * d + c * k + gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arrays import FieldArray, as_array, einsum
from .binary import BinaryAlgebra, check_binary_associative
from .checks import CheckResult, Counterexample, compare_sides
from .envelope import EnvelopeAlgebra, build_envelope
from .errors import DimensionError, PreconditionError
from .linalg import Inconsistent, nullspace, solve_linear
from .ternary import TernaryAlgebra, check_associativity
from .trimodule import Bimodule, TriModule, algebra_as_trimodule, check_bimodule, trimodule_check

__all__ = [
    "Omega1Binary",
    "build_omega1_binary",
    "check_binary_leibniz",
    "Omega1Ternary",
    "build_omega1_ternary",
    "ternary_D",
    "Calculus",
    "leibniz_terms",
    "check_ternary_leibniz",
    "derivation_system",
    "derivation_space",
    "FactorResult",
    "factor_calculus",
]


# ---------------------------------------------------------------------------
# binary


@dataclass(frozen=True, eq=False)
class Omega1Binary:
    """Omega^1_u = A + A (x) A with ``(a, b (x) c)`` stored at ``a`` and
    ``d + b * d + c``; ``left[x, w, v]`` and ``right[w, y, v]`` are the
    actions, ``D`` (dim x d) the universal differential."""

    base: BinaryAlgebra
    left: FieldArray
    right: FieldArray
    D: FieldArray

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    @property
    def bimodule(self) -> Bimodule:
        return Bimodule(self.base, self.left, self.right)

    def element(self, a=None, tensor=None) -> FieldArray:
        d = self.base.dim
        fld = self.base.field
        out = FieldArray.zeros(fld, (self.dim,))
        if a is not None:
            out[:d] = as_array(a, fld)
        if tensor is not None:
            out[d:] = as_array(tensor, fld).reshape(d * d)
        return out


def build_omega1_binary(alg: BinaryAlgebra) -> Omega1Binary:
    """``x (a, b (x) c) = (0, x (x) a + xb (x) c)`` and
    ``(a, b (x) c) y = (ay, -a (x) y + b (x) cy - bc (x) y)``."""
    res = check_binary_associative(alg)
    if not res.ok:
        raise PreconditionError("binary algebra is not associative", res)
    d = alg.dim
    mu = alg.mult
    fld = alg.field
    n = d + d * d
    eye = FieldArray.eye(fld, d)
    left = FieldArray.zeros(fld, (d, n, n))
    # x . a -> x (x) a
    left[:, :d, d:] = einsum("xu,av->xauv", eye, eye).reshape(d, d, d * d)
    # x . (b (x) c) -> xb (x) c
    left[:, d:, d:] = einsum("xbt,cv->xbctv", mu, eye).reshape(d, d * d, d * d)
    right = FieldArray.zeros(fld, (n, d, n))
    # a . y -> (ay, -a (x) y)
    right[:d, :, :d] = mu
    right[:d, :, d:] = -einsum("au,yv->ayuv", eye, eye).reshape(d, d, d * d)
    # (b (x) c) . y -> b (x) cy - bc (x) y
    t1 = einsum("bu,cyt->bcyut", eye, mu)
    t2 = einsum("bct,yv->bcytv", mu, eye)
    right[d:, :, d:] = (t1 - t2).reshape(d * d, d, d * d)
    D = FieldArray.zeros(fld, (n, d))
    D[:d] = eye
    return Omega1Binary(alg, left.normalized(), right.normalized(), D)


def check_binary_leibniz(om: Omega1Binary) -> CheckResult:
    """``D(ab) = D(a) b + a D(b)`` on basis pairs."""
    mu, D = om.base.mult, om.D
    lhs = einsum("abt,vt->abv", mu, D)
    rhs = einsum("wa,wbv->abv", D, om.right) + einsum("wb,awv->abv", D, om.left)
    return compare_sides("binary Leibniz", "ab", [lhs, rhs], ["D(ab)", "D(a)b + aD(b)"])


def check_omega1_binary_bimodule(om: Omega1Binary) -> CheckResult:
    """``(x w) y = x (w y)`` for basis x, y and basis w of Omega^1_u."""
    lhs = einsum("xwu,uyv->xwyv", om.left, om.right)
    rhs = einsum("wyu,xuv->xwyv", om.right, om.left)
    return compare_sides("(xw)y = x(wy)", "xwy", [lhs, rhs])


__all__ += ["check_omega1_binary_bimodule"]


# ---------------------------------------------------------------------------
# ternary


@dataclass(frozen=True, eq=False)
class Omega1Ternary:
    alg: TernaryAlgebra
    env: EnvelopeAlgebra
    tm: TriModule
    D: FieldArray

    @property
    def k(self) -> int:
        return self.env.dim_even

    @property
    def dim(self) -> int:
        return self.tm.mdim

    def first(self, a: int) -> int:
        return a

    def second(self, beta: int, b: int) -> int:
        d = self.alg.dim
        return d + beta * d + b

    def third(self, c: int, gamma: int) -> int:
        d = self.alg.dim
        return d + self.k * d + c * self.k + gamma

    def element(self, a=None, second=None, third=None) -> FieldArray:
        """Assemble an element from ``a`` (d), ``second`` (k x d) and
        ``third`` (d x k) coordinates."""
        d, k = self.alg.dim, self.k
        fld = self.alg.field
        out = FieldArray.zeros(fld, (self.dim,))
        if a is not None:
            out[:d] = as_array(a, fld)
        if second is not None:
            out[d:d + k * d] = as_array(second, fld).reshape(k * d)
        if third is not None:
            out[d + k * d:] = as_array(third, fld).reshape(d * k)
        return out

    def split(self, vec: FieldArray):
        d, k = self.alg.dim, self.k
        return vec[:d], vec[d:d + k * d].reshape(k, d), vec[d + k * d:].reshape(d, k)


def _place(fld, d, k, first=None, second=None, third=None, lead=()):
    """Assemble module-valued tensors with leading axes ``lead``."""
    n = d + 2 * k * d
    out = FieldArray.zeros(fld, tuple(lead) + (n,))
    if first is not None:
        out[..., :d] = first
    if second is not None and k:
        out[..., d:d + k * d] = second.reshape(tuple(lead) + (k * d,))
    if third is not None and k:
        out[..., d + k * d:] = third.reshape(tuple(lead) + (d * k,))
    return out


def build_omega1_ternary(alg: TernaryAlgebra, env: EnvelopeAlgebra | None = None,
                         verify: bool = False) -> Omega1Ternary:
    """The tri-module Omega^1_T(A) with its three actions.

    For x, y in A and w = (a, beta (x) b, c (x) gamma):

    ``[x y w]_L = (0, (x*y) (x) a + (x*[y beta]) (x) b, [xyc] (x) gamma)``
    ``[x w y]_C = (0, -(x*a) (x) y - (x*[beta b]) (x) y + (x*c) (x) [gamma y]
                    - (x*[c gamma]) (x) y, x (x) (a*y) + [x beta] (x) (b*y))``
    ``[w x y]_R = ([axy], beta (x) [bxy], -a (x) (x*y) - [beta b] (x) (x*y)
                    + c (x) ([gamma x]*y) - [c gamma] (x) (x*y))``

    where ``*`` is the envelope product.  ``verify`` runs the tri-module
    check before returning.
    """
    strong = check_associativity(alg, "strong")
    if not strong.ok:
        raise PreconditionError("Omega^1_T needs a strongly associative algebra", strong)
    if env is None:
        env = build_envelope(alg)
    elif env.base is not alg:
        raise ValueError("envelope was built from a different algebra")
    d, k = alg.dim, env.dim_even
    fld = alg.field
    rho = alg.rho
    oo, eo, oe = env.oo, env.eo, env.oe
    eye = FieldArray.eye(fld, d)
    eyek = FieldArray.eye(fld, k)
    n = d + 2 * k * d

    # left: tensor (x, y, w, v)
    L = FieldArray.zeros(fld, (d, d, n, n))
    L[:, :, :d] = _place(fld, d, k, second=einsum("xyq,au->xyaqu", oo, eye), lead=(d, d, d))
    yb = einsum("ybn,xnq->xybq", oe, oo)  # x * [y beta]
    sec_b = einsum("xyBq,bu->xyBbqu", yb, eye)
    L[:, :, d:d + k * d] = _place(fld, d, k, second=sec_b, lead=(d, d, k, d)).reshape(d, d, k * d, n)
    L[:, :, d + k * d:] = _place(fld, d, k, third=einsum("nxyc,Gg->xycGng", rho, eyek), lead=(d, d, d, k)).reshape(d, d, d * k, n)

    # central: tensor (x, y, w, v) for [x w y]_C
    C = FieldArray.zeros(fld, (d, d, n, n))
    sec_a = -einsum("xaq,yu->xyaqu", oo, eye)
    thr_a = einsum("xu,ayg->xyaug", eye, oo)
    C[:, :, :d] = _place(fld, d, k, second=sec_a, third=thr_a, lead=(d, d, d))
    xbb = einsum("Bbn,xnq->xBbq", eo, oo)  # x * [beta b]
    sec_b = -einsum("xBbq,yu->xyBbqu", xbb, eye)
    thr_b = einsum("xBn,byg->xyBbng", oe, oo)
    C[:, :, d:d + k * d] = _place(fld, d, k, second=sec_b, third=thr_b, lead=(d, d, k, d)).reshape(d, d, k * d, n)
    xcg = einsum("cGn,xnq->xcGq", oe, oo)  # x * [c gamma]
    sec_c = einsum("xcq,Gyu->xycGqu", oo, eo) - einsum("xcGq,yu->xycGqu", xcg, eye)
    C[:, :, d + k * d:] = _place(fld, d, k, second=sec_c, lead=(d, d, d, k)).reshape(d, d, d * k, n)

    # right: tensor (x, y, w, v) for [w x y]_R
    R = FieldArray.zeros(fld, (d, d, n, n))
    fir_a = rho.reindex("naxy->xyan")
    thr_a = -einsum("au,xyg->xyaug", eye, oo)
    R[:, :, :d] = _place(fld, d, k, first=fir_a, third=thr_a, lead=(d, d, d))
    sec_b = einsum("BQ,nbxy->xyBbQn", eyek, rho)
    thr_b = -einsum("Bbn,xyg->xyBbng", eo, oo)
    R[:, :, d:d + k * d] = _place(fld, d, k, second=sec_b, third=thr_b, lead=(d, d, k, d)).reshape(d, d, k * d, n)
    gx_y = einsum("Gxn,nyg->xyGg", eo, oo)  # [gamma x] * y
    thr_c = einsum("cu,xyGg->xycGug", eye, gx_y) - einsum("cGn,xyg->xycGng", oe, oo)
    R[:, :, d + k * d:] = _place(fld, d, k, third=thr_c, lead=(d, d, d, k)).reshape(d, d, d * k, n)

    tm = TriModule(alg, L.normalized(), C.normalized(), R.normalized(), "standard", f"Omega1_T({alg.name})")
    D = FieldArray.zeros(fld, (n, d))
    D[:d] = eye
    om = Omega1Ternary(alg, env, tm, D)
    if verify:
        res = trimodule_check(tm)
        if not res.ok:
            raise PreconditionError("Omega^1_T fails the tri-module identities", res)
    return om


def ternary_D(om: Omega1Ternary, a) -> FieldArray:
    """``D(a) = (a, 0, 0)``."""
    a = as_array(a, om.alg.field)
    if a.shape != (om.alg.dim,):
        raise DimensionError(f"expected a vector of length {om.alg.dim}")
    return einsum("wa,a->w", om.D, a)


@dataclass(frozen=True, eq=False)
class Calculus:
    """A linear map ``d: A -> M`` into a tri-module; ``d_matrix`` is (mdim x dim)."""

    alg: TernaryAlgebra
    module: TriModule
    d_matrix: FieldArray

    def __post_init__(self):
        if self.module.alg.dim != self.alg.dim:
            raise DimensionError("module is over an algebra of a different dimension")
        if self.d_matrix.shape != (self.module.mdim, self.alg.dim):
            raise DimensionError("d_matrix must be (module dim) x (algebra dim)")

    @classmethod
    def universal(cls, om: Omega1Ternary) -> "Calculus":
        return cls(om.alg, om.tm, om.D)

    @classmethod
    def from_derivation(cls, alg: TernaryAlgebra, delta: FieldArray) -> "Calculus":
        return cls(alg, algebra_as_trimodule(alg, "standard"), delta)


def leibniz_terms(calc: Calculus) -> dict:
    """The four tensors (f, g, h, out) of ``d([fgh])``, ``[df g h]_R``,
    ``[f dg h]_C`` and ``[f g dh]_L``."""
    dm = calc.d_matrix
    tm = calc.module
    return {
        "d[fgh]": einsum("nfgh,on->fgho", calc.alg.rho, dm),
        "R": einsum("mf,ghmo->fgho", dm, tm.act_right),
        "C": einsum("mg,fhmo->fgho", dm, tm.act_central),
        "L": einsum("mh,fgmo->fgho", dm, tm.act_left),
    }


def check_ternary_leibniz(calc: Calculus) -> CheckResult:
    """``d([fgh]) = [df g h]_R + [f dg h]_C + [f g dh]_L`` on basis triples."""
    t = leibniz_terms(calc)
    return compare_sides("ternary Leibniz", "fgh", [t["d[fgh]"], t["R"] + t["C"] + t["L"]],
                         ["d([fgh])", "[df g h]_R + [f dg h]_C + [f g dh]_L"])


def derivation_system(alg: TernaryAlgebra) -> FieldArray:
    """Rows (i, j, k, o) in lexicographic order, columns D[r, c] row major:
    ``D[e_i e_j e_k] - [De_i e_j e_k] - [e_i De_j e_k] - [e_i e_j De_k]``."""
    d = alg.dim
    rho = alg.rho
    eye = FieldArray.eye(alg.field, d)
    sys = (einsum("cijk,ro->ijkorc", rho, eye)
           - einsum("orjk,ci->ijkorc", rho, eye)
           - einsum("oirk,cj->ijkorc", rho, eye)
           - einsum("oijr,ck->ijkorc", rho, eye))
    return sys.reshape(d ** 4, d * d)


def derivation_space(alg: TernaryAlgebra) -> list[FieldArray]:
    """Basis of the ternary derivations of ``alg`` as (d x d) matrices
    (``D e_c = sum_r D[r, c] e_r``)."""
    d = alg.dim
    return [v.reshape(d, d) for v in nullspace(derivation_system(alg))]


# ---------------------------------------------------------------------------
# factorisation


@dataclass(frozen=True, eq=False)
class FactorResult:
    matrix: FieldArray | None
    checks: list = dc_field(default_factory=list)
    failure: CheckResult | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self):
        return self.ok


def _factor_column(env: EnvelopeAlgebra, amb: FieldArray, name: str):
    """Factor an ambient map on A (x) A (rows) through A_0; returns the
    (k, ...) values on the quotient basis or a failed CheckResult."""
    d = env.dim_odd
    k = env.dim_even
    rest = amb.shape[1:]
    flat = amb.reshape(d * d, -1)
    if k == 0:
        if flat.is_zero():
            return FieldArray.zeros(amb.field, (0,) + rest)
        pos = flat.first_nonzero()
        ce = Counterexample(f"{name}: map on A (x) A does not vanish on A_0 = 0", (pos[0] // d, pos[0] % d),
                            flat[pos[0]], ("x", "y"))
        return CheckResult(name, ce, d * d)
    sol = solve_linear(env.a0.projection.T, flat)
    if isinstance(sol, Inconsistent):
        ce = Counterexample(f"{name}: depends on the representative of the A_0 class", (sol.row,),
                            FieldArray.zeros(amb.field, (0,)), ("row",))
        return CheckResult(name, ce, d * d)
    return sol.reshape((k,) + rest)


def factor_calculus(om: Omega1Ternary, target: Calculus) -> FactorResult:
    """The tri-module map ``phi: Omega^1_T -> E`` with ``d = phi . D``.

    ``a -> d(a)``; ``class(x (x) y) (x) a -> [x y d(a)]_L``;
    ``a (x) class(x (x) y) -> [a d(x) y]_C + [a x d(y)]_L``.
    """
    alg = om.alg
    if target.alg.dim != alg.dim:
        raise DimensionError("target calculus is over an algebra of a different dimension")
    checks = []
    tres = trimodule_check(target.module)
    checks.append(tres)
    if not tres.ok:
        return FactorResult(None, checks, tres)
    lres = check_ternary_leibniz(target)
    checks.append(lres)
    if not lres.ok:
        return FactorResult(None, checks, lres)

    d, k = alg.dim, om.k
    fld = alg.field
    E = target.module
    dm = target.d_matrix
    me = E.mdim
    LE, CE, RE = E.act_left, E.act_central, E.act_right

    # second summand: (x, y, a) -> [x y d(a)]_L
    sec_amb = einsum("ma,xymo->xyao", dm, LE).reshape(d * d, d, me)
    sec = _factor_column(om.env, sec_amb, "second summand")
    if isinstance(sec, CheckResult):
        checks.append(sec)
        return FactorResult(None, checks, sec)
    # third summand: (x, y, a) -> [a d(x) y]_C + [a x d(y)]_L
    thr_amb = (einsum("mx,aymo->xyao", dm, CE) + einsum("my,axmo->xyao", dm, LE)).reshape(d * d, d, me)
    thr = _factor_column(om.env, thr_amb, "third summand")
    if isinstance(thr, CheckResult):
        checks.append(thr)
        return FactorResult(None, checks, thr)

    phi = FieldArray.zeros(fld, (me, om.dim))
    phi[:, :d] = dm
    if k:
        phi[:, d:d + k * d] = sec.reindex("bao->oba").reshape(me, k * d)
        phi[:, d + k * d:] = thr.reindex("gao->oag").reshape(me, d * k)
    phi = phi.normalized()

    comp = einsum("ow,wa->ao", phi, om.D)
    res = compare_sides("d = phi . D", "a", [dm.T, comp], ["d(a)", "phi(D(a))"])
    checks.append(res)
    if not res.ok:
        return FactorResult(phi, checks, res)
    T = om.tm
    for name, args, act_o, act_e in (("intertwines L", "xyw", T.act_left, LE),
                                      ("intertwines C", "xyw", T.act_central, CE),
                                      ("intertwines R", "xyw", T.act_right, RE)):
        lhs = einsum("xywv,ev->xywe", act_o, phi)
        rhs = einsum("ew,xyef->xywf", phi, act_e)
        r = compare_sides(name, args, [lhs, rhs], ["phi(action)", "action(phi)"])
        checks.append(r)
        if not r.ok:
            return FactorResult(phi, checks, r)
    return FactorResult(phi, checks, None)
