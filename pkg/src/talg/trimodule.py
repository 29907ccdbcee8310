"""Tri-modules over ternary algebras and the enveloping bimodule U_M.

Action tensors (module basis m_a, algebra basis e_i):

    [e_i e_j m_a]_L = sum_b L[i, j, a, b] m_b
    [e_i m_a e_j]_C = sum_b C[i, j, a, b] m_b
    [m_a e_i e_j]_R = sum_b R[i, j, a, b] m_b

Identity sides are tensors over the arguments in the order they appear in
the identity's first expression, followed by the output coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .arrays import FieldArray, as_array, einsum
from .binary import BinaryAlgebra, check_binary_associative
from .checks import CheckResult, compare_sides
from .envelope import EnvelopeAlgebra, annihilates, build_envelope
from .errors import DimensionError, PreconditionError, WellDefinednessError
from .linalg import QuotientBasis, quotient_basis
from .ternary import TernaryAlgebra, check_associativity, trivial_ternary

__all__ = [
    "TriModule",
    "IDENTITIES",
    "B_IDENTITIES",
    "trimodule_identity",
    "trimodule_check",
    "trimodule_check_all",
    "Bimodule",
    "check_bimodule",
    "trivial_trimodule",
    "algebra_as_trimodule",
    "EnvelopingModule",
    "build_UM",
]


@dataclass(frozen=True, eq=False)
class TriModule:
    alg: TernaryAlgebra
    act_left: FieldArray
    act_central: FieldArray
    act_right: FieldArray
    kind: str = "standard"
    name: str = ""

    def __post_init__(self):
        d = self.alg.dim
        m = self.act_left.shape[2] if self.act_left.ndim == 4 else -1
        for t in (self.act_left, self.act_central, self.act_right):
            if t.shape != (d, d, m, m):
                raise DimensionError(f"action tensors must be ({d}, {d}, m, m), got {t.shape}")
        if self.kind not in ("standard", "B"):
            raise ValueError(f"unknown trimodule kind {self.kind!r}")

    @property
    def mdim(self) -> int:
        return self.act_left.shape[2]

    @property
    def field(self):
        return self.alg.field

    def left(self, a, b, m) -> FieldArray:
        return einsum("i,j,a,ijab->b", a, b, m, self.act_left)

    def central(self, a, m, b) -> FieldArray:
        return einsum("i,a,j,ijab->b", a, m, b, self.act_central)

    def right(self, m, a, b) -> FieldArray:
        return einsum("a,i,j,ijab->b", m, a, b, self.act_right)


# name -> (argument names, [(label, builder)]); builders take (rho, L, C, R)
IDENTITIES = {
    "lmod": ("abcdm", [
        ("[ab[cdm]_L]_L", lambda r, L, C, R: einsum("cdmp,abpo->abcdmo", L, L)),
        ("[[abc]dm]_L", lambda r, L, C, R: einsum("pabc,pdmo->abcdmo", r, L)),
        ("[a[bcd]m]_L", lambda r, L, C, R: einsum("pbcd,apmo->abcdmo", r, L)),
    ]),
    "rmod": ("mabcd", [
        ("[[mab]_Rcd]_R", lambda r, L, C, R: einsum("abmp,cdpo->mabcdo", R, R)),
        ("[ma[bcd]]_R", lambda r, L, C, R: einsum("pbcd,apmo->mabcdo", r, R)),
        ("[m[abc]d]_R", lambda r, L, C, R: einsum("pabc,pdmo->mabcdo", r, R)),
    ]),
    "cmod": ("abcmxyz", [
        ("[a[b[cmx]_Cy]_Cz]_C", lambda r, L, C, R: einsum("cxmp,bypq,azqo->abcmxyzo", C, C, C)),
        ("[[abc]m[xyz]]_C", lambda r, L, C, R: einsum("sabc,txyz,stmo->abcmxyzo", r, r, C)),
    ]),
    "lcmod": ("abcmd", [
        ("[a[bcm]_Ld]_C", lambda r, L, C, R: einsum("bcmp,adpo->abcmdo", L, C)),
        ("[ab[cmd]_C]_L", lambda r, L, C, R: einsum("cdmp,abpo->abcmdo", C, L)),
        ("[[abc]md]_C", lambda r, L, C, R: einsum("pabc,pdmo->abcmdo", r, C)),
    ]),
    "rcmod": ("ambcd", [
        ("[a[mbc]_Rd]_C", lambda r, L, C, R: einsum("bcmp,adpo->ambcdo", R, C)),
        ("[[amb]_Ccd]_R", lambda r, L, C, R: einsum("abmp,cdpo->ambcdo", C, R)),
        ("[am[bcd]]_C", lambda r, L, C, R: einsum("pbcd,apmo->ambcdo", r, C)),
    ]),
    "lrmod": ("abmcd", [
        ("[[abm]_Lcd]_R", lambda r, L, C, R: einsum("abmp,cdpo->abmcdo", L, R)),
        ("[ab[mcd]_R]_L", lambda r, L, C, R: einsum("cdmp,abpo->abmcdo", R, L)),
        ("[a[bmc]_Cd]_C", lambda r, L, C, R: einsum("bcmp,adpo->abmcdo", C, C)),
    ]),
}

# replacements for algebras of type B; lmod, rmod and lrmod are unchanged
B_IDENTITIES = dict(IDENTITIES)
B_IDENTITIES.update({
    "cmod": ("abcmxyz", [
        ("[a[b[cmx]_Cy]_Cz]_C", IDENTITIES["cmod"][1][0][1]),
        ("[[ayc]m[xbz]]_C", lambda r, L, C, R: einsum("sayc,txbz,stmo->abcmxyzo", r, r, C)),
    ]),
    "lcmod": ("abcmd", [
        ("[a[cbm]_Ld]_C", lambda r, L, C, R: einsum("cbmp,adpo->abcmdo", L, C)),
        ("[[amb]_Ccd]_R", lambda r, L, C, R: einsum("abmp,cdpo->abcmdo", C, R)),
    ]),
    "rcmod": ("ambcd", [
        ("[a[mbc]_Rd]_C", lambda r, L, C, R: einsum("bcmp,adpo->ambcdo", R, C)),
        ("[ab[cmd]_C]_L", lambda r, L, C, R: einsum("cdmp,abpo->ambcdo", C, L)),
    ]),
})

ORDER = ("lmod", "rmod", "cmod", "lcmod", "rcmod", "lrmod")


def trimodule_identity(tm: TriModule, name: str) -> CheckResult:
    table = B_IDENTITIES if tm.kind == "B" else IDENTITIES
    if name not in table:
        raise ValueError(f"unknown trimodule identity {name!r}")
    args, sides = table[name]
    r, L, C, R = tm.alg.rho, tm.act_left, tm.act_central, tm.act_right
    tensors = [build(r, L, C, R) for _, build in sides]
    return compare_sides(name, args, tensors, [label for label, _ in sides])


def trimodule_check_all(tm: TriModule) -> list[CheckResult]:
    return [trimodule_identity(tm, name) for name in ORDER]


def trimodule_check(tm: TriModule) -> CheckResult:
    """All six compatibility identities, stopping at the first failure."""
    checked = 0
    for name in ORDER:
        res = trimodule_identity(tm, name)
        checked += res.checked
        if not res.ok:
            return res
    return CheckResult(f"trimodule ({tm.kind})", None, checked)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """``e_i . m_a = sum_b left[i, a, b] m_b``, ``m_a . e_i = sum_b right[a, i, b] m_b``."""

    alg: BinaryAlgebra
    left: FieldArray
    right: FieldArray

    def __post_init__(self):
        d = self.alg.dim
        m = self.left.shape[1] if self.left.ndim == 3 else -1
        if self.left.shape != (d, m, m) or self.right.shape != (m, d, m):
            raise DimensionError("bimodule action tensors have inconsistent shapes")

    @property
    def mdim(self) -> int:
        return self.left.shape[1]


def check_bimodule(bm: Bimodule) -> CheckResult:
    mu, lam, rho = bm.alg.mult, bm.left, bm.right
    checks = [
        ("(ab)m = a(bm)", "abm", einsum("abt,tmo->abmo", mu, lam), einsum("bmt,ato->abmo", lam, lam)),
        ("(ma)b = m(ab)", "mab", einsum("mat,tbo->mabo", rho, rho), einsum("abt,mto->mabo", mu, rho)),
        ("(am)b = a(mb)", "amb", einsum("amt,tbo->ambo", lam, rho), einsum("mbt,ato->ambo", rho, lam)),
    ]
    total = 0
    for name, args, lhs, rhs in checks:
        res = compare_sides(name, args, [lhs, rhs])
        total += res.checked
        if not res.ok:
            return res
    return CheckResult("bimodule", None, total)


def trivial_trimodule(bm: Bimodule, talg: TernaryAlgebra | None = None) -> TriModule:
    """``[abm]_L = a(bm)``, ``[amb]_C = (am)b``, ``[mab]_R = (ma)b`` over the
    trivial ternary algebra of the binary algebra."""
    assoc = check_binary_associative(bm.alg)
    if not assoc.ok:
        raise PreconditionError("binary algebra is not associative", assoc)
    res = check_bimodule(bm)
    if not res.ok:
        raise PreconditionError("bimodule axioms fail", res)
    lam, rho = bm.left, bm.right
    L = einsum("jat,itb->ijab", lam, lam)
    C = einsum("iat,tjb->ijab", lam, rho)
    R = einsum("ait,tjb->ijab", rho, rho)
    talg = talg or trivial_ternary(bm.alg)
    return TriModule(talg, L, C, R, "standard", f"trivial({bm.alg.name})")


def regular_bimodule(alg: BinaryAlgebra) -> Bimodule:
    """The algebra as a bimodule over itself."""
    return Bimodule(alg, alg.mult, alg.mult)


def algebra_as_trimodule(alg: TernaryAlgebra, kind: str | None = None) -> TriModule:
    """M = A with all three actions given by the ternary product."""
    r = alg.rho
    if kind is None:
        kind = "B" if alg.declared_kind == "B" else "standard"
    return TriModule(alg, r.reindex("bija->ijab"), r.reindex("biaj->ijab"), r.reindex("baij->ijab"),
                     kind, f"self({alg.name})")


__all__ += ["regular_bimodule", "ORDER"]


# ---------------------------------------------------------------------------
# enveloping bimodule


@dataclass(frozen=True, eq=False)
class EnvelopingModule:
    """U_M = M_1 + M_0 as a graded bimodule over U_A.

    M_0 is a quotient of the ambient ``A (x) M + M (x) A``: the coordinate
    of ``e_a (x) m_b`` is ``a * mdim + b`` and that of ``m_b (x) e_a`` is
    ``d * mdim + b * d + a``.  ``left``/``right`` are the action tensors of
    U_A (odd basis first, then A_0) on U_M (M first, then M_0):
    ``x . u = sum_v left[x, u, v] u_v``, ``u . x = sum_v right[u, x, v] u_v``.
    """

    tm: TriModule
    env: EnvelopeAlgebra
    m0: QuotientBasis
    left: FieldArray
    right: FieldArray

    @property
    def dim_odd(self) -> int:
        return self.tm.mdim

    @property
    def dim_even(self) -> int:
        return self.m0.dim

    @property
    def dim(self) -> int:
        return self.dim_odd + self.dim_even

    @cached_property
    def bimodule(self) -> Bimodule:
        return Bimodule(self.env.binary, self.left, self.right)


def _um_relations(tm: TriModule) -> FieldArray:
    alg = tm.alg
    d, m = alg.dim, tm.mdim
    fld = alg.field
    rho, L, C, R = alg.rho, tm.act_left, tm.act_central, tm.act_right
    ea, em = FieldArray.eye(fld, d), FieldArray.eye(fld, m)
    n_am = d * m

    def am(t):  # tensor (..., a, m) in A (x) M coordinates -> ambient
        lead = t.shape[:-2]
        z = FieldArray.zeros(fld, lead + (n_am + m * d,))
        z[..., :n_am] = t.reshape(lead + (n_am,))
        return z

    def ma(t):  # tensor (..., m, a) in M (x) A coordinates -> ambient
        lead = t.shape[:-2]
        z = FieldArray.zeros(fld, lead + (n_am + m * d,))
        z[..., n_am:] = t.reshape(lead + (m * d,))
        return z

    fams = [
        # [abc] (x) m - a (x) [bcm]_L
        am(einsum("nabc,mv->abcmnv", rho, em)) - am(einsum("au,bcmv->abcmuv", ea, L)),
        # [abm]_L (x) c - a (x) [bmc]_C
        ma(einsum("abmv,cu->abmcvu", L, ea)) - am(einsum("au,bcmv->abmcuv", ea, C)),
        # [amb]_C (x) c - a (x) [mbc]_R
        ma(einsum("abmv,cu->ambcvu", C, ea)) - am(einsum("au,bcmv->ambcuv", ea, R)),
        # [mab]_R (x) c - m (x) [abc]
        ma(einsum("abmv,cu->mabcvu", R, ea)) - ma(einsum("mv,uabc->mabcvu", em, rho)),
    ]
    width = n_am + m * d
    return [f.reshape(-1, width) for f in fams]


def build_UM(tm: TriModule, env: EnvelopeAlgebra | None = None) -> EnvelopingModule:
    alg = tm.alg
    strong = check_associativity(alg, "strong")
    if not strong.ok:
        raise PreconditionError("U_M needs a strongly associative algebra", strong)
    res = trimodule_check(tm)
    if not res.ok:
        raise PreconditionError("module fails the trimodule identities", res)
    env = env or build_envelope(alg)
    fld = alg.field
    d, m = alg.dim, tm.mdim
    n_am = d * m
    width = n_am + m * d
    fams = _um_relations(tm)
    rel = FieldArray.concatenate(fams, axis=0)
    m0 = quotient_basis(width, rel)
    k0 = m0.dim
    P = m0.projection
    ka = env.dim_even
    reps_a = list(env.a0.representatives)
    L, C, R = tm.act_left, tm.act_central, tm.act_right

    # ambient actions out of M_0 (on the A (x) M + M (x) A ambient)
    # a . (b (x) m) = [abm]_L ; a . (m (x) b) = [amb]_C
    odd_on_even_amb = FieldArray.zeros(fld, (d, width, m))
    odd_on_even_amb[:, :n_am] = L.reshape(d, n_am, m)
    odd_on_even_amb[:, n_am:] = C.reindex("abmo->ambo").reshape(d, m * d, m)
    # (b (x) m) . c = [bmc]_C ; (m (x) b) . c = [mbc]_R
    even_on_odd_amb = FieldArray.zeros(fld, (width, d, m))
    even_on_odd_amb[:n_am] = C.reindex("bcmo->bmco").reshape(n_am, d, m)
    even_on_odd_amb[n_am:] = R.reindex("bcmo->mbco").reshape(m * d, d, m)
    for label, amb, axis in (("A . M_0", odd_on_even_amb, 1), ("M_0 . A", even_on_odd_amb, 0)):
        if not annihilates(amb, rel, axis):
            raise WellDefinednessError(f"{label} depends on the representative")

    # A_0 acting on M (x_y ambient reps): (x (x) y) . m = [xym]_L ; m . (x (x) y) = [mxy]_R
    a0_on_m = L.reshape(d * d, m, m)[reps_a]
    m_on_a0 = R.reshape(d * d, m, m)[reps_a].reindex("tmo->mto")

    # A_0 acting on M_0: (x (x) y) . u = x . (y . u), via the odd actions
    # a . m  -> class(a (x) m) ; m . a -> class(m (x) a)
    a_m = P[:, :n_am].reshape(k0, d, m).reindex("kam->amk")          # odd a . odd m -> M_0
    m_a = P[:, n_am:].reshape(k0, m, d).reindex("kma->mak")          # odd m . odd a -> M_0

    odd_on_even = odd_on_even_amb[:, list(m0.representatives)]       # (d, k0, m)
    even_on_odd = even_on_odd_amb[list(m0.representatives)]          # (k0, d, m)
    xs = [r // d for r in reps_a]
    ys = [r % d for r in reps_a]
    # (x (x) y) . u for u in M_0: x . (y . u) where y . u is odd
    a0_on_m0 = einsum("tkm,tmn->tkn", odd_on_even[ys], a_m[xs])
    # u . (x (x) y) = (u . x) . y
    m0_on_a0 = einsum("ktm,tmn->ktn", even_on_odd[:, xs], m_a.reindex("mak->amk")[ys])

    nA = d + ka
    nU = m + k0
    left = FieldArray.zeros(fld, (nA, nU, nU))
    right = FieldArray.zeros(fld, (nU, nA, nU))
    left[:d, :m, m:] = a_m
    left[:d, m:, :m] = odd_on_even
    left[d:, :m, :m] = a0_on_m
    left[d:, m:, m:] = a0_on_m0
    right[:m, :d, m:] = m_a
    right[m:, :d, :m] = even_on_odd
    right[:m, d:, :m] = m_on_a0
    right[m:, d:, m:] = m0_on_a0
    return EnvelopingModule(tm, env, m0, left.normalized(), right.normalized())


def um_relation_families(tm: TriModule) -> list[FieldArray]:
    """The four relation families as rows in the ambient coordinates."""
    return _um_relations(tm)


def check_um_relations(um: EnvelopingModule) -> list[CheckResult]:
    """Each relation family projects to zero in M_0."""
    out = []
    for idx, fam in enumerate(_um_relations(um.tm)):
        img = einsum("qa,ra->rq", um.m0.projection, fam)
        z = FieldArray.zeros(img.field, img.shape)
        out.append(compare_sides(f"relation family {idx + 1}", "r", [img, z]))
    return out


def check_um_grading(um: EnvelopingModule) -> CheckResult:
    """Entries of the action tables respect ``A_i M_j -> M_{i+j}``."""
    d, m = um.env.dim_odd, um.dim_odd
    nA, nU = um.left.shape[0], um.left.shape[1]
    par_a = [1 if i < d else 0 for i in range(nA)]
    par_m = [1 if i < m else 0 for i in range(nU)]
    for name, table, order in (("left", um.left, "xuv"), ("right", um.right, "uxv")):
        mask = table.nonzero_mask()
        for idx in zip(*mask.nonzero()):
            x, u, v = (idx if order == "xuv" else (idx[1], idx[0], idx[2]))
            if (par_a[x] + par_m[u]) % 2 != par_m[v]:
                return CheckResult(f"grading ({name})", _grading_ce(table, idx), int(mask.size))
    return CheckResult("grading", None, int(um.left.nonzero_mask().size + um.right.nonzero_mask().size))


def _grading_ce(table, idx):
    from .checks import Counterexample

    return Counterexample("parity of action entry", tuple(int(i) for i in idx), table[idx[:2]], ("x", "u"))


def check_um_consequences(um: EnvelopingModule) -> list[CheckResult]:
    """The eight consequence identities, evaluated in U_M over U_A."""
    tm = um.tm
    alg = tm.alg
    env = um.env
    d, m = alg.dim, tm.mdim
    fld = alg.field
    rho, L, C, R = alg.rho, tm.act_left, tm.act_central, tm.act_right
    U = env.binary.mult
    nA = env.dim
    lt, rt = um.left, um.right
    # embeddings as tensors: algebra basis -> U_A coords, module basis -> U_M coords
    iA = FieldArray.eye(fld, nA)[:d]                     # (d, nA)
    iM = FieldArray.eye(fld, um.dim)[:m]                 # (m, nU)
    ia_rho = einsum("nabc,nx->abcx", rho, iA)            # [abc] in U_A

    def mulA(x, y, xs, ys, out):   # product in U_A
        return einsum(f"{xs}p,{ys}q,pqr->{out}r", x, y, U)

    def act_l(x, u, xs, us, out):  # U_A . U_M
        return einsum(f"{xs}p,{us}q,pqr->{out}r", x, u, lt)

    def act_r(u, x, us, xs, out):  # U_M . U_A
        return einsum(f"{us}p,{xs}q,pqr->{out}r", u, x, rt)

    def mod(t, lead):  # module-valued tensor (lead..., m) -> U_M coords
        return einsum(f"{lead}v,vr->{lead}r", t, iM)

    out = []
    # [abc] . m = a . [bcm]_L
    lhs = act_l(ia_rho, iM, "abc", "m", "abcm")
    rhs = act_l(iA, mod(L, "bcm"), "a", "bcm", "abcm")
    out.append(compare_sides("[abc]*m = a*[bcm]_L", "abcm", [lhs, rhs]))
    # m . [bcd] = [mbc]_R . d
    lhs = act_r(iM, ia_rho, "m", "bcd", "mbcd")
    rhs = act_r(mod(R.reindex("bcmv->mbcv"), "mbc"), iA, "mbc", "d", "mbcd")
    out.append(compare_sides("m*[bcd] = [mbc]_R*d", "mbcd", [lhs, rhs]))
    # [abc] . (m . d) = [ab[cmd]_C]_L
    md = act_r(iM, iA, "m", "d", "md")
    lhs = act_l(ia_rho, md, "abc", "md", "abcmd")
    rhs = mod(einsum("cdmp,abpo->abcmdo", C, L), "abcmd")
    out.append(compare_sides("[abc]*(m*d) = [ab[cmd]_C]_L", "abcmd", [lhs, rhs]))
    # (a . m) . [bcd] = [[amb]_C cd]_R
    am_ = act_l(iA, iM, "a", "m", "am")
    lhs = act_r(am_, ia_rho, "am", "bcd", "ambcd")
    rhs = mod(einsum("abmp,cdpo->ambcdo", C, R), "ambcd")
    out.append(compare_sides("(a*m)*[bcd] = [[amb]_Ccd]_R", "ambcd", [lhs, rhs]))
    # (a . [bcd]) . m = ([abc] . d) . m = [abc] . (d . m) = [ab[cdm]_L]_L
    s1 = act_l(mulA(iA, ia_rho, "a", "bcd", "abcd"), iM, "abcd", "m", "abcdm")
    s2 = act_l(mulA(ia_rho, iA, "abc", "d", "abcd"), iM, "abcd", "m", "abcdm")
    dm = act_l(iA, iM, "d", "m", "dm")
    s3 = act_l(ia_rho, dm, "abc", "dm", "abcdm")
    s4 = mod(einsum("cdmp,abpo->abcdmo", L, L), "abcdm")
    out.append(compare_sides("(a*[bcd])*m = ([abc]*d)*m = [abc]*(d*m) = [ab[cdm]_L]_L", "abcdm",
                             [s1, s2, s3, s4]))
    # m . ([cde] . f) = m . (c . [def]) = (m . c) . [def] = [[mcd]_R ef]_R
    s1 = act_r(iM, mulA(ia_rho, iA, "cde", "f", "cdef"), "m", "cdef", "mcdef")
    s2 = act_r(iM, mulA(iA, ia_rho, "c", "def", "cdef"), "m", "cdef", "mcdef")
    mc = act_r(iM, iA, "m", "c", "mc")
    s3 = act_r(mc, ia_rho, "mc", "def", "mcdef")
    s4 = mod(einsum("cdmp,efpo->mcdefo", R, R), "mcdef")
    out.append(compare_sides("m*([cde]*f) = m*(c*[def]) = (m*c)*[def] = [[mcd]_Ref]_R", "mcdef",
                             [s1, s2, s3, s4]))
    # (a . [bcd]) . (m . e) = ([abc] . d) . (m . e) = [abc] . [dme]_C
    me = act_r(iM, iA, "m", "e", "me")
    s1 = act_l(mulA(iA, ia_rho, "a", "bcd", "abcd"), me, "abcd", "me", "abcdme")
    s2 = act_l(mulA(ia_rho, iA, "abc", "d", "abcd"), me, "abcd", "me", "abcdme")
    s3 = act_l(ia_rho, mod(C.reindex("demv->dmev"), "dme"), "abc", "dme", "abcdme")
    out.append(compare_sides("(a*[bcd])*(m*e) = ([abc]*d)*(m*e) = [abc]*[dme]_C", "abcdme", [s1, s2, s3]))
    # (a . m) . ([bcd] . e) = (a . m) . (b . [cde]) = [amb]_C . [cde]
    s1 = act_r(am_, mulA(ia_rho, iA, "bcd", "e", "bcde"), "am", "bcde", "ambcde")
    s2 = act_r(am_, mulA(iA, ia_rho, "b", "cde", "bcde"), "am", "bcde", "ambcde")
    s3 = act_r(mod(C.reindex("abmv->ambv"), "amb"), ia_rho, "amb", "cde", "ambcde")
    out.append(compare_sides("(a*m)*([bcd]*e) = (a*m)*(b*[cde]) = [amb]_C*[cde]", "ambcde", [s1, s2, s3]))
    return out


__all__ += ["um_relation_families", "check_um_relations", "check_um_grading", "check_um_consequences"]
