"""Torsor algebras D = R[U,V,1/(a+λU)] under ℋ^(λ) and the truncated
D̃ = R[U,V]/(U^p - c, V^p - d) under G^(λ), with the maps relating them.

In D̃ the element a+λU is declared as a formal denominator.  Its p-th power
is a^p + λ^p c, so localizing there is the same as assuming a^p + λ^p c is a
unit of R; D̃ stays free of rank p² over R, so a+λU is a non-zero-divisor and
fraction equality is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraError,
    AlgebraHom,
    PresentedAlgebra,
    base_algebra,
    from_factors,
    hom_tensor,
    identity_hom,
    make_algebra,
    tensor,
)
from .catalog import build_scheme, lambda_label, lambda_param
from .coeffring import ParamPolynomial, ParamRing
from .hopf import ComoduleAlgebra, HopfStructure, check_comodule_algebra
from .report import VerificationReport

REF_TORSOR = "torsor algebras and the bijections r, r̃"
REF_CLEFT_POINT = "cleftness from a point"

KINDS = ("full", "truncated")


@dataclass(frozen=True)
class TorsorParams:
    lam: ParamPolynomial
    a: ParamPolynomial
    c: ParamPolynomial
    d: ParamPolynomial

    @property
    def ring(self) -> ParamRing:
        return self.lam.ring


def torsor_params(p: int, mode: str = "generic") -> TorsorParams:
    """λ per ``mode``; a, c, d are free parameter symbols."""
    lam = lambda_param(p, mode, extra=("a", "c", "d"))
    ring = lam.ring
    return TorsorParams(lam, ring.symbol("a"), ring.symbol("c"), ring.symbol("d"))


class TorsorAlgebra:
    def __init__(self, kind: str, params: TorsorParams):
        if kind not in KINDS:
            raise ValueError(f"unknown torsor kind {kind!r}; expected one of {KINDS}")
        self.kind = kind
        self.params = params
        lam, a = params.lam, params.a
        ring = params.ring
        p = ring.p
        if kind == "full":
            relations, name = None, "D"
            self.hopf: HopfStructure = build_scheme("H", lam)
        else:
            relations = {"U": (p, _rhs(params.c)), "V": (p, _rhs(params.d))}
            name = "D̃"
            self.hopf = build_scheme("G", lam)
        bare = PresentedAlgebra(ring, ["U", "V"], relations)
        witness = bare.coerce(a) + bare.gen("U") * lam
        self.carrier = A = PresentedAlgebra(ring, ["U", "V"], relations, [witness.num], name=name)
        self.unit_elem = A.coerce(a) + A.gen("U") * lam
        if kind == "truncated" and not A.is_unit(self.unit_elem):
            raise AlgebraError(f"a+λU is not invertible in {name}: no witness for a^p+λ^p c")
        t = tensor(A, self.hopf.carrier)
        X, Y = t.inclusion(1)(self.hopf.carrier.gen("X")), t.inclusion(1)(self.hopf.carrier.gen("Y"))
        u = t.inclusion(0)(self.unit_elem)
        U, V = t.inclusion(0)(A.gen("U")), t.inclusion(0)(A.gen("V"))
        self.comodule = ComoduleAlgebra(A, self.hopf, {"U": U + u * X, "V": V + u * Y}, name=name)

    @property
    def rank_basis(self) -> list:
        p = self.params.ring.p
        return [(i, j) for j in range(p) for i in range(p)]


def _rhs(x: ParamPolynomial):
    if not x:
        return 0
    if len(x.terms) == 1:
        (m, c), = x.terms.items()
        if c == 1 and sum(m) == 1:
            return x
    raise AlgebraError(f"truncated torsors need c, d to be 0 or a parameter symbol, got {x}")


_TORSORS: dict = {}


def build_torsor_algebra(kind: str, params: TorsorParams) -> TorsorAlgebra:
    key = (kind, params.ring) + tuple(frozenset(v.terms.items()) for v in
                                      (params.lam, params.a, params.c, params.d))
    got = _TORSORS.get(key)
    if got is None:
        got = TorsorAlgebra(kind, params)
        _TORSORS[key] = got
    return got


# -- the bijections -----------------------------------------------------------------

def r_map(T: TorsorAlgebra, unit_override=None) -> AlgebraHom:
    """D⊗D → D⊗H: 1⊗U ↦ U⊗1 + u⊗X, 1⊗V ↦ V⊗1 + u⊗Y with u = a+λU
    unless ``unit_override`` gives another element of D."""
    A, H = T.carrier, T.hopf.carrier
    src = tensor(A, A)
    tgt = tensor(A, H)
    left = tgt.inclusion(0)
    u = left(T.unit_elem if unit_override is None else unit_override)
    X, Y = tgt.inclusion(1)(H.gen("X")), tgt.inclusion(1)(H.gen("Y"))
    images = {
        "U[0]": left(A.gen("U")), "V[0]": left(A.gen("V")),
        "U[1]": left(A.gen("U")) + u * X, "V[1]": left(A.gen("V")) + u * Y,
    }
    return AlgebraHom(src, tgt, images, name="r" if T.kind == "full" else "r̃")


def r_inverse(T: TorsorAlgebra) -> AlgebraHom:
    """D⊗H → D⊗D: 1⊗X ↦ (1⊗U - U⊗1)/(u⊗1), 1⊗Y ↦ (1⊗V - V⊗1)/(u⊗1)."""
    A = T.carrier
    src = tensor(A, T.hopf.carrier)
    tgt = tensor(A, A)
    i0, i1 = tgt.inclusion(0), tgt.inclusion(1)
    u = i0(T.unit_elem)
    images = {
        "U[0]": i0(A.gen("U")), "V[0]": i0(A.gen("V")),
        "X[1]": (i1(A.gen("U")) - i0(A.gen("U"))) / u,
        "Y[1]": (i1(A.gen("V")) - i0(A.gen("V"))) / u,
    }
    return AlgebraHom(src, tgt, images, name="r⁻¹" if T.kind == "full" else "r̃⁻¹")


def _composite_is_identity(f: AlgebraHom, g: AlgebraHom):
    """g ∘ f fixes every generator of f's source."""
    for name in f.source.gens:
        x = f.source.gen(name)
        y = g(f(x))
        if y != x:
            return (f"{name} ↦ {y}", str(x))
    return True


def free_rank_check(T: TorsorAlgebra):
    """Every U^i V^j reduces to a parameter multiple of one basis monomial
    U^(i mod p) V^(j mod p), and the p² basis monomials stay distinct."""
    A = T.carrier
    p = A.p
    basis = {}
    for i in range(2 * p):
        for j in range(2 * p):
            x = A.monomial({"U": i, "V": j})
            if len(x.num) != 1:
                return (f"U^{i} V^{j} = {x}", "a single term")
            (m, c), = x.num.items()
            gexp = m[A.np:]
            if gexp != (i % p, j % p) or c != 1:
                return (f"U^{i} V^{j} = {x}", f"c^{i // p} d^{j // p} U^{i % p} V^{j % p}")
            if i < p and j < p:
                basis[gexp] = (i, j)
    if len(basis) != p * p:
        return (f"{len(basis)} distinct basis monomials", str(p * p))
    return True


def bijection_suite(kind: str, params: TorsorParams,
                            report: VerificationReport | None = None) -> VerificationReport:
    p = params.ring.p
    if report is None:
        report = VerificationReport("prop-3.10", p, lambda_label(params.lam))
    T = build_torsor_algebra(kind, params)
    tag = "r" if kind == "full" else "r̃"
    check_comodule_algebra(T.comodule, report, ref=REF_TORSOR)
    holder = {}

    def build():
        holder["r"] = r_map(T)
        holder["inv"] = r_inverse(T)
        return True

    note = "1⊗U ↦ U⊗1+(a+λU)⊗X"
    if kind == "truncated":
        note += "; inverse denominator taken as (a+λU)⊗1"
    if not report.run(f"{tag} and its inverse are well defined ({kind})", REF_TORSOR, build, note=note):
        return report
    report.run(f"{tag}⁻¹∘{tag} = id on D⊗D ({kind})", REF_TORSOR,
               lambda: _composite_is_identity(holder["r"], holder["inv"]))
    report.run(f"{tag}∘{tag}⁻¹ = id on D⊗H ({kind})", REF_TORSOR,
               lambda: _composite_is_identity(holder["inv"], holder["r"]))
    if kind == "full":
        report.run("printed r with (1+λU) fails to invert", REF_TORSOR,
                   lambda: _printed_r_fails(T),
                   note="documents the a+λU correction")
    else:
        report.run(f"D̃ is free of rank {p * p} with basis U^i V^j", REF_TORSOR,
                   lambda: free_rank_check(T))
        report.run("(a+λU)^p = a^p+λ^p c in D̃", REF_TORSOR,
                   lambda: (T.unit_elem ** p,
                            T.carrier.coerce(params.a ** p + params.lam ** p * params.c)))
    return report


def _printed_r_fails(T: TorsorAlgebra) -> bool:
    A = T.carrier
    try:
        f = r_map(T, unit_override=A.one + A.gen("U") * T.params.lam)
    except AlgebraError:
        return True
    return _composite_is_identity(f, r_inverse(T)) is not True


# -- the map into the cotensor product ----------------------------------------------------

def phi_map(params: TorsorParams) -> AlgebraHom:
    """D → D̃⊗H: U ↦ U⊗1 + (a+λU)⊗X, V ↦ V⊗1 + (a+λU)⊗Y."""
    D = build_torsor_algebra("full", params)
    Dt = build_torsor_algebra("truncated", params)
    H = D.hopf.carrier
    t = tensor(Dt.carrier, H)
    i0, i1 = t.inclusion(0), t.inclusion(1)
    u = i0(Dt.unit_elem)
    images = {"U": i0(Dt.carrier.gen("U")) + u * i1(H.gen("X")),
              "V": i0(Dt.carrier.gen("V")) + u * i1(H.gen("Y"))}
    return AlgebraHom(D.carrier, t, images, name="φ")


def cotensor_sides(params: TorsorParams, x):
    """(ρ_D̃ ⊗ id)(x) and (id ⊗ (q⊗id)Δ_H)(x) in D̃⊗G⊗H."""
    Dt = build_torsor_algebra("truncated", params)
    Hs = build_scheme("H", params.lam)
    Gs = build_scheme("G", params.lam)
    src = tensor(Dt.carrier, Hs.carrier)
    tgt = tensor(Dt.carrier, Gs.carrier, Hs.carrier)
    q = AlgebraHom(Hs.carrier, Gs.carrier, {"X": Gs.carrier.gen("X"), "Y": Gs.carrier.gen("Y")},
                   name="q")
    rho_id = from_factors(src, tgt, [tgt.block_inclusion(Dt.comodule.target, 0)
                                     .compose(Dt.comodule.coaction), tgt.inclusion(2)])
    q_id = hom_tensor(q, identity_hom(Hs.carrier))
    left_coaction = tgt.block_inclusion(q_id.target, 1).compose(q_id).compose(Hs.comult)
    id_delta = from_factors(src, tgt, [tgt.inclusion(0), left_coaction])
    return rho_id(x), id_delta(x)


def cotensor_membership_suite(params: TorsorParams,
                              report: VerificationReport | None = None) -> VerificationReport:
    p = params.ring.p
    if report is None:
        report = VerificationReport("prop-3.10", p, lambda_label(params.lam))
    D = build_torsor_algebra("full", params)
    Dt = build_torsor_algebra("truncated", params)
    check_comodule_algebra(Dt.comodule, report, ref=REF_TORSOR)
    holder = {}

    def build():
        holder["phi"] = phi_map(params)
        return True

    if not report.run("φ: D → D̃⊗H is well defined", REF_TORSOR, build):
        return report
    phi = holder["phi"]
    t = phi.target
    H = D.hopf.carrier
    report.run("φ(a+λU) = (a+λU)⊗(1+λX)", REF_TORSOR,
               lambda: (phi(D.unit_elem),
                        t.pure(Dt.unit_elem, H.one + H.gen("X") * params.lam)))
    report.run("φ(a+λU) is a unit", REF_TORSOR, lambda: t.is_unit(phi(D.unit_elem)))
    # D̃⊗H coacts through its right factor
    Hs = D.hopf
    t3 = tensor(Dt.carrier, Hs.carrier, Hs.carrier)
    id_delta = from_factors(t, t3, [t3.inclusion(0), t3.block_inclusion(Hs.square, 1)
                                    .compose(Hs.comult)])
    phi_id = hom_tensor(phi, identity_hom(Hs.carrier))
    for g in ("U", "V"):
        x = D.carrier.gen(g)
        report.run(f"φ is an H-comodule map on {g}", REF_TORSOR,
                   lambda: (phi_id(D.comodule.coaction(x)), id_delta(phi(x))))
        report.run(f"φ({g}) lies in the cotensor product", REF_TORSOR,
                   lambda: cotensor_sides(params, phi(x)))
    return report


# -- cleftness from a point -----------------------------------------------------------------

def cleft_witness(params: TorsorParams, b, v) -> AlgebraHom:
    """The point U ↦ b, V ↦ v of Spec D; raises AlgebraError unless a+λb is
    a unit of R."""
    D = build_torsor_algebra("full", params)
    R = base_algebra(params.ring)
    return AlgebraHom(D.carrier, R, {"U": b, "V": v}, name="point")


def trivialization(params: TorsorParams, b, v):
    """From a point (b, v): the comodule-algebra isomorphism D ≅ H,
    U ↦ b + (a+λb)X, V ↦ v + (a+λb)Y, and its inverse."""
    cleft_witness(params, b, v)
    D = build_torsor_algebra("full", params)
    H = D.hopf.carrier
    ring = params.ring
    b = b if isinstance(b, ParamPolynomial) else ring(b)
    v = v if isinstance(v, ParamPolynomial) else ring(v)
    s = params.a + params.lam * b
    fwd = AlgebraHom(D.carrier, H, {"U": H.coerce(b) + H.gen("X") * s,
                                    "V": H.coerce(v) + H.gen("Y") * s}, name="τ")
    R = base_algebra(ring)
    s_inv = R.invert(R.coerce(s))
    back = AlgebraHom(H, D.carrier, {"X": (D.carrier.gen("U") - b) * D.carrier.coerce(s_inv),
                                     "Y": (D.carrier.gen("V") - v) * D.carrier.coerce(s_inv)},
                      name="τ⁻¹")
    return fwd, back


def cleft_point_suite(p: int, report: VerificationReport | None = None) -> VerificationReport:
    if report is None:
        report = VerificationReport("cor-3.11", p, "generic")
    gen = torsor_params(p, "generic")
    report.run("a=1, b=0: point exists", REF_CLEFT_POINT,
               lambda: cleft_witness(_with_a(gen, 1), 0, 0) is not None)
    conc = _with_a(torsor_params(p, "1"), 1)
    for b in range(p):
        expect = (1 + b) % p != 0
        report.run(f"λ=1, a=1, b={b}: point exists iff a+λb ≠ 0", REF_CLEFT_POINT,
                   lambda: _point_exists(conc, b) == expect)
    for label, params, b in (("λ generic, a=1, b=0", _with_a(gen, 1), 0),
                             ("λ=1, a=1, b=0", _with_a(torsor_params(p, "1"), 1), 0)):
        def triv_ok(params=params, b=b):
            fwd, back = trivialization(params, b, 0)
            D = build_torsor_algebra("full", params)
            Hs = D.hopf
            for g in ("U", "V"):
                if back(fwd(D.carrier.gen(g))) != D.carrier.gen(g):
                    return (f"τ⁻¹τ({g})", g)
            for g in ("X", "Y"):
                if fwd(back(Hs.carrier.gen(g))) != Hs.carrier.gen(g):
                    return (f"ττ⁻¹({g})", g)
            # τ intertwines the coaction with Δ_H
            ff = hom_tensor(fwd, identity_hom(Hs.carrier))
            for g in ("U", "V"):
                x = D.carrier.gen(g)
                lhs, rhs = ff(D.comodule.coaction(x)), Hs.comult(fwd(x))
                if lhs != rhs:
                    return (str(lhs), str(rhs))
            return True
        report.run(f"{label}: D ≅ H as comodule algebras", REF_CLEFT_POINT, triv_ok)
    return report


def _with_a(params: TorsorParams, a) -> TorsorParams:
    return TorsorParams(params.lam, params.ring(a), params.c, params.d)


def _point_exists(params: TorsorParams, b) -> bool:
    try:
        cleft_witness(params, b, 0)
    except AlgebraError:
        return False
    return True


def torsor_suite(p: int, mode: str = "generic",
                  report: VerificationReport | None = None) -> VerificationReport:
    params = torsor_params(p, mode)
    if report is None:
        report = VerificationReport("prop-3.10", p, lambda_label(params.lam))
    for kind in KINDS:
        bijection_suite(kind, params, report)
    cotensor_membership_suite(params, report)
    return report


def demo_base_ring(p: int) -> PresentedAlgebra:
    """F_p[X, Y, 1/(Y^p + (X+1)^p Y + X^p)], a sample base ring for torsor experiments.

    Only the construction is provided; no cohomological claim about it is checked.
    """
    def dens(g):
        x, y = g["X"], g["Y"]
        return [y ** p + (x + 1) ** p * y + x ** p]
    return make_algebra(ParamRing(p), ["X", "Y"], denominators=dens, name=f"demo_base_F{p}")


__all__ = [
    "KINDS", "TorsorParams", "TorsorAlgebra", "torsor_params", "build_torsor_algebra",
    "r_map", "r_inverse", "free_rank_check", "bijection_suite", "phi_map",
    "cotensor_sides", "cotensor_membership_suite", "cleft_witness", "trivialization",
    "cleft_point_suite", "torsor_suite", "demo_base_ring",
]
