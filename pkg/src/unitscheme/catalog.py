"""The group schemes Ga, Gm, 𝒢^(λ), ℋ^(λ), G^(λ) and the maps among them."""

from __future__ import annotations

from .algebra import AlgebraError, AlgebraHom, PresentedAlgebra, from_factors, tensor
from .coeffring import ParamPolynomial, ParamRing
from .hopf import HopfStructure, check_bialgebra_hom

TAGS = ("Ga", "Gm", "G_curly", "H", "G")

_CACHE: dict = {}


def lambda_param(p: int, mode="generic", extra=()) -> ParamPolynomial:
    """λ in a parameter ring: a free symbol ("generic"), 0 ("zero") or a
    scalar of F_p (an int or its decimal string).

    ``extra`` lists further parameter symbols (a, c, d for torsors).
    """
    if mode == "generic":
        ring = ParamRing(p, ("λ",) + tuple(extra))
        return ring.symbol("λ")
    ring = ParamRing(p, tuple(extra))
    if mode == "zero":
        return ring(0)
    return ring(int(mode))


def lambda_label(lam: ParamPolynomial) -> str:
    if lam.is_scalar():
        return "zero" if not lam else str(lam.scalar())
    return "generic"


def _key(tag, lam, *extra):
    return (tag, lam.ring, frozenset(lam.terms.items())) + extra


def build_scheme(tag: str, lam: ParamPolynomial | None = None, ring: ParamRing | None = None,
                 gen: str | None = None) -> HopfStructure:
    """Hopf structure of the named scheme; built once per (tag, λ)."""
    if tag not in TAGS:
        raise ValueError(f"unknown scheme {tag!r}; expected one of {TAGS}")
    if lam is None:
        if ring is None:
            raise ValueError("need λ or a parameter ring")
        lam = ring(0)
    key = _key(tag, lam, gen)
    got = _CACHE.get(key)
    if got is None:
        got = _build(tag, lam, gen)
        _CACHE[key] = got
    return got


def _build(tag: str, lam: ParamPolynomial, gen: str | None) -> HopfStructure:
    ring = lam.ring
    p = ring.p
    if tag == "Ga":
        t = gen or "T"
        A = PresentedAlgebra(ring, [t], name="R[T]")
        sq = _square(A)
        T0, T1 = sq.gen(f"{t}[0]"), sq.gen(f"{t}[1]")
        return HopfStructure(A, {t: T0 + T1}, {t: 0}, {t: -A.gen(t)}, name="Ga")
    if tag == "Gm":
        t = gen or "T"
        A = PresentedAlgebra(ring, [t], denominators=[{_mono(ring.symbols + (t,), t): 1}],
                             name=f"R[{t},1/{t}]")
        sq = _square(A)
        return HopfStructure(A, {t: sq.gen(f"{t}[0]") * sq.gen(f"{t}[1]")}, {t: 1},
                             {t: A.invert(A.gen(t))}, name="Gm")
    if tag == "G_curly":
        base = PresentedAlgebra(ring, ["T"])
        d = (base.one + base.coerce(lam) * base.gen("T")).num
        A = PresentedAlgebra(ring, ["T"], denominators=[d], name="R[T,1/(1+λT)]")
        sq = _square(A)
        T0, T1 = sq.gen("T[0]"), sq.gen("T[1]")
        T = A.gen("T")
        return HopfStructure(A, {"T": T0 + T1 + lam * T0 * T1}, {"T": 0},
                             {"T": -T / (1 + lam * T)}, name="𝒢")
    # ℋ and G share the structure maps
    if tag == "H":
        base = PresentedAlgebra(ring, ["X", "Y"])
        d = (base.one + base.coerce(lam) * base.gen("X")).num
        A = PresentedAlgebra(ring, ["X", "Y"], denominators=[d], name="R[X,Y,1/(1+λX)]")
        basis = None
        name = "ℋ"
    else:
        A = PresentedAlgebra(ring, ["X", "Y"], {"X": p, "Y": p}, name="R[X,Y]/(X^p,Y^p)")
        basis = [(r1, r2) for r2 in range(p) for r1 in range(p)]
        name = "G"
    sq = _square(A)
    X0, X1, Y0, Y1 = (sq.gen(s) for s in ("X[0]", "X[1]", "Y[0]", "Y[1]"))
    X, Y = A.gen("X"), A.gen("Y")
    u = 1 + lam * X0
    s = A.invert(1 + lam * X)
    return HopfStructure(A, {"X": X0 + u * X1, "Y": Y0 + u * Y1}, {"X": 0, "Y": 0},
                         {"X": -X * s, "Y": -Y * s}, basis=basis, name=name)


def _mono(symbols, name):
    e = [0] * len(symbols)
    e[symbols.index(name)] = 1
    return tuple(e)


def _square(A):
    return tensor(A, A)


def frobenius_hom(lam: ParamPolynomial) -> AlgebraHom:
    """F^#: carrier of ℋ^(λ^p) → carrier of ℋ^(λ), X ↦ X^p, Y ↦ Y^p."""
    src = build_scheme("H", lam ** lam.ring.p).carrier
    tgt = build_scheme("H", lam).carrier
    p = lam.ring.p
    return AlgebraHom(src, tgt, {"X": tgt.gen("X") ** p, "Y": tgt.gen("Y") ** p}, name="F")


def kernel_quotient(lam: ParamPolynomial) -> AlgebraHom:
    """ℋ^(λ) carrier → G^(λ) carrier, imposing X^p = Y^p = 0."""
    H = build_scheme("H", lam).carrier
    G = build_scheme("G", lam).carrier
    return AlgebraHom(H, G, {"X": G.gen("X"), "Y": G.gen("Y")}, name="q")


def induced_structure_matches(lam: ParamPolynomial):
    """Push the structure maps of ℋ^(λ) through the quotient and compare with
    the ones declared on G^(λ).  Returns (ok, witness)."""
    H = build_scheme("H", lam)
    G = build_scheme("G", lam)
    q = kernel_quotient(lam)
    qq = from_factors(H.square, G.square,
                      [G.square.inclusion(0).compose(q), G.square.inclusion(1).compose(q)])
    for g in H.carrier.gens:
        pairs = [(qq(H.comult.images[g]), G.comult.images[g]),
                 (G.base.coerce(H.counit.images[g]), G.counit.images[g]),
                 (q(H.antipode.images[g]), G.antipode.images[g])]
        for lhs, rhs in pairs:
            if lhs != rhs:
                return False, (g, lhs, rhs)
    return True, None


def frobenius_kills_kernel(lam: ParamPolynomial) -> bool:
    """q ∘ F sends X and Y to 0."""
    F = frobenius_hom(lam)
    q = kernel_quotient(lam)
    comp = q.compose(F)
    return all(v.is_zero() for v in comp.images.values())


def exact_sequence_maps(lam: ParamPolynomial):
    """(i^♮: ℋ carrier → Ga carrier, epi^♮: 𝒢 carrier → ℋ carrier)."""
    Ga = build_scheme("Ga", lam)
    H = build_scheme("H", lam)
    Gc = build_scheme("G_curly", lam)
    i_nat = AlgebraHom(H.carrier, Ga.carrier, {"X": 0, "Y": Ga.carrier.gen("T")}, name="i")
    epi_nat = AlgebraHom(Gc.carrier, H.carrier, {"T": H.carrier.gen("X")}, name="epi")
    return i_nat, epi_nat


def alpha_lambda(lam: ParamPolynomial, inverse: bool = False):
    """α^#: R[U,1/U] → R[T,1/(1+λT)], U ↦ λT+1; with ``inverse`` also the
    inverse hom T ↦ (U−1)/λ, which needs λ to be a unit scalar."""
    Gm = build_scheme("Gm", lam, gen="U")
    Gc = build_scheme("G_curly", lam)
    T = Gc.carrier.gen("T")
    alpha = AlgebraHom(Gm.carrier, Gc.carrier, {"U": lam * T + 1}, name="α")
    if not inverse:
        return alpha
    if not lam.is_unit():
        raise AlgebraError(f"λ = {lam} is not invertible, so α has no inverse")
    linv = pow(lam.scalar(), -1, lam.ring.p)
    U = Gm.carrier.gen("U")
    back = AlgebraHom(Gc.carrier, Gm.carrier, {"T": (U - 1) * linv}, name="α⁻¹")
    return alpha, back


def morphism_suite(lam: ParamPolynomial, report):
    """Bialgebra checks for the maps among the catalog schemes."""
    ref = "catalog morphisms"
    Ga, Gm = build_scheme("Ga", lam), build_scheme("Gm", lam, gen="U")
    Gc, H, G = (build_scheme(t, lam) for t in ("G_curly", "H", "G"))
    Hp = build_scheme("H", lam ** lam.ring.p)
    i_nat, epi_nat = exact_sequence_maps(lam)
    report.run("exact sequence: i is a bialgebra hom", ref,
               lambda: check_bialgebra_hom(i_nat, H, Ga)[0])
    report.run("exact sequence: epi is a bialgebra hom", ref,
               lambda: check_bialgebra_hom(epi_nat, Gc, H)[0])
    report.run("exact sequence: composite is trivial", ref,
               lambda: (i_nat.compose(epi_nat).images["T"], Ga.carrier.zero))
    report.run("Frobenius is a bialgebra hom", ref,
               lambda: check_bialgebra_hom(frobenius_hom(lam), Hp, H)[0])
    report.run("kernel of Frobenius: q∘F kills X and Y", ref, lambda: frobenius_kills_kernel(lam))
    report.run("kernel of Frobenius: induced structure maps match G", ref,
               lambda: induced_structure_matches(lam)[0])
    report.run("alpha is a bialgebra hom", ref,
               lambda: check_bialgebra_hom(alpha_lambda(lam), Gm, Gc)[0])
    if lam.is_unit():
        def roundtrip():
            a, b = alpha_lambda(lam, inverse=True)
            return (all(a(b.images[g]) == Gc.carrier.gen(g) for g in Gc.carrier.gens)
                    and all(b(a.images[g]) == Gm.carrier.gen(g) for g in Gm.carrier.gens))
        report.run("alpha inverse roundtrips", ref, roundtrip)
    return report
