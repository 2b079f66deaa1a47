"""Hopf structures on presented algebras, linear maps out of a finite
basis with their convolution product, and comodule algebras."""

from __future__ import annotations

from functools import cached_property
from typing import Mapping, Sequence

from .algebra import (
    AlgebraElement,
    AlgebraError,
    AlgebraHom,
    NotInvertible,
    PresentedAlgebra,
    TensorAlgebra,
    base_algebra,
    from_factors,
    hom_tensor,
    identity_hom,
    tensor,
    unit_hom,
)
from .report import VerificationReport


class HopfStructure:
    """Comultiplication, counit and (optionally) antipode on a carrier.

    ``basis`` lists generator-exponent tuples of a free basis of finite
    rank, when the carrier has one.
    """

    def __init__(self, carrier: PresentedAlgebra, comult: Mapping, counit: Mapping,
                 antipode: Mapping | None = None, basis: Sequence[tuple] | None = None,
                 name: str = "H"):
        self.carrier = carrier
        self.name = name
        self.square = tensor(carrier, carrier)
        self.base = base_algebra(carrier.ring)
        self.comult = AlgebraHom(carrier, self.square, comult, name=f"Δ_{name}")
        self.counit = AlgebraHom(carrier, self.base, counit, name=f"ε_{name}")
        self.antipode = (AlgebraHom(carrier, carrier, antipode, name=f"S_{name}")
                         if antipode is not None else None)
        self.basis = [tuple(b) for b in basis] if basis is not None else None

    def __repr__(self):
        return f"<HopfStructure {self.name} on {self.carrier.name}>"

    @property
    def ring(self):
        return self.carrier.ring

    # -- derived structure maps ---------------------------------------------------
    @cached_property
    def cube(self) -> TensorAlgebra:
        return tensor(self.carrier, self.carrier, self.carrier)

    @cached_property
    def comult_left(self) -> AlgebraHom:
        """Δ ⊗ id : A⊗A → A⊗A⊗A."""
        c = self.cube
        return from_factors(self.square, c, [c.block_inclusion(self.square, 0).compose(self.comult),
                                              c.inclusion(2)], name="Δ⊗id")

    @cached_property
    def comult_right(self) -> AlgebraHom:
        c = self.cube
        return from_factors(self.square, c, [c.inclusion(0),
                                              c.block_inclusion(self.square, 1).compose(self.comult)],
                            name="id⊗Δ")

    @cached_property
    def counit_scalar(self) -> AlgebraHom:
        """ε followed by the unit map, as an endomorphism-like map A → A."""
        return unit_hom(self.carrier).compose(self.counit)

    @cached_property
    def multiplication(self) -> AlgebraHom:
        ident = identity_hom(self.carrier)
        return from_factors(self.square, self.carrier, [ident, ident], name="m")

    def basis_element(self, b: tuple) -> AlgebraElement:
        return self.carrier.monomial(dict(zip(self.carrier.gens, b)))

    @cached_property
    def coproduct_table(self) -> dict:
        """Δ(b) = Σ coef · b1 ⊗ b2 over basis monomials, coef in R."""
        if self.basis is None:
            raise AlgebraError(f"{self.name} has no finite basis")
        basis = set(self.basis)
        A = self.carrier
        np, ng = A.np, len(A.gens)
        R = self.base
        table = {}
        for b in self.basis:
            img = self.comult(self.basis_element(b))
            if any(img.den):
                raise AlgebraError("comultiplication image has formal denominators")
            groups: dict = {}
            for m, c in img.num.items():
                b1 = m[np:np + ng]
                b2 = m[np + ng:]
                if b1 not in basis or b2 not in basis:
                    raise AlgebraError(f"Δ({b}) leaves the declared basis")
                groups.setdefault((b1, b2), {})[m[:np]] = c
            table[b] = [(R.element(t), b1, b2) for (b1, b2), t in sorted(groups.items())]
        return table

    def degree(self, b: tuple) -> int:
        return sum(b)


def check_hopf_axioms(H: HopfStructure, report: VerificationReport | None = None,
                      ref: str = "Hopf axioms") -> VerificationReport:
    """Coassociativity, both counit laws and both antipode laws on generators."""
    if report is None:
        report = VerificationReport(suite="hopf-axioms", prime=H.carrier.p)
    A = H.carrier
    eps_left = from_factors(H.square, A, [H.counit_scalar, identity_hom(A)], name="ε⊗id")
    eps_right = from_factors(H.square, A, [identity_hom(A), H.counit_scalar], name="id⊗ε")
    if H.antipode is not None:
        s_left = from_factors(H.square, A, [H.antipode, identity_hom(A)], name="m(S⊗id)")
        s_right = from_factors(H.square, A, [identity_hom(A), H.antipode], name="m(id⊗S)")
    for g in A.gens:
        x = A.gen(g)
        dx = H.comult(x)
        report.run(f"{H.name}: coassociativity on {g}", ref,
                   lambda: (H.comult_left(dx), H.comult_right(dx)))
        report.run(f"{H.name}: left counit on {g}", ref, lambda: (eps_left(dx), x))
        report.run(f"{H.name}: right counit on {g}", ref, lambda: (eps_right(dx), x))
        if H.antipode is None:
            report.skip(f"{H.name}: left antipode on {g}", ref, "no closed-form antipode")
            report.skip(f"{H.name}: right antipode on {g}", ref, "no closed-form antipode")
            continue
        e = H.counit_scalar(x)
        report.run(f"{H.name}: left antipode on {g}", ref, lambda: (s_left(dx), e))
        report.run(f"{H.name}: right antipode on {g}", ref, lambda: (s_right(dx), e))
    return report


def check_bialgebra_hom(f: AlgebraHom, H1: HopfStructure, H2: HopfStructure):
    """Return (True, None) or (False, (generator, lhs, rhs)) for the first
    generator where Δ₂∘f ≠ (f⊗f)∘Δ₁ or ε₂∘f ≠ ε₁."""
    if f.source is not H1.carrier or f.target is not H2.carrier:
        raise AlgebraError("hom does not connect the given Hopf structures")
    ff = hom_tensor(f, f)
    for g in H1.carrier.gens:
        x = H1.carrier.gen(g)
        lhs = H2.comult(f(x))
        rhs = ff(H1.comult(x))
        if lhs != rhs:
            return False, (g, lhs, rhs)
        lhs = H2.counit(f(x))
        rhs = H1.counit(x)
        if lhs != rhs:
            return False, (g, lhs, rhs)
    return True, None


# -- linear maps and convolution ---------------------------------------------------

class LinearMap:
    """R-linear map from a Hopf algebra with finite basis into an algebra."""

    def __init__(self, source: HopfStructure, target: PresentedAlgebra, values: Mapping):
        if source.basis is None:
            raise AlgebraError("linear maps need a source with a finite basis")
        self.source = source
        self.target = target
        missing = set(source.basis) - set(values)
        if missing:
            raise AlgebraError(f"linear map undefined on basis elements {sorted(missing)}")
        self.values = {b: target.coerce(values[b]) for b in source.basis}

    def __call__(self, b: tuple) -> AlgebraElement:
        return self.values[tuple(b)]

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        """Evaluate on an arbitrary element of the source carrier."""
        A = self.source.carrier
        x = A.coerce(x)
        if any(x.den):
            raise AlgebraError("linear maps apply to polynomial representatives only")
        np = A.np
        out = self.target.zero
        pad = (0,) * len(self.target.gens)
        for m, c in x.num.items():
            out = out + self.target.element({m[:np] + pad: c}) * self.values[m[np:]]
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and all(self.values[b] == other.values[b] for b in self.source.basis))

    __hash__ = None

    def __mul__(self, other: "LinearMap") -> "LinearMap":
        return convolution(self, other)

    def simplified(self) -> "LinearMap":
        return LinearMap(self.source, self.target,
                         {b: v.simplified() for b, v in self.values.items()})

    def first_mismatch(self, other: "LinearMap"):
        for b in self.source.basis:
            if self.values[b] != other.values[b]:
                return b, self.values[b], other.values[b]
        return None


def convolution_unit(H: HopfStructure, target: PresentedAlgebra) -> LinearMap:
    """b ↦ ε(b)·1."""
    return LinearMap(H, target, {b: target.coerce(H.counit(H.basis_element(b))) for b in H.basis})


def convolution(f: LinearMap, g: LinearMap) -> LinearMap:
    """(f*g)(b) = Σ f(b₁) g(b₂)."""
    if f.source is not g.source or f.target is not g.target:
        raise AlgebraError("convolution of maps with different source or target")
    T = f.target
    values = {}
    for b, terms in f.source.coproduct_table.items():
        acc = T.zero
        for coef, b1, b2 in terms:
            acc = acc + T.coerce(coef) * f.values[b1] * g.values[b2]
        values[b] = acc
    return LinearMap(f.source, T, values)


def convolution_inverse(f: LinearMap, simplify: bool = True) -> LinearMap:
    """Right convolution inverse g, solved basis element by basis element in
    increasing total degree from Σ f(b₁) g(b₂) = ε(b).

    The terms with b₂ = b give the cofactor of g(b); every other b₂ has
    lower degree and is already solved.  Raises if the cofactor is not a
    unit or a needed value is missing (the coproduct is not filtered).
    """
    H = f.source
    T = f.target
    try:
        T.invert(f.values[tuple(0 for _ in H.carrier.gens)])
    except NotInvertible as exc:
        raise NotInvertible(f"f(1) is not invertible: {exc}") from exc
    g: dict = {}
    for b in sorted(H.basis, key=lambda b: (H.degree(b), b)):
        cofactor = T.zero
        rest = T.coerce(H.counit(H.basis_element(b)))
        for coef, b1, b2 in H.coproduct_table[b]:
            if b2 == b:
                cofactor = cofactor + T.coerce(coef) * f.values[b1]
            elif b2 in g:
                rest = rest - T.coerce(coef) * f.values[b1] * g[b2]
            else:
                raise AlgebraError(
                    f"coproduct of {b} needs the unsolved value at {b2}: not degree-filtered")
        try:
            inv = T.invert(cofactor)
        except NotInvertible as exc:
            raise AlgebraError(f"cofactor at {b} is not a unit: {exc}") from exc
        value = rest * inv
        g[b] = T.simplify(value) if simplify else value
    return LinearMap(H, T, g)


# -- points ----------------------------------------------------------------------------

def point_identity(H: HopfStructure, target: PresentedAlgebra) -> AlgebraHom:
    return unit_hom(target).compose(H.counit, name="e")


def point_multiply(H: HopfStructure, f: AlgebraHom, g: AlgebraHom) -> AlgebraHom:
    """Group law on B-points: x ↦ m(f⊗g)Δ(x)."""
    if f.target is not g.target or f.source is not H.carrier or g.source is not H.carrier:
        raise AlgebraError("points must be algebra maps from the carrier into one algebra")
    fg = from_factors(H.square, f.target, [f, g])
    return AlgebraHom(H.carrier, f.target, {x: fg(img) for x, img in H.comult.images.items()},
                      validate=False, name=f"{f.name}·{g.name}")


def point_invert(H: HopfStructure, f: AlgebraHom) -> AlgebraHom:
    if H.antipode is None:
        raise AlgebraError(f"{H.name} has no antipode; invert points through the basis instead")
    return f.compose(H.antipode, name=f"{f.name}⁻¹")


def point_eval(f: AlgebraHom, generator: str) -> AlgebraElement:
    return f.images[generator]


def point_ops(kind: str, H: HopfStructure, x: AlgebraHom, y=None):
    if kind == "multiply":
        return point_multiply(H, x, y)
    if kind == "invert":
        return point_invert(H, x)
    if kind == "eval":
        return point_eval(x, y)
    raise ValueError(f"unknown point operation {kind!r}")


def point_to_linear(H: HopfStructure, f: AlgebraHom) -> LinearMap:
    return LinearMap(H, f.target, {b: f(H.basis_element(b)) for b in H.basis})


def is_multiplicative(f: LinearMap) -> bool:
    """True iff f is the restriction of an algebra map on a monomial basis:
    f(1) = 1, f(b) = Π f(g)^e, and each power relation is respected."""
    H = f.source
    A = H.carrier
    T = f.target
    if f.values[tuple(0 for _ in A.gens)] != T.one:
        return False
    gens = {}
    for i, g in enumerate(A.gens):
        e = [0] * len(A.gens)
        e[i] = 1
        gens[g] = f.values[tuple(e)]
    for b in H.basis:
        want = T.one
        for g, k in zip(A.gens, b):
            want = want * gens[g] ** k
        if f.values[b] != want:
            return False
    for g, (n, rhs) in A.relations.items():
        if gens[g] ** n != (T.zero if rhs is None else T.param(rhs)):
            return False
    return True


# -- comodule algebras --------------------------------------------------------------

class ComoduleAlgebra:
    """Right comodule algebra: a coaction carrier → carrier ⊗ H."""

    def __init__(self, carrier: PresentedAlgebra, hopf: HopfStructure, coaction: Mapping,
                 name: str = "C"):
        self.carrier = carrier
        self.hopf = hopf
        self.name = name
        self.target = tensor(carrier, hopf.carrier)
        self.coaction = AlgebraHom(carrier, self.target, coaction, name=f"ρ_{name}")

    @cached_property
    def target2(self) -> TensorAlgebra:
        return tensor(self.carrier, self.hopf.carrier, self.hopf.carrier)

    @cached_property
    def coaction_left(self) -> AlgebraHom:
        """ρ ⊗ id : C⊗H → C⊗H⊗H."""
        t = self.target2
        return from_factors(self.target, t, [t.block_inclusion(self.target, 0).compose(self.coaction),
                                              t.inclusion(2)], name="ρ⊗id")

    @cached_property
    def comult_right(self) -> AlgebraHom:
        t = self.target2
        H = self.hopf
        return from_factors(self.target, t, [t.inclusion(0),
                                              t.block_inclusion(H.square, 1).compose(H.comult)],
                            name="id⊗Δ")

    @cached_property
    def counit_right(self) -> AlgebraHom:
        C = self.carrier
        return from_factors(self.target, C,
                            [identity_hom(C), unit_hom(C).compose(self.hopf.counit)], name="id⊗ε")

    def coinvariant(self, x: AlgebraElement) -> bool:
        """ρ(x) = x⊗1, compared as ρ(n)(d⊗1) = (n⊗1)ρ(d) for x = n/d; both
        d⊗1 and ρ(d) are units, so no inverse needs expanding."""
        C = self.carrier
        x = C.coerce(x)
        num = C.element(x.num)
        den = C.one
        for i, k in enumerate(x.den):
            if k:
                den = den * C.element(C.den_polys[i]) ** k
        left = self.target.inclusion(0)
        return self.coaction(num) * left(den) == left(num) * self.coaction(den)


def check_comodule_algebra(C: ComoduleAlgebra, report: VerificationReport | None = None,
                           ref: str = "comodule algebra") -> VerificationReport:
    if report is None:
        report = VerificationReport(suite="comodule", prime=C.carrier.p)
    report.run(f"{C.name}: coaction is a well-defined algebra hom", ref,
               lambda: C.coaction.validate() is None)
    for g in C.carrier.gens:
        x = C.carrier.gen(g)
        rx = C.coaction(x)
        report.run(f"{C.name}: coassociativity on {g}", ref,
                   lambda: (C.coaction_left(rx), C.comult_right(rx)))
        report.run(f"{C.name}: counit on {g}", ref, lambda: (C.counit_right(rx), x))
    return report
