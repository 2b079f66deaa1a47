"""Cleaving map of S(A)_Θ over A = R[X,Y]/(X^p,Y^p), the projection onto
coinvariants, the decomposition Φ⁻¹, and the Z-variable presentations of
S(A)_Θ and of its coinvariant subalgebra."""

from __future__ import annotations

import random
from functools import cached_property

from .algebra import (
    AlgebraError,
    AlgebraHom,
    PresentedAlgebra,
    hom_tensor,
    identity_hom,
)
from .catalog import lambda_label
from .coeffring import ParamPolynomial, binom_mod_p
from .hopf import (
    ComoduleAlgebra,
    LinearMap,
    check_comodule_algebra,
    convolution,
    convolution_inverse,
    convolution_unit,
)
from .report import VerificationReport
from .unitgroup import UnitGroup, build_unit_group, monomial_name, tname

REF_CLEAVING = "cleaving map and projection onto coinvariants"
REF_COINV_GENS = "generators of the coinvariant subalgebra"
REF_PRESENT_S = "Z-variable presentation of S(A)_Θ"
REF_PRESENT_C = "Z-variable presentation of the coinvariants"


class CleftData:
    def __init__(self, lam: ParamPolynomial):
        self.lam = lam
        self.p = lam.ring.p
        self.U: UnitGroup = build_unit_group(lam)
        self.G = self.U.G
        self.S = self.U.carrier
        self.phi = self.U.phi()

    @cached_property
    def phi_inv(self) -> LinearMap:
        return convolution_inverse(self.phi)

    @cached_property
    def comodule(self) -> ComoduleAlgebra:
        """ρ = (id ⊗ i#) ∘ Δ_U."""
        U = self.U
        push = hom_tensor(identity_hom(self.S), U.embedding)
        images = {nm: push(img) for nm, img in U.hopf.comult.images.items()}
        return ComoduleAlgebra(self.S, self.G, images, name="S(A)_Θ")

    def rho(self, x):
        return self.comodule.coaction(self.S.coerce(x))

    def legs(self, x) -> dict:
        """ρ(x) = Σ c_b ⊗ b as {b: c_b}."""
        return self.comodule.target.split(self.rho(x), self.S)

    def is_coinvariant(self, x) -> bool:
        return self.comodule.coinvariant(x)

    def P(self, x):
        """Σ x₍₀₎ φ⁻¹(x₍₁₎)."""
        S = self.S
        out = S.zero
        for b, c in self.legs(x).items():
            out = out + c * self.phi_inv.values[b]
        return S.simplify(out)

    def Phi_inv(self, x) -> dict:
        """Φ⁻¹(x) = Σ P(x₍₀₎) ⊗ x₍₁₎ as {b: coefficient}."""
        out = {}
        for b, c in self.legs(x).items():
            v = self.P(c)
            if not v.is_zero():
                out[b] = v
        return out

    def Phi(self, decomposition: dict):
        S = self.S
        out = S.zero
        for b, c in decomposition.items():
            out = out + c * self.phi.values[b]
        return out

    def random_element(self, rng: random.Random, max_degree: int = 3, max_terms: int = 4):
        S = self.S
        out = S.zero
        for _ in range(rng.randint(1, max_terms)):
            deg = rng.randint(0, max_degree)
            term = S.coerce(self.lam ** rng.randint(0, 2) * rng.randint(1, self.p - 1))
            for _ in range(deg):
                term = term * S.gen(rng.choice(self.U.names))
            out = out + term
        return out

    # pieces used by the presentation suites ---------------------------------
    def t(self, r1, r2=0):
        return self.U.t(r1, r2)

    def d(self, r: int):
        return self.U.diag(r)

    def d_lower(self, s: int):
        """Σ_{k<s} C(s,k) λ^k T_{X^k}."""
        S = self.S
        out = S.zero
        for k in range(s):
            c = binom_mod_p(s, k, self.p)
            if c:
                out = out + self.t(k) * S.coerce(self.lam ** k * c)
        return out

    @cached_property
    def P_powers(self) -> dict:
        """s ↦ P(T_X^s) for 2 ≤ s ≤ p-1."""
        return {s: self.P(self.t(1) ** s) for s in range(2, self.p)}

    @cached_property
    def P_mixed(self) -> dict:
        """(r1, r2) ↦ P(T_X^r1 T_Y^r2) for r2 ≥ 1, skipping (0, 1)."""
        return {b: self.P(self.t(1) ** b[0] * self.t(0, 1) ** b[1]) for b in mixed_indices(self.p)}

    def c_coeff(self, s: int):
        """T_1^(s-1) + Σ_{k=2}^{s-1} C(s,k) λ^k T_1^(s-k) P(T_X^k)."""
        S = self.S
        out = self.t(0) ** (s - 1)
        for k in range(2, s):
            c = binom_mod_p(s, k, self.p)
            if c:
                out = out + S.coerce(self.lam ** k * c) * self.t(0) ** (s - k) * self.P_powers[k]
        return out

    def identity_lhs(self, s: int):
        return (self.c_coeff(s) + self.P_powers[s] * self.lam ** s) * self.d(s)

    def Q(self, s: int):
        """Q_s := P(T_X^s) d_s + c_s T_{X^s}."""
        return self.S.simplify(self.P_powers[s] * self.d(s) + self.c_coeff(s) * self.t(s))

    def mixed_leading(self, b, printed: bool = False):
        """Top-variable part of P(T_X^r1 T_Y^r2):
        -(T_1+λT_X)^(r1+r2) T_b / (d_r1 d_((r1+r2) mod p)).  The printed
        shape has a plus sign and no d_r1."""
        r1, r2 = b
        den = self.d((r1 + r2) % self.p)
        if not printed:
            den = -den * self.d(r1)
        return (self.t(0) + self.t(1) * self.lam) ** (r1 + r2) * self.t(r1, r2) / den

    def Q_prime(self, b, printed: bool = False):
        return self.S.simplify(self.P_mixed[b] - self.mixed_leading(b, printed))

    def top_coefficient(self, x, name: str):
        """Coefficient of a variable occurring at most linearly in x."""
        S = self.S
        x = S.simplify(x)
        i = S.np + S.gens.index(name)
        if any(m[i] > 1 for m in x.num):
            raise AlgebraError(f"{name} occurs nonlinearly")
        lead = {m[:i] + (0,) + m[i + 1:]: c for m, c in x.num.items() if m[i] == 1}
        return S.simplify(S.element(lead, x.den))

    def dens_using(self, names) -> list:
        """Indices of declared denominators whose variables all lie in ``names``."""
        names = set(names)
        out = []
        for r, i in self.U.den_index.items():
            if all(tname(k, 0) in names for k in range(r + 1)):
                out.append(i)
        return sorted(set(out))


def earlier_names(b, p: int) -> list:
    """Variables before T_b in the order used to solve for χ: Y-degree
    first, then X-degree."""
    r1, r2 = b
    return [tname(l1, l2) for l2 in range(r2 + 1) for l1 in range(p)
            if (l2, l1) < (r2, r1)]


def mixed_indices(p: int) -> list:
    """Monomials X^r1 Y^r2 with r2 ≥ 1 other than Y, ordered by r2 then r1."""
    return [(r1, r2) for r2 in range(1, p) for r1 in range(p) if (r1, r2) != (0, 1)]


_CLEFT: dict = {}


def cleft_data(lam: ParamPolynomial) -> CleftData:
    key = (lam.ring, frozenset(lam.terms.items()))
    got = _CLEFT.get(key)
    if got is None:
        got = CleftData(lam)
        _CLEFT[key] = got
    return got


# -- cleaving map and projection -------------------------------------------------

def projection_P(C: CleftData, x):
    return C.P(x)


def phi_cap_inverse(C: CleftData, x) -> list:
    """[(coefficient, basis monomial)] with Σ coefficient·φ(monomial) = x."""
    return sorted(((c, b) for b, c in C.Phi_inv(x).items()), key=lambda cb: cb[1])


def cleaving_suite(lam: ParamPolynomial, seed: int = 0, n_random: int = 20,
                     report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("notation-4.1", p, lambda_label(lam), seed)
    C = cleft_data(lam)
    S, G = C.S, C.G
    check_comodule_algebra(C.comodule, report, ref=REF_CLEAVING)
    for b in G.basis:
        report.run(f"φ is a comodule map on {monomial_name(*b)}", REF_CLEAVING,
                   lambda: (C.rho(C.phi.values[b]), _phi_tensor_id(C, b)))
    eps = convolution_unit(G, S)
    report.run("φ * φ⁻¹ = uε on the full basis", REF_CLEAVING,
               lambda: _linear_eq(convolution(C.phi, C.phi_inv), eps))
    report.run("φ⁻¹ * φ = uε on the full basis", REF_CLEAVING,
               lambda: _linear_eq(convolution(C.phi_inv, C.phi), eps))
    T1, TX, TY = C.t(0), C.t(1), C.t(0, 1)
    d1 = T1 + TX * lam
    report.run("φ⁻¹(1) = 1/T_1", REF_CLEAVING, lambda: (C.phi_inv.values[(0, 0)], 1 / T1))
    report.run("φ⁻¹(X) = -T_X/(T_1(T_1+λT_X))", REF_CLEAVING,
               lambda: (C.phi_inv.values[(1, 0)], -TX / (T1 * d1)))
    report.run("φ⁻¹(Y) = -T_Y/(T_1(T_1+λT_X))", REF_CLEAVING,
               lambda: (C.phi_inv.values[(0, 1)], -TY / (T1 * d1)))
    report.run("P(T_1) = 1", REF_CLEAVING, lambda: (C.P(T1), S.one))
    report.run("P(T_X) = 0", REF_CLEAVING, lambda: (C.P(TX), S.zero))
    report.run("P(T_Y) = 0", REF_CLEAVING, lambda: (C.P(TY), S.zero))
    report.run("P(T_Y^p) = T_Y^p/T_1", REF_CLEAVING, lambda: (C.P(TY ** p), TY ** p / T1),
               note="P(c) = c/T_1 for coinvariant c, as P(T_1) = 1")
    samples = [(nm, S.gen(nm)) for nm in C.U.names]
    rng = random.Random(seed)
    samples += [(f"random element {i + 1}", C.random_element(rng)) for i in range(n_random)]
    for label, x in samples:
        dec = C.Phi_inv(x)
        report.run(f"Φ roundtrip on {label}", REF_CLEAVING, lambda: (C.Phi(dec), x))
        report.run(f"Φ⁻¹ coefficients coinvariant on {label}", REF_CLEAVING,
                   lambda: _all_coinvariant(C, dec.values()))
    return report


def _phi_tensor_id(C: CleftData, b):
    t = C.comodule.target
    out = t.zero
    for coef, b1, b2 in C.G.coproduct_table[b]:
        out = out + t.coerce(coef) * t.pure(C.phi.values[b1], C.G.basis_element(b2))
    return out


def _linear_eq(f: LinearMap, g: LinearMap):
    bad = f.first_mismatch(g)
    if bad is None:
        return True
    b, lhs, rhs = bad
    return (f"at {monomial_name(*b)}: {lhs}", str(rhs))


def _all_coinvariant(C: CleftData, values):
    for v in values:
        if not C.is_coinvariant(v):
            return (f"{v} is not coinvariant", "coinvariant")
    return True


# -- generators of the coinvariants ----------------------------------------------------

def coinvariant_generators(C: CleftData) -> list:
    """(label, element) for the listed generators of the coinvariant subalgebra."""
    p, lam, S = C.p, C.lam, C.S
    T1, TX, TY = C.t(0), C.t(1), C.t(0, 1)
    gens = [("T_1", T1), ("T_X^p", TX ** p), ("T_Y^p", TY ** p)]
    gens += [(f"P(T_X^{s})", C.P_powers[s]) for s in range(2, p)]
    gens += [(f"P(T_X^{r1} T_Y^{r2})", C.P_mixed[(r1, r2)])
             for r2 in range(1, p) for r1 in range(1, p)]
    gens.append(("1/T_1", 1 / T1))
    gens.append(("1/(T_1^p+λ^p T_X^p)", 1 / (T1 ** p + TX ** p * lam ** p)))
    d1 = T1 + TX * lam
    gens += [(f"d_{s}/(T_1+λT_X)^{s}", C.d(s) / d1 ** s) for s in range(2, p)]
    return gens


def coinvariant_generator_suite(lam: ParamPolynomial,
                                report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("prop-4.2", p, lambda_label(lam))
    C = cleft_data(lam)
    S = C.S
    for label, x in coinvariant_generators(C):
        note = "λ^p in place of the printed λ" if label.startswith("1/(T_1^p") else ""
        report.run(f"{label} is coinvariant", REF_COINV_GENS, lambda: C.is_coinvariant(x), note=note)
    d1 = C.t(0) + C.t(1) * lam
    for s in range(2, p):
        note = "printed X_1 read as T_1" if s == 2 else ""
        report.run(f"denominator identity for s={s}", REF_COINV_GENS,
                   lambda: (C.identity_lhs(s), d1 ** s), note=note)
    for s in range(2, p):
        allowed = [tname(k, 0) for k in range(s)]
        report.run(f"Q_{s} lies in R[T_1^±1, T_X..T_{{X^{s - 1}}}, 1/d_1..d_{s - 1}]", REF_COINV_GENS,
                   lambda: _membership(C, C.Q(s), allowed, C.dens_using(allowed)))
    every_den = range(len(S.den_polys))
    d1 = C.t(0) + C.t(1) * lam
    for b in mixed_indices(p):
        r1, r2 = b
        top = tname(*b)
        expected = -d1 ** (r1 + r2) / (C.d(r1) * C.d((r1 + r2) % p))
        report.run(f"coefficient of {top} in P(T_X^{r1} T_Y^{r2})", REF_COINV_GENS,
                   lambda: (C.top_coefficient(C.P_mixed[b], top), expected),
                   note="-(T_1+λT_X)^(r1+r2)/(d_r1 d_((r1+r2) mod p))")
        allowed = [tname(l1, l2) for l2 in range(r2) for l1 in range(p)]
        report.run(f"Q'_{r1}{r2} lies in the subring of Y-degree < {r2}", REF_COINV_GENS,
                   lambda: _membership(C, C.Q_prime(b), allowed, every_den),
                   note="Q' taken after removing the corrected top-variable term")
        report.run(f"Q'_{r1}{r2} involves only variables before {top}", REF_COINV_GENS,
                   lambda: _membership(C, C.Q_prime(b), earlier_names(b, p), every_den),
                   note="order by Y-degree, then X-degree")
    return report


def _membership(C: CleftData, x, gens, dens):
    if C.S.uses_only(x, gens, dens):
        return True
    return (f"{C.S.simplify(x)}", f"element of R[{', '.join(gens)}] localized")


# -- Z-variable presentations --------------------------------------------------------

def zname(r1: int, r2: int) -> str:
    return "Z" + tname(r1, r2)[1:]


class Presentations:
    """A_W ≅ S(A)_Θ via χ, ξ and A_V → A_W via ω."""

    def __init__(self, C: CleftData):
        self.C = C
        self.p = p = C.p
        self.lam = C.lam
        self.znames = [zname(*b) for b in C.U.basis]
        ring = C.lam.ring
        bare = PresentedAlgebra(ring, self.znames)
        self.w_dens = _dedupe([self._w(bare, s).num for s in range(p)])
        self.W = PresentedAlgebra(ring, self.znames, denominators=self.w_dens, name="A_W")
        v_list = [self._w(bare, 0).num, self._z1p_plus(bare).num]
        v_list += [self._w(bare, s).num for s in range(2, p)]
        self.v_dens = _dedupe(v_list)
        self.V = PresentedAlgebra(ring, self.znames, denominators=self.v_dens, name="A_V")

    def _z(self, alg, r1, r2=0):
        return alg.gen(zname(r1, r2))

    def _w(self, alg, s: int):
        """Z_1, Z_1+λZ_X, and Z_1^(s-1) + Σ_{k=2}^{s-1} C(s,k) λ^k Z_1^(s-k) Z_{X^k} + λ^s Z_{X^s}."""
        lam = self.lam
        Z1 = self._z(alg, 0)
        if s == 0:
            return Z1
        if s == 1:
            return Z1 + self._z(alg, 1) * lam
        out = Z1 ** (s - 1) + self._z(alg, s) * lam ** s
        for k in range(2, s):
            c = binom_mod_p(s, k, self.p)
            if c:
                out = out + alg.coerce(lam ** k * c) * Z1 ** (s - k) * self._z(alg, k)
        return out

    def _z1p_plus(self, alg):
        return self._z(alg, 0) ** self.p + self._z(alg, 1) * self.lam ** self.p

    def w(self, s: int):
        return self._w(self.W, s)

    @cached_property
    def xi(self) -> AlgebraHom:
        C = self.C
        images = {zname(0, 0): C.t(0), zname(1, 0): C.t(1), zname(0, 1): C.t(0, 1)}
        for s, v in C.P_powers.items():
            images[zname(s, 0)] = v
        for b, v in C.P_mixed.items():
            images[zname(*b)] = v
        return AlgebraHom(self.W, C.S, images, name="ξ")

    def _partial(self, known: dict) -> AlgebraHom:
        W = self.W
        images = {nm: known.get(nm, W.zero) for nm in self.C.U.names}
        return AlgebraHom(self.C.S, W, images, validate=False, name="χ (partial)")

    def _apply_known(self, known: dict, x, what: str):
        C = self.C
        names = list(known)
        if not C.S.uses_only(x, names, C.dens_using(names)):
            raise AlgebraError(f"{what} involves variables beyond {names}")
        return self._partial(known)(x)

    @cached_property
    def chi(self) -> AlgebraHom:
        """Built variable by variable: each T is solved from the projection
        of a power of T_X (or of a mixed monomial) in terms of its Z-image and
        of variables already handled."""
        C, W, lam, p = self.C, self.W, self.lam, self.p
        Z = lambda r1, r2=0: self._z(W, r1, r2)  # noqa: E731
        known = {tname(0, 0): Z(0), tname(1, 0): Z(1)}
        for s in range(2, p):
            q = self._apply_known(known, C.Q(s), f"Q_{s}")
            lower = self._apply_known(known, C.d_lower(s), f"d_{s} lower part")
            known[tname(s, 0)] = W.simplify((q - lower * Z(s)) / self.w(s))
        known[tname(0, 1)] = Z(0, 1)
        for b in mixed_indices(p):
            r1, r2 = b
            q = self._apply_known(known, C.Q_prime(b), f"Q'_{r1}{r2}")
            dd = self._apply_known(known, C.d((r1 + r2) % p) * C.d(r1), "diagonal factors")
            base = (Z(0) + Z(1) * lam) ** (r1 + r2)
            known[tname(r1, r2)] = W.simplify((q - Z(r1, r2)) * dd / base)
        return AlgebraHom(C.S, W, known, name="χ")

    @cached_property
    def omega(self) -> AlgebraHom:
        """Z_X ↦ Z_X^p and Z_Y ↦ Z_Y^p, every other Z fixed."""
        W, p = self.W, self.p
        images = {nm: W.gen(nm) for nm in self.znames}
        images[zname(1, 0)] = W.gen(zname(1, 0)) ** p
        images[zname(0, 1)] = W.gen(zname(0, 1)) ** p
        return AlgebraHom(self.V, W, images, name="ω")

    @cached_property
    def omega_printed(self) -> AlgebraHom:
        W, p = self.W, self.p
        images = {nm: W.gen(nm) for nm in self.znames}
        images[zname(1, 0)] = W.gen(zname(1, 0)) ** p
        return AlgebraHom(self.V, W, images, name="ω (printed)")


def _dedupe(dens):
    out = []
    for d in dens:
        if d not in out:
            out.append(d)
    return out


_PRES: dict = {}


def presentations(lam: ParamPolynomial) -> Presentations:
    key = (lam.ring, frozenset(lam.terms.items()))
    got = _PRES.get(key)
    if got is None:
        got = Presentations(cleft_data(lam))
        _PRES[key] = got
    return got


def presentation_suite(lam: ParamPolynomial,
                             report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("prop-4.3", p, lambda_label(lam))
    Pr = presentations(lam)
    C, W = Pr.C, Pr.W
    report.run("A_W localizing list", REF_PRESENT_S, lambda: True,
               note="; ".join(_render(W, d) for d in Pr.w_dens))
    if not report.run("ξ is well defined", REF_PRESENT_S, lambda: Pr.xi.validate() is None):
        return report
    for s in range(2, p):
        report.run(f"ξ(w_{s}) = (T_1+λT_X)^{s}/d_{s}", REF_PRESENT_S,
                   lambda: (Pr.xi(Pr.w(s)), (C.t(0) + C.t(1) * lam) ** s / C.d(s)))
    if not report.run("χ is well defined", REF_PRESENT_S, lambda: Pr.chi.validate() is None):
        return report
    for nm in C.U.names:
        report.run(f"ξ∘χ fixes {nm}", REF_PRESENT_S, lambda: (Pr.xi(Pr.chi.images[nm]), C.S.gen(nm)))
    for nm in Pr.znames:
        report.run(f"χ∘ξ fixes {nm}", REF_PRESENT_S, lambda: (Pr.chi(Pr.xi.images[nm]), W.gen(nm)))
    return report


def _render(alg, terms) -> str:
    return str(alg.element(terms))


def coinvariant_presentation_suite(lam: ParamPolynomial, seed: int = 0,
                    report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("thm-4.4", p, lambda_label(lam), seed)
    Pr = presentations(lam)
    C, W, V = Pr.C, Pr.W, Pr.V
    report.run("A_V localizing list", REF_PRESENT_C, lambda: True,
               note="; ".join(_render(V, d) for d in Pr.v_dens))
    ok = report.run("ω is well defined", REF_PRESENT_C, lambda: Pr.omega.validate() is None,
                    note="Z_Y ↦ Z_Y^p; the printed assignment fixes Z_Y")
    Z1, ZX = W.gen(zname(0, 0)), W.gen(zname(1, 0))
    report.run("ω(Z_1^p+λ^p Z_X) = (Z_1+λZ_X)^p", REF_PRESENT_C,
               lambda: (Pr.omega(Pr._z1p_plus(V)), (Z1 + ZX * lam) ** p))
    if not ok:
        return report
    report.run("ω sends generators to distinct monic monomials of independent degree", REF_PRESENT_C,
               lambda: _monomial_injective(Pr.omega))
    report.run("ω is injective on sampled monomials", REF_PRESENT_C,
               lambda: _sampled_injective(Pr.omega, random.Random(seed), 200))
    xi_omega = Pr.xi.compose(Pr.omega)
    for nm in Pr.znames:
        report.run(f"ξ∘ω({nm}) is coinvariant", REF_PRESENT_C,
                   lambda: C.is_coinvariant(xi_omega.images[nm]))
    report.run("printed ω fails coinvariance on Z_Y", REF_PRESENT_C,
               lambda: not C.is_coinvariant(Pr.xi(Pr.omega_printed.images[zname(0, 1)])),
               note="documents the corrected Z_Y-image")
    return report


def _monomial_injective(f: AlgebraHom):
    src, tgt = f.source, f.target
    np_ = tgt.np
    vectors = []
    for g in src.gens:
        img = f.images[g]
        if any(img.den) or len(img.num) != 1:
            return (f"{g} ↦ {img}", "a single monomial")
        (m, c), = img.num.items()
        if c != 1 or any(m[:np_]):
            return (f"{g} ↦ {img}", "a monic parameter-free monomial")
        vectors.append(m[np_:])
    # one target variable per generator, each with positive exponent
    for i, v in enumerate(vectors):
        support = [j for j, e in enumerate(v) if e]
        if len(support) != 1:
            return (f"{src.gens[i]} ↦ {f.images[src.gens[i]]}", "a power of one variable")
    if len({tuple(j for j, e in enumerate(v) if e) for v in vectors}) != len(vectors):
        return ("two generators share a target variable", "distinct variables")
    return True


def _sampled_injective(f: AlgebraHom, rng: random.Random, n: int):
    src = f.source
    seen = {}
    for _ in range(n):
        exps = {g: rng.randint(0, 3) for g in src.gens}
        key = tuple(exps[g] for g in src.gens)
        img = f(src.monomial(exps))
        (m, _), = img.num.items()
        prev = seen.setdefault(m, key)
        if prev != key:
            return (f"{prev} and {key} share an image", "distinct images")
    return True
