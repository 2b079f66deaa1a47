"""Group algebra and unit group of G^(λ): structure constants of the
regular representation, the determinant, the localized coordinate ring
S(A)_Θ, and the morphisms between S(A)_Θ and ℋ^(λ)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .algebra import AlgebraError, AlgebraHom, PresentedAlgebra, tensor
from .catalog import build_scheme, kernel_quotient, lambda_label
from .coeffring import ParamPolynomial, binom_mod_p
from .hopf import (
    HopfStructure,
    LinearMap,
    check_bialgebra_hom,
    check_hopf_axioms,
    convolution_inverse,
)
from .report import VerificationReport

REF_COMULT = "comultiplication of the group algebra on the monomial basis"
REF_DET = "determinant of the regular representation"
REF_UNIT_MAPS = "morphisms between U(G) and H"


def tname(r1: int, r2: int) -> str:
    """Generator name of T_{X^r1 Y^r2}."""
    x = "" if r1 == 0 else ("X" if r1 == 1 else f"X^{r1}")
    y = "" if r2 == 0 else ("Y" if r2 == 1 else f"Y^{r2}")
    body = x + y
    if not body:
        return "T_1"
    return f"T_{body}" if len(body) == 1 else f"T_{{{body}}}"


def monomial_name(r1: int, r2: int) -> str:
    x = "" if r1 == 0 else ("X" if r1 == 1 else f"X^{r1}")
    y = "" if r2 == 0 else ("Y" if r2 == 1 else f"Y^{r2}")
    return (x + y) or "1"


@dataclass
class RegularRepresentation:
    """Δ(e_j) = Σ_i e_i ⊗ R_ij with R_ij = Σ_k c_ijk e_k.

    ``matrix[i][j]`` is the linear form ``{k: c_ijk}`` with coefficients in
    the base algebra.
    """

    hopf: HopfStructure
    basis: list
    matrix: list

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, i: int, j: int, values) -> object:
        """R_ij evaluated at ``values[k]`` (elements of one algebra)."""
        form = self.matrix[i][j]
        if not form:
            return None
        out = None
        for k, c in form.items():
            term = values[k] * values[k].alg.coerce(c)
            out = term if out is None else out + term
        return out

    def is_upper_triangular(self) -> bool:
        return all(not self.matrix[i][j] for i in range(self.size) for j in range(i))

    def reconstruct(self, j: int):
        """Σ_i e_i ⊗ R_ij(e) inside the tensor square of the carrier."""
        H = self.hopf
        sq = H.square
        left, right = sq.inclusion(0), sq.inclusion(1)
        elems = [H.basis_element(b) for b in self.basis]
        out = sq.zero
        for i in range(self.size):
            r = self.entry(i, j, elems)
            if r is not None:
                out = out + left(elems[i]) * right(r)
        return out


def structure_constants(H: HopfStructure) -> RegularRepresentation:
    basis = list(H.basis)
    index = {b: n for n, b in enumerate(basis)}
    n = len(basis)
    matrix = [[{} for _ in range(n)] for _ in range(n)]
    for j, b in enumerate(basis):
        for coef, b1, b2 in H.coproduct_table[b]:
            form = matrix[index[b1]][j]
            k = index[b2]
            total = form.get(k)
            total = coef if total is None else total + coef
            if total.is_zero():
                form.pop(k, None)
            else:
                form[k] = total
    rep = RegularRepresentation(H, basis, matrix)
    for j in range(n):
        if rep.reconstruct(j) != H.comult(H.basis_element(basis[j])):
            raise AlgebraError(f"structure constants do not reproduce Δ(e_{j + 1})")
    return rep


class UnitGroup:
    """Coordinate ring of U(G^(λ)) with its bialgebra structure.

    The carrier is the polynomial ring in T_{X^r1 Y^r2} localized at the
    distinct diagonal factors d_r = Σ_k C(r,k) λ^k T_{X^k}.
    """

    def __init__(self, lam: ParamPolynomial):
        self.lam = lam
        self.p = p = lam.ring.p
        self.G = build_scheme("G", lam)
        self.rep = structure_constants(self.G)
        self.basis = self.rep.basis
        self.index = {b: n for n, b in enumerate(self.basis)}
        self.names = [tname(*b) for b in self.basis]
        bare = PresentedAlgebra(lam.ring, self.names)
        dens, self.den_index = [], {}
        for r in range(p):
            d = self._diag(bare, r).num
            if d not in dens:
                dens.append(d)
            self.den_index[r] = dens.index(d)
        self.carrier = S = PresentedAlgebra(lam.ring, self.names, denominators=dens,
                                            name="S(A)_Θ")
        T = [S.gen(nm) for nm in self.names]
        sq = tensor(S, S)
        T0 = [sq.gen(f"{nm}[0]") for nm in self.names]
        T1 = [sq.gen(f"{nm}[1]") for nm in self.names]
        comult = {}
        for j, nm in enumerate(self.names):
            acc = sq.zero
            for i in range(len(self.names)):
                r = self.rep.entry(i, j, T1)
                if r is not None:
                    acc = acc + T0[i] * r
            comult[nm] = acc
        counit = {nm: self.G.counit(self.G.basis_element(b)) for nm, b in zip(self.names, self.basis)}
        self.hopf = HopfStructure(S, comult, counit, antipode=None, name="U")
        self.T = T

    def _diag(self, alg, r: int):
        lam = self.lam
        out = alg.zero
        for k in range(r + 1):
            c = binom_mod_p(r, k, self.p)
            if c:
                out = out + alg.gen(tname(k, 0)) * alg.coerce(lam ** k * c)
        return out

    def t(self, r1: int, r2: int = 0):
        return self.carrier.gen(tname(r1, r2))

    def diag(self, r: int):
        """d_r = Σ_k C(r,k) λ^k T_{X^k}."""
        return self._diag(self.carrier, r)

    def closed_form_D(self):
        out = self.carrier.one
        for r in range(self.p):
            out = out * self.diag(r) ** self.p
        return out

    @cached_property
    def embedding(self) -> AlgebraHom:
        """i^#: T_b ↦ b."""
        G = self.G
        return AlgebraHom(self.carrier, G.carrier,
                          {nm: G.basis_element(b) for nm, b in zip(self.names, self.basis)},
                          name="i#")

    def phi(self) -> LinearMap:
        """The cleaving map b ↦ T_b."""
        return LinearMap(self.G, self.carrier, {b: self.carrier.gen(nm)
                                                for b, nm in zip(self.basis, self.names)})

    def point(self, values) -> LinearMap:
        """A B-point of the group algebra: basis element ↦ value."""
        if isinstance(values, dict):
            return LinearMap(self.G, next(iter(values.values())).alg, values)
        return LinearMap(self.G, values[0].alg, dict(zip(self.basis, values)))

    def point_is_unit(self, f: LinearMap) -> bool:
        """A point lies in U exactly when every d_r evaluates to a unit."""
        B = f.target
        for r in range(self.p):
            v = B.zero
            for k in range(r + 1):
                v = v + f.values[(k, 0)] * B.coerce(self.lam ** k * binom_mod_p(r, k, self.p))
            if not B.is_unit(v):
                return False
        return True

    def point_inverse(self, f: LinearMap) -> LinearMap:
        """Inverse of a point under convolution, by triangular solve against the
        regular representation.  No antipode of U is needed."""
        if not self.point_is_unit(f):
            raise AlgebraError("point does not lie in U")
        return convolution_inverse(f)


_UNIT_CACHE: dict = {}


def build_unit_group(lam: ParamPolynomial) -> UnitGroup:
    key = (lam.ring, frozenset(lam.terms.items()))
    got = _UNIT_CACHE.get(key)
    if got is None:
        got = UnitGroup(lam)
        _UNIT_CACHE[key] = got
    return got


# -- determinant -------------------------------------------------------------------

def diagonal_determinant(U: UnitGroup):
    rep = U.rep
    if not rep.is_upper_triangular():
        raise AlgebraError("regular representation is not upper triangular in this basis order")
    out = U.carrier.one
    for j in range(rep.size):
        out = out * rep.entry(j, j, U.T)
    return out


def leibniz_determinant(U: UnitGroup):
    """Permutation-sum determinant of (R_ij(T)); independent of triangularity."""
    rep = U.rep
    n = rep.size
    S = U.carrier
    entries = [[rep.entry(i, j, U.T) for j in range(n)] for i in range(n)]
    total = S.zero
    for perm in permutations(range(n)):
        term = S.one
        for i, j in enumerate(perm):
            e = entries[i][j]
            if e is None:
                term = None
                break
            term = term * e
        if term is None:
            continue
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = total - term if inversions % 2 else total + term
    return total


def determinant_D(U: UnitGroup):
    """(det, closed form); both elements of S(A)_Θ."""
    return diagonal_determinant(U), U.closed_form_D()


# -- closed-form comultiplication ------------------------------------------------------

def closed_form_comult(U: UnitGroup, r1: int, r2: int):
    """Four-fold binomial sum for Δ_U(T_{X^r1 Y^r2}); terms whose left X-exponent
    reaches p are dropped."""
    p = U.p
    lam = U.lam
    sq = U.hopf.square
    out = sq.zero
    for k in range(r1 + 1):
        for k2 in range(k + 1):
            for l in range(r2 + 1):
                for l2 in range(l + 1):
                    ex = r1 - k + k2 + l2
                    if ex >= p:
                        continue
                    c = (binom_mod_p(k, k2, p) * binom_mod_p(r1, k, p)
                         * binom_mod_p(r2, l, p) * binom_mod_p(l, l2, p)) % p
                    if not c:
                        continue
                    left = sq.gen(f"{tname(ex, r2 - l)}[0]")
                    right = sq.gen(f"{tname(k, l)}[1]")
                    out = out + left * right * sq.coerce(lam ** (k2 + l2) * c)
    return out


def oracle_comult(U: UnitGroup, r1: int, r2: int):
    """Linearize Δ(X)^r1 Δ(Y)^r2, expanded in A ⊗ A, through b ↦ T_b on both legs."""
    G = U.G
    sq = U.hopf.square
    X, Y = G.carrier.gen("X"), G.carrier.gen("Y")
    img = G.comult(X) ** r1 * G.comult(Y) ** r2
    np_ = G.carrier.np
    out = sq.zero
    for m, c in img.num.items():
        b1 = m[np_:np_ + 2]
        b2 = m[np_ + 2:]
        coef = sq.element({m[:np_] + (0,) * len(sq.gens): c})
        out = out + coef * sq.gen(f"{tname(*b1)}[0]") * sq.gen(f"{tname(*b2)}[1]")
    return out


def verify_comultiplication(lam: ParamPolynomial, deep: bool = False, seed: int = 0,
                                   report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("prop-3.1", p, lambda_label(lam), seed)
    U = build_unit_group(lam)
    monomials = list(U.basis)
    if p >= 5 and not deep:
        monomials = sorted(random.Random(seed).sample(monomials, 10))
    for r1, r2 in monomials:
        name = monomial_name(r1, r2)
        branch = "r1+r2<p" if r1 + r2 < p else "r1+r2>=p"
        report.run(f"closed-form Δ on {name} agrees with direct expansion", REF_COMULT,
                   lambda: (closed_form_comult(U, r1, r2), oracle_comult(U, r1, r2)),
                   note=f"branch {branch}; printed n, m read as r1, r2")
        report.run(f"Δ_U on {tname(r1, r2)} agrees with direct expansion", REF_COMULT,
                   lambda: (U.hopf.comult.images[tname(r1, r2)], oracle_comult(U, r1, r2)))
    for b in U.basis:
        want = 1 if b == (0, 0) else 0
        report.run(f"counit of {tname(*b)}", REF_COMULT,
                   lambda: (U.hopf.counit.images[tname(*b)], U.hopf.base.coerce(want)))
    return report


def determinant_suite(lam: ParamPolynomial, report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("cor-3.2", p, lambda_label(lam))
    U = build_unit_group(lam)
    rep = U.rep
    report.run("structure constants reproduce Δ on every basis element", REF_DET,
               lambda: all(rep.reconstruct(j) == U.G.comult(U.G.basis_element(b))
                           for j, b in enumerate(rep.basis)))
    report.run("regular representation is upper triangular", REF_DET, rep.is_upper_triangular)
    for j, (r1, r2) in enumerate(rep.basis):
        report.run(f"diagonal entry {j + 1} is d_{r1}", REF_DET,
                   lambda: (rep.entry(j, j, U.T), U.diag(r1)))
    det, closed = determinant_D(U)
    report.equal("D equals closed form", REF_DET, det, closed, note=f"D = {_factored_D(U)}")
    if p == 2:
        report.run("permutation-sum determinant agrees with diagonal product", REF_DET,
                   lambda: (leibniz_determinant(U), det))
    report.run("D is a unit of S(A)_Θ", REF_DET, lambda: U.carrier.is_unit(closed))
    check_hopf_axioms(U.hopf, report, ref=REF_DET)
    report.run("i# is a bialgebra hom", REF_DET,
               lambda: check_bialgebra_hom(U.embedding, U.hopf, U.G)[0])
    return report


def _factored_D(U: UnitGroup) -> str:
    parts = []
    for r in range(U.p):
        d = U.diag(r)
        s = str(d)
        parts.append(f"{s}^{U.p}" if d.nterms() == 1 else f"({s})^{U.p}")
    return "*".join(parts)


# -- morphisms to and from ℋ -------------------------------------------------------------

class HMorphisms:
    """χ̃^#: ℋ → S(A)_Θ and σ̃^#: S(A)_Θ → ℋ on coordinate rings."""

    def __init__(self, lam: ParamPolynomial):
        self.U = U = build_unit_group(lam)
        self.H = build_scheme("H", lam)
        S = U.carrier
        T1 = U.t(0)
        self.chi = AlgebraHom(self.H.carrier, S, {"X": U.t(1) / T1, "Y": U.t(0, 1) / T1},
                              name="χ̃#")
        self.chi_printed = AlgebraHom(self.H.carrier, S, {"X": U.t(1) / T1, "Y": U.t(0, 1)},
                                      name="χ̃# (printed)")
        Hc = self.H.carrier
        self.sigma = AlgebraHom(S, Hc, {nm: Hc.monomial({"X": b[0], "Y": b[1]})
                                        for nm, b in zip(U.names, U.basis)}, name="σ̃#")
        self.e = kernel_quotient(lam)


def unit_maps_suite(lam: ParamPolynomial, report: VerificationReport | None = None) -> VerificationReport:
    p = lam.ring.p
    if report is None:
        report = VerificationReport("thm-3.3", p, lambda_label(lam))
    M = HMorphisms(lam)
    U, H = M.U, M.H
    Hc = H.carrier
    report.run("χ̃# is a bialgebra hom", REF_UNIT_MAPS,
               lambda: _bialg(M.chi, H, U.hopf),
               note="Y ↦ T_Y/T_1; the printed Y ↦ T_Y is not comultiplicative")
    report.run("printed χ̃# (Y ↦ T_Y) fails comultiplicativity on Y", REF_UNIT_MAPS,
               lambda: not check_bialgebra_hom(M.chi_printed, H, U.hopf)[0]
               and check_bialgebra_hom(M.chi_printed, H, U.hopf)[1][0] == "Y",
               note="documents the corrected Y-image")
    for g in Hc.gens:
        report.run(f"diagram 1 commutes on {g}: i#∘χ̃# = e#", REF_UNIT_MAPS,
                   lambda: (U.embedding(M.chi.images[g]), M.e(Hc.gen(g))))
    report.run("σ̃# is well defined", REF_UNIT_MAPS, lambda: M.sigma.validate() is None)
    want = Hc.one
    for r in range(p):
        want = want * (1 + lam * Hc.gen("X")) ** (r * p)
    report.run("σ̃#(D) = Π (1+λX)^(rp)", REF_UNIT_MAPS, lambda: (M.sigma(U.closed_form_D()), want))
    report.run("σ̃#(D) is a unit", REF_UNIT_MAPS, lambda: Hc.is_unit(M.sigma(U.closed_form_D())))
    report.run("σ̃# is a bialgebra hom", REF_UNIT_MAPS, lambda: _bialg(M.sigma, U.hopf, H))
    for nm, b in zip(U.names, U.basis):
        report.run(f"diagram 2 commutes on {nm}: e#∘σ̃# = i#", REF_UNIT_MAPS,
                   lambda: (M.e(M.sigma(U.carrier.gen(nm))), U.embedding(U.carrier.gen(nm))))
    for g in Hc.gens:
        report.run(f"σ̃#∘χ̃# fixes {g}", REF_UNIT_MAPS, lambda: (M.sigma(M.chi.images[g]), Hc.gen(g)))
    return report


def _bialg(f, H1, H2):
    ok, witness = check_bialgebra_hom(f, H1, H2)
    if ok:
        return True
    g, lhs, rhs = witness
    return (f"on {g}: {lhs}", f"{rhs}")
