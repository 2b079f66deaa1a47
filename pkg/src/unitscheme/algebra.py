"""Presented commutative algebras over a parameter ring.

An algebra is F_p[params][g_1, ..., g_n] modulo power relations, localized
at a finite list of declared denominators.  A power relation is either
``g^n = 0`` (g nilpotent) or ``g^n = c`` with ``c`` a bare parameter
symbol used by no other relation; the second kind keeps the ring a domain
(``c`` is eliminated by ``c = g^n``), which is what makes formal fractions
with cross-multiplied equality sound.  Tensor products may share such a
parameter between factors; the result is free over the parameter ring, so
the factor denominators remain non-zero-divisors and equality stays exact.

Denominators whose nilpotent-free part is a nonzero scalar are units; they
are inverted once at construction and never appear in element
denominators.  The rest stay formal: an element is ``num / prod d_i^k_i``
with the exponents kept as a tuple.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .coeffring import (
    ParamPolynomial,
    ParamRing,
    render_terms,
    t_add,
    t_divexact,
    t_mul,
    t_pow,
    t_scale,
    t_sub,
)


class AlgebraError(ValueError):
    pass


class NotInvertible(AlgebraError):
    pass


class PresentedAlgebra:
    def __init__(
        self,
        ring: ParamRing,
        gens: Sequence[str],
        relations: Mapping[str, object] | None = None,
        denominators: Iterable = (),
        name: str | None = None,
        shared_rhs: bool = False,
    ):
        self.ring = ring
        self.p = ring.p
        self.gens = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise AlgebraError(f"duplicate generator symbols in {self.gens}")
        clash = set(self.gens) & set(ring.symbols)
        if clash:
            raise AlgebraError(f"generators {sorted(clash)} collide with parameter symbols")
        self.name = name or "F_p[" + ",".join(self.gens) + "]"
        self.np = len(ring.symbols)
        self.symbols = ring.symbols + self.gens
        self.one_exp = (0,) * len(self.symbols)

        self.relations: dict[str, tuple[int, str | None]] = {}
        rhs_seen = set()
        for g, rel in (relations or {}).items():
            if g not in self.gens:
                raise AlgebraError(f"relation on unknown generator {g!r}")
            if isinstance(rel, int):
                n, rhs = rel, None
            else:
                n, rhs = rel
                rhs = _rhs_symbol(ring, rhs)
            if n < 1:
                raise AlgebraError(f"relation exponent for {g} must be positive")
            if rhs is not None and not shared_rhs:
                if rhs in rhs_seen:
                    raise AlgebraError(f"parameter {rhs} used by two relations")
                rhs_seen.add(rhs)
            self.relations[g] = (n, rhs)
        self._rules = tuple(
            (self.np + self.gens.index(g), n, None if rhs is None else ring.symbols.index(rhs))
            for g, (n, rhs) in self.relations.items()
        )
        self.nilpotent = tuple(g for g, (_, rhs) in self.relations.items() if rhs is None)
        self._nil_pos = tuple(self.np + self.gens.index(g) for g in self.nilpotent)
        self._nil_order = sum(self.relations[g][0] - 1 for g in self.nilpotent)
        self.truncated = bool(self.gens) and len(self.nilpotent) == len(self.gens)
        self.reduce_mono = self._make_reducer() if self._rules else None

        self.den_polys: list[dict] = []
        self._unit_inv: dict[int, dict] = {}
        self._dpow_cache: dict = {}
        for d in denominators:
            self._add_denominator(d)
        self.formal = tuple(i for i in range(len(self.den_polys)) if i not in self._unit_inv)
        self.zero_den = (0,) * len(self.den_polys)

    # -- construction helpers ----------------------------------------------
    def _make_reducer(self) -> Callable:
        rules = self._rules

        def reduce(m):
            lst = None
            for pos, n, rhs in rules:
                e = m[pos]
                if e >= n:
                    if rhs is None:
                        return None
                    if lst is None:
                        lst = list(m)
                    q, r = divmod(e, n)
                    lst[pos] = r
                    lst[rhs] += q
            return m if lst is None else tuple(lst)

        return reduce

    def _reduce_terms(self, terms: dict) -> dict:
        if self.reduce_mono is None:
            return {m: c for m, c in terms.items() if c % self.p}
        out: dict = {}
        for m, c in terms.items():
            mm = self.reduce_mono(m)
            if mm is not None:
                out[mm] = (out.get(mm, 0) + c) % self.p
        return {m: c for m, c in out.items() if c}

    def _add_denominator(self, d) -> None:
        if isinstance(d, AlgebraElement):
            if any(d.den):
                raise AlgebraError("denominators must be polynomial elements")
            terms = d.num
        else:
            terms = self._reduce_terms(dict(d))
        if not terms:
            raise AlgebraError("denominator reduces to 0")
        const = self._nil_free_part(terms)
        if not const:
            raise AlgebraError(
                f"denominator {render_terms(terms, self.symbols)} is nilpotent, not a unit")
        idx = len(self.den_polys)
        self.den_polys.append(terms)
        if set(const) == {self.one_exp}:
            self._unit_inv[idx] = self._series_inverse(terms, const[self.one_exp])
        elif self.truncated:
            raise AlgebraError(
                f"denominator {render_terms(terms, self.symbols)} is not a unit in a truncated algebra")

    def _nil_free_part(self, terms: dict) -> dict:
        pos = self._nil_pos
        return {m: c for m, c in terms.items() if not any(m[i] for i in pos)}

    def _series_inverse(self, terms: dict, c: int) -> dict:
        """Inverse of c + n (n nilpotent) as sum_k (-n/c)^k / c."""
        p = self.p
        cinv = pow(c, -1, p)
        n = {m: v for m, v in terms.items() if m != self.one_exp}
        step = t_scale(n, -cinv, p)
        total = {self.one_exp: 1}
        term = {self.one_exp: 1}
        for _ in range(self._nil_order):
            term = t_mul(term, step, p, self.reduce_mono)
            if not term:
                break
            total = t_add(total, term, p)
        return t_scale(total, cinv, p)

    def _dpow(self, i: int, k: int) -> dict:
        key = (i, k)
        got = self._dpow_cache.get(key)
        if got is None:
            got = t_pow(self.den_polys[i], k, self.p, self.one_exp, self.reduce_mono)
            self._dpow_cache[key] = got
        return got

    # -- element constructors ------------------------------------------------
    def element(self, terms: Mapping, den: Sequence[int] | None = None) -> "AlgebraElement":
        terms = self._reduce_terms(dict(terms))
        if den is None:
            return AlgebraElement(self, terms, self.zero_den)
        den = list(den)
        for i, inv in self._unit_inv.items():
            if den[i]:
                terms = t_mul(terms, t_pow(inv, den[i], self.p, self.one_exp, self.reduce_mono),
                              self.p, self.reduce_mono)
                den[i] = 0
        return AlgebraElement(self, terms, tuple(den))

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.one_exp: 1}, self.zero_den)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {}, self.zero_den)

    def gen(self, name: str) -> "AlgebraElement":
        e = [0] * len(self.symbols)
        e[self.np + self.gens.index(name)] = 1
        return self.element({tuple(e): 1})

    def generators(self) -> dict:
        return {g: self.gen(g) for g in self.gens}

    def param(self, name: str) -> "AlgebraElement":
        return self.coerce(self.ring.symbol(name))

    def denominator(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, dict(self.den_polys[i]), self.zero_den)

    def coerce(self, x) -> "AlgebraElement":
        if isinstance(x, AlgebraElement):
            if x.alg is self:
                return x
            if not x.alg.gens and x.alg.ring == self.ring and not any(x.den):
                pad = (0,) * len(self.gens)
                return self.element({m + pad: c for m, c in x.num.items()})
            raise AlgebraError(f"element of {x.alg.name} does not live in {self.name}")
        if isinstance(x, int):
            return self.element({self.one_exp: x % self.p} if x % self.p else {})
        if isinstance(x, ParamPolynomial):
            if x.ring != self.ring:
                raise AlgebraError("parameter polynomial from a different ring")
            pad = (0,) * len(self.gens)
            return self.element({m + pad: c for m, c in x.terms.items()})
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def monomial(self, exps: Mapping[str, int]) -> "AlgebraElement":
        e = [0] * len(self.symbols)
        for g, k in exps.items():
            e[self.np + self.gens.index(g)] = k
        return self.element({tuple(e): 1})

    # -- arithmetic support --------------------------------------------------
    def _mul_terms(self, a: dict, b: dict) -> dict:
        return t_mul(a, b, self.p, self.reduce_mono)

    def _lift(self, x: "AlgebraElement", target_den: Sequence[int]) -> dict:
        terms = x.num
        for i, (have, want) in enumerate(zip(x.den, target_den)):
            if want > have:
                terms = self._mul_terms(terms, self._dpow(i, want - have))
        return terms

    def _unreduce(self, terms: dict) -> dict:
        """Rewrite each relation parameter c as g^n (for g^n = c), giving the
        representative in the polynomial ring the algebra presents."""
        lifts = [(pos, n, rhs) for pos, n, rhs in self._rules if rhs is not None]
        if not lifts:
            return terms
        out: dict = {}
        for m, c in terms.items():
            lst = list(m)
            for pos, n, rhs in lifts:
                k = lst[rhs]
                if k:
                    lst[rhs] = 0
                    lst[pos] += n * k
            mm = tuple(lst)
            out[mm] = (out.get(mm, 0) + c) % self.p
        return {m: c for m, c in out.items() if c}

    def _divexact(self, f: dict, g: dict):
        q = t_divexact(self._unreduce(f), self._unreduce(g), self.p)
        return None if q is None else self._reduce_terms(q)

    def invert(self, x: "AlgebraElement") -> "AlgebraElement":
        """Inverse of x, or NotInvertible with the reason.

        The nilpotent-free part of the numerator must factor as a nonzero
        scalar times declared denominators; the nilpotent remainder is then
        inverted by a finite geometric series.
        """
        x = self.coerce(x)
        if not x.num:
            raise NotInvertible("zero is not invertible")
        p = self.p
        const = self._nil_free_part(x.num)
        if not const:
            raise NotInvertible(
                f"{x} has zero constant term modulo the nilpotent generators")
        counts = [0] * len(self.den_polys)
        rest = const
        for i in self.formal:
            d = self.den_polys[i]
            while True:
                q = self._divexact(rest, d)
                if q is None:
                    break
                rest = q
                counts[i] += 1
        if set(rest) != {self.one_exp}:
            raise NotInvertible(
                f"{render_terms(rest, self.symbols)} is not in the multiplicative set "
                f"generated by the declared denominators")
        s = rest[self.one_exp]
        sinv = pow(s, -1, p)
        base_inv = AlgebraElement(self, {self.one_exp: sinv}, tuple(counts))
        nil = AlgebraElement(self, t_sub(x.num, const, p), self.zero_den)
        if nil.num:
            # x.num = s*prod(d)*(1 + u) with u nilpotent
            u = nil * base_inv
            series = self.one
            term = self.one
            for _ in range(self._nil_order):
                term = term * (-u)
                if term.is_zero():
                    break
                series = series + term
            inv_num = series * base_inv
        else:
            inv_num = base_inv
        # 1/x = den(x) * inv_num
        num = inv_num.num
        den = list(inv_num.den)
        for i, k in enumerate(x.den):
            if not k:
                continue
            cancel = min(k, den[i])
            den[i] -= cancel
            if k > cancel:
                num = self._mul_terms(num, self._dpow(i, k - cancel))
        return AlgebraElement(self, num, tuple(den))

    def is_unit(self, x) -> bool:
        try:
            self.invert(x)
        except NotInvertible:
            return False
        return True

    def simplify(self, x: "AlgebraElement") -> "AlgebraElement":
        """Cancel declared denominators that divide the numerator exactly."""
        num = x.num
        den = list(x.den)
        if not num:
            return AlgebraElement(self, {}, self.zero_den)
        for i in self.formal:
            while den[i]:
                q = self._divexact(num, self.den_polys[i])
                if q is None:
                    break
                num = q
                den[i] -= 1
        return AlgebraElement(self, num, tuple(den))

    def uses_only(self, x: "AlgebraElement", gens: Iterable[str], dens: Iterable[int]) -> bool:
        """True iff the simplified form of x involves only the given
        generators and declared-denominator indices."""
        x = self.simplify(x)
        allowed = {self.np + self.gens.index(g) for g in gens}
        for m in x.num:
            for i in range(self.np, len(m)):
                if m[i] and i not in allowed:
                    return False
        dens = set(dens)
        return all(k == 0 or i in dens for i, k in enumerate(x.den))

    def __repr__(self):
        return f"<PresentedAlgebra {self.name}>"


def _rhs_symbol(ring: ParamRing, rhs) -> str | None:
    if rhs is None or rhs == 0:
        return None
    if isinstance(rhs, str):
        if rhs not in ring.symbols:
            raise AlgebraError(f"unknown parameter {rhs!r} in relation")
        return rhs
    if isinstance(rhs, ParamPolynomial):
        if not rhs:
            return None
        if len(rhs.terms) == 1:
            (m, c), = rhs.terms.items()
            if c == 1 and sum(m) == 1:
                return ring.symbols[m.index(1)]
    raise AlgebraError(
        "relation right-hand sides must be 0 or a bare parameter symbol "
        f"(got {rhs}); other values do not present a domain")


class AlgebraElement:
    """Immutable formal fraction ``num / prod(den_poly_i ** den[i])``."""

    __slots__ = ("alg", "num", "den")

    def __init__(self, alg: PresentedAlgebra, num: dict, den: tuple):
        self.alg = alg
        self.num = num
        self.den = den if num else alg.zero_den

    def _other(self, other):
        if isinstance(other, AlgebraElement) and other.alg is self.alg:
            return other
        if isinstance(other, (int, ParamPolynomial)):
            return self.alg.coerce(other)
        if isinstance(other, AlgebraElement):
            if not other.alg.gens:
                return self.alg.coerce(other)
            raise AlgebraError(
                f"algebra mismatch: {self.alg.name} vs {other.alg.name}")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        alg = self.alg
        if self.den == o.den:
            return AlgebraElement(alg, t_add(self.num, o.num, alg.p), self.den)
        if not self.num:
            return o
        if not o.num:
            return self
        den = tuple(max(a, b) for a, b in zip(self.den, o.den))
        return AlgebraElement(alg, t_add(alg._lift(self, den), alg._lift(o, den), alg.p), den)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, t_scale(self.num, -1, self.alg.p), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        alg = self.alg
        den = tuple(a + b for a, b in zip(self.den, o.den))
        return AlgebraElement(alg, alg._mul_terms(self.num, o.num), den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * self.alg.invert(o)

    def __rtruediv__(self, other):
        return self.alg.coerce(other) * self.alg.invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.alg.invert(self) ** (-n)
        alg = self.alg
        num = t_pow(self.num, n, alg.p, alg.one_exp, alg.reduce_mono)
        return AlgebraElement(alg, num, tuple(k * n for k in self.den))

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        if self.den == o.den:
            return self.num == o.num
        return (self - o).is_zero()

    __hash__ = None

    def simplified(self) -> "AlgebraElement":
        return self.alg.simplify(self)

    def is_polynomial(self) -> bool:
        return not any(self.den)

    def nterms(self) -> int:
        return len(self.num)

    def __str__(self):
        alg = self.alg
        s = render_terms(self.num, alg.symbols)
        if not any(self.den):
            return s
        parts = []
        for i, k in enumerate(self.den):
            if k:
                d = "(" + render_terms(alg.den_polys[i], alg.symbols) + ")"
                parts.append(d if k == 1 else f"{d}^{k}")
        return f"({s}) / " + "*".join(parts)

    def __repr__(self):
        return f"<{self.alg.name}: {self}>"


# -- tensor products ---------------------------------------------------------

_BASE: dict = {}
_TENSORS: dict = {}


def base_algebra(ring: ParamRing) -> PresentedAlgebra:
    """The coefficient ring itself, as an algebra with no generators."""
    alg = _BASE.get(ring)
    if alg is None:
        alg = PresentedAlgebra(ring, (), name="R")
        _BASE[ring] = alg
    return alg


def _rename(terms: dict, src: PresentedAlgebra, dst: PresentedAlgebra, positions: Sequence[int]) -> dict:
    out = {}
    np = src.np
    width = len(dst.symbols)
    for m, c in terms.items():
        e = [0] * width
        e[:np] = m[:np]
        for j, pos in enumerate(positions):
            e[pos] = m[np + j]
        out[tuple(e)] = c
    return out


class TensorAlgebra(PresentedAlgebra):
    """Tensor product over the parameter ring, by disjoint renaming.

    Factors are flattened, so ``tensor(tensor(A, A), A)`` is the same
    object as ``tensor(A, A, A)``; generator ``g`` of factor ``i`` is named
    ``g[i]``.
    """

    def __init__(self, factors: Sequence[PresentedAlgebra]):
        ring = factors[0].ring
        if any(f.ring != ring for f in factors):
            raise AlgebraError("tensor factors over different parameter rings")
        gens, relations, positions = [], {}, []
        np = len(ring.symbols)
        for i, f in enumerate(factors):
            pos = []
            for g in f.gens:
                name = f"{g}[{i}]"
                pos.append(np + len(gens))
                gens.append(name)
                if g in f.relations:
                    relations[name] = f.relations[g]
            positions.append(pos)
        # factors are free over the parameter ring, so declared denominators
        # stay non-zero-divisors even when factors share a relation parameter
        super().__init__(ring, gens, relations,
                         name=" ⊗ ".join(f.name for f in factors), shared_rhs=True)
        self.factors = tuple(factors)
        self.gen_positions = positions
        self.den_offsets = []
        for i, f in enumerate(factors):
            self.den_offsets.append(len(self.den_polys))
            for d in f.den_polys:
                self._add_denominator(_rename(d, f, self, positions[i]))
        self.formal = tuple(i for i in range(len(self.den_polys)) if i not in self._unit_inv)
        self.zero_den = (0,) * len(self.den_polys)

    def inclusion(self, i: int) -> "AlgebraHom":
        f = self.factors[i]
        return AlgebraHom(f, self, {g: self.gen(f"{g}[{i}]") for g in f.gens},
                          validate=False, name=f"in_{i}")

    def block_names(self, block: PresentedAlgebra, offset: int) -> dict:
        """Generator renaming for a plain factor or sub-tensor at ``offset``."""
        if isinstance(block, TensorAlgebra):
            k = len(block.factors)
            if self.factors[offset:offset + k] != block.factors:
                raise AlgebraError("block does not match the tensor factors")
            return {f"{g}[{j}]": f"{g}[{offset + j}]"
                    for j, f in enumerate(block.factors) for g in f.gens}
        if self.factors[offset] is not block:
            raise AlgebraError("block does not match the tensor factor")
        return {g: f"{g}[{offset}]" for g in block.gens}

    def block_inclusion(self, block: PresentedAlgebra, offset: int) -> "AlgebraHom":
        """Inclusion of a plain factor or a sub-tensor starting at ``offset``."""
        names = self.block_names(block, offset)
        return AlgebraHom(block, self, {g: self.gen(t) for g, t in names.items()},
                          validate=False, name=f"in_{offset}")

    def pure(self, *elements: AlgebraElement) -> AlgebraElement:
        """x_0 ⊗ x_1 ⊗ ... for elements of the individual factors."""
        if len(elements) != len(self.factors):
            raise AlgebraError("need one element per factor")
        out = self.one
        for i, x in enumerate(elements):
            out = out * self.inclusion(i)(self.factors[i].coerce(x))
        return out

    def split(self, x: AlgebraElement, left: PresentedAlgebra, k: int = 1) -> dict:
        """Decompose x along the monomials of the last ``k`` factors.

        Returns ``{exps of the trailing generators: element of left}``
        where ``left`` is the algebra of the leading factors.  The trailing
        factors must carry no formal denominators in x.
        """
        x = self.coerce(x)
        n_left = len(self.factors) - k
        lead = self.factors[:n_left]
        if isinstance(left, TensorAlgebra):
            if left.factors != lead:
                raise AlgebraError("left algebra does not match the leading factors")
        elif n_left != 1 or lead[0] is not left:
            raise AlgebraError("left algebra does not match the leading factor")
        cut = self.den_offsets[n_left] if n_left < len(self.factors) else len(self.den_polys)
        if any(x.den[cut:]):
            raise AlgebraError("trailing factors carry formal denominators")
        left_pos = [pos for f in self.gen_positions[:n_left] for pos in f]
        right_pos = [pos for f in self.gen_positions[n_left:] for pos in f]
        np = self.np
        groups: dict = {}
        for m, c in x.num.items():
            key = tuple(m[i] for i in right_pos)
            lm = m[:np] + tuple(m[i] for i in left_pos)
            groups.setdefault(key, {})[lm] = c
        den = x.den[:cut]
        return {key: AlgebraElement(left, terms, den) for key, terms in groups.items()}


def tensor(*algebras: PresentedAlgebra) -> TensorAlgebra:
    factors = []
    for a in algebras:
        if isinstance(a, TensorAlgebra):
            factors.extend(a.factors)
        else:
            factors.append(a)
    key = tuple(id(f) for f in factors)
    t = _TENSORS.get(key)
    if t is None or t.factors != tuple(factors):
        t = TensorAlgebra(factors)
        _TENSORS[key] = t
    return t


def tensor_square(alg: PresentedAlgebra):
    """A ⊗ A with its left and right inclusions."""
    t = tensor(alg, alg)
    return t, t.inclusion(0), t.inclusion(1)


# -- homomorphisms -------------------------------------------------------------

class AlgebraHom:
    """Algebra map determined by generator images.

    Validation checks that every power relation maps to zero and that every
    formal denominator maps to a unit; the inverses found are cached and
    reused by application.
    """

    def __init__(self, source: PresentedAlgebra, target: PresentedAlgebra,
                 images: Mapping[str, object], validate: bool = True, name: str | None = None):
        self.source = source
        self.target = target
        self.name = name or "hom"
        missing = set(source.gens) - set(images)
        if missing:
            raise AlgebraError(f"{self.name}: no image for generators {sorted(missing)}")
        self.images = {g: target.coerce(images[g]) for g in source.gens}
        self._den_inv: dict[int, AlgebraElement] = {}
        if validate:
            self.validate()

    def validate(self) -> None:
        src, tgt = self.source, self.target
        for g, (n, rhs) in src.relations.items():
            lhs = self.images[g] ** n
            want = tgt.zero if rhs is None else tgt.param(rhs)
            if lhs != want:
                raise AlgebraError(
                    f"{self.name} is not well defined: {g}^{n} = {rhs or 0} maps to {lhs}")
        for i in src.formal:
            self._denominator_inverse(i)

    def _denominator_inverse(self, i: int) -> AlgebraElement:
        inv = self._den_inv.get(i)
        if inv is None:
            img = self._apply_terms(self.source.den_polys[i])
            try:
                inv = self.target.invert(img)
            except AlgebraError as exc:
                raise AlgebraError(
                    f"{self.name} is not well defined: denominator "
                    f"{render_terms(self.source.den_polys[i], self.source.symbols)} "
                    f"maps to the non-unit {img} ({exc})") from exc
            self._den_inv[i] = inv
        return inv

    def _apply_terms(self, terms: dict) -> AlgebraElement:
        src, tgt = self.source, self.target
        np = src.np
        ngens = len(src.gens)
        imgs = [self.images[g] for g in src.gens]
        pad = (0,) * len(tgt.gens)
        p = tgt.p
        powcache: dict = {}

        def power(j, e):
            key = (j, e)
            got = powcache.get(key)
            if got is None:
                got = imgs[j] ** e
                powcache[key] = got
            return got

        prefix: dict = {(): (None, tgt.zero_den)}
        groups: dict = {}
        for m, c in terms.items():
            gexp = m[np:]
            # product of generator images, memoized on exponent prefixes
            k = ngens
            while k and gexp[:k] not in prefix:
                k -= 1
            num, den = prefix[gexp[:k]]
            for j in range(k, ngens):
                e = gexp[j]
                if e:
                    f = power(j, e)
                    num = f.num if num is None else tgt._mul_terms(num, f.num)
                    den = tuple(a + b for a, b in zip(den, f.den))
                prefix[gexp[:j + 1]] = (num, den)
            if num is None:
                num = {tgt.one_exp: 1}
            shift = m[:np] + pad
            if any(shift):
                num = {tuple(a + b for a, b in zip(mm, shift)): v for mm, v in num.items()}
                if tgt.reduce_mono is not None:
                    num = tgt._reduce_terms(num)
            acc = groups.get(den)
            scaled = t_scale(num, c, p)
            groups[den] = scaled if acc is None else t_add(acc, scaled, p)
        out = tgt.zero
        for den, num in groups.items():
            out = out + AlgebraElement(tgt, num, den)
        return out

    def __call__(self, x) -> AlgebraElement:
        x = self.source.coerce(x)
        out = self._apply_terms(x.num)
        for i, k in enumerate(x.den):
            if k:
                out = out * (self._denominator_inverse(i) ** k)
        return out

    def compose(self, first: "AlgebraHom", name: str | None = None) -> "AlgebraHom":
        """self ∘ first."""
        if first.target is not self.source:
            raise AlgebraError("composition of non-matching homs")
        return AlgebraHom(first.source, self.target,
                          {g: self(img) for g, img in first.images.items()},
                          validate=False, name=name or f"{self.name}∘{first.name}")

    def __repr__(self):
        return f"<AlgebraHom {self.name}: {self.source.name} -> {self.target.name}>"


def identity_hom(alg: PresentedAlgebra) -> AlgebraHom:
    return AlgebraHom(alg, alg, alg.generators(), validate=False, name="id")


def unit_hom(alg: PresentedAlgebra) -> AlgebraHom:
    """R -> alg."""
    return AlgebraHom(base_algebra(alg.ring), alg, {}, validate=False, name="unit")


def from_factors(source: TensorAlgebra, target: PresentedAlgebra,
                 maps: Sequence[AlgebraHom], validate: bool = False,
                 name: str | None = None) -> AlgebraHom:
    """The map x_0 ⊗ x_1 ⊗ ... ↦ f_0(x_0) f_1(x_1) ... into a commutative target.

    ``maps[i]`` goes from factor i (or, for a block, a sub-tensor) into
    ``target``; blocks are consumed left to right.
    """
    images = {}
    offset = 0
    for f in maps:
        block = f.source
        names = source.block_names(block, offset)
        for g, tg in names.items():
            images[tg] = target.coerce(f(block.gen(g)))
        offset += len(block.factors) if isinstance(block, TensorAlgebra) else 1
    if offset != len(source.factors):
        raise AlgebraError("maps do not cover every tensor factor")
    return AlgebraHom(source, target, images, validate=validate, name=name)


def hom_tensor(f: AlgebraHom, g: AlgebraHom, name: str | None = None) -> AlgebraHom:
    """f ⊗ g between the tensor products of sources and targets."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    nf = len(f.target.factors) if isinstance(f.target, TensorAlgebra) else 1
    left = tgt.block_inclusion(f.target, 0).compose(f)
    right = tgt.block_inclusion(g.target, nf).compose(g)
    return from_factors(src, tgt, [left, right], name=name or f"{f.name}⊗{g.name}")


# -- functional entry points ----------------------------------------------------

def make_algebra(ring: ParamRing, gens: Sequence[str], relations=None,
                 denominators: Callable | Iterable = (), name: str | None = None) -> PresentedAlgebra:
    """Build and validate an algebra.

    ``denominators`` may be a callable receiving the generator elements of
    the unlocalized algebra (as a dict) and returning the denominators.
    """
    if callable(denominators):
        bare = PresentedAlgebra(ring, gens, relations, name=name)
        denominators = [d.num for d in denominators(bare.generators())]
    return PresentedAlgebra(ring, gens, relations, denominators, name=name)


def elem_arith(kind: str, x: AlgebraElement, y: AlgebraElement | None = None) -> AlgebraElement:
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "neg":
        return -x
    raise ValueError(f"unknown operation {kind!r}")


def elem_eq(x: AlgebraElement, y: AlgebraElement) -> bool:
    if x.alg is not y.alg:
        raise AlgebraError("algebra mismatch")
    return x == y


def invert(x: AlgebraElement) -> AlgebraElement:
    return x.alg.invert(x)


def apply_hom(f: AlgebraHom, x: AlgebraElement) -> AlgebraElement:
    return f(x)
