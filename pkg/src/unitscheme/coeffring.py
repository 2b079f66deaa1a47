"""Exact arithmetic over F_p and over parameter rings F_p[λ, a, c, d, ...].

Polynomials are stored as plain dicts mapping exponent tuples to nonzero
residues mod p.  The dict helpers at the top of the module are shared by
the algebra layer, which uses the same representation over a longer
symbol tuple (parameters followed by generators).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence, Union

Terms = dict  # dict[tuple[int, ...], int]


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")

    def __int__(self):
        return self.p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _as_int(p) -> int:
    return p.p if isinstance(p, PrimeModulus) else int(p)


def binom_mod_p(n: int, k: int, p) -> int:
    """C(n, k) mod p by the digit product of Lucas' theorem."""
    p = _as_int(p)
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    result = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * comb(nd, kd) % p
        n //= p
        k //= p
    return result


# -- dict-polynomial kernel ------------------------------------------------

def t_add(a: Terms, b: Terms, p: int) -> Terms:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def t_scale(a: Terms, s: int, p: int) -> Terms:
    s %= p
    if not s:
        return {}
    if s == 1:
        return dict(a)
    return {m: c * s % p for m, c in a.items()}


def t_sub(a: Terms, b: Terms, p: int) -> Terms:
    return t_add(a, t_scale(b, -1, p), p)


def t_mul(a: Terms, b: Terms, p: int, reduce_mono=None) -> Terms:
    """Product of two term dicts; ``reduce_mono`` maps a raw exponent tuple
    to ``None`` (the monomial vanishes) or ``(exps, extra)`` where ``extra``
    is an exponent shift applied by power relations."""
    out: Terms = {}
    get = out.get
    if len(a) > len(b):
        a, b = b, a
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if reduce_mono is not None:
                m = reduce_mono(m)
                if m is None:
                    continue
            out[m] = (get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def t_pow(a: Terms, n: int, p: int, one: tuple, reduce_mono=None) -> Terms:
    result: Terms = {one: 1}
    base = a
    while n:
        if n & 1:
            result = t_mul(result, base, p, reduce_mono)
        n >>= 1
        if n:
            base = t_mul(base, base, p, reduce_mono)
    return result


def t_leading(a: Terms) -> tuple:
    return max(a)


def t_divexact(f: Terms, g: Terms, p: int):
    """Quotient q with f == q*g in the polynomial ring, or None.

    Plain multivariate division by leading terms in lex order; exact over
    the field F_p, so a zero remainder is both necessary and sufficient.
    """
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    lg = max(g)
    inv = pow(g[lg], -1, p)
    rest = dict(f)
    q: Terms = {}
    while rest:
        lf = max(rest)
        shift = tuple(x - y for x, y in zip(lf, lg))
        if min(shift) < 0:
            return None
        c = rest[lf] * inv % p
        q[shift] = c
        for m, cg in g.items():
            mm = tuple(x + y for x, y in zip(m, shift))
            v = (rest.get(mm, 0) - c * cg) % p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return q


def render_terms(terms: Terms, symbols: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for m in sorted(terms, reverse=True):
        c = terms[m]
        factors = []
        for s, e in zip(symbols, m):
            if e == 1:
                factors.append(s)
            elif e:
                factors.append(f"{s}^{e}")
        mono = "*".join(factors)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


# -- parameter ring --------------------------------------------------------

class ParamRing:
    """F_p[s_1, ..., s_k] for a fixed ordered tuple of parameter symbols."""

    def __init__(self, p, symbols: Iterable[str] = ()):
        self.modulus = p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))
        self.p = self.modulus.p
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate parameter symbols in {self.symbols}")
        self.zero_exp = (0,) * len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, ParamRing) and (self.p, self.symbols) == (other.p, other.symbols)

    def __hash__(self):
        return hash((self.p, self.symbols))

    def __repr__(self):
        return f"ParamRing(p={self.p}, symbols={self.symbols})"

    def __call__(self, value) -> "ParamPolynomial":
        if isinstance(value, ParamPolynomial):
            if value.ring != self:
                raise ValueError("parameter polynomial from a different ring")
            return value
        if isinstance(value, int):
            return ParamPolynomial(self, {self.zero_exp: value % self.p} if value % self.p else {})
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def symbol(self, name: str) -> "ParamPolynomial":
        i = self.symbols.index(name)
        e = [0] * len(self.symbols)
        e[i] = 1
        return ParamPolynomial(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.symbol(s) for s in self.symbols)


Coercible = Union["ParamPolynomial", int]


class ParamPolynomial:
    """Immutable sparse polynomial over F_p in the symbols of a ParamRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ParamRing, terms: Mapping[tuple, int]):
        self.ring = ring
        p = ring.p
        n = len(ring.symbols)
        clean = {}
        for m, c in terms.items():
            if len(m) != n:
                raise ValueError(f"exponent vector {m} has wrong arity for {ring.symbols}")
            c %= p
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    # arithmetic ---------------------------------------------------------
    def _other(self, other) -> "ParamPolynomial":
        if isinstance(other, ParamPolynomial):
            if other.ring != self.ring:
                raise ValueError(f"mismatched parameter rings {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ParamPolynomial(self.ring, t_add(self.terms, o.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return ParamPolynomial(self.ring, t_scale(self.terms, -1, self.ring.p))

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
        return ParamPolynomial(self.ring, t_mul(self.terms, o.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("parameter polynomials only take nonnegative integer powers")
        return ParamPolynomial(self.ring, t_pow(self.terms, n, self.ring.p, self.ring.zero_exp))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------
    def is_scalar(self) -> bool:
        return all(m == self.ring.zero_exp for m in self.terms)

    def scalar(self) -> int:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.terms.get(self.ring.zero_exp, 0)

    def is_unit(self) -> bool:
        return self.is_scalar() and bool(self.terms)

    def exponents(self):
        return sorted(self.terms)

    def __str__(self):
        return render_terms(self.terms, self.ring.symbols)

    def __repr__(self):
        return f"ParamPolynomial({self})"


def param_arith(kind: str, x: ParamPolynomial, y=None) -> ParamPolynomial:
    """Functional entry point: kind is one of add, sub, mul, pow, neg."""
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "pow":
        return x ** y
    if kind == "neg":
        return -x
    raise ValueError(f"unknown operation {kind!r}")
