"""Univariate polynomials over GF(r^m) and their complete factorization.

Coefficients are stored as field codes (see :mod:`relkummer.ffield`),
little-endian, with no trailing zeros.  Factorization is the classical
square-free / distinct-degree / equal-degree pipeline; equal-degree splitting
is randomized and driven by an explicit seed so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .ffield import GF, FieldElement, factor_int


class Polynomial:
    __slots__ = ("field", "coeffs", "_hash", "_key")

    def __init__(self, field: GF, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(c)
        self._hash = hash(self.coeffs)
        self._key = (len(c) - 1, self.coeffs)

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, field: GF, code: int) -> "Polynomial":
        return cls(field, (code,))

    @classmethod
    def t(cls, field: GF) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def from_ints(cls, field: GF, values: Iterable[int]) -> "Polynomial":
        return cls(field, [field.from_int(v) for v in values])

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def sort_key(self) -> tuple:
        """(degree, little-endian coefficient codes): the canonical factor order."""
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Polynomial) or self.coeffs != other.coeffs:
            return False
        return self.field is other.field or self.field == other.field

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Polynomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Polynomial({self.field!r}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        k = self.field
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(FieldElement(k, c))
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    # -- ring operations -----------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        k = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = k.add(out[i], c)
        return Polynomial(k, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        k = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(k)
        out = [0] * (len(a) + len(b) - 1)
        if k.m == 1:
            r = k.r
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Polynomial(k, [c % r for c in out])
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = k.add(out[i + j], k.mul(x, y))
        return Polynomial(k, out)

    def scale(self, c: int) -> "Polynomial":
        k = self.field
        return Polynomial(k, [k.mul(c, x) for x in self.coeffs])

    def monic(self) -> "Polynomial":
        return self.scale(self.field.inv(self.lead))

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        k = self.field
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Polynomial(k), self
        inv_lead = k.inv(other.lead)
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for shift in range(len(rem) - db - 1, -1, -1):
            coef = k.mul(rem[shift + db], inv_lead)
            quot[shift] = coef
            if coef:
                for i, c in enumerate(bc):
                    rem[shift + i] = k.sub(rem[shift + i], k.mul(coef, c))
        return Polynomial(k, quot), Polynomial(k, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result = Polynomial(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial(self.field, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> "Polynomial":
        k = self.field
        return Polynomial(k, [k.mul(k.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: FieldElement) -> FieldElement:
        k = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = k.add(k.mul(acc, x.code), c)
        return FieldElement(k, acc)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


@dataclass(frozen=True)
class Factorization:
    unit: FieldElement
    factors: tuple[tuple[Polynomial, int], ...]

    def expand(self) -> Polynomial:
        out = Polynomial(self.unit.field, (self.unit.code,))
        for f, e in self.factors:
            out = out * f**e
        return out


# -- factorization pipeline ------------------------------------------------------

def _frobenius_root(f: Polynomial) -> Polynomial:
    """g with g(t)^r == f(t) when f' == 0 (so f only has exponents divisible by r)."""
    k = f.field
    e = k.order // k.r  # x -> x^(r^(m-1)) inverts the Frobenius on k
    return Polynomial(k, [k.pow(c, e) for c in f.coeffs[:: k.r]])


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Pairs (g, i) of square-free monic g such that f == prod g^i (f monic)."""
    k = f.field
    out: list[tuple[Polynomial, int]] = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    if fp.is_zero():
        return [(g, e * k.r) for g, e in squarefree_decomposition(_frobenius_root(f))]
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w // y
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        out.extend((g, e * k.r) for g, e in squarefree_decomposition(_frobenius_root(c)))
    return out


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split square-free monic f into products of irreducibles of equal degree."""
    k = f.field
    out = []
    t = Polynomial.t(k)
    h = t % f
    d = 1
    while f.degree >= 2 * d:
        h = h.powmod(k.order, f)
        g = poly_gcd(f, h - t)
        if not g.is_one():
            out.append((g, d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(k: GF, below: int, rng: random.Random) -> Polynomial:
    return Polynomial(k, [rng.randrange(k.order) for _ in range(below)])


def _split_candidate(f: Polynomial, d: int, rng: random.Random) -> Polynomial:
    k = f.field
    a = _random_poly(k, f.degree, rng)
    if a.degree < 1:
        return Polynomial(k, (1,))
    if k.r == 2:
        # trace map GF(2^(m d)) -> GF(2)
        acc = a % f
        term = acc
        for _ in range(k.m * d - 1):
            term = (term * term) % f
            acc = acc + term
        return poly_gcd(f, acc)
    b = a.powmod((k.order**d - 1) // 2, f)
    return poly_gcd(f, b - Polynomial(k, (1,)))


def equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    while True:
        g = _split_candidate(f, d, rng)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor(f: Polynomial, seed: int = 0) -> Factorization:
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    k = f.field
    unit = FieldElement(k, f.lead)
    rng = random.Random(seed)
    mult: dict[Polynomial, int] = {}
    for g, e in squarefree_decomposition(f.monic()):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                mult[irr] = mult.get(irr, 0) + e
    return Factorization(unit, tuple(sorted(mult.items(), key=lambda fe: fe[0].sort_key())))


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test."""
    if f.degree < 1:
        raise DomainError("irreducibility is undefined for constants")
    k = f.field
    n = f.degree
    if n == 1:
        return True
    g = f.monic()
    t = Polynomial.t(k)

    def frob(j: int) -> Polynomial:
        h = t % g
        for _ in range(j):
            h = h.powmod(k.order, g)
        return h

    if frob(n) != t % g:
        return False
    return all(poly_gcd(g, frob(n // q) - t).is_one() for q in factor_int(n))


def substitute_scale(f: Polynomial, c: FieldElement) -> tuple[FieldElement, Polynomial]:
    """Write f(c*t) = unit * g with g monic; requires f monic."""
    k = f.field
    if c.code == 0:
        raise DomainError("scaling by zero is not an automorphism")
    if not f.is_monic():
        raise DomainError("substitute_scale expects a monic polynomial")
    n = f.degree
    # g_i = f_i * c^(i - n)
    cinv = k.inv(c.code)
    coeffs = [0] * (n + 1)
    w = k.pow(cinv, n)
    for i, a in enumerate(f.coeffs):
        coeffs[i] = k.mul(a, w)
        w = k.mul(w, c.code)
    return FieldElement(k, k.pow(c.code, n)), Polynomial(k, coeffs)
