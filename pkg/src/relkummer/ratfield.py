"""The rational function field E = k(t) with sigma: t -> zeta*t, and E^x/E^xp.

Elements of E^x are always kept factored (unit times monic irreducibles with
integer exponents).  sigma permutes monic irreducibles up to a constant, so
its action and p-th power tests never need expanded polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, InvariantViolation, UnsupportedInstanceError
from .ffield import GF, FieldElement, is_prime, is_pth_power, primitive_root_of_unity, pth_root, unit_character
from .polyarith import Polynomial, factor, substitute_scale


@dataclass(frozen=True)
class GaloisContext:
    p: int
    l: int
    field: GF
    zeta: FieldElement
    zeta_p: FieldElement
    # unit whose class generates k^x / k^xp, normalized to character 1
    class_unit: FieldElement

    @property
    def q(self) -> int:
        return self.p**self.l

    @classmethod
    def create(cls, p: int, l: int, field: GF, zeta: FieldElement | None = None) -> "GaloisContext":
        if not is_prime(p):
            raise UnsupportedInstanceError(f"p = {p} is not prime")
        if l < 1:
            raise UnsupportedInstanceError(f"l = {l} must be positive")
        if field.r == p:
            raise UnsupportedInstanceError(f"characteristic of {field!r} equals p = {p}")
        q = p**l
        if field.unit_group_order % q:
            raise UnsupportedInstanceError(
                f"p^l = {q} does not divide |k^x| = {field.unit_group_order}; "
                f"{field!r} has no primitive root of unity of order {q}")
        if zeta is None:
            zeta = primitive_root_of_unity(field, q)
        else:
            zeta = field(zeta)
            if zeta.code == 0 or field.multiplicative_order(zeta.code) != q:
                raise UnsupportedInstanceError(f"zeta = {zeta} does not have multiplicative order {q}")
        zeta_p = zeta ** (p ** (l - 1))
        g = FieldElement(field, field.generator)
        chi_g = unit_character(g, p, zeta_p)
        class_unit = g ** pow(chi_g, -1, p)
        return cls(p, l, field, zeta, zeta_p, class_unit)

    def chi(self, u: FieldElement) -> int:
        return unit_character(u, self.p, self.zeta_p)

    def __str__(self):
        return f"p={self.p}, l={self.l}, k={self.field!r}, zeta={self.zeta}"


def _canonical(factors: Mapping[Polynomial, int]) -> tuple[tuple[Polynomial, int], ...]:
    return tuple(sorted(((f, e) for f, e in factors.items() if e), key=lambda fe: fe[0].sort_key()))


class FactoredElement:
    """unit * prod f_i^e_i, f_i distinct monic irreducibles, e_i nonzero."""

    __slots__ = ("unit", "factors", "_hash")

    def __init__(self, unit: FieldElement, factors: Iterable[tuple[Polynomial, int]] = ()):
        if unit.code == 0:
            raise DomainError("zero is not an element of E^x")
        merged: dict[Polynomial, int] = {}
        for f, e in factors:
            merged[f] = merged.get(f, 0) + e
        self.unit = unit
        self.factors = _canonical(merged)
        self._hash = hash((unit.code, self.factors))

    @classmethod
    def _raw(cls, unit: FieldElement, factors: tuple) -> "FactoredElement":
        obj = cls.__new__(cls)
        obj.unit = unit
        obj.factors = factors
        obj._hash = hash((unit.code, factors))
        return obj

    @classmethod
    def one(cls, field: GF) -> "FactoredElement":
        return cls._raw(field.one, ())

    @classmethod
    def constant(cls, c: FieldElement) -> "FactoredElement":
        return cls(c)

    @classmethod
    def from_polynomial(cls, f: Polynomial, seed: int = 0) -> "FactoredElement":
        fac = factor(f, seed)
        return cls._raw(fac.unit, fac.factors)

    @classmethod
    def product(cls, field: GF, terms: Iterable[tuple["FactoredElement", int]]) -> "FactoredElement":
        """prod e^n over (e, n) pairs, merged in one pass."""
        unit = 1
        merged: dict[Polynomial, int] = {}
        for e, n in terms:
            if not n:
                continue
            unit = field.mul(unit, field.pow(e.unit.code, n))
            for f, x in e.factors:
                merged[f] = merged.get(f, 0) + x * n
        return cls._raw(FieldElement(field, unit), _canonical(merged))

    @property
    def field(self) -> GF:
        return self.unit.field

    def is_one(self) -> bool:
        return self.unit.code == 1 and not self.factors

    def is_constant(self) -> bool:
        return not self.factors

    def exponent_of(self, f: Polynomial) -> int:
        for g, e in self.factors:
            if g == f:
                return e
        return 0

    def __eq__(self, other):
        return (isinstance(other, FactoredElement) and self.unit == other.unit
                and self.factors == other.factors)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "FactoredElement") -> "FactoredElement":
        if not other.factors:
            return FactoredElement._raw(self.unit * other.unit, self.factors)
        if not self.factors:
            return FactoredElement._raw(self.unit * other.unit, other.factors)
        merged = dict(self.factors)
        for f, e in other.factors:
            merged[f] = merged.get(f, 0) + e
        return FactoredElement._raw(self.unit * other.unit, _canonical(merged))

    def inverse(self) -> "FactoredElement":
        return FactoredElement._raw(self.unit.inverse(), tuple((f, -e) for f, e in self.factors))

    def __truediv__(self, other: "FactoredElement") -> "FactoredElement":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FactoredElement":
        if n == 0:
            return FactoredElement.one(self.field)
        return FactoredElement._raw(self.unit**n, tuple((f, e * n) for f, e in self.factors))

    def numerator_denominator(self) -> tuple[Polynomial, Polynomial]:
        k = self.field
        num = Polynomial(k, (self.unit.code,))
        den = Polynomial(k, (1,))
        for f, e in self.factors:
            if e > 0:
                num = num * f**e
            else:
                den = den * f ** (-e)
        return num, den

    def __repr__(self):
        return f"FactoredElement({self})"

    def __str__(self):
        parts = []
        if self.unit.code != 1 or not self.factors:
            parts.append(str(self.unit))
        for f, e in self.factors:
            base = "t" if f.coeffs == (0, 1) else f"({f})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts)


# -- Galois action -------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _scaled(f: Polynomial, c: FieldElement) -> tuple[FieldElement, Polynomial]:
    return substitute_scale(f, c)


def sigma(e: FactoredElement, ctx: GaloisContext, power: int = 1) -> FactoredElement:
    """sigma^power applied to e; sigma acts by t -> zeta*t and fixes k."""
    power %= ctx.q
    if power == 0 or not e.factors:
        return e
    c = ctx.zeta**power
    unit = e.unit
    factors = []
    for f, n in e.factors:
        u, g = _scaled(f, c)
        unit = unit * u**n
        factors.append((g, n))
    return FactoredElement._raw(unit, tuple(sorted(factors, key=lambda fe: fe[0].sort_key())))


def is_pth_power_in_E(e: FactoredElement, p: int) -> bool:
    return all(n % p == 0 for _, n in e.factors) and is_pth_power(e.unit, p)


def pth_root_in_E(e: FactoredElement, p: int) -> FactoredElement:
    if not is_pth_power_in_E(e, p):
        raise DomainError(f"{e} is not a {p}-th power in E")
    return FactoredElement._raw(pth_root(e.unit, p), tuple((f, n // p) for f, n in e.factors))


# -- Kummer classes ------------------------------------------------------------

@dataclass(frozen=True)
class KummerClass:
    """A class in E^x/E^xp with its canonical representative.

    The representative has exponents in 1..p-1 and unit ``class_unit**chi``,
    so two classes are equal exactly when their representatives are.
    """

    representative: FactoredElement
    chi: int

    def is_trivial(self) -> bool:
        return self.representative.is_one()

    def support(self) -> tuple[Polynomial, ...]:
        return tuple(f for f, _ in self.representative.factors)

    def __str__(self):
        return f"[{self.representative}]"


def class_of(e: FactoredElement, ctx: GaloisContext) -> KummerClass:
    p = ctx.p
    chi = ctx.chi(e.unit)
    factors = tuple((f, n % p) for f, n in e.factors if n % p)
    return KummerClass(FactoredElement._raw(ctx.class_unit**chi, factors), chi)


def class_product(a: KummerClass, b: KummerClass, ctx: GaloisContext) -> KummerClass:
    return class_of(a.representative * b.representative, ctx)


def class_power(a: KummerClass, n: int, ctx: GaloisContext) -> KummerClass:
    return class_of(a.representative**n, ctx)


def x_action(c: KummerClass, ctx: GaloisContext) -> KummerClass:
    """x = sigma - 1 acting multiplicatively: [a] -> [sigma(a)/a]."""
    a = c.representative
    return class_of(sigma(a, ctx) / a, ctx)


def sigma_class(c: KummerClass, ctx: GaloisContext, power: int = 1) -> KummerClass:
    return class_of(sigma(c.representative, ctx, power), ctx)


class ClassSpace:
    """Finite coordinate space for classes supported on a sigma-stable set.

    Coordinates are (exponent mod p for each irreducible in the support, in
    canonical order) followed by the unit character.  The support is frozen
    at construction.
    """

    def __init__(self, ctx: GaloisContext, irreducibles: Sequence[Polynomial]):
        self.ctx = ctx
        self.irreducibles = tuple(sorted(set(irreducibles), key=lambda f: f.sort_key()))
        self.index = {f: i for i, f in enumerate(self.irreducibles)}
        self.dim = len(self.irreducibles) + 1
        p = ctx.p
        S = np.zeros((self.dim, self.dim), dtype=np.int64)
        S[-1, -1] = 1
        for i, f in enumerate(self.irreducibles):
            u, g = substitute_scale(f, ctx.zeta)
            if g not in self.index:
                raise InvariantViolation(f"support not sigma-stable: sigma({f}) ~ {g}")
            S[self.index[g], i] = 1
            S[-1, i] = ctx.chi(u) % p
        S.setflags(write=False)
        self.sigma_matrix = S

    @classmethod
    def orbit_closure(cls, classes: Iterable[KummerClass | FactoredElement], ctx: GaloisContext) -> "ClassSpace":
        seen: set[Polynomial] = set()
        stack: list[Polynomial] = []
        for c in classes:
            rep = c.representative if isinstance(c, KummerClass) else c
            stack.extend(f for f, _ in rep.factors)
        while stack:
            f = stack.pop()
            if f in seen:
                continue
            seen.add(f)
            stack.append(substitute_scale(f, ctx.zeta)[1])
        return cls(ctx, list(seen))

    def vector(self, c: KummerClass) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for f, n in c.representative.factors:
            i = self.index.get(f)
            if i is None:
                raise DomainError(f"class {c} is not supported on this space (factor {f})")
            v[i] = n % self.ctx.p
        v[-1] = c.chi % self.ctx.p
        return v

    def element(self, v: Sequence[int]) -> KummerClass:
        p = self.ctx.p
        v = [int(x) % p for x in v]
        factors = tuple((f, v[i]) for i, f in enumerate(self.irreducibles) if v[i])
        return KummerClass(FactoredElement._raw(self.ctx.class_unit ** v[-1], factors), v[-1])

    def x_matrix(self) -> np.ndarray:
        return (self.sigma_matrix - np.eye(self.dim, dtype=np.int64)) % self.ctx.p
