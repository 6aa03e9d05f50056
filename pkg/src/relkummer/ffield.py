"""Exact arithmetic in finite fields GF(r^m).

Elements are encoded internally as integers ``0 <= code < r^m`` whose base-r
digits are the little-endian coefficients of the residue modulo the defining
polynomial.  For a prime field the code is the residue itself.  The public
face is :class:`FieldElement`; polynomial code works on raw codes for speed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Sequence

from .errors import DomainError, UnsupportedInstanceError

MAX_FIELD_SIZE = 10**6
EXHAUSTIVE_DLOG_LIMIT = 10**3
# extension fields up to this size multiply through exp/log tables
ARITH_TABLE_LIMIT = 2**14


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(r, m)`` with ``n == r**m`` and r prime, or None."""
    f = factor_int(n) if n > 1 else {}
    if len(f) != 1:
        return None
    (r, m), = f.items()
    return r, m


# -- bare GF(r)[u] helpers, only used to pick / check the defining polynomial --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], r: int) -> list[int]:
    a = _trim([c % r for c in a])
    inv_lead = pow(b[-1], -1, r)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % r
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % r
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], r: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, r)


def _pgcd(a: list[int], b: list[int], r: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, r)
    return a


def _frobenius_power(f: list[int], r: int, k: int) -> list[int]:
    """u^(r^k) mod f over GF(r)."""
    h = _pmod([0, 1], f, r)
    for _ in range(k):
        res, base, e = [1], h, r
        while e:
            if e & 1:
                res = _pmulmod(res, base, f, r)
            base = _pmulmod(base, base, f, r)
            e >>= 1
        h = res
    return h


def _is_irreducible_mod_r(f: list[int], r: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    if _frobenius_power(f, r, m) != _pmod([0, 1], f, r):
        return False
    for d in factor_int(m):
        h = _frobenius_power(f, r, m // d)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % r
        if len(_pgcd(f, _trim(diff), r)) != 1:
            return False
    return True


def canonical_modulus(r: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over GF(r).

    Order is lexicographic on the little-endian coefficient tuple
    ``(c0, c1, ..., c_{m-1})``.
    """
    if m == 1:
        return (0, 1)
    # c0 = 0 means t divides the polynomial, so the search starts at c0 = 1
    for low in itertools.product(range(1, r), *[range(r)] * (m - 1)):
        cand = list(low) + [1]
        # cheap rejection of polynomials with a root in GF(r) before Rabin's test
        if any(sum(c * pow(x, i, r) for i, c in enumerate(cand)) % r == 0 for x in range(r)):
            continue
        if _is_irreducible_mod_r(cand, r):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class GF:
    """The finite field GF(r^m); its str() is the instance-file field value.

    Discrete-log tables (for small fields) and the primitive root are built
    eagerly in the constructor, after which the object is never mutated.
    """

    def __init__(self, r: int, m: int = 1, modulus: Sequence[int] | None = None,
                 max_size: int = MAX_FIELD_SIZE):
        if not is_prime(r):
            raise UnsupportedInstanceError(f"characteristic {r} is not prime")
        if m < 1:
            raise UnsupportedInstanceError(f"extension degree must be positive, got {m}")
        if r**m > max_size:
            raise UnsupportedInstanceError(f"field size {r}^{m} exceeds supported cap {max_size}")
        if modulus is None:
            modulus = canonical_modulus(r, m) if m > 1 else (0, 1)
        modulus = tuple(int(c) % r for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise UnsupportedInstanceError(f"modulus must be monic of degree {m}")
        if m > 1 and not _is_irreducible_mod_r(list(modulus), r):
            raise UnsupportedInstanceError(f"modulus {list(modulus)} is reducible over GF({r})")
        self.r = r
        self.m = m
        self.modulus = modulus
        self.order = r**m
        self._powers = [r**i for i in range(m)]
        self.unit_group_order = self.order - 1
        self._n_factors = factor_int(self.unit_group_order) if self.unit_group_order > 1 else {}
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.generator = self._find_generator()
        if m > 1 and self.order <= ARITH_TABLE_LIMIT:
            exp, log, x = [0] * self.unit_group_order, [0] * self.order, 1
            for k in range(self.unit_group_order):
                exp[k] = x
                log[x] = k
                x = self.mul(x, self.generator)
            self._exp, self._log = exp, log
        self._log_table: dict[int, int] | None = None
        if self.order <= EXHAUSTIVE_DLOG_LIMIT:
            table, x = {}, 1
            for k in range(self.unit_group_order):
                table[x] = k
                x = self.mul(x, self.generator)
            self._log_table = table
        # baby-step tables for the order-q subgroups used by Pohlig-Hellman
        self._bsgs_tables: dict[int, tuple[int, dict[int, int], int]] = {}
        if self._log_table is None:
            n = self.unit_group_order
            for q in self._n_factors:
                gamma = self.pow(self.generator, n // q)
                step = isqrt(q) + 1
                baby, x = {}, 1
                for j in range(step):
                    baby.setdefault(x, j)
                    x = self.mul(x, gamma)
                self._bsgs_tables[q] = (step, baby, self.pow(gamma, -step))

    # -- identity ------------------------------------------------------------
    def _key(self):
        return (self.r, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.r})"
        return f"GF({self.r}^{self.m})"

    def describe(self) -> str:
        """Instance-file text for this field, including the modulus when it is not canonical."""
        if self.m == 1:
            return f"GF({self.r})"
        text = f"GF({self.r}^{self.m})"
        if self.modulus != canonical_modulus(self.r, self.m):
            text += " modulus=[" + ",".join(map(str, self.modulus)) + "]"
        return text

    # -- encoding ------------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.r)
            out.append(d)
        return out

    def encode(self, digits: Sequence[int]) -> int:
        digits = list(digits)
        if len(digits) > self.m:
            digits = _pmod(digits, list(self.modulus), self.r)
        return sum((d % self.r) * w for d, w in zip(digits, self._powers))

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> prime subfield."""
        return n % self.r

    # -- arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.r
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.r
        return self.encode([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.r
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % self.unit_group_order]
        return self.encode(_pmulmod(self.digits(a), self.digits(b), list(self.modulus), self.r))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.r)
        if self._exp is not None:
            if a == 0:
                return 0 if e else 1
            return self._exp[self._log[a] * e % self.unit_group_order]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("division by zero in " + repr(self))
        if self.m == 1:
            return pow(a, -1, self.r)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        n = self.unit_group_order
        for q, e in self._n_factors.items():
            for _ in range(e):
                if self.pow(a, n // q) == 1:
                    n //= q
                else:
                    break
        return n

    def _find_generator(self) -> int:
        n = self.unit_group_order
        for c in range(1, self.order):
            if all(self.pow(c, n // q) != 1 for q in self._n_factors):
                return c
        raise AssertionError("cyclic group without generator")  # unreachable

    # -- discrete logarithms -------------------------------------------------
    def dlog(self, a: int) -> int:
        """Discrete log of a (code) to the base ``self.generator``."""
        if a == 0:
            raise DomainError("discrete log of zero")
        if self._log_table is not None:
            return self._log_table[a]
        return self._pohlig_hellman(a)

    def _bsgs(self, target: int, order: int) -> int:
        """Log of target to the base g^(n/order), order a prime dividing n."""
        step, baby, giant = self._bsgs_tables[order]
        y = target
        for i in range(step + 1):
            j = baby.get(y)
            if j is not None:
                return (i * step + j) % order
            y = self.mul(y, giant)
        raise DomainError("discrete log does not exist")

    def _pohlig_hellman(self, a: int) -> int:
        n = self.unit_group_order
        residues, moduli = [], []
        for q, e in self._n_factors.items():
            qe = q**e
            g_i = self.pow(self.generator, n // qe)
            h_i = self.pow(a, n // qe)
            x = 0
            for k in range(e):
                hk = self.pow(self.mul(self.pow(g_i, -x), h_i), q ** (e - 1 - k))
                x += self._bsgs(hk, q) * q**k
            residues.append(x)
            moduli.append(qe)
        x, mod = 0, 1
        for res, m in zip(residues, moduli):
            # CRT step
            t = (res - x) * pow(mod, -1, m) % m
            x += mod * t
            mod *= m
        return x % n

    # -- FieldElement factory ------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.encode([int(c) for c in value]))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.order):
            yield FieldElement(self, c)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: GF
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DomainError("operands from different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.field.m != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.code

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return f"{self.field!r}({self})"

    def __str__(self):
        if self.field.m == 1:
            return str(self.code)
        return "[" + ",".join(map(str, self.coeffs)) + "]"


# -- public operations -----------------------------------------------------------

def find_primitive_root(field: GF) -> FieldElement:
    """Least element (in code order) generating the unit group."""
    return FieldElement(field, field.generator)


def primitive_root_of_unity(field: GF, n: int) -> FieldElement:
    if n < 1 or field.unit_group_order % n:
        raise UnsupportedInstanceError(f"{n} does not divide |{field!r}^x| = {field.unit_group_order}")
    return FieldElement(field, field.pow(field.generator, field.unit_group_order // n))


def dlog(u: FieldElement) -> int:
    return u.field.dlog(u.code)


def _check_unit(u: FieldElement) -> None:
    if u.code == 0:
        raise DomainError("zero is not a unit")


def is_pth_power(u: FieldElement, p: int) -> bool:
    _check_unit(u)
    k = u.field
    if k.unit_group_order % p:
        # p-th powering is a bijection of the unit group
        return True
    return k.pow(u.code, k.unit_group_order // p) == 1


def unit_character(u: FieldElement, p: int, zeta_p: FieldElement) -> int:
    """chi(u) in F_p, defined by u^((|k|-1)/p) == zeta_p^chi(u)."""
    _check_unit(u)
    k = u.field
    w = k.pow(u.code, k.unit_group_order // p)
    z = 1
    for j in range(p):
        if z == w:
            return j
        z = k.mul(z, zeta_p.code)
    raise DomainError(f"zeta_p = {zeta_p} is not a primitive {p}-th root of unity")


def pth_root(u: FieldElement, p: int) -> FieldElement:
    """The p-th root of u with least discrete log (deterministic tie-break)."""
    _check_unit(u)
    k = u.field
    n = k.unit_group_order
    d = k.dlog(u.code)
    g = gcd(p, n)
    if d % g:
        raise DomainError(f"{u} is not a {p}-th power in {k!r}")
    # least nonnegative x with p*x == d (mod n)
    x = (d // g) * pow(p // g, -1, n // g) % (n // g) if n // g > 1 else 0
    return FieldElement(k, k.pow(k.generator, x))
