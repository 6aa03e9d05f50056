"""Brute-force reference computations, sharing no code with the main pipeline.

Everything here works on plain integers mod a prime and answers questions by
enumeration, so it is only usable at very small sizes.  Kernel sizes found by
enumeration determine Jordan types: the number of blocks of size >= j is
log_p(|ker x^j| / |ker x^(j-1)|).
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


def _log_p(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


def type_from_kernel_sizes(sizes: Sequence[int], p: int) -> tuple[int, ...]:
    """sizes[j] = |ker x^j| for j = 0, 1, ... until it stabilizes at the whole module."""
    at_least = [_log_p(sizes[j] // sizes[j - 1], p) for j in range(1, len(sizes))]
    parts = []
    for j in range(len(at_least), 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exact)
    return tuple(parts)


def type_of_operator(elements: Iterable[Hashable], x: Callable, zero: Hashable, p: int) -> tuple[int, ...]:
    """Jordan type of a nilpotent x on a finite F_p-space, listed element by element."""
    elems = list(elements)
    total = len(elems)
    sizes = [1]
    current = {e: e for e in elems}
    while sizes[-1] < total:
        current = {e: x(v) for e, v in current.items()}
        k = sum(1 for v in current.values() if v == zero)
        if k == sizes[-1]:
            raise ValueError("operator is not nilpotent")
        sizes.append(k)
    return type_from_kernel_sizes(sizes, p)


# -- vectors and matrices mod p ----------------------------------------------------

def vectors(n: int, p: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(p), repeat=n))


def apply(M: Matrix, v: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) % p for i in range(len(M)))


def inverse_by_search(M: Matrix, p: int) -> Matrix | None:
    """M^-1 found by looking up each preimage of e_i; None if M is singular."""
    n = len(M)
    table: dict[tuple[int, ...], tuple[int, ...]] = {}
    for v in vectors(n, p):
        table.setdefault(apply(M, v, p), v)
    if len(table) != p**n:
        return None
    cols = [table[tuple(1 if i == j else 0 for i in range(n))] for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def matrix_type(X: Matrix, p: int) -> tuple[int, ...]:
    n = len(X)
    return type_of_operator(vectors(n, p), lambda v: apply(X, v, p), (0,) * n, p)


def twisted_dual_type(X: Matrix, p: int) -> tuple[int, ...]:
    """Jordan type of Hom(M, F_p) with (s.theta)(m) = theta(s^-1 m), by enumeration.

    Functionals are stored as their value tables on the standard basis.
    """
    n = len(X)
    S = tuple(tuple((X[i][j] + (i == j)) % p for j in range(n)) for i in range(n))
    S_inv = inverse_by_search(S, p)
    if S_inv is None:
        raise ValueError("1 + x is not invertible")
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    pre = [apply(S_inv, e, p) for e in basis]

    def x_dual(theta):
        # (s.theta)(e_j) = theta(s^-1 e_j); x = s - 1
        return tuple((sum(theta[i] * pre[j][i] for i in range(n)) - theta[j]) % p for j in range(n))

    return type_of_operator(vectors(n, p), x_dual, (0,) * n, p)


def block_matrix(parts: Sequence[int]) -> Matrix:
    n = sum(parts)
    X = [[0] * n for _ in range(n)]
    start = 0
    for size in parts:
        for i in range(size - 1):
            X[start + i + 1][start + i] = 1
        start += size
    return tuple(tuple(r) for r in X)


def conjugate(X: Matrix, P: Matrix, p: int) -> Matrix | None:
    """P X P^-1, or None when P is singular."""
    P_inv = inverse_by_search(P, p)
    if P_inv is None:
        return None
    n = len(X)

    def mul(A, B):
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))

    return mul(mul(P, X), P_inv)


# -- E = k(t) restricted to split elements -------------------------------------------
#
# An element c * prod (t - a)^e_a with every factor linear is stored as
# (c, frozenset of (a, e_a mod p)) modulo p-th powers.  sigma is applied by
# substituting zeta*t for t:  zeta*t - a = zeta * (t - a/zeta).

def _pth_powers(r: int, p: int) -> frozenset[int]:
    return frozenset(pow(y, p, r) for y in range(1, r))


def _order(z: int, r: int) -> int:
    k, w = 1, z % r
    while w != 1:
        w = w * z % r
        k += 1
    return k


def _some_root_of_unity(r: int, q: int) -> int:
    for z in range(2, r):
        if _order(z, r) == q:
            return z
    raise ValueError(f"no element of order {q} mod {r}")


class SplitKummer:
    """Classes c * prod (t - a)^e in E^x/E^xp for a prime field k = F_r."""

    def __init__(self, r: int, p: int, l: int):
        self.r, self.p, self.q = r, p, p**l
        self.zeta = _some_root_of_unity(r, self.q)
        self.powers = _pth_powers(r, p)
        # coset representatives of k^x / k^xp: least element of each coset
        self.unit_rep = {c: min(c * y % r for y in self.powers) for c in range(1, r)}

    def cls(self, c: int, roots: dict[int, int]):
        return (self.unit_rep[c % self.r],
                frozenset((a % self.r, e % self.p) for a, e in roots.items() if e % self.p))

    def mul(self, u, v):
        roots = dict(u[1])
        for a, e in v[1]:
            roots[a] = roots.get(a, 0) + e
        return self.cls(u[0] * v[0], roots)

    def power(self, u, n: int):
        return self.cls(pow(u[0], n, self.r), {a: e * n for a, e in u[1]})

    def sigma(self, u):
        z_inv = pow(self.zeta, -1, self.r)
        c = u[0]
        roots = {}
        for a, e in u[1]:
            c = c * pow(self.zeta, e, self.r) % self.r
            roots[a * z_inv % self.r] = e
        return self.cls(c, roots)

    def x(self, u):
        s = self.sigma(u)
        return self.mul(s, self.power(u, -1))

    def closure(self, gens: Sequence[tuple[int, dict[int, int]]]) -> set:
        one = self.cls(1, {})
        elems = {one}
        frontier = [self.cls(c, roots) for c, roots in gens]
        while frontier:
            g = frontier.pop()
            if g in elems:
                continue
            elems.add(g)
            new = {self.mul(g, e) for e in elems}
            new.add(self.sigma(g))
            frontier.extend(n for n in new if n not in elems)
        return elems

    def jordan_type(self, gens: Sequence[tuple[int, dict[int, int]]]) -> tuple[int, ...]:
        elems = self.closure(gens)
        return type_of_operator(elems, self.x, self.cls(1, {}), self.p)
