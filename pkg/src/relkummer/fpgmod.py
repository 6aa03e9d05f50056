"""Modules over A = F_p[G] = F_p[x]/(x^q) for a cyclic group G of order q = p^l.

A finitely generated A-module is carried as an F_p-basis plus the matrix X
of x = sigma - 1 in that basis (column convention: x.v = X @ v).  Jordan
types (cyclic summand sizes) are the isomorphism invariant used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import linalg
from .errors import DomainError, InvariantViolation
from .ratfield import ClassSpace, GaloisContext, KummerClass, x_action

JordanType = tuple[int, ...]


@dataclass(frozen=True)
class GroupAlgebraElement:
    """sum_i coeffs[i] x^i in F_p[x]/(x^q)."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))

    @property
    def q(self) -> int:
        return len(self.coeffs)

    @classmethod
    def x_power(cls, k: int, p: int, q: int) -> "GroupAlgebraElement":
        c = [0] * q
        if k < q:
            c[k] = 1
        return cls(tuple(c), p)

    @classmethod
    def sigma_power(cls, k: int, p: int, q: int) -> "GroupAlgebraElement":
        """sigma^k = (1 + x)^k, k taken mod q."""
        out = cls.x_power(0, p, q)
        step = cls(tuple([1, 1] + [0] * (q - 2)) if q > 1 else (1,), p)
        for _ in range(k % q):
            out = out * step
        return out

    def __add__(self, other):
        return GroupAlgebraElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def __sub__(self, other):
        return GroupAlgebraElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def __mul__(self, other):
        q = self.q
        out = [0] * q
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(q - i):
                    out[i + j] += a * other.coeffs[j]
        return GroupAlgebraElement(tuple(out), self.p)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """Least index of a nonzero coefficient (q for the zero element)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.q

    def as_matrix(self, X: np.ndarray) -> np.ndarray:
        """The matrix by which this element acts on a module with x-matrix X."""
        n = X.shape[0]
        out = np.zeros((n, n), dtype=np.int64)
        P = np.eye(n, dtype=np.int64)
        for c in self.coeffs:
            if c:
                out = out + c * P
            P = (P @ X) % self.p
        return out % self.p


def principal_ideal_basis(a: GroupAlgebraElement) -> np.ndarray:
    """Columns spanning the ideal aA inside A = F_p^q (coordinates in 1, x, ...)."""
    cols = [np.array((a * GroupAlgebraElement.x_power(i, a.p, a.q)).coeffs, dtype=np.int64) for i in range(a.q)]
    return np.column_stack(cols)


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    X: np.ndarray
    p: int
    q: int
    labels: tuple[Any, ...] = ()
    # ambient coordinates of the basis vectors, when the module sits inside a ClassSpace
    embedding: np.ndarray | None = None
    space: ClassSpace | None = field(default=None, repr=False)

    def __post_init__(self):
        X = linalg.as_mod(self.X, self.p)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise DomainError("x-matrix must be square")
        X.setflags(write=False)
        object.__setattr__(self, "X", X)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(X.shape[0])))
        if len(self.labels) != X.shape[0]:
            raise DomainError("one label per basis vector required")
        if len(set(map(str, self.labels))) != len(self.labels):
            raise InvariantViolation("basis labels are not distinct")
        if X.shape[0] and np.any(linalg.matpow(X, self.q, self.p)):
            raise InvariantViolation(f"x does not satisfy x^{self.q} = 0")

    @property
    def dim(self) -> int:
        return self.X.shape[0]

    @property
    def sigma_matrix(self) -> np.ndarray:
        return (self.X + np.eye(self.dim, dtype=np.int64)) % self.p

    def act(self, a: GroupAlgebraElement, v) -> np.ndarray:
        return (a.as_matrix(self.X) @ np.asarray(v, dtype=np.int64)) % self.p


def standard_cyclic(l: int, p: int, q: int) -> ModulePresentation:
    """A/<x^l> in the basis 1, x, ..., x^(l-1)."""
    return block_module((l,), p, q)


def block_module(parts: Sequence[int], p: int, q: int) -> ModulePresentation:
    n = sum(parts)
    X = np.zeros((n, n), dtype=np.int64)
    start = 0
    for size in parts:
        for i in range(size - 1):
            X[start + i + 1, start + i] = 1
        start += size
    return ModulePresentation(X, p, q)


def rank_sequence(X: np.ndarray, p: int) -> list[int]:
    """[rank X^0, rank X^1, ...] up to the first zero power."""
    n = X.shape[0]
    ranks = [n]
    P = np.eye(n, dtype=np.int64)
    while ranks[-1]:
        P = (P @ X) % p
        r = linalg.rank(P, p)
        if r == ranks[-1]:
            raise InvariantViolation("x-matrix is not nilpotent")
        ranks.append(r)
    return ranks


def jordan_type_of_matrix(X: np.ndarray, p: int) -> JordanType:
    ranks = rank_sequence(X, p)
    # number of blocks of size >= j is ranks[j-1] - ranks[j]
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts: list[int] = []
    for j in range(len(at_least), 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exact)
    return tuple(parts)


def jordan_type(M: ModulePresentation) -> JordanType:
    return jordan_type_of_matrix(M.X, M.p)


def cyclic_decompose(M: ModulePresentation) -> list[tuple[np.ndarray, int]]:
    """Generators g_i and sizes l_i with {x^j g_i} an F_p-basis of M.

    Block generators of size j span a complement of ker x^(j-1) + x ker x^(j+1)
    inside ker x^j.  Sizes are processed from largest to smallest and the
    complement is filled greedily from the RREF null-space basis of x^j, so
    the output is deterministic.
    """
    p, X, n = M.p, M.X, M.dim
    if n == 0:
        return []
    ranks = rank_sequence(X, p)
    top = len(ranks) - 1
    powers = [linalg.matpow(X, j, p) for j in range(top + 2)]
    kernels = [linalg.nullspace(P, p) if n else np.zeros((0, 0), dtype=np.int64) for P in powers]
    out: list[tuple[np.ndarray, int]] = []
    for j in range(top, 0, -1):
        base = np.column_stack([kernels[j - 1], (X @ kernels[j + 1]) % p])
        target = kernels[j].shape[1]
        current = base
        have = linalg.rank(current, p)
        for v in kernels[j].T:
            if have == target:
                break
            trial = np.column_stack([current, v])
            r = linalg.rank(trial, p)
            if r > have:
                current, have = trial, r
                out.append((v.copy(), j))
    if sum(size for _, size in out) != n:
        raise InvariantViolation("cyclic decomposition does not cover the module")
    return out


def chain_basis(M: ModulePresentation, decomposition=None) -> np.ndarray:
    """Columns g_1, x g_1, ..., x^(l_1-1) g_1, g_2, ... for a decomposition."""
    if decomposition is None:
        decomposition = cyclic_decompose(M)
    cols = []
    for g, size in decomposition:
        v = g % M.p
        for _ in range(size):
            cols.append(v)
            v = (M.X @ v) % M.p
    if not cols:
        return np.zeros((M.dim, 0), dtype=np.int64)
    return np.column_stack(cols)


def dual_module(M: ModulePresentation) -> ModulePresentation:
    """Hom(M, F_p) with (g theta)(m) = theta(g^-1 m), in the dual basis."""
    n = M.dim
    if n == 0:
        return ModulePresentation(np.zeros((0, 0), dtype=np.int64), M.p, M.q)
    S_inv = linalg.inverse(M.sigma_matrix, M.p)
    Xd = (S_inv.T - np.eye(n, dtype=np.int64)) % M.p
    return ModulePresentation(Xd, M.p, M.q, tuple(f"{lab}*" for lab in M.labels))


def is_standard_cyclic(M: ModulePresentation) -> bool:
    return np.array_equal(M.X, standard_cyclic(M.dim, M.p, M.q).X) if M.dim else False


def dual_generator(M: ModulePresentation) -> np.ndarray:
    """The functional f with f(x^i g) = 0 for i < l-1 and f(x^(l-1) g) = 1."""
    if not is_standard_cyclic(M):
        raise DomainError("dual_generator needs a cyclic module in its standard basis g, xg, ...")
    f = np.zeros(M.dim, dtype=np.int64)
    f[-1] = 1
    return f


def krylov_dimension(X: np.ndarray, v: np.ndarray, p: int) -> int:
    """Dimension of the A-submodule generated by v."""
    cols = []
    w = v % p
    while np.any(w):
        if cols and linalg.in_span(np.column_stack(cols), w, p):
            break
        cols.append(w)
        w = (X @ w) % p
    return len(cols)


# -- submodules of E^x/E^xp ----------------------------------------------------

def span_closure(generators: Sequence[KummerClass], ctx: GaloisContext,
                 space: ClassSpace | None = None) -> ModulePresentation:
    """The A-submodule generated by classes, in the Krylov basis g, xg, ..."""
    if space is None:
        space = ClassSpace.orbit_closure(generators, ctx)
    p = ctx.p
    Xa = space.x_matrix()
    cols: list[np.ndarray] = []
    current_rank = 0
    for c in generators:
        v = space.vector(c)
        while np.any(v):
            trial = np.column_stack(cols + [v])
            r = linalg.rank(trial, p)
            if r == current_rank:
                break
            cols.append(v)
            current_rank = r
            v = (Xa @ v) % p
    if not cols:
        return ModulePresentation(np.zeros((0, 0), dtype=np.int64), p, ctx.q, (),
                                  np.zeros((space.dim, 0), dtype=np.int64), space)
    B = np.column_stack(cols)
    X = linalg.solve(B, (Xa @ B) % p, p)
    labels = tuple(space.element(col) for col in cols)
    return ModulePresentation(X, p, ctx.q, labels, B, space)


def annihilator_exponent(c: KummerClass, ctx: GaloisContext) -> int:
    """Least s >= 0 with x^s [a] trivial."""
    s = 0
    while not c.is_trivial():
        c = x_action(c, ctx)
        s += 1
        if s > ctx.q:
            raise InvariantViolation("x is not nilpotent on this class")
    return s
