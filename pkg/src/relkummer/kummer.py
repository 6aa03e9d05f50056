"""Kummer extensions E_B = E(B^(1/p)) held formally, and the G-action on N_B.

The radicals r_i (r_i^p = b_i) of an F_p-basis of B/E^xp are formal symbols;
an element of N_B is an exponent vector tau acting by r_i -> zeta_p^tau_i r_i.
A lift of sigma is fixed by LiftData and acts on monomials

    zeta_p^a * c * prod r_i^k_i      (c in E^x, 0 <= k_i < p)

so that sigma~ tau sigma~^-1 can be evaluated symbol by symbol.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import linalg
from .errors import DomainError, InvariantViolation
from .fpgmod import (
    GroupAlgebraElement,
    JordanType,
    ModulePresentation,
    annihilator_exponent,
    chain_basis,
    cyclic_decompose,
    dual_module,
    jordan_type,
    jordan_type_of_matrix,
    span_closure,
)
from .ratfield import (
    ClassSpace,
    FactoredElement,
    GaloisContext,
    KummerClass,
    class_of,
    is_pth_power_in_E,
    pth_root_in_E,
    sigma,
)

# exhaustive lift-twist enumeration below this many lifts
EXHAUSTIVE_TWIST_LIMIT = 64


@dataclass(frozen=True)
class GaloisAutomorphism:
    """tau in N_B: r_i -> zeta_p^tau[i] * r_i."""

    tau: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(int(t) % self.p for t in self.tau))

    @classmethod
    def basis(cls, j: int, n: int, p: int) -> "GaloisAutomorphism":
        return cls(tuple(1 if i == j else 0 for i in range(n)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "GaloisAutomorphism":
        return cls((0,) * n, p)

    def __add__(self, other: "GaloisAutomorphism") -> "GaloisAutomorphism":
        # composition of automorphisms
        return GaloisAutomorphism(tuple(a + b for a, b in zip(self.tau, other.tau)), self.p)

    def __neg__(self):
        return GaloisAutomorphism(tuple(-a for a in self.tau), self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "GaloisAutomorphism":
        return GaloisAutomorphism(tuple(c * a for a in self.tau), self.p)

    def is_identity(self) -> bool:
        return not any(self.tau)

    def vector(self) -> np.ndarray:
        return np.array(self.tau, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class RadicalExtension:
    ctx: GaloisContext
    space: ClassSpace
    basis: tuple[FactoredElement, ...]          # b_1..b_n, r_i^p = b_i
    basis_classes: tuple[KummerClass, ...]
    vectors: np.ndarray                         # ambient coordinates, one column per b_i
    module: ModulePresentation                  # B/E^xp in the basis b_i
    chains: tuple[tuple[int, int], ...]         # (start, length) of each cyclic summand
    notes: tuple[str, ...] = ()
    left_inverse: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.ctx.p

    def coordinates(self, c: KummerClass) -> np.ndarray:
        """Coefficients of c in the basis [b_i]; DomainError if c is not in B/E^xp."""
        try:
            v = self.space.vector(c)
        except DomainError:
            raise DomainError(f"class {c} lies outside B/E^xp") from None
        if self.n == 0:
            if np.any(v):
                raise DomainError(f"class {c} lies outside B/E^xp")
            return np.zeros(0, dtype=np.int64)
        coeffs = (self.left_inverse @ v) % self.p
        if not np.array_equal((self.vectors @ coeffs) % self.p, v):
            raise DomainError(f"class {c} lies outside B/E^xp")
        return coeffs

    def radical(self, i: int) -> "Monomial":
        return Monomial(0, FactoredElement.one(self.ctx.field), tuple(1 if j == i else 0 for j in range(self.n)))


@dataclass(frozen=True)
class LiftData:
    """sigma~(r_i) = e_i * prod_j r_j^coords[i][j], with sigma(b_i) = prod b_j^c_ij * e_i^p."""

    coords: tuple[tuple[int, ...], ...]
    corrections: tuple[FactoredElement, ...]

    def twisted(self, twist: Sequence[int], ctx: GaloisContext) -> "LiftData":
        """The lift differing from this one by r_i -> zeta_p^twist[i] on each radical."""
        return LiftData(self.coords, tuple(e * FactoredElement.constant(ctx.zeta_p ** int(j))
                                           for e, j in zip(self.corrections, twist)))

    def matrix(self) -> np.ndarray:
        n = len(self.coords)
        return np.array(self.coords, dtype=np.int64).reshape(n, n)


# -- construction -----------------------------------------------------------------

def _extension_from_vectors(ctx: GaloisContext, space: ClassSpace, vectors: np.ndarray,
                            chains: Sequence[tuple[int, int]], notes=()) -> RadicalExtension:
    p = ctx.p
    n = vectors.shape[1]
    classes = tuple(space.element(vectors[:, i]) for i in range(n))
    left = np.zeros((n, space.dim), dtype=np.int64)
    if n:
        rows = linalg.rref(vectors.T, p)[1]
        if len(rows) != n:
            raise InvariantViolation("basis classes are linearly dependent")
        left[:, rows] = linalg.inverse(vectors[rows, :], p)
        image = (space.x_matrix() @ vectors) % p
        X = (left @ image) % p
        if not np.array_equal((vectors @ X) % p, image):
            raise InvariantViolation("basis does not span an x-stable subspace")
    else:
        X = np.zeros((0, 0), dtype=np.int64)
    module = ModulePresentation(X, p, ctx.q, classes, vectors, space)
    return RadicalExtension(ctx, space, tuple(c.representative for c in classes), classes,
                            vectors, module, tuple(chains), tuple(notes), left)


def compute_lift(ext: RadicalExtension) -> LiftData:
    ctx, p = ext.ctx, ext.p
    coords, corrections = [], []
    for i, b in enumerate(ext.basis):
        sb = sigma(b, ctx)
        c = ext.coordinates(class_of(sb, ctx))
        # the class-level route must agree with the matrix of sigma on B
        if not np.array_equal(c, ext.module.sigma_matrix[:, i]):
            raise InvariantViolation(f"coordinates of sigma(b_{i}) disagree with the module matrix")
        prod = FactoredElement.product(ctx.field, [(ext.basis[j], int(cj)) for j, cj in enumerate(c)])
        e = pth_root_in_E(sb / prod, p)
        if prod * e**p != sb:
            raise InvariantViolation(f"lift identity fails for b_{i}")
        coords.append(tuple(int(x) for x in c))
        corrections.append(e)
    return LiftData(tuple(coords), tuple(corrections))


def verify_lift(ext: RadicalExtension, lift: LiftData) -> bool:
    ctx = ext.ctx
    for i, b in enumerate(ext.basis):
        terms = [(ext.basis[j], cj) for j, cj in enumerate(lift.coords[i])]
        terms.append((lift.corrections[i], ctx.p))
        if FactoredElement.product(ctx.field, terms) != sigma(b, ctx):
            return False
    return True


def build_extension(generators: Sequence[FactoredElement], ctx: GaloisContext) -> tuple[RadicalExtension, LiftData]:
    """E_B for the G-closure B of the generators, in a cyclic-chain basis."""
    classes = [class_of(g, ctx) for g in generators]
    notes = []
    for idx, c in enumerate(classes):
        if c.is_trivial():
            notes.append(f"generator {idx} is a p-th power (contributes the zero class)")
    space = ClassSpace.orbit_closure(classes, ctx)
    M = span_closure(classes, ctx, space)
    independent = linalg.rank(np.column_stack([space.vector(c) for c in classes]), ctx.p) if classes else 0
    if M.dim > independent:
        notes.append(f"G-closure enlarged the span of the generators from dimension {independent} to {M.dim}")
    decomposition = cyclic_decompose(M)
    P = chain_basis(M, decomposition)
    vectors = (M.embedding @ P) % ctx.p if M.dim else np.zeros((space.dim, 0), dtype=np.int64)
    chains, start = [], 0
    for _, size in decomposition:
        chains.append((start, size))
        start += size
    ext = _extension_from_vectors(ctx, space, vectors, chains, notes)
    for start, size in chains:
        for j in range(size - 1):
            if ext.module.X[start + j + 1, start + j] != 1 or np.count_nonzero(ext.module.X[:, start + j]) != 1:
                raise InvariantViolation("chain basis is not a Jordan basis")
    lift = compute_lift(ext)
    if not verify_lift(ext, lift):
        raise InvariantViolation("lift identity fails after construction")
    return ext, lift


def cyclic_extension(a: FactoredElement | KummerClass, ctx: GaloisContext) -> RadicalExtension:
    """Extension for the cyclic module generated by [a], in the basis [a], x[a], ..., x^(s-1)[a]."""
    c = a if isinstance(a, KummerClass) else class_of(a, ctx)
    space = ClassSpace.orbit_closure([c], ctx)
    M = span_closure([c], ctx, space)
    return _extension_from_vectors(ctx, space, M.embedding, [(0, M.dim)] if M.dim else [])


# -- formal arithmetic in E_B --------------------------------------------------------

@dataclass(frozen=True)
class Monomial:
    """zeta_p^zeta_exp * coeff * prod r_i^exps[i]."""

    zeta_exp: int
    coeff: FactoredElement
    exps: tuple[int, ...]

    def value_key(self, ctx: GaloisContext):
        """Key equal for monomials that are equal as elements of E_B (after normalization)."""
        return (self.coeff * FactoredElement.constant(ctx.zeta_p ** self.zeta_exp), self.exps)


def normalize(m: Monomial, ext: RadicalExtension) -> Monomial:
    """Reduce radical exponents into [0, p) using r_i^p = b_i."""
    p = ext.p
    terms = [(m.coeff, 1)]
    exps = []
    for i, k in enumerate(m.exps):
        d, r = divmod(int(k), p)
        if d:
            terms.append((ext.basis[i], d))
        exps.append(r)
    coeff = m.coeff if len(terms) == 1 else FactoredElement.product(ext.ctx.field, terms)
    return Monomial(m.zeta_exp % p, coeff, tuple(exps))


def apply_tau(tau: GaloisAutomorphism, m: Monomial) -> Monomial:
    shift = sum(t * k for t, k in zip(tau.tau, m.exps))
    return Monomial((m.zeta_exp + shift) % tau.p, m.coeff, m.exps)


class FormalLift:
    """sigma~ on monomials for fixed LiftData, with its inverse on the radicals."""

    def __init__(self, ext: RadicalExtension, lift: LiftData):
        self.ext = ext
        self.lift = lift
        self.C = lift.matrix() if ext.n else np.zeros((0, 0), dtype=np.int64)
        self._CT_inv = linalg.inverse(self.C.T, ext.p) if ext.n else self.C
        self._cache: dict[tuple, tuple[FactoredElement, tuple[int, ...]]] = {}
        self.radical_exps = tuple(ext.radical(i).exps for i in range(ext.n))
        self.preimages = tuple(self.preimage(ext.radical(i)) for i in range(ext.n))

    def apply(self, m: Monomial) -> Monomial:
        key = (m.coeff, m.exps)
        hit = self._cache.get(key)
        if hit is None:
            ctx = self.ext.ctx
            terms = [(sigma(m.coeff, ctx), 1)]
            terms.extend((self.lift.corrections[j], k) for j, k in enumerate(m.exps) if k)
            coeff = FactoredElement.product(ctx.field, terms)
            k = np.array(m.exps, dtype=np.int64)
            new = self.C.T @ k if self.ext.n else k
            out = normalize(Monomial(0, coeff, tuple(int(x) for x in new)), self.ext)
            hit = (out.coeff, out.exps)
            self._cache[key] = hit
        # sigma~ fixes k, in particular zeta_p
        return Monomial(m.zeta_exp, hit[0], hit[1])

    def preimage(self, m: Monomial) -> Monomial:
        ext, ctx, p = self.ext, self.ext.ctx, self.ext.p
        k_new = tuple(int(x) for x in (self._CT_inv @ np.array(m.exps, dtype=np.int64)) % p)
        image = self.apply(Monomial(0, FactoredElement.one(ctx.field), k_new))
        if image.exps != tuple(int(x) % p for x in m.exps):
            raise InvariantViolation("radical exponents of sigma~ preimage do not match")
        coeff = sigma(m.coeff / image.coeff, ctx, power=-1)
        y = Monomial(m.zeta_exp, coeff, k_new)
        if self.apply(y).value_key(ctx) != normalize(m, ext).value_key(ctx):
            raise InvariantViolation("sigma~ preimage does not map back")
        return y


def _zeta_log(c: FactoredElement, ctx: GaloisContext) -> int:
    if not c.is_constant():
        raise InvariantViolation(f"expected a root of unity, found {c}")
    z = ctx.field.one
    for j in range(ctx.p):
        if z == c.unit:
            return j
        z = z * ctx.zeta_p
    raise InvariantViolation(f"{c.unit} is not a p-th root of unity")


def sigma_on_N(tau: GaloisAutomorphism, ext: RadicalExtension, lift: LiftData | FormalLift) -> GaloisAutomorphism:
    """sigma(tau) := sigma~ tau sigma~^-1, evaluated on each radical r_i."""
    fl = lift if isinstance(lift, FormalLift) else FormalLift(ext, lift)
    ctx = ext.ctx
    out = []
    for i, y in enumerate(fl.preimages):
        w = fl.apply(apply_tau(tau, y))
        if w.exps != fl.radical_exps[i]:
            raise InvariantViolation("conjugate of tau does not fix the radical line")
        out.append(w.zeta_exp + _zeta_log(w.coeff, ctx))
    return GaloisAutomorphism(tuple(out), ext.p)


def sigma_on_N_dual(tau: GaloisAutomorphism, ext: RadicalExtension) -> GaloisAutomorphism:
    """Same action through the pairing: component i is <tau, sigma^-1 [b_i]>."""
    ctx = ext.ctx
    out = []
    for b in ext.basis:
        out.append(kummer_pairing(tau, class_of(sigma(b, ctx, power=-1), ctx), ext))
    return GaloisAutomorphism(tuple(out), ext.p)


def galois_x_matrix(ext: RadicalExtension, lift: LiftData | FormalLift) -> np.ndarray:
    """Matrix of x = sigma - 1 on N_B in the basis e_1..e_n (column j = x e_j)."""
    n, p = ext.n, ext.p
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    fl = lift if isinstance(lift, FormalLift) else FormalLift(ext, lift)
    cols = [sigma_on_N(GaloisAutomorphism.basis(j, n, p), ext, fl).vector() for j in range(n)]
    return (np.column_stack(cols) - np.eye(n, dtype=np.int64)) % p


def galois_module(ext: RadicalExtension, lift: LiftData | FormalLift) -> ModulePresentation:
    X = galois_x_matrix(ext, lift)
    return ModulePresentation(X, ext.p, ext.ctx.q, tuple(f"e{j + 1}" for j in range(ext.n)))


# -- pairing -------------------------------------------------------------------------

def kummer_pairing(tau: GaloisAutomorphism, c: KummerClass, ext: RadicalExtension) -> int:
    """<tau, [c]> as the exponent of zeta_p in tau(c^(1/p)) / c^(1/p)."""
    coeffs = ext.coordinates(c)
    if len(tau.tau) != ext.n:
        raise DomainError("automorphism does not belong to this extension")
    return int(sum(int(a) * t for a, t in zip(coeffs, tau.tau)) % ext.p)


def pairing_matrix(ext: RadicalExtension) -> np.ndarray:
    """P[j, i] = <e_j, [b_i]>."""
    n, p = ext.n, ext.p
    P = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        tau = GaloisAutomorphism.basis(j, n, p)
        for i, c in enumerate(ext.basis_classes):
            P[j, i] = kummer_pairing(tau, c, ext)
    return P


def verify_pairing_equivariance(ext: RadicalExtension, lift: LiftData | FormalLift) -> CheckResult:
    """<sigma tau, sigma [b]> = <tau, [b]> for every basis automorphism and basis class."""
    fl = lift if isinstance(lift, FormalLift) else FormalLift(ext, lift)
    ctx, n, p = ext.ctx, ext.n, ext.p
    sigma_classes = [class_of(sigma(b, ctx), ctx) for b in ext.basis]
    for j in range(n):
        tau = GaloisAutomorphism.basis(j, n, p)
        st = sigma_on_N(tau, ext, fl)
        for i, sc in enumerate(sigma_classes):
            if kummer_pairing(st, sc, ext) != kummer_pairing(tau, ext.basis_classes[i], ext):
                return CheckResult("pairing_equivariance", False, {"tau": j, "class": i}, f"{n * n} basis pairs")
    return CheckResult("pairing_equivariance", True, None, f"{n * n} basis pairs")


# -- rho map -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RhoMap:
    """The A-homomorphism A -> N_a with rho(1) = (0, ..., 0, 1)."""

    ext: RadicalExtension
    s: int
    images: tuple[GaloisAutomorphism, ...]   # rho(x^k) for k = 0..q

    def __call__(self, a: GroupAlgebraElement) -> GaloisAutomorphism:
        out = GaloisAutomorphism.identity(self.ext.n, self.ext.p)
        for k, c in enumerate(a.coeffs):
            if c:
                out = out + self.images[k].scale(c)
        return out

    def kernel_exponent(self) -> int:
        """Least m with rho(x^m) = id; the kernel is then <x^m>."""
        for m, img in enumerate(self.images):
            if img.is_identity():
                return m
        return len(self.images)


def rho_map(a: FactoredElement | KummerClass, ctx: GaloisContext) -> RhoMap:
    c = a if isinstance(a, KummerClass) else class_of(a, ctx)
    s = annihilator_exponent(c, ctx)
    if s == 0:
        raise DomainError("rho is only defined for a nontrivial class")
    ext = cyclic_extension(c, ctx)
    if ext.n != s:
        raise InvariantViolation(f"cyclic module of [a] has dimension {ext.n}, expected {s}")
    fl = FormalLift(ext, compute_lift(ext))
    img = GaloisAutomorphism.basis(s - 1, s, ctx.p)
    images = [img]
    for _ in range(ctx.q):
        # rho(x^(n+1)) = sigma~ rho(x^n) sigma~^-1 composed with rho(x^n)^-1
        img = sigma_on_N(img, ext, fl) - img
        images.append(img)
    return RhoMap(ext, s, tuple(images))


def last_component_violations(rho: RhoMap) -> list[dict]:
    """Steps k < s-1 where the last-nonzero-component relation m_(i-1) = -n_i fails."""
    p = rho.ext.p
    bad = []
    for k in range(rho.s - 1):
        cur, nxt = rho.images[k].tau, rho.images[k + 1].tau
        nz = [i for i, v in enumerate(cur) if v]
        if not nz or nz[-1] == 0:
            continue
        i = nz[-1]
        if nxt[i - 1] != (-cur[i]) % p:
            bad.append({"k": k, "index": i, "rho_k": list(cur), "rho_k+1": list(nxt)})
    return bad


# -- N[1] and N_{B[1]} ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SummandSplit:
    split_index: int
    n1: np.ndarray          # columns spanning N[1] = Gal(E_B / E_B[1])
    nb1: np.ndarray         # columns spanning the complement fixing the B_1 radicals
    n1_type: JordanType
    nb1_type: JordanType
    summand_length: int
    n1_stable: bool
    nb1_stable: bool
    intersection_dim: int

    @property
    def ok(self) -> bool:
        n = self.n1.shape[0]
        return (self.n1_stable and self.nb1_stable and self.intersection_dim == 0
                and self.n1.shape[1] + self.nb1.shape[1] == n
                and self.n1_type == (self.summand_length,))


def _restricted_type(XN: np.ndarray, U: np.ndarray, p: int) -> tuple[bool, JordanType]:
    if U.shape[1] == 0:
        return True, ()
    image = (XN @ U) % p
    try:
        R = linalg.solve(U, image, p)
    except DomainError:
        return False, ()
    return True, jordan_type_of_matrix(R, p)


def n1_submodule(ext: RadicalExtension, split_index: int, XN: np.ndarray | None = None,
                 lift: LiftData | None = None) -> SummandSplit:
    """N[1] = {tau : <tau, B[1]> = 0} for B_1 the chosen cyclic summand."""
    if not 0 <= split_index < len(ext.chains):
        raise DomainError(f"no cyclic summand with index {split_index}")
    p, n = ext.p, ext.n
    if XN is None:
        XN = galois_x_matrix(ext, lift if lift is not None else compute_lift(ext))
    start, length = ext.chains[split_index]
    b1 = list(range(start, start + length))
    rest = [i for i in range(n) if i not in b1]
    P = pairing_matrix(ext)
    n1 = linalg.nullspace(P[:, rest].T, p) if rest else np.eye(n, dtype=np.int64)
    nb1 = linalg.nullspace(P[:, b1].T, p)
    s1, t1 = _restricted_type(XN, n1, p)
    s2, t2 = _restricted_type(XN, nb1, p)
    inter = linalg.intersection_dim(n1, nb1, p) if n1.shape[1] and nb1.shape[1] else 0
    return SummandSplit(split_index, n1, nb1, t1, t2, length, s1, s2, inter)


# -- end-to-end verification ------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.detail:
            d["detail"] = self.detail
        if not self.passed and self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    instance: dict
    basis: list[str]
    jordan_type_module: JordanType
    jordan_type_galois: JordanType
    checks: list[CheckResult]
    seed: int
    notes: list[str] = field(default_factory=list)
    x_matrix: list[list[int]] = field(default_factory=list)
    summands: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _twists(n: int, p: int, rng: random.Random) -> list[tuple[int, ...]]:
    if n == 0:
        return []
    if p**n <= EXHAUSTIVE_TWIST_LIMIT:
        return [t for t in itertools.product(range(p), repeat=n) if any(t)]
    out = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    out.append((1,) * n)
    out.extend(tuple(rng.randrange(p) for _ in range(n)) for _ in range(4))
    return out


def _random_pth_power(ext: RadicalExtension, rng: random.Random) -> FactoredElement:
    k = ext.ctx.field
    w = FactoredElement.constant(k.element(rng.randrange(1, k.order)))
    for f in ext.space.irreducibles:
        e = rng.randrange(-2, 3)
        if e:
            w = w * FactoredElement(k.one, [(f, e)])
    return w ** ext.p


def verify_relative_kummer(generators: Sequence[FactoredElement], ctx: GaloisContext, seed: int = 0,
                           instance: dict | None = None) -> VerificationReport:
    rng = random.Random(seed)
    p, q = ctx.p, ctx.q
    checks: list[CheckResult] = []

    ext, lift = build_extension(generators, ctx)
    n = ext.n
    M = ext.module
    checks.append(CheckResult("lift_identity", verify_lift(ext, lift),
                              detail=f"sigma(b_i) = prod b_j^c_ij * e_i^p for {n} basis elements"))

    fl = FormalLift(ext, lift)
    XN = galois_x_matrix(ext, fl)

    # lift independence
    bad = None
    twists = _twists(n, p, rng)
    for tw in twists:
        other = lift.twisted(tw, ctx)
        if not verify_lift(ext, other):
            bad = {"twist": list(tw), "reason": "twisted lift fails identity"}
            break
        if not np.array_equal(galois_x_matrix(ext, other), XN):
            bad = {"twist": list(tw)}
            break
    checks.append(CheckResult("lift_independence", bad is None, bad, f"{len(twists)} twisted lifts"))

    # pairing: non-degeneracy, bilinearity, representative independence
    P = pairing_matrix(ext)
    nondeg = np.array_equal(P, np.eye(n, dtype=np.int64)) and linalg.rank(P, p) == n
    checks.append(CheckResult("pairing_nondegenerate", nondeg, None if nondeg else P.tolist()))

    bad = None
    for i, b in enumerate(ext.basis):
        shifted = class_of(b * _random_pth_power(ext, rng), ctx)
        for j in range(n):
            tau = GaloisAutomorphism.basis(j, n, p)
            if kummer_pairing(tau, shifted, ext) != kummer_pairing(tau, ext.basis_classes[i], ext):
                bad = {"class": i, "tau": j}
                break
        if bad:
            break
    for _ in range(8 if n else 0):
        t1 = GaloisAutomorphism(tuple(rng.randrange(p) for _ in range(n)), p)
        t2 = GaloisAutomorphism(tuple(rng.randrange(p) for _ in range(n)), p)
        a1 = [rng.randrange(p) for _ in range(n)]
        a2 = [rng.randrange(p) for _ in range(n)]
        c1 = ext.space.element(ext.vectors @ np.array(a1) % p)
        c2 = ext.space.element(ext.vectors @ np.array(a2) % p)
        c12 = class_of(c1.representative * c2.representative, ctx)
        lhs = kummer_pairing(t1 + t2, c1, ext)
        rhs = (kummer_pairing(t1, c1, ext) + kummer_pairing(t2, c1, ext)) % p
        lhs2 = kummer_pairing(t1, c12, ext)
        rhs2 = (kummer_pairing(t1, c1, ext) + kummer_pairing(t1, c2, ext)) % p
        if lhs != rhs or lhs2 != rhs2:
            bad = {"tau": list(t1.tau), "tau2": list(t2.tau), "a1": a1, "a2": a2}
            break
    checks.append(CheckResult("pairing_well_defined", bad is None, bad,
                              "representative independence and bilinearity"))

    checks.append(verify_pairing_equivariance(ext, fl))

    # conjugation vs. dual formula
    bad = None
    for j in range(n):
        tau = GaloisAutomorphism.basis(j, n, p)
        a, b = sigma_on_N(tau, ext, fl), sigma_on_N_dual(tau, ext)
        if a != b:
            bad = {"tau": j, "conjugation": list(a.tau), "dual": list(b.tau)}
            break
    checks.append(CheckResult("conjugation_matches_dual", bad is None, bad))

    NB = ModulePresentation(XN, p, q, tuple(f"e{j + 1}" for j in range(n)))
    type_B = jordan_type(M)
    type_N = jordan_type(NB)
    checks.append(CheckResult("jordan_type_match", type_B == type_N,
                              {"module": list(type_B), "galois": list(type_N)}))

    # rho per cyclic summand
    bad_kernel, bad_comp, summands = None, None, []
    for idx, (start, length) in enumerate(ext.chains):
        gen = ext.basis_classes[start]
        s = annihilator_exponent(gen, ctx)
        rho = rho_map(gen, ctx)
        kernel_ok = (s == length and all(not rho.images[k].is_identity() for k in range(s))
                     and rho.images[s].is_identity())
        comp = last_component_violations(rho)
        summands.append({"generator": str(gen.representative), "s": s, "dimension": length,
                         "rho": [list(rho.images[k].tau) for k in range(s + 1)]})
        if not kernel_ok and bad_kernel is None:
            bad_kernel = summands[-1]
        if comp and bad_comp is None:
            bad_comp = {"summand": idx, "violations": comp}
    checks.append(CheckResult("rho_kernel", bad_kernel is None, bad_kernel,
                              f"{len(ext.chains)} cyclic summands"))
    checks.append(CheckResult("rho_last_component", bad_comp is None, bad_comp))

    # N_B = N[1] + N_B[1] for each choice of B_1
    bad = None
    for idx in range(len(ext.chains)):
        split = n1_submodule(ext, idx, XN)
        if not split.ok:
            bad = {"split_index": idx, "dim_n1": int(split.n1.shape[1]), "dim_nb1": int(split.nb1.shape[1]),
                   "n1_type": list(split.n1_type), "intersection": split.intersection_dim,
                   "n1_stable": split.n1_stable, "nb1_stable": split.nb1_stable}
            break
    checks.append(CheckResult("n1_decomposition", bad is None, bad, f"{len(ext.chains)} splits"))

    # second route through the twisted dual
    D = dual_module(M)
    dual_ok = jordan_type(D) == type_N and np.array_equal(D.X, XN)
    checks.append(CheckResult("dual_path", dual_ok, None if dual_ok else
                              {"dual_type": list(jordan_type(D)), "galois": list(type_N)}))

    return VerificationReport(
        instance=instance or {},
        basis=[str(b) for b in ext.basis],
        jordan_type_module=type_B,
        jordan_type_galois=type_N,
        checks=checks,
        seed=seed,
        notes=list(ext.notes),
        x_matrix=M.X.tolist(),
        summands=summands,
    )
