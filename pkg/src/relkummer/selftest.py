"""Fixed-size oracle suites run by ``relkummer selftest``.

Each suite compares library output with an independent computation and
counts mismatches.  Library entry points are looked up through their modules
at call time so a patched function is the one exercised.
"""

from __future__ import annotations

import random
import traceback
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ffield, fpgmod, kummer, oracles, polyarith, ratfield
from .ffield import GF, FieldElement
from .polyarith import Polynomial


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{self.name:<24} {self.cases:>5} cases  {self.failures:>3} failures  {status}"
        return text + (f"  ({self.detail})" if self.detail else "")


def suite_dlog_roundtrip() -> tuple[int, int]:
    rng = random.Random(11)
    cases = fails = 0
    for r, m in [(5, 1), (7, 1), (3, 2), (2, 5), (101, 1), (7, 3), (1009, 1)]:
        k = GF(r, m)
        g = FieldElement(k, k.generator)
        for _ in range(25):
            u = k.element(rng.randrange(1, k.order))
            e = ffield.dlog(u)
            cases += 1
            fails += g**e != u or not 0 <= e < k.unit_group_order
    return cases, fails


def suite_field_character() -> tuple[int, int]:
    """chi is a homomorphism onto F_p whose kernel is exactly the p-th powers."""
    cases = fails = 0
    for r, m, p in [(5, 1, 2), (7, 1, 3), (11, 1, 5), (3, 2, 2), (13, 1, 3), (2, 2, 3)]:
        k = GF(r, m)
        zp = ffield.primitive_root_of_unity(k, p)
        units = [k.element(c) for c in range(1, k.order)]
        powers = {(u**p).code for u in units}
        chi = {u.code: ffield.unit_character(u, p, zp) for u in units}
        for u in units:
            cases += 1
            fails += (chi[u.code] == 0) != (u.code in powers)
            fails += ffield.is_pth_power(u, p) != (u.code in powers)
            v = units[(u.code * 7) % len(units)]
            fails += chi[(u * v).code] != (chi[u.code] + chi[v.code]) % p
        fails += len(set(chi.values())) != p
    return cases, fails


def suite_factorization_roundtrip() -> tuple[int, int]:
    rng = random.Random(5)
    cases = fails = 0
    for r, m in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (7, 1)]:
        k = GF(r, m)
        for _ in range(20):
            f = Polynomial(k, [rng.randrange(k.order) for _ in range(rng.randint(1, 9))] + [rng.randrange(1, k.order)])
            fac = polyarith.factor(f, seed=rng.randrange(100))
            cases += 1
            ok = fac.expand() == f
            ok = ok and all(g.is_monic() and e > 0 and _irreducible_by_trial(g) for g, e in fac.factors)
            ok = ok and len({g for g, _ in fac.factors}) == len(fac.factors)
            fails += not ok
    return cases, fails


def _irreducible_by_trial(g: Polynomial) -> bool:
    """No monic divisor of degree 1..deg/2, by enumerating them all."""
    k = g.field
    for d in range(1, g.degree // 2 + 1):
        for tail in range(k.order**d):
            coeffs = []
            for _ in range(d):
                coeffs.append(tail % k.order)
                tail //= k.order
            if (g % Polynomial(k, coeffs + [1])).is_zero():
                return False
    return True


def _nilpotent_corpus(p: int, q: int, max_dim: int, per_type: int, rng: random.Random):
    """Conjugates of every block matrix with parts <= q and size <= max_dim."""
    out = []
    for n in range(1, max_dim + 1):
        for parts in _partitions(n, min(n, q)):
            X = oracles.block_matrix(parts)
            out.append((parts, X))
            made = 0
            while made < per_type:
                P = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
                Y = oracles.conjugate(X, P, p)
                if Y is not None:
                    out.append((parts, Y))
                    made += 1
    return out


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def suite_dual_enumeration(max_dim: int = 3, per_type: int = 2) -> tuple[int, int]:
    rng = random.Random(3)
    cases = fails = 0
    for p in (2, 3):
        for q in (p, p * p):
            for parts, X in _nilpotent_corpus(p, q, max_dim, per_type, rng):
                M = fpgmod.ModulePresentation(np.array(X, dtype=np.int64), p, q)
                brute = oracles.twisted_dual_type(X, p)
                cases += 1
                fails += not (brute == fpgmod.jordan_type(fpgmod.dual_module(M)) == fpgmod.jordan_type(M) == parts)
    return cases, fails


PAIRING_INSTANCES = [
    (2, 2, 5, ["t"]),
    (3, 1, 7, ["t", "t+1"]),
    (2, 2, 5, ["t", "t+1", "2"]),
    (2, 1, 3, ["t^2+1", "t+2"]),
]


def _instance(p: int, l: int, r: int, gens: list[str]):
    from .expr import parse_ratfunc

    ctx = ratfield.GaloisContext.create(p, l, GF(r))
    return ctx, [parse_ratfunc(g, ctx) for g in gens]


def suite_pairing_properties() -> tuple[int, int]:
    """Bilinearity, non-degeneracy and sigma-equivariance of the pairing."""
    rng = random.Random(9)
    cases = fails = 0
    for p, l, r, gens in PAIRING_INSTANCES:
        ctx, elems = _instance(p, l, r, gens)
        ext, lift = kummer.build_extension(elems, ctx)
        n = ext.n
        fl = kummer.FormalLift(ext, lift)
        P = kummer.pairing_matrix(ext)
        cases += 1
        fails += not np.array_equal(P, np.eye(n, dtype=np.int64))
        for _ in range(10):
            tau = kummer.GaloisAutomorphism(tuple(rng.randrange(p) for _ in range(n)), p)
            a = [rng.randrange(p) for _ in range(n)]
            c = ext.space.element(ext.vectors @ np.array(a) % p)
            cases += 1
            expect = sum(x * y for x, y in zip(tau.tau, a)) % p
            fails += kummer.kummer_pairing(tau, c, ext) != expect
            sc = ratfield.class_of(ratfield.sigma(c.representative, ctx), ctx)
            fails += kummer.kummer_pairing(kummer.sigma_on_N(tau, ext, fl), sc, ext) != expect
    return cases, fails


# (p, l, r, library generators, oracle generators as (constant, {root: exponent}))
FIXED_POINTS = [
    (2, 2, 5, ["t"], [(1, {0: 1})]),
    (3, 1, 7, ["t"], [(1, {0: 1})]),
    (2, 2, 5, ["2"], [(2, {})]),
    (2, 2, 5, ["4"], [(4, {})]),
    (3, 1, 7, ["t", "t+1"], [(1, {0: 1}), (1, {6: 1})]),
    (2, 2, 5, ["t", "t+1"], [(1, {0: 1}), (1, {4: 1})]),
]


def suite_fixed_points() -> tuple[int, int]:
    cases = fails = 0
    for p, l, r, gens, split in FIXED_POINTS:
        ctx, elems = _instance(p, l, r, gens)
        rep = kummer.verify_relative_kummer(elems, ctx)
        want = oracles.SplitKummer(r, p, l).jordan_type(split)
        cases += 1
        fails += not (rep.verdict and rep.jordan_type_module == rep.jordan_type_galois == want)
    return cases, fails


def suite_ideal_structure() -> tuple[int, int]:
    """Every principal ideal aA of A = F_p[x]/(x^q) equals x^v(a) A."""
    cases = fails = 0
    for p, q in [(2, 2), (2, 4), (3, 3), (5, 1)]:
        for coeffs in oracles.vectors(q, p):
            a = fpgmod.GroupAlgebraElement(coeffs, p)
            v = a.valuation()
            ideal = fpgmod.principal_ideal_basis(a)
            brute = {tuple(int(x) for x in (ideal @ np.array(c)) % p) for c in oracles.vectors(q, p)}
            expect = {c for c in oracles.vectors(q, p) if all(c[i] == 0 for i in range(v))}
            cases += 1
            fails += brute != expect
    return cases, fails


SUITES: list[tuple[str, Callable[[], tuple[int, int]]]] = [
    ("dlog_roundtrip", suite_dlog_roundtrip),
    ("field_character", suite_field_character),
    ("factorization_roundtrip", suite_factorization_roundtrip),
    ("dual_enumeration", suite_dual_enumeration),
    ("pairing_properties", suite_pairing_properties),
    ("fixed_points", suite_fixed_points),
    ("ideal_structure", suite_ideal_structure),
]


def run_selftest() -> list[SuiteResult]:
    results = []
    for name, fn in SUITES:
        try:
            cases, fails = fn()
            results.append(SuiteResult(name, cases, fails))
        except Exception as exc:  # a crashing suite is a failing suite
            last = traceback.extract_tb(exc.__traceback__)[-1]
            results.append(SuiteResult(name, 0, 1, f"{type(exc).__name__}: {exc} at {last.name}"))
    return results
