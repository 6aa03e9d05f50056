"""Acceptance criteria C1-C7, one test (and one summary line) each.

C1, C2, C3, C5 and the second half of C7 share one corpus of 250 seeded
random instances, built once per module.
"""

import random
import time

import numpy as np
import pytest

from relkummer import oracles
from relkummer.campaign import CampaignConfig, run_campaign
from relkummer.expr import parse_ratfunc
from relkummer.ffield import GF
from relkummer.fpgmod import ModulePresentation, dual_module, jordan_type
from relkummer.kummer import verify_relative_kummer
from relkummer.polyarith import Polynomial, factor
from relkummer.ratfield import GaloisContext

CONFIGS = [(2, 1, "GF(3)"), (2, 2, "GF(5)"), (3, 1, "GF(7)"), (3, 2, "GF(19)"), (5, 1, "GF(11)")]
PER_CONFIG = 50
C1_LIMIT = 60.0
C4_LIMIT = 30.0
C4_MIN_MATRICES = 100
C7_INPUTS = 1000
C7_MAX_DEGREE = 12
C7_MAX_FIELD = 49


@pytest.fixture(scope="module")
def corpus():
    start = time.perf_counter()
    reports = []
    for p, l, field in CONFIGS:
        config = CampaignConfig(PER_CONFIG, p, l, field, max_gens=3, max_deg=5, seed=2024)
        reports.extend(run_campaign(config))
    return reports, time.perf_counter() - start


def test_c1_types_agree_on_random_corpus(corpus, record_criterion):
    reports, elapsed = corpus
    passed = sum(r.verdict and r.jordan_type_module == r.jordan_type_galois for r in reports)
    total = len(CONFIGS) * PER_CONFIG
    ok = len(reports) == total and passed == total and elapsed < C1_LIMIT
    record_criterion("C1", ok, f"module and Galois types agree: {passed}/{total} instances verified in {elapsed:.1f}s "
                               f"(limit {C1_LIMIT:.0f}s)")
    assert len(reports) == total and passed == total
    assert elapsed < C1_LIMIT


def test_c2_equivariance(corpus, record_criterion):
    reports, _ = corpus
    failures = [r.instance["label"] for r in reports
                if not (r.check("pairing_equivariance").passed and r.check("conjugation_matches_dual").passed)]
    pairs = sum(len(r.basis) ** 2 for r in reports)
    record_criterion("C2", not failures, f"equivariance: {pairs} basis pairs, {len(failures)} counterexamples")
    assert not failures


def _rho_ok(summand, p):
    """Kernel <x^s> and the last-component relation, recomputed from the stored rho images."""
    s, images = summand["s"], summand["rho"]
    if len(images) != s + 1 or any(not any(v) for v in images[:s]) or any(images[s]):
        return False
    for k in range(s - 1):
        cur, nxt = images[k], images[k + 1]
        nz = [i for i, v in enumerate(cur) if v]
        if nz and nz[-1] > 0 and nxt[nz[-1] - 1] != (-cur[nz[-1]]) % p:
            return False
    return True


def test_c3_rho_kernel(corpus, record_criterion):
    reports, _ = corpus
    summands = bad = 0
    for r in reports:
        p = r.instance["p"]
        flags = r.check("rho_kernel").passed and r.check("rho_last_component").passed
        for s in r.summands:
            summands += 1
            bad += not (flags and _rho_ok(s, p))
    record_criterion("C3", bad == 0 and summands > 0, f"rho kernel: {summands} cyclic generators, {bad} failures")
    assert summands > 0 and bad == 0


def _c4_corpus(rng):
    out = []
    for p in (2, 3):
        for q in (p, p * p):
            for n in range(1, 5):
                for parts in _partitions(n, min(n, q)):
                    X = oracles.block_matrix(parts)
                    out.append((p, q, parts, X))
                    made = 0
                    while made < 3:
                        P = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
                        Y = oracles.conjugate(X, P, p)
                        if Y is not None:
                            out.append((p, q, parts, Y))
                            made += 1
    return out


def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def test_c4_duality_oracle(record_criterion):
    start = time.perf_counter()
    cases = _c4_corpus(random.Random(4))
    singles = {(p, q, parts) for p, q, parts, _ in cases if len(parts) == 1}
    expected_singles = {(p, q, (d,)) for p in (2, 3) for q in (p, p * p) for d in range(1, min(4, q) + 1)}
    mismatches = 0
    for p, q, parts, X in cases:
        brute = oracles.twisted_dual_type(X, p)
        M = ModulePresentation(np.array(X, dtype=np.int64), p, q)
        mismatches += not (brute == jordan_type(dual_module(M)) == jordan_type(M) == parts)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and len(cases) >= C4_MIN_MATRICES and singles == expected_singles and elapsed < C4_LIMIT
    record_criterion("C4", ok, f"duality oracle: {len(cases)} matrices (dim <= 4, {len(singles)} single blocks), "
                               f"{mismatches} mismatches in {elapsed:.1f}s (limit {C4_LIMIT:.0f}s)")
    assert len(cases) >= C4_MIN_MATRICES and singles == expected_singles
    assert mismatches == 0
    assert elapsed < C4_LIMIT


def test_c5_decomposition(corpus, record_criterion):
    reports, _ = corpus
    multi = [r for r in reports if len(r.summands) >= 2]
    splits = sum(len(r.summands) for r in multi)
    bad = [r.instance["label"] for r in multi if not r.check("n1_decomposition").passed]
    record_criterion("C5", multi and not bad,
                     f"decomposition: {len(multi)} multi-summand instances, {splits} splits, {len(bad)} failures")
    assert multi and not bad


FIXED = [
    ((2, 2, 5), "t", (1, {0: 1}), (2,)),
    ((3, 1, 7), "t", (1, {0: 1}), (2,)),
    ((2, 2, 5), "2", (2, {}), (1,)),
]


def test_c6_fixed_points(record_criterion):
    results = []
    for (p, l, r), text, split, expected in FIXED:
        ctx = GaloisContext.create(p, l, GF(r))
        rep = verify_relative_kummer([parse_ratfunc(text, ctx)], ctx)
        brute = oracles.SplitKummer(r, p, l).jordan_type([split])
        results.append(rep.verdict and rep.jordan_type_module == rep.jordan_type_galois == brute == expected)
    record_criterion("C6", all(results), f"fixed points: {sum(results)}/{len(FIXED)} match the hand values")
    assert all(results)


# -- C7: factorization round-trip with certified irreducible inputs ----------------------

C7_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1),
             (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5), (37, 1), (41, 1), (43, 1), (47, 1), (7, 2)]


def _max_irreducible_degree(order):
    # trial division cost is about order^(d/2)
    d = 1
    while d < C7_MAX_DEGREE and order ** ((d + 1) // 2) <= 729:
        d += 1
    return d


def _irreducible_by_trial(g):
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


class _IrreduciblePool:
    def __init__(self, rng, size=10):
        self.rng, self.size, self.pool = rng, size, {}

    def get(self, k, d):
        key = (k.r, k.m, d)
        if key not in self.pool:
            found = set()
            tries = 0
            while len(found) < self.size and tries < 40 * d * self.size:
                tries += 1
                g = Polynomial(k, [self.rng.randrange(k.order) for _ in range(d)] + [1])
                if _irreducible_by_trial(g):
                    found.add(g)
            self.pool[key] = sorted(found, key=lambda f: f.sort_key())
        return self.rng.choice(self.pool[key])


def _random_factored(k, rng, pool):
    total = rng.randint(1, C7_MAX_DEGREE)
    dmax = _max_irreducible_degree(k.order)
    parts = {}
    left = total
    while left:
        d = rng.randint(1, min(left, dmax))
        g = pool.get(k, d)
        e = rng.randint(1, left // d)
        parts[g] = parts.get(g, 0) + e
        left -= d * e
    unit = k.element(rng.randrange(1, k.order))
    f = Polynomial(k, (unit.code,))
    for g, e in parts.items():
        f = f * g**e
    return unit, tuple(sorted(parts.items(), key=lambda ge: ge[0].sort_key())), f


def test_c7_infrastructure(corpus, record_criterion):
    reports, _ = corpus
    rng = random.Random(7)
    pool = _IrreduciblePool(rng)
    fields = [GF(r, m) for r, m in C7_FIELDS]
    assert all(k.order <= C7_MAX_FIELD for k in fields)
    mismatches = 0
    max_deg = 0
    for i in range(C7_INPUTS):
        k = fields[i % len(fields)]
        unit, expected, f = _random_factored(k, rng, pool)
        max_deg = max(max_deg, f.degree)
        got = factor(f, seed=i)
        mismatches += not (got.unit == unit and got.factors == expected and got.expand() == f)
    lift_bad = [r.instance["label"] for r in reports if not r.check("lift_independence").passed]
    ok = mismatches == 0 and not lift_bad and max_deg <= C7_MAX_DEGREE
    record_criterion("C7", ok, f"infrastructure: {C7_INPUTS} factorization round-trips (degree <= {max_deg}), "
                               f"{mismatches} mismatches; lift independence failed on {len(lift_bad)}/{len(reports)}")
    assert mismatches == 0 and max_deg <= C7_MAX_DEGREE
    assert not lift_bad
