import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relkummer import linalg, oracles
from relkummer.errors import DomainError, InvariantViolation
from relkummer.expr import parse_ratfunc
from relkummer.ffield import GF
from relkummer.fpgmod import (
    GroupAlgebraElement,
    ModulePresentation,
    annihilator_exponent,
    block_module,
    chain_basis,
    cyclic_decompose,
    dual_generator,
    dual_module,
    jordan_type,
    krylov_dimension,
    principal_ideal_basis,
    rank_sequence,
    span_closure,
    standard_cyclic,
)
from relkummer.ratfield import GaloisContext, class_of


def random_invertible(n, p, rng):
    while True:
        P = rng.integers(0, p, (n, n))
        if linalg.rank(P, p) == n:
            return P


@st.composite
def nilpotent_modules(draw, max_dim=8):
    """A block matrix with random parts, conjugated by a random invertible matrix."""
    p = draw(st.sampled_from([2, 3]))
    q = draw(st.sampled_from([p, p * p]))
    n = draw(st.integers(1, max_dim))
    parts, left = [], n
    while left:
        size = draw(st.integers(1, min(q, left)))
        parts.append(size)
        left -= size
    parts.sort(reverse=True)
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    B = block_module(parts, p, q).X
    P = random_invertible(n, p, rng)
    X = (P @ B @ linalg.inverse(P, p)) % p
    return ModulePresentation(X, p, q), tuple(parts)


# -- group algebra --------------------------------------------------------------------

def test_group_algebra_arithmetic():
    x = GroupAlgebraElement.x_power(1, 3, 3)
    assert (x * x * x).is_zero()
    s = GroupAlgebraElement.sigma_power(1, 3, 3)
    assert s.coeffs == (1, 1, 0)
    assert GroupAlgebraElement.sigma_power(3, 3, 3).coeffs == (1, 0, 0)  # sigma^q = 1
    assert GroupAlgebraElement((0, 0, 2), 3).valuation() == 2


@pytest.mark.parametrize("p,q", [(2, 2), (2, 4), (3, 3), (3, 9), (5, 5)])
def test_principal_ideals_are_powers_of_x(p, q):
    rng = np.random.default_rng(p * q)
    for _ in range(30):
        a = GroupAlgebraElement(tuple(int(c) for c in rng.integers(0, p, q)), p)
        if a.is_zero():
            continue
        m = a.valuation()
        ideal = principal_ideal_basis(a)
        xm = principal_ideal_basis(GroupAlgebraElement.x_power(m, p, q))
        assert linalg.rank(ideal, p) == q - m
        assert linalg.rank(np.column_stack([ideal, xm]), p) == q - m


# -- presentations ---------------------------------------------------------------------

def test_presentation_validation():
    with pytest.raises(DomainError):
        ModulePresentation(np.zeros((2, 3)), 2, 2)
    with pytest.raises(InvariantViolation):
        ModulePresentation(np.array([[1]]), 2, 2)
    with pytest.raises(InvariantViolation):
        ModulePresentation(np.zeros((2, 2)), 2, 2, labels=("a", "a"))
    with pytest.raises(InvariantViolation):
        block_module((3,), 2, 2)  # block larger than q


def test_jordan_type_examples():
    assert jordan_type(ModulePresentation(np.zeros((3, 3)), 2, 2)) == (1, 1, 1)
    assert jordan_type(standard_cyclic(4, 2, 4)) == (4,)
    assert jordan_type(standard_cyclic(9, 3, 9)) == (9,)
    with pytest.raises(InvariantViolation):
        rank_sequence(np.eye(2, dtype=np.int64), 2)


@settings(max_examples=80)
@given(nilpotent_modules())
def test_jordan_type_against_enumeration_and_blocks(data):
    M, parts = data
    assert jordan_type(M) == parts
    if M.dim <= 4:
        assert oracles.matrix_type(tuple(map(tuple, M.X.tolist())), M.p) == parts
    # rank sequence of the type's block matrix equals that of X
    assert rank_sequence(block_module(parts, M.p, M.q).X, M.p) == rank_sequence(M.X, M.p)


# -- cyclic decomposition ----------------------------------------------------------------

def test_cyclic_decompose_trivial_cases():
    assert cyclic_decompose(ModulePresentation(np.zeros((0, 0)), 2, 2)) == []
    M = standard_cyclic(3, 3, 3)
    ((g, size),) = cyclic_decompose(M)
    assert size == 3 and krylov_dimension(M.X, g, 3) == 3


@settings(max_examples=80)
@given(nilpotent_modules())
def test_cyclic_decompose_gives_jordan_basis(data):
    M, parts = data
    dec = cyclic_decompose(M)
    assert tuple(size for _, size in dec) == parts
    for g, size in dec:
        assert krylov_dimension(M.X, g, M.p) == size
    C = chain_basis(M, dec)
    assert linalg.rank(C, M.p) == M.dim
    # in the chain basis x acts by the block matrix
    assert np.array_equal(linalg.solve(C, (M.X @ C) % M.p, M.p), block_module(parts, M.p, M.q).X)
    assert cyclic_decompose(M)[0][0].tolist() == dec[0][0].tolist()  # deterministic


def test_cyclic_decompose_six_dim_example():
    rng = np.random.default_rng(6)
    B = block_module((4, 2), 2, 4).X
    P = random_invertible(6, 2, rng)
    M = ModulePresentation((P @ B @ linalg.inverse(P, 2)) % 2, 2, 4)
    dec = cyclic_decompose(M)
    assert linalg.rank(chain_basis(M, dec), 2) == 6
    assert tuple(s for _, s in dec) == jordan_type(M) == (4, 2)


# -- duals -----------------------------------------------------------------------------------

def test_dual_examples():
    Z = ModulePresentation(np.zeros((3, 3)), 3, 3)
    assert not dual_module(Z).X.any()
    D = dual_module(standard_cyclic(2, 2, 2))
    assert D.X.tolist() == [[0, 1], [0, 0]]
    assert jordan_type(D) == (2,)


@settings(max_examples=80)
@given(nilpotent_modules())
def test_self_duality(data):
    M, parts = data
    D = dual_module(M)
    assert jordan_type(D) == jordan_type(dual_module(D)) == parts


@settings(max_examples=60)
@given(nilpotent_modules(max_dim=4))
def test_dual_against_enumeration(data):
    M, parts = data
    X = tuple(map(tuple, M.X.tolist()))
    assert oracles.twisted_dual_type(X, M.p) == jordan_type(dual_module(M)) == parts


@pytest.mark.parametrize("l,p,q", [(1, 2, 2), (2, 2, 2), (4, 2, 4), (3, 3, 3), (9, 3, 9)])
def test_dual_generator_spans_dual(l, p, q):
    M = standard_cyclic(l, p, q)
    f = dual_generator(M)
    assert f[-1] == 1 and not f[:-1].any()
    D = dual_module(M)
    assert krylov_dimension(D.X, f, p) == l
    # y = sigma^-1 - 1 moves f: (y-action on the dual) f is nonzero at g when l >= 2
    if l >= 2:
        S_inv = linalg.inverse(M.sigma_matrix, p)
        y = (S_inv - np.eye(l, dtype=np.int64)) % p
        g = np.zeros(l, dtype=np.int64)
        g[0] = 1
        assert int(f @ (y @ g) % p) != 0


def test_dual_generator_requires_standard_basis():
    with pytest.raises(DomainError):
        dual_generator(block_module((1, 1), 2, 2))


# -- span closure over E^x/E^xp ------------------------------------------------------------------

def test_span_closure_examples():
    ctx = GaloisContext.create(2, 2, GF(5))
    assert span_closure([], ctx).dim == 0
    t = class_of(parse_ratfunc("t", ctx), ctx)
    M = span_closure([t], ctx)
    assert M.dim == 2
    assert [str(c) for c in M.labels] == ["[t]", "[2]"]
    assert M.X.tolist() == [[0, 0], [1, 0]]
    assert jordan_type(M) == (2,)
    M2 = span_closure([t, t], ctx)
    assert M2.X.tolist() == M.X.tolist() and M2.dim == 2


def test_annihilator_exponent_examples():
    c5 = GaloisContext.create(2, 2, GF(5))
    c7 = GaloisContext.create(3, 1, GF(7))
    assert annihilator_exponent(class_of(parse_ratfunc("4", c5), c5), c5) == 0
    assert annihilator_exponent(class_of(parse_ratfunc("t", c5), c5), c5) == 2
    assert annihilator_exponent(class_of(parse_ratfunc("t", c7), c7), c7) == 2


@pytest.mark.parametrize("gens", [["t+1", "t"], ["t", "t+1"], ["t^2+t+3", "t+2", "3"]])
def test_span_closure_is_order_independent(gens):
    ctx = GaloisContext.create(3, 1, GF(7))
    a = [class_of(parse_ratfunc(g, ctx), ctx) for g in gens]
    M1 = span_closure(a, ctx)
    M2 = span_closure(list(reversed(a)), ctx)
    assert M1.dim == M2.dim
    assert M1.space.irreducibles == M2.space.irreducibles
    both = np.column_stack([M1.embedding, M2.embedding])
    assert linalg.rank(both, 3) == M1.dim
