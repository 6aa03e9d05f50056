"""The brute-force references against values worked out by hand."""

import pytest

from relkummer import oracles


def test_kernel_sizes_to_type():
    # x on F_2^3 with one 2-block and one 1-block: |ker x| = 4, |ker x^2| = 8
    assert oracles.type_from_kernel_sizes([1, 4, 8], 2) == (2, 1)
    assert oracles.type_from_kernel_sizes([1, 3, 9, 27], 3) == (3,)


def test_matrix_types():
    assert oracles.matrix_type(((0, 0), (0, 0)), 2) == (1, 1)
    assert oracles.matrix_type(oracles.block_matrix((3, 1)), 3) == (3, 1)
    with pytest.raises(ValueError):
        oracles.matrix_type(((1,),), 2)


def test_inverse_and_conjugate():
    P = ((1, 1), (0, 1))
    assert oracles.inverse_by_search(P, 3) == ((1, 2), (0, 1))
    assert oracles.inverse_by_search(((1, 1), (1, 1)), 2) is None
    assert oracles.conjugate(oracles.block_matrix((2,)), P, 3) is not None


def test_twisted_dual_of_single_block():
    assert oracles.twisted_dual_type(oracles.block_matrix((2,)), 2) == (2,)
    assert oracles.twisted_dual_type(oracles.block_matrix((2, 1)), 3) == (2, 1)


@pytest.mark.parametrize("r,p,l,gens,expected", [
    (5, 2, 2, [(1, {0: 1})], (2,)),
    (7, 3, 1, [(1, {0: 1})], (2,)),
    (5, 2, 2, [(2, {})], (1,)),
    (5, 2, 2, [(4, {})], ()),
    (7, 3, 1, [(1, {0: 1}), (1, {6: 1})], (3, 2)),
    (5, 2, 2, [(1, {0: 1}), (1, {4: 1})], (4, 2)),
])
def test_split_kummer_hand_values(r, p, l, gens, expected):
    assert oracles.SplitKummer(r, p, l).jordan_type(gens) == expected


def test_split_kummer_sigma_of_t():
    K = oracles.SplitKummer(5, 2, 2)
    t = K.cls(1, {0: 1})
    # sigma(t) = zeta * t, so x[t] is the class of the constant zeta (a non-square mod 5)
    assert K.x(t) == K.cls(K.zeta, {})
    assert K.x(K.x(t)) == K.cls(1, {})
