"""Lattices: saturation, kernels, indices, sums, intersections, preimages."""

import random
from fractions import Fraction

import pytest

from symplat.errors import DomainError
from symplat.lattice import (
    Lattice,
    congruence_kernel,
    index,
    kernel_lattice,
    lattice_intersection,
    lattice_sum,
    preimage_lattice,
    saturate,
)
from symplat.matrix import Mat


Z2 = Lattice.standard(2)


def test_saturate_scaled_vector():
    assert saturate([(2, 0)], Z2) == Lattice.from_generators(2, [(1, 0)])


def test_saturate_full_span():
    assert saturate([(1, 0), (0, 1)], Z2) == Z2


def test_saturate_primitive_on_line():
    assert saturate([(2, 4)], Z2) == Lattice.from_generators(2, [(1, 2)])


def test_saturate_outside_span():
    L = Lattice.from_generators(2, [(1, 0)])
    with pytest.raises(DomainError):
        saturate([(0, 1)], L)


@pytest.mark.parametrize("seed", range(20))
def test_saturate_idempotent(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    L = Lattice.standard(n)
    k = rng.randint(0, n)
    vecs = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(k)]
    S1 = saturate(vecs, L)
    S2 = saturate([S1.basis.col(j) for j in range(S1.rank)], L)
    assert S1 == S2


def test_kernel_zero_map():
    assert kernel_lattice(Mat.zero(2, 2), Z2) == Z2


def test_kernel_identity():
    assert kernel_lattice(Mat.identity(2), Z2).rank == 0


def test_kernel_sum_map():
    K = kernel_lattice(Mat([[1, 1]]), Z2)
    assert K == Lattice.from_generators(2, [(1, -1)])


@pytest.mark.parametrize("seed", range(20))
def test_kernel_rank_and_saturation(seed):
    rng = random.Random(300 + seed)
    n = rng.randint(1, 4)
    m = rng.randint(1, 3)
    f = Mat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)], ncols=n)
    L = Lattice.standard(n)
    K = kernel_lattice(f, L)
    assert (f * K.basis).is_zero()
    image_rank = (f * L.basis).rank()
    assert K.rank + image_rank == L.rank
    # saturated: saturation of the kernel span inside L is the kernel itself
    assert saturate([K.basis.col(j) for j in range(K.rank)], L) == K


def test_index_examples():
    assert index(Z2, Z2) == 1
    assert index(Z2.scaled(2), Z2) == 4
    assert index(Lattice.from_generators(2, [(1, 1), (0, 3)]), Z2) == 3


def test_index_errors():
    with pytest.raises(DomainError):
        index(Z2, Z2.scaled(2))  # containment fails
    with pytest.raises(DomainError):
        index(Lattice.from_generators(2, [(1, 0)]), Z2)  # spans differ


@pytest.mark.parametrize("seed", range(15))
def test_index_multiplicative(seed):
    rng = random.Random(400 + seed)
    n = rng.randint(1, 3)
    Lpp = Lattice.standard(n)
    a = rng.randint(1, 4)
    b = rng.randint(1, 4)
    Lp = Lpp.scaled(a)
    L = Lp.scaled(b)
    assert index(L, Lp) * index(Lp, Lpp) == index(L, Lpp)


def test_lattice_membership_and_coords():
    L = Lattice.from_generators(2, [(2, 0), (0, 3)])
    assert L.contains_vector((4, 3))
    assert not L.contains_vector((1, 0))
    assert not L.contains_vector((Fraction(1, 2), 0))


def test_canonical_equality_of_generators():
    L1 = Lattice.from_generators(2, [(2, 1), (1, 1)])
    L2 = Lattice.from_generators(2, [(1, 0), (0, 1)])
    assert L1 == L2  # both generate Z^2


def test_lattice_sum_and_intersection():
    A = Lattice.from_generators(2, [(2, 0)])
    B = Lattice.from_generators(2, [(0, 3)])
    S = lattice_sum(A, B)
    assert S == Lattice.from_generators(2, [(2, 0), (0, 3)])
    even = Lattice.from_generators(2, [(2, 0), (0, 2)])
    odd3 = Lattice.from_generators(2, [(3, 0), (0, 3)])
    meet = lattice_intersection(even, odd3)
    assert meet == Lattice.from_generators(2, [(6, 0), (0, 6)])


def test_rank_zero_lattice():
    Z0 = Lattice.from_generators(3, [])
    assert Z0.rank == 0
    assert Z0.contains_vector((0, 0, 0))
    assert not Z0.contains_vector((1, 0, 0))


def test_congruence_kernel():
    A = Mat([[1, 1]])
    K = congruence_kernel(A, 2)
    L = Lattice(2, K)
    # {(x, y) : x + y even}
    assert L.contains_vector((1, 1))
    assert L.contains_vector((2, 0))
    assert not L.contains_vector((1, 0))
    assert index(L, Z2) == 2


def test_preimage_lattice():
    M = Mat([[2, 0], [0, 3]])
    P = preimage_lattice(M, Z2)
    assert P == Lattice.from_generators(
        2, [(Fraction(1, 2), 0), (0, Fraction(1, 3))]
    )
    with pytest.raises(DomainError):
        preimage_lattice(Mat([[1, 1]]).T * Mat([[1, 1]]), Z2)  # rank 1, not injective


def test_canonical_representative():
    L = Lattice.from_generators(2, [(2, 0), (0, 2)])
    rep = L.canonical_representative((3, -1))
    assert rep == (1, 1)
    assert L.canonical_representative((0, 0)) == (0, 0)
