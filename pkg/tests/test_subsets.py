from __future__ import annotations

import itertools
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slashhom.errors import AmbientMismatch, DegreeUnderflow, GroundSetTooLarge
from slashhom.gf_linalg import FpMatrix
from slashhom.subsets import (
    KSubset,
    OmegaBasis,
    OmegaVector,
    Permutation,
    a_step_boundary,
    act,
    boundary,
    boundary_matrix,
    boundary_power,
    colex_rank,
    colex_unrank,
    complement_permutation,
    complement_vector,
    disjoint_product,
    elements_of,
    mask_of,
    partial_boundary,
    partial_coboundary,
    xchange_chain,
    xchange_coefficients,
    xchange_term_coefficients,
)


def vec(n, k, p, *subsets, coeffs=None):
    coeffs = coeffs or [1] * len(subsets)
    return OmegaVector.from_terms(n, k, p, {mask_of(s): c for s, c in zip(subsets, coeffs)})


@st.composite
def omega_vectors(draw, n_max=7, primes=(2, 3, 5, 7)):
    n = draw(st.integers(1, n_max))
    k = draw(st.integers(0, n))
    p = draw(st.sampled_from(primes))
    basis = OmegaBasis(n, k)
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=len(basis), max_size=len(basis)))
    return OmegaVector(basis, p, coeffs)


# --- ranking -----------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(0, 11))
def test_colex_roundtrip(n):
    for k in range(n + 1):
        basis = OmegaBasis(n, k)
        assert len(basis) == comb(n, k)
        for r, mask in enumerate(basis.masks):
            assert colex_rank(mask) == r
            assert colex_unrank(r, k) == mask


def test_colex_rank_formula():
    # rank(w) = sum_j C(w(j) - 1, j) with 1-based j over the sorted elements
    for elems in itertools.combinations(range(1, 9), 3):
        assert colex_rank(mask_of(elems)) == sum(comb(e - 1, j) for j, e in enumerate(elems, start=1))


def test_ksubset_basics():
    s = KSubset.of([1, 3], 5)
    assert s.k == 2 and s.elements == (1, 3) and 3 in s and 2 not in s
    assert s.complement().elements == (2, 4, 5)
    with pytest.raises(ValueError):
        KSubset.of([0, 2], 5)
    with pytest.raises(GroundSetTooLarge):
        OmegaBasis(64, 1)


# --- boundary maps -------------------------------------------------------------------------


def test_phi_on_small_subsets():
    assert boundary(vec(2, 2, 3, (1, 2))) == vec(2, 1, 3, (1,), (2,))
    for n in (1, 4, 9):
        assert boundary(vec(n, 1, 5, (1,))) == OmegaVector.from_terms(n, 0, 5, {0: 1})


def test_phi_cubed_vanishes_n5_p3():
    prod = boundary_matrix(5, 1, 3) @ boundary_matrix(5, 2, 3) @ boundary_matrix(5, 3, 3)
    assert prod.is_zero()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_phi_p_vanishes(p):
    for n in range(0, 13):
        for k in range(p, n + 1):
            m = boundary_matrix(n, k - p + 1, p)
            for j in range(k - p + 2, k + 1):
                m = m @ boundary_matrix(n, j, p)
            assert m.is_zero(), (n, k, p)


def test_divided_power_example():
    x = vec(3, 3, 5, (1, 2, 3))
    assert boundary(x, 2) == vec(3, 1, 5, (1,), (2,), (3,))
    assert a_step_boundary(3, 3, 2, 5).scale(2) == boundary_matrix(3, 2, 5) @ boundary_matrix(3, 3, 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_factorial_divided_power(p):
    n = 8
    for k in range(n + 1):
        m = FpMatrix.identity(comb(n, k), p)
        for a in range(1, min(p - 1, k) + 1):
            m = boundary_matrix(n, k - a + 1, p) @ m
            assert a_step_boundary(n, k, a, p).scale(factorial(a)) == m
            assert boundary_power(n, k, a, p) == m


def test_divided_power_survives_past_p():
    assert boundary_power(6, 4, 3, 3).is_zero()
    assert not a_step_boundary(6, 4, 3, 3).is_zero()
    assert a_step_boundary(6, 4, 0, 3) == FpMatrix.identity(comb(6, 4), 3)


def test_boundary_below_zero_rejected():
    with pytest.raises(DegreeUnderflow):
        boundary_matrix(4, -1, 3)
    with pytest.raises(DegreeUnderflow):
        boundary(vec(3, 0, 3, ()))


def test_partial_maps():
    x = vec(5, 2, 5, (1, 2), (2, 4))
    assert partial_boundary(x, [3, 5]).is_zero()
    assert partial_coboundary(x, []).is_zero()
    assert partial_coboundary(vec(3, 1, 5, (1,)), [1, 2, 3]) == vec(3, 2, 5, (1, 2), (1, 3))


@settings(max_examples=60, deadline=None)
@given(omega_vectors(), st.data())
def test_phi_full_index_set_is_phi(x, data):
    if x.k == 0:
        return
    assert partial_boundary(x, range(1, x.n + 1)) == boundary(x)
    subset = data.draw(st.sets(st.integers(1, x.n)))
    rest = set(range(1, x.n + 1)) - subset
    assert partial_boundary(x, subset) + partial_boundary(x, rest) == boundary(x)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.data())
def test_split_images_disjoint_for_basis_vectors(n, data):
    k = data.draw(st.integers(1, n))
    mask = data.draw(st.sampled_from(OmegaBasis(n, k).masks))
    x = OmegaVector.from_terms(n, k, 5, {mask: 1})
    subset = data.draw(st.sets(st.integers(1, n)))
    rest = set(range(1, n + 1)) - subset
    a = set(partial_boundary(x, subset).terms())
    b = set(partial_boundary(x, rest).terms())
    assert not a & b


def test_curved_identity_example():
    # I = [n], h = k: (y) delta phi = (y) phi delta - (2k - n) y
    rng = np.random.default_rng(5)
    n, k, p = 6, 2, 5
    y = OmegaVector(OmegaBasis(n, k), p, rng.integers(0, p, comb(n, k)))
    full = range(1, n + 1)
    lhs = boundary(partial_coboundary(y, full))
    rhs = partial_coboundary(boundary(y), full) - y * (2 * k - n)
    assert lhs == rhs


def test_disjoint_product():
    assert disjoint_product(vec(3, 2, 3, (1, 2)), vec(3, 1, 3, (3,))) == vec(3, 3, 3, (1, 2, 3))
    assert disjoint_product(vec(3, 2, 3, (1, 2)), vec(3, 1, 3, (2,))).is_zero()
    with pytest.raises(AmbientMismatch):
        disjoint_product(vec(3, 1, 3, (1,)), vec(4, 1, 3, (2,)))


def test_splitting_rule_example():
    rng = np.random.default_rng(8)
    n, p, t = 8, 3, 2
    a_side, b_side = (1, 3, 4, 7), (2, 5, 6, 8)
    v = OmegaVector.from_terms(n, 2, p, {mask_of(s): int(rng.integers(1, p)) for s in itertools.combinations(a_side, 2)})
    w = OmegaVector.from_terms(n, 2, p, {mask_of(s): int(rng.integers(1, p)) for s in itertools.combinations(b_side, 2)})
    lhs = boundary(disjoint_product(v, w), t)
    rhs = OmegaVector(OmegaBasis(n, 2), p)
    for i in range(t + 1):
        rhs = rhs + disjoint_product(boundary(v, i), boundary(w, t - i))
    assert lhs == rhs


# --- symmetric group -------------------------------------------------------------------


def test_permutations():
    x = vec(4, 2, 3, (1, 3), (2, 4), coeffs=[1, 2])
    assert act(x, Permutation.identity(4)) == x
    swap = Permutation.cycle(3, 1, 2)
    assert swap.act_mask(mask_of((1, 3))) == mask_of((2, 3))
    assert swap.sign() == -1 and Permutation.cycle(3, 1, 2, 3).sign() == 1
    g = Permutation([2, 3, 1, 4])
    assert g.then(g.inverse()) == Permutation.identity(4)


@settings(max_examples=60, deadline=None)
@given(omega_vectors(n_max=6), st.data())
def test_phi_is_equivariant(x, data):
    if x.k == 0:
        return
    g = Permutation(data.draw(st.permutations(range(1, x.n + 1))))
    assert boundary(act(x, g)) == act(boundary(x), g)


@pytest.mark.parametrize("n", range(1, 9))
def test_duality_square(n):
    p = 5
    for k in range(n + 1):
        for a in range(0, k + 1):
            if n - k + a > n:
                continue
            src = a_step_boundary(n, k, a, p).array
            dual = a_step_boundary(n, n - k + a, a, p).array
            # phi^(a) on k-subsets, re-indexed by complements, is the transpose of phi^(a) on (n-k+a)-subsets
            perm_k = complement_permutation(n, k)
            perm_ka = complement_permutation(n, k - a)
            assert np.array_equal(dual[np.ix_(perm_k, perm_ka)], src.T)


def test_complement_vector_involution():
    x = vec(5, 2, 3, (1, 2), (3, 5))
    assert complement_vector(complement_vector(x)) == x


# --- exchange coefficients -----------------------------------------------------------------


def test_xchange_coefficients_p3():
    assert xchange_coefficients(3) == (1, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_xchange_chain_closes(p):
    y = xchange_chain(p)
    assert y[p - 1] == 1  # the product of -(p - l)^2 over l is 1 by Wilson's theorem
    assert xchange_coefficients(p)[0] == 1
    assert xchange_term_coefficients(p)[-1] == 1
    assert tuple(reversed(xchange_term_coefficients(p))) == y[: p - 1]


def test_elements_of_roundtrip():
    for mask in range(64):
        assert mask_of(elements_of(mask)) == mask
