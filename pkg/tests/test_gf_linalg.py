from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slashhom._kernels import HAVE_NUMBA, rref_inplace
from slashhom.errors import AmbientMismatch, NotASubspace, NotPrimeError
from slashhom.gf_linalg import (
    FpMatrix,
    FpScalar,
    Subspace,
    annihilator,
    column_space,
    contains,
    intersection_dim,
    is_prime,
    mat_mul,
    nullspace,
    quotient_basis,
    quotient_dim,
    rank,
    row_space,
    rref,
    solve,
    subspace_intersection,
    subspace_sum,
)
from slashhom.subsets import boundary_matrix

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_rows=6, max_cols=6, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return FpMatrix(entries, p, shape=(r, c))


def brute_nullspace_size(m: FpMatrix) -> int:
    """Count solutions of m x = 0 by enumerating all of GF(p)^cols."""
    p = m.modulus
    count = 0
    for x in itertools.product(range(p), repeat=m.cols):
        if not m.apply(x).any():
            count += 1
    return count


# --- oracles ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4, primes=[2, 3]))
def test_nullspace_matches_enumeration(m):
    assert m.modulus ** nullspace(m).dim == brute_nullspace_size(m)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4, primes=[2, 3]))
def test_column_space_matches_enumeration(m):
    p = m.modulus
    images = {tuple(m.apply(x)) for x in itertools.product(range(p), repeat=m.cols)}
    assert len(images) == p ** column_space(m).dim


def test_matmul_agrees_with_python_integers():
    rng = np.random.default_rng(3)
    for p in (2, 7, 65521):
        a = rng.integers(0, p, size=(9, 40))
        b = rng.integers(0, p, size=(40, 5))
        want = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(40)) % p for j in range(5)] for i in range(9)]
        assert mat_mul(a, b, p).tolist() == want


# --- spec examples -----------------------------------------------------------------------


def test_rref_empty():
    red, r, piv = rref(FpMatrix([], 5))
    assert r == 0 and piv == ()
    assert red.shape == (0, 0)


def test_rref_identity():
    eye = FpMatrix.identity(3, 5)
    red, r, piv = rref(eye)
    assert red == eye and r == 3 and piv == (0, 1, 2)


def test_rref_dependent_rows():
    red, r, piv = rref(FpMatrix([[1, 2], [2, 4]], 5))
    assert r == 1 and piv == (0,)
    assert red.to_lists() == [[1, 2], [0, 0]]


def test_nullspace_examples():
    assert nullspace(FpMatrix.identity(2, 3)).dim == 0
    assert nullspace(FpMatrix.zeros(2, 3, 3)).dim == 3
    ker = nullspace(boundary_matrix(2, 1, 3))
    assert ker.dim == 1
    v = ker.basis.array[0]
    assert (v[0] + v[1]) % 3 == 0 and v.any()


def test_column_space_examples():
    assert column_space(FpMatrix.zeros(3, 2, 5)).dim == 0
    assert column_space(FpMatrix.identity(3, 5)) == Subspace.full(3, 5)
    line = column_space(FpMatrix([[1], [2]], 5))
    assert line == Subspace.span([[1, 2]], 2, 5)


def test_sum_examples():
    v = Subspace.span([[1, 2, 0]], 3, 5)
    assert subspace_sum(v, Subspace.zero(3, 5)) == v
    assert subspace_sum(Subspace.span([[1, 0]], 2, 3), Subspace.span([[0, 1]], 2, 3)) == Subspace.full(2, 3)
    plane = subspace_sum(Subspace.span([[1, 1, 0]], 3, 5), Subspace.span([[1, 2, 0]], 3, 5))
    assert plane.dim == 2 and plane == Subspace.span([[1, 0, 0], [0, 1, 0]], 3, 5)


def test_intersection_examples():
    v = Subspace.span([[1, 2, 0], [0, 0, 1]], 3, 5)
    assert subspace_intersection(v, v) == v
    e1, e2 = Subspace.span([[1, 0]], 2, 3), Subspace.span([[0, 1]], 2, 3)
    assert subspace_intersection(e1, e2).dim == 0
    x3 = Subspace.span([[1, 0, 0], [0, 1, 0]], 3, 3)
    x1 = Subspace.span([[0, 1, 0], [0, 0, 1]], 3, 3)
    assert subspace_intersection(x3, x1) == Subspace.span([[0, 1, 0]], 3, 3)


def test_quotient_examples():
    plane = Subspace.span([[1, 0, 0], [0, 1, 0]], 3, 3)
    line = Subspace.span([[1, 1, 0]], 3, 3)
    assert quotient_dim(plane, plane) == 0
    assert quotient_dim(Subspace.full(2, 3), Subspace.zero(2, 3)) == 2
    assert quotient_dim(plane, line) == 1
    reps = quotient_basis(plane, line)
    assert reps.rows == 1
    assert subspace_sum(line, Subspace(3, 3, reps)) == plane


def test_modulus_validation():
    with pytest.raises(NotPrimeError):
        FpMatrix([[1]], 4)
    with pytest.raises(NotPrimeError):
        FpMatrix([[1]], 65537)  # prime, but above the 2**16 bound
    assert is_prime(65521) and not is_prime(1) and not is_prime(0)


def test_scalar_field_ops():
    a = FpScalar(3, 7)
    assert (a * a.inverse()).value == 1
    assert (a - 5).value == 5
    with pytest.raises(AmbientMismatch):
        a + FpScalar(1, 5)


def test_solve():
    m = FpMatrix([[1, 2], [3, 4], [0, 1]], 7)
    x = solve(m, m.apply([5, 6]))
    assert x.tolist() == [5, 6]
    with pytest.raises(NotASubspace):
        solve(FpMatrix([[1], [1]], 7), [1, 2])


def test_zero_ambient_subspaces():
    z = nullspace(FpMatrix.zeros(3, 0, 5))
    assert z.dim == 0 and z.ambient_dim == 0
    assert quotient_dim(z, z) == 0


# --- properties ------------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.T)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert nullspace(m).dim + rank(m) == m.cols


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_nullity_boundary_matrices(n, p):
    for k in range(n + 1):
        m = boundary_matrix(n, k, p)
        assert nullspace(m).dim + rank(m) == m.cols


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_idempotent_and_row_space(m):
    red, r, piv = rref(m)
    again, r2, piv2 = rref(red)
    assert again == red and r == r2 and piv == piv2
    assert row_space(m) == row_space(red)


@st.composite
def subspace_pairs(draw):
    p = draw(st.sampled_from(PRIMES))
    d = draw(st.integers(0, 6))

    def one():
        k = draw(st.integers(0, 5))
        rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=k, max_size=k))
        return Subspace.span(rows, d, p)

    return one(), one()


@settings(max_examples=80, deadline=None)
@given(subspace_pairs())
def test_modular_identity(pair):
    a, b = pair
    inter = subspace_intersection(a, b)
    assert a.dim + b.dim == subspace_sum(a, b).dim + inter.dim
    assert inter.dim == intersection_dim(a, b)
    assert contains(a, inter) and contains(b, inter)


@settings(max_examples=80, deadline=None)
@given(subspace_pairs())
def test_sum_is_canonical(pair):
    a, b = pair
    assert subspace_sum(a, b).basis == subspace_sum(b, a).basis


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_annihilator_dimension(pair):
    a, _ = pair
    ann = annihilator(a)
    assert ann.dim + a.dim == a.ambient_dim
    if a.dim and ann.dim:
        assert not mat_mul(a.basis.array, ann.basis.array.T, a.modulus).any()


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_quotient_basis_completes(pair):
    a, b = pair
    num = subspace_sum(a, b)
    reps = quotient_basis(num, b)
    assert reps.rows == quotient_dim(num, b)
    assert subspace_sum(b, Subspace(num.ambient_dim, num.modulus, reps)) == num


@pytest.mark.skipif(not HAVE_NUMBA, reason="compiled kernel unavailable")
@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=8, max_cols=8))
def test_backends_agree(m):
    a = m.array.copy()
    b = m.array.copy()
    ra, pa = rref_inplace(a, m.modulus, backend="numpy")
    rb, pb = rref_inplace(b, m.modulus, backend="numba")
    assert ra == rb and list(pa) == list(pb)
    assert np.array_equal(a, b)


def test_int32_work_path_large_prime():
    rng = np.random.default_rng(11)
    p = 65521
    m = FpMatrix(rng.integers(0, p, size=(30, 30)), p)
    # a random square matrix over a large field is invertible with overwhelming probability
    assert rank(m) == 30
    assert nullspace(m).dim == 0
