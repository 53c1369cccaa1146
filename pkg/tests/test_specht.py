from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slashhom.errors import NonMember, NotAlmostStandard, NotBadEntry, NoDescent, WindowViolation
from slashhom.gf_linalg import contains, nullspace
from slashhom.specht import (
    bad_entry_relation,
    bad_subset,
    column_group,
    direct_sum_check,
    first_descent,
    garnir_expand,
    h0_basis,
    l_polytabloid,
    polytabloid,
    radical_dim,
    solve_standard_coordinates,
    specht_layer,
    straighten,
    tbx_relation_sides,
    theorem_ind_check,
    to_almost_standard,
    verify_james,
)
from slashhom.subsets import OmegaVector, Permutation, act, boundary_matrix, mask_of
from slashhom.tableaux import (
    TwoRowTableau,
    almost_standard_tableaux,
    ast_precedes,
    bad_entries,
    in_window,
    is_standard,
    l_standard_tableaux,
    p_standard_tableaux,
    standard_tableaux,
    tableau_from_subset,
)
from slashhom.verify import slash_table


def dominated(a: int, b: int, n: int) -> bool:
    """a ⊴ b in row dominance: every prefix of [n] meets a no more often than b."""
    ca = cb = 0
    for i in range(n):
        ca += a >> i & 1
        cb += b >> i & 1
        if ca > cb:
            return False
    return True


# --- polytabloids ------------------------------------------------------------------------------


def test_polytabloid_example():
    t = tableau_from_subset([1, 2, 3], 8)
    e = l_polytabloid(t, 2, 5)
    want = {mask_of(s): c for s, c in [((1, 2, 3), 1), ((4, 2, 3), -1), ((1, 5, 3), -1), ((4, 5, 3), 1)]}
    assert e == OmegaVector.from_terms(8, 3, 5, want)


def test_level_zero_polytabloid_is_tabloid():
    t = tableau_from_subset([2, 5], 6)
    assert l_polytabloid(t, 0, 3) == OmegaVector.from_terms(6, 2, 3, {mask_of((2, 5)): 1})
    assert len(column_group(t, 2)) == 4


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.data())
def test_polytabloid_equivariance(n, data):
    k = data.draw(st.integers(1, n // 2))
    ell = data.draw(st.integers(0, k))
    w = data.draw(st.permutations(range(1, n + 1)))
    t = TwoRowTableau(tuple(w[k:]), tuple(w[:k]))
    g = Permutation(data.draw(st.permutations(range(1, n + 1))))
    assert l_polytabloid(t.permute(g), ell, 5) == act(l_polytabloid(t, ell, 5), g)


@pytest.mark.parametrize("n", range(2, 9))
def test_minimal_support(n):
    for k in range(1, n // 2 + 1):
        for ell in range(k + 1):
            for t in l_standard_tableaux(n, k, ell):
                top = t.subset().mask
                for m in l_polytabloid(t, ell, 3).terms():
                    if m != top:
                        assert not dominated(m, top, n)


# --- the James filtration ---------------------------------------------------------------------------


def test_level_zero_layer_is_everything():
    assert specht_layer(6, 2, 0, 3).dim == comb(6, 2)


def test_specht_dimension_n5():
    assert specht_layer(5, 2, 2, 3).dim == 5 == len(standard_tableaux(5, 2))


def test_specht_in_kernel():
    n, k, p = 6, 2, 3
    s = specht_layer(n, k, k, p).basis_subspace
    assert contains(nullspace(boundary_matrix(n, k, p)), s)


def test_james_n8_k3_p3():
    for ell in range(4):
        res = verify_james(8, 3, ell, 3)
        assert res and res.kernel_ok and res.image_ok


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", range(1, 8))
def test_filtration_strictly_nested(n, p):
    for k in range(n // 2 + 1):
        top = min(k, n - k)
        dims = [specht_layer(n, k, ell, p).dim for ell in range(top + 1)]
        assert all(a > b for a, b in zip(dims, dims[1:]))
        assert dims[-1] > 0
        for ell in range(top):
            assert contains(specht_layer(n, k, ell, p).basis_subspace, specht_layer(n, k, ell + 1, p).basis_subspace)
        for ell in range(k + 1):
            # dual layer of the same level has the same size
            assert specht_layer(n, k, ell, p).dim == specht_layer(n, n - k, ell, p).dim


@pytest.mark.parametrize("n", range(1, 9))
def test_direct_sum(n):
    for k in range(n // 2 + 1):
        assert direct_sum_check(n, k, 3)
    with pytest.raises(WindowViolation):
        direct_sum_check(4, 3, 3)


# --- Garnir steps and straightening ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 8))
def test_garnir_identity(n):
    p = 5
    for k in range(1, n // 2 + 1):
        for t in almost_standard_tableaux(n, k):
            j = first_descent(t)
            if j is None:
                continue
            u, w = garnir_expand(t, j, p)
            rhs = polytabloid(u, p) - (polytabloid(w, p) if w is not None else OmegaVector(polytabloid(u, p).basis, p))
            assert polytabloid(t, p) == rhs
            assert ast_precedes(t, u) and t != u
            if w is not None:
                assert ast_precedes(t, w) and t != w


def test_descent_past_second_row():
    t = TwoRowTableau((1, 3, 2, 7, 5), (4, 6))
    j = first_descent(t)
    assert j == 2  # column 2 sits above 6
    t2 = TwoRowTableau((1, 3, 7, 5, 2), (4, 6))
    assert first_descent(t2) == 3
    u, w = garnir_expand(t2, 3)
    assert w is None and u.row1 == (1, 3, 5, 7, 2)
    assert polytabloid(t2, 3) == polytabloid(u, 3)


def test_garnir_errors():
    t = tableau_from_subset([2, 4], 5)
    with pytest.raises(NoDescent):
        garnir_expand(t, 1)
    with pytest.raises(NotAlmostStandard):
        garnir_expand(TwoRowTableau((2, 3, 4), (1, 5)), 1)


def test_to_almost_standard_sign():
    t = TwoRowTableau((4, 1, 5), (2, 3))
    sign, t2 = to_almost_standard(t)
    assert polytabloid(t, 7) == polytabloid(t2, 7) * sign


def test_straighten_standard_is_fixed():
    for t in standard_tableaux(6, 2):
        assert straighten(t, 3).coords == {t: 1}


@pytest.mark.parametrize("n", range(2, 7))
def test_straighten_matches_solve(n):
    p = 3
    for k in range(1, n // 2 + 1):
        for t in almost_standard_tableaux(n, k):
            res = straighten(t, p)
            assert res.coords == solve_standard_coordinates(polytabloid(t, p))
            assert res.steps <= 2**n
            assert res.vector(n, k, p) == polytabloid(t, p)


def test_straighten_vector_and_mapping_inputs():
    p = 5
    tabs = list(almost_standard_tableaux(6, 2))[:4]
    combo = {tabs[0]: 1, tabs[3]: 2}
    vec = polytabloid(tabs[0], p) + polytabloid(tabs[3], p) * 2
    assert straighten(combo, p).coords == straighten(vec, p).coords
    with pytest.raises(NonMember):
        solve_standard_coordinates(OmegaVector.from_terms(4, 1, 3, {1: 1}))


# --- bad entries ---------------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 9))
def test_bad_entry_membership(n):
    p = 3
    for k in range(1, n // 2 + 1):
        for t in standard_tableaux(n, k):
            for i in bad_entries(t, p):
                block = bad_subset(t, i, p)
                assert len(block) == p - 1 and list(block) == sorted(block)
                bad_entry_relation(t, i, p)  # raises when outside the image


def test_bad_subset_rejects_good_column():
    t = tableau_from_subset([2, 4], 5)
    with pytest.raises(NotBadEntry):
        bad_subset(t, 1, 3)
    with pytest.raises(ValueError):
        bad_entry_relation(tableau_from_subset([5, 6], 6), 1, 2)


def test_bad_subsets_p5():
    for t in standard_tableaux(9, 3):
        for i in bad_entries(t, 5):
            block = bad_subset(t, i, 5)
            assert len(block) == 4 and list(block) == sorted(block)


@pytest.mark.parametrize("n", range(3, 9))
def test_symmetrized_relation(n):
    p = 3
    for k in range(1, n // 2 + 1):
        for t in standard_tableaux(n, k):
            for i in range(1, k - (p - 2) + 1):
                lhs, rhs = tbx_relation_sides(t, i, p)
                assert lhs == rhs


def test_symmetrized_relation_hand_instance():
    t = tableau_from_subset([5, 6], 6)
    assert is_standard(t) and bad_entries(t, 3)
    lhs, rhs = tbx_relation_sides(t, 1, 3)
    assert lhs == rhs and not lhs.is_zero()


# --- the degree-zero slash basis ---------------------------------------------------------------------


def test_h0_basis_small():
    b = h0_basis(5, 2, 3)
    assert b.tableaux == (tableau_from_subset([2, 4], 5),)
    assert b.rank == 1 and b.independent
    assert specht_layer(5, 2, 2, 3).dim == 5 and radical_dim(5, 2, 3) == 4


def test_h0_basis_n12_n13():
    b = h0_basis(12, 6, 7)
    assert len(b.tableaux) == 131 and b.rank == 131
    assert specht_layer(12, 6, 6, 7).dim == 132 and radical_dim(12, 6, 7) == 1
    assert h0_basis(13, 6, 7).rank == 417


def test_large_prime_radical_vanishes():
    for n, k in [(4, 2), (5, 2), (6, 3)]:
        assert radical_dim(n, k, 7) == 0


def test_h0_window():
    with pytest.raises(WindowViolation):
        h0_basis(6, 1, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_quotient_dimension(p):
    for n in range(1, 13):
        for k in range(n // 2 + 1):
            if in_window(n, k, p):
                quotient = specht_layer(n, k, k, p).dim - radical_dim(n, k, p)
                assert quotient == slash_table(n, p)[(k, 0)] == len(p_standard_tableaux(n, k, p))


def test_ind_examples():
    assert theorem_ind_check(6, 3, 3)
    assert theorem_ind_check(6, 0, 3)
    assert theorem_ind_check(12, 6, 7)
    assert all(theorem_ind_check(8, k, 3) for k in range(1, 9))


def test_tableau_order_in_basis():
    # the unique good tableau for n = 5 is the ⪯-largest almost-standard one
    top = h0_basis(5, 2, 3).tableaux[0]
    assert all(ast_precedes(t, top) for t in almost_standard_tableaux(5, 2))
