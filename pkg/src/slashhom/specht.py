"""Polytabloids, the James filtration, Garnir straightening, and a basis of H_k^{/0}.

Polytabloids live in F Omega_k: the tabloid of a tableau is its set of
second-row entries, and ``e_{t,l}`` is the signed sum over swaps of the two
entries in any of the first ``l`` columns.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BadStandardnessLevel,
    EmptyBasis,
    NoDescent,
    NonMember,
    NotAlmostStandard,
    NotASubspace,
    NotBadEntry,
    NotStandard,
    StraighteningDiverged,
    WindowViolation,
)
from .gf_linalg import (
    FpMatrix,
    Subspace,
    check_modulus,
    column_space,
    contains,
    intersection_dim,
    mat_mul,
    nullspace,
    rank,
    solve,
    subspace_sum,
)
from .subsets import (
    OmegaBasis,
    OmegaVector,
    Permutation,
    a_step_boundary,
    act,
    boundary_matrix,
    boundary_power,
    disjoint_product,
    mask_of,
)
from .tableaux import (
    TwoRowTableau,
    ast_key,
    ast_precedes,
    bad_entries,
    in_window,
    is_almost_standard,
    is_standard,
    l_standard_tableaux,
    p_standard_tableaux,
    standard_tableaux,
    threshold_classes,
)

# --- signed column sums and polytabloids -----------------------------------------


@dataclass(frozen=True)
class SignedSubgroupSum:
    """kappa: the signed sum over the group generated by disjoint transpositions."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def expansion(self) -> list[tuple[Permutation, int]]:
        out = []
        for chosen in itertools.product((0, 1), repeat=len(self.pairs)):
            images = list(range(1, self.n + 1))
            for use, (a, b) in zip(chosen, self.pairs):
                if use:
                    images[a - 1], images[b - 1] = b, a
            out.append((Permutation(images), -1 if sum(chosen) % 2 else 1))
        return out

    def __len__(self) -> int:
        return 2 ** len(self.pairs)


def column_group(t: TwoRowTableau, ell: int) -> SignedSubgroupSum:
    return SignedSubgroupSum(t.n, tuple((t.row1[j], t.row2[j]) for j in range(ell)))


def _polytabloid_terms(row1: Sequence[int], row2: Sequence[int], ell: int) -> dict[int, int]:
    """{mask: +-1} for {t} kappa_{t,ell}; distinct swap sets give distinct subsets."""
    base = mask_of(row2)
    swaps = [(1 << (row1[j] - 1)) | (1 << (row2[j] - 1)) for j in range(ell)]
    out = {}
    for chosen in itertools.product((0, 1), repeat=ell):
        m = base
        for use, s in zip(chosen, swaps):
            if use:
                m ^= s
        out[m] = -1 if sum(chosen) % 2 else 1
    return out


def l_polytabloid(t: TwoRowTableau, ell: int, p: int) -> OmegaVector:
    if not 0 <= ell <= min(t.k, t.n - t.k):
        raise BadStandardnessLevel(f"level {ell} outside [0, {min(t.k, t.n - t.k)}]")
    return OmegaVector.from_terms(t.n, t.k, p, _polytabloid_terms(t.row1, t.row2, ell))


def polytabloid(t: TwoRowTableau, p: int) -> OmegaVector:
    """e_t = e_{t,k}."""
    return l_polytabloid(t, t.k, p)


def _polytabloid_matrix(tabs: Sequence[TwoRowTableau], n: int, k: int, ell: int, p: int) -> np.ndarray:
    idx = OmegaBasis(n, k).index()
    out = np.zeros((len(tabs), comb(n, k)), dtype=np.int64)
    for r, t in enumerate(tabs):
        for m, c in _polytabloid_terms(t.row1, t.row2, ell).items():
            out[r, idx[m]] = c % p
    return out


# --- the James filtration --------------------------------------------------------------


@dataclass(frozen=True)
class SpechtLayer:
    """S^{k,l}: the span of the l-standard l-polytabloids inside F Omega_k."""

    n: int
    k: int
    ell: int
    p: int
    tableaux: tuple[TwoRowTableau, ...]
    vectors: FpMatrix = field(repr=False)
    basis_subspace: Subspace = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis_subspace.dim


def _check_levels(n: int, k: int, ell: int) -> None:
    if not (0 <= ell <= k <= n and ell <= n - k):
        raise BadStandardnessLevel(f"need 0 <= l <= k <= n and l <= n - k, got (n, k, l) = ({n}, {k}, {ell})")


@lru_cache(maxsize=256)
def specht_layer(n: int, k: int, ell: int, p: int) -> SpechtLayer:
    _check_levels(n, k, ell)
    p = check_modulus(p)
    tabs = tuple(l_standard_tableaux(n, k, ell))
    vecs = FpMatrix._wrap(_polytabloid_matrix(tabs, n, k, ell, p), p)
    space = Subspace(comb(n, k), p, vecs) if tabs else Subspace.zero(comb(n, k), p)
    if space.dim != len(tabs):
        raise RuntimeError(
            f"{len(tabs)} {ell}-standard polytabloids span only {space.dim} dimensions"
        )
    return SpechtLayer(n, k, ell, p, tabs, vecs, space)


def _restricted_kernel_image(layer: SpechtLayer, m: FpMatrix) -> tuple[Subspace, Subspace]:
    """Kernel and image of the column-vector map ``m`` restricted to the layer."""
    p = layer.p
    b = layer.basis_subspace.basis
    if b.rows == 0:
        return Subspace.zero(b.cols, p), Subspace.zero(m.rows, p)
    images = FpMatrix._wrap(mat_mul(b.array, m.array.T, p), p)
    coeffs = nullspace(images.T)
    ker_rows = mat_mul(coeffs.basis.array, b.array, p)
    ker = Subspace(b.cols, p, FpMatrix._wrap(ker_rows, p)) if ker_rows.shape[0] else Subspace.zero(b.cols, p)
    img = Subspace(m.rows, p, images)
    return ker, img


@dataclass(frozen=True)
class JamesCheck:
    kernel_ok: bool
    image_ok: bool
    power_kernel_ok: bool | None = None
    power_image_ok: bool | None = None

    def __bool__(self) -> bool:
        return all(v is not False for v in (self.kernel_ok, self.image_ok, self.power_kernel_ok, self.power_image_ok))


def verify_james(n: int, k: int, ell: int, p: int) -> JamesCheck:
    """Ker(phi^(k-l) on S^{k,l}) = S^{k,l+1} and Image = S^{l,l}.

    When k - l < p the same equalities are also checked for phi^{k-l}.
    """
    _check_levels(n, k, ell)
    layer = specht_layer(n, k, ell, p)
    top = min(k, n - k)
    nxt = specht_layer(n, k, ell + 1, p).basis_subspace if ell + 1 <= top else Subspace.zero(comb(n, k), p)
    target = specht_layer(n, ell, ell, p).basis_subspace
    ker, img = _restricted_kernel_image(layer, a_step_boundary(n, k, k - ell, p))
    res = {"kernel_ok": ker == nxt, "image_ok": img == target}
    if k - ell < p:
        ker2, img2 = _restricted_kernel_image(layer, boundary_power(n, k, k - ell, p))
        res["power_kernel_ok"] = ker2 == nxt
        res["power_image_ok"] = img2 == target
    return JamesCheck(**res)


def direct_sum_check(n: int, k: int, p: int) -> bool:
    """F Omega_k = span(Omega_k^{>0}) ⊕ S^{k,k}."""
    if 2 * k > n:
        raise WindowViolation(f"direct sum decomposition needs 2k <= n, got n={n}, k={k}")
    p = check_modulus(p)
    idx = OmegaBasis(n, k).index()
    classes = threshold_classes(n, k)
    pos = sorted(idx[s.mask] for h, ss in classes.items() if h > 0 for s in ss)
    eye = np.zeros((len(pos), comb(n, k)), dtype=np.int64)
    eye[np.arange(len(pos)), pos] = 1
    a = Subspace(comb(n, k), p, FpMatrix._wrap(eye, p)) if pos else Subspace.zero(comb(n, k), p)
    s = specht_layer(n, k, k, p).basis_subspace
    return a.dim + s.dim == comb(n, k) and intersection_dim(a, s) == 0


# --- Garnir relations and straightening ---------------------------------------------------


def first_descent(t: TwoRowTableau) -> int | None:
    for j in range(1, len(t.row1)):
        if t.row1[j - 1] > t.row1[j]:
            return j
    return None


def _sort_columns(row1: list[int], row2: list[int]) -> TwoRowTableau:
    k = len(row2)
    cols = sorted(zip(row1[:k], row2), key=lambda c: c[1])
    return TwoRowTableau(tuple(c[0] for c in cols) + tuple(row1[k:]), tuple(c[1] for c in cols))


def garnir_expand(t: TwoRowTableau, j: int, p: int | None = None):
    """Rewrite e_t for a first-row descent at column j.

    Returns ``(u, w)`` with e_t = e_u - e_w for j <= k.  For j > k the two
    swapped entries sit outside every column of length two, so e_t = e_u and
    ``(u, None)`` is returned.
    """
    if not is_almost_standard(t):
        raise NotAlmostStandard(f"{t} is not almost standard")
    if not 1 <= j < len(t.row1):
        raise NoDescent(f"column {j} has no right neighbour in the first row")
    a, b = t.row1[j - 1], t.row1[j]
    if a < b:
        raise NoDescent(f"no descent at column {j}: {a} < {b}")
    u = t.permute(Permutation.cycle(t.n, a, b))
    if j > t.k:
        return u, None
    c = t.row2[j - 1]
    v = t.permute(Permutation.cycle(t.n, a, b, c))
    w = _sort_columns(list(v.row1), list(v.row2))
    return u, w


def to_almost_standard(t: TwoRowTableau) -> tuple[int, TwoRowTableau]:
    """(sign, t') with e_t = sign * e_{t'} and t' almost standard."""
    if 2 * t.k > t.n:
        raise NotAlmostStandard("shape (n-k, k) with k > n-k has no almost-standard tableaux")
    row1, row2 = list(t.row1), list(t.row2)
    sign = 1
    for j in range(t.k):
        if row1[j] > row2[j]:
            row1[j], row2[j] = row2[j], row1[j]
            sign = -sign
    return sign, _sort_columns(row1, row2)


@dataclass
class StraightenResult:
    coords: dict[TwoRowTableau, int]
    steps: int
    incomparable: list[tuple[TwoRowTableau, TwoRowTableau]]

    def vector(self, n: int, k: int, p: int) -> OmegaVector:
        total = OmegaVector(OmegaBasis(n, k), p)
        for t, c in self.coords.items():
            total = total + polytabloid(t, p) * c
        return total


def straighten(x, p: int, n: int | None = None, k: int | None = None, cap: int | None = None) -> StraightenResult:
    """Coordinates over standard polytabloids.

    ``x`` is a tableau, a mapping {tableau: coefficient}, or an OmegaVector.
    Tableau input is rewritten by Garnir steps, always expanding the
    ⪯-smallest pending tableau at its leftmost descent; vector input is
    solved directly against the standard basis.
    """
    p = check_modulus(p)
    if isinstance(x, OmegaVector):
        coords = solve_standard_coordinates(x)
        return StraightenResult(coords, 0, [])
    if isinstance(x, TwoRowTableau):
        x = {x: 1}
    if not x:
        return StraightenResult({}, 0, [])
    any_t = next(iter(x))
    n, k = any_t.n, any_t.k
    cap = 2**n if cap is None else cap
    pending: dict[TwoRowTableau, int] = {}
    for t, c in x.items():
        sgn, t2 = to_almost_standard(t)
        pending[t2] = (pending.get(t2, 0) + sgn * c) % p
    heap = [(ast_key(t), t.row1, t.row2, t) for t in pending]
    heapq.heapify(heap)
    queued = set(pending)
    done: dict[TwoRowTableau, int] = {}
    incomparable = []
    steps = 0
    while heap:
        t = heapq.heappop(heap)[-1]
        queued.discard(t)
        c = pending.pop(t, 0) % p
        if not c:
            continue
        j = first_descent(t)
        if j is None:
            done[t] = (done.get(t, 0) + c) % p
            continue
        steps += 1
        if steps > cap:
            raise StraighteningDiverged(f"more than {cap} Garnir steps")
        u, w = garnir_expand(t, j)
        for new, coef in ((u, c), (w, -c)):
            if new is None:
                continue
            if not (ast_precedes(t, new) and t != new):
                incomparable.append((t, new))
            pending[new] = (pending.get(new, 0) + coef) % p
            if new not in queued:
                heapq.heappush(heap, (ast_key(new), new.row1, new.row2, new))
                queued.add(new)
    return StraightenResult({t: c for t, c in done.items() if c}, steps, incomparable)


def solve_standard_coordinates(x: OmegaVector) -> dict[TwoRowTableau, int]:
    """Coordinates of x over standard polytabloids by a direct linear solve."""
    n, k, p = x.n, x.k, x.modulus
    layer = specht_layer(n, k, k, p)
    if not layer.tableaux:
        if x.is_zero():
            return {}
        raise NonMember("the Specht space is zero")
    try:
        c = solve(layer.vectors.T, x.coeffs)
    except NotASubspace:
        raise NonMember("vector is not in the span of the polytabloids") from None
    return {t: int(v) for t, v in zip(layer.tableaux, c) if v}


# --- bad entries and symmetrized relations ----------------------------------------------------


def bad_subset(t: TwoRowTableau, i: int, p: int) -> tuple[int, ...]:
    """B_i = (t_{1,i+1}, ..., t_{1,i+p-2}, t_{2,i}), p - 1 entries in increasing order."""
    if i not in bad_entries(t, p):
        raise NotBadEntry(f"t_(2,{i}) is not a bad entry of {t} for p={p}")
    return tuple(t.row1[i : i + p - 2]) + (t.row2[i - 1],)


def _symmetrize(x: OmegaVector, block: Sequence[int]) -> OmegaVector:
    total = OmegaVector(x.basis, x.modulus)
    for images in itertools.permutations(block):
        g = list(range(1, x.n + 1))
        for a, b in zip(block, images):
            g[a - 1] = b
        total = total + act(x, Permutation(g))
    return total


@lru_cache(maxsize=64)
def _image_top(n: int, k: int, p: int) -> Subspace:
    """Image(phi^{p-1}) inside F Omega_k."""
    if k + p - 1 > n:
        return Subspace.zero(comb(n, k), p)
    return column_space(boundary_power(n, k + p - 1, p - 1, p))


def bad_entry_relation(t: TwoRowTableau, i: int, p: int) -> OmegaVector:
    """sum over tau in S_{B_i} of e_t tau; raises if it falls outside Image(phi^{p-1})."""
    p = check_modulus(p)
    if p == 2:
        raise ValueError("bad-entry relations are only defined for odd p")
    if not is_standard(t):
        raise NotStandard(f"{t} is not standard")
    block = bad_subset(t, i, p)
    x = _symmetrize(polytabloid(t, p), block)
    if not _image_top(t.n, t.k, p).contains_vector(x.coeffs):
        raise RuntimeError(f"symmetrized polytabloid of {t} at {i} is not in Image(phi^{p - 1})")
    return x


def tbx_relation_sides(t: TwoRowTableau, i: int, p: int) -> tuple[OmegaVector, OmegaVector]:
    """Both sides of e_t sum_{S_B} tau = (e_{t'} · K) phi^{p-1}, B = t_{1,i..i+p-2}.

    t' drops the columns i..i+p-2 and K collects their entries.
    """
    p = check_modulus(p)
    k = t.k
    if not (1 <= i and i + p - 2 <= t.n - k):
        raise ValueError(f"columns {i}..{i + p - 2} do not fit in the first row")
    cols = range(i - 1, i + p - 2)
    block = tuple(t.row1[c] for c in cols)
    lhs = _symmetrize(polytabloid(t, p), block)
    kset = [t.row1[c] for c in cols] + [t.row2[c] for c in cols if c < k]
    row1 = [x for c, x in enumerate(t.row1) if c not in cols]
    row2 = [x for c, x in enumerate(t.row2) if c not in cols]
    inner = _polytabloid_terms(row1, row2, min(len(row2), len(row1)))
    ev = OmegaVector.from_terms(t.n, len(row2), p, inner)
    kv = OmegaVector.from_terms(t.n, len(kset), p, {mask_of(kset): 1})
    prod = disjoint_product(ev, kv)
    rhs = prod.apply(boundary_power(t.n, prod.k, p - 1, p), prod.k - (p - 1))
    return lhs, rhs


# --- H_k^{/0} and the radical ------------------------------------------------------------------


def _check_window(n: int, k: int, p: int) -> None:
    if p == 2 or not n - (p - 1) < 2 * k <= n:
        raise WindowViolation(
            f"(n, k, p) = ({n}, {k}, {p}): need p odd and n-(p-1) < 2k <= n, i.e. n-2k in [0, p-2]"
        )


@dataclass(frozen=True)
class H0Basis:
    n: int
    k: int
    p: int
    tableaux: tuple[TwoRowTableau, ...]
    polytabloids: FpMatrix = field(repr=False)
    representatives: FpMatrix = field(repr=False)
    rank: int

    @property
    def independent(self) -> bool:
        return self.rank == len(self.tableaux)


def h0_basis(n: int, k: int, p: int) -> H0Basis:
    """Cosets of p-standard polytabloids modulo Image(phi^{p-1})."""
    p = check_modulus(p)
    _check_window(n, k, p)
    tabs = tuple(p_standard_tableaux(n, k, p))
    if not tabs:
        raise EmptyBasis(f"no p-standard tableaux for (n, k, p) = ({n}, {k}, {p})")
    vecs = _polytabloid_matrix(tabs, n, k, k, p)
    reps = _image_top(n, k, p).reduce(vecs)
    r = rank(FpMatrix._wrap(reps, p))
    return H0Basis(n, k, p, tabs, FpMatrix._wrap(vecs, p), FpMatrix._wrap(reps, p), r)


def radical_dim(n: int, k: int, p: int) -> int:
    """dim(Image(phi^{p-1}) ∩ S^{k,k})."""
    p = check_modulus(p)
    _check_window(n, k, p)
    return intersection_dim(_image_top(n, k, p), specht_layer(n, k, k, p).basis_subspace)


def theorem_ind_check(n: int, k: int, p: int) -> bool:
    """Kernel elements of phi_k supported off Omega_k^0 lie in Image(phi^{p-1}).

    For 2k <= n each nullspace basis vector is split as y' + s with s in
    S^{k,k} matching it on Omega_k^0, and y' is tested; for 2k > n the
    whole kernel is tested.
    """
    p = check_modulus(p)
    if k == 0:
        return True
    ker = nullspace(boundary_matrix(n, k, p))
    img = _image_top(n, k, p)
    if 2 * k > n:
        return contains(img, ker)
    layer = specht_layer(n, k, k, p)
    idx = OmegaBasis(n, k).index()
    zero_cols = [idx[s.mask] for s in threshold_classes(n, k)[0]]
    e = layer.vectors.array
    sub = FpMatrix._wrap(e[:, zero_cols].T.copy(), p)
    for y in ker.basis.array:
        c = solve(sub, y[zero_cols])
        rest = (y - mat_mul(c.reshape(1, -1), e, p)[0]) % p
        if rest[zero_cols].any() or not img.contains_vector(rest):
            return False
    return True
