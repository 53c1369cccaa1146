"""k-subsets of [n], the unsigned boundary maps, and the S_n action.

Subsets are bitmasks with element ``i`` stored at bit ``i - 1``.  The
coordinates of F Omega_k follow the colexicographic order, so
``rank({w_1 < ... < w_k}) = sum_j C(w_j - 1, j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import AmbientMismatch, DegreeUnderflow, GroundSetTooLarge
from .gf_linalg import FpMatrix, check_modulus

MAX_N = 63


def _check_n(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_N:
        raise GroundSetTooLarge(f"n={n} exceeds the bitmask capacity {MAX_N}")
    return n


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, order=True)
class KSubset:
    """A subset of [n] stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} uses bits outside [1, {self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "KSubset":
        elements = list(elements)
        if any(e < 1 or e > n for e in elements):
            raise ValueError(f"elements {elements} not in [1, {n}]")
        if len(set(elements)) != len(elements):
            raise ValueError("repeated element")
        return cls(mask_of(elements), n)

    @property
    def k(self) -> int:
        return bin(self.mask).count("1")

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def complement(self) -> "KSubset":
        return KSubset(((1 << self.n) - 1) & ~self.mask, self.n)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.k

    def __repr__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def colex_rank(mask: int) -> int:
    r = 0
    j = 1
    i = 0
    while mask:
        if mask & 1:
            r += comb(i, j)
            j += 1
        mask >>= 1
        i += 1
    return r


def colex_unrank(r: int, k: int) -> int:
    mask = 0
    for j in range(k, 0, -1):
        # largest c with C(c, j) <= r
        c = j - 1
        while comb(c + 1, j) <= r:
            c += 1
        r -= comb(c, j)
        mask |= 1 << c
    return mask


@lru_cache(maxsize=256)
def _colex_masks(n: int, k: int) -> tuple[int, ...]:
    if k < 0 or k > n:
        return ()
    masks = [mask_of(c) for c in itertools.combinations(range(1, n + 1), k)]
    masks.sort(key=colex_rank)
    return tuple(masks)


class OmegaBasis:
    """Colexicographic coordinates on Omega_k, the k-subsets of [n]."""

    __slots__ = ("n", "k", "_masks", "_index")

    def __init__(self, n: int, k: int):
        _check_n(n)
        if k < 0 or k > n:
            raise ValueError(f"k={k} outside [0, {n}]")
        self.n = n
        self.k = k
        self._masks = _colex_masks(n, k)
        self._index = None

    def __len__(self) -> int:
        return len(self._masks)

    def __eq__(self, other):
        return isinstance(other, OmegaBasis) and (self.n, self.k) == (other.n, other.k)

    def __hash__(self):
        return hash((self.n, self.k))

    def __repr__(self):
        return f"OmegaBasis(n={self.n}, k={self.k})"

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def rank(self, s: KSubset | int) -> int:
        mask = s.mask if isinstance(s, KSubset) else s
        if bin(mask).count("1") != self.k or mask >> self.n:
            raise ValueError(f"{elements_of(mask)} is not a {self.k}-subset of [{self.n}]")
        return colex_rank(mask)

    def unrank(self, r: int) -> KSubset:
        if not 0 <= r < len(self):
            raise IndexError(r)
        return KSubset(colex_unrank(r, self.k), self.n)

    def index(self) -> dict[int, int]:
        if self._index is None:
            self._index = {m: i for i, m in enumerate(self._masks)}
        return self._index

    def __iter__(self) -> Iterator[KSubset]:
        return (KSubset(m, self.n) for m in self._masks)


class OmegaVector:
    """An element of F Omega_k: dense residues indexed by :class:`OmegaBasis`."""

    __slots__ = ("basis", "modulus", "coeffs")

    def __init__(self, basis: OmegaBasis, modulus: int, coeffs=None):
        self.basis = basis
        self.modulus = check_modulus(modulus)
        if coeffs is None:
            c = np.zeros(len(basis), dtype=np.int64)
        else:
            c = np.asarray(coeffs, dtype=np.int64) % self.modulus
            if c.shape != (len(basis),):
                raise ValueError(f"expected {len(basis)} coefficients, got {c.shape}")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def from_terms(cls, n: int, k: int, modulus: int, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> "OmegaVector":
        """Build from ``{mask: coefficient}`` (or pairs); masks must be k-subsets."""
        basis = OmegaBasis(n, k)
        idx = basis.index()
        c = np.zeros(len(basis), dtype=np.int64)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mask, coef in items:
            if isinstance(mask, KSubset):
                mask = mask.mask
            if mask not in idx:
                raise ValueError(f"{elements_of(mask)} is not a {k}-subset of [{n}]")
            c[idx[mask]] += coef
        return cls(basis, modulus, c)

    @classmethod
    def of_subset(cls, s: KSubset, modulus: int) -> "OmegaVector":
        return cls.from_terms(s.n, s.k, modulus, {s.mask: 1})

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def k(self) -> int:
        return self.basis.k

    def terms(self) -> dict[int, int]:
        masks = self.basis.masks
        return {masks[i]: int(self.coeffs[i]) for i in np.flatnonzero(self.coeffs)}

    def support(self) -> set[KSubset]:
        return {KSubset(m, self.n) for m in self.terms()}

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def _check(self, other: "OmegaVector") -> None:
        if self.basis != other.basis or self.modulus != other.modulus:
            raise AmbientMismatch("vectors live in different spaces")

    def __add__(self, other: "OmegaVector") -> "OmegaVector":
        self._check(other)
        return OmegaVector(self.basis, self.modulus, self.coeffs + other.coeffs)

    def __sub__(self, other: "OmegaVector") -> "OmegaVector":
        self._check(other)
        return OmegaVector(self.basis, self.modulus, self.coeffs - other.coeffs)

    def __neg__(self) -> "OmegaVector":
        return OmegaVector(self.basis, self.modulus, -self.coeffs)

    def __mul__(self, c: int) -> "OmegaVector":
        return OmegaVector(self.basis, self.modulus, self.coeffs * (int(c) % self.modulus))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaVector):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.modulus == other.modulus
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.basis, self.modulus, self.coeffs.tobytes()))

    def __repr__(self):
        parts = []
        for mask, c in sorted(self.terms().items(), key=lambda t: colex_rank(t[0])):
            parts.append(f"{c}*{{{','.join(map(str, elements_of(mask)))}}}")
        return f"OmegaVector(n={self.n}, k={self.k}, p={self.modulus}: " + (" + ".join(parts) or "0") + ")"

    def apply(self, m: FpMatrix, k_out: int) -> "OmegaVector":
        """Image of this vector under a coordinate matrix F Omega_k -> F Omega_{k_out}."""
        return OmegaVector(OmegaBasis(self.n, k_out), self.modulus, m.apply(self.coeffs))


class Permutation:
    """A bijection of [n]; ``images[i - 1]`` is the image of ``i``.

    Acts on the right: ``(x)g`` replaces every element ``i`` by ``g(i)``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of [1, {len(images)}]")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def cycle(cls, n: int, *cycle: int) -> "Permutation":
        """The cycle (c_1 c_2 ... c_r): c_1 -> c_2 -> ... -> c_r -> c_1."""
        images = list(range(1, n + 1))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other (right-action composition)."""
        return Permutation(other(self(i)) for i in range(1, self.n + 1))

    __mul__ = then

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        seen = [False] * self.n
        s = 1
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def act_mask(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << (self.images[i] - 1)
            mask >>= 1
            i += 1
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


# --- boundary maps -----------------------------------------------------------


def _sub_masks(mask: int, size: int) -> Iterator[int]:
    elems = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for combo in itertools.combinations(elems, size):
        yield sum(combo)


@lru_cache(maxsize=512)
def _a_step_array(n: int, k: int, a: int) -> np.ndarray:
    cols = _colex_masks(n, k)
    rows = _colex_masks(n, k - a)
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if not cols or not rows:
        return out
    idx = {m: i for i, m in enumerate(rows)}
    r_list = []
    c_list = []
    for j, m in enumerate(cols):
        for s in _sub_masks(m, k - a):
            r_list.append(idx[s])
            c_list.append(j)
    out[r_list, c_list] = 1
    out.setflags(write=False)
    return out


def a_step_boundary(n: int, k: int, a: int, p: int) -> FpMatrix:
    """Matrix of phi^(a)_k: each k-subset goes to the sum of its (k-a)-subsets."""
    _check_n(n)
    p = check_modulus(p)
    if k < 0 or a < 0:
        raise DegreeUnderflow(f"negative degree k={k}, a={a}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if a > k:
        raise ValueError(f"step a={a} exceeds degree k={k}")
    return FpMatrix._wrap(_a_step_array(n, k, a) % p, p)


def boundary_matrix(n: int, k: int, p: int) -> FpMatrix:
    """Matrix of phi_k : F Omega_k -> F Omega_{k-1}.

    ``k = 0`` gives the 0 x 1 matrix (F Omega_{-1} = 0).
    """
    _check_n(n)
    p = check_modulus(p)
    if k < 0 or k > n:
        raise DegreeUnderflow(f"k={k} outside [0, {n}]")
    if k == 0:
        return FpMatrix.zeros(0, 1, p)
    return a_step_boundary(n, k, 1, p)


def boundary_power(n: int, k: int, a: int, p: int) -> FpMatrix:
    """phi^a_k computed as a! * phi^(a)_k (zero once a >= p or a > k)."""
    _check_n(n)
    p = check_modulus(p)
    if a > k or a >= p:
        rows = comb(n, k - a) if 0 <= k - a <= n else 0
        return FpMatrix.zeros(rows, comb(n, k), p)
    return a_step_boundary(n, k, a, p).scale(factorial(a) % p)


# --- maps on vectors -----------------------------------------------------------


def _from_dict(n: int, k: int, p: int, acc: dict[int, int]) -> OmegaVector:
    return OmegaVector.from_terms(n, k, p, {m: c % p for m, c in acc.items() if c % p})


def boundary(x: OmegaVector, a: int = 1) -> OmegaVector:
    """(x) phi^(a)."""
    if x.k - a < 0:
        if x.is_zero():
            return OmegaVector(OmegaBasis(x.n, 0), x.modulus)
        raise DegreeUnderflow("boundary below degree 0")
    return x.apply(a_step_boundary(x.n, x.k, a, x.modulus), x.k - a)


def partial_boundary(x: OmegaVector, subset: Iterable[int] | KSubset) -> OmegaVector:
    """phi_I: w -> sum over i in I ∩ w of w minus {i}."""
    imask = subset.mask if isinstance(subset, KSubset) else mask_of(i for i in subset if 1 <= i <= x.n)
    if x.k == 0:
        if x.is_zero():
            return OmegaVector(OmegaBasis(x.n, 0), x.modulus)
        raise DegreeUnderflow("phi_I is undefined on a nonzero element of F Omega_0")
    acc: dict[int, int] = {}
    for mask, c in x.terms().items():
        hit = mask & imask
        while hit:
            low = hit & -hit
            key = mask ^ low
            acc[key] = acc.get(key, 0) + c
            hit ^= low
    return _from_dict(x.n, x.k - 1, x.modulus, acc)


def partial_coboundary(x: OmegaVector, subset: Iterable[int] | KSubset) -> OmegaVector:
    """delta_I: w -> sum over i in I of w·{i} (terms with i in w vanish)."""
    imask = subset.mask if isinstance(subset, KSubset) else mask_of(i for i in subset if 1 <= i <= x.n)
    if x.k == x.n:
        return OmegaVector(OmegaBasis(x.n, x.n), x.modulus)
    acc: dict[int, int] = {}
    for mask, c in x.terms().items():
        free = imask & ~mask
        while free:
            low = free & -free
            key = mask | low
            acc[key] = acc.get(key, 0) + c
            free ^= low
    return _from_dict(x.n, x.k + 1, x.modulus, acc)


def disjoint_product(u: OmegaVector, v: OmegaVector) -> OmegaVector:
    """Bilinear extension of u·v = u ∪ v when disjoint, 0 otherwise."""
    if u.n != v.n or u.modulus != v.modulus:
        raise AmbientMismatch("factors over different ground sets or fields")
    k = u.k + v.k
    if k > u.n:
        raise ValueError(f"product lands in degree {k} > n={u.n}")
    acc: dict[int, int] = {}
    vt = v.terms()
    for m1, c1 in u.terms().items():
        for m2, c2 in vt.items():
            if m1 & m2 == 0:
                acc[m1 | m2] = acc.get(m1 | m2, 0) + c1 * c2
    return _from_dict(u.n, k, u.modulus, acc)


def act(x: OmegaVector, g: Permutation) -> OmegaVector:
    """(x) g: permute every subset in the support elementwise."""
    if g.n != x.n:
        raise AmbientMismatch(f"permutation of [{g.n}] acting on subsets of [{x.n}]")
    return _from_dict(x.n, x.k, x.modulus, {g.act_mask(m): c for m, c in x.terms().items()})


def complement_vector(x: OmegaVector) -> OmegaVector:
    """Re-index F Omega_k -> F Omega_{n-k} by w -> w^c (coefficients kept)."""
    full = (1 << x.n) - 1
    return _from_dict(x.n, x.n - x.k, x.modulus, {full & ~m: c for m, c in x.terms().items()})


def complement_permutation(n: int, k: int) -> np.ndarray:
    """perm[i] = colex index in Omega_{n-k} of the complement of the i-th k-subset."""
    full = (1 << n) - 1
    idx = OmegaBasis(n, n - k).index()
    return np.array([idx[full & ~m] for m in OmegaBasis(n, k).masks], dtype=np.int64)


def xchange_coefficients(p: int) -> tuple[int, ...]:
    """(b_1, ..., b_{p-1}) from y_[0] = 1, y_[l] = -(p - l)^2 y_[l-1], b_i = y_[p-i].

    ``b_1 = y_[p-1] = 1`` by Wilson's theorem.  See :func:`xchange_term_coefficients`
    for the coefficient that actually multiplies each term of the identity.
    """
    p = check_modulus(p)
    if p == 2:
        raise ValueError("xchange coefficients are defined for odd p")
    y = [1]
    for ell in range(1, p):
        y.append((-(p - ell) ** 2 * y[-1]) % p)
    return tuple(y[p - i] for i in range(1, p))


def xchange_chain(p: int) -> tuple[int, ...]:
    """(y_[0], ..., y_[p-1]) as residues."""
    p = check_modulus(p)
    y = [1]
    for ell in range(1, p):
        y.append((-(p - ell) ** 2 * y[-1]) % p)
    return tuple(y)


def xchange_term_coefficients(p: int) -> tuple[int, ...]:
    """Coefficient of (y) phi delta^i phi^(i-1) in the exchange identity, i = 1..p-1.

    Unrolling (y) delta^a phi = (y) phi delta^a - a^2 (y) delta^(a-1) from
    a = p-1 downward attaches y_[p-1-i] to the delta^i term, so the
    coefficient list is the chain read backwards from y_[p-2] to y_[0].
    """
    y = xchange_chain(p)
    return tuple(y[p - 1 - i] for i in range(1, p))
