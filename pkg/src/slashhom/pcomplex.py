"""p-complexes of GF(p)-spaces and their slash, backslash and p-homology.

Chain convention: ``diff(k)`` is the matrix of ∂_k : C_k -> C_{k-1} acting on
column vectors, and ``power(k, a)`` is ∂^a_k : C_k -> C_{k-a}.  Every degree
outside the stored range is a zero space, so all index arithmetic is total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Mapping

import numpy as np

from .cyclotomic import CyclotomicInteger
from .errors import NotAPComplex
from .gf_linalg import (
    FpMatrix,
    Subspace,
    check_modulus,
    column_space,
    contains,
    intersection_dim,
    mat_mul,
    nullspace,
    quotient_basis,
    rank,
    subspace_sum,
)
from .subsets import _check_n, a_step_boundary, boundary_matrix, boundary_power

# exact ∂^p = 0 check below this many columns; randomized sketch above
_EXACT_CHECK_LIMIT = 400
_SKETCH_VECTORS = 24


class PComplex:
    """A bounded p-complex: dims per degree and one differential per degree."""

    def __init__(
        self,
        modulus: int,
        dims: Mapping[int, int],
        diffs: Mapping[int, FpMatrix],
        check: bool = True,
    ):
        self.modulus = check_modulus(modulus)
        self._dims = {int(k): int(d) for k, d in dims.items() if d}
        degrees = sorted(dims)
        self.lo = degrees[0] if degrees else 0
        self.hi = degrees[-1] if degrees else -1
        self._diffs: dict[int, FpMatrix] = {}
        for k, m in diffs.items():
            if m.modulus != self.modulus:
                raise NotAPComplex(f"differential at degree {k} is over GF({m.modulus})")
            if m.shape != (self.dim(k - 1), self.dim(k)):
                raise NotAPComplex(
                    f"∂_{k} has shape {m.shape}, expected {(self.dim(k - 1), self.dim(k))}"
                )
            self._diffs[int(k)] = m
        self._power: dict[tuple[int, int], FpMatrix] = {}
        self._ker: dict[tuple[int, int], Subspace] = {}
        self._im: dict[tuple[int, int], Subspace] = {}
        if check:
            self.check_nilpotent()

    # --- structure ---------------------------------------------------------

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, k: int) -> int:
        return self._dims.get(k, 0)

    @property
    def dims(self) -> dict[int, int]:
        return {k: self.dim(k) for k in self.degrees}

    def diff(self, k: int) -> FpMatrix:
        m = self._diffs.get(k)
        if m is None:
            return FpMatrix.zeros(self.dim(k - 1), self.dim(k), self.modulus)
        return m

    def power(self, k: int, a: int) -> FpMatrix:
        """∂^a_k = ∂_{k-a+1} ∘ ... ∘ ∂_k; ∂^0 is the identity."""
        if a < 0:
            raise ValueError("negative power")
        key = (k, a)
        m = self._power.get(key)
        if m is None:
            m = self._compute_power(k, a)
            self._power[key] = m
        return m

    def _compute_power(self, k: int, a: int) -> FpMatrix:
        if a == 0:
            return FpMatrix.identity(self.dim(k), self.modulus)
        if self.dim(k) == 0 or self.dim(k - a) == 0:
            return FpMatrix.zeros(self.dim(k - a), self.dim(k), self.modulus)
        return self.diff(k - a + 1) @ self.power(k, a - 1)

    def check_nilpotent(self, seed: int = 0) -> None:
        """Raise NotAPComplex unless every p consecutive differentials compose to 0."""
        p = self.modulus
        rng = np.random.default_rng(seed)
        for k in self.degrees:
            if self.dim(k) == 0 or self.dim(k - p) == 0:
                continue
            if self.dim(k) <= _EXACT_CHECK_LIMIT:
                block = np.eye(self.dim(k), dtype=np.int64)
            else:
                block = rng.integers(0, p, size=(self.dim(k), _SKETCH_VECTORS))
            for j in range(k, k - p, -1):
                block = mat_mul(self.diff(j).array, block, p)
            if block.any():
                raise NotAPComplex(f"∂^{p} is nonzero at degree {k}")

    # --- kernels and images ----------------------------------------------------

    def ker_power(self, k: int, a: int) -> Subspace:
        """Ker(∂^a_k) ⊆ C_k."""
        key = (k, a)
        s = self._ker.get(key)
        if s is None:
            d = self.dim(k)
            if a <= 0:
                s = Subspace.zero(d, self.modulus)
            elif a >= self.modulus or self.dim(k - a) == 0:
                s = Subspace.full(d, self.modulus)
            else:
                s = nullspace(self.power(k, a))
            self._ker[key] = s
        return s

    def im_power(self, k: int, a: int) -> Subspace:
        """Image(∂^a_{k+a}) ⊆ C_k."""
        key = (k, a)
        s = self._im.get(key)
        if s is None:
            d = self.dim(k)
            if a <= 0:
                s = Subspace.full(d, self.modulus)
            elif a >= self.modulus or self.dim(k + a) == 0:
                s = Subspace.zero(d, self.modulus)
            else:
                s = column_space(self.power(k + a, a))
            self._im[key] = s
        return s

    def slash_denominator(self, k: int, a: int) -> Subspace:
        return subspace_sum(self.im_power(k, self.modulus - a - 1), self.ker_power(k, a))

    # --- homology ----------------------------------------------------------------

    def _check_a(self, a: int) -> None:
        if not 0 <= a <= self.modulus - 2:
            raise ValueError(f"a={a} outside [0, p-2] for p={self.modulus}")

    def slash_dim(self, k: int, a: int) -> int:
        """dim H_k^{/a} = dim Ker(∂^{a+1}) - dim(Im(∂^{p-a-1}) + Ker(∂^a))."""
        self._check_a(a)
        num = self.ker_power(k, a + 1)
        den = self.slash_denominator(k, a)
        return num.dim - den.dim

    def slash_representatives(self, k: int, a: int) -> FpMatrix:
        """Rows spanning a complement of the denominator inside Ker(∂^{a+1})."""
        self._check_a(a)
        return quotient_basis(self.ker_power(k, a + 1), self.slash_denominator(k, a))

    def backslash_dim(self, k: int, a: int) -> int:
        """dim H_k^{\\a} = dim(Im(∂^a) ∩ Ker(∂^{p-1-a})) - dim Im(∂^{a+1})."""
        self._check_a(a)
        p = self.modulus
        top = intersection_dim(self.im_power(k, a), self.ker_power(k, p - 1 - a))
        return top - self.im_power(k, a + 1).dim

    def p_homology_dim(self, k: int, r: int) -> int:
        """dim ^rH_k = dim Ker(∂^r_k) - dim Im(∂^{p-r})."""
        p = self.modulus
        if not 1 <= r <= p - 1:
            raise ValueError(f"r={r} outside [1, p-1]")
        return self.ker_power(k, r).dim - self.im_power(k, p - r).dim

    def slash_shift_rank(self, k: int, a: int) -> int:
        """Rank of the map H_k^{/a} -> H_{k-a}^{/0} induced by ∂^a.

        Raises RuntimeError if the map is not injective.
        """
        self._check_a(a)
        reps = self.slash_representatives(k, a)
        if reps.rows == 0:
            return 0
        p = self.modulus
        images = mat_mul(reps.array, self.power(k, a).array.T, p)
        target_den = self.slash_denominator(k - a, 0)
        span = Subspace(self.dim(k - a), p, FpMatrix._wrap(images, p))
        r = subspace_sum(span, target_den).dim - target_den.dim
        if r != reps.rows:
            raise RuntimeError(
                f"slash shift H_{k}^/{a} -> H_{k - a}^/0 has rank {r} < {reps.rows}"
            )
        return r

    def full_report(self, n: int | None = None) -> "HomologyReport":
        p = self.modulus
        slash = {}
        back = {}
        ph = {}
        for k in self.degrees:
            for a in range(p - 1):
                slash[(k, a)] = self.slash_dim(k, a)
                back[(k, a)] = self.backslash_dim(k, a)
            for r in range(1, p):
                ph[(k, r)] = self.p_homology_dim(k, r)
        return HomologyReport(n=n, p=p, degrees=(self.lo, self.hi), slash=slash, backslash=back, p_homology=ph)

    # --- Euler characteristics -----------------------------------------------------

    def euler_characteristic(self) -> CyclotomicInteger:
        p = self.modulus
        total = CyclotomicInteger(p)
        for k in self.degrees:
            total = total + CyclotomicInteger.zeta_power(p, k, self.dim(k))
        return total

    def slash_euler(self) -> CyclotomicInteger:
        p = self.modulus
        total = CyclotomicInteger(p)
        for k in self.degrees:
            for a in range(p - 1):
                d = self.slash_dim(k, a)
                if d:
                    total = total + CyclotomicInteger.zeta_power(p, k, d)
        return total


class OmegaComplex(PComplex):
    """F Omega_• for the (n-1)-simplex with the unsigned boundary map."""

    def __init__(self, n: int, p: int, check: bool = True):
        _check_n(n)
        p = check_modulus(p)
        self.n = n
        dims = {k: comb(n, k) for k in range(n + 1)}
        diffs = {k: boundary_matrix(n, k, p) for k in range(1, n + 1)}
        super().__init__(p, dims, diffs, check=check)

    def _compute_power(self, k: int, a: int) -> FpMatrix:
        if not 0 <= k <= self.n:
            return FpMatrix.zeros(self.dim(k - a), self.dim(k), self.modulus)
        if a == 0:
            return FpMatrix.identity(self.dim(k), self.modulus)
        # a! phi^(a) = phi^a, and both vanish once a >= p
        return boundary_power(self.n, k, a, self.modulus)

    def step_power(self, k: int, a: int) -> FpMatrix:
        """phi^(a)_k, the a-step boundary (nonzero even for a >= p)."""
        if not 0 <= k <= self.n or a > k:
            return FpMatrix.zeros(self.dim(k - a), self.dim(k), self.modulus)
        return a_step_boundary(self.n, k, a, self.modulus)

    def full_report(self, n: int | None = None) -> "HomologyReport":
        return super().full_report(self.n)


def omega_complex(n: int, p: int, check: bool = True) -> OmegaComplex:
    return OmegaComplex(n, p, check=check)


# --- module-level API mirroring the methods ------------------------------------


def ker_power(c: PComplex, k: int, a: int) -> Subspace:
    return c.ker_power(k, a)


def im_power(c: PComplex, k: int, a: int) -> Subspace:
    return c.im_power(k, a)


def slash_dim(c: PComplex, k: int, a: int) -> int:
    return c.slash_dim(k, a)


def backslash_dim(c: PComplex, k: int, a: int) -> int:
    return c.backslash_dim(k, a)


def p_homology_dim(c: PComplex, k: int, r: int) -> int:
    return c.p_homology_dim(k, r)


def slash_shift_rank(c: PComplex, k: int, a: int) -> int:
    return c.slash_shift_rank(k, a)


def full_report(c: PComplex) -> "HomologyReport":
    return c.full_report()


def euler_characteristic(c: PComplex) -> CyclotomicInteger:
    return c.euler_characteristic()


def slash_euler(c: PComplex) -> CyclotomicInteger:
    return c.slash_euler()


# --- contracted 2-complexes C(k, a) --------------------------------------------


@dataclass(frozen=True)
class ContractedComplex:
    """The 2-complex ... -> C_{k+p-a} -> C_k -> C_{k-a} -> C_{k-p} -> ...

    ``slots`` lists the degrees m that carry a space, highest first; each
    slot's outgoing map is ∂^a when m ≡ k (mod p) and ∂^{p-a} otherwise.
    """

    k: int
    a: int
    modulus: int
    slots: tuple[int, ...]
    maps: dict[int, FpMatrix] = field(repr=False)
    dims: dict[int, int] = field(repr=False)

    def outgoing(self, m: int) -> FpMatrix:
        return self.maps[m]

    def step(self, m: int) -> int:
        return self.a if (m - self.k) % self.modulus == 0 else self.modulus - self.a

    def homology_dims(self) -> dict[int, int]:
        out = {}
        ranks = {m: rank(self.maps[m]) for m in self.slots}
        for m in self.slots:
            src = m + (self.modulus - self.step(m)) if (m - self.k) % self.modulus == 0 else m + self.a
            incoming = ranks.get(src, 0)
            out[m] = self.dims[m] - ranks[m] - incoming
        return out

    def is_complex(self) -> bool:
        for m in self.slots:
            tgt = m - self.step(m)
            if tgt in self.maps:
                prod = self.maps[tgt] @ self.maps[m]
                if not prod.is_zero():
                    return False
        return True


def contracted_complex(c: PComplex, k: int, a: int, divided: bool = False) -> ContractedComplex:
    """C(k, a); with ``divided=True`` (F Omega only) use phi^(b) in place of phi^b."""
    p = c.modulus
    if not 1 <= a <= p - 1:
        raise ValueError(f"a={a} outside [1, p-1]")
    if divided and not isinstance(c, OmegaComplex):
        raise TypeError("divided powers are only defined on F Omega")
    slots = [m for m in range(c.hi, c.lo - 1, -1) if (m - k) % p == 0 or (m - k + a) % p == 0]
    maps = {}
    for m in slots:
        b = a if (m - k) % p == 0 else p - a
        maps[m] = c.step_power(m, b) if divided else c.power(m, b)
    return ContractedComplex(k=k, a=a, modulus=p, slots=tuple(slots), maps=maps, dims={m: c.dim(m) for m in slots})


def contracted_homology_dims(c: PComplex, k: int, a: int, divided: bool = False) -> dict[int, int]:
    return contracted_complex(c, k, a, divided).homology_dims()


# --- reports --------------------------------------------------------------------


@dataclass
class HomologyReport:
    """All homology dimensions of a p-complex, keyed by (degree, index)."""

    n: int | None
    p: int
    degrees: tuple[int, int]
    slash: dict[tuple[int, int], int]
    backslash: dict[tuple[int, int], int]
    p_homology: dict[tuple[int, int], int]

    def nonzero_slash(self) -> dict[tuple[int, int], int]:
        return {key: d for key, d in self.slash.items() if d}

    def total_slash(self, k: int) -> int:
        """Total dimension of the (p-1)-complex H_k^/ = ⊕_a H_{k+a}^{/a}."""
        return sum(self.slash.get((k + a, a), 0) for a in range(self.p - 1))

    def to_dict(self) -> dict:
        def triples(d):
            return [[k, i, v] for (k, i), v in sorted(d.items())]

        return {
            "n": self.n,
            "p": self.p,
            "slash": triples(self.slash),
            "backslash": triples(self.backslash),
            "p_homology": triples(self.p_homology),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, doc: dict) -> "HomologyReport":
        def untriple(rows):
            return {(int(k), int(i)): int(v) for k, i, v in rows}

        slash = untriple(doc["slash"])
        degs = [k for k, _ in slash] or [0]
        return cls(
            n=doc.get("n"),
            p=int(doc["p"]),
            degrees=(min(degs), max(degs)),
            slash=slash,
            backslash=untriple(doc["backslash"]),
            p_homology=untriple(doc["p_homology"]),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyReport):
            return NotImplemented
        return self.to_dict() == other.to_dict()
