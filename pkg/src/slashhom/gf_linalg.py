"""Dense exact linear algebra over the prime field GF(p).

Matrices act on column vectors: ``M @ v``.  A :class:`Subspace` stores its
basis as the rows of a matrix in reduced row echelon form, so two subspaces
are equal exactly when their basis arrays are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from ._kernels import rref_inplace, work_dtype
from .errors import AmbientMismatch, NotASubspace, NotPrimeError

MAX_MODULUS = 2**16
_FLOAT_EXACT = 2**53


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise NotPrimeError(f"modulus {p} is not prime")
    if p >= MAX_MODULUS:
        raise NotPrimeError(f"modulus {p} exceeds the supported bound 2**16")
    return p


@dataclass(frozen=True)
class FpScalar:
    """An element of GF(modulus), always stored reduced."""

    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise AmbientMismatch("scalars over different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FpScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FpScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FpScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FpScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.modulus)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return FpScalar(pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * FpScalar(self._coerce(other), self.modulus).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpScalar(pow(self.value, e, self.modulus), self.modulus)

    def __int__(self):
        return self.value


class FpMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("_a", "modulus")

    def __init__(self, entries, modulus: int, shape: tuple[int, int] | None = None):
        self.modulus = check_modulus(modulus)
        a = np.array(entries, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        elif a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array or an explicit shape")
        a = np.mod(a, self.modulus)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray, modulus: int) -> "FpMatrix":
        # trusted internal constructor: a is already reduced int64
        m = cls.__new__(cls)
        m.modulus = modulus
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "FpMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), check_modulus(modulus))

    @classmethod
    def identity(cls, size: int, modulus: int) -> "FpMatrix":
        return cls._wrap(np.eye(size, dtype=np.int64), check_modulus(modulus))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def entries(self) -> list[int]:
        return self._a.ravel().tolist()

    def to_lists(self) -> list[list[int]]:
        return self._a.tolist()

    def transpose(self) -> "FpMatrix":
        return FpMatrix._wrap(self._a.T, self.modulus)

    @property
    def T(self) -> "FpMatrix":
        return self.transpose()

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if not isinstance(other, FpMatrix):
            return NotImplemented
        if other.modulus != self.modulus:
            raise AmbientMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FpMatrix._wrap(mat_mul(self._a, other._a, self.modulus), self.modulus)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        if other.modulus != self.modulus or other.shape != self.shape:
            raise AmbientMismatch("incompatible matrices")
        return FpMatrix._wrap((self._a + other._a) % self.modulus, self.modulus)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        if other.modulus != self.modulus or other.shape != self.shape:
            raise AmbientMismatch("incompatible matrices")
        return FpMatrix._wrap((self._a - other._a) % self.modulus, self.modulus)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix._wrap(self._a * (int(c) % self.modulus) % self.modulus, self.modulus)

    def apply(self, v: Sequence[int]) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.modulus
        return mat_mul(self._a, v.reshape(-1, 1), self.modulus).ravel()

    def is_zero(self) -> bool:
        return not self._a.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.shape == other.shape
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self):
        return hash((self.modulus, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols}, p={self.modulus})"


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of reduced integer arrays, reduced mod p."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        # every partial sum is an integer below 2**53, so BLAS is exact
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, int, np.ndarray]:
    work = np.ascontiguousarray(a, dtype=work_dtype(a.shape, p))
    if work is a:
        work = work.copy()
    rank, piv = rref_inplace(work, p)
    return work.astype(np.int64), rank, piv


def rref(m: FpMatrix) -> tuple[FpMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank and pivot columns.

    The returned matrix keeps the shape of ``m`` (zero rows at the bottom).
    """
    out, rank, piv = _rref_array(m.array, m.modulus)
    return FpMatrix._wrap(out, m.modulus), rank, tuple(int(c) for c in piv)


def rank(m: FpMatrix) -> int:
    return rref(m)[1]


def _as_rows(a: np.ndarray, width: int) -> np.ndarray:
    """View ``a`` as a stack of row vectors of the given width (width 0 allowed)."""
    if width == 0:
        return np.zeros((a.shape[0] if a.ndim == 2 else 0, 0), dtype=np.int64)
    return a.reshape(-1, width)


class Subspace:
    """A subspace of GF(p)^ambient_dim held as an RREF basis (one row per vector)."""

    __slots__ = ("ambient_dim", "modulus", "_basis", "_pivots")

    def __init__(self, ambient_dim: int, modulus: int, basis: FpMatrix | None = None):
        self.ambient_dim = int(ambient_dim)
        self.modulus = check_modulus(modulus)
        if basis is None:
            arr = np.zeros((0, self.ambient_dim), dtype=np.int64)
        else:
            if basis.cols != self.ambient_dim and basis.rows > 0:
                raise AmbientMismatch("basis vectors have the wrong length")
            arr = _as_rows(basis.array, self.ambient_dim)
        red, r, piv = _rref_array(arr, self.modulus)
        self._basis = FpMatrix._wrap(red[:r], self.modulus)
        self._pivots = np.asarray(piv, dtype=np.int64)

    @classmethod
    def _from_rref(cls, ambient_dim: int, modulus: int, rows: np.ndarray, pivots) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s.modulus = modulus
        s._basis = FpMatrix._wrap(_as_rows(rows, ambient_dim), modulus)
        s._pivots = np.asarray(pivots, dtype=np.int64)
        return s

    @classmethod
    def zero(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls._from_rref(ambient_dim, check_modulus(modulus), np.zeros((0, ambient_dim), np.int64), [])

    @classmethod
    def full(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls._from_rref(
            ambient_dim, check_modulus(modulus), np.eye(ambient_dim, dtype=np.int64), np.arange(ambient_dim)
        )

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_dim: int, modulus: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        if not rows:
            return cls.zero(ambient_dim, modulus)
        return cls(ambient_dim, modulus, FpMatrix(rows, modulus))

    @property
    def basis(self) -> FpMatrix:
        return self._basis

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._pivots)

    @property
    def dim(self) -> int:
        return self._basis.rows

    def __len__(self):
        return self.dim

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Normal form of each row of ``vectors`` modulo this subspace."""
        v = _as_rows(np.asarray(vectors, dtype=np.int64), self.ambient_dim) % self.modulus
        if self.dim == 0 or v.shape[0] == 0:
            return v
        coeff = v[:, self._pivots]
        return (v - mat_mul(coeff, self._basis.array, self.modulus)) % self.modulus

    def contains_vector(self, v: Sequence[int]) -> bool:
        return not self.reduce(np.asarray(v).reshape(1, -1)).any()

    def coordinates(self, v: Sequence[int]) -> np.ndarray:
        """Coefficients of ``v`` in the RREF basis; raises NotASubspace if v is outside."""
        v = np.asarray(v, dtype=np.int64) % self.modulus
        if self.reduce(v.reshape(1, -1)).any():
            raise NotASubspace("vector is not in the subspace")
        return v[self._pivots].copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.modulus == other.modulus
            and self._basis == other._basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.modulus, self._basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.modulus})"


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.modulus != b.modulus:
        raise AmbientMismatch(
            f"ambient GF({a.modulus})^{a.ambient_dim} vs GF({b.modulus})^{b.ambient_dim}"
        )


def nullspace(m: FpMatrix) -> Subspace:
    """{v : m v = 0} as a canonical subspace of GF(p)^cols."""
    p = m.modulus
    cols = m.cols
    red, r, piv = _rref_array(m.array, p)
    free = np.setdiff1d(np.arange(cols), piv)
    if free.size == 0:
        return Subspace.zero(cols, p)
    basis = np.zeros((free.size, cols), dtype=np.int64)
    basis[np.arange(free.size), free] = 1
    if r:
        basis[:, piv] = (-red[:r][:, free].T) % p
    return Subspace(cols, p, FpMatrix._wrap(basis, p))


def column_space(m: FpMatrix) -> Subspace:
    return Subspace(m.rows, m.modulus, m.transpose())


def row_space(m: FpMatrix) -> Subspace:
    return Subspace(m.cols, m.modulus, m)


def _merge(a: Subspace, extra: np.ndarray) -> Subspace:
    """a + span(extra), where the rows of ``extra`` are already reduced modulo a."""
    p = a.modulus
    red, r, piv = _rref_array(extra, p)
    if r == 0:
        return a
    red = red[:r]
    base = a.basis.array
    if base.shape[0]:
        base = (base - mat_mul(base[:, piv], red, p)) % p
    rows = np.vstack([base, red])
    pivots = np.concatenate([a._pivots, piv])
    order = np.argsort(pivots, kind="stable")
    return Subspace._from_rref(a.ambient_dim, p, rows[order], pivots[order])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.dim < b.dim:
        a, b = b, a
    if b.dim == 0:
        return a
    return _merge(a, a.reduce(b.basis.array))


def intersection_dim(a: Subspace, b: Subspace) -> int:
    """dim(a ∩ b) from the modular identity."""
    return a.dim + b.dim - subspace_sum(a, b).dim


def annihilator(a: Subspace) -> Subspace:
    """{w : <w, v> = 0 for all v in a}."""
    if a.dim == 0:
        return Subspace.full(a.ambient_dim, a.modulus)
    return nullspace(a.basis)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    p = a.modulus
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, p)
    if a.dim > b.dim:
        a, b = b, a
    ann = annihilator(b)
    if ann.dim == 0:
        return a
    # x = c @ A lies in b iff (c @ A) @ W^T = 0
    constraints = mat_mul(a.basis.array, ann.basis.array.T, p)
    coeffs = nullspace(FpMatrix._wrap(constraints.T.copy(), p))
    if coeffs.dim == 0:
        out = Subspace.zero(a.ambient_dim, p)
    else:
        out = Subspace(a.ambient_dim, p, FpMatrix._wrap(mat_mul(coeffs.basis.array, a.basis.array, p), p))
    expected = a.dim + b.dim - subspace_sum(a, b).dim
    assert out.dim == expected, "intersection violates dim(A)+dim(B)=dim(A+B)+dim(A∩B)"
    return out


def contains(a: Subspace, b: Subspace) -> bool:
    """True when b ⊆ a."""
    _check_same(a, b)
    if b.dim > a.dim:
        return False
    return not a.reduce(b.basis.array).any()


def quotient_dim(a: Subspace, b: Subspace) -> int:
    if not contains(a, b):
        raise NotASubspace("quotient_dim(a, b) requires b ⊆ a")
    return a.dim - b.dim


def quotient_basis(num: Subspace, den: Subspace) -> FpMatrix:
    """Canonical coset representatives of num / den.

    Each numerator basis row is reduced modulo ``den`` and the residues are
    put in RREF; the rows returned are zero on den's pivot columns.  ``den``
    need not lie inside ``num``; the result spans (num + den) / den.
    """
    _check_same(num, den)
    res = den.reduce(num.basis.array)
    red, r, _ = _rref_array(res, num.modulus)
    return FpMatrix._wrap(red[:r], num.modulus)


def solve(m: FpMatrix, b: Sequence[int]) -> np.ndarray:
    """One solution x of m @ x = b; raises NotASubspace when b is not in the column space.

    Free variables are set to 0, so the answer is unique when m has full column rank.
    """
    p = m.modulus
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if b.shape[0] != m.rows:
        raise AmbientMismatch(f"right-hand side has length {b.shape[0]}, expected {m.rows}")
    aug = np.concatenate([m.array, b.reshape(-1, 1)], axis=1)
    red, r, piv = _rref_array(aug, p)
    if r and piv[r - 1] == m.cols:
        raise NotASubspace("system is inconsistent")
    x = np.zeros(m.cols, dtype=np.int64)
    for row, c in enumerate(piv[:r]):
        x[c] = red[row, m.cols]
    return x
