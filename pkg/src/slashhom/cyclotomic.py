"""Integers in Z[zeta], zeta a primitive p-th root of unity."""

from __future__ import annotations

from typing import Sequence

from .gf_linalg import check_modulus


class CyclotomicInteger:
    """sum_i c_i zeta^i with i < p-1, using zeta^(p-1) = -(1 + ... + zeta^(p-2)).

    For p = 2 the ring is Z (zeta = -1) and a value is a single integer.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        self.p = check_modulus(p)
        self.coeffs = _reduce(self.p, list(coeffs))

    @classmethod
    def zeta_power(cls, p: int, e: int, scale: int = 1) -> "CyclotomicInteger":
        c = [0] * p
        c[e % p] = scale
        return cls(p, c)

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        if other.p != self.p:
            raise ValueError("different cyclotomic rings")
        return CyclotomicInteger(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        if other.p != self.p:
            raise ValueError("different cyclotomic rings")
        return CyclotomicInteger(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        if other.p != self.p:
            raise ValueError("different cyclotomic rings")
        prod = [0] * self.p
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod[(i + j) % self.p] += a * b
        return CyclotomicInteger(self.p, prod)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicInteger) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicInteger(p={self.p}: {' + '.join(terms) or '0'})"


def _reduce(p: int, c: list[int]) -> tuple[int, ...]:
    # fold exponents mod p (zeta^p = 1), then eliminate zeta^(p-1)
    folded = [0] * p
    for i, v in enumerate(c):
        folded[i % p] += int(v)
    top = folded[p - 1]
    return tuple(v - top for v in folded[: p - 1])
