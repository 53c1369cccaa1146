"""Two-row tableaux, densities and thresholds, and bounded lattice paths.

A tableau of shape (n-k, k) has a first row of n-k entries and a second row
of k entries; ``t[i][j]`` is the entry in row ``i`` and column ``j``, both
counted from 1.  A lattice path is a word over ``R`` = (1,0) and ``U`` = (0,1);
the path of a standard tableau takes an up-step exactly at the entries of
its second row.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import BadStandardnessLevel, NotAlmostStandard, NotStandard, WindowViolation
from .gf_linalg import check_modulus
from .subsets import KSubset, OmegaBasis, Permutation, _check_n, elements_of, mask_of


class _Row(tuple):
    """A tuple indexed from 1."""

    def __getitem__(self, j):
        if isinstance(j, slice):
            return tuple(self)[j]
        if j < 1 or j > len(self):
            raise IndexError(f"column {j} outside [1, {len(self)}]")
        return tuple.__getitem__(self, j - 1)


@dataclass(frozen=True)
class TwoRowTableau:
    """An (n-k, k)-tableau filled with 1..n, each exactly once."""

    row1: tuple[int, ...]
    row2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "row1", tuple(int(x) for x in self.row1))
        object.__setattr__(self, "row2", tuple(int(x) for x in self.row2))
        n = len(self.row1) + len(self.row2)
        _check_n(n)
        if sorted(self.row1 + self.row2) != list(range(1, n + 1)):
            raise ValueError(f"rows {self.row1}/{self.row2} do not partition [1, {n}]")

    @property
    def n(self) -> int:
        return len(self.row1) + len(self.row2)

    @property
    def k(self) -> int:
        return len(self.row2)

    def __getitem__(self, i) -> _Row:
        if isinstance(i, tuple):
            r, c = i
            return self[r][c]
        if i == 1:
            return _Row(self.row1)
        if i == 2:
            return _Row(self.row2)
        raise IndexError(f"row {i} outside [1, 2]")

    def subset(self) -> KSubset:
        """{t}: the k-subset of second-row entries."""
        return KSubset(mask_of(self.row2), self.n)

    def permute(self, g: Permutation) -> "TwoRowTableau":
        """t g: every entry x replaced by g(x)."""
        return TwoRowTableau(tuple(g(x) for x in self.row1), tuple(g(x) for x in self.row2))

    def position(self, x: int) -> tuple[int, int]:
        if x in self.row1:
            return (1, self.row1.index(x) + 1)
        return (2, self.row2.index(x) + 1)

    def __str__(self):
        return ",".join(map(str, self.row1)) + "/" + ",".join(map(str, self.row2))

    @classmethod
    def parse(cls, text: str) -> "TwoRowTableau":
        """Inverse of ``str``: ``"1,3,5/2,4"``."""
        top, _, bottom = text.partition("/")

        def nums(s):
            return tuple(int(x) for x in s.split(",") if x.strip())

        return cls(nums(top), nums(bottom))


def tableau_from_subset(omega: KSubset | Iterable[int], n: int | None = None) -> TwoRowTableau:
    """t^omega: first row the complement, second row omega, both ascending."""
    if not isinstance(omega, KSubset):
        if n is None:
            raise ValueError("n is required when omega is given as elements")
        omega = KSubset.of(omega, n)
    if n is not None and omega.n != n:
        raise ValueError(f"subset of [{omega.n}] used with n={n}")
    return TwoRowTableau(omega.complement().elements, omega.elements)


def subset_from_tableau(t: TwoRowTableau) -> KSubset:
    return t.subset()


# --- density and threshold --------------------------------------------------


@dataclass(frozen=True)
class Density:
    """d_i = |omega ∩ [2i-1]| for i = 1..m, m = floor(n/2) + 1."""

    values: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i - 1]


def density(omega: KSubset | Iterable[int], n: int) -> Density:
    elems = omega.elements if isinstance(omega, KSubset) else tuple(omega)
    m = n // 2 + 1
    return Density(tuple(sum(1 for x in elems if x <= 2 * i - 1) for i in range(1, m + 1)))


def threshold(omega: KSubset | Iterable[int], n: int) -> int:
    d = density(omega, n)
    return max([0] + [i for i in range(1, d.m + 1) if d[i] == i])


def threshold_classes(n: int, k: int) -> dict[int, list[KSubset]]:
    """Omega_k split by threshold; every h in [0, m] is a key (possibly empty)."""
    m = n // 2 + 1
    out: dict[int, list[KSubset]] = {h: [] for h in range(m + 1)}
    for s in OmegaBasis(n, k):
        out[threshold(s, n)].append(s)
    return out


def threshold_rearrangement(omega: KSubset) -> TwoRowTableau:
    """t^omega with its second row rotated to (w_(h+1), ..., w_(k), w_(1), ..., w_(h)).

    For 2k <= n and threshold h > 0 the first k - h columns are
    column-standard; the result fixes {t} as a set.
    """
    h = threshold(omega, omega.n)
    w = omega.elements
    return TwoRowTableau(omega.complement().elements, w[h:] + w[:h])


# --- standardness -------------------------------------------------------------


def is_row_standard(t: TwoRowTableau) -> bool:
    return all(a < b for a, b in zip(t.row1, t.row1[1:])) and all(
        a < b for a, b in zip(t.row2, t.row2[1:])
    )


def is_column_standard(t: TwoRowTableau) -> bool:
    return all(t.row1[j] < t.row2[j] for j in range(min(t.k, t.n - t.k)))


def is_l_standard(t: TwoRowTableau, ell: int) -> bool:
    """First row increasing, second row increasing on columns 1..l and on l+1..k,
    and t_{1,j} < t_{2,j} for every j <= l.

    The split second row lets the last l entries of {t} sit under the first
    l columns, which is what makes the l-standard count C(n,k) - C(n,l-1).
    """
    if not 0 <= ell <= min(t.k, t.n - t.k):
        raise BadStandardnessLevel(f"level {ell} outside [0, {min(t.k, t.n - t.k)}]")
    r1, r2 = t.row1, t.row2

    def inc(xs):
        return all(a < b for a, b in zip(xs, xs[1:]))

    return inc(r1) and inc(r2[:ell]) and inc(r2[ell:]) and all(r1[j] < r2[j] for j in range(ell))


def is_standard(t: TwoRowTableau) -> bool:
    if 2 * t.k > t.n:
        return False
    return is_l_standard(t, t.k)


def is_almost_standard(t: TwoRowTableau) -> bool:
    """Column-standard with an increasing second row (first row unconstrained)."""
    if 2 * t.k > t.n:
        return False
    return is_column_standard(t) and all(a < b for a, b in zip(t.row2, t.row2[1:]))


def l_standard_tableaux(n: int, k: int, ell: int) -> list[TwoRowTableau]:
    """One l-standard tableau per admissible {t}, in colex order of {t}.

    For each k-subset w the candidate has first row w^c and second row
    (w_(k-l+1), ..., w_(k), w_(1), ..., w_(k-l)).
    """
    if not 0 <= ell <= min(k, n - k):
        raise BadStandardnessLevel(f"level {ell} outside [0, {min(k, n - k)}]")
    out = []
    for s in OmegaBasis(n, k):
        w = s.elements
        c = s.complement().elements
        r2 = w[k - ell :] + w[: k - ell]
        if all(c[j] < r2[j] for j in range(ell)):
            out.append(TwoRowTableau(c, r2))
    return out


def standard_tableaux(n: int, k: int) -> list[TwoRowTableau]:
    if 2 * k > n:
        return []
    return l_standard_tableaux(n, k, k)


def almost_standard_tableaux(n: int, k: int) -> Iterator[TwoRowTableau]:
    """Every almost-standard (n-k, k)-tableau (exponential; small n only)."""
    from itertools import permutations

    if 2 * k > n:
        return
    for s in OmegaBasis(n, k):
        w = s.elements
        rest = s.complement().elements
        for r1 in permutations(rest):
            if all(r1[j] < w[j] for j in range(k)):
                yield TwoRowTableau(r1, w)


# --- lattice paths ---------------------------------------------------------------


class _Infinity:
    """The unbounded marker for path bounds."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def parse_bound(text) -> int | _Infinity:
    if text is INF or (isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "∞")):
        return INF
    v = int(text)
    if v < 0:
        raise ValueError("path bounds are non-negative")
    return v


def _below(v: int, bound) -> bool:
    return bound is INF or v < bound


@dataclass(frozen=True)
class LatticePath:
    """Steps over {'R', 'U'} from (0, 0)."""

    steps: str

    def __post_init__(self):
        if set(self.steps) - {"R", "U"}:
            raise ValueError(f"path {self.steps!r} uses steps other than R and U")

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def k(self) -> int:
        return self.steps.count("U")

    def points(self) -> list[tuple[int, int]]:
        x = y = 0
        pts = [(0, 0)]
        for s in self.steps:
            if s == "R":
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return pts

    def is_bounded(self, s, t) -> bool:
        """-t < y - x < s at every point."""
        return all(_below(y - x, s) and _below(x - y, t) for x, y in self.points())

    def up_set(self) -> KSubset:
        return KSubset(mask_of(i for i, c in enumerate(self.steps, 1) if c == "U"), self.n)

    def __str__(self):
        return self.steps


def enumerate_paths(n: int, k: int, s, t) -> list[LatticePath]:
    """All (n-k, k)-open paths with -t < y - x < s, by pruned depth-first search."""
    s, t = parse_bound(s), parse_bound(t)
    out: list[LatticePath] = []
    if not (0 <= k <= n) or not (_below(0, s) and _below(0, t)):
        return out

    def rec(prefix: list[str], x: int, y: int):
        if x + y == n:
            out.append(LatticePath("".join(prefix)))
            return
        if x < n - k and _below(x + 1 - y, t):
            prefix.append("R")
            rec(prefix, x + 1, y)
            prefix.pop()
        if y < k and _below(y + 1 - x, s):
            prefix.append("U")
            rec(prefix, x, y + 1)
            prefix.pop()

    rec([], 0, 0)
    return out


def _binom(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


def count_paths_formula(n: int, k: int, s, t) -> int:
    """sum over j of C(n, k + j(s+t)) - C(n, k + j(s+t) + t), for finite s, t."""
    s, t = parse_bound(s), parse_bound(t)
    if s is INF or t is INF:
        raise ValueError("the closed form needs finite bounds")
    # the reflection sum only counts paths when the endpoint lies in the band
    if not (-t < 2 * k - n < s) or not 0 <= k <= n:
        return 0
    period = s + t
    total = 0
    jlo = -(k + t) // period - 1
    jhi = (n - k) // period + 1
    for j in range(jlo, jhi + 1):
        total += _binom(n, k + j * period) - _binom(n, k + j * period + t)
    return total


def count_paths(n: int, k: int, s, t) -> int:
    s, t = parse_bound(s), parse_bound(t)
    if s is INF or t is INF:
        return len(enumerate_paths(n, k, s, t))
    return count_paths_formula(n, k, s, t)


def path_of_tableau(t: TwoRowTableau) -> LatticePath:
    if not is_standard(t):
        raise NotStandard(f"{t} is not standard")
    up = set(t.row2)
    return LatticePath("".join("U" if a in up else "R" for a in range(1, t.n + 1)))


def tableau_of_path(path: LatticePath | str, n: int | None = None, k: int | None = None) -> TwoRowTableau:
    if isinstance(path, str):
        path = LatticePath(path)
    if n is not None and path.n != n or k is not None and path.k != k:
        raise ValueError(f"path {path} is not ({n}-{k},{k})-open")
    if not path.is_bounded(1, INF):
        raise NotStandard(f"path {path} crosses above the diagonal")
    return tableau_from_subset(path.up_set())


# --- p-standardness -----------------------------------------------------------------


def bad_entries(t: TwoRowTableau, p: int) -> list[int]:
    """Columns i with t_{2,i} >= 2i - 1 + p - 1."""
    if not is_standard(t):
        raise NotStandard(f"{t} is not standard")
    return [i for i in range(1, t.k + 1) if t.row2[i - 1] >= 2 * i - 1 + p - 1]


def is_p_standard_kleshchev(t: TwoRowTableau, p: int) -> bool:
    """t_{2,j} < t_{1,j+p-2} wherever column j+p-2 exists in the first row."""
    if not is_standard(t):
        raise NotStandard(f"{t} is not standard")
    for j in range(1, t.k + 1):
        c = j + p - 2
        if c <= t.n - t.k and not t.row2[j - 1] < t.row1[c - 1]:
            return False
    return True


def is_p_standard(t: TwoRowTableau, p: int) -> bool:
    """True iff the path of t stays (p-1)-bounded below."""
    p = check_modulus(p)
    return path_of_tableau(t).is_bounded(1, p - 1)


def p_standard_tableaux(n: int, k: int, p: int) -> list[TwoRowTableau]:
    return [t for t in standard_tableaux(n, k) if is_p_standard(t, p)]


# --- dimension formulas --------------------------------------------------------------


def in_window(n: int, k: int, p: int) -> bool:
    return p != 2 and 0 <= n - 2 * k <= p - 2


def dim_H0_formula(n: int, k: int, p: int) -> int:
    """sum over j of C(n, pj + k) - C(n, pj + k - 1) inside the window, else 0."""
    p = check_modulus(p)
    if not in_window(n, k, p):
        return 0
    total = 0
    for j in range(-(k // p) - 2, (n - k) // p + 2):
        total += _binom(n, p * j + k) - _binom(n, p * j + k - 1)
    return total


def dim_simple_erdmann(n: int, k: int, p: int) -> int:
    p = check_modulus(p)
    if p == 2 or not n - (p - 1) < 2 * k <= n:
        raise WindowViolation(f"(n, k, p) = ({n}, {k}, {p}) outside n-(p-1) < 2k <= n with p odd")
    total = 0
    for j in range(k // p + 1):
        total += _binom(n, k - p * j) - _binom(n, k - p * j - 1)
        total -= _binom(n, n - k - p * (j + 1) + 1) - _binom(n, n - k - p * (j + 1))
    return total


# --- the order on almost-standard tableaux ------------------------------------------------


def _prefix_counts(t: TwoRowTableau) -> list[int]:
    mask = mask_of(t.row2)
    out, c = [], 0
    for i in range(1, t.n + 1):
        c += (mask >> (i - 1)) & 1
        out.append(c)
    return out


def ast_precedes(t: TwoRowTableau, t2: TwoRowTableau) -> bool:
    """t ⪯ t2 on almost-standard tableaux of the same shape."""
    for x in (t, t2):
        if not is_almost_standard(x):
            raise NotAlmostStandard(f"{x} is not almost standard")
    if t.n != t2.n or t.k != t2.k:
        raise ValueError("tableaux of different shapes")
    if t == t2:
        return True
    a, b = _prefix_counts(t), _prefix_counts(t2)
    if all(x <= y for x, y in zip(a, b)) and a != b:
        return True
    if set(t.row2) != set(t2.row2):
        return False
    for w in sorted(t.row1):
        pa, pb = t.position(w), t2.position(w)
        if pa != pb:
            return pa[1] > pb[1]
    return False


def ast_key(t: TwoRowTableau) -> tuple:
    """A sort key that strictly increases along every strict ⪯ relation."""
    pos = {x: j for j, x in enumerate(t.row1)}
    return (sum(_prefix_counts(t)), tuple(-pos[w] for w in sorted(t.row1)))
