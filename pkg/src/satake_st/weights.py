"""Type A_{N-1} weight combinatorics and spectral parameters.

Weights of SL(N)/SU(N) are stored in GL-style partition coordinates: an
integer vector of length N read modulo the all-ones vector, canonicalized
so the minimum entry is 0.  This keeps every computation in exact integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "DominantWeight",
    "WeightVector",
    "CoefficientIndex",
    "SpectralParameter",
    "aleph",
    "aleph_inv",
    "b_entry",
    "b_matrix",
    "langlands",
    "laplace_eigenvalue",
    "is_dominant",
]


def _check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"rank parameter must be an integer >= 2, got {n!r}")


@dataclass(frozen=True)
class DominantWeight:
    """Highest weight of an SU(N) irreducible: a partition with last part 0."""

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        _check_rank(self.n)
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.n:
            raise ValueError(f"expected {self.n} parts, got {len(parts)}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        if parts[-1] != 0:
            raise ValueError(f"normalized parts must end in 0: {parts}")
        if parts[0] < 0:
            raise ValueError(f"parts must be non-negative: {parts}")

    @classmethod
    def zero(cls, n: int) -> "DominantWeight":
        return cls(n, (0,) * n)

    @classmethod
    def fundamental(cls, n: int, k: int) -> "DominantWeight":
        """Highest weight of the k-th exterior power of the defining module."""
        if not 1 <= k <= n - 1:
            raise ValueError(f"fundamental index must be in 1..{n - 1}, got {k}")
        return cls(n, (1,) * k + (0,) * (n - k))

    @property
    def is_zero(self) -> bool:
        return self.parts[0] == 0

    def size(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class WeightVector:
    """General integral weight, canonicalized so min(coords) == 0."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        _check_rank(self.n)
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coords, got {len(coords)}")
        m = min(coords)
        if m != 0:
            coords = tuple(c - m for c in coords)
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True)
class CoefficientIndex:
    """Index (l_1, ..., l_{N-1}) of a prime-power Fourier coefficient."""

    n: int
    l: tuple[int, ...]

    def __post_init__(self):
        _check_rank(self.n)
        l = tuple(int(v) for v in self.l)
        object.__setattr__(self, "l", l)
        if len(l) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} entries, got {len(l)}")
        if any(v < 0 for v in l):
            raise ValueError(f"entries must be non-negative: {l}")

    @classmethod
    def zero(cls, n: int) -> "CoefficientIndex":
        return cls(n, (0,) * (n - 1))

    @classmethod
    def unit(cls, n: int, position: int) -> "CoefficientIndex":
        """Index with a single 1 at 1-based position."""
        if not 1 <= position <= n - 1:
            raise ValueError(f"position must be in 1..{n - 1}, got {position}")
        l = [0] * (n - 1)
        l[position - 1] = 1
        return cls(n, tuple(l))


@dataclass(frozen=True)
class SpectralParameter:
    """Archimedean parameter nu in C^{N-1}."""

    n: int
    nu: tuple[complex, ...]

    def __post_init__(self):
        _check_rank(self.n)
        nu = tuple(complex(v) for v in self.nu)
        object.__setattr__(self, "nu", nu)
        if len(nu) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} entries, got {len(nu)}")


def aleph(idx: CoefficientIndex) -> DominantWeight:
    """Bijection from coefficient indices onto dominant weights.

    parts[i-1] = l_1 + ... + l_{N-i}; tail partial sums of the index.
    """
    n = idx.n
    parts = [0] * n
    running = 0
    # parts[n-1] = 0, parts[n-2] = l_1, ..., parts[0] = l_1 + ... + l_{n-1}
    for i in range(n - 2, -1, -1):
        running += idx.l[n - 2 - i]
        parts[i] = running
    return DominantWeight(n, tuple(parts))


def aleph_inv(mu: DominantWeight) -> CoefficientIndex:
    """Inverse of :func:`aleph`: successive differences read from the tail."""
    n = mu.n
    l = tuple(mu.parts[n - k - 1] - mu.parts[n - k] for k in range(1, n))
    return CoefficientIndex(n, l)


def b_entry(i: int, j: int, n: int) -> int:
    """b_ij = ij when i+j <= N, else (N-i)(N-j)."""
    _check_rank(n)
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"indices must be in 1..{n - 1}, got ({i}, {j})")
    if i + j <= n:
        return i * j
    return (n - i) * (n - j)


def b_matrix(n: int) -> np.ndarray:
    """The (N-1)x(N-1) integer matrix of b_entry values."""
    return np.array(
        [[b_entry(i, j, n) for j in range(1, n)] for i in range(1, n)], dtype=np.int64
    )


@lru_cache(maxsize=None)
def _langlands_matrix(n: int) -> np.ndarray:
    """Integer matrix L with ell = L @ nu; every column of L sums to 0 exactly."""
    b = b_matrix(n)
    rows = np.empty((n, n - 1), dtype=np.int64)
    rows[0] = b[:, n - 2]  # B_{N-1}
    for i in range(2, n):
        rows[i - 1] = b[:, n - i - 1] - b[:, n - i]  # B_{N-i} - B_{N-i+1}
    rows[n - 1] = -b[:, 0]  # -B_1
    rows.setflags(write=False)
    return rows


def langlands(nu: SpectralParameter) -> np.ndarray:
    """Length-N parameter ell derived from nu; entries sum to zero."""
    mat = _langlands_matrix(nu.n)
    return mat.astype(np.complex128) @ np.asarray(nu.nu, dtype=np.complex128)


def laplace_eigenvalue(nu: SpectralParameter) -> complex:
    """(N^3 - N)/24 - (1/2) sum ell_i^2."""
    n = nu.n
    ell = langlands(nu)
    return complex((n**3 - n) / 24 - 0.5 * np.sum(ell * ell))


def is_dominant(w: WeightVector) -> bool:
    """True iff the canonical coordinates are non-increasing."""
    return all(a >= b for a, b in zip(w.coords, w.coords[1:]))
