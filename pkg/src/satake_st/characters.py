"""Exact characters of SU(N) irreducibles.

Weight multiplicities come from Freudenthal's recursion in integer
arithmetic; tensor products are decomposed by highest-weight peeling
against the exact product table; numeric character values use the
Jacobi-Trudi determinant with complete homogeneous symmetric functions
(finite at coincident eigenvalues, unlike the bialternant ratio).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .weights import DominantWeight, WeightVector, aleph_inv

__all__ = [
    "CharacterTable",
    "TensorSpec",
    "TermBudgetExceeded",
    "DEFAULT_TERM_BUDGET",
    "weight_table",
    "dim",
    "product",
    "spec_product_table",
    "tensor_decompose",
    "trivial_multiplicity",
    "eval_char",
    "eval_char_bialternant",
    "dominant_part_sum",
    "specialization_bound_n3",
]

DEFAULT_TERM_BUDGET = 10**6


class TermBudgetExceeded(RuntimeError):
    """A character table would exceed the configured number of terms."""


@dataclass(frozen=True)
class CharacterTable:
    """Finite weight-multiplicity map of a (virtual) character.

    Keys are canonical weight coordinate tuples (min entry 0); values are
    integers, negative only in intermediate virtual characters.  Treat
    instances as immutable values: operations return new tables.
    """

    n: int
    terms: dict

    def multiplicity(self, w: WeightVector | tuple) -> int:
        key = w.coords if isinstance(w, WeightVector) else _canon(w)
        return self.terms.get(key, 0)

    def mass(self) -> int:
        """Sum of all multiplicities (the dimension, for a genuine character)."""
        return sum(self.terms.values())


@dataclass(frozen=True)
class TensorSpec:
    """Exponent vector (i_1, i'_1, ..., i_{N-1}, i'_{N-1}).

    Encodes the product prod_k chi_k^{i_k} * chi_{N-k}^{i'_k}, i.e. the
    character of tensor powers of the fundamental modules with primed
    exponents attached to the conjugate (N-k)-th factor.
    """

    n: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) != 2 * (self.n - 1):
            raise ValueError(
                f"expected {2 * (self.n - 1)} exponents for N={self.n}, got {len(exps)}"
            )
        if any(e < 0 for e in exps):
            raise ValueError(f"exponents must be non-negative: {exps}")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def plain(self, k: int) -> int:
        """Exponent i_k."""
        return self.exponents[2 * (k - 1)]

    def conjugate(self, k: int) -> int:
        """Exponent i'_k."""
        return self.exponents[2 * (k - 1) + 1]

    def factor_weights(self) -> list[DominantWeight]:
        """Fundamental highest weights of the factors, with multiplicity."""
        out = []
        for k in range(1, self.n):
            out.extend([DominantWeight.fundamental(self.n, k)] * self.plain(k))
            out.extend([DominantWeight.fundamental(self.n, self.n - k)] * self.conjugate(k))
        return out


def _canon(coords) -> tuple[int, ...]:
    t = tuple(int(c) for c in coords)
    m = min(t)
    if m:
        t = tuple(c - m for c in t)
    return t


def _height_key(coords: tuple[int, ...]) -> tuple:
    """Sort key strictly increasing along the dominance order.

    For same-coset weights mu, nu: mu dominates nu implies
    key(mu) > key(nu).  N * sum_k f_k where f_k are the fundamental-weight
    coordinates, kept integral; ties broken lexicographically.
    """
    n = len(coords)
    total = sum(coords)
    height = sum((n - 1 - i) * c * n for i, c in enumerate(coords)) - total * n * (n - 1) // 2
    return (height, coords)


def dim(mu: DominantWeight) -> int:
    """Weyl dimension formula: prod_{i<j} (m_i - m_j + j - i)/(j - i)."""
    parts = mu.parts
    n = mu.n
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def _dominated_partitions(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Partitions of |lam| into len(lam) non-negative parts dominated by lam."""
    n = len(lam)
    total = sum(lam)
    out = []

    def rec(prefix, remaining, prev, prefix_sum):
        i = len(prefix)
        if i == n - 1:
            last = remaining
            if 0 <= last <= prev:
                out.append(tuple(prefix) + (last,))
            return
        lam_prefix = sum(lam[: i + 1])
        # next part p: p <= prev, prefix_sum + p <= lam_prefix (dominance),
        # and the tail must be fillable: remaining - p <= p * (n - i - 1)
        lo = -(-remaining // (n - i))  # ceil(remaining / slots)
        hi = min(prev, lam_prefix - prefix_sum, remaining)
        for p in range(hi, lo - 1, -1):
            rec(prefix + [p], remaining - p, p, prefix_sum + p)

    rec([], total, total, 0)
    return out


def _orbit(coords: tuple[int, ...]):
    """Distinct permutations of a coordinate tuple."""
    return set(itertools.permutations(coords))


@lru_cache(maxsize=None)
def _weight_table_terms(n: int, parts: tuple[int, ...]) -> dict:
    """Full weight multiplicity map of the irreducible with highest weight parts.

    Freudenthal recursion over dominant weights, extended by Weyl symmetry.
    Cached; safe for concurrent readers (lru_cache locks insertion).
    """
    lam = parts
    rho = tuple(range(n - 1, -1, -1))
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    lam_rho_sq = sum(a * a for a in lam_rho)

    pos_roots = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            pos_roots.append(tuple(r))

    dominants = sorted(_dominated_partitions(lam), key=_height_key, reverse=True)
    mult: dict[tuple[int, ...], int] = {}
    for mu in dominants:
        if mu == lam:
            mult[mu] = 1
            continue
        acc = 0
        for alpha in pos_roots:
            k = 1
            while True:
                shifted = tuple(m + k * a for m, a in zip(mu, alpha))
                key = tuple(sorted(shifted, reverse=True))
                m_up = mult.get(key, 0)
                if m_up == 0:
                    # weights of V_lam dominated by lam form a saturated set:
                    # once we leave it along alpha we never re-enter
                    break
                acc += m_up * sum(s * a for s, a in zip(shifted, alpha))
                k += 1
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        den = lam_rho_sq - sum(a * a for a in mu_rho)
        assert den > 0 and (2 * acc) % den == 0
        m = 2 * acc // den
        if m:
            mult[mu] = m

    table: dict[tuple[int, ...], int] = {}
    for mu, m in mult.items():
        for w in _orbit(mu):
            table[_canon(w)] = m
    return table


def weight_table(mu: DominantWeight, budget: int = DEFAULT_TERM_BUDGET) -> CharacterTable:
    """Exact weight multiplicities of the irreducible with highest weight mu."""
    est = dim(mu)
    if est > budget:
        raise TermBudgetExceeded(
            f"weight table of {mu.parts} has {est} weights (budget {budget})"
        )
    return CharacterTable(mu.n, dict(_weight_table_terms(mu.n, mu.parts)))


def product(
    a: CharacterTable, b: CharacterTable, budget: int = DEFAULT_TERM_BUDGET
) -> CharacterTable:
    """Convolution of weight multiplicity maps (product of characters)."""
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} != {b.n}")
    if len(a.terms) * len(b.terms) > 64 * budget:
        raise TermBudgetExceeded(
            f"product of {len(a.terms)} x {len(b.terms)} terms exceeds budget {budget}"
        )
    out: dict[tuple[int, ...], int] = {}
    for wa, ma in a.terms.items():
        for wb, mb in b.terms.items():
            key = _canon(tuple(x + y for x, y in zip(wa, wb)))
            new = out.get(key, 0) + ma * mb
            if new:
                out[key] = new
            elif key in out:
                del out[key]
    if len(out) > budget:
        raise TermBudgetExceeded(f"product table has {len(out)} terms (budget {budget})")
    return CharacterTable(a.n, out)


def _trivial_table(n: int) -> CharacterTable:
    return CharacterTable(n, {(0,) * n: 1})


def spec_product_table(spec: TensorSpec, budget: int = DEFAULT_TERM_BUDGET) -> CharacterTable:
    """Weight table of prod_k chi_k^{i_k} chi_{N-k}^{i'_k}."""
    table = _trivial_table(spec.n)
    for w in spec.factor_weights():
        table = product(table, weight_table(w, budget), budget)
    return table


def tensor_decompose(
    spec: TensorSpec, budget: int = DEFAULT_TERM_BUDGET
) -> dict[DominantWeight, int]:
    """Multiplicities a_mu in the tensor product encoded by spec.

    Highest-weight peeling: repeatedly remove a_w copies of the irreducible
    table at the dominance-maximal surviving weight w.
    """
    remaining = dict(spec_product_table(spec, budget).terms)
    out: dict[DominantWeight, int] = {}
    while remaining:
        w = max(remaining, key=_height_key)
        c = remaining[w]
        # the maximal weight of a W-invariant table is dominant, and its
        # coefficient is a genuine multiplicity
        assert all(x >= y for x, y in zip(w, w[1:])), f"peeled non-dominant weight {w}"
        assert c > 0, f"negative multiplicity {c} at {w}: peeling bug"
        mu = DominantWeight(spec.n, w)
        out[mu] = c
        for wk, mk in weight_table(mu, budget).terms.items():
            new = remaining.get(wk, 0) - c * mk
            if new:
                remaining[wk] = new
            else:
                remaining.pop(wk, None)
    return out


def trivial_multiplicity(spec: TensorSpec, budget: int = DEFAULT_TERM_BUDGET) -> int:
    """Multiplicity a_0 of the trivial module in the tensor product."""
    zero = DominantWeight.zero(spec.n)
    return tensor_decompose(spec, budget).get(zero, 0)


def _as_alpha_array(alphas, n: int) -> np.ndarray:
    arr = np.asarray(alphas, dtype=np.complex128)
    if arr.shape[-1] != n:
        raise ValueError(f"expected last axis of length {n}, got shape {arr.shape}")
    if np.any(arr == 0):
        raise ValueError("zero eigenvalue in character evaluation")
    return arr


def eval_char(mu: DominantWeight, alphas) -> complex | np.ndarray:
    """Schur polynomial s_mu at the eigenvalue tuple(s) alphas.

    Vectorized over leading axes: alphas of shape (..., N) gives a result
    of shape (...).  Jacobi-Trudi determinant in the complete homogeneous
    basis, built from power sums via Newton's identities.
    """
    arr = _as_alpha_array(alphas, mu.n)
    lam = [p for p in mu.parts if p > 0]
    m = len(lam)
    if m == 0:
        out = np.ones(arr.shape[:-1], dtype=np.complex128)
        return complex(out) if out.ndim == 0 else out
    r_max = lam[0] + m - 1
    shape = arr.shape[:-1]
    powers = np.ones(arr.shape, dtype=np.complex128)
    h = np.zeros((r_max + 1,) + shape, dtype=np.complex128)
    h[0] = 1.0
    p = np.zeros((r_max + 1,) + shape, dtype=np.complex128)
    for r in range(1, r_max + 1):
        powers = powers * arr
        p[r] = powers.sum(axis=-1)
        acc = np.zeros(shape, dtype=np.complex128)
        for i in range(1, r + 1):
            acc += p[i] * h[r - i]
        h[r] = acc / r
    mat = np.zeros(shape + (m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            idx = lam[i] - i + j
            if idx >= 0:
                mat[..., i, j] = h[idx]
    out = np.linalg.det(mat) if m > 1 else mat[..., 0, 0]
    return complex(out) if out.ndim == 0 else out


def eval_char_bialternant(mu: DominantWeight, alphas) -> complex | np.ndarray:
    """Ratio-of-alternants evaluation; valid only for distinct eigenvalues.

    Kept as an independent cross-check of :func:`eval_char`.
    """
    arr = _as_alpha_array(alphas, mu.n)
    n = mu.n
    exps_num = np.array([mu.parts[i] + n - 1 - i for i in range(n)])
    exps_den = np.arange(n - 1, -1, -1)
    num = np.linalg.det(arr[..., :, None] ** exps_num[None, :])
    den = np.linalg.det(arr[..., :, None] ** exps_den[None, :])
    out = num / den
    return complex(out) if out.ndim == 0 else out


def dominant_part_sum(
    spec: TensorSpec, p: int, alpha: float, budget: int = DEFAULT_TERM_BUDGET
) -> float:
    """Sum of product-table coefficients at dominant weights, weighted p^(alpha*|l|).

    |l| is the coordinate sum of the coefficient index of the weight; uses
    the raw product-table coefficients, an upper bound for the
    decomposition multiplicities.
    """
    table = spec_product_table(spec, budget)
    total = 0.0
    for w, c in table.terms.items():
        if all(x >= y for x, y in zip(w, w[1:])):
            l = aleph_inv(DominantWeight(spec.n, w)).l
            total += c * float(p) ** (alpha * sum(l))
    return total


def specialization_bound_n3(spec: TensorSpec, p: int, alpha: float) -> float:
    """(p^alpha + 1 + p^{-alpha})^(total degree); closed-form bound, N=3 only."""
    if spec.n != 3:
        raise ValueError(f"closed-form bound requires N=3, got N={spec.n}")
    x = float(p) ** alpha
    return (x + 1.0 + 1.0 / x) ** spec.degree
