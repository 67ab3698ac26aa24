"""Satake parameters as canonical Weyl-coset representatives.

A parameter is an N-tuple of nonzero complex numbers with product 1, fixed
to a deterministic coset representative by sorting on (principal argument
in [0, 2pi), then modulus).  Temperedness and the known containment
region are tolerance-based membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import eval_char
from .weights import CoefficientIndex, aleph

__all__ = [
    "SatakeParameter",
    "canonicalize",
    "canonicalize_batch",
    "in_T0",
    "in_T1",
    "coefficient",
    "varrho",
    "hecke_check_n3",
]

PRODUCT_TOL = 1e-6


@dataclass(frozen=True)
class SatakeParameter:
    """Canonically ordered eigenvalue tuple with product 1."""

    n: int
    alphas: tuple[complex, ...]
    p_hint: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"rank must be >= 2, got {self.n}")
        alphas = tuple(complex(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(alphas)}")
        prod = np.prod(np.asarray(alphas))
        if abs(prod - 1.0) > 1e-12:
            raise ValueError(
                f"eigenvalue product {prod} deviates from 1 beyond 1e-12; "
                "build parameters through canonicalize()"
            )

    def as_array(self) -> np.ndarray:
        return np.asarray(self.alphas, dtype=np.complex128)


def _sort_canonical(arr: np.ndarray) -> np.ndarray:
    """Sort rows of (..., N) by (argument in [0, 2pi), modulus)."""
    args = np.mod(np.angle(arr), 2 * np.pi)
    mods = np.abs(arr)
    order = np.lexsort((mods, args), axis=-1)
    return np.take_along_axis(arr, order, axis=-1)


def canonicalize_batch(raw: np.ndarray) -> np.ndarray:
    """Canonicalize a batch of eigenvalue tuples of shape (..., N).

    Rescales each tuple by the minimal-rotation N-th root of the inverse
    product (the principal root), then sorts canonically.
    """
    arr = np.asarray(raw, dtype=np.complex128)
    n = arr.shape[-1]
    if np.any(arr == 0):
        raise ValueError("zero entry in Satake parameter")
    prod = np.prod(arr, axis=-1)
    rel = np.abs(prod - 1.0)
    if np.any(rel > PRODUCT_TOL):
        raise ValueError(
            f"product deviates from 1 by {float(np.max(rel)):.3g} (tolerance {PRODUCT_TOL})"
        )
    # leave rows whose product already sits at roundoff level untouched, so
    # canonicalization is idempotent (re-scaling by prod^(-1/n) ~ 1 would
    # drift entries by an ulp on every pass)
    scale = np.where(rel > 1e-13, prod ** (-1.0 / n), 1.0)
    return _sort_canonical(arr * scale[..., None])


def canonicalize(raw, p_hint: int | None = None) -> SatakeParameter:
    """Build the canonical representative of an eigenvalue tuple."""
    arr = np.asarray(raw, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"expected a flat eigenvalue tuple, got shape {arr.shape}")
    fixed = canonicalize_batch(arr)
    return SatakeParameter(arr.shape[0], tuple(fixed), p_hint=p_hint)


def in_T0(x: SatakeParameter, tol: float = 1e-9) -> bool:
    """True iff every |alpha_i| lies in the closed band [1 - tol, 1 + tol]."""
    mods = np.abs(x.as_array())
    return bool(np.all(mods >= 1.0 - tol) and np.all(mods <= 1.0 + tol))


def in_T1(
    x: SatakeParameter, p: int | None = None, refined: bool = False
) -> bool:
    """True iff every |alpha_i| <= p^{1/2} (or the refined exponent)."""
    if p is None:
        p = x.p_hint
    if p is None:
        raise ValueError("no prime given and no p_hint on the parameter")
    exponent = 0.5 - (1.0 / (x.n**2 + 1) if refined else 0.0)
    bound = float(p) ** exponent
    return bool(np.all(np.abs(x.as_array()) <= bound))


def coefficient(x: SatakeParameter, idx: CoefficientIndex) -> complex:
    """Prime-power Fourier coefficient: the character at the matching weight."""
    if idx.n != x.n:
        raise ValueError(f"rank mismatch: index N={idx.n}, parameter N={x.n}")
    return complex(eval_char(aleph(idx), x.as_array()))


def varrho(x: SatakeParameter) -> tuple[complex, ...]:
    """Fundamental character values (chi_1(x), ..., chi_{N-1}(x)).

    Elementary symmetric polynomials of the eigenvalues; injective on the
    containment region modulo the Weyl action.
    """
    return elementary_symmetric(x.as_array())


def elementary_symmetric(arr: np.ndarray) -> tuple[complex, ...] | np.ndarray:
    """e_1..e_{N-1} of (..., N) eigenvalue arrays, vectorized."""
    a = np.asarray(arr, dtype=np.complex128)
    n = a.shape[-1]
    shape = a.shape[:-1]
    e = np.zeros((n + 1,) + shape, dtype=np.complex128)
    e[0] = 1.0
    for i in range(n):
        ai = a[..., i]
        for k in range(min(i + 1, n), 0, -1):
            e[k] = e[k] + ai * e[k - 1]
    out = np.moveaxis(e[1:n], 0, -1)
    if shape == ():
        return tuple(complex(v) for v in out)
    return out


def hecke_check_n3(x: SatakeParameter) -> float:
    """Residual of the degree-2 Hecke identity A(1,p)A(p,1) = A(p,p) + 1."""
    if x.n != 3:
        raise ValueError(f"identity check requires N=3, got N={x.n}")
    a_01 = coefficient(x, CoefficientIndex(3, (0, 1)))
    a_10 = coefficient(x, CoefficientIndex(3, (1, 0)))
    a_11 = coefficient(x, CoefficientIndex(3, (1, 1)))
    return abs(a_01 * a_10 - a_11 - 1.0)


def hecke_residuals_n3(alphas: np.ndarray) -> np.ndarray:
    """Vectorized residuals of the N=3 Hecke identity over rows of (..., 3)."""
    from .weights import DominantWeight

    arr = np.asarray(alphas, dtype=np.complex128)
    chi1 = eval_char(DominantWeight(3, (1, 0, 0)), arr)
    chi2 = eval_char(DominantWeight(3, (1, 1, 0)), arr)
    adj = eval_char(DominantWeight(3, (2, 1, 0)), arr)
    return np.abs(chi1 * chi2 - adj - 1.0)
