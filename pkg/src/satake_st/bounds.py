"""Explicit N=3 quantitative content: error envelopes and the exact
multiplicity-sum inequality behind the rate of convergence.

Envelope values carry an implied constant of 1: they report shapes, not
certified inequalities.  The multiplicity bound is exact arithmetic and
is asserted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .characters import TensorSpec, dominant_part_sum, specialization_bound_n3, trivial_multiplicity
from .families import Family, TestFunctionH, l_functional

__all__ = [
    "Gl3BoundParams",
    "THETA_DEFAULT",
    "p_total",
    "orthogonality_error",
    "convergence_error",
    "verify_multiplicity_bound",
    "MultiplicityBoundRow",
    "rate_report",
    "RateRow",
]

THETA_DEFAULT = 7.0 / 64.0


@dataclass(frozen=True)
class Gl3BoundParams:
    """Inputs of the N=3 rate bound."""

    t: float
    p: int
    exponents: tuple[int, int, int, int]
    theta: float = THETA_DEFAULT
    eps: float = 1e-6

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"scale must be >= 1, got {self.t}")
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not 0 <= self.theta <= THETA_DEFAULT:
            raise ValueError(f"theta must lie in [0, 7/64], got {self.theta}")
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != 4 or any(e < 0 for e in exps):
            raise ValueError(f"need 4 non-negative exponents, got {self.exponents}")
        object.__setattr__(self, "exponents", exps)

    def spec(self) -> TensorSpec:
        return TensorSpec(3, self.exponents)


def p_total(params: Gl3BoundParams) -> float:
    """P = p^(i1 + i1' + i2 + i2')."""
    return float(params.p) ** sum(params.exponents)


def orthogonality_error(t: float, p_big: float, theta: float, eps: float) -> float:
    """(T^2 sqrt(P) + T^3 P^theta + P^(5/3)) * (T P)^eps."""
    core = t**2 * math.sqrt(p_big) + t**3 * p_big**theta + p_big ** (5.0 / 3.0)
    return core * (t * p_big) ** eps


def convergence_error(t: float, p_big: float, theta: float, eps: float) -> float:
    """(T^2 sqrt(P) + T^3 P^theta + P^(5/3)) * T^(-5+eps) * P^eps."""
    core = t**2 * math.sqrt(p_big) + t**3 * p_big**theta + p_big ** (5.0 / 3.0)
    return core * t ** (-5.0 + eps) * p_big**eps


@dataclass(frozen=True)
class MultiplicityBoundRow:
    exponents: tuple[int, int, int, int]
    exact_sum: float
    closed_bound: float
    passed: bool


def verify_multiplicity_bound(
    p: int, alpha: float, max_degree: int
) -> list[MultiplicityBoundRow]:
    """Check exact <= closed bound for every exponent tuple of degree <= max_degree.

    Raises on any failing tuple: a failure would contradict the inequality
    the rate bound rests on (or expose a bug upstream).
    """
    rows = []
    for exps in itertools.product(range(max_degree + 1), repeat=4):
        if sum(exps) > max_degree:
            continue
        spec = TensorSpec(3, exps)
        exact = dominant_part_sum(spec, p, alpha)
        bound = specialization_bound_n3(spec, p, alpha)
        ok = exact <= bound
        rows.append(MultiplicityBoundRow(exps, exact, bound, ok))
        if not ok:
            raise RuntimeError(
                f"multiplicity bound violated at {exps}: {exact} > {bound}"
            )
    return rows


@dataclass(frozen=True)
class RateRow:
    t: float
    envelope: float
    measured: float | None


def rate_report(
    params: Gl3BoundParams,
    t_grid,
    family: Family | None = None,
    h: TestFunctionH | None = None,
) -> list[RateRow]:
    """Envelope of the rate bound across a scale grid, with measured
    deviations |L_T - a_0| when a family with N=3 data is supplied."""
    p_big = p_total(params)
    spec = params.spec()
    oracle = trivial_multiplicity(spec) if family is not None else None
    if family is not None and h is None:
        h = TestFunctionH.gaussian()
    rows = []
    for t in t_grid:
        envelope = convergence_error(float(t), p_big, params.theta, params.eps)
        measured = None
        if family is not None:
            stat = l_functional(family, params.p, spec, h, float(t))
            measured = abs(stat - oracle)
        rows.append(RateRow(t=float(t), envelope=envelope, measured=measured))
    return rows
