"""Weighted spectral-family statistics.

A family is a finite stand-in for a cuspidal spectrum: spectral
parameters, adjoint L-value weights, and per-prime Satake parameters
and/or coefficient tables.  The weighted average of a test function over
the family is the statistic whose large-family limit is the
conjugacy-class integral.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .characters import TensorSpec, trivial_multiplicity
from .satake import SatakeParameter, canonicalize, coefficient, elementary_symmetric
from .sampling import RngSeed, perturb_radial, sample_st_batch
from .weights import CoefficientIndex, SpectralParameter, laplace_eigenvalue

__all__ = [
    "TestFunctionH",
    "FamilyMember",
    "Family",
    "FamilyValidationError",
    "h_eval",
    "weight",
    "l_functional",
    "weighted_stat",
    "synth_family",
    "equidist_report",
    "EquidistRow",
    "load_family",
    "save_family",
    "family_to_dict",
    "family_from_dict",
]

CS_COHERENCE_TOL = 1e-6


class FamilyValidationError(ValueError):
    """A family file or member violates the ingestion contract."""


@dataclass(frozen=True)
class TestFunctionH:
    """Non-negative bounded test function of the spectral parameter.

    kind 'gaussian': exp(-Re lambda(nu) / T^2); kind 'indicator':
    1 on Re lambda(nu) <= T^2 (closed); kind 'custom-table': linear
    interpolation of (xs, ys) sampled against Re lambda(nu) / T^2.
    """

    __test__ = False  # keep pytest from collecting the Test* name

    kind: str
    xs: tuple[float, ...] = ()
    ys: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("gaussian", "indicator", "custom-table"):
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if self.kind == "custom-table":
            if len(self.xs) != len(self.ys) or len(self.xs) < 2:
                raise ValueError("custom-table needs matching xs/ys with >= 2 points")
            if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
                raise ValueError("custom-table xs must be strictly increasing")
            if any(y < 0 for y in self.ys):
                raise ValueError("custom-table values must be non-negative")

    @classmethod
    def gaussian(cls) -> "TestFunctionH":
        return cls("gaussian")

    @classmethod
    def indicator(cls) -> "TestFunctionH":
        return cls("indicator")

    @classmethod
    def from_table(cls, xs, ys) -> "TestFunctionH":
        return cls("custom-table", tuple(float(x) for x in xs), tuple(float(y) for y in ys))


def h_eval(h: TestFunctionH, nu: SpectralParameter, t: float) -> float:
    """Evaluate the test function at scale t >= 1."""
    if t < 1:
        raise ValueError(f"scale must be >= 1, got {t}")
    lam = laplace_eigenvalue(nu).real
    if h.kind == "gaussian":
        return math.exp(-lam / (t * t))
    if h.kind == "indicator":
        return 1.0 if lam <= t * t else 0.0
    return float(np.interp(lam / (t * t), h.xs, h.ys))


@dataclass(frozen=True)
class FamilyMember:
    """One spectral datum: nu, adjoint L-value, optional local data."""

    nu: SpectralParameter
    l1_adjoint: float
    coefficients: dict | None = None  # CoefficientIndex -> complex
    satake: dict | None = None  # prime -> SatakeParameter

    def __post_init__(self):
        if not self.l1_adjoint > 0:
            raise ValueError(f"adjoint L-value weight must be positive, got {self.l1_adjoint}")
        if self.coefficients is not None:
            zero = CoefficientIndex.zero(self.nu.n)
            c0 = self.coefficients.get(zero)
            if c0 is not None and abs(c0 - 1.0) > 1e-9:
                raise FamilyValidationError(
                    f"coefficient at the zero index must be 1, got {c0}"
                )

    def satake_at(self, p: int) -> SatakeParameter:
        if self.satake is None or p not in self.satake:
            raise FamilyValidationError(f"member has no Satake parameter at p={p}")
        return self.satake[p]


@dataclass(frozen=True)
class Family:
    n: int
    members: tuple[FamilyMember, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for mem in self.members:
            if mem.nu.n != self.n:
                raise ValueError("all members must share the family rank")

    def __len__(self) -> int:
        return len(self.members)


def weight(member: FamilyMember, h: TestFunctionH, t: float) -> float:
    """Member weight: h_T(nu) / L(1, Ad)."""
    return h_eval(h, member.nu, t) / member.l1_adjoint


def weighted_stat(values: np.ndarray, weights: np.ndarray) -> tuple[complex, float]:
    """Weighted mean and its linearized standard error."""
    values = np.asarray(values, dtype=np.complex128)
    weights = np.asarray(weights, dtype=float)
    # summing numerator and denominator in the same dtype keeps the mean of a
    # constant integrand exact
    wc = weights.astype(np.complex128)
    total = wc.sum()
    if not total.real > 0:
        raise FamilyValidationError("all member weights vanish")
    # divide as Python complex: numpy's complex scalar division is inexact
    # even for equal operands, and a constant integrand must average to 1
    mean = complex((values * wc).sum()) / complex(total)
    se = math.sqrt(float((weights**2 * np.abs(values - mean) ** 2).sum())) / total.real
    return mean, se


def _monomial_from_coefficients(member: FamilyMember, spec: TensorSpec) -> complex:
    """Evaluate the monomial from stored coefficients (no Satake needed)."""
    if member.coefficients is None:
        raise FamilyValidationError("member has neither Satake data nor coefficients")
    n = spec.n
    out = 1.0 + 0.0j
    for k in range(1, n):
        ik, ikp = spec.plain(k), spec.conjugate(k)
        if ik == 0 and ikp == 0:
            continue
        idx = CoefficientIndex.unit(n, n - k)  # A[k]: p in the (N-k)-th slot
        a_k = member.coefficients.get(idx)
        if a_k is None:
            raise FamilyValidationError(f"member lacks coefficient {idx.l} for A[{k}]")
        out *= a_k**ik * np.conj(a_k) ** ikp
    return complex(out)


def _member_values(
    family: Family, p: int, f, require: bool = True
) -> np.ndarray:
    """Evaluate f (callable or TensorSpec monomial) on every member at p."""
    vals = np.empty(len(family), dtype=np.complex128)
    if isinstance(f, TensorSpec):
        if f.n != family.n:
            raise ValueError("spec rank does not match family rank")
        for i, mem in enumerate(family.members):
            if mem.satake is not None and p in mem.satake:
                e = elementary_symmetric(mem.satake[p].as_array())
                v = 1.0 + 0.0j
                for k in range(1, f.n):
                    v *= e[k - 1] ** f.plain(k) * np.conj(e[k - 1]) ** f.conjugate(k)
                vals[i] = v
            else:
                vals[i] = _monomial_from_coefficients(mem, f)
    else:
        for i, mem in enumerate(family.members):
            vals[i] = f(mem.satake_at(p))
    return vals


def l_functional(
    family: Family, p: int, f, h: TestFunctionH, t: float
) -> complex:
    """Weighted family average of f at the prime p.

    f is either a callable on SatakeParameter or a TensorSpec, in which
    case members lacking a Satake parameter at p are evaluated through
    their stored coefficient tables.
    """
    if len(family) == 0:
        raise FamilyValidationError("empty family")
    weights = np.array([weight(mem, h, t) for mem in family.members])
    vals = _member_values(family, p, f)
    mean, _ = weighted_stat(vals, weights)
    return mean


def synth_family(
    n: int,
    m: int,
    mode: str = "sato-tate",
    primes: tuple[int, ...] = (2,),
    seed: int | RngSeed = 0,
    label: str = "",
) -> Family:
    """Synthetic family with Satake data drawn from the Haar class measure.

    'sato-tate' members sit on the unit torus; 't1-perturbed' members get
    radial noise capped so each |alpha_i| stays within p^{1/2}.  Spectral
    parameters are purely imaginary on an integer grid; adjoint L-values
    are log-uniform in [0.1, 10].
    """
    if m < 1:
        raise ValueError("family size must be >= 1")
    if mode not in ("sato-tate", "t1-perturbed"):
        raise ValueError(f"unknown synthesis mode {mode!r}")
    rng = (seed if isinstance(seed, RngSeed) else RngSeed(int(seed))).generator()

    grid_side = max(2, math.ceil(m ** (1.0 / (n - 1))))
    members = []
    banks = {p: sample_st_batch(n, m, rng) for p in primes}
    if mode == "t1-perturbed":
        banks = {p: perturb_radial(bank, p, rng) for p, bank in banks.items()}
    l1 = 10.0 ** rng.uniform(-1.0, 1.0, size=m)

    for j in range(m):
        coords = []
        idx = j
        for _ in range(n - 1):
            coords.append(1 + idx % grid_side)
            idx //= grid_side
        nu = SpectralParameter(n, tuple(1j * c for c in coords))
        satake = {p: canonicalize(banks[p][j], p_hint=p) for p in primes}
        members.append(FamilyMember(nu=nu, l1_adjoint=float(l1[j]), satake=satake))
    return Family(n=n, members=tuple(members), label=label or f"synthetic-{mode}")


@dataclass(frozen=True)
class EquidistRow:
    spec: TensorSpec
    t: float
    estimate: complex
    std_error: float
    oracle: int
    gl3_bound: float | None

    @property
    def difference(self) -> float:
        return abs(self.estimate - self.oracle)


def equidist_report(
    family: Family,
    p: int,
    specs: list[TensorSpec],
    h: TestFunctionH,
    t_grid,
    theta: float = 7.0 / 64.0,
    eps: float = 1e-6,
) -> list[EquidistRow]:
    """Weighted statistic vs. exact moment for each spec and scale."""
    from .bounds import convergence_error

    rows = []
    for spec in specs:
        oracle = trivial_multiplicity(spec)
        vals = _member_values(family, p, spec)
        for t in t_grid:
            weights = np.array([weight(mem, h, t) for mem in family.members])
            mean, se = weighted_stat(vals, weights)
            bound = None
            if family.n == 3:
                p_big = float(p) ** spec.degree
                bound = convergence_error(t, p_big, theta, eps)
            rows.append(
                EquidistRow(
                    spec=spec, t=float(t), estimate=mean, std_error=se,
                    oracle=oracle, gl3_bound=bound,
                )
            )
    return rows


# --- family (de)serialization ------------------------------------------------

_TOP_KEYS = {"N", "label", "members"}
_MEMBER_KEYS = {"nu", "L1Ad", "coefficients", "satake"}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _pair_to_complex(pair) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise FamilyValidationError(f"expected [re, im] pair, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def family_from_dict(data: dict) -> Family:
    """Parse and validate the family JSON document."""
    if not isinstance(data, dict):
        raise FamilyValidationError("family document must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise FamilyValidationError(f"unknown top-level fields: {sorted(unknown)}")
    try:
        n = int(data["N"])
        raw_members = data["members"]
    except KeyError as exc:
        raise FamilyValidationError(f"missing required field {exc}") from exc
    label = str(data.get("label", ""))
    members = []
    for pos, raw in enumerate(raw_members):
        unknown = set(raw) - _MEMBER_KEYS
        if unknown:
            raise FamilyValidationError(
                f"member {pos}: unknown fields {sorted(unknown)}"
            )
        try:
            nu = SpectralParameter(n, tuple(_pair_to_complex(v) for v in raw["nu"]))
            l1 = float(raw["L1Ad"])
        except KeyError as exc:
            raise FamilyValidationError(f"member {pos}: missing field {exc}") from exc
        coeffs = None
        if "coefficients" in raw:
            coeffs = {}
            for key, pair in raw["coefficients"].items():
                l = tuple(int(v) for v in key.split(","))
                coeffs[CoefficientIndex(n, l)] = _pair_to_complex(pair)
        satake = None
        if "satake" in raw:
            satake = {}
            for key, vec in raw["satake"].items():
                p = int(key)
                if not _is_prime(p):
                    raise FamilyValidationError(f"member {pos}: key {key!r} is not prime")
                try:
                    satake[p] = canonicalize([_pair_to_complex(v) for v in vec], p_hint=p)
                except ValueError as exc:
                    raise FamilyValidationError(f"member {pos}, p={p}: {exc}") from exc
        member = FamilyMember(nu=nu, l1_adjoint=l1, coefficients=coeffs, satake=satake)
        _check_member_coherence(member, pos)
        members.append(member)
    return Family(n=n, members=tuple(members), label=label)


def _check_member_coherence(member: FamilyMember, pos: int) -> None:
    """Coefficients must match the character values of every stored parameter."""
    if member.coefficients is None or member.satake is None:
        return
    for p, x in member.satake.items():
        for idx, val in member.coefficients.items():
            residual = abs(val - coefficient(x, idx))
            if residual > CS_COHERENCE_TOL:
                raise FamilyValidationError(
                    f"member {pos}: coefficient {idx.l} incoherent with the "
                    f"parameter at p={p} (residual {residual:.3g})"
                )


def family_to_dict(family: Family) -> dict:
    out_members = []
    for mem in family.members:
        raw = {
            "nu": [[v.real, v.imag] for v in mem.nu.nu],
            "L1Ad": mem.l1_adjoint,
        }
        if mem.coefficients is not None:
            raw["coefficients"] = {
                ",".join(str(v) for v in idx.l): [c.real, c.imag]
                for idx, c in mem.coefficients.items()
            }
        if mem.satake is not None:
            raw["satake"] = {
                str(p): [[a.real, a.imag] for a in x.alphas]
                for p, x in mem.satake.items()
            }
        out_members.append(raw)
    return {"N": family.n, "label": family.label, "members": out_members}


def load_family(path) -> Family:
    with open(path) as fh:
        return family_from_dict(json.load(fh))


def save_family(family: Family, path) -> None:
    with open(path, "w") as fh:
        json.dump(family_to_dict(family), fh)
