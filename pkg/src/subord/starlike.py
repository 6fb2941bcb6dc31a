"""Starlike-subclass certification for concrete normalized functions.

A function f(z) = z + a_2 z^2 + ... + a_N z^N (N <= 64) is certified against
a subclass by sampling z f'(z)/f(z) on circles of radius up to r_max < 1 and
testing the values against the subclass region.  The corollary check works
the same way: with

    M(z) = 1 - z f'(z)/f(z) + z f''(z)/f'(z)

the hypothesis expression of the case's operator family (1 + beta (zf'/f) M,
1 + beta M, or 1 + beta (zf'/f)^(-1) M) is sampled against the source
region, and the conclusion z f'/f against the target region.  Every
corollary is thereby a falsifiable numerical property: the pair
(hypothesis holds, conclusion fails) must never occur at or above the sharp
bound.

Evaluation is singularity-aware: f(z)/z = 1 + a_2 z + ... is computed by
Horner's scheme so there is no 0/0 at the origin, and zeros of f or f' in
the sampled region produce an explicit error location instead of a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from subord.bounds import QFamily, SubordinationCase
from subord.functions import Verdict, region_contains_batch

__all__ = [
    "AnalyticFunctionSpec",
    "CorollaryReport",
    "FunctionSingularityError",
    "MembershipReport",
    "class_membership",
    "corollary_check",
    "m_expr",
    "ratio_zfp_over_f",
]

_MAX_DEGREE = 64
_ZERO_TOL = 1e-13


class FunctionSingularityError(ArithmeticError):
    """f or f' vanishes at a sampled point of the punctured disk."""

    def __init__(self, message: str, location: complex):
        super().__init__(f"{message} at z = {location}")
        self.location = location


@dataclass(frozen=True)
class AnalyticFunctionSpec:
    """Normalized polynomial f(z) = z + sum a_n z^n given by (a_2, ..., a_N)."""

    coefficients: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) + 1 > _MAX_DEGREE:
            raise ValueError(f"degree above supported maximum {_MAX_DEGREE}")
        object.__setattr__(
            self, "coefficients", tuple(complex(a) for a in self.coefficients)
        )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex]) -> "AnalyticFunctionSpec":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) + 1

    def f_over_z(self, z):
        """f(z)/z = 1 + a_2 z + ... + a_N z^{N-1}, stable at the origin."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for a in reversed(self.coefficients):
            acc = acc * z + a
        return 1.0 + acc * z

    def fprime(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for n, a in zip(range(self.degree, 1, -1), reversed(self.coefficients)):
            acc = acc * z + n * a
        return 1.0 + acc * z

    def fsecond(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for n, a in zip(range(self.degree, 1, -1), reversed(self.coefficients)):
            acc = acc * z + n * (n - 1) * a
        return acc


@dataclass(frozen=True)
class MembershipReport:
    class_id: str
    member: bool
    worst_margin: float  # signed distance of z f'/f to the region boundary
    worst_z: complex
    worst_value: complex
    r_max: float
    n_samples: int


@dataclass(frozen=True)
class CorollaryReport:
    case_id: str
    beta: float
    hypothesis_holds: bool
    conclusion_holds: bool
    hyp_worst_margin: float
    conc_worst_margin: float
    hyp_worst_z: complex
    conc_worst_z: complex
    r_max: float
    n_samples: int

    @property
    def consistent(self) -> bool:
        """The corollary's content: hypothesis may never hold without the conclusion."""
        return self.conclusion_holds or not self.hypothesis_holds


def _as_spec(f) -> AnalyticFunctionSpec:
    if isinstance(f, AnalyticFunctionSpec):
        return f
    return AnalyticFunctionSpec.from_coeffs(f)


def ratio_zfp_over_f(f, z):
    """z f'(z)/f(z) evaluated as f'(z) / (f(z)/z); equals 1 at the origin."""
    spec = _as_spec(f)
    z = np.asarray(z, dtype=complex)
    base = spec.f_over_z(z)
    bad = np.abs(base) < _ZERO_TOL
    if np.any(bad):
        loc = complex(z[bad][0]) if z.ndim else complex(z)
        raise FunctionSingularityError("zero of f in the punctured disk", loc)
    out = spec.fprime(z) / base
    return out if out.ndim else complex(out)


def m_expr(f, z):
    """1 - z f'(z)/f(z) + z f''(z)/f'(z); identically 0 for f(z) = z."""
    spec = _as_spec(f)
    z = np.asarray(z, dtype=complex)
    fp = spec.fprime(z)
    bad = np.abs(fp) < _ZERO_TOL
    if np.any(bad):
        loc = complex(z[bad][0]) if z.ndim else complex(z)
        raise FunctionSingularityError("critical point of f", loc)
    out = 1.0 - ratio_zfp_over_f(spec, z) + z * spec.fsecond(z) / fp
    return out if out.ndim else complex(out)


def _sample_disk(r_max: float, n: int, n_radii: int) -> np.ndarray:
    if not 0.0 < r_max < 1.0:
        raise ValueError("r_max must lie in (0, 1)")
    if n < 256:
        raise ValueError("need n >= 256 angle samples")
    radii = r_max * (np.arange(1, n_radii + 1) / n_radii)
    angles = 2.0 * np.pi * np.arange(n) / n
    return (radii[:, None] * np.exp(1j * angles[None, :])).ravel()


def _worst(verdicts: np.ndarray, dists: np.ndarray, zs: np.ndarray):
    margins = np.where(
        verdicts == Verdict.INSIDE, dists,
        np.where(verdicts == Verdict.OUTSIDE, -dists, 0.0),
    ).astype(float)
    j = int(np.argmin(margins))
    return float(margins[j]), complex(zs[j]), j


def class_membership(
    f,
    class_id: str,
    r_max: float = 0.999,
    n: int = 1024,
    n_radii: int = 8,
    region_n: int = 4096,
    delta: float = 1e-9,
) -> MembershipReport:
    """Direct subclass test: z f'/f sampled on circles must lie in the region.

    Membership certified on |z| <= r_max is the checkable surrogate for the
    open disk (f may be unbounded at the boundary); it is nested in r_max.
    """
    spec = _as_spec(f)
    zs = _sample_disk(r_max, n, n_radii)
    values = ratio_zfp_over_f(spec, zs)
    verdicts, dists = region_contains_batch(class_id, values, region_n, delta)
    worst_margin, worst_z, j = _worst(verdicts, dists, zs)
    return MembershipReport(
        class_id=class_id,
        member=bool(np.all(verdicts == Verdict.INSIDE)),
        worst_margin=worst_margin,
        worst_z=worst_z,
        worst_value=complex(values[j]),
        r_max=r_max,
        n_samples=len(zs),
    )


def _hypothesis_values(spec: AnalyticFunctionSpec, family: QFamily, beta: float, zs: np.ndarray) -> np.ndarray:
    ratio = ratio_zfp_over_f(spec, zs)
    m = m_expr(spec, zs)
    if family is QFamily.PSI:
        return 1.0 + beta * ratio * m
    if family is QFamily.LAMBDA:
        return 1.0 + beta * m
    bad = np.abs(ratio) < _ZERO_TOL
    if np.any(bad):
        raise FunctionSingularityError("zero of z f'/f", complex(zs[bad][0]))
    return 1.0 + beta * m / ratio


def corollary_check(
    f,
    beta: float,
    case: SubordinationCase,
    r_max: float = 0.999,
    n: int = 1024,
    n_radii: int = 8,
    region_n: int = 4096,
    delta: float = 1e-9,
) -> CorollaryReport:
    """Check one membership corollary on a concrete f at coefficient ``beta``.

    The hypothesis expression of the case's family is sampled against the
    source region; if every sample lies inside, the conclusion z f'/f is
    additionally sampled against the target region, never assumed.  When the
    hypothesis fails no conclusion is drawn, but the conclusion margins are
    still reported for diagnosis.
    """
    if beta < case.beta_sharp * (1.0 - 1e-12):
        raise ValueError(
            f"beta={beta:g} is below the sharp bound {case.beta_sharp:g} for {case.case_id}"
        )
    spec = _as_spec(f)
    zs = _sample_disk(r_max, n, n_radii)
    hyp = _hypothesis_values(spec, case.family, beta, zs)
    conc = ratio_zfp_over_f(spec, zs)
    hyp_verdicts, hyp_dists = region_contains_batch(case.source, hyp, region_n, delta)
    conc_verdicts, conc_dists = region_contains_batch(case.target, conc, region_n, delta)
    hyp_margin, hyp_z, _ = _worst(hyp_verdicts, hyp_dists, zs)
    conc_margin, conc_z, _ = _worst(conc_verdicts, conc_dists, zs)
    return CorollaryReport(
        case_id=case.case_id,
        beta=beta,
        hypothesis_holds=bool(np.all(hyp_verdicts == Verdict.INSIDE)),
        conclusion_holds=bool(np.all(conc_verdicts == Verdict.INSIDE)),
        hyp_worst_margin=hyp_margin,
        conc_worst_margin=conc_margin,
        hyp_worst_z=hyp_z,
        conc_worst_z=conc_z,
        r_max=r_max,
        n_samples=len(zs),
    )
