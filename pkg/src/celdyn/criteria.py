"""Entanglement witnesses built from the intracavity second moments.

Three inequivalent detectors are exposed:

* smallest symplectic eigenvalue of the partially transposed covariance,
  and the logarithmic negativity derived from it (entangled iff v_s < 1);
* the summed EPR-quadrature variance m + n - 2c (entangled iff < 2, the
  vacuum level);
* the photon-number correlation g = 1 + c_ab^2/(n_a n_b) (entangled iff
  the raw correlator beats the Cauchy-Schwarz-like bound, g > 2).

All three consume the same CovarianceSummary; the summary constructor
cross-checks the fused determinant carried by SecondMoments against the
naive product form, with a slack that widens with the float cancellation
expected at that magnitude, so the check stays meaningful at huge photon
numbers.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .dynamics import SecondMoments, second_moments
from .errors import (
    InconsistentMoments,
    NonPositiveEigenvalue,
    UnphysicalCovariance,
)
from .params import SystemParams

__all__ = [
    "CovarianceSummary",
    "HzData",
    "EntanglementReport",
    "covariance",
    "symplectic_smallest",
    "log_negativity",
    "dgcz_sum",
    "hz_correlation",
    "evaluate",
    "report",
    "HZ_FLOOR",
]

_EPS = sys.float_info.epsilon

# Absolute floor on n_a*n_b below which the photon correlation ratio is not
# formed; with a correlator still present the ratio is flagged divergent.
HZ_FLOOR = 1e-12


@dataclass(frozen=True)
class CovarianceSummary:
    """Two-mode covariance invariants in the (x_a, p_a, x_b, p_b) ordering.

    m, n, c are the symmetric variances 1 + 2 n_a, 1 + 2 n_b and the
    cross block amplitude 2 c_ab; det_xi is the full 4x4 determinant
    (m n - c^2)^2 and xi the partial-transpose seralian m^2 + n^2 + 2 c^2.
    """

    m: float
    n: float
    c: float
    det_a: float
    det_b: float
    det_ab: float
    det_xi: float
    xi: float


@dataclass(frozen=True)
class HzData:
    g: float
    flag: str  # "defined" | "divergent" | "undefined"
    excess: float  # c_ab^2 - n_a n_b


@dataclass(frozen=True)
class EntanglementReport:
    t: float
    v_s: float
    e_n: float
    dgcz: float
    hz_g: float
    hz_flag: str
    entangled_neg: bool
    entangled_dgcz: bool
    entangled_hz: bool


def covariance(moments: SecondMoments) -> CovarianceSummary:
    m = 1.0 + 2.0 * moments.n_a
    n = 1.0 + 2.0 * moments.n_b
    c = 2.0 * moments.c_ab
    naive = m * n - c * c
    det = naive
    if moments.moment_det is not None:
        fused = 1.0 + 2.0 * (moments.n_a + moments.n_b) + 4.0 * moments.moment_det
        if math.isfinite(naive) and math.isfinite(fused):
            slack = 8.0 * _EPS * (abs(m * n) + c * c) + 1e-8 * abs(fused)
            if abs(naive - fused) > slack:
                raise InconsistentMoments(
                    f"determinant routes disagree: {naive!r} vs {fused!r} at t = {moments.t}"
                )
        if math.isfinite(fused):
            det = fused
    return CovarianceSummary(
        m=m,
        n=n,
        c=c,
        det_a=m * m,
        det_b=n * n,
        det_ab=-c * c,
        det_xi=det * det,
        xi=m * m + n * n + 2.0 * c * c,
    )


def symplectic_smallest(cv: CovarianceSummary) -> float:
    """Smaller symplectic eigenvalue of the partially transposed covariance.

    Uses the conjugate form of the quadratic root so nothing squares xi
    (which would overflow first) and the r -> 0 limit keeps full precision.
    """
    sd = math.sqrt(cv.det_xi)
    y = 2.0 * sd / cv.xi
    r = y * y
    if r > 1.0 + 1e-10:
        raise UnphysicalCovariance(
            f"4 det = {4.0 * cv.det_xi!r} exceeds xi^2 with xi = {cv.xi!r}"
        )
    r = min(r, 1.0)
    vs2 = y * sd / (1.0 + math.sqrt(1.0 - r))
    if vs2 <= 0.0:
        raise NonPositiveEigenvalue(f"v_s^2 = {vs2!r}")
    return math.sqrt(vs2)


def log_negativity(v_s: float) -> float:
    """E_N = max(0, -log2 v_s)."""
    if math.isnan(v_s):
        return math.nan
    if v_s <= 0.0:
        raise NonPositiveEigenvalue(f"v_s = {v_s!r}")
    return max(0.0, -math.log2(v_s))


def dgcz_sum(cv: CovarianceSummary) -> float:
    # total variance of (x_a - x_b) and (p_a + p_b); separable states sit >= 2
    return cv.m + cv.n - 2.0 * cv.c


def hz_correlation(moments: SecondMoments) -> HzData:
    prod = moments.n_a * moments.n_b
    if moments.moment_det is not None and math.isfinite(moments.moment_det):
        excess = -moments.moment_det
    else:
        excess = moments.c_ab * moments.c_ab - prod
    if prod > HZ_FLOOR:
        return HzData(g=2.0 + excess / prod, flag="defined", excess=excess)
    if moments.c_ab * moments.c_ab > HZ_FLOOR:
        return HzData(g=math.inf, flag="divergent", excess=excess)
    return HzData(g=math.nan, flag="undefined", excess=excess)


def evaluate(moments: SecondMoments) -> EntanglementReport:
    cv = covariance(moments)
    v_s = symplectic_smallest(cv)
    e_n = log_negativity(v_s)
    u = dgcz_sum(cv)
    hz = hz_correlation(moments)
    return EntanglementReport(
        t=moments.t,
        v_s=v_s,
        e_n=e_n,
        dgcz=u,
        hz_g=hz.g,
        hz_flag=hz.flag,
        entangled_neg=v_s < 1.0,
        entangled_dgcz=u < 2.0,
        entangled_hz=(hz.flag == "defined" and hz.excess > 0.0) or hz.flag == "divergent",
    )


def report(params: SystemParams, t: float) -> EntanglementReport:
    return evaluate(second_moments(params, t))
