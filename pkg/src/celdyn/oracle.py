"""Independent fixed-step integrator for the moment equations.

The three coupled moments obey a closed affine system

    d n_a /dt = -2 (L00 n_a + L01 c_ab) + d_aa
    d n_b /dt = -2 (L11 n_b + L10 c_ab)
    d c_ab/dt = -(L00 + L11) c_ab - L10 n_a - L01 n_b + d_ab

with L the 2x2 drift.  A classic fourth-order Runge-Kutta march from the
vacuum gives a reference trajectory that shares no code with the
closed-form moment expressions beyond the drift/diffusion coefficients, so
agreement between the two is a real cross-check of the quadrature algebra.

Because the diffusion matrix is indefinite, there is no underlying
classical process to sample; a deterministic moment march is the only
faithful oracle available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import drift_matrix, moments_at
from .errors import NegativeTime, NonFiniteParameter, StepTooLarge
from .params import SystemParams, diffusion_data, spectral_data

__all__ = [
    "MomentState",
    "ComparisonRow",
    "ComparisonReport",
    "moment_rhs",
    "integrate_moments",
    "compare",
]


@dataclass(frozen=True)
class MomentState:
    t: float
    n_a: float
    n_b: float
    c_ab: float


@dataclass(frozen=True)
class ComparisonRow:
    t: float
    closed: tuple[float, float, float]
    marched: tuple[float, float, float]
    err_n_a: float
    err_n_b: float
    err_c_ab: float


@dataclass(frozen=True)
class ComparisonReport:
    rows: list[ComparisonRow]
    max_err_n_a: float
    max_err_n_b: float
    max_err_c_ab: float
    tolerance: float
    passed: bool


def _rhs(l00, l01, l10, l11, d_aa, d_ab, na, nb, cab):
    return (
        -2.0 * (l00 * na + l01 * cab) + d_aa,
        -2.0 * (l11 * nb + l10 * cab),
        -(l00 + l11) * cab - l10 * na - l01 * nb + d_ab,
    )


def moment_rhs(drift: np.ndarray, d_aa: float, d_ab: float, state: MomentState):
    """Time derivative (dn_a, dn_b, dc_ab) at the given state."""
    return _rhs(
        float(drift[0, 0]),
        float(drift[0, 1]),
        float(drift[1, 0]),
        float(drift[1, 1]),
        d_aa,
        d_ab,
        state.n_a,
        state.n_b,
        state.c_ab,
    )


def _rk4_march(l00, l01, l10, l11, d_aa, d_ab, na, nb, cab, h, steps):
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(steps):
        k1a, k1b, k1c = _rhs(l00, l01, l10, l11, d_aa, d_ab, na, nb, cab)
        k2a, k2b, k2c = _rhs(
            l00, l01, l10, l11, d_aa, d_ab,
            na + half * k1a, nb + half * k1b, cab + half * k1c,
        )
        k3a, k3b, k3c = _rhs(
            l00, l01, l10, l11, d_aa, d_ab,
            na + half * k2a, nb + half * k2b, cab + half * k2c,
        )
        k4a, k4b, k4c = _rhs(
            l00, l01, l10, l11, d_aa, d_ab,
            na + h * k3a, nb + h * k3b, cab + h * k3c,
        )
        na += sixth * (k1a + 2.0 * (k2a + k3a) + k4a)
        nb += sixth * (k1b + 2.0 * (k2b + k3b) + k4b)
        cab += sixth * (k1c + 2.0 * (k2c + k3c) + k4c)
    return na, nb, cab


def _fastest_rate(spec, kappa):
    return max(abs(spec.mu_plus), abs(spec.mu_minus), kappa)


def integrate_moments(params: SystemParams, t_end: float, dt: float) -> list[MomentState]:
    """March the moments from vacuum to t_end, recording every step."""
    spec = spectral_data(params)
    diff = diffusion_data(params)
    if not (isinstance(t_end, (int, float)) and math.isfinite(t_end)):
        raise NonFiniteParameter(f"t_end = {t_end!r} must be finite")
    if t_end < 0.0:
        raise NegativeTime(f"t_end = {t_end} must be >= 0")
    if not (isinstance(dt, (int, float)) and math.isfinite(dt)) or dt <= 0.0:
        raise NonFiniteParameter(f"dt = {dt!r} must be a positive number")
    limit = 0.1 / _fastest_rate(spec, params.kappa)
    if dt > limit:
        raise StepTooLarge(f"dt = {dt} exceeds {limit:.6g} for these rates")
    states = [MomentState(t=0.0, n_a=0.0, n_b=0.0, c_ab=0.0)]
    if t_end == 0.0:
        return states
    lam = drift_matrix(spec)
    l00, l01 = float(lam[0, 0]), float(lam[0, 1])
    l10, l11 = float(lam[1, 0]), float(lam[1, 1])
    steps = math.ceil(t_end / dt)
    h = t_end / steps
    na = nb = cab = 0.0
    for i in range(1, steps + 1):
        na, nb, cab = _rk4_march(
            l00, l01, l10, l11, diff.d_aa, diff.d_ab, na, nb, cab, h, 1
        )
        states.append(MomentState(t=i * h, n_a=na, n_b=nb, c_ab=cab))
    return states


def compare(params: SystemParams, grid, tolerance: float = 1e-6) -> ComparisonReport:
    """Closed-form moments against the Runge-Kutta march on the given times.

    The march continues from one grid time to the next, with an internal
    step of 0.01 over the fastest moment rate.  Errors are relative with an
    absolute floor: |closed - marched| / (1 + |closed|).
    """
    spec = spectral_data(params)
    diff = diffusion_data(params)
    times = sorted(float(t) for t in grid)
    if not times:
        raise NonFiniteParameter("empty comparison grid")
    for t in times:
        if not math.isfinite(t):
            raise NonFiniteParameter(f"grid time {t!r} is not finite")
    if times[0] < 0.0:
        raise NegativeTime(f"grid time {times[0]} must be >= 0")

    rate = max(2.0 * abs(spec.mu_plus), 2.0 * abs(spec.mu_minus), spec.mu_sum, params.kappa)
    dt = 0.01 / max(rate, 1.0)
    lam = drift_matrix(spec)
    l00, l01 = float(lam[0, 0]), float(lam[0, 1])
    l10, l11 = float(lam[1, 0]), float(lam[1, 1])

    rows = []
    na = nb = cab = 0.0
    t_prev = 0.0
    for t in times:
        if t > t_prev:
            steps = math.ceil((t - t_prev) / dt)
            h = (t - t_prev) / steps
            na, nb, cab = _rk4_march(
                l00, l01, l10, l11, diff.d_aa, diff.d_ab, na, nb, cab, h, steps
            )
            t_prev = t
        cm = moments_at(spec, diff, t)
        errs = (
            abs(cm.n_a - na) / (1.0 + abs(cm.n_a)),
            abs(cm.n_b - nb) / (1.0 + abs(cm.n_b)),
            abs(cm.c_ab - cab) / (1.0 + abs(cm.c_ab)),
        )
        rows.append(
            ComparisonRow(
                t=t,
                closed=(cm.n_a, cm.n_b, cm.c_ab),
                marched=(na, nb, cab),
                err_n_a=errs[0],
                err_n_b=errs[1],
                err_c_ab=errs[2],
            )
        )
    max_a = max(r.err_n_a for r in rows)
    max_b = max(r.err_n_b for r in rows)
    max_c = max(r.err_c_ab for r in rows)
    return ComparisonReport(
        rows=rows,
        max_err_n_a=max_a,
        max_err_n_b=max_b,
        max_err_c_ab=max_c,
        tolerance=tolerance,
        passed=max(max_a, max_b, max_c) <= tolerance,
    )
