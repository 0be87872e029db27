"""Closed-form propagator and intracavity second moments.

The linearized field equations give a 2x2 drift whose exponential factors
into e^{-sum*t/2} times hyperbolic (or trigonometric) functions of the
branch splitting delta.  Moments from a vacuum start are then weighted sums
of psi(x, t) = (1 - e^{-x t})/x evaluated at the three decay rates
2*mu_plus, 2*mu_minus and mu_sum.

Two evaluation paths cover the whole parameter space:

* "printed" path (generic splitting): work directly with the branch
  amplitude ratios p, q+- and the three psi terms; real or conjugate-paired
  complex arithmetic, with an explicit reality check on the result.
* "regrouped" path (near-degenerate splitting): everything is rewritten in
  the divided differences F2 = (psi_m - psi_p)/delta and
  F3 = (psi_p + psi_m - 2 psi_s)/delta^2, which are even in delta and stay
  finite as delta -> 0, so no division by the splitting ever happens.

The determinant n_a n_b - c_ab^2 gets its own fused expansion: the psi_p^2
and psi_m^2 blocks vanish identically (q+ q- = 1 - p^2), and dropping them
analytically is what keeps the determinant meaningful when the moments
themselves grow by a hundred orders of magnitude.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NegativeTime,
    NonFiniteParameter,
    RealityViolation,
    UnstableSystem,
)
from .params import (
    DiffusionData,
    SpectralData,
    SystemParams,
    diffusion_data,
    spectral_data,
)

__all__ = [
    "PropagatorData",
    "SecondMoments",
    "propagator",
    "propagator_matrix",
    "drift_matrix",
    "second_moments",
    "moments_at",
    "steady_state_moments",
    "REGROUP_BAND",
]

# Path switch: splittings below this relative size go through the
# divided-difference form.  Wider than the degeneracy band on purpose --
# the raw p, q ratios lose accuracy well before the root actually vanishes.
REGROUP_BAND = 1e-6

# Half-splitting-times-time beyond which cosh/sinh are evaluated branch by
# branch as plain exponentials (cosh overflows around 710).
_SPLIT_LIMIT = 300.0


@dataclass(frozen=True)
class PropagatorData:
    """Entries of the moment propagator G(t) = [[c_plus, d_plus], [d_minus, c_minus]]."""

    t: float
    c_plus: float
    c_minus: float
    d_plus: float
    d_minus: float


@dataclass(frozen=True)
class SecondMoments:
    """Normally ordered second moments at time t.

    moment_det carries n_a*n_b - c_ab^2 evaluated in fused form; None means
    nobody computed it (hand-built instances, integrator output).
    """

    t: float
    n_a: float
    n_b: float
    c_ab: float
    moment_det: float | None = None


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _cexpm1(z: complex) -> complex:
    """expm1 for complex arguments, accurate near zero."""
    try:
        ea = math.exp(z.real)
        re = math.expm1(z.real) * math.cos(z.imag) - 2.0 * math.sin(0.5 * z.imag) ** 2
    except OverflowError:
        return complex(math.inf, math.inf)
    return complex(re, ea * math.sin(z.imag))


def _psi(x, t: float):
    """(1 - e^{-x t})/x, the integral of e^{-x tau} from 0 to t.

    Accepts float or complex x; t = inf returns the 1/x limit (callers must
    ensure Re x > 0 for that to exist).
    """
    if isinstance(x, complex):
        if x.imag == 0.0:
            return complex(_psi(x.real, t))
        if t == math.inf:
            return 1.0 / x
        return -_cexpm1(-x * t) / x
    if x == 0.0:
        return t
    if t == math.inf:
        if x < 0.0:
            raise UnstableSystem(f"psi has no long-time limit at rate {x}")
        return 1.0 / x
    try:
        em = math.expm1(-x * t)
    except OverflowError:
        em = math.inf
    return -em / x


def _sinhc_sq(s: float) -> float:
    """sinh(sqrt(s))/sqrt(s) continued through s <= 0 (sin(w)/w for s = -w^2)."""
    if abs(s) < 1e-12:
        return 1.0 + (s / 6.0) * (1.0 + 0.05 * s)
    if s > 0.0:
        z = math.sqrt(s)
        return math.sinh(z) / z
    w = math.sqrt(-s)
    return math.sin(w) / w


def _coshm1c_sq(s: float) -> float:
    # (cosh(sqrt(s)) - 1)/s via the half-argument square: no cancellation.
    half = _sinhc_sq(0.25 * s)
    return 0.5 * half * half


def _f2_f3(mu_sum: float, delta2: float, t: float) -> tuple[float, float]:
    """Divided differences of psi across the branch pair, even in the splitting.

    F2 = (psi_m - psi_p)/delta, F3 = (psi_p + psi_m - 2 psi_s)/delta^2 with
    psi_p = psi(mu_sum + delta, t), psi_m = psi(mu_sum - delta, t) and
    psi_s = psi(mu_sum, t); delta2 = delta^2 may carry either sign.
    """
    abs_delta = math.sqrt(abs(delta2))
    s2 = mu_sum * mu_sum - delta2
    if t == math.inf:
        return 2.0 / s2, 2.0 / (mu_sum * s2)
    if abs_delta <= 0.5 * mu_sum:
        st = mu_sum * t
        if st >= 200.0:
            # transients below e^-100 relative to the limit
            return 2.0 / s2, 2.0 / (mu_sum * s2)
        if abs_delta * t < 1.0:
            e = math.exp(-st)
            s = delta2 * t * t
            shc = _sinhc_sq(s)
            cm1c = _coshm1c_sq(s)
            f2 = 2.0 * (1.0 - e * (st * shc + 1.0 + s * cm1c)) / s2
            f3 = 2.0 * ((1.0 - e) - e * (st * shc + st * st * cm1c)) / (mu_sum * s2)
            return f2, f3
    psi_s = _psi(mu_sum, t)
    if delta2 > 0.0:
        d = abs_delta
        psi_p = _psi(mu_sum + d, t)
        psi_m = _psi(mu_sum - d, t)
        return (psi_m - psi_p) / d, (psi_p + psi_m - 2.0 * psi_s) / delta2
    psi_p = _psi(complex(mu_sum, abs_delta), t)
    # psi_m is the conjugate, so both differences are exactly real
    f2 = -2.0 * psi_p.imag / abs_delta
    f3 = (2.0 * psi_p.real - 2.0 * psi_s) / delta2
    return f2, f3


def _require_real(z: complex, where: str) -> float:
    if abs(z.imag) > 1e-10 * (1.0 + abs(z.real)):
        raise RealityViolation(f"{where} evaluated to {z!r}")
    return z.real


def _check_time(t: float) -> float:
    if isinstance(t, bool) or not isinstance(t, (int, float)):
        raise NonFiniteParameter(f"time {t!r} is not a number")
    if math.isnan(t):
        raise NonFiniteParameter("time is NaN")
    if t < 0.0:
        raise NegativeTime(f"t = {t} must be >= 0")
    return float(t)


def propagator(spec: SpectralData, t: float) -> PropagatorData:
    """Entries of G(t) = exp(-drift * t) in root-free scaled form."""
    t = _check_time(t)
    if t == math.inf:
        raise NonFiniteParameter("propagator wants a finite time")
    half_t = 0.5 * t
    s = spec.delta2 * half_t * half_t
    if s > _SPLIT_LIMIT * _SPLIT_LIMIT:
        # widely split branches: evaluate each exponential on its own
        d = math.sqrt(spec.delta2)
        p = spec.p_scaled / d
        qp = spec.q_plus_scaled / d
        qm = spec.q_minus_scaled / d
        em = _safe_exp(-(spec.mu_sum - d) * half_t)
        ep = _safe_exp(-(spec.mu_sum + d) * half_t)
        c_plus = 0.5 * ((1.0 + p) * em + (1.0 - p) * ep)
        c_minus = 0.5 * ((1.0 - p) * em + (1.0 + p) * ep)
        half_diff = 0.5 * (em - ep)
        d_plus = -qp * half_diff
        d_minus = -qm * half_diff
    else:
        e = _safe_exp(-spec.mu_sum * half_t)
        shc = _sinhc_sq(s)
        ch = 1.0 + s * _coshm1c_sq(s)
        ps = spec.p_scaled * half_t * shc
        c_plus = e * (ch + ps)
        c_minus = e * (ch - ps)
        d_plus = -spec.q_plus_scaled * half_t * shc * e
        d_minus = -spec.q_minus_scaled * half_t * shc * e
    return PropagatorData(t=t, c_plus=c_plus, c_minus=c_minus, d_plus=d_plus, d_minus=d_minus)


def propagator_matrix(spec: SpectralData, t: float) -> np.ndarray:
    g = propagator(spec, t)
    return np.array([[g.c_plus, g.d_plus], [g.d_minus, g.c_minus]], dtype=float)


def drift_matrix(spec: SpectralData) -> np.ndarray:
    """2x2 drift: moments obey dN/dt = -drift N - N drift^T + D."""
    half_sum = 0.5 * spec.mu_sum
    return np.array(
        [
            [half_sum - 0.5 * spec.p_scaled, 0.5 * spec.q_plus_scaled],
            [0.5 * spec.q_minus_scaled, half_sum + 0.5 * spec.p_scaled],
        ],
        dtype=float,
    )


def moments_at(spec: SpectralData, diff: DiffusionData, t: float) -> SecondMoments:
    """Second moments at time t from a vacuum start, with fused determinant."""
    t = _check_time(t)
    g = spec.gain_ratio
    lc = diff.l_coef
    mc = diff.m_coef

    if abs(spec.disc) <= REGROUP_BAND * spec.disc_scale:
        f2, f3 = _f2_f3(spec.mu_sum, spec.delta2, t)
        psi_s = _psi(spec.mu_sum, t)
        pp = spec.p_scaled
        qp = spec.q_plus_scaled
        qm = spec.q_minus_scaled
        sum_pm = spec.delta2 * f3 + 2.0 * psi_s  # psi_p + psi_m, root-free
        n_a = g * (
            lc * (0.25 * sum_pm + 0.5 * psi_s + 0.5 * pp * f2 + 0.25 * pp * pp * f3)
            - 0.25 * mc * (qp * f2 + qp * pp * f3)
        )
        n_b = g * (0.25 * lc * qm * qm * f3 - 0.25 * mc * (qm * f2 - qm * pp * f3))
        c_ab = g * (
            -0.25 * lc * (qm * f2 + qm * pp * f3)
            + 0.125 * mc * (sum_pm + 2.0 * psi_s)
            + 0.125 * mc * (qp * qm - pp * pp) * f3
        )
        det = n_a * n_b - c_ab * c_ab
        return SecondMoments(t=t, n_a=n_a, n_b=n_b, c_ab=c_ab, moment_det=det)

    if t == math.inf and not spec.stable:
        raise UnstableSystem("moments diverge: no long-time limit")

    delta = spec.mu_diff
    p = complex(spec.p_scaled) / delta
    qp = complex(spec.q_plus_scaled) / delta
    qm = complex(spec.q_minus_scaled) / delta
    psi_p = _psi(spec.mu_sum + delta, t)
    psi_m = _psi(spec.mu_sum - delta, t)
    psi_s = _psi(complex(spec.mu_sum), t)

    quart = 0.25 * g
    a_p = quart * (lc * (1.0 - p) ** 2 + mc * qp * (1.0 - p))
    a_m = quart * (lc * (1.0 + p) ** 2 - mc * qp * (1.0 + p))
    a_s = 0.5 * g * (lc * (1.0 - p * p) + mc * qp * p)
    b_p = quart * (lc * qm * qm + mc * qm * (1.0 + p))
    b_m = quart * (lc * qm * qm - mc * qm * (1.0 - p))
    b_s = -0.5 * g * (lc * qm * qm + mc * qm * p)
    cross = 1.0 - p * p + qp * qm
    c_p = 0.125 * g * (2.0 * lc * qm * (1.0 - p) + mc * cross)
    c_m = -0.125 * g * (2.0 * lc * qm * (1.0 + p) - mc * cross)
    c_s = quart * (2.0 * lc * qm * p + mc * (1.0 + p * p - qp * qm))

    n_a = _require_real(a_p * psi_p + a_m * psi_m + a_s * psi_s, "n_a")
    n_b = _require_real(b_p * psi_p + b_m * psi_m + b_s * psi_s, "n_b")
    c_ab = _require_real(c_p * psi_p + c_m * psi_m + c_s * psi_s, "c_ab")

    # Gram determinant with the structurally vanishing psi_p^2 and psi_m^2
    # blocks dropped; only cross products of distinct decay terms survive.
    h_pm = a_p * b_m + a_m * b_p - 2.0 * c_p * c_m
    h_ps = a_p * b_s + a_s * b_p - 2.0 * c_p * c_s
    h_ms = a_m * b_s + a_s * b_m - 2.0 * c_m * c_s
    h_ss = a_s * b_s - c_s * c_s
    det = _require_real(
        h_pm * psi_p * psi_m
        + (h_ps * psi_p + h_ms * psi_m) * psi_s
        + h_ss * psi_s * psi_s,
        "moment determinant",
    )
    return SecondMoments(t=t, n_a=n_a, n_b=n_b, c_ab=c_ab, moment_det=det)


def second_moments(params: SystemParams, t: float) -> SecondMoments:
    return moments_at(spectral_data(params), diffusion_data(params), t)


def steady_state_moments(params: SystemParams) -> SecondMoments:
    """Long-time moments; refuses parameter sets whose moments grow forever."""
    spec = spectral_data(params)
    if not spec.stable:
        raise UnstableSystem(
            f"Re(mu_minus) = {spec.mu_minus.real:.6g} <= 0: moments do not settle"
        )
    return moments_at(spec, diffusion_data(params), math.inf)
