"""Parameter handling for the coherently pumped cascade-emission laser model.

All rates are measured in units of the fast atomic decay rate, which is set
to 1 throughout.  A model instance is therefore four dimensionless rates plus
a linear gain coefficient.  From these we build three derived bundles:

* DerivedParams - pump/decay ratios and the saturation denominator,
* SpectralData  - the two relaxation branches mu_plus/mu_minus of the drift,
  kept in a root-free scaled form so the nearly degenerate case stays
  well conditioned,
* DiffusionData - the (non positive definite) noise strengths feeding the
  intracavity second moments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    NegativeOmega,
    NegativeTheta,
    NonFiniteParameter,
    NonPositiveGain,
    NonPositiveGamma,
    NonPositiveKappa,
)

__all__ = [
    "SystemParams",
    "DerivedParams",
    "SpectralData",
    "DiffusionData",
    "validate_params",
    "derived_params",
    "spectral_data",
    "diffusion_data",
    "DEGENERACY_BAND",
]

# Relative width (against the term-magnitude scale) of the band around a
# vanishing discriminant inside which the two branches count as degenerate.
DEGENERACY_BAND = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """Bare model inputs.

    kappa   cavity field damping rate
    gamma   decay rate of the intermediate atomic level
    omega   Rabi frequency of the coherent pump
    theta   pump phase-fluctuation exponent (attenuates coherences by e^-theta)
    gain_a  linear gain coefficient of mode a
    """

    kappa: float
    gamma: float
    omega: float
    theta: float
    gain_a: float


@dataclass(frozen=True)
class DerivedParams:
    zeta: float  # pump rate over slow decay
    zeta_p: float  # pump rate over fast decay (fast rate is the unit)
    chi: float  # slow over fast decay ratio
    b_coef: float  # saturation denominator (4 + zeta^2)(1 + zeta*zeta_p)
    exp_mtheta: float  # phase-fluctuation attenuation factor


@dataclass(frozen=True)
class SpectralData:
    """Relaxation branches of the 2x2 drift and their root-free building blocks.

    mu_plus/mu_minus are kappa/2 + (A/2B)(drive +- sqrt(disc)); they may be
    complex (oscillatory approach) and mu_minus may have negative real part
    at strong driving, in which case no steady state exists.  p_scaled and
    q_*_scaled carry p*delta and q*delta, finite in every regime; p_raw and
    q_*_raw hold the bare amplitude ratios and are None when the branches
    are too close for the division to mean anything.
    """

    mu_plus: complex
    mu_minus: complex
    mu_sum: float
    mu_diff: complex
    delta2: float
    disc: float
    disc_scale: float
    gain_ratio: float
    p_scaled: float
    q_plus_scaled: float
    q_minus_scaled: float
    p_raw: complex | None
    q_plus_raw: complex | None
    q_minus_raw: complex | None
    regime: str
    stable: bool


@dataclass(frozen=True)
class DiffusionData:
    l_coef: float
    m_coef: float
    d_aa: float
    d_ab: float
    d_bb: float


def validate_params(params: SystemParams) -> SystemParams:
    """Raise a field-specific error for the first invalid entry."""
    for name in ("kappa", "gamma", "omega", "theta", "gain_a"):
        value = getattr(params, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise NonFiniteParameter(f"{name} = {value!r} is not a finite number")
    if params.kappa <= 0.0:
        raise NonPositiveKappa(f"kappa = {params.kappa} must be > 0")
    if params.gamma <= 0.0:
        raise NonPositiveGamma(f"gamma = {params.gamma} must be > 0")
    if params.omega < 0.0:
        raise NegativeOmega(f"omega = {params.omega} must be >= 0")
    if params.theta < 0.0:
        raise NegativeTheta(f"theta = {params.theta} must be >= 0")
    if params.gain_a <= 0.0:
        raise NonPositiveGain(f"gain_a = {params.gain_a} must be > 0")
    return params


def derived_params(params: SystemParams) -> DerivedParams:
    validate_params(params)
    zeta = params.omega / params.gamma
    zeta_p = params.omega
    b_coef = (4.0 + zeta * zeta) * (1.0 + zeta * zeta_p)
    return DerivedParams(
        zeta=zeta,
        zeta_p=zeta_p,
        chi=params.gamma,
        b_coef=b_coef,
        exp_mtheta=math.exp(-params.theta),
    )


def spectral_data(params: SystemParams) -> SpectralData:
    """Decompose the drift into its two relaxation branches.

    The discriminant is assembled from three non-negative terms T1 + T2 - T3;
    their sum doubles as the natural magnitude scale against which "close to
    degenerate" is judged.  chi > 0 guarantees T2 > 0, so the scale never
    vanishes and the relative band test is always meaningful.
    """
    d = derived_params(params)
    em = d.exp_mtheta
    cross = 2.0 - d.zeta_p * d.zeta
    t1 = d.zeta_p * d.zeta_p * (1.0 + d.zeta * d.zeta_p) ** 2
    t2 = 4.0 * (d.zeta_p * d.zeta_p + d.chi) ** 2
    t3 = (cross * em) ** 2
    disc = t1 + t2 - t3
    scale = t1 + t2 + t3

    g = params.gain_a / d.b_coef
    drive = (2.0 * d.zeta_p + d.zeta) * em
    root = cmath.sqrt(complex(disc))
    mu_plus = 0.5 * params.kappa + 0.5 * g * (drive + root)
    mu_minus = 0.5 * params.kappa + 0.5 * g * (drive - root)
    mu_sum = params.kappa + g * drive
    mu_diff = g * root
    delta2 = g * g * disc

    p_scaled = g * 2.0 * (d.zeta_p * d.zeta_p + d.chi)
    q_plus_scaled = g * (-d.zeta_p * (1.0 + d.zeta_p * d.zeta) + cross * em)
    q_minus_scaled = g * (-d.zeta_p * (1.0 + d.zeta_p * d.zeta) - cross * em)

    degenerate = abs(disc) <= DEGENERACY_BAND * scale
    if degenerate:
        regime = "degenerate"
        p_raw = q_plus_raw = q_minus_raw = None
    else:
        regime = "oscillatory" if disc < 0.0 else "overdamped"
        p_raw = complex(p_scaled) / mu_diff
        q_plus_raw = complex(q_plus_scaled) / mu_diff
        q_minus_raw = complex(q_minus_scaled) / mu_diff

    stable = disc <= 0.0 or mu_sum > mu_diff.real
    return SpectralData(
        mu_plus=mu_plus,
        mu_minus=mu_minus,
        mu_sum=mu_sum,
        mu_diff=mu_diff,
        delta2=delta2,
        disc=disc,
        disc_scale=scale,
        gain_ratio=g,
        p_scaled=p_scaled,
        q_plus_scaled=q_plus_scaled,
        q_minus_scaled=q_minus_scaled,
        p_raw=p_raw,
        q_plus_raw=q_plus_raw,
        q_minus_raw=q_minus_raw,
        regime=regime,
        stable=stable,
    )


def diffusion_data(params: SystemParams) -> DiffusionData:
    """Noise strengths: D = [[d_aa, d_ab], [d_ab, 0]] in the (a, b+) ordering.

    The zero bottom-right entry with a non-zero off-diagonal one makes D
    indefinite -- these are operator-ordering coefficients, not a classical
    covariance, so no trajectory-level sampling can realize them.
    """
    d = derived_params(params)
    em = d.exp_mtheta
    l_coef = 2.0 * d.zeta_p * d.zeta_p + 2.0 * d.chi - (2.0 * d.zeta_p + d.zeta) * em
    m_coef = d.zeta_p * (1.0 + d.zeta_p * d.zeta) + (2.0 - d.zeta_p * d.zeta) * em
    g = params.gain_a / d.b_coef
    return DiffusionData(
        l_coef=l_coef,
        m_coef=m_coef,
        d_aa=g * l_coef,
        d_ab=0.5 * g * m_coef,
        d_bb=0.0,
    )
