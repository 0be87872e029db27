"""Exception types for the cascade-emission laser dynamics package.

Every failure mode gets its own class so callers (and the CLI) can react
to *what* went wrong instead of parsing message strings.  All of them
derive from CelError, so ``except CelError`` catches any domain failure
while letting genuine bugs (TypeError, ...) propagate.
"""


class CelError(Exception):
    """Base class for all domain errors raised by this package."""


class NonPositiveKappa(CelError):
    """Cavity damping rate must be strictly positive."""


class NonPositiveGamma(CelError):
    """Atomic decay rate of the intermediate level must be strictly positive."""


class NegativeOmega(CelError):
    """Pump Rabi frequency must be >= 0."""


class NegativeTheta(CelError):
    """Pump-phase fluctuation exponent must be >= 0."""


class NonPositiveGain(CelError):
    """Linear gain coefficient must be strictly positive."""


class NonFiniteParameter(CelError):
    """A parameter was NaN or infinite."""


class NegativeTime(CelError):
    """Evolution time must be >= 0."""


class UnstableSystem(CelError):
    """Requested a steady state where none exists (some Re(mu) <= 0)."""


class InconsistentMoments(CelError):
    """Independently computed moment combinations disagree beyond round-off."""


class UnphysicalCovariance(CelError):
    """Covariance data violates the uncertainty principle beyond round-off."""


class NonPositiveEigenvalue(CelError):
    """A symplectic eigenvalue came out <= 0, which no physical state allows."""


class StepTooLarge(CelError):
    """Integrator step exceeds the resolution the fastest rate demands."""


class UnknownPreset(CelError):
    """Scenario preset name not recognized."""


class IoFailure(CelError):
    """Reading a config or writing an output file failed."""


class RealityViolation(CelError):
    """A quantity that must be real carried a significant imaginary part."""
