"""Frequency-domain Lorentz material model.

A medium is a high-frequency permittivity eps_inf, a conductivity sigma,
and a set of damped-oscillator poles.  Each pole contributes

    delta_eps * omega_p^2 / (omega_p^2 + 2i*omega*delta_p - omega^2)

to the relative permittivity.  This module also provides the complex
oscillator roots z+/z- used by the time-domain updaters and the analytic
normal-incidence reflection coefficient used as the oracle for the
half-space experiment.

Everything here is a pure function over immutable values and is safe to
call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegeneratePoleError, ResonanceError

# Relative gap below which omega_p and delta_p are treated as coalesced.
_DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class LorentzPole:
    """One damped-oscillator resonance.

    delta_eps : dimensionless oscillator strength
    omega_p   : resonance angular frequency, rad/s (> 0)
    delta_p   : damping rate, rad/s (>= 0, != omega_p)
    """

    delta_eps: float
    omega_p: float
    delta_p: float

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if self.delta_p < 0.0:
            raise ValueError(f"delta_p must be non-negative, got {self.delta_p}")
        if abs(self.delta_p - self.omega_p) <= _DEGENERACY_RTOL * self.omega_p:
            raise DegeneratePoleError(
                f"delta_p == omega_p ({self.omega_p}): critically damped pole "
                "has a double root and is not supported"
            )

    @property
    def overdamped(self) -> bool:
        return self.delta_p > self.omega_p


@dataclass(frozen=True)
class Medium:
    """Material description: eps_inf, conductivity and Lorentz poles.

    Vacuum is Medium(eps_inf=1.0, sigma=0.0, poles=()).
    """

    eps_inf: float = 1.0
    sigma: float = 0.0
    poles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.eps_inf > 0.0:
            raise ValueError(f"eps_inf must be positive, got {self.eps_inf}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        object.__setattr__(self, "poles", tuple(self.poles))

    @classmethod
    def vacuum(cls) -> "Medium":
        return cls(eps_inf=1.0, sigma=0.0, poles=())

    @property
    def eps_static(self) -> float:
        """Zero-frequency relative permittivity eps_inf + sum(delta_eps)."""
        return self.eps_inf + sum(p.delta_eps for p in self.poles)

    @property
    def dispersive(self) -> bool:
        return len(self.poles) > 0


def permittivity(medium: Medium, omega):
    """Complex relative permittivity at angular frequency omega (rad/s).

    omega may be a scalar or an ndarray; it may be zero or negative.
    Raises ResonanceError if an undamped pole is evaluated at +/-omega_p.
    """
    w = np.asarray(omega, dtype=float)
    eps = np.full(w.shape, medium.eps_inf, dtype=complex)
    for p in medium.poles:
        denom = p.omega_p**2 + 2j * w * p.delta_p - w * w
        if np.any(denom == 0):
            raise ResonanceError(
                f"permittivity diverges: undamped pole omega_p={p.omega_p} "
                "evaluated at its resonance"
            )
        eps += p.delta_eps * p.omega_p**2 / denom
    if w.ndim == 0:
        return complex(eps[()])
    return eps


def pole_roots(pole: LorentzPole):
    """Complex angular frequencies z+ and z- of the oscillator.

    z+/- = i*delta_p +/- sqrt(omega_p^2 - delta_p^2), principal branch.
    Underdamped poles give a conjugate-like pair (z- == -conj(z+));
    overdamped poles give two distinct purely imaginary roots.
    """
    # LorentzPole construction already rejects the degenerate case; guard
    # anyway so raw namespaces cannot sneak one in.
    if abs(pole.delta_p - pole.omega_p) <= _DEGENERACY_RTOL * pole.omega_p:
        raise DegeneratePoleError("delta_p == omega_p: double root")
    s = np.sqrt(complex(pole.omega_p**2 - pole.delta_p**2, 0.0))
    z_plus = 1j * pole.delta_p + s
    z_minus = 1j * pole.delta_p - s
    return complex(z_plus), complex(z_minus)


def reflection_coefficient(medium: Medium, omega):
    """Normal-incidence reflection coefficient of a half-space of `medium`
    against vacuum, (sqrt(eps) - 1) / (sqrt(eps) + 1), principal sqrt.

    Valid for non-magnetic media only.  omega must be >= 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("reflection_coefficient requires omega >= 0")
    n = np.sqrt(np.asarray(permittivity(medium, w), dtype=complex))
    r = (n - 1.0) / (n + 1.0)
    if w.ndim == 0:
        return complex(r[()])
    return r
