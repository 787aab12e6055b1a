"""Auxiliary-differential-equation polarization update ("adem" method).

Comparison baseline: the oscillator ODE

    wp^2 P + 2 dp dP/dt + d2P/dt2 = eps0 deps wp^2 E

is stepped with central differences for both derivatives, E sampled at
integer steps, solved explicitly for P^{N+1}:

    P^{N+1} = [ (2 - wp^2 dt^2) P^N - (1 - dp dt) P^{N-1}
                + eps0 deps wp^2 dt^2 E^N ] / (1 + dp dt)

A two-level history per cell replaces the complex accumulators.  The
half-step current the leapfrog consumes is the central difference
(P^{N+1} - P^N)/dt.  Explicit and second order like the recursive
Green-function update, so the two methods are structurally comparable.
Stability requires wp*dt well below 2; no hard check is made.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import EPS0
from .dispersion import LorentzPole


@dataclass
class AdePoleState:
    """Two-level polarization history (p_now = P^N, p_prev = P^{N-1}).

    Fields may be scalars or ndarrays (one per cell); fresh states are zero.
    """

    p_now: float | np.ndarray = 0.0
    p_prev: float | np.ndarray = 0.0

    @classmethod
    def zeros(cls, n_cells: int) -> "AdePoleState":
        return cls(np.zeros(n_cells), np.zeros(n_cells))


def ade_advance(state: AdePoleState, e_now, pole: LorentzPole, dt: float):
    """One explicit step; returns (new_state, p_next) with p_next = P^{N+1}."""
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    wp2dt2 = (pole.omega_p * dt) ** 2
    p_next = (
        (2.0 - wp2dt2) * state.p_now
        - (1.0 - pole.delta_p * dt) * state.p_prev
        + EPS0 * pole.delta_eps * pole.omega_p**2 * dt * dt * e_now
    ) / (1.0 + pole.delta_p * dt)
    return AdePoleState(p_now=p_next, p_prev=state.p_now), p_next


def ade_current_half_step(state_after_advance: AdePoleState, dt: float):
    """dP/dt at t_N + dt/2: central difference of the advanced state,
    (P^{N+1} - P^N)/dt."""
    return (state_after_advance.p_now - state_after_advance.p_prev) / dt
