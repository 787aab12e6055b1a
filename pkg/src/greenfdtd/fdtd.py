"""1D staggered-grid leapfrog Maxwell solver with dispersive media.

E_y lives on the N integer nodes x_i = i*dx at integer time steps; B_z
lives on the N-1 half nodes at half time steps (stored as magnetic
induction, tesla).  SI form of the update, with both curls negative so
vacuum reduces to the standard wave equation:

    dB/dt = -dE/dx
    dE/dt = [ -(1/mu0) dB/dx - sigma E - sum_p dP_p/dt ] / (eps0 eps_inf)

The dispersive current dP/dt is evaluated at t_N + dt/2 by the selected
updater ("tgm" recursive Green-function accumulators or "adem" two-level
ADE history) after injecting E^N, and enters the E update like a current
density; the leapfrog itself is unmodified.

A Gaussian hard source pins node 0 while t < 2*t0; both end nodes then
follow first-order Mur absorbing updates.  Optionally the last cells of
the grid carry a graded absorber: an electric conductivity ramp paired
with a magnetic-loss ramp impedance-matched to the local static
permittivity, so even quasi-static content is absorbed instead of
reflected (a bare conductivity taper turns into a mirror at low
frequency).  The absorber is part of the boundary treatment and leaves
the medium map untouched.

A Simulation must be exclusively owned while stepping; distinct
Simulations are independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ade as _ade
from . import greens as _greens
from .constants import C0, EPS0, MU0
from .dispersion import Medium
from .errors import ValidationError


@dataclass(frozen=True)
class GaussianSource:
    """Gaussian-enveloped carrier pinned at the left boundary.

    value(t) = exp(-(t-t0)^2 / (2 delta_t^2)) * cos(omega0 (t-t0))
    """

    t0: float
    delta_t: float
    omega0: float

    def __post_init__(self):
        if not self.delta_t > 0.0:
            raise ValueError(f"delta_t must be positive, got {self.delta_t}")


def source_value(src: GaussianSource, t: float) -> float:
    """Boundary field value at time t >= 0."""
    arg = (t - src.t0) / src.delta_t
    return float(np.exp(-0.5 * arg * arg) * np.cos(src.omega0 * (t - src.t0)))


def mur_update(e_boundary_old, e_neighbor_old, e_neighbor_new, dx, dt):
    """First-order Mur absorbing update for an end node (vacuum speed)."""
    k = (C0 * dt - dx) / (C0 * dt + dx)
    return e_neighbor_old + k * (e_neighbor_new - e_boundary_old)


@dataclass
class ProbeSeries:
    """E samples at one node, one per executed step (first sample at t=dt)."""

    node_index: int
    samples: np.ndarray
    dt: float

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(1, len(self.samples) + 1)


@dataclass
class Grid1D:
    """Staggered field arrays and the per-node medium map."""

    e: np.ndarray           # N values, V/m
    b: np.ndarray           # N-1 values, T
    medium_index: np.ndarray  # N ints into the media table
    dx: float
    dt: float


class _TgmPole:
    """Recursive Green-function state bound to a set of grid nodes."""

    def __init__(self, node_idx, pole, dt):
        self.idx = node_idx
        self.pole = pole
        self.coeffs = _greens.make_coefficients(pole, dt)
        self.state = _greens.PoleState.zeros(len(node_idx))

    def advance_and_current(self, e):
        self.state = _greens.advance_state(self.state, e[self.idx], self.coeffs)
        return _greens.polarization_current_half_step(self.state, self.coeffs)


class _AdePole:
    """ADE two-level state bound to a set of grid nodes."""

    def __init__(self, node_idx, pole, dt):
        self.idx = node_idx
        self.pole = pole
        self.dt = dt
        self.state = _ade.AdePoleState.zeros(len(node_idx))

    def advance_and_current(self, e):
        self.state, _ = _ade.ade_advance(self.state, e[self.idx], self.pole, self.dt)
        return _ade.ade_current_half_step(self.state, self.dt)


class Simulation:
    """Owns the grid, media table, source and dispersive updaters."""

    def __init__(self, grid: Grid1D, media, source=None, method="tgm",
                 absorber_sigma=None, absorber_beta_m=None, boundary="mur"):
        if boundary not in ("mur", "reflect"):
            raise ValueError(f"unknown boundary {boundary!r}")
        if method not in ("tgm", "adem", None):
            raise ValueError(f"unknown method {method!r}")
        self.grid = grid
        self.media = tuple(media)
        self.source = source
        self.method = method
        self.boundary = boundary
        self.step_index = 0

        self.eps_inf_node = np.array([self.media[m].eps_inf for m in grid.medium_index])
        self.sigma_node = np.array([self.media[m].sigma for m in grid.medium_index])
        if absorber_sigma is not None:
            self.sigma_node = self.sigma_node + absorber_sigma
        # magnetic absorber loss on B nodes; scalars keep the lossless
        # update bit-identical to the plain Yee form
        if absorber_beta_m is None:
            self._bm_lo = 1.0
            self._bm_hi = 1.0
        else:
            self._bm_lo = 1.0 - 0.5 * absorber_beta_m
            self._bm_hi = 1.0 / (1.0 + 0.5 * absorber_beta_m)
        self._dt_over_eps = grid.dt / (EPS0 * self.eps_inf_node[1:-1])

        self._poles = []
        if method is not None:
            cls = _TgmPole if method == "tgm" else _AdePole
            for m, medium in enumerate(self.media):
                if not medium.dispersive:
                    continue
                idx = np.flatnonzero(grid.medium_index == m)
                if len(idx) == 0:
                    continue
                for pole in medium.poles:
                    self._poles.append(cls(idx, pole, grid.dt))

    @property
    def time(self) -> float:
        return self.step_index * self.grid.dt

    @property
    def n_nodes(self) -> int:
        return len(self.grid.e)

    def _pin_source(self, t) -> None:
        # hard source: overwrite node 0 while the envelope is alive
        if self.source is not None and t < 2.0 * self.source.t0:
            self.grid.e[0] = source_value(self.source, t)

    def _half_step_current(self):
        if not self._poles:
            return None
        j = np.zeros(self.n_nodes)
        for rec in self._poles:
            j[rec.idx] += rec.advance_and_current(self.grid.e)
        return j

    def step(self) -> None:
        """Advance the grid by one dt (one full leapfrog cycle)."""
        g = self.grid
        e, b, dt, dx = g.e, g.b, g.dt, g.dx
        self._pin_source(self.time)
        j_half = self._half_step_current()
        e0_old, e1_old = e[0], e[1]
        en_old, enn_old = e[-1], e[-2]
        b[:] = (b * self._bm_lo - (dt / dx) * (e[1:] - e[:-1])) * self._bm_hi
        rhs = -(b[1:] - b[:-1]) / (MU0 * dx) - self.sigma_node[1:-1] * e[1:-1]
        if j_half is not None:
            rhs -= j_half[1:-1]
        e[1:-1] += self._dt_over_eps * rhs
        if self.boundary == "mur":
            e[0] = mur_update(e0_old, e1_old, e[1], dx, dt)
            e[-1] = mur_update(en_old, enn_old, e[-2], dx, dt)
        self.step_index += 1
        self._pin_source(self.time)

    def run(self, n_steps: int, probe_nodes) -> list:
        """Execute n_steps, recording E at each probe node after every step.

        Deterministic: identical configuration gives bit-identical series.
        """
        nodes = [int(i) for i in probe_nodes]
        for i in nodes:
            if not 0 <= i < self.n_nodes:
                raise ValueError(f"probe node {i} outside grid of {self.n_nodes} nodes")
        rec = np.empty((n_steps, len(nodes)))
        for k in range(n_steps):
            self.step()
            for c, i in enumerate(nodes):
                rec[k, c] = self.grid.e[i]
        return [ProbeSeries(i, rec[:, c].copy(), self.grid.dt) for c, i in enumerate(nodes)]


def probe_nodes_from_fractions(fractions, n_nodes: int) -> list:
    """Grid node indices for probe positions given as fractions of L."""
    return [int(round(f * (n_nodes - 1))) for f in fractions]


def interface_node(n_nodes: int) -> int:
    """First node with x >= L/2 (the medium starts here)."""
    return int(np.ceil((n_nodes - 1) / 2))


def build_simulation(config, *, method=None, boundary="mur") -> Simulation:
    """Assemble the half-space experiment from a validated SimConfig.

    Nodes with x < L/2 are vacuum; nodes with x >= L/2 carry the config
    medium.  Pole coefficients are baked once; all fields start at zero.
    An absorber taper over the last `absorber_cells` nodes is added when
    configured, matched per node to the local static permittivity.
    """
    n = int(config.n_grid)
    if n < 16:
        raise ValidationError(f"n_grid must be >= 16, got {n}")
    if not config.system_length > 0.0:
        raise ValidationError(f"system_length must be positive, got {config.system_length}")
    if not 0.0 < config.cfl_factor <= 1.0:
        raise ValidationError(f"CFL factor must satisfy 0 < cfl <= 1, got {config.cfl_factor}")
    dx = config.system_length / (n - 1)
    dt = config.cfl_factor * dx / C0

    media = (Medium.vacuum(), config.medium)
    medium_index = np.zeros(n, dtype=np.int8)
    medium_index[interface_node(n):] = 1

    absorber_sigma = None
    absorber_beta_m = None
    w = int(config.absorber_cells)
    if w > 0:
        if w > n // 3:
            raise ValidationError(f"absorber_cells must be <= n_grid/3, got {w}")
        smax = float(config.absorber_sigma)
        if smax < 0.0:
            raise ValidationError(f"absorber_sigma must be non-negative, got {smax}")
        absorber_sigma = np.zeros(n)
        u = np.arange(w) / max(w - 1, 1)
        absorber_sigma[n - w:] = smax * u**3
        eps_static = np.array([media[m].eps_static for m in medium_index])
        sig_b = 0.5 * (absorber_sigma[:-1] + absorber_sigma[1:])
        eps_b = 0.5 * (eps_static[:-1] + eps_static[1:])
        absorber_beta_m = sig_b * dt / (EPS0 * eps_b)

    grid = Grid1D(
        e=np.zeros(n),
        b=np.zeros(n - 1),
        medium_index=medium_index,
        dx=dx,
        dt=dt,
    )
    src = GaussianSource(config.source.t0, config.source.delta_t, config.source.omega0)
    return Simulation(
        grid,
        media,
        source=src,
        method=config.method if method is None else method,
        absorber_sigma=absorber_sigma,
        absorber_beta_m=absorber_beta_m,
        boundary=boundary,
    )
