"""Line-oriented config files for the half-space reflection experiment.

Grammar: `[section]` headers, `key = value` lines, `#` comments, blank
lines ignored.  Sections: grid, source, medium, medium.pole.<k>, run.
All values are SI.  Keys:

    [grid]    length (m), nodes, cfl (default 0.9),
              absorber_cells (default 0), absorber_sigma (S/m, default 0)
    [source]  t0 (s), width (s), omega0 (rad/s)
    [medium]  eps_inf (default 1.0), sigma (default 0.0)
    [medium.pole.<k>]  delta_eps, omega_p (rad/s), delta_p (rad/s)
    [run]     steps, probes (fractions of L, default 0.25, 0.499, 0.75),
              method (tgm|adem, default tgm),
              band_threshold (default 0.001), out (optional path)

An empty or absent [medium] section means vacuum.  Pole sections must be
numbered 1..P.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources

from .dispersion import LorentzPole, Medium
from .errors import ConfigError, ValidationError
from .fdtd import GaussianSource

_SECTIONS = ("grid", "source", "medium", "run")

_DEFAULTS = {
    ("grid", "cfl"): "0.9",
    ("grid", "absorber_cells"): "0",
    ("grid", "absorber_sigma"): "0.0",
    ("medium", "eps_inf"): "1.0",
    ("medium", "sigma"): "0.0",
    ("run", "steps"): "32768",
    ("run", "probes"): "0.25, 0.499, 0.75",
    ("run", "method"): "tgm",
    ("run", "band_threshold"): "0.001",
}


@dataclass(frozen=True)
class SimConfig:
    """Validated experiment description (see module docstring for units)."""

    system_length: float
    n_grid: int
    cfl_factor: float
    source: GaussianSource
    medium: Medium
    n_steps: int
    probes: tuple = (0.25, 0.499, 0.75)
    method: str = "tgm"
    band_threshold: float = 0.001
    absorber_cells: int = 0
    absorber_sigma: float = 0.0
    out: str | None = None

    def with_medium(self, medium: Medium) -> "SimConfig":
        return replace(self, medium=medium)


def _parse_lines(text: str):
    """Raw pass: {(section, key): value} with line-number diagnostics."""
    values = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if not (section in _SECTIONS or section.startswith("medium.pole.")):
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: malformed 'key = value' pair")
        if (section, key) in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{section}]")
        values[(section, key)] = (value, lineno)
    return values


def _take(values, section, key, conv, required=False):
    if (section, key) in values:
        raw, lineno = values.pop((section, key))
        try:
            return conv(raw)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    if (section, key) in _DEFAULTS:
        return conv(_DEFAULTS[(section, key)])
    if required:
        raise ConfigError(f"missing required key {key!r} in section [{section}]")
    return None


def _float_list(raw: str):
    return tuple(float(part) for part in raw.split(","))


def parse_config(text: str) -> SimConfig:
    """Parse and validate a config document.

    Raises ConfigError for syntax problems (with line numbers) and
    ValidationError naming the violated invariant.
    """
    values = _parse_lines(text)

    length = _take(values, "grid", "length", float, required=True)
    nodes = _take(values, "grid", "nodes", int, required=True)
    cfl = _take(values, "grid", "cfl", float)
    absorber_cells = _take(values, "grid", "absorber_cells", int)
    absorber_sigma = _take(values, "grid", "absorber_sigma", float)

    t0 = _take(values, "source", "t0", float, required=True)
    width = _take(values, "source", "width", float, required=True)
    omega0 = _take(values, "source", "omega0", float, required=True)

    eps_inf = _take(values, "medium", "eps_inf", float)
    sigma = _take(values, "medium", "sigma", float)

    poles = []
    k = 1
    while any(sec == f"medium.pole.{k}" for sec, _ in values):
        sec = f"medium.pole.{k}"
        fields = dict(
            delta_eps=_take(values, sec, "delta_eps", float, required=True),
            omega_p=_take(values, sec, "omega_p", float, required=True),
            delta_p=_take(values, sec, "delta_p", float, required=True),
        )
        try:
            poles.append(LorentzPole(**fields))
        except ValueError as exc:
            raise ValidationError(f"[{sec}]: {exc}") from None
        k += 1

    steps = _take(values, "run", "steps", int)
    probes = _take(values, "run", "probes", _float_list)
    method = _take(values, "run", "method", str)
    band_threshold = _take(values, "run", "band_threshold", float)
    out = _take(values, "run", "out", str)

    if values:
        (sec, key), (_, lineno) = next(iter(values.items()))
        raise ConfigError(f"line {lineno}: unknown key {key!r} in section [{sec}]")

    # invariant checks, each naming what it violates
    if not length > 0.0:
        raise ValidationError(f"grid.length must be positive, got {length}")
    if nodes < 16:
        raise ValidationError(f"grid.nodes must be >= 16, got {nodes}")
    if not 0.0 < cfl <= 1.0:
        raise ValidationError(f"CFL factor must satisfy 0 < cfl <= 1, got {cfl}")
    if absorber_cells < 0:
        raise ValidationError(f"grid.absorber_cells must be >= 0, got {absorber_cells}")
    if absorber_sigma < 0.0:
        raise ValidationError(f"grid.absorber_sigma must be >= 0, got {absorber_sigma}")
    if steps < 0:
        raise ValidationError(f"run.steps must be >= 0, got {steps}")
    if not probes or not all(0.0 < p < 1.0 for p in probes):
        raise ValidationError(f"run.probes must be fractions in (0, 1), got {probes}")
    if method not in ("tgm", "adem"):
        raise ValidationError(f"run.method must be 'tgm' or 'adem', got {method!r}")
    if not 0.0 < band_threshold <= 1.0:
        raise ValidationError(
            f"run.band_threshold must lie in (0, 1], got {band_threshold}")

    try:
        source = GaussianSource(t0=t0, delta_t=width, omega0=omega0)
        medium = Medium(eps_inf=eps_inf, sigma=sigma, poles=tuple(poles))
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    return SimConfig(
        system_length=length,
        n_grid=nodes,
        cfl_factor=cfl,
        source=source,
        medium=medium,
        n_steps=steps,
        probes=probes,
        method=method,
        band_threshold=band_threshold,
        absorber_cells=absorber_cells,
        absorber_sigma=absorber_sigma,
        out=out,
    )


def load_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def table1_path():
    """Filesystem path of the bundled half-space experiment config."""
    return resources.files("greenfdtd").joinpath("data/table1.cfg")


def load_table1() -> SimConfig:
    return parse_config(table1_path().read_text(encoding="utf-8"))
