"""Command-line entry point.

    greenfdtd run        --config <path> [--out <path>]
    greenfdtd reflection --config <path> [--out <path>]
    greenfdtd green      --config <path> [--out <path>]
    greenfdtd verify     --config <path>

`run` executes one simulation and emits the raw probe series as CSV;
`reflection` runs the vacuum reference plus both dispersive updaters,
emits |R|(f) against the analytic coefficient and prints an error
summary; `green` compares the closed-form rectangle response with the
RK4 oracle; `verify` runs the invariant suite.

CSV output is locale-independent (scientific notation, 12+ significant
digits, '\n' line endings) and goes to --out when given, the config's
[run] out path otherwise, else stdout.  Exit status: 0 success, 1
usage/config error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis, oracle, verify
from .config import load_config
from .constants import C0
from .dispersion import Medium, reflection_coefficient
from .errors import ConfigError, ValidationError
from .fdtd import build_simulation, probe_nodes_from_fractions
from .greens import green_function


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _write_csv(header, rows, out_path):
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _run_probes(config, method, medium=None):
    cfg = config if medium is None else config.with_medium(medium)
    sim = build_simulation(cfg, method=method)
    nodes = probe_nodes_from_fractions(config.probes, config.n_grid)
    return sim.run(config.n_steps, nodes), sim.grid.dt


def cmd_run(config, out_path=None) -> int:
    """Single simulation; CSV of the raw probe series."""
    series, _ = _run_probes(config, config.method)
    header = "time_s," + ",".join(f"probe{i + 1}" for i in range(len(series)))
    times = series[0].times if series else np.empty(0)
    rows = (
        [t] + [s.samples[k] for s in series]
        for k, t in enumerate(times)
    )
    _write_csv(header, rows, out_path)
    return 0


def cmd_reflection(config, out_path=None) -> int:
    """Vacuum reference + both dispersive updaters; CSV of |R|(f) columns
    and a stdout summary of each method's error against the analytic
    coefficient."""
    # reflection is extracted at the vacuum-side probe nearest the
    # interface (the second of the default three)
    probe_slot = min(1, len(config.probes) - 1)
    ref_series, dt = _run_probes(config, "tgm", medium=Medium.vacuum())
    tgm_series, _ = _run_probes(config, "tgm")
    ade_series, _ = _run_probes(config, "adem")

    incident = ref_series[probe_slot]
    r_tgm = analysis.reflection_magnitude(incident, tgm_series[probe_slot],
                                          config.band_threshold)
    r_ade = analysis.reflection_magnitude(incident, ade_series[probe_slot],
                                          config.band_threshold)
    freqs = np.array([f for f, _ in r_tgm])
    tgm_mag = np.array([m for _, m in r_tgm])
    ade_mag = np.array([m for _, m in r_ade])
    analytic = np.abs(reflection_coefficient(config.medium, 2.0 * np.pi * freqs))

    rows = zip(freqs, analytic, tgm_mag, ade_mag)
    _write_csv("freq_hz,r_analytic,r_tgm,r_adem", rows, out_path)

    for name, mag in (("tgm", tgm_mag), ("adem", ade_mag)):
        err = np.abs(mag - analytic)
        print(f"{name}: max abs error {err.max():.6f}, "
              f"rms error {np.sqrt(np.mean(err**2)):.6f} "
              f"over {len(freqs)} bins in [{freqs[0]:.3e}, {freqs[-1]:.3e}] Hz")
    return 0


def cmd_green(config, out_path=None) -> int:
    """Closed-form rectangle response vs RK4 oracle; CSV comparison."""
    if not config.medium.poles:
        raise ValidationError("green command needs at least one medium pole")
    pole = config.medium.poles[0]
    dx = config.system_length / (config.n_grid - 1)
    dt = config.cfl_factor * dx / C0
    t_end = 30.5 * dt
    trace = oracle.green_rk4(pole, 0.0, dt, t_end, dt / 1000.0)
    rows = []
    taus = np.arange(0.5 * dt, t_end - 0.25 * dt, 0.25 * dt)
    for t in taus:
        g_closed = green_function(pole, float(t), 0.0, dt)
        g_rk4 = trace.at(float(t))
        rows.append([t, g_closed, g_rk4, abs(g_closed - g_rk4)])
    _write_csv("t_s,g_closed_form,g_rk4,abs_diff", rows, out_path)
    return 0


def cmd_verify(config, corrupt_propagator: float = 1.0) -> int:
    """Invariant suite; per-check status lines; exit 2 on any failure."""
    results = verify.run_checks(config, corrupt_propagator)
    for res in results:
        print(f"{res.status:4s} {res.name}: {res.detail}")
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 2 if failed else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="greenfdtd",
        description="1D FDTD solver for Lorentz-dispersive media",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "single simulation, raw probe series CSV"),
        ("reflection", "reflection-coefficient experiment CSV + summary"),
        ("green", "closed-form vs RK4 rectangle-response CSV"),
        ("verify", "run the invariant suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to config file")
        if name != "verify":
            p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        config = load_config(args.config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None) or config.out
    try:
        if args.command == "run":
            return cmd_run(config, out)
        if args.command == "reflection":
            return cmd_reflection(config, out)
        if args.command == "green":
            return cmd_green(config, out)
        if args.command == "verify":
            return cmd_verify(config)
    except (ConfigError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    raise SystemExit(main())
