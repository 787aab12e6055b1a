"""CLI contracts: CSV formats, exit codes, determinism, verify hooks."""

import numpy as np
import pytest

from greenfdtd import cli
from greenfdtd.config import load_table1, parse_config
from greenfdtd.verify import FAIL, PASS, SKIP, run_checks

SMALL = """
[grid]
length = 0.01
nodes = 400
[source]
t0 = 1.0e-11
width = 1.0e-12
omega0 = 6.283185307179586e11
[medium]
eps_inf = 1.5
[medium.pole.1]
delta_eps = 3.0
omega_p = 1.2566370614359172e11
delta_p = 1.2566370614359172e10
[run]
steps = 600
"""

VACUUM = """
[grid]
length = 0.01
nodes = 400
[source]
t0 = 1.0e-11
width = 1.0e-12
omega0 = 6.283185307179586e11
[run]
steps = 500
"""


@pytest.fixture
def small_cfg(tmp_path):
    p = tmp_path / "small.cfg"
    p.write_text(SMALL)
    return p


@pytest.fixture
def vacuum_cfg(tmp_path):
    p = tmp_path / "vacuum.cfg"
    p.write_text(VACUUM)
    return p


class TestRunCommand:
    def test_csv_contract(self, small_cfg, tmp_path):
        out = tmp_path / "run.csv"
        assert cli.main(["run", "--config", str(small_cfg), "--out", str(out)]) == 0
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = out.read_text().splitlines()
        assert lines[0] == "time_s,probe1,probe2,probe3"
        assert len(lines) == 601
        # locale-independent scientific notation with 12+ significant digits
        first = lines[1].split(",")
        assert all("e" in v and "." in v for v in first)
        assert len(first[0].split("e")[0].replace("-", "").replace(".", "")) >= 12

    def test_zero_steps_header_only(self, tmp_path):
        p = tmp_path / "zero.cfg"
        p.write_text(VACUUM.replace("steps = 500", "steps = 0"))
        out = tmp_path / "zero.csv"
        assert cli.main(["run", "--config", str(p), "--out", str(out)]) == 0
        assert out.read_text() == "time_s,probe1,probe2,probe3\n"

    def test_byte_identical_reruns(self, small_cfg, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        cli.main(["run", "--config", str(small_cfg), "--out", str(out1)])
        cli.main(["run", "--config", str(small_cfg), "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_early_window_is_delayed_source(self, small_cfg, tmp_path):
        out = tmp_path / "run.csv"
        cli.main(["run", "--config", str(small_cfg), "--out", str(out)])
        data = np.genfromtxt(out, delimiter=",", names=True)
        cfg = parse_config(SMALL)
        t_probe = data["time_s"][np.abs(data["probe1"]).argmax()]
        dx = cfg.system_length / (cfg.n_grid - 1)
        expected = cfg.source.t0 + round(0.25 * (cfg.n_grid - 1)) * dx / 2.99792458e8
        dt = 0.9 * dx / 2.99792458e8
        assert abs(t_probe - expected) < 2 * dt


class TestReflectionCommand:
    def test_vacuum_medium_reflects_nothing(self, vacuum_cfg, tmp_path, capsys):
        out = tmp_path / "refl.csv"
        assert cli.main(["reflection", "--config", str(vacuum_cfg), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "freq_hz,r_analytic,r_tgm,r_adem"
        data = np.genfromtxt(out, delimiter=",", names=True)
        assert np.all(data["r_analytic"] == 0.0)
        assert np.all(data["r_tgm"] < 1e-3)
        assert np.all(data["r_adem"] < 1e-3)
        summary = capsys.readouterr().out
        assert "tgm:" in summary and "adem:" in summary

    def test_single_bin_band(self, tmp_path):
        p = tmp_path / "one.cfg"
        p.write_text(VACUUM + "\n[run]\nband_threshold = 1.0\n")
        out = tmp_path / "one.csv"
        assert cli.main(["reflection", "--config", str(p), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2


class TestGreenCommand:
    def test_closed_form_tracks_rk4(self, small_cfg, tmp_path):
        out = tmp_path / "green.csv"
        assert cli.main(["green", "--config", str(small_cfg), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t_s,g_closed_form,g_rk4,abs_diff"
        data = np.genfromtxt(out, delimiter=",", names=True)
        assert data["abs_diff"].max() < 1e-6 * np.abs(data["g_closed_form"]).max()

    def test_undamped_pole_bounded_oscillation(self, tmp_path):
        # resonance fast enough that the sampled window spans two periods
        p = tmp_path / "undamped.cfg"
        text = SMALL.replace("omega_p = 1.2566370614359172e11", "omega_p = 6.0e12")
        text = text.replace("delta_p = 1.2566370614359172e10", "delta_p = 0.0")
        p.write_text(text)
        out = tmp_path / "g.csv"
        assert cli.main(["green", "--config", str(p), "--out", str(out)]) == 0
        data = np.genfromtxt(out, delimiter=",", names=True)
        g = data["g_closed_form"]
        assert np.abs(g).max() < 10.0 / 6.0e12**2
        assert g.min() < 0 < g.max()

    def test_needs_a_pole(self, vacuum_cfg):
        assert cli.main(["green", "--config", str(vacuum_cfg)]) == 1


class TestVerifyCommand:
    def test_default_config_all_pass(self, small_cfg, capsys):
        assert cli.main(["verify", "--config", str(small_cfg)]) == 0
        out = capsys.readouterr().out
        assert "8/8 checks passed" in out
        assert "FAIL" not in out

    def test_corrupted_propagator_fails_recurrence(self):
        cfg = load_table1()
        results = run_checks(cfg, corrupt_propagator=1.0 + 1e-4)
        by_name = {r.name: r for r in results}
        assert by_name["recurrence-vs-direct-sum"].status == FAIL

    def test_overdamped_conjugacy_skipped(self, tmp_path):
        text = SMALL.replace("delta_p = 1.2566370614359172e10",
                             "delta_p = 3.0e11")
        cfg = parse_config(text)
        results = run_checks(cfg)
        by_name = {r.name: r for r in results}
        assert by_name["conjugacy"].status == SKIP
        assert "overdamped" in by_name["conjugacy"].detail
        assert all(r.status in (PASS, SKIP) for r in results)

    def test_exit_code_two_on_failure(self, small_cfg, capsys, monkeypatch):
        real = cli.verify.run_checks
        monkeypatch.setattr(
            cli.verify, "run_checks",
            lambda config, corrupt_propagator=1.0: real(config, 1.0 + 1e-4),
        )
        assert cli.main(["verify", "--config", str(small_cfg)]) == 2
        assert "FAIL" in capsys.readouterr().out


class TestRefinementMonotonicity:
    def test_summary_errors_non_increasing_on_doubling(self):
        import math

        from greenfdtd.analysis import reflection_magnitude
        from greenfdtd.config import SimConfig
        from greenfdtd.dispersion import LorentzPole, Medium, reflection_coefficient
        from greenfdtd.fdtd import GaussianSource, build_simulation, probe_nodes_from_fractions

        wp = 2 * math.pi * 20e9
        medium = Medium(eps_inf=1.5, sigma=0.0, poles=(LorentzPole(3.0, wp, 0.1 * wp),))

        def summary_errors(n_grid, steps, absorber_cells):
            cfg = SimConfig(
                system_length=0.02,
                n_grid=n_grid,
                cfl_factor=0.9,
                source=GaussianSource(1e-11, 1e-12, 2 * math.pi * 100e9),
                medium=medium,
                n_steps=steps,
                absorber_cells=absorber_cells,
                absorber_sigma=10.0,
            )
            nodes = probe_nodes_from_fractions(cfg.probes, n_grid)
            ref = build_simulation(cfg.with_medium(Medium.vacuum()), method="tgm").run(steps, nodes)
            out = {}
            for method in ("tgm", "adem"):
                tot = build_simulation(cfg, method=method).run(steps, nodes)
                pairs = reflection_magnitude(ref[1], tot[1], 1e-3)
                f = np.array([p[0] for p in pairs])
                m = np.array([p[1] for p in pairs])
                ra = np.abs(reflection_coefficient(medium, 2 * np.pi * f))
                err = np.abs(m - ra)
                out[method] = (err.max(), float(np.sqrt(np.mean(err**2))))
            return out

        coarse = summary_errors(600, 8192, 132)
        fine = summary_errors(1200, 16384, 264)
        for method in ("tgm", "adem"):
            assert fine[method][0] <= coarse[method][0]
            assert fine[method][1] <= coarse[method][1]


class TestUsageErrors:
    def test_missing_config_file(self, tmp_path):
        assert cli.main(["run", "--config", str(tmp_path / "nope.cfg")]) == 1

    def test_config_error_exit(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("[grid]\nlength = 0.01\nnodes = 400\ncfl = 2.0\n"
                     "[source]\nt0 = 1e-11\nwidth = 1e-12\nomega0 = 6e11\n")
        assert cli.main(["run", "--config", str(p)]) == 1

    def test_usage_error(self):
        assert cli.main(["frobnicate"]) == 1
