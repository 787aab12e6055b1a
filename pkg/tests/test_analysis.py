"""Spectral post-processing: transform properties and |R| extraction."""

import math

import numpy as np
import pytest

from greenfdtd.analysis import reflection_magnitude, spectrum, _padded_length
from greenfdtd.errors import EmptyBandError, SeriesMismatchError
from greenfdtd.fdtd import GaussianSource, ProbeSeries, source_value


def make_series(samples, dt=1e-12, node=7):
    return ProbeSeries(node_index=node, samples=np.asarray(samples, float), dt=dt)


class TestSpectrum:
    def test_padding_rule(self):
        assert _padded_length(1000) == 2048
        assert _padded_length(1024) == 2048
        assert _padded_length(1025) == 4096

    def test_axis_layout(self):
        s = spectrum(make_series(np.ones(100), dt=2e-12))
        m = 256
        assert len(s.freqs) == m // 2 + 1
        assert s.freqs[0] == 0.0
        df = 1.0 / (m * 2e-12)
        assert np.allclose(np.diff(s.freqs), df)
        assert np.all(np.diff(s.freqs) > 0)

    def test_zero_series(self):
        s = spectrum(make_series(np.zeros(64)))
        assert np.all(s.amps == 0.0)

    def test_empty_series_rejected(self):
        with pytest.raises(ValueError):
            spectrum(make_series(np.empty(0)))

    def test_bin_aligned_sinusoid_orthogonality(self):
        # sinusoid aligned to the unpadded record length: on the original
        # frequency grid (every second padded bin) every other bin is an
        # exact zero of the DFT, so leakage there is pure round-off
        n = 1024
        dt = 1e-12
        k = 37
        f0 = k / (n * dt)
        x = np.sin(2 * np.pi * f0 * dt * np.arange(n))
        s = spectrum(make_series(x, dt=dt))
        mag = np.abs(s.amps)
        peak_bin = 2 * k  # padded grid is twice as fine
        assert mag.argmax() == peak_bin
        original_grid = np.arange(0, len(mag), 2)
        others = np.setdiff1d(original_grid, [peak_bin])
        assert mag[others].max() < 1e-10 * mag[peak_bin]

    def test_parseval(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=777)
        dt = 3e-13
        m = _padded_length(len(x))
        amps = np.fft.fft(x, m) * dt
        df = 1.0 / (m * dt)
        lhs = np.sum(np.abs(x) ** 2) * dt
        rhs = np.sum(np.abs(amps) ** 2) * df
        assert rhs == pytest.approx(lhs, rel=1e-10)

    def test_table1_pulse_matches_analytic_spectrum(self):
        # probe record of the experiment's pulse: compare against the
        # closed-form transform of a Gaussian-enveloped cosine
        src = GaussianSource(t0=1e-11, delta_t=1e-12, omega0=2 * math.pi * 100e9)
        dt = 5e-14
        n = 4096
        x = np.array([source_value(src, k * dt) for k in range(n)])
        s = spectrum(make_series(x, dt=dt))
        w = 2 * np.pi * s.freqs
        envelope = (
            math.sqrt(2 * math.pi) * src.delta_t / 2.0
            * (np.exp(-0.5 * ((w - src.omega0) * src.delta_t) ** 2)
               + np.exp(-0.5 * ((w + src.omega0) * src.delta_t) ** 2))
        )
        mag = np.abs(s.amps)
        sel = envelope > 1e-4 * envelope.max()
        assert np.allclose(mag[sel], envelope[sel], rtol=1e-3, atol=1e-6 * envelope.max())


class TestReflectionMagnitude:
    def test_identical_runs_reflect_nothing(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=256)
        inc = make_series(x)
        tot = make_series(x.copy())
        for _, mag in reflection_magnitude(inc, tot, band_threshold=0.01):
            assert mag < 1e-3

    def test_known_ratio_recovered(self):
        # total = incident + r * delayed copy: |R| equals |r| at every
        # reported bin up to the delay-independent magnitude
        rng = np.random.default_rng(6)
        n = 512
        pulse = np.exp(-((np.arange(n) - 60.0) / 8.0) ** 2)
        r = 0.37
        delayed = np.roll(pulse, 140) * r
        inc = make_series(pulse)
        tot = make_series(pulse + delayed)
        out = reflection_magnitude(inc, tot, band_threshold=0.05)
        mags = np.array([m for _, m in out])
        assert np.allclose(mags, r, rtol=1e-10)

    def test_scaling_invariance(self):
        rng = np.random.default_rng(7)
        n = 256
        inc = rng.normal(size=n)
        refl = np.roll(inc, 50) * 0.2
        a = 3.7
        out1 = reflection_magnitude(make_series(inc), make_series(inc + refl), 0.02)
        out2 = reflection_magnitude(make_series(a * inc), make_series(a * (inc + refl)), 0.02)
        for (f1, m1), (f2, m2) in zip(out1, out2):
            assert f1 == f2
            assert m1 == pytest.approx(m2, rel=1e-12)

    def test_threshold_one_keeps_single_peak_bin(self):
        x = np.sin(2 * np.pi * 0.125 * np.arange(64))
        out = reflection_magnitude(make_series(x), make_series(x), band_threshold=1.0)
        assert len(out) == 1

    def test_mismatched_series_rejected(self):
        x = np.ones(32)
        with pytest.raises(SeriesMismatchError):
            reflection_magnitude(make_series(x, node=1), make_series(x, node=2))
        with pytest.raises(SeriesMismatchError):
            reflection_magnitude(make_series(x, dt=1e-12), make_series(x, dt=2e-12))
        with pytest.raises(SeriesMismatchError):
            reflection_magnitude(make_series(x), make_series(np.ones(33)))

    def test_band_threshold_semantics(self):
        # with a broadband record plus one strong tone, a high threshold
        # must keep only bins near the tone
        n = 512
        t = np.arange(n)
        x = np.sin(2 * np.pi * t * 32 / n) * np.hanning(n)
        inc = make_series(x)
        wide = reflection_magnitude(inc, inc, band_threshold=1e-6)
        narrow = reflection_magnitude(inc, inc, band_threshold=0.5)
        assert len(narrow) < len(wide)

    def test_empty_band_error(self):
        x = np.zeros(32)
        with pytest.raises((EmptyBandError, ValueError)):
            reflection_magnitude(make_series(x), make_series(x), band_threshold=0.5)

    def test_experiment_pulse_band_coverage(self):
        # the 1 ps pulse is extremely broadband: at threshold 0.01 the
        # reported band must cover at least [40, 160] GHz, and at 1e-4 it
        # must reach down to 20 GHz and below
        src = GaussianSource(t0=1e-11, delta_t=1e-12, omega0=2 * math.pi * 100e9)
        dt = 5.0055e-14
        x = np.array([source_value(src, (k + 1) * dt) for k in range(4096)])
        inc = make_series(x, dt=dt)
        for threshold, f_lo, f_hi in ((0.01, 40e9, 160e9), (1e-4, 20e9, 160e9)):
            freqs = np.array([f for f, _ in reflection_magnitude(inc, inc, threshold)])
            assert freqs.min() <= f_lo
            assert freqs.max() >= f_hi
