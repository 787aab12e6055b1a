"""Reproduce the half-space reflection figure.

Runs the bundled experiment (vacuum reference, both dispersive updaters),
writes reflection.csv next to this script, and renders a PNG when
matplotlib is available.
"""

import pathlib
import sys

import numpy as np

from greenfdtd import cli
from greenfdtd.config import load_table1

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    HAS_MPL = True
except ImportError:
    HAS_MPL = False


def main():
    out_dir = pathlib.Path(__file__).resolve().parent
    csv_path = out_dir / "reflection.csv"
    cfg = load_table1()
    rc = cli.cmd_reflection(cfg, str(csv_path))
    if rc != 0:
        return rc
    print(f"wrote {csv_path}")

    if not HAS_MPL:
        print("matplotlib not installed; skipping the plot")
        return 0

    data = np.genfromtxt(csv_path, delimiter=",", names=True)
    sel = data["freq_hz"] <= 100e9
    f_ghz = data["freq_hz"][sel] / 1e9
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(f_ghz, data["r_analytic"][sel], "k-", lw=1.5, label="analytic")
    ax.plot(f_ghz, data["r_adem"][sel], "C1--", lw=1.0, label="adem")
    ax.plot(f_ghz, data["r_tgm"][sel], "C0:", lw=1.4, label="tgm")
    ax.set_xlabel("Frequency (GHz)")
    ax.set_ylabel("Reflection coefficient")
    ax.set_xlim(0, 100)
    ax.set_ylim(0, 0.85)
    ax.legend()
    fig.tight_layout()
    png_path = out_dir / "reflection.png"
    fig.savefig(png_path, dpi=160)
    print(f"wrote {png_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
