"""Log-error convergence figure: one curve per mode count N, shared grid."""

import argparse
import sys

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .io import LOG_FLOOR, floored_log10, read_run_csv  # noqa: E402


def build_figure(runs):
    if len(runs) < 2:
        raise ValueError("need at least two N-series to draw convergence")
    runs = sorted(runs, key=lambda r: int(r.config.get("N", 0)))
    base_x = runs[0].col("x")
    for run in runs[1:]:
        x = run.col("x")
        if len(x) != len(base_x) or np.max(np.abs(x - base_x)) > 1e-12:
            raise ValueError(
                f"{run.path}: x-grid differs from {runs[0].path}; "
                "convergence curves must share one grid"
            )

    fig, ax = plt.subplots(figsize=(7, 4.2))
    for run in runs:
        ax.plot(base_x, floored_log10(run.col("error")), lw=0.9,
                label=f"N = {run.config.get('N', '?')}")
    ax.set_ylim(bottom=LOG_FLOOR)
    ax.set_xlabel("x")
    ax.set_ylabel("log10 |error|")
    ax.set_title(f"{runs[0].config.get('signal', '?')}, "
                 f"{runs[0].config.get('mode', '?')} reconstruction",
                 fontsize=10)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


def plot_convergence(csv_paths, out_path):
    fig = build_figure([read_run_csv(p) for p in csv_paths])
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="Render per-N reconstruction CSVs as one log-error plot.")
    parser.add_argument("csvs", nargs="+",
                        help="outputs of `specmoll study` (one per N)")
    parser.add_argument("--out", required=True, help="image path (png)")
    args = parser.parse_args(argv)
    try:
        plot_convergence(args.csvs, args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
