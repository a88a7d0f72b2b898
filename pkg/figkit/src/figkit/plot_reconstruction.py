"""Two-panel reconstruction figure: exact-vs-recovered overlay on top,
the error split underneath (regularization dashed, truncation/aliasing
solid, floored at log10 = -16)."""

import argparse
import sys

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .io import LOG_FLOOR, floored_log10, read_run_csv  # noqa: E402


def build_figure(run):
    x = run.col("x")
    exact = run.col("exact")
    recovered = run.col("recovered")
    reg = run.col("reg_err")
    second = run.col("trunc_or_alias_err")
    if not np.any(np.isfinite(exact)):
        raise ValueError(
            f"{run.path}: exact/error columns are empty (user-data run?); "
            "nothing to overlay"
        )
    second_name = ("aliasing" if run.config.get("mode") == "discrete"
                   else "truncation")

    fig, (ax_f, ax_e) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax_f.plot(x, exact, color="k", lw=1.0, label="exact")
    ax_f.plot(x, recovered, color="tab:red", lw=0.9, ls="--",
              label="recovered")
    ax_f.set_ylabel("f(x)")
    ax_f.legend(loc="upper right", fontsize=8)
    title = (f"{run.config.get('signal', '?')}, N = {run.config.get('N', '?')}"
             f", {run.config.get('mode', '?')}")
    ax_f.set_title(title, fontsize=10)

    ax_e.plot(x, floored_log10(reg), color="tab:blue", ls="--", lw=0.9,
              label="regularization")
    ax_e.plot(x, floored_log10(second), color="tab:blue", ls="-", lw=0.9,
              label=second_name)
    ax_e.set_ylim(bottom=LOG_FLOOR)
    ax_e.set_xlabel("x")
    ax_e.set_ylabel("log10 |error|")
    ax_e.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


def plot_reconstruction(csv_path, out_path):
    fig = build_figure(read_run_csv(csv_path))
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="Render a reconstruction CSV as a two-panel figure.")
    parser.add_argument("csv", help="output of `specmoll reconstruct`")
    parser.add_argument("out", help="image path (png)")
    args = parser.parse_args(argv)
    try:
        plot_reconstruction(args.csv, args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
