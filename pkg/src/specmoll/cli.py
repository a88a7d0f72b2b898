"""Command-line surface: reproducible experiments over CSV files.

Commands: project, sample, reconstruct, study, table31, detect-edges.
Exit codes: 0 success, 2 configuration error, 3 numerical failure.
All real values are serialized with 17 significant digits (exact float64
round trip) and every output starts with `#`-prefixed lines echoing the
resolved configuration, so a run can be reproduced from its output alone.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .errors import SpecmollError
from .fourier import (GridSamples, SpectralCoefficients, compute_coefficients,
                      interpolant_coefficients, sample_signal)
from .lab import (ReconstructionSettings, convergence_study, default_grid,
                  detect_edges_naive, measure_loss_onset,
                  predicted_loss_location, run_reconstruction)
from .mollifier import DEFAULT_SPACING, KAPPA_DEFAULT, DegreePolicy
from .signals import SIGNALS, get_signal


class ConfigError(Exception):
    """Invalid run configuration; maps to exit code 2."""


def fmt(v) -> str:
    """17-significant-digit decimal form (exact float64 round trip)."""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _echo_lines(pairs):
    return [f"# {k} = {fmt(v)}" for k, v in pairs]


def write_csv(path, header, rows, config_pairs):
    lines = _echo_lines(config_pairs)
    lines.append(header)
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc


def read_csv(path, expected_header):
    """Rows of a CSV written by this tool; returns (comments, rows)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    comments, rows = [], []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        if header is None:
            header = line
            if header != expected_header:
                raise ConfigError(
                    f"{path}: expected header {expected_header!r}, got {header!r}"
                )
            continue
        rows.append(line.split(","))
    if header is None:
        raise ConfigError(f"{path}: no header line found")
    return comments, rows


def _edges_from_comments(comments):
    for line in comments:
        body = line.lstrip("#").strip()
        if body.startswith("edges"):
            _, _, val = body.partition("=")
            val = val.strip()
            if val:
                return tuple(float(tok) for tok in val.split(","))
    return None


def read_coefficients(path):
    comments, rows = read_csv(path, "k,re,im")
    ks = [int(r[0]) for r in rows]
    N = max(ks)
    if sorted(ks) != list(range(-N, N + 1)):
        raise ConfigError(f"{path}: coefficient rows must cover k = -N..N")
    coeffs = np.zeros(2 * N + 1, dtype=np.complex128)
    for r in rows:
        coeffs[int(r[0]) + N] = float(r[1]) + 1j * float(r[2])
    return SpectralCoefficients(N=N, coeffs=coeffs), _edges_from_comments(comments)


def read_samples(path):
    comments, rows = read_csv(path, "nu,y,value")
    if len(rows) % 2:
        raise ConfigError(f"{path}: sample count must be even (2N rows)")
    N = len(rows) // 2
    values = np.empty(2 * N)
    for r in rows:
        values[int(r[0])] = float(r[2])
    return GridSamples(N=N, values=values), _edges_from_comments(comments)


# ---------------------------------------------------------------------------
# configuration plumbing


def load_config_file(path):
    """Flat key = value file; '#' starts a comment."""
    pairs = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        pairs[key.strip().replace("-", "_")] = value.strip()
    return pairs


_CONFIG_KEYS = {
    "signal": str, "n": int, "mode": str, "p_policy": str, "kappa": float,
    "gamma": float, "c": float, "normalization": str, "norm_order": int,
    "switch_radius": float, "spacing": float, "grid_points": int,
    "edges": str, "threshold": float,
}


_EXPLICIT_FLAGS = set()


def _track_explicit(argv):
    """Record which options were set by actual command-line tokens."""
    _EXPLICIT_FLAGS.clear()
    for tok in argv:
        if tok.startswith("--"):
            _EXPLICIT_FLAGS.add(tok[2:].split("=", 1)[0].replace("-", "_"))


def merge_config(args):
    """Apply config-file values underneath explicit command-line flags."""
    if not getattr(args, "config", None):
        return args
    file_pairs = load_config_file(args.config)
    for key, raw in file_pairs.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if not hasattr(args, key):
            continue  # key not used by this subcommand
        if key in _EXPLICIT_FLAGS:
            continue  # flags override file values
        try:
            setattr(args, key, _CONFIG_KEYS[key](raw))
        except ValueError as exc:
            raise ConfigError(f"config key {key!r}: {exc}") from exc
    return args


# ---------------------------------------------------------------------------
# settings assembly


def _degree_policy(args) -> DegreePolicy:
    if args.p_policy == "adaptive":
        return DegreePolicy(kind="adaptive", kappa=args.kappa)
    if args.p_policy == "power":
        return DegreePolicy(kind="power", gamma=args.gamma)
    raise ConfigError(f"p_policy must be 'adaptive' or 'power', got {args.p_policy!r}")


def _validate_common(args):
    if args.n < 2:
        raise ConfigError("n must be >= 2")
    if args.c <= 0:
        raise ConfigError("c must be positive")
    if not 0 < args.kappa < 1:
        raise ConfigError("kappa must lie in (0, 1)")
    if not 0 < args.gamma <= 1:
        raise ConfigError("gamma must lie in (0, 1]")
    if args.spacing <= 0:
        raise ConfigError("spacing must be positive")
    if getattr(args, "grid_points", 2) < 2:
        raise ConfigError("grid_points must be >= 2")
    if getattr(args, "norm_order", None) is not None and args.norm_order < 1:
        raise ConfigError("norm_order must be >= 1")
    if getattr(args, "switch_radius", None) is not None and args.switch_radius <= 0:
        raise ConfigError("switch_radius must be positive")


def _parse_edges(arg):
    if arg is None:
        return None
    try:
        return tuple(float(tok) for tok in arg.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad --edges list: {exc}") from exc


def _settings_from_args(args):
    _validate_common(args)
    sig = None
    data = None
    edges = _parse_edges(getattr(args, "edges", None))
    if getattr(args, "coeffs", None):
        if args.mode != "spectral":
            raise ConfigError("--coeffs input requires --mode spectral")
        data, file_edges = read_coefficients(args.coeffs)
        edges = edges if edges is not None else file_edges
        args.n = data.N
    elif getattr(args, "samples", None):
        if args.mode != "discrete":
            raise ConfigError("--samples input requires --mode discrete")
        data, file_edges = read_samples(args.samples)
        edges = edges if edges is not None else file_edges
        args.n = data.N
    else:
        if args.signal not in SIGNALS:
            raise ConfigError(
                f"unknown signal {args.signal!r}; registered: {sorted(SIGNALS)}"
            )
        sig = get_signal(args.signal)

    if sig is None and edges is None:
        coeffs = data if args.mode == "spectral" else interpolant_coefficients(data)
        edges = tuple(detect_edges_naive(coeffs, threshold=0.5))
        print(f"# no declared edges; naive detector found {len(edges)}",
              file=sys.stderr)
        if not edges:
            raise ConfigError("no edges declared and none detected; "
                              "pass --edges explicitly")

    norm_on = args.normalization == "on"
    settings = ReconstructionSettings(
        sig=sig, N=args.n, mode=args.mode, degree=_degree_policy(args),
        c=args.c, normalization=norm_on,
        norm_order=args.norm_order if norm_on else None,
        switch_radius=args.switch_radius, spacing=args.spacing,
        edges=edges,
    )
    return settings, data


def _config_pairs(settings: ReconstructionSettings, extra=()):
    pairs = [
        ("signal", settings.sig.name if settings.sig else "user-data"),
        ("N", settings.N),
        ("mode", settings.mode),
        ("p_policy", settings.degree.kind),
        ("kappa", settings.degree.kappa),
        ("gamma", settings.degree.gamma),
        ("c", settings.c),
        ("normalization", "on" if settings.normalization else "off"),
        ("norm_order", settings.norm_order if settings.norm_order else 0),
        ("switch_radius", settings.switch_radius
         if settings.switch_radius is not None else "default"),
        ("spacing", settings.spacing),
    ]
    if settings.edges is not None:
        pairs.append(("edges", ",".join(fmt(e) for e in settings.edges)))
    return pairs + list(extra)


# ---------------------------------------------------------------------------
# subcommands


def cmd_project(args):
    if args.signal not in SIGNALS:
        raise ConfigError(
            f"unknown signal {args.signal!r}; registered: {sorted(SIGNALS)}"
        )
    if args.n < 1:
        raise ConfigError("n must be >= 1")
    sig = get_signal(args.signal)
    coeffs = compute_coefficients(sig, args.n)
    rows = [(k, float(coeffs.coeff(k).real), float(coeffs.coeff(k).imag))
            for k in range(-args.n, args.n + 1)]
    pairs = [("signal", args.signal), ("N", args.n),
             ("edges", ",".join(fmt(e) for e in sig.edges))]
    write_csv(args.out, "k,re,im", rows, pairs)
    return 0


def cmd_sample(args):
    if args.signal not in SIGNALS:
        raise ConfigError(
            f"unknown signal {args.signal!r}; registered: {sorted(SIGNALS)}"
        )
    sig = get_signal(args.signal)
    g = sample_signal(sig, args.n)
    rows = [(nu, float(g.nodes[nu]), float(g.values[nu]))
            for nu in range(2 * args.n)]
    pairs = [("signal", args.signal), ("N", args.n),
             ("edges", ",".join(fmt(e) for e in sig.edges))]
    write_csv(args.out, "nu,y,value", rows, pairs)
    return 0


def cmd_reconstruct(args):
    settings, data = _settings_from_args(args)
    xs = default_grid(args.grid_points)
    report = run_reconstruction(settings, xs, data=data)
    rows = [
        (float(x), float(e), float(r), float(err), float(rg), float(sc))
        for x, e, r, err, rg, sc in zip(
            report.x_grid, report.exact, report.recovered, report.total,
            report.reg, report.second)
    ]
    pairs = _config_pairs(settings, [("grid_points", args.grid_points)])
    write_csv(args.out, "x,exact,recovered,error,reg_err,trunc_or_alias_err",
              rows, pairs)
    return 0


def _parse_int_list(text, what):
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {what} list: {exc}") from exc
    if not vals:
        raise ConfigError(f"empty {what} list")
    return vals


def cmd_study(args):
    ns = _parse_int_list(args.ns, "N")
    if sorted(ns) != ns:
        raise ConfigError("N list must be nondecreasing")
    settings, _ = _settings_from_args(args)
    xs = default_grid(args.grid_points)
    study = convergence_study(settings, ns, xs)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create {out_dir}: {exc}") from exc
    for N, report in study.reports.items():
        rows = [
            (float(x), float(e), float(r), float(err), float(rg), float(sc))
            for x, e, r, err, rg, sc in zip(
                report.x_grid, report.exact, report.recovered, report.total,
                report.reg, report.second)
        ]
        run = ReconstructionSettings(
            sig=settings.sig, N=N, mode=settings.mode, degree=settings.degree,
            theta_mode=settings.theta_mode, c=settings.c,
            normalization=settings.normalization,
            norm_order=settings.norm_order,
            switch_radius=settings.switch_radius, spacing=settings.spacing,
            edges=settings.edges)
        write_csv(out_dir / f"reconstruct-N{N}.csv",
                  "x,exact,recovered,error,reg_err,trunc_or_alias_err",
                  rows, _config_pairs(run, [("grid_points", args.grid_points)]))
    rows = [
        (row.N, row.max_err_interior, row.slope, row.r2,
         row.loss_onset_x if row.loss_onset_x is not None else float("nan"))
        for row in study.rows
    ]
    write_csv(out_dir / "summary.csv", "N,max_err_interior,slope,r2,loss_onset_x",
              rows, _config_pairs(settings,
                                  [("grid_points", args.grid_points),
                                   ("ns", ",".join(str(n) for n in ns))]))
    return 0


def cmd_table31(args):
    ns = _parse_int_list(args.ns, "N")
    gammas = [float(tok) for tok in args.gammas.split(",") if tok.strip()]
    if not gammas:
        raise ConfigError("empty gamma list")
    if any(not 0 < g <= 1 for g in gammas):
        raise ConfigError("gamma values must lie in (0, 1]")
    if args.c <= 0 or args.threshold <= 0 or args.spacing <= 0:
        raise ConfigError("c, threshold and spacing must be positive")
    sig = get_signal(args.signal)
    xs = np.arange(math.pi / 2, math.pi, math.pi / 150)
    rows = []
    for gamma in gammas:
        for N in ns:
            settings = ReconstructionSettings(
                sig=sig, N=N, mode="spectral",
                degree=DegreePolicy(kind="power", gamma=gamma),
                c=args.c, spacing=args.spacing)
            report = run_reconstruction(settings, xs)
            onset = measure_loss_onset(xs, report.total, args.threshold)
            pred = predicted_loss_location(N, gamma)
            rows.append((gamma, N, settings.degree.degree(1.0, N), pred,
                         onset if onset is not None else float("nan")))
    pairs = [("signal", args.signal), ("c", args.c),
             ("threshold", args.threshold), ("spacing", args.spacing),
             ("ns", ",".join(str(n) for n in ns)),
             ("gammas", ",".join(fmt(g) for g in gammas))]
    write_csv(args.out, "gamma,N,p,predicted_x,measured_x", rows, pairs)
    return 0


def cmd_detect_edges(args):
    if args.coeffs:
        coeffs, _ = read_coefficients(args.coeffs)
    elif args.samples:
        samples, _ = read_samples(args.samples)
        coeffs = interpolant_coefficients(samples)
    else:
        if args.signal not in SIGNALS:
            raise ConfigError(
                f"unknown signal {args.signal!r}; registered: {sorted(SIGNALS)}"
            )
        coeffs = compute_coefficients(get_signal(args.signal), args.n)
    edges = detect_edges_naive(coeffs, args.threshold)
    for e in edges:
        print(fmt(e))
    if args.out:
        write_csv(args.out, "edge", [(e,) for e in edges],
                  [("threshold", args.threshold), ("N", coeffs.N)])
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specmoll",
        description="Adaptive-mollifier recovery of piecewise smooth "
                    "periodic signals from spectral data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, grid=True):
        p.add_argument("--config", help="key = value file; flags override")
        p.add_argument("--signal", default="f1")
        p.add_argument("--n", type=int, default=128)
        p.add_argument("--mode", choices=["spectral", "discrete"],
                       default="spectral")
        p.add_argument("--p-policy", dest="p_policy",
                       choices=["adaptive", "power"], default="adaptive")
        p.add_argument("--kappa", type=float, default=KAPPA_DEFAULT)
        p.add_argument("--gamma", type=float, default=0.5)
        p.add_argument("--c", type=float, default=10.0)
        p.add_argument("--normalization", choices=["off", "on"], default="off")
        p.add_argument("--norm-order", dest="norm_order", type=int, default=None)
        p.add_argument("--switch-radius", dest="switch_radius", type=float,
                       default=None)
        p.add_argument("--spacing", type=float, default=DEFAULT_SPACING)
        if grid:
            p.add_argument("--grid-points", dest="grid_points", type=int,
                           default=300)
        p.add_argument("--coeffs", help="input coefficient CSV (k,re,im)")
        p.add_argument("--samples", help="input sample CSV (nu,y,value)")
        p.add_argument("--edges", help="comma-separated jump locations")

    p = sub.add_parser("project", help="write Fourier coefficients to CSV")
    p.add_argument("--config")
    p.add_argument("--signal", default="f1")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("sample", help="write equidistant samples to CSV")
    p.add_argument("--config")
    p.add_argument("--signal", default="f1")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("reconstruct", help="mollified reconstruction over a grid")
    add_common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("study", help="convergence study over several N")
    add_common(p)
    p.add_argument("--ns", required=True, help="comma-separated N list")
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.set_defaults(fn=cmd_study)

    p = sub.add_parser("table31", help="loss-onset table for power-law degrees")
    p.add_argument("--config")
    p.add_argument("--signal", default="f1")
    p.add_argument("--ns", default="32,64,128")
    p.add_argument("--gammas", default="0.2,0.5,0.8")
    p.add_argument("--c", type=float, default=10.0)
    p.add_argument("--threshold", type=float, default=1e-2)
    p.add_argument("--spacing", type=float, default=DEFAULT_SPACING)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_table31)

    p = sub.add_parser("detect-edges", help="naive jump detection from spectra")
    p.add_argument("--config")
    p.add_argument("--signal", default="f1")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--coeffs")
    p.add_argument("--samples")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_detect_edges)

    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    _track_explicit(argv)
    try:
        args = merge_config(args)
        return args.fn(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SpecmollError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
