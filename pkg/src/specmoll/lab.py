"""Experiment drivers: reconstruction over a grid with the error split,
loss-region prediction and measurement, convergence studies, and a naive
jump detector for undeclared user data."""

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels
from ._quad import simpson_rule
from .errors import NormalizationError
from .fourier import SpectralCoefficients, compute_coefficients, sample_signal
from .localizer import LocalizerConfig
from .mollifier import (DEFAULT_SPACING, DegreePolicy, MollifierSpec,
                        choose_params, mollify_discrete, mollify_spectral)
from .normalization import (build_spectral_normalization,
                            discrete_kernel_values, mollify_discrete_normalized,
                            mollify_spectral_normalized,
                            solve_discrete_normalization,
                            spectral_kernel_values)
from .signals import (PiecewiseSignal, ThetaPolicy, discrete_floor, raw_theta,
                      smooth_segments, spectral_floor)

TWO_PI = 2.0 * math.pi
LOG_FLOOR = -16.0  # machine-noise floor for reported log10 errors


def default_grid(n: int = 300) -> np.ndarray:
    """n evaluation points 2*pi*nu/n covering the full period."""
    return TWO_PI * np.arange(n) / n


@dataclass(frozen=True)
class ReconstructionSettings:
    """Everything one reconstruction run depends on."""

    sig: Optional[PiecewiseSignal]
    N: int
    mode: str = "spectral"  # spectral | discrete
    degree: DegreePolicy = field(default_factory=DegreePolicy)
    theta_mode: str = "custom"
    c: float = 10.0
    normalization: bool = False
    norm_order: Optional[int] = None
    switch_radius: Optional[float] = None
    spacing: float = DEFAULT_SPACING
    edges: Optional[tuple] = None  # for data without a closed form

    def __post_init__(self):
        if self.mode not in ("spectral", "discrete"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.N < 2:
            raise ValueError("need N >= 2")
        if self.sig is None and self.edges is None:
            raise ValueError("either a signal or an edge list is required")

    @property
    def theta_policy(self) -> ThetaPolicy:
        floor = spectral_floor if self.mode == "spectral" else discrete_floor
        return ThetaPolicy(mode=self.theta_mode, floor=floor)

    @property
    def cfg(self) -> LocalizerConfig:
        return LocalizerConfig(c=self.c)

    def policy_signal(self) -> PiecewiseSignal:
        """Signal driving the window policy (a stub carrying only edges
        when no closed form is available)."""
        if self.sig is not None:
            return self.sig
        from .signals import Piece

        return PiecewiseSignal(
            name="user-data",
            pieces=(Piece(0.0, TWO_PI, lambda x: np.zeros_like(x)),),
            edges=tuple(sorted(self.edges)),
        )


@dataclass
class ErrorReport:
    """Per-point reconstruction with the two-term error split.

    split_kind "spectral" stores (reg, trunc) = (R, T); "discrete" stores
    (reg, alias) in the same two slots.
    """

    x_grid: np.ndarray
    recovered: np.ndarray
    exact: np.ndarray
    total: np.ndarray
    reg: np.ndarray
    second: np.ndarray
    split_kind: str
    metadata: dict


def _point_spec(settings: ReconstructionSettings, sig, x: float
                ) -> MollifierSpec:
    norm = None
    if settings.normalization:
        norm = settings.mode
    return choose_params(
        x, settings.N, sig, settings.degree, settings.theta_policy,
        cfg=settings.cfg, normalization=norm, norm_order=settings.norm_order,
        switch_radius=settings.switch_radius,
    )


def conv_exact(sig: PiecewiseSignal, x: float, theta: float, kernel_fn,
               spacing: float = DEFAULT_SPACING) -> float:
    """Quadrature of kernel(x - y) * f(y) over the window, against the
    exact signal, with Simpson panels split at every piece boundary."""
    total = 0.0
    for a, b, fn, shift in smooth_segments(sig, x - math.pi * theta,
                                           x + math.pi * theta):
        nodes, w = simpson_rule(a, b, spacing, min_panels=2)
        total += float(w @ (kernel_fn(x - nodes) * fn(nodes - shift)))
    return total


def _recover_spectral(coeffs, x, spec, cfg, spacing):
    """Returns (recovered value, kernel_fn for the R quadrature, order used)."""
    if spec.norm_mode == "spectral":
        norm = build_spectral_normalization(spec, cfg, coeffs.N,
                                            spec.norm_order, spacing)
        val = mollify_spectral_normalized(coeffs, x, spec, cfg, norm.r,
                                          spacing, norm=norm)
        return val, (lambda z: spectral_kernel_values(spec, cfg, norm, z)), norm.r
    val = mollify_spectral(coeffs, x, spec, cfg, spacing)
    return val, (lambda z: kernels.psi_many(np.asarray(z, dtype=np.float64),
                                            spec.theta, float(spec.p), cfg.c)), None


def _recover_discrete(samples, x, spec, cfg):
    if spec.norm_mode == "discrete":
        try:
            norm = solve_discrete_normalization(spec, cfg, x, samples.N,
                                                spec.norm_order)
            val = mollify_discrete_normalized(samples, x, spec, cfg, norm.r,
                                              norm=norm)
            return val, (lambda z: discrete_kernel_values(spec, cfg, norm, z)), norm.r
        except NormalizationError:
            pass  # unsalvageable window: plain kernel below
    val = mollify_discrete(samples, x, spec, cfg)
    return val, (lambda z: kernels.psi_many(np.asarray(z, dtype=np.float64),
                                            spec.theta, float(spec.p), cfg.c)), None


def run_reconstruction(settings: ReconstructionSettings,
                       x_grid: Optional[np.ndarray] = None,
                       data=None) -> ErrorReport:
    """Reconstruct over a grid and split the error at every point.

    `data` (coefficients for spectral mode, samples for discrete mode) is
    computed from the signal when omitted.  Without a closed-form signal
    the exact/reg/second columns are NaN.
    """
    xs = default_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    sig = settings.sig
    policy_sig = settings.policy_signal()
    cfg = settings.cfg

    if settings.mode == "spectral":
        coeffs = data if data is not None else compute_coefficients(sig, settings.N)
    else:
        samples = data if data is not None else sample_signal(sig, settings.N)

    n = len(xs)
    recovered = np.empty(n)
    exact = np.full(n, np.nan)
    reg = np.full(n, np.nan)
    orders = []
    for i, x in enumerate(xs):
        spec = _point_spec(settings, policy_sig, float(x))
        if settings.mode == "spectral":
            val, kernel_fn, used_r = _recover_spectral(coeffs, float(x), spec,
                                                       cfg, settings.spacing)
        else:
            val, kernel_fn, used_r = _recover_discrete(samples, float(x), spec, cfg)
        recovered[i] = val
        if used_r is not None:
            orders.append(used_r)
        if sig is not None:
            exact[i] = sig(float(x))
            reg[i] = conv_exact(sig, float(x), spec.theta, kernel_fn,
                                settings.spacing) - exact[i]
    total = recovered - exact
    second = total - reg
    meta = {
        "signal": sig.name if sig is not None else "user-data",
        "N": settings.N,
        "mode": settings.mode,
        "p_policy": settings.degree.kind,
        "kappa": settings.degree.kappa,
        "gamma": settings.degree.gamma,
        "c": settings.c,
        "normalization": settings.normalization,
        "norm_order": settings.norm_order,
        "normalized_points": len(orders),
        "spacing": settings.spacing,
    }
    return ErrorReport(x_grid=xs, recovered=recovered, exact=exact,
                       total=total, reg=reg, second=second,
                       split_kind=settings.mode, metadata=meta)


def error_decomposition_spectral(sig: PiecewiseSignal, N: int, x: float,
                                 spec: MollifierSpec, cfg: LocalizerConfig,
                                 spacing: float = DEFAULT_SPACING):
    """(E, R, T) at one point: total, regularization, truncation."""
    coeffs = compute_coefficients(sig, N)
    val, kernel_fn, _ = _recover_spectral(coeffs, x, spec, cfg, spacing)
    fx = sig(x)
    E = val - fx
    R = conv_exact(sig, x, spec.theta, kernel_fn, spacing) - fx
    return E, R, E - R


def error_decomposition_discrete(sig: PiecewiseSignal, N: int, x: float,
                                 spec: MollifierSpec, cfg: LocalizerConfig,
                                 spacing: float = DEFAULT_SPACING):
    """(E, A, R) at one point: total, aliasing, regularization."""
    samples = sample_signal(sig, N)
    val, kernel_fn, _ = _recover_discrete(samples, x, spec, cfg)
    fx = sig(x)
    E = val - fx
    R = conv_exact(sig, x, spec.theta, kernel_fn, spacing) - fx
    return E, E - R, R


def predicted_loss_location(N: int, gamma: float, x0: float = math.pi) -> float:
    """Left boundary x0 - N^gamma * pi / N of the convergence-loss region."""
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    return x0 - N**gamma * math.pi / N


def measure_loss_onset(xs, total_err, threshold: float = 1e-2,
                       start: float = math.pi / 2,
                       stop: float = math.pi) -> Optional[float]:
    """First x in [start, stop) where |E| exceeds the threshold."""
    xs = np.asarray(xs)
    err = np.abs(np.asarray(total_err))
    order = np.argsort(xs)
    for i in order:
        if start <= xs[i] < stop and err[i] > threshold:
            return float(xs[i])
    return None


def clamped_log10(err) -> np.ndarray:
    """log10 |err| with the machine-noise floor applied."""
    err = np.abs(np.asarray(err, dtype=float))
    with np.errstate(divide="ignore"):
        out = np.log10(err)
    return np.maximum(out, LOG_FLOOR)


def fit_log_error(xs, total_err, d, N: int, min_dN: float = 20.0):
    """Linear fit of log10|E| against sqrt(d(x) * N) over d*N >= min_dN.

    Returns (slope, intercept, r_squared, points_used).
    """
    d = np.asarray(d, dtype=float)
    mask = d * N >= min_dN
    u = np.sqrt(d[mask] * N)
    v = clamped_log10(np.asarray(total_err)[mask])
    slope, intercept = np.polyfit(u, v, 1)
    resid = v - (slope * u + intercept)
    ss_tot = float(np.sum((v - v.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 0.0
    return float(slope), float(intercept), r2, int(mask.sum())


@dataclass
class StudyRow:
    N: int
    max_err_interior: float
    slope: float
    r2: float
    loss_onset_x: Optional[float]


@dataclass
class StudyResult:
    rows: list
    reports: dict  # N -> ErrorReport


def convergence_study(settings: ReconstructionSettings, Ns,
                      x_grid: Optional[np.ndarray] = None,
                      onset_threshold: float = 1e-2) -> StudyResult:
    """Run the reconstruction at each N and summarize convergence.

    Per N: the full error report, the max error over the interior
    d(x) >= pi/4, the fitted log-error slope and R^2 against sqrt(d*N),
    and the measured loss onset scanning [pi/2, pi).
    """
    Ns = list(Ns)
    if any(b < a for a, b in zip(Ns[:-1], Ns[1:])):
        raise ValueError("N list must be nondecreasing")
    xs = default_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    policy_sig = settings.policy_signal()
    rows, reports = [], {}
    for N in Ns:
        run = ReconstructionSettings(
            sig=settings.sig, N=N, mode=settings.mode, degree=settings.degree,
            theta_mode=settings.theta_mode, c=settings.c,
            normalization=settings.normalization,
            norm_order=settings.norm_order,
            switch_radius=settings.switch_radius, spacing=settings.spacing,
            edges=settings.edges,
        )
        report = run_reconstruction(run, xs)
        d = math.pi * np.asarray(
            raw_theta(run.theta_policy, policy_sig, xs))
        slope, _, r2, _ = fit_log_error(xs, report.total, d, N)
        interior = d >= math.pi / 4
        max_int = float(np.max(np.abs(report.total[interior])))
        onset = measure_loss_onset(xs, report.total, onset_threshold)
        rows.append(StudyRow(N=N, max_err_interior=max_int, slope=slope,
                             r2=r2, loss_onset_x=onset))
        reports[N] = report
    return StudyResult(rows=rows, reports=reports)


def detect_edges_naive(c: SpectralCoefficients, threshold: float):
    """Crude jump detector: peaks of the scaled conjugate partial sum.

    Evaluates -sum sgn(k) i c_k e^{ikx} * (pi / log N) on an 8N grid and
    returns the locations of local maxima of its magnitude above the
    threshold.  First-order concentration only -- smooth-signal leakage
    decays like 1/log N, so this is a fallback for data arriving without
    a declared edge list, not a precision instrument.
    """
    N = c.N
    if N < 8:
        raise ValueError("edge detection needs N >= 8")
    ks = np.arange(-N, N + 1)
    conj_coeffs = -1j * np.sign(ks) * c.coeffs * (math.pi / math.log(N))
    xs = TWO_PI * np.arange(8 * N) / (8 * N)
    mag = np.abs(kernels.projection_eval(conj_coeffs, xs).real)
    up = mag >= np.roll(mag, 1)
    down = mag >= np.roll(mag, -1)
    peaks = np.nonzero(up & down & (mag > threshold))[0]
    if len(peaks) == 0:
        warnings.warn("no jump candidate above threshold "
                      f"{threshold:g}; returning an empty edge list")
        return []
    return [float(xs[i]) for i in peaks]
