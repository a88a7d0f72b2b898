"""The adaptive two-parameter mollifier: parameter selection, kernel
evaluation, and the spectral / discrete mollification operators."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._backend import kernels
from ._quad import simpson_rule
from .errors import DegenerateWindowError
from .fourier import GridSamples, SpectralCoefficients, eval_projection
from .localizer import LocalizerConfig
from .signals import PiecewiseSignal, ThetaPolicy, raw_theta, theta_of

TWO_PI = 2.0 * math.pi

# near-optimal adaptive degree constant 1/sqrt(e); the fully equilibrated
# optimum is KAPPA_STAR
KAPPA_DEFAULT = 1.0 / math.sqrt(math.e)
KAPPA_STAR = 0.5596

DEFAULT_SPACING = math.pi / 8000

# window radii (in units of pi/N) below which moment normalization engages
SPECTRAL_SWITCH_RADIUS = 6.0
DISCRETE_SWITCH_RADIUS = 4.0


@dataclass(frozen=True)
class DegreePolicy:
    """How the kernel degree p follows from (x, N).

    kind "adaptive": p = round(kappa * theta * N); kind "power": p = round(N**gamma).
    Both clamp into [1, N].
    """

    kind: str = "adaptive"
    kappa: float = KAPPA_DEFAULT
    gamma: float = 0.5

    def __post_init__(self):
        if self.kind not in ("adaptive", "power"):
            raise ValueError(f"unknown degree policy {self.kind!r}")
        if self.kind == "adaptive" and not 0 < self.kappa < 1:
            raise ValueError("adaptive kappa must lie in (0, 1)")
        if self.kind == "power" and not 0 < self.gamma <= 1:
            raise ValueError("power gamma must lie in (0, 1]")

    def degree(self, theta: float, N: int) -> int:
        if self.kind == "adaptive":
            raw = self.kappa * theta * N
        else:
            raw = N**self.gamma
        return int(min(N, max(1, math.floor(raw + 0.5))))


@dataclass(frozen=True)
class MollifierSpec:
    """Per-evaluation-point kernel bundle."""

    theta: float
    p: int
    c: float = 10.0
    norm_mode: str = "none"  # none | spectral | discrete
    norm_order: int = 0
    switch_radius: float = 0.0

    def __post_init__(self):
        if not 0 < self.theta <= 1:
            raise ValueError(f"theta {self.theta} outside (0, 1]")
        if self.p < 1:
            raise ValueError("kernel degree p must be >= 1")


def choose_params(x: float, N: int, sig: PiecewiseSignal,
                  degree: DegreePolicy, theta_policy: ThetaPolicy,
                  cfg: Optional[LocalizerConfig] = None,
                  normalization: Optional[str] = None,
                  norm_order: Optional[int] = None,
                  switch_radius: Optional[float] = None) -> MollifierSpec:
    """Resolve the kernel parameters for one evaluation point.

    Normalization (when requested as "spectral" or "discrete") engages only
    inside the switch radius, d(x) <= switch_radius * pi / N.  In the
    discrete case the normalized window is the bare theta(x) -- unfloored,
    so it never straddles the jump -- except when fewer than two sample
    points would fall inside; then the floored window is kept and the
    attainable moment order drops accordingly.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    c = (cfg or LocalizerConfig()).c
    th_raw = float(raw_theta(theta_policy, sig, x))
    th = float(theta_of(theta_policy, sig, x, N))

    mode = "none"
    order = 0
    radius = 0.0
    if normalization in ("spectral", "discrete"):
        radius = switch_radius if switch_radius is not None else (
            SPECTRAL_SWITCH_RADIUS if normalization == "spectral"
            else DISCRETE_SWITCH_RADIUS)
        if th_raw * math.pi <= radius * math.pi / N + 1e-15:
            mode = normalization
            order = norm_order if norm_order is not None else (
                2 if normalization == "spectral" else 4)
            if mode == "discrete" and th_raw > 0:
                # bare window, unless it captures fewer than two nodes
                if len(support_offsets(x, th_raw, N)[0]) >= 2:
                    th = th_raw

    p = degree.degree(th, N)
    return MollifierSpec(theta=th, p=p, c=c, norm_mode=mode,
                         norm_order=order, switch_radius=radius)


def psi_eval(spec: MollifierSpec, cfg: LocalizerConfig, y):
    """Kernel value(s) (1/theta) * rho_c(y/theta) * D_p(y/theta)."""
    scalar = np.isscalar(y)
    out = kernels.psi_many(np.atleast_1d(np.asarray(y, dtype=np.float64)),
                           spec.theta, float(spec.p), cfg.c)
    return float(out[0]) if scalar else out


def support_offsets(x: float, theta: float, N: int):
    """Grid indices nu and wrapped offsets x - y_nu inside the kernel support.

    Offsets are reduced periodically into [-pi, pi) before the support test
    |offset| < pi * theta.
    """
    nodes = np.arange(2 * N) * (math.pi / N)
    z = np.mod(x - nodes + math.pi, TWO_PI) - math.pi
    mask = np.abs(z) < math.pi * theta
    return np.nonzero(mask)[0], z[mask]


def mollify_spectral(c: SpectralCoefficients, x: float, spec: MollifierSpec,
                     cfg: LocalizerConfig,
                     spacing: float = DEFAULT_SPACING) -> float:
    """Mollified value of the degree-N partial sum at x.

    Composite Simpson over the kernel support [x - pi*theta, x + pi*theta]
    at node spacing <= `spacing`.
    """
    a = x - math.pi * spec.theta
    b = x + math.pi * spec.theta
    nodes, w = simpson_rule(a, b, spacing)
    psi = kernels.psi_many(x - nodes, spec.theta, float(spec.p), cfg.c)
    return float(w @ (psi * eval_projection(c, nodes)))


def mollify_discrete(g: GridSamples, x: float, spec: MollifierSpec,
                     cfg: LocalizerConfig) -> float:
    """Trapezoidal mollification of equidistant samples at x.

    Sums (pi/N) * f(y_nu) * psi(x - y_nu) over the grid nodes inside the
    kernel support only, with periodic wrap-around.
    """
    idx, z = support_offsets(x, spec.theta, g.N)
    if len(idx) < 2:
        raise DegenerateWindowError(
            f"only {len(idx)} sample point(s) inside the window at x={x:g} "
            f"(theta={spec.theta:g}); raise the window floor"
        )
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    return float(np.dot(g.values[idx], psi) * (math.pi / g.N))
