"""Moment-matched normalization of the mollifier near jumps.

Two variants: the spectral one rescales the cutoff with a quadratic
prefactor so the projected kernel has unit mass and vanishing second
moment; the discrete one solves a small moment system per evaluation
point so the first r discrete moments vanish exactly.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._backend import kernels
from ._quad import simpson_rule
from .errors import (DegenerateKernelError, DegenerateWindowError,
                     NormalizationError)
from .fourier import GridSamples, SpectralCoefficients, eval_projection, \
    project_monomial
from .localizer import LocalizerConfig, raw_moment
from .mollifier import DEFAULT_SPACING, MollifierSpec, support_offsets

MIN_RAW_MASS = 1e-6
MIN_Q2_DENOM = 1e-12
# below this the (1 + q2 u^2)-scaled kernel has left its perturbative
# regime (its mass should be 1 + O(eps)); fall back to plain rescaling
MIN_NORMALIZED_MASS = 0.5
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class SpectralNormalization:
    """Unit-mass (and, at order 2, second-moment-free) kernel rescaling.

    The working kernel is scale * (1 + q2 * (y/theta)^2) * psi(y); at
    order 0 this is just q0 * psi.  `r` is the order actually achieved
    (order-2 requests fall back to 0 when the construction degenerates).
    """

    r: int
    q0: float
    q2: float
    scale: float
    requested_r: int = 0


@dataclass(frozen=True)
class DiscreteNormalization:
    """Per-point polynomial prefactor for the sampled kernel.

    Kernel weights become scale * (1 + sum_j q[j] * (z/theta)^(j+1)) * psi(z);
    the first `r` discrete moments then vanish and the mass is exactly one.
    """

    x: float
    q: tuple
    scale: float
    r: int
    requested_r: int = 0


def _support_grid(spec: MollifierSpec, spacing: float):
    a = math.pi * spec.theta
    n = max(8, int(math.ceil(2 * a / spacing)))
    return np.linspace(-a, a, n + 1)


def spectral_q0(spec: MollifierSpec, cfg: LocalizerConfig) -> float:
    """Reciprocal of the kernel's raw mass."""
    mass = raw_moment(cfg, spec.p, spec.theta, 0)
    if abs(mass) < MIN_RAW_MASS:
        raise DegenerateKernelError(
            f"kernel mass {mass:.3e} too small (p={spec.p}, theta={spec.theta:g})"
        )
    return 1.0 / mass


def spectral_q2(spec: MollifierSpec, cfg: LocalizerConfig, N: int,
                spacing: float = DEFAULT_SPACING) -> float:
    """Quadratic-prefactor coefficient cancelling the projected second moment.

    Both integrals run over the kernel support by the trapezoidal rule at
    node spacing <= `spacing`, with the degree-N projection of z^2 as the
    weight.
    """
    z = _support_grid(spec, spacing)
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    s2 = project_monomial(2, N, z)
    num = np.trapezoid(s2 * psi, z)
    den = np.trapezoid(s2 * (z / spec.theta) ** 2 * psi, z)
    if abs(den) <= MIN_Q2_DENOM:
        raise NormalizationError(
            f"second-moment denominator {den:.3e} vanishes "
            f"(p={spec.p}, theta={spec.theta:g}, N={N})"
        )
    return float(-num / den)


def build_spectral_normalization(spec: MollifierSpec, cfg: LocalizerConfig,
                                 N: int, r: int,
                                 spacing: float = DEFAULT_SPACING
                                 ) -> SpectralNormalization:
    """Resolve the spectral rescaling at order r in {0, 2}.

    Order 2 falls back to order 0 when the quadratic construction leaves
    its perturbative regime (vanishing denominator, or rescaled mass far
    from one); the returned `r` records what was achieved.
    """
    if r not in (0, 2):
        raise ValueError("spectral normalization order must be 0 or 2")
    q0 = spectral_q0(spec, cfg)
    if r == 0:
        return SpectralNormalization(r=0, q0=q0, q2=0.0, scale=q0, requested_r=r)
    try:
        q2 = spectral_q2(spec, cfg, N, spacing)
    except NormalizationError:
        return SpectralNormalization(r=0, q0=q0, q2=0.0, scale=q0, requested_r=r)
    z = _support_grid(spec, spacing)
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    mass = float(np.trapezoid((1.0 + q2 * (z / spec.theta) ** 2) * psi, z))
    if abs(mass) < MIN_NORMALIZED_MASS:
        return SpectralNormalization(r=0, q0=q0, q2=0.0, scale=q0, requested_r=r)
    return SpectralNormalization(r=2, q0=q0, q2=q2, scale=1.0 / mass,
                                 requested_r=r)


def spectral_kernel_values(spec: MollifierSpec, cfg: LocalizerConfig,
                           norm: SpectralNormalization, y):
    """Normalized kernel values scale * (1 + q2 (y/theta)^2) * psi(y)."""
    psi = kernels.psi_many(np.asarray(y, dtype=np.float64), spec.theta,
                           float(spec.p), cfg.c)
    if norm.r == 0:
        return norm.scale * psi
    return norm.scale * (1.0 + norm.q2 * (np.asarray(y) / spec.theta) ** 2) * psi


def mollify_spectral_normalized(c: SpectralCoefficients, x: float,
                                spec: MollifierSpec, cfg: LocalizerConfig,
                                r: int, spacing: float = DEFAULT_SPACING,
                                norm: Optional[SpectralNormalization] = None
                                ) -> float:
    """Simpson convolution of the partial sum with the rescaled kernel."""
    if norm is None:
        norm = build_spectral_normalization(spec, cfg, c.N, r, spacing)
    a = x - math.pi * spec.theta
    b = x + math.pi * spec.theta
    nodes, w = simpson_rule(a, b, spacing)
    ker = spectral_kernel_values(spec, cfg, norm, x - nodes)
    return float(w @ (ker * eval_projection(c, nodes)))


def discrete_moments(spec: MollifierSpec, cfg: LocalizerConfig, x: float,
                     grid_N: int, alpha_max: int):
    """Plain and scaled discrete kernel moments at x.

    Returns (plain, scaled): plain[s] = sum z^s psi(z) h for s = 0..alpha_max
    and scaled[a-1] = sum (z/theta)^(1+a) psi(z) h for a = 1..alpha_max,
    both over the support nodes only, offsets wrapped periodically.
    """
    _, z = support_offsets(x, spec.theta, grid_N)
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    h = math.pi / grid_N
    plain = np.array([float(np.sum(z**s * psi) * h)
                      for s in range(alpha_max + 1)])
    w = z / spec.theta
    scaled = np.array([float(np.sum(w ** (1 + a) * psi) * h)
                       for a in range(1, alpha_max + 1)])
    return plain, scaled


def solve_discrete_normalization(spec: MollifierSpec, cfg: LocalizerConfig,
                                 x: float, grid_N: int, r: int
                                 ) -> DiscreteNormalization:
    """Solve the r x r moment system for the polynomial prefactor at x.

    Dense direct solve with partial pivoting; when the system is
    ill-conditioned (tiny windows with too few nodes) the order drops one
    at a time, bottoming out at plain mass rescaling.  The returned
    normalization is verified: moments s = 0..r of the rescaled kernel
    equal delta_s0 to 1e-10.
    """
    if r < 1:
        raise ValueError("discrete normalization order must be >= 1")
    idx, z = support_offsets(x, spec.theta, grid_N)
    if len(idx) < 2:
        raise DegenerateWindowError(
            f"only {len(idx)} sample point(s) in the window at x={x:g}"
        )
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    h = math.pi / grid_N
    w = z / spec.theta
    # W[a] = sum (z/theta)^a psi h, needed for a = 0..2r
    r_max = min(r, len(idx) - 1)
    W = np.array([float(np.sum(w**a * psi) * h) for a in range(2 * r_max + 1)])

    # descend the order until a trustworthy prefactor comes out: the
    # system must be well conditioned, the rescaled mass nondegenerate,
    # and the verified moments delta_s0 to 1e-10
    for r_eff in range(r_max, -1, -1):
        if r_eff >= 1:
            A = np.empty((r_eff, r_eff))
            for s in range(1, r_eff + 1):
                A[s - 1, :] = W[s + 1:s + r_eff + 1]
            if np.linalg.cond(A) > MAX_CONDITION:
                continue
            q = np.linalg.solve(A, -W[1:r_eff + 1])
        else:
            q = np.zeros(0)
        qvals = np.ones_like(w)
        for j, qj in enumerate(q, start=1):
            qvals = qvals + qj * w**j
        mass = float(np.sum(qvals * psi) * h)
        if abs(mass) < 1e-8:
            continue
        ker = qvals * psi / mass
        worst = max(abs(float(np.sum(z**s * ker) * h)
                        - (1.0 if s == 0 else 0.0))
                    for s in range(r_eff + 1))
        if worst > 1e-10:
            continue
        return DiscreteNormalization(x=x, q=tuple(float(v) for v in q),
                                     scale=1.0 / mass, r=r_eff,
                                     requested_r=r)
    raise NormalizationError(
        f"no admissible moment normalization at x={x:g} "
        f"(theta={spec.theta:g}, {len(idx)} nodes)"
    )


def discrete_kernel_values(spec: MollifierSpec, cfg: LocalizerConfig,
                           norm: DiscreteNormalization, z):
    """Normalized sampled-kernel weights scale * q(z/theta) * psi(z)."""
    z = np.asarray(z, dtype=np.float64)
    psi = kernels.psi_many(z, spec.theta, float(spec.p), cfg.c)
    w = z / spec.theta
    qvals = np.ones_like(w)
    for j, qj in enumerate(norm.q, start=1):
        qvals = qvals + qj * w**j
    return norm.scale * qvals * psi


def mollify_discrete_normalized(g: GridSamples, x: float, spec: MollifierSpec,
                                cfg: LocalizerConfig, r: int,
                                norm: Optional[DiscreteNormalization] = None
                                ) -> float:
    """Trapezoidal mollification with the moment-matched kernel."""
    if norm is None:
        norm = solve_discrete_normalization(spec, cfg, x, g.N, r)
    idx, z = support_offsets(x, spec.theta, g.N)
    ker = discrete_kernel_values(spec, cfg, norm, z)
    return float(np.dot(g.values[idx], ker) * (math.pi / g.N))
