"""Fourier-side machinery: coefficients, projection and interpolant
evaluation, Dirichlet kernels, and closed-form projections of monomials.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._backend import kernels
from ._quad import simpson_adaptive
from .errors import UnsupportedOrderError
from .signals import PiecewiseSignal, eval_signal

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpectralCoefficients:
    """Complex Fourier coefficients c_k for k = -N..N (index k + N)."""

    N: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        object.__setattr__(self, "coeffs", arr)
        if len(arr) != 2 * self.N + 1:
            raise ValueError(
                f"need {2 * self.N + 1} coefficients for N={self.N}, "
                f"got {len(arr)}"
            )

    def coeff(self, k: int) -> complex:
        return complex(self.coeffs[k + self.N])

    @cached_property
    def is_real(self) -> bool:
        """True when the coefficients are conjugate-symmetric to 1e-12."""
        flipped = np.conj(self.coeffs[::-1])
        return bool(np.max(np.abs(self.coeffs - flipped)) <= 1e-12)


@dataclass(frozen=True)
class GridSamples:
    """2N real samples at the equidistant nodes y_nu = nu*pi/N."""

    N: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", arr)
        if len(arr) != 2 * self.N:
            raise ValueError(f"need {2 * self.N} samples for N={self.N}")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(2 * self.N) * (math.pi / self.N)


_coeff_cache = {}


def compute_coefficients(sig: PiecewiseSignal, N: int,
                         tol: float = 1e-13) -> SpectralCoefficients:
    """Fourier coefficients of a piecewise signal by piecewise quadrature.

    Each analytic piece is integrated separately with composite Simpson
    under panel doubling, so no quadrature panel straddles a jump; the
    doubling stops once successive values agree to `tol`.
    """
    key = (id(sig), N, tol)
    hit = _coeff_cache.get(key)
    if hit is not None and hit[0] is sig:
        return hit[1]

    ks = np.arange(-N, N + 1)
    coeffs = np.zeros(2 * N + 1, dtype=np.complex128)
    for piece in sig.pieces:
        length = piece.hi - piece.lo
        for k in ks:
            start = max(64, int(4 * abs(k) * length))

            def integrand(x, k=k, piece=piece):
                return piece.fn(x) * np.exp(-1j * k * x)

            coeffs[k + N] += simpson_adaptive(
                integrand, piece.lo, piece.hi, tol=tol, start_panels=start,
                label=f"coefficient k={k}, piece [{piece.lo:g}, {piece.hi:g})",
            )
    result = SpectralCoefficients(N=N, coeffs=coeffs / TWO_PI)
    _coeff_cache[key] = (sig, result)
    return result


def dirichlet(p: int, y):
    """Dirichlet kernel of degree p, with the series value (2p+1)/(2*pi)
    substituted wherever |sin(y/2)| < 1e-8."""
    if p < 0:
        raise ValueError("Dirichlet degree must be nonnegative")
    scalar = np.isscalar(y)
    out = kernels.dirichlet_many(np.atleast_1d(np.asarray(y, dtype=np.float64)),
                                 float(p))
    return float(out[0]) if scalar else out


def eval_projection(c: SpectralCoefficients, x):
    """Real part of the degree-N partial sum at x.

    For conjugate-symmetric coefficients the imaginary residue is asserted
    below 1e-10 (debug builds only).
    """
    scalar = np.isscalar(x)
    vals = kernels.projection_eval(
        c.coeffs, np.atleast_1d(np.asarray(x, dtype=np.float64))
    )
    if __debug__ and c.is_real:
        resid = float(np.max(np.abs(vals.imag))) if len(vals) else 0.0
        assert resid <= 1e-10, f"imaginary residue {resid:.3e} on real signal"
    out = vals.real
    return float(out[0]) if scalar else out


def sample_signal(sig: PiecewiseSignal, N: int) -> GridSamples:
    """Sample a signal at the 2N equidistant nodes nu*pi/N."""
    nodes = np.arange(2 * N) * (math.pi / N)
    return GridSamples(N=N, values=eval_signal(sig, nodes))


def interpolant_coefficients(g: GridSamples) -> SpectralCoefficients:
    """Trigonometric-interpolant coefficients from 2N equidistant samples.

    The boundary modes k = +-N alias onto each other on the grid; each
    receives half the shared coefficient so that the degree-N partial sum
    interpolates the data exactly at the nodes.
    """
    N = g.N
    fft = np.fft.fft(g.values) / (2 * N)
    ks = np.arange(-N, N + 1)
    coeffs = fft[np.mod(ks, 2 * N)]
    coeffs[0] *= 0.5
    coeffs[-1] *= 0.5
    return SpectralCoefficients(N=N, coeffs=coeffs)


_monomial_cache = {}


def monomial_coefficients(r: int, N: int) -> SpectralCoefficients:
    """Exact Fourier coefficients of the 2*pi-periodized monomial y^r,
    truncated at degree N.  Supported orders r = 0..4."""
    if not 0 <= r <= 4:
        raise UnsupportedOrderError(f"monomial order {r} not in 0..4")
    key = (r, N)
    if key in _monomial_cache:
        return _monomial_cache[key]
    k = np.arange(1, N + 1, dtype=np.float64)
    sign = (-1.0) ** np.arange(1, N + 1)
    if r == 0:
        mean, pos = 1.0, np.zeros(N, dtype=np.complex128)
    elif r == 1:
        mean, pos = 0.0, 1j * sign / k
    elif r == 2:
        mean, pos = math.pi**2 / 3.0, (2.0 * sign / k**2).astype(np.complex128)
    elif r == 3:
        mean, pos = 0.0, 1j * sign * (math.pi**2 / k - 6.0 / k**3)
    else:
        mean = math.pi**4 / 5.0
        pos = (sign * (4.0 * math.pi**2 / k**2 - 24.0 / k**4)).astype(np.complex128)
    coeffs = np.concatenate([np.conj(pos[::-1]), [mean], pos])
    result = SpectralCoefficients(N=N, coeffs=coeffs)
    _monomial_cache[key] = result
    return result


def project_monomial(r: int, N: int, y):
    """Degree-N Fourier partial sum of the periodized monomial y^r."""
    return eval_projection(monomial_coefficients(r, N), y)
