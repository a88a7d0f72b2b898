"""Pure-NumPy implementations of the hot inner kernels.

Fallback used when the compiled extension is unavailable; the compiled
module mirrors these routines operation for operation so both backends
agree to ~1 ulp.
"""

import numpy as np

TWO_PI = 2.0 * np.pi

# log of the smallest positive normal double; below this the cutoff
# exponent would underflow (and 0/0 lurks right at the support boundary)
LOG_TINY = -708.3964185322641

# |sin(y/2)| below this the Dirichlet ratio switches to its series value
SIN_EPS = 1e-8

BACKEND = "python"


def rho_many(u, c):
    """Gevrey cutoff exp(c*u^2/(u^2 - pi^2)) on (-pi, pi), 0 outside."""
    u = np.ascontiguousarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    inside = np.abs(u) < np.pi
    usq = u[inside] * u[inside]
    expo = c * usq / (usq - np.pi * np.pi)
    live = expo >= LOG_TINY
    vals = np.zeros_like(expo)
    vals[live] = np.exp(expo[live])
    out[inside] = vals
    return out


def dirichlet_many(y, p):
    """Dirichlet kernel sin((p+1/2)y) / (2*pi*sin(y/2)).

    Near y = 0 (mod 2*pi) the removable singularity is replaced by the
    series value (2p+1)/(2*pi).
    """
    y = np.ascontiguousarray(y, dtype=np.float64)
    s = np.sin(0.5 * y)
    out = np.empty_like(y)
    tiny = np.abs(s) < SIN_EPS
    ok = ~tiny
    out[ok] = np.sin((p + 0.5) * y[ok]) / (TWO_PI * s[ok])
    out[tiny] = (2.0 * p + 1.0) / TWO_PI
    return out


def psi_many(y, theta, p, c):
    """Dilated localized Dirichlet kernel (1/theta)*rho(y/theta)*D_p(y/theta).

    Exactly zero for |y| >= pi*theta (cutoff support).
    """
    y = np.ascontiguousarray(y, dtype=np.float64)
    u = y / theta
    return rho_many(u, c) * dirichlet_many(u, p) / theta


def projection_eval(coeffs, y):
    """Evaluate sum_{k=-N..N} c_k e^{iky} at each y (complex Horner).

    `coeffs` is the full complex coefficient vector ordered k = -N..N.
    Returns the complex partial-sum values.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    y = np.ascontiguousarray(y, dtype=np.float64)
    n_half = (len(coeffs) - 1) // 2
    z = np.exp(1j * y)
    acc = np.full(y.shape, coeffs[-1], dtype=np.complex128)
    for j in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[j]
    return acc * np.exp(-1j * n_half * y)
