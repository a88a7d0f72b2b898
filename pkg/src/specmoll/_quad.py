"""Composite Simpson helpers shared by the quadrature-heavy modules."""

import numpy as np

from .errors import QuadratureError


def simpson_rule(a, b, max_spacing, min_panels=2):
    """Nodes and weights of composite Simpson on [a, b].

    The (even) panel count is chosen so the node spacing does not exceed
    `max_spacing`.
    """
    if b <= a:
        raise ValueError(f"empty interval [{a}, {b}]")
    m = int(np.ceil((b - a) / max_spacing))
    m = max(min_panels, m + (m % 2))
    x = np.linspace(a, b, m + 1)
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (b - a) / (3.0 * m)
    return x, w


def simpson_fixed(fn, a, b, max_spacing, min_panels=2):
    """Integrate fn over [a, b] with composite Simpson at fixed spacing."""
    x, w = simpson_rule(a, b, max_spacing, min_panels)
    return w @ fn(x)


def simpson_adaptive(fn, a, b, tol=1e-13, start_panels=64, max_panels=1 << 23,
                     label=""):
    """Composite Simpson with panel doubling until successive values agree.

    Doubles the panel count until |S_m - S_2m| < tol; raises
    QuadratureError when max_panels is exhausted.
    """
    m = max(2, start_panels + (start_panels % 2))

    def _value(panels):
        x = np.linspace(a, b, panels + 1)
        w = np.ones(panels + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        return (w @ fn(x)) * (b - a) / (3.0 * panels)

    prev = _value(m)
    while m < max_panels:
        m *= 2
        cur = _value(m)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise QuadratureError(
        f"Simpson doubling did not converge on [{a:g}, {b:g}]"
        + (f" ({label})" if label else "")
    )
