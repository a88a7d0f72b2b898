"""Piecewise-analytic 2*pi-periodic test signals with known jump locations,
plus the distance-to-edge and window-dilation policies built on them.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Piece:
    """One analytic piece of a signal on the half-open interval [lo, hi).

    The evaluator must stay finite on the closed interval [lo, hi] so
    quadrature may touch both endpoints.
    """

    lo: float
    hi: float
    fn: Callable


@dataclass(frozen=True)
class PiecewiseSignal:
    """A 2*pi-periodic signal given by analytic pieces partitioning [0, 2*pi).

    `edges` lists the jump locations the reconstruction policies must keep
    their windows away from (interpreted periodically; may include points
    where the signal is merely treated as singular by its window formula).
    `theta_formula`, when present, is the signal's own window-dilation rule
    theta(x); otherwise the generic nearest-edge rule applies.
    """

    name: str
    pieces: tuple
    edges: tuple
    theta_formula: Optional[Callable] = None

    def __post_init__(self):
        lo = 0.0
        for piece in self.pieces:
            if not math.isclose(piece.lo, lo, abs_tol=1e-15):
                raise ValueError(
                    f"{self.name}: piece starting at {piece.lo} leaves a gap "
                    f"(expected {lo})"
                )
            if piece.hi <= piece.lo:
                raise ValueError(f"{self.name}: empty piece [{piece.lo}, {piece.hi})")
            lo = piece.hi
        if not math.isclose(lo, TWO_PI, abs_tol=1e-15):
            raise ValueError(f"{self.name}: pieces end at {lo}, not 2*pi")

    def __call__(self, x):
        return eval_signal(self, x)


def _reduce(x):
    """Reduce to [0, 2*pi); mod can land exactly on 2*pi for tiny negatives."""
    r = np.mod(x, TWO_PI)
    return np.where(r >= TWO_PI, r - TWO_PI, r)


def eval_signal(sig: PiecewiseSignal, x):
    """Evaluate the signal at x (any real; reduced mod 2*pi).

    Points exactly on a piece boundary take the right-hand piece, so jump
    locations evaluate deterministically.
    """
    scalar = np.isscalar(x)
    xr = _reduce(np.atleast_1d(np.asarray(x, dtype=np.float64)))
    out = np.empty_like(xr)
    for piece in sig.pieces:
        mask = (xr >= piece.lo) & (xr < piece.hi)
        if mask.any():
            out[mask] = piece.fn(xr[mask])
    return float(out[0]) if scalar else out


def distance_to_edge(edges, x):
    """Periodic distance from x to the nearest edge, in [0, pi].

    An empty edge list means a globally smooth signal: the sentinel
    distance pi (window dilation 1) is returned.
    """
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if len(edges) == 0:
        d = np.full_like(xa, math.pi)
    else:
        d = np.full_like(xa, np.inf)
        for e in edges:
            delta = np.mod(xa - e + math.pi, TWO_PI) - math.pi
            d = np.minimum(d, np.abs(delta))
    return float(d[0]) if scalar else d


def spectral_floor(N: int) -> float:
    """Minimum window dilation for spectral-projection runs."""
    return 1.0 / (4.0 * N)


def discrete_floor(N: int) -> float:
    """Minimum window dilation for equidistant-sample runs.

    Guarantees at least two sample points inside the window.
    """
    return 2.0 / N


@dataclass(frozen=True)
class ThetaPolicy:
    """Window-dilation policy: which theta(x) rule, and its minimum value.

    mode "custom" uses the signal's own formula when it has one, falling
    back to the generic nearest-edge rule; mode "generic" always uses the
    nearest-edge rule. The floor keeps theta strictly positive on edges.
    """

    mode: str = "custom"
    floor: Callable = spectral_floor

    def __post_init__(self):
        if self.mode not in ("custom", "generic"):
            raise ValueError(f"unknown theta mode {self.mode!r}")


def raw_theta(policy: ThetaPolicy, sig: PiecewiseSignal, x):
    """theta(x) before the minimum-window floor is applied."""
    if policy.mode == "custom" and sig.theta_formula is not None:
        scalar = np.isscalar(x)
        xr = _reduce(np.atleast_1d(np.asarray(x, dtype=np.float64)))
        th = sig.theta_formula(xr)
        return float(th[0]) if scalar else th
    return distance_to_edge(sig.edges, x) / math.pi


def theta_of(policy: ThetaPolicy, sig: PiecewiseSignal, x, N: int):
    """Window dilation theta in (0, 1] for evaluation point x at degree N."""
    return np.maximum(raw_theta(policy, sig, x), policy.floor(N))


def smooth_segments(sig: PiecewiseSignal, lo: float, hi: float):
    """Split [lo, hi] (any real interval) into maximal piece-covered segments.

    Yields (a, b, fn, shift) with [a - shift, b - shift] inside the closure
    of one piece's interval, so fn(y - shift) is analytic on [a, b].
    Quadrature panels built per segment therefore never straddle a jump.
    """
    boundaries = sorted({p.lo for p in sig.pieces})
    cuts = {lo, hi}
    for b0 in boundaries:
        k = math.ceil((lo - b0) / TWO_PI)
        img = b0 + k * TWO_PI
        while img < hi:
            if img > lo:
                cuts.add(img)
            img += TWO_PI
    pts = sorted(cuts)
    for a, b in zip(pts[:-1], pts[1:]):
        mid = 0.5 * (a + b)
        mid_red = float(_reduce(mid))
        shift = mid - mid_red
        for piece in sig.pieces:
            if piece.lo <= mid_red < piece.hi:
                yield a, b, piece.fn, shift
                break


# ---------------------------------------------------------------------------
# built-in signals

_E_PI = math.exp(math.pi)


def _f1_theta(x):
    return np.minimum(np.abs(x), np.abs(x - math.pi)) / math.pi


def _f2_theta(x):
    first = np.clip(np.minimum(x, math.pi / 2 - x), 0.0, None)
    second = np.clip(np.minimum(x - math.pi / 2, TWO_PI - x), 0.0, None)
    return (first + second) / math.pi


F1 = PiecewiseSignal(
    name="f1",
    pieces=(
        Piece(0.0, math.pi, lambda x: np.sin(x / 2)),
        Piece(math.pi, TWO_PI, lambda x: -np.sin(x / 2)),
    ),
    edges=(0.0, math.pi),
    theta_formula=_f1_theta,
)

F2 = PiecewiseSignal(
    name="f2",
    pieces=(
        Piece(0.0, math.pi / 2,
              lambda x: (2 * np.exp(2 * x) - 1 - _E_PI) / (_E_PI - 1)),
        Piece(math.pi / 2, TWO_PI, lambda x: -np.sin(2 * x / 3 - math.pi / 3)),
    ),
    edges=(0.0, math.pi / 2),
    theta_formula=_f2_theta,
)

SIGNALS = {"f1": F1, "f2": F2}


def get_signal(name: str) -> PiecewiseSignal:
    try:
        return SIGNALS[name]
    except KeyError:
        raise ValueError(
            f"unknown signal {name!r}; registered: {sorted(SIGNALS)}"
        ) from None


def smooth_signal(name: str, fn: Callable) -> PiecewiseSignal:
    """Wrap a globally smooth 2*pi-periodic closed form as a signal."""
    return PiecewiseSignal(name=name, pieces=(Piece(0.0, TWO_PI, fn),), edges=())


def make_user_signal(name, pieces, edges):
    """Signal from explicit (lo, hi, fn) triples and an edge list."""
    return PiecewiseSignal(
        name=name,
        pieces=tuple(Piece(lo, hi, fn) for lo, hi, fn in pieces),
        edges=tuple(sorted(edges)),
    )
