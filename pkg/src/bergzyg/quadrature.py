"""Composite Gauss-Legendre quadrature tuned for the unit disc.

Everything near the boundary is parametrised by u = 1 - s (distance to the
unit circle) so that radii like 1 - 2^-40 keep full precision. Radial
integrals use dyadic panels refined toward u = 0; angular integrals either
use uniform nodes (smooth periodic integrands) or panels graded away from a
known peak direction (kernel-type integrands concentrated near a boundary
point).
"""
from __future__ import annotations

import functools
import math

import numpy as np

from .errors import IntegrabilityError, QuadratureError


@functools.lru_cache(maxsize=32)
def gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def panel_integral(f, lo: float, hi: float, nodes: int = 16) -> float:
    x, w = gauss_nodes(nodes)
    t = lo + (hi - lo) * x
    return float((hi - lo) * np.dot(w, f(t)))


def boundary_tail(f, u: float, nodes: int = 16, rel_tol: float = 1e-12,
                  max_panels: int = 200) -> float:
    """integral of f over (0, u], f given as a function of u = 1 - s.

    Dyadic panels [u 2^-(k+1), u 2^-k] are accumulated toward the boundary
    until a panel contributes less than rel_tol of the running total. The
    remainder past the last panel is estimated geometrically; if panel
    contributions fail to decay the density is declared non-integrable.
    """
    if u <= 0.0:
        return 0.0
    contributions = []
    hi = u
    total = 0.0
    for k in range(max_panels):
        lo = hi / 2.0
        c = panel_integral(f, lo, hi, nodes)
        contributions.append(c)
        total += c
        hi = lo
        if len(contributions) >= 4 and total > 0.0 and abs(c) <= rel_tol * abs(total):
            break
        if total == 0.0 and k >= 50:
            return 0.0      # density underflows on the whole range
    else:
        # cap reached: extrapolate the remaining mass geometrically
        c_last, c_prev = contributions[-1], contributions[-2]
        if not (0.0 <= c_last < c_prev):
            raise IntegrabilityError(
                "panel contributions do not decay near the boundary; "
                "density looks non-integrable")
        ratio = c_last / c_prev
        remainder = c_last * ratio / (1.0 - ratio)
        if remainder > 1e-9 * total:
            raise QuadratureError(
                "boundary tail did not converge within the panel budget",
                last_estimates=(total, total + remainder))
        total += remainder
    # re-sum smallest-first for a stable result
    return float(math.fsum(sorted(contributions, key=abs)))


def graded_panels(lo: float, hi: float, depth: int) -> list[tuple[float, float]]:
    """Panels on [lo, hi] dyadically refined toward both endpoints."""
    if hi <= lo:
        return []
    mid = 0.5 * (lo + hi)
    cuts = [lo]
    for k in range(depth, 0, -1):
        cuts.append(lo + (mid - lo) * 2.0 ** (-k))
    cuts.append(mid)
    for k in range(1, depth + 1):
        cuts.append(hi - (hi - mid) * 2.0 ** (-k))
    cuts.append(hi)
    return [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def graded_integral(f, lo: float, hi: float, depth: int = 12, nodes: int = 16) -> float:
    """Integrate f on [lo, hi] with endpoint-graded composite Gauss-Legendre."""
    pieces = [panel_integral(f, a, b, nodes) for a, b in graded_panels(lo, hi, depth)]
    return float(math.fsum(pieces))


def peak_panels(width: float, halfspan: float = math.pi) -> list[tuple[float, float]]:
    """Symmetric panels on [-halfspan, halfspan] graded away from 0.

    Panel sizes start at `width` (the scale of the feature at the origin)
    and double outward, which resolves kernels |1 - conj(a) z|^-g whose
    angular profile has scale width = 1 - |a|s around arg a.
    """
    w = min(max(width, 1e-15), halfspan)
    cuts = [0.0, w]
    while cuts[-1] < halfspan:
        cuts.append(min(cuts[-1] * 2.0, halfspan))
    right = list(zip(cuts[:-1], cuts[1:]))
    left = [(-b, -a) for a, b in right]
    return left[::-1] + right


def circle_mean(f, peaks: list[tuple[float, float]] | None = None,
                min_nodes: int = 64, nodes: int = 16) -> float:
    """Mean value (1/2pi) * integral over the circle of f(theta).

    Without peaks: uniform trapezoid (spectrally accurate for smooth periodic
    integrands). With peaks [(theta0, width), ...]: composite Gauss-Legendre
    on panels graded away from each peak direction.
    """
    if not peaks:
        n = max(min_nodes, 8)
        th = np.arange(n) * (2.0 * math.pi / n)
        return float(np.mean(f(th)))
    if len(peaks) == 1:
        theta0, width = peaks[0]
        pieces = [panel_integral(lambda t: f(theta0 + t), a, b, nodes)
                  for a, b in peak_panels(width)]
        return float(math.fsum(pieces)) / (2.0 * math.pi)
    # several peaks: split the circle at midpoints between sorted peak angles
    ordered = sorted((p[0] % (2.0 * math.pi), p[1]) for p in peaks)
    total = 0.0
    for i, (theta0, width) in enumerate(ordered):
        prev_t = ordered[i - 1][0] - (2.0 * math.pi if i == 0 else 0.0)
        next_t = ordered[(i + 1) % len(ordered)][0] + (2.0 * math.pi if i == len(ordered) - 1 else 0.0)
        lo = 0.5 * (prev_t + theta0) - theta0
        hi = 0.5 * (theta0 + next_t) - theta0
        for a, b in peak_panels(width):
            aa, bb = max(a, lo), min(b, hi)
            if bb > aa:
                total += panel_integral(lambda t: f(theta0 + t), aa, bb, nodes)
    return total / (2.0 * math.pi)


def arc_overlap(lo1: float, hi1: float, lo2: float, hi2: float) -> float:
    """Length of the intersection of two circular arcs given as angle intervals.

    Arcs are (lo, hi) with hi - lo <= 2pi; positions are taken modulo 2pi.
    """
    w1, w2 = hi1 - lo1, hi2 - lo2
    if w1 <= 0.0 or w2 <= 0.0:
        return 0.0
    if w1 >= 2.0 * math.pi - 1e-15:
        return min(w2, 2.0 * math.pi)
    if w2 >= 2.0 * math.pi - 1e-15:
        return min(w1, 2.0 * math.pi)
    a = lo1 % (2.0 * math.pi)
    total = 0.0
    for shift in (-2.0 * math.pi, 0.0, 2.0 * math.pi):
        b = lo2 % (2.0 * math.pi) + shift
        total += max(0.0, min(a + w1, b + w2) - max(a, b))
    return total


def fit_log_slope(x: np.ndarray, y: np.ndarray) -> float:
    """Least-squares slope of y against x (both already in log scale)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y)
    x, y = x[keep], y[keep]
    if x.size < 2:
        return float("nan")
    xm, ym = x.mean(), y.mean()
    denom = float(np.dot(x - xm, x - xm))
    if denom == 0.0:
        return float("nan")
    return float(np.dot(x - xm, y - ym) / denom)
