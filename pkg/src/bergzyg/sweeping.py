"""Shared sweep-report assembly and boundary verdicts.

A sweep evaluates a characteristic on the grid a = (1 - 2^-j) e^{i theta},
j = 0..J, with min(2^j, angular_cap) uniform angles per level. Verdicts are
three-valued; finiteness of a supremum is not decidable from samples, so
"bounded"/"unbounded" mean the annulus maxima stabilise or keep climbing
under the thresholds in the configuration:

  bounded    - the deep window is nonincreasing, or flat (within
               verdict_window_factor) with no deep-half drift;
  unbounded  - the deep window strictly increases and the deep half of the
               grid has grown by at least verdict_drift_min (catches slow
               power and logarithmic growth that a fixed window-factor rule
               would miss);
  vanishing  - the deep window decreases and the last annulus max has fallen
               below vanish_fraction of the global sup estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, ToolConfig
from .quadrature import fit_log_slope


@dataclass(frozen=True)
class SweepEntry:
    level: int
    radius: float
    theta: float
    rho_square: float
    rho_disc: float
    fa_norm_p: float = float("nan")
    embed_lb_ratio: float = float("nan")


@dataclass(frozen=True)
class SweepReport:
    entries: tuple[SweepEntry, ...]
    annulus_maxima: tuple[tuple[int, float], ...]
    global_sup_estimate: float
    boundary_exponent: float
    verdict_bounded: str      # "bounded" | "unbounded" | "inconclusive"
    verdict_vanishing: str    # "vanishing" | "non-vanishing" | "inconclusive"
    warning_count: int = 0
    notes: tuple[str, ...] = field(default=())


def classify_maxima(maxima: list[float], config: ToolConfig = DEFAULT) -> tuple[str, str]:
    vals = [m for m in maxima if math.isfinite(m)]
    if len(vals) < config.verdict_window + 1:
        return "inconclusive", "inconclusive"
    window = vals[-config.verdict_window:]
    sup = max(vals)
    tol = 1.0 + 1e-9
    nonincreasing = all(b <= a * tol for a, b in zip(window, window[1:]))
    increasing = all(b > a for a, b in zip(window, window[1:]))
    positive = [m for m in window if m > 0.0]
    flat = bool(positive) and max(window) <= config.verdict_window_factor * min(positive)
    mid = vals[len(vals) // 2]
    drift = vals[-1] / mid if mid > 0.0 else (math.inf if vals[-1] > 0 else 1.0)

    if nonincreasing or (flat and drift <= config.verdict_drift_min):
        bounded = "bounded"
    elif increasing and drift > config.verdict_drift_min:
        bounded = "unbounded"
    else:
        bounded = "inconclusive"

    if nonincreasing and window[-1] < config.vanish_fraction * sup:
        vanishing = "vanishing"
    elif bounded == "inconclusive":
        vanishing = "inconclusive"
    else:
        vanishing = "non-vanishing"
    return bounded, vanishing


def assemble_report(entries: list[SweepEntry], J: int, warning_count: int = 0,
                    config: ToolConfig = DEFAULT,
                    notes: tuple[str, ...] = ()) -> SweepReport:
    maxima = []
    for j in range(J + 1):
        level_vals = [e.rho_square for e in entries
                      if e.level == j and math.isfinite(e.rho_square)]
        maxima.append((j, max(level_vals) if level_vals else float("nan")))
    vals = [m for _, m in maxima]
    finite = [m for m in vals if math.isfinite(m)]
    sup = max(finite) if finite else float("nan")

    # boundary exponent: slope of log(max rho) against log(1 - r) on the deep half
    start = max(0, int((J + 1) * config.slope_fit_fraction))
    xs, ys = [], []
    for j, m in maxima[start:]:
        if math.isfinite(m) and m > 0.0:
            xs.append(-j * math.log(2.0))
            ys.append(math.log(m))
    slope = fit_log_slope(np.array(xs), np.array(ys)) if len(xs) >= 2 else float("nan")

    bounded, vanishing = classify_maxima(vals, config)
    return SweepReport(
        entries=tuple(entries), annulus_maxima=tuple(maxima),
        global_sup_estimate=sup, boundary_exponent=slope,
        verdict_bounded=bounded, verdict_vanishing=vanishing,
        warning_count=warning_count, notes=tuple(notes))


def level_grid(J: int, angular_cap: int) -> list[tuple[int, float, np.ndarray]]:
    """(level, radius, thetas) for the dyadic sweep grid."""
    out = []
    for j in range(J + 1):
        n = min(2 ** j, angular_cap)
        out.append((j, 1.0 - 2.0 ** (-j), np.arange(n) * (2.0 * math.pi / n)))
    return out
