"""Central numeric configuration.

All class-membership thresholds and grid depths live here; finiteness of a
supremum cannot be decided from finitely many samples, so every verdict is
relative to these knobs. The defaults are the documented ones used by the
acceptance suite.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ToolConfig:
    # --- tail quadrature (dyadic Gauss-Legendre toward the boundary) ---
    tail_nodes: int = 16           # Gauss-Legendre nodes per dyadic panel
    tail_rel_tol: float = 1e-12    # stop once a panel contributes less than this (relative)
    tail_max_panels: int = 200     # hard cap; non-decaying contributions => integrability error

    # --- doubling diagnostics ---
    doubling_grid_depth: int = 16          # radii 1 - 2^-j, j = 0..depth
    dhat_stability_factor: float = 2.0     # extra refinement level must stay within this factor
    dhat_divergence_window: int = 4        # consecutive ratios each growing beyond ...
    dhat_divergence_factor: float = 2.0    # ... this factor => non-member
    dcheck_K_candidates: tuple[float, ...] = (2.0, 4.0, 8.0, 16.0)
    dcheck_margin: float = 0.05            # min ratio must exceed 1 + margin
    dcheck_trend_min: float = 0.6          # excess at depth J vs depth J/2; below => drifting to 1

    # --- scale-function diagnostics ---
    tower_height: int = 8                  # x_k = 2^(2^k), k = 0..height
    square_doubling_bounds: tuple[float, float] = (1e-6, 1e6)
    monotone_threshold: float = 1e6        # essential-monotonicity constant cap
    scale_grid_points: int = 512           # log-uniform evaluation grid size
    scale_grid_span: tuple[float, float] = (1e-6, 1e12)

    # --- sweep grids and verdicts ---
    angular_cap: int = 4096
    verdict_window: int = 4                # annulus maxima inspected at the deep end
    verdict_window_factor: float = 2.0     # "flat" means max/min of window below this
    verdict_drift_min: float = 1.5         # deep-half growth marking an unbounded trend
    vanish_fraction: float = 0.1           # last annulus max below this fraction of the sup

    # --- disc quadrature for quasinorms and region masses ---
    radial_depth: int = 18                 # dyadic radial panels toward the boundary
    angular_base_nodes: int = 64
    region_grade_depth: int = 16           # endpoint grading for disc-region profiles

    # --- test functions ---
    # gamma = beta_fit + |envelope exponent| + margin; the non-integer margin
    # keeps q*gamma/p clear of the measure-shell exponents t+2 on the power
    # family, where an exact hit makes the shell sum diverge harmonically
    gamma_margin: float = 2.25

    disc_radius: float = 0.7               # default pseudohyperbolic radius
    slope_fit_fraction: float = 0.5        # deepest fraction of levels used in slope fits


DEFAULT = ToolConfig()
