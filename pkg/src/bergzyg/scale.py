"""Scale functions used inside the quasinorm integrand.

The admissible class consists of positive functions on [0, infinity) that
are essentially monotone (monotone up to a fixed multiplicative constant)
and comparable at x and x^2. Membership forces growth/decay between two
powers of log(e + x); the diagnostics here measure the binding constants.

All checks run in the log domain: a scale function exposes log_eval and a
log2-argument variant, so square towers x_k = 2^(2^k) never overflow.
"""
from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT, ToolConfig
from .errors import EnvelopeError, NotInClassError, ParameterError
from .quadrature import fit_log_slope

LN2 = math.log(2.0)


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _log_log_e_plus(x):
    """log(log(e + x)), vectorised, exact at x = 0."""
    x = np.asarray(x, dtype=float)
    return np.log(np.log(np.e + x))


def _log_e_plus_pow2(l):
    """log(e + 2^l) without overflow, for any float l."""
    l = np.asarray(l, dtype=float)
    small = l < 64.0
    direct = np.log(np.e + np.exp2(np.where(small, l, 0.0)))
    asymp = l * LN2 + np.log1p(np.e * np.exp2(np.where(small, 0.0, -l)))
    return np.where(small, direct, asymp)


class ScaleFunction:
    """A positive scale function with a declared monotonicity direction."""

    def __init__(self, kind: str, label: str, log_eval_fn, log_eval_log2_fn,
                 direction: str | None):
        self.kind = kind
        self.label = label
        self._log_eval = log_eval_fn
        self._log_eval_log2 = log_eval_log2_fn
        self._direction = direction
        self._knots_log2: np.ndarray | None = None
        self._class_checked = False

    # --- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: float) -> "ScaleFunction":
        if c <= 0.0:
            raise ParameterError("scale constant must be positive")
        lc = math.log(c)
        return cls("const", f"const c={c:g}",
                   lambda x: np.full_like(np.asarray(x, dtype=float), lc),
                   lambda l: np.full_like(np.asarray(l, dtype=float), lc),
                   "constant")

    @classmethod
    def log_power(cls, beta: float) -> "ScaleFunction":
        """Psi(x) = (log(e + x))^beta, the prototypical member."""
        if beta == 0.0:
            return cls.constant(1.0)
        direction = "essentially-increasing" if beta > 0 else "essentially-decreasing"
        sf = cls("logpow", f"logpow beta={beta:g}",
                 lambda x: beta * _log_log_e_plus(x),
                 lambda l: beta * np.log(_log_e_plus_pow2(l)),
                 direction)
        sf.beta = beta
        return sf

    @classmethod
    def from_log_values(cls, x_grid, log_values) -> "ScaleFunction":
        """Tabulated on a log-spaced grid; linear interpolation in
        (log2 x, log value), constant to the left of the table and extended
        by the last log-slope to the right."""
        x_grid = np.asarray(x_grid, dtype=float)
        log_values = np.asarray(log_values, dtype=float)
        if x_grid.ndim != 1 or x_grid.size < 2 or np.any(np.diff(x_grid) <= 0):
            raise ParameterError("table needs at least two strictly increasing x")
        if np.any(x_grid <= 0.0):
            raise ParameterError("table x must be positive")
        lx = np.log2(x_grid)
        lv = log_values.copy()
        hi_slope = (lv[-1] - lv[-2]) / (lx[-1] - lx[-2])

        def on_log2(l):
            l = np.asarray(l, dtype=float)
            out = np.interp(l, lx, lv)
            out = np.where(l < lx[0], lv[0], out)
            above = l > lx[-1]
            return np.where(above, lv[-1] + hi_slope * (l - lx[-1]), out)

        def on_x(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore"):
                l = np.where(x > 0.0, np.log2(np.maximum(x, 1e-300)), -np.inf)
            return on_log2(np.where(np.isfinite(l), l, lx[0]))

        sf = cls("user", f"table n={x_grid.size}", on_x, on_log2, None)
        sf._knots_log2 = lx
        return sf

    @classmethod
    def tabulated(cls, x_grid, values) -> "ScaleFunction":
        values = np.asarray(values, dtype=float)
        if np.any(values <= 0.0):
            raise ParameterError("table values must be positive")
        return cls.from_log_values(x_grid, np.log(values))

    # --- evaluation -------------------------------------------------------

    def log_eval(self, x):
        return self._log_eval(np.asarray(x, dtype=float))

    def log_eval_log2(self, l):
        return self._log_eval_log2(np.asarray(l, dtype=float))

    def eval(self, x):
        return np.exp(self.log_eval(x))

    @property
    def direction(self) -> str:
        if self._direction is None:
            self._direction, _ = check_essential_monotone(self)
        return self._direction

    def assert_in_class(self, config: ToolConfig = DEFAULT) -> None:
        """Raise unless essentially monotone with a bounded square-doubling band."""
        if self._class_checked:
            return
        direction, _ = check_essential_monotone(self, config)
        self._direction = direction
        if not square_doubling_member(self, config):
            raise NotInClassError(
                f"{self.label}: ratio at x vs x^2 leaves the admissible band")
        self._class_checked = True

    def __repr__(self):
        return f"ScaleFunction({self.label})"


def _eval_grid(psi: ScaleFunction, config: ToolConfig,
               lo: float | None = None) -> np.ndarray:
    lo = lo if lo is not None else config.scale_grid_span[0]
    hi = config.scale_grid_span[1]
    grid = np.geomspace(lo, hi, config.scale_grid_points)
    if psi._knots_log2 is not None:
        grid = np.union1d(grid, np.exp2(psi._knots_log2))
    return np.sort(grid)


def check_square_doubling(psi: ScaleFunction, tower_height: int,
                          config: ToolConfig = DEFAULT) -> tuple[float, float]:
    """Band of Psi(x)/Psi(x^2) on the square tower plus a fill grid.

    The tower is x_k = 2^(2^k), k = 0..tower_height, where the comparability
    condition composes with itself; the fill covers {0} and [1, 4]. Ratios
    are formed in the log domain, so nothing overflows.
    """
    if tower_height < 8:
        raise ParameterError("tower_height must be at least 8")
    l_tower = np.exp2(np.arange(tower_height + 1, dtype=float))
    l_fill = np.linspace(0.0, 2.0, 65)          # x in [1, 4]
    l = np.concatenate([l_tower, l_fill])
    delta = psi.log_eval_log2(l) - psi.log_eval_log2(2.0 * l)
    ratios = np.exp(delta)
    ratios = np.append(ratios, 1.0)             # x = 0 maps to itself
    return float(np.min(ratios)), float(np.max(ratios))


def square_doubling_member(psi: ScaleFunction, config: ToolConfig = DEFAULT) -> bool:
    lo, hi = config.square_doubling_bounds
    band = check_square_doubling(psi, config.tower_height, config)
    ext = check_square_doubling(psi, config.tower_height + 1, config)
    in_bounds = lo <= band[0] and band[1] <= hi and lo <= ext[0] and ext[1] <= hi
    stable = (ext[0] >= band[0] / 2.0) and (ext[1] <= band[1] * 2.0)
    return in_bounds and stable


def check_essential_monotone(psi: ScaleFunction,
                             config: ToolConfig = DEFAULT) -> tuple[str, float]:
    """Classify the monotonicity direction and return the binding constant.

    Over a log-spaced grid (plus any table knots), computes

        C_up   = max over x <= y of Psi(x)/Psi(y)
        C_down = max over x <= y of Psi(y)/Psi(x)

    via running extrema. Neither below the threshold means the function is
    not essentially monotone, hence outside the admissible class.
    """
    grid = _eval_grid(psi, config)
    logv = np.asarray(psi.log_eval(grid), dtype=float)
    logv = np.concatenate([[float(psi.log_eval(0.0))], logv])
    up = float(np.max(np.maximum.accumulate(logv) - logv))
    down = float(np.max(logv - np.minimum.accumulate(logv)))
    c_up, c_down = _safe_exp(up), _safe_exp(down)
    thr = config.monotone_threshold
    if c_up > thr and c_down > thr:
        raise NotInClassError(
            f"{psi.label}: not essentially monotone "
            f"(C_up={c_up:.3g}, C_down={c_down:.3g}, threshold={thr:g})")
    # both may clear the threshold (every bounded wobble does); classify by
    # the smaller binding constant, "constant" only on a near-tie
    if max(c_up, c_down) <= 2.0 * min(c_up, c_down):
        return "constant", max(c_up, c_down)
    if c_up <= c_down:
        return "essentially-increasing", c_up
    return "essentially-decreasing", c_down


def growth_envelope(psi: ScaleFunction,
                    config: ToolConfig = DEFAULT) -> tuple[float, float, float, float]:
    """Tightest grid constants (c1, c2, C1, C2) with

        c1 (log(e+x))^c2 <= Psi(x) <= C1 (log(e+x))^C2.

    The exponent comes from a log-log regression over the square tower plus
    the evaluation grid (the tower alone has so few points that a bounded
    oscillating factor aliases into the exponent); the multipliers are the
    residual extremes over the same grid. Meaningful only for members;
    anything growing faster than every power of log has no finite fit.
    """
    l_tower = np.exp2(np.arange(config.tower_height + 1, dtype=float))
    grid = np.union1d(_eval_grid(psi, config), np.exp2(l_tower[l_tower < 1022.0]))
    t = _log_log_e_plus(grid)
    y = np.asarray(psi.log_eval(grid), dtype=float)
    slope = fit_log_slope(t, y)
    if not math.isfinite(slope):
        raise EnvelopeError(f"{psi.label}: no finite envelope exponent")
    resid = y - slope * t
    resid = np.concatenate([[float(psi.log_eval(0.0))], resid])
    lo, hi = float(np.min(resid)), float(np.max(resid))
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi - lo > math.log(1e12):
        raise EnvelopeError(f"{psi.label}: residual spread has no finite envelope")
    return _safe_exp(lo), slope, _safe_exp(hi), slope


def theta_monotone_check(psi: ScaleFunction, p: float, beta: float,
                         config: ToolConfig = DEFAULT) -> tuple[float, float]:
    """Constants witnessing the two product monotonicity statements:

    constant_up:   x^p Psi(x) is essentially increasing on (0, infinity);
    constant_down: (1-r)^beta Psi(1/(1-r)) is essentially decreasing on [0, 1).
    """
    if p <= 0.0 or beta <= 0.0:
        raise ParameterError("p and beta must be positive")
    psi.assert_in_class(config)

    grid = _eval_grid(psi, config, lo=1e-9)
    log_theta = p * np.log(grid) + np.asarray(psi.log_eval(grid), dtype=float)
    constant_up = _safe_exp(float(np.max(np.maximum.accumulate(log_theta) - log_theta)))

    # dyadic radius grid r_j = 1 - 2^-j, already ascending in r
    u = np.exp2(-np.arange(25, dtype=float))
    log_theta_r = beta * np.log(u) + np.asarray(psi.log_eval(1.0 / u), dtype=float)
    constant_down = _safe_exp(
        float(np.max(log_theta_r - np.minimum.accumulate(log_theta_r))))
    return constant_up, constant_down


def ratio_properties_check(psi: ScaleFunction, phi: ScaleFunction, p: float,
                           config: ToolConfig = DEFAULT) -> dict[str, tuple[float, float]]:
    """Three comparability bands over the evaluation grid:

    comparable_args: Psi(x)/Psi(y) over pairs with x/y in [1/2, 2];
    power_args:      Psi(x)/Psi(x^p);
    quotient_args:   Psi(x/Phi(x))/Psi(x).
    """
    if p <= 0.0:
        raise ParameterError("p must be positive")
    psi.assert_in_class(config)
    phi.assert_in_class(config)
    grid = _eval_grid(psi, config)
    base = np.asarray(psi.log_eval(grid), dtype=float)

    deltas = []
    for factor in np.linspace(0.5, 2.0, 13):
        deltas.append(base - np.asarray(psi.log_eval(grid * factor), dtype=float))
    d = np.concatenate(deltas)
    band_a = (float(np.exp(d.min())), float(np.exp(d.max())))

    l = np.log2(grid)
    d = np.asarray(psi.log_eval_log2(l), dtype=float) \
        - np.asarray(psi.log_eval_log2(p * l), dtype=float)
    band_b = (float(np.exp(d.min())), float(np.exp(d.max())))

    l_quot = (np.log(grid) - np.asarray(phi.log_eval(grid), dtype=float)) / LN2
    d = np.asarray(psi.log_eval_log2(l_quot), dtype=float) - base
    band_c = (float(np.exp(d.min())), float(np.exp(d.max())))
    return {"comparable_args": band_a, "power_args": band_b, "quotient_args": band_c}


def parse_scale_spec(text: str) -> ScaleFunction:
    """Parse `const c=<f>` | `logpow beta=<f>` | `table path=<file>`
    (two-column: x value, x log-spaced)."""
    tokens = text.split()
    if not tokens:
        raise ParameterError("empty scale spec")
    kind, kv = tokens[0], dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
    if kind == "const":
        return ScaleFunction.constant(float(kv["c"]))
    if kind == "logpow":
        return ScaleFunction.log_power(float(kv["beta"]))
    if kind == "table":
        data = np.loadtxt(kv["path"], dtype=float, ndmin=2)
        return ScaleFunction.tabulated(data[:, 0], data[:, 1])
    raise ParameterError(f"unknown scale kind {kind!r}")
