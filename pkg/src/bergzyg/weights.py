"""Radial weights on the unit disc and their doubling-class diagnostics.

A radial weight is a nonnegative density omega(s) on [0, 1). The basic
gauge near the boundary is the tail integral

    what(r) = integral of omega(s) over s in [r, 1),

and the polar-rectangle mass

    omega(S(a)) = (1 - |a|)/pi * integral of omega(s)*s over [|a|, 1)

with the convention S(0) = the whole disc. Internally every density is a
function of u = 1 - s so that radii exponentially close to the boundary
keep full floating-point precision.

Class membership (upper doubling, lower doubling) cannot be decided from
finitely many samples; the checks return three-valued verdicts driven by
the thresholds in `config.ToolConfig`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, ToolConfig
from .errors import IntegrabilityError, NotInClassError, ParameterError, QuadratureError
from .quadrature import boundary_tail, circle_mean, fit_log_slope


class RadialWeight:
    """A radial density with memoised tail and moment integrals.

    Construct through the factory classmethods (`power`, `power_log`,
    `log_inverse_square`, `tabulated`, ...) or `parse_weight_spec`.
    """

    def __init__(self, kind: str, density_u, label: str, closed_tail=None,
                 closed_smoment=None):
        self.kind = kind
        self.label = label
        self._density_u = density_u
        self._closed_tail = closed_tail
        self._closed_smoment = closed_smoment
        self._tail_memo: dict[float, float] = {}
        self._smoment_memo: dict[float, float] = {}
        self._reports: dict[tuple, DoublingReport] = {}

    # --- constructors -----------------------------------------------------

    @classmethod
    def power(cls, alpha: float) -> "RadialWeight":
        """omega(s) = (1-s)^alpha; integrable iff alpha > -1."""
        return cls.power_log(alpha, 0.0)

    @classmethod
    def power_log(cls, alpha: float, beta: float) -> "RadialWeight":
        """omega(s) = (1-s)^alpha * log(e/(1-s))^beta."""
        def dens(u):
            u = np.asarray(u, dtype=float)
            return u ** alpha * (1.0 - np.log(u)) ** beta

        closed_tail = None
        closed_smoment = None
        if beta == 0.0:
            def closed_tail(u):
                if alpha <= -1.0:
                    raise IntegrabilityError(
                        f"(1-s)^{alpha} is not integrable near the boundary")
                return u ** (alpha + 1.0) / (alpha + 1.0)

            def closed_smoment(u):
                if alpha <= -1.0:
                    raise IntegrabilityError(
                        f"(1-s)^{alpha} is not integrable near the boundary")
                return (u ** (alpha + 1.0) / (alpha + 1.0)
                        - u ** (alpha + 2.0) / (alpha + 2.0))
        elif alpha == -1.0:
            def closed_tail(u):
                if beta >= -1.0:
                    raise IntegrabilityError(
                        f"(1-s)^-1 * log^{beta} is not integrable near the boundary")
                v = 1.0 - math.log(u)
                return v ** (beta + 1.0) / (-beta - 1.0)
        elif alpha < -1.0:
            def closed_tail(u):
                raise IntegrabilityError(
                    f"(1-s)^{alpha} is not integrable near the boundary")

        label = f"power alpha={alpha:g}" if beta == 0.0 else \
            f"powerlog alpha={alpha:g} beta={beta:g}"
        w = cls("power" if beta == 0.0 else "powerlog", dens, label,
                closed_tail, closed_smoment)
        w.alpha, w.beta = alpha, beta
        return w

    @classmethod
    def log_inverse_square(cls) -> "RadialWeight":
        """omega(s) = 1/((1-s) log^2(e/(1-s))); what(r) = 1/log(e/(1-r))."""
        w = cls.power_log(-1.0, -2.0)
        w.kind, w.label = "loginvsq", "loginvsq"
        return w

    @classmethod
    def tabulated(cls, s_grid, values) -> "RadialWeight":
        """Density given on a grid of radii, log-linear in (log(1-s), log value).

        Extended beyond the table by the nearest segment's log-slope, which
        preserves power-like behaviour.
        """
        s_grid = np.asarray(s_grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if s_grid.ndim != 1 or s_grid.size < 2 or np.any(np.diff(s_grid) <= 0):
            raise ParameterError("table needs at least two strictly increasing radii")
        if np.any(values <= 0.0):
            raise ParameterError("table values must be positive for log interpolation")
        if np.any(s_grid < 0.0) or np.any(s_grid >= 1.0):
            raise ParameterError("table radii must lie in [0, 1)")
        # u decreases as s increases; store ascending in log u
        log_u = np.log1p(-s_grid)[::-1]
        log_v = np.log(values)[::-1]

        def dens(u):
            u = np.asarray(u, dtype=float)
            lu = np.log(u)
            out = np.interp(lu, log_u, log_v)
            lo_slope = (log_v[1] - log_v[0]) / (log_u[1] - log_u[0])
            hi_slope = (log_v[-1] - log_v[-2]) / (log_u[-1] - log_u[-2])
            below = lu < log_u[0]
            above = lu > log_u[-1]
            out = np.where(below, log_v[0] + lo_slope * (lu - log_u[0]), out)
            out = np.where(above, log_v[-1] + hi_slope * (lu - log_u[-1]), out)
            return np.exp(out)

        return cls("table", dens, f"table n={s_grid.size}")

    @classmethod
    def product_with_scale(cls, base: "RadialWeight", scale) -> "RadialWeight":
        """W(s) = scale(1/(1-s)) * base(s) (see `zygmund_transform`)."""
        def dens(u):
            u = np.asarray(u, dtype=float)
            return scale.eval(1.0 / u) * base.density_u(u)

        return cls("product", dens, f"({base.label}) * scale({scale.label})")

    # --- evaluation -------------------------------------------------------

    def density_u(self, u):
        """Density as a function of u = 1 - s (vectorised)."""
        return self._density_u(u)

    def density(self, s):
        """Density at radius s in [0, 1)."""
        return self._density_u(1.0 - np.asarray(s, dtype=float))

    def tail_u(self, u: float, config: ToolConfig = DEFAULT) -> float:
        """what at distance u from the boundary: integral of omega over [1-u, 1)."""
        if u <= 0.0:
            return 0.0
        got = self._tail_memo.get(u)
        if got is not None:
            return got
        if self._closed_tail is not None:
            val = float(self._closed_tail(u))
        else:
            val = boundary_tail(self._density_u, u, config.tail_nodes,
                                config.tail_rel_tol, config.tail_max_panels)
        self._tail_memo[u] = val
        return val

    def tail(self, r: float, config: ToolConfig = DEFAULT) -> float:
        """what(r) = integral of the density over [r, 1)."""
        if not 0.0 <= r < 1.0:
            raise ParameterError(f"radius {r} outside [0, 1)")
        return self.tail_u(1.0 - r, config)

    def smoment_u(self, u: float, config: ToolConfig = DEFAULT) -> float:
        """integral of omega(s)*s over [1-u, 1); the polar-mass radial factor."""
        if u <= 0.0:
            return 0.0
        got = self._smoment_memo.get(u)
        if got is not None:
            return got
        if self._closed_smoment is not None:
            val = float(self._closed_smoment(u))
        else:
            def first_moment(t):
                t = np.asarray(t, dtype=float)
                return t * self._density_u(t)

            val = self.tail_u(u, config) - boundary_tail(
                first_moment, u, config.tail_nodes, config.tail_rel_tol,
                config.tail_max_panels)
        self._smoment_memo[u] = val
        return val

    def carleson_mass(self, a: complex, config: ToolConfig = DEFAULT) -> float:
        """omega(S(a)) for the polar rectangle at apex a; S(0) is the disc."""
        r = abs(a)
        if r >= 1.0:
            raise ParameterError(f"apex |a| = {r} outside the disc")
        if r == 0.0:
            return 2.0 * self.smoment_u(1.0, config)
        u = 1.0 - r
        return u / math.pi * self.smoment_u(u, config)

    # --- class diagnostics -------------------------------------------------

    def dhat_report(self, grid_depth: int | None = None,
                    config: ToolConfig = DEFAULT) -> "DoublingReport":
        key = ("dhat", grid_depth, config.doubling_grid_depth)
        if key not in self._reports:
            self._reports[key] = check_dhat(
                self, grid_depth or config.doubling_grid_depth, config)
        return self._reports[key]

    def dcheck_report(self, grid_depth: int | None = None,
                      config: ToolConfig = DEFAULT) -> "DoublingReport":
        key = ("dcheck", grid_depth, config.doubling_grid_depth)
        if key not in self._reports:
            self._reports[key] = check_dcheck(
                self, grid_depth or config.doubling_grid_depth,
                config.dcheck_K_candidates, config)
        return self._reports[key]

    def assert_in_d(self, config: ToolConfig = DEFAULT) -> None:
        """Require membership in both doubling classes."""
        up = self.dhat_report(config=config)
        if up.verdict != "member":
            raise NotInClassError(
                f"{self.label}: upper doubling check verdict '{up.verdict}'")
        low = self.dcheck_report(config=config)
        if low.verdict != "member":
            raise NotInClassError(
                f"{self.label}: lower doubling check verdict '{low.verdict}'")

    def __repr__(self):
        return f"RadialWeight({self.label})"


@dataclass(frozen=True)
class DoublingReport:
    """Outcome of a doubling-class check on a dyadic radius grid."""
    class_name: str                 # "Dhat" or "Dcheck"
    constant_C: float
    exponent_beta: float            # least-squares boundary exponent of what
    grid_max_ratio: float
    grid_min_ratio: float
    verdict: str                    # "member" | "non-member" | "inconclusive"
    constant_K: float | None = None  # Dcheck only
    diagnostic: str = ""
    ratios: tuple = field(default=(), repr=False)


def _dyadic_tails(omega: RadialWeight, depth: int, config: ToolConfig):
    """Tails at u = 2^-j, j = 0..depth; truncated at the first underflow."""
    tails = []
    for j in range(depth + 1):
        try:
            t = omega.tail_u(2.0 ** (-j), config)
        except QuadratureError:
            break
        if not math.isfinite(t) or t <= 0.0:
            break
        tails.append(t)
    return tails


def _beta_fit(tails, config: ToolConfig) -> float:
    """Boundary decay exponent: slope of log what against log(1-r), deep half."""
    n = len(tails)
    if n < 4:
        return float("nan")
    start = max(0, int(n * config.slope_fit_fraction))
    js = np.arange(start, n)
    x = -js * math.log(2.0)
    y = np.log(np.asarray(tails[start:], dtype=float))
    return fit_log_slope(x, y)


def check_dhat(omega: RadialWeight, grid_depth: int,
               config: ToolConfig = DEFAULT) -> DoublingReport:
    """Upper doubling: what(r) <= C * what((1+r)/2) on the dyadic grid.

    Ratios are evaluated at r_j = 1 - 2^-j. Member means the ratio sequence
    stays within `dhat_stability_factor` of its grid maximum at one extra
    refinement level; non-member means the last `dhat_divergence_window`
    ratios each grew by more than `dhat_divergence_factor`.
    """
    if grid_depth < 4:
        raise ParameterError("grid_depth must be at least 4")
    tails = _dyadic_tails(omega, grid_depth + 2, config)
    ratios = [tails[j] / tails[j + 1] for j in range(len(tails) - 1)]
    beta = _beta_fit(tails, config)
    window = config.dhat_divergence_window
    truncated = len(tails) < grid_depth + 3

    def report(verdict, diag=""):
        main = ratios[:grid_depth + 1] if ratios else [float("nan")]
        return DoublingReport(
            class_name="Dhat", constant_C=max(main), exponent_beta=beta,
            grid_max_ratio=max(main), grid_min_ratio=min(main),
            verdict=verdict, diagnostic=diag, ratios=tuple(ratios))

    if len(ratios) > window and all(
            ratios[i] > config.dhat_divergence_factor * ratios[i - 1]
            for i in range(len(ratios) - window, len(ratios))):
        return report("non-member", "ratio sequence diverges on the grid")
    if truncated:
        return report("inconclusive",
                      f"tail underflow after {len(tails)} levels")
    main, extra = ratios[:grid_depth + 1], ratios[grid_depth + 1]
    if extra <= config.dhat_stability_factor * max(main):
        return report("member")
    return report("inconclusive", "ratio still growing at the extra level")


def check_dcheck(omega: RadialWeight, grid_depth: int,
                 K_candidates=None, config: ToolConfig = DEFAULT) -> DoublingReport:
    """Lower doubling: what(r) >= C * what(1 - (1-r)/K) for some K, C > 1.

    For each candidate K the ratio is scanned over the dyadic grid; member
    requires the minimum ratio to clear 1 + margin AND the excess over 1 not
    to be draining away down the grid (tails like 1/log have ratios that
    approach 1 from above, which a finite minimum alone cannot detect).
    """
    if grid_depth < 4:
        raise ParameterError("grid_depth must be at least 4")
    Ks = tuple(K_candidates) if K_candidates else config.dcheck_K_candidates
    if not Ks:
        raise ParameterError("need at least one K candidate")
    if any(K <= 1.0 for K in Ks):
        raise ParameterError("all K candidates must exceed 1")

    tails = _dyadic_tails(omega, grid_depth, config)
    beta = _beta_fit(tails, config)
    if len(tails) < grid_depth + 1:
        return DoublingReport(
            class_name="Dcheck", constant_C=float("nan"), exponent_beta=beta,
            grid_max_ratio=float("nan"), grid_min_ratio=float("nan"),
            verdict="inconclusive", constant_K=None,
            diagnostic=f"tail underflow after {len(tails)} levels")

    best = None
    for K in Ks:
        ratios = []
        ok = True
        for j in range(grid_depth + 1):
            u = 2.0 ** (-j)
            inner = omega.tail_u(u / K, config)
            if not math.isfinite(inner) or inner <= 0.0:
                ok = False
                break
            ratios.append(tails[j] / inner)
        if not ok:
            continue
        rmin, rmax = min(ratios), max(ratios)
        excess_deep = ratios[-1] - 1.0
        excess_mid = ratios[grid_depth // 2] - 1.0
        trend = excess_deep / excess_mid if excess_mid > 0.0 else 0.0
        qualified = rmin >= 1.0 + config.dcheck_margin and trend >= config.dcheck_trend_min
        cand = (qualified, rmin, K, rmax, tuple(ratios))
        if best is None or cand[:2] > best[:2]:
            best = cand

    if best is None:
        return DoublingReport(
            class_name="Dcheck", constant_C=float("nan"), exponent_beta=beta,
            grid_max_ratio=float("nan"), grid_min_ratio=float("nan"),
            verdict="inconclusive", constant_K=None,
            diagnostic="inner tails underflowed for every K")
    qualified, rmin, K, rmax, ratios = best
    return DoublingReport(
        class_name="Dcheck", constant_C=rmin, exponent_beta=beta,
        grid_max_ratio=rmax, grid_min_ratio=rmin,
        verdict="member" if qualified else "non-member",
        constant_K=K, ratios=ratios,
        diagnostic="" if qualified else
        "no candidate K keeps the ratio above 1 + margin with a stable excess")


def kernel_integral_check(omega: RadialWeight, lam: float, zeta_grid,
                          config: ToolConfig = DEFAULT) -> tuple[float, float]:
    """Band of I(zeta) (1-|zeta|)^lam / what(zeta) over the grid, where

    I(zeta) = integral over the disc of omega(z) |1 - conj(zeta) z|^-(lam+1) dA(z).

    Bounded bands away from 0 and infinity are the numerical signature of
    upper doubling for a suitable lam, so that class is a precondition.
    """
    if lam < 0.0:
        raise ParameterError("lam must be nonnegative")
    if omega.dhat_report(config=config).verdict != "member":
        raise NotInClassError(f"{omega.label}: upper doubling required")

    vals = []
    for zeta in zeta_grid:
        rho = abs(zeta)
        if rho >= 1.0:
            raise ParameterError(f"zeta = {zeta} outside the disc")

        def radial_profile(u):
            u = np.atleast_1d(np.asarray(u, dtype=float))
            out = np.empty_like(u)
            for i, ui in enumerate(u):
                s = 1.0 - ui
                width = 1.0 - rho * s

                def kern(th, s=s, width=width):
                    mod2 = width * width + 2.0 * rho * s * (1.0 - np.cos(th))
                    return mod2 ** (-(lam + 1.0) / 2.0)

                out[i] = circle_mean(kern, peaks=[(0.0, width)])
            return out * omega.density_u(u) * (1.0 - u)

        try:
            integral = 2.0 * boundary_tail(radial_profile, 1.0,
                                           config.tail_nodes,
                                           max(config.tail_rel_tol, 1e-10),
                                           config.tail_max_panels)
        except (QuadratureError, IntegrabilityError) as exc:
            raise QuadratureError(
                f"kernel integral failed at zeta = {zeta}", where=zeta) from exc
        vals.append(integral * (1.0 - rho) ** lam / omega.tail_u(1.0 - rho, config))
    return min(vals), max(vals)


def zygmund_transform(omega: RadialWeight, psi, config: ToolConfig = DEFAULT) -> RadialWeight:
    """The weight W(s) = psi(1/(1-s)) * omega(s).

    Requires omega in both doubling classes and psi in the admissible scale
    class; W then lands back in both doubling classes (the tests verify this
    on the fixture families).
    """
    omega.assert_in_d(config)
    psi.assert_in_class(config)
    return RadialWeight.product_with_scale(omega, psi)


def psi_tail_compare(omega: RadialWeight, psi, r_grid,
                     config: ToolConfig = DEFAULT) -> dict[str, tuple[float, float]]:
    """Bands comparing the two boundary integrals driven by psi and omega.

    For each r the quantities

        L(r) = integral over [r, 1) of psi(1/(1-s)) what(s)/(1-s) ds
        R(r) = integral over [r, 1) of psi(1/(1-s)) omega(s) ds
        P(r) = psi(1/(1-r)) * what(r)

    are computed; returns the min/max over the grid of L/R and of R/P.
    Both ratios stay in bounded bands for weights in both doubling classes.
    """
    ratios_lr, ratios_rp = [], []
    for r in r_grid:
        u = 1.0 - r

        def integrand_L(t):
            t = np.asarray(t, dtype=float)
            tails = np.array([omega.tail_u(float(x), config) for x in np.atleast_1d(t)])
            return psi.eval(1.0 / t) * tails / t

        def integrand_R(t):
            t = np.asarray(t, dtype=float)
            return psi.eval(1.0 / t) * omega.density_u(t)

        L = boundary_tail(integrand_L, u, config.tail_nodes,
                          max(config.tail_rel_tol, 1e-10), config.tail_max_panels)
        R = boundary_tail(integrand_R, u, config.tail_nodes,
                          max(config.tail_rel_tol, 1e-10), config.tail_max_panels)
        P = float(psi.eval(1.0 / u)) * omega.tail_u(u, config)
        ratios_lr.append(L / R)
        ratios_rp.append(R / P)
    return {"L_over_R": (min(ratios_lr), max(ratios_lr)),
            "R_over_P": (min(ratios_rp), max(ratios_rp))}


def power_shift(omega: RadialWeight, x: float) -> RadialWeight:
    """The weight omega(s) (1-s)^x. Integrability is checked lazily by tail()."""
    if omega.kind in ("power", "powerlog", "loginvsq"):
        w = RadialWeight.power_log(omega.alpha + x, omega.beta)
        w.label = f"({omega.label}) shifted by {x:g}"
        return w

    def dens(u):
        u = np.asarray(u, dtype=float)
        return u ** x * omega.density_u(u)

    return RadialWeight("shifted", dens, f"({omega.label}) shifted by {x:g}")


def parse_weight_spec(text: str) -> RadialWeight:
    """Parse `power alpha=<f>` | `loginvsq` | `powerlog alpha=<f> beta=<f>` |
    `table path=<file>` (two-column text: s value, strictly increasing s)."""
    tokens = text.split()
    if not tokens:
        raise ParameterError("empty weight spec")
    kind, kv = tokens[0], dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
    if kind == "power":
        return RadialWeight.power(float(kv["alpha"]))
    if kind == "loginvsq":
        return RadialWeight.log_inverse_square()
    if kind == "powerlog":
        return RadialWeight.power_log(float(kv["alpha"]), float(kv["beta"]))
    if kind == "table":
        data = np.loadtxt(kv["path"], dtype=float, ndmin=2)
        return RadialWeight.tabulated(data[:, 0], data[:, 1])
    raise ParameterError(f"unknown weight kind {kind!r}")
