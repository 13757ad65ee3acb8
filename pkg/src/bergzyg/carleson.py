"""The embedding characteristic, its sweeps, and the test-function family.

For a context (omega, psi, phi, mu, p <= q) the characteristic at a point a
of the disc is

    rho(a) = mu(S(a)) Phi(1/omega(S(a))) / (omega(S(a)) Psi(1/omega(S(a))))^(q/p).

Boundedness of rho over the disc characterises boundedness of the identity
embedding from the weighted analytic space into the measure's Lebesgue
space; rho(a) -> 0 at the boundary characterises compactness. The disc
variant replaces both region masses by pseudohyperbolic-disc masses but
keeps 1/omega(S(a)) inside both scale functions - that asymmetry is easy to
get wrong and is deliberate.
"""
from __future__ import annotations

import cmath
import math

from .config import DEFAULT, ToolConfig
from .errors import DegenerateInputError, ParameterError, QuadratureError
from .funcspace import AnalyticFunction, quasinorm
from .measures import DiscMeasure, mass_on_disc, mass_on_square
from .quadrature import fit_log_slope
from .scale import LN2, ScaleFunction, growth_envelope
from .sweeping import SweepEntry, SweepReport, assemble_report, level_grid
from .weights import RadialWeight


class ContextBase:
    """Shared validation and scale-argument plumbing for the two contexts."""

    def __init__(self, omega: RadialWeight, psi: ScaleFunction, phi: ScaleFunction,
                 p: float, q: float, disc_radius: float | None, gamma: float | None,
                 config: ToolConfig):
        if not 0.0 < p <= q:
            raise ParameterError(f"need 0 < p <= q, got p={p}, q={q}")
        self.config = config
        self.disc_radius = disc_radius if disc_radius is not None else config.disc_radius
        if not 0.0 < self.disc_radius < 1.0:
            raise ParameterError("disc radius must lie in (0, 1)")
        omega.assert_in_d(config)
        psi.assert_in_class(config)
        phi.assert_in_class(config)
        self.omega, self.psi, self.phi = omega, psi, phi
        self.p, self.q = float(p), float(q)
        self._gamma_override = gamma
        self._gamma: float | None = None
        self.source_measure = DiscMeasure.area(omega)

    @property
    def default_gamma(self) -> float:
        """gamma = beta_fit + |env exponent| + margin: beta_fit is the tail
        decay exponent of omega, the envelope exponent that of psi. The
        kernel sees gamma itself (independent of p), and a decreasing scale
        raises the required gamma just like an increasing one, hence the
        absolute value. Validated by the norm-flatness sweep; overridable.
        See gamma_margin in ToolConfig for why the margin is non-integer."""
        if self._gamma_override is not None:
            return self._gamma_override
        if self._gamma is None:
            beta_fit = self.omega.dcheck_report(config=self.config).exponent_beta
            env_upper = growth_envelope(self.psi, self.config)[3]
            self._gamma = beta_fit + abs(env_upper) + self.config.gamma_margin
        return self._gamma

    def scale_args_at(self, a: complex) -> tuple[float, float, float]:
        """(omega(S(a)), log Psi(1/omega(S(a))), log Phi(1/omega(S(a))))."""
        mass = self.omega.carleson_mass(a, self.config)
        if mass <= 0.0:
            raise DegenerateInputError(
                "omega(S(a)) vanished; the standing positive-tail assumption fails")
        l2 = -math.log(mass) / LN2
        return mass, float(self.psi.log_eval_log2(l2)), float(self.phi.log_eval_log2(l2))


class CarlesonContext(ContextBase):
    """Validated bundle (omega, psi, phi, mu, p, q, disc radius).

    Construction verifies p <= q, both doubling classes for omega, and class
    membership for both scale functions.
    """

    def __init__(self, omega: RadialWeight, psi: ScaleFunction, phi: ScaleFunction,
                 mu: DiscMeasure, p: float, q: float,
                 disc_radius: float | None = None, gamma: float | None = None,
                 config: ToolConfig = DEFAULT):
        super().__init__(omega, psi, phi, p, q, disc_radius, gamma, config)
        self.mu = mu

    @property
    def default_gamma(self) -> float:
        """Source rule, raised when the measure's own boundary exponent
        demands it: the embedding lower ratio is a two-sided band only while
        the test function's target norm stays dominated by the Carleson
        square, i.e. q gamma / p must exceed the fitted mass exponent of mu.
        """
        if self._gamma_override is not None:
            return self._gamma_override
        if self._gamma is None:
            base = ContextBase.default_gamma.fget(self)
            xs, ys = [], []
            for j in range(4, 13):
                m = mass_on_square(self.mu, 1.0 - 2.0 ** (-j), self.config)
                if m > 0.0 and math.isfinite(m):
                    xs.append(-j * math.log(2.0))
                    ys.append(math.log(m))
            if len(xs) >= 4:
                m_fit = fit_log_slope(xs, ys)
                if math.isfinite(m_fit):
                    base = max(base, (self.p / self.q)
                               * (m_fit + self.config.gamma_margin - 1.0))
            self._gamma = base
        return self._gamma


def characteristic(ctx: CarlesonContext, a: complex) -> float:
    """rho(a) built from Carleson-square masses."""
    if abs(a) >= 1.0:
        raise ParameterError("point must lie inside the disc")
    mu_mass = mass_on_square(ctx.mu, a, ctx.config)
    if mu_mass == 0.0:
        return 0.0
    w_mass, log_psi, log_phi = ctx.scale_args_at(a)
    log_denom = (ctx.q / ctx.p) * (math.log(w_mass) + log_psi)
    return mu_mass * math.exp(log_phi - log_denom)


def characteristic_disc(ctx: CarlesonContext, a: complex) -> float:
    """Disc variant: masses over the pseudohyperbolic disc Delta(a, r), scale
    arguments still at 1/omega(S(a))."""
    if abs(a) >= 1.0:
        raise ParameterError("point must lie inside the disc")
    r = ctx.disc_radius
    mu_mass = mass_on_disc(ctx.mu, a, r, ctx.config)
    if mu_mass == 0.0:
        return 0.0
    _, log_psi, log_phi = ctx.scale_args_at(a)
    w_disc = mass_on_disc(ctx.source_measure, a, r, ctx.config)
    log_denom = (ctx.q / ctx.p) * (math.log(w_disc) + log_psi)
    return mu_mass * math.exp(log_phi - log_denom)


def test_function(ctx: CarlesonContext, a: complex,
                  gamma: float | None = None) -> AnalyticFunction:
    """The unit-scale kernel-power test function anchored at a:

        f_a(z) = ((1-|a|)^gamma (1 - conj(a) z)^-gamma
                  / (omega(S(a)) Psi(1/omega(S(a)))))^(1/p),

    whose source-space quasinorm stays in a fixed band over the disc for any
    sufficiently large gamma."""
    if gamma is None:
        gamma = ctx.default_gamma
    if gamma <= 0.0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    if abs(a) >= 1.0:
        raise ParameterError("anchor must lie inside the disc")
    w_mass, log_psi, _ = ctx.scale_args_at(a)
    u = 1.0 - abs(a)
    log_factor = (gamma * math.log(u) - math.log(w_mass) - log_psi) / ctx.p
    return AnalyticFunction.kernel_power(a, gamma / ctx.p, math.exp(log_factor))


def source_norm_p(ctx: CarlesonContext, f: AnalyticFunction) -> float:
    """||f||^p in the weighted analytic source space."""
    return quasinorm(f, ctx.source_measure, ctx.psi, ctx.p, ctx.config) ** ctx.p


def target_norm_q(ctx: CarlesonContext, f: AnalyticFunction) -> float:
    """||f||^q in the target Lebesgue space of the measure."""
    return quasinorm(f, ctx.mu, ctx.phi, ctx.q, ctx.config) ** ctx.q


def embedding_lower_ratio(ctx: CarlesonContext, a: complex,
                          gamma: float | None = None) -> float:
    """rho(a) / ||f_a||^q in the target space; uniformly bounded above.

    The numerator is dominated by the test-function mass concentrated on
    S(a), so the ratio cannot blow up even on non-Carleson measures - there
    the denominator grows along with rho."""
    fa = test_function(ctx, a, gamma)
    denom = target_norm_q(ctx, fa)
    if denom == 0.0:
        raise DegenerateInputError("measure gives the test function zero mass")
    return characteristic(ctx, a) / denom


def embedding_norm_estimate(ctx: CarlesonContext, corpus) -> float:
    """max over the corpus of target norm / source norm (a lower bound for
    the embedding bound)."""
    best = 0.0
    for i, f in enumerate(corpus):
        src = quasinorm(f, ctx.source_measure, ctx.psi, ctx.p, ctx.config)
        if not math.isfinite(src) or src == 0.0:
            raise ParameterError(f"corpus member {i} has degenerate source norm {src}")
        best = max(best, quasinorm(f, ctx.mu, ctx.phi, ctx.q, ctx.config) / src)
    return best


def sweep(ctx: CarlesonContext, J: int, angular_cap: int | None = None,
          include_fa: bool = True) -> SweepReport:
    """Evaluate both characteristics over the dyadic boundary grid.

    Rotation-invariant measures are evaluated once per level and replicated
    across angles (exact, not approximate). Per-point quadrature failures are
    excluded from the maxima and counted in the report.
    """
    if J < 8:
        raise ParameterError("J must be at least 8")
    cap = angular_cap if angular_cap is not None else ctx.config.angular_cap
    radial = ctx.mu.is_radial()
    entries: list[SweepEntry] = []
    warnings = 0
    notes: list[str] = []

    for j, r, thetas in level_grid(J, cap):
        a_level = complex(r, 0.0)
        fa_norm = float("nan")
        embed_level = float("nan")
        if include_fa:
            fa = test_function(ctx, a_level)
            fa_norm = source_norm_p(ctx, fa)
        if radial:
            try:
                rho_s = characteristic(ctx, a_level)
                rho_d = characteristic_disc(ctx, a_level)
                if include_fa:
                    denom = target_norm_q(ctx, test_function(ctx, a_level))
                    embed_level = rho_s / denom if denom > 0.0 else float("nan")
            except QuadratureError as exc:
                warnings += len(thetas)
                notes.append(f"level {j}: {exc}")
                continue
            for th in thetas:
                entries.append(SweepEntry(j, r, float(th), rho_s, rho_d,
                                          fa_norm, embed_level))
        else:
            for th in thetas:
                a = r * cmath.exp(1j * float(th))
                try:
                    rho_s = characteristic(ctx, a)
                    rho_d = characteristic_disc(ctx, a)
                    embed = float("nan")
                    if include_fa:
                        denom = target_norm_q(ctx, test_function(ctx, a))
                        embed = rho_s / denom if denom > 0.0 else float("nan")
                except QuadratureError as exc:
                    warnings += 1
                    notes.append(f"(j={j}, theta={th:.4f}): {exc}")
                    continue
                entries.append(SweepEntry(j, r, float(th), rho_s, rho_d,
                                          fa_norm, embed))
    return assemble_report(entries, J, warnings, ctx.config, tuple(notes))
