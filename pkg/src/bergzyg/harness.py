"""Scenario configuration, verification pipelines, and report emission.

Config files are line-oriented `key = value` with `[scenario.<name>]`
section headers; no nesting, so fixtures stay diffable. Expectations are
declared inline (`expect.bounded = true`, `expect.slope = 1.0 tol=0.05`),
which makes acceptance runs plain `run` invocations.

Exit codes: 0 all pass, 1 any fail, 2 any inconclusive; usage and parse
errors exit above 2.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .carleson import CarlesonContext, sweep
from .config import DEFAULT, ToolConfig
from .errors import ConfigError, ToolkitError
from .funcspace import parse_function_spec
from .measures import build_measure
from .operators import OperatorContext, parse_symbol_spec, tg_sweep
from .scale import (ScaleFunction, check_square_doubling, check_essential_monotone,
                    growth_envelope, parse_scale_spec)
from .errors import NotInClassError
from .sweeping import SweepReport
from .weights import parse_weight_spec

THREAD_ENV = "BERGZYG_THREADS"

CSV_COLUMNS = ["j", "radius", "theta", "rho_square", "rho_disc",
               "fa_norm_p", "embed_lb_ratio"]


@dataclass
class Expectation:
    key: str                    # bounded | vanishing | slope | sup | dhat | ...
    value: str                  # raw expected value
    tol: float | None = None


@dataclass
class Scenario:
    name: str
    kind: str = "embedding"
    weight: str = "power alpha=0"
    weight_nu: str | None = None
    scale_psi: str = "const c=1"
    scale_phi: str | None = None
    components: list[str] = field(default_factory=list)
    functions: list[str] = field(default_factory=list)
    symbol: str | None = None
    p: float = 2.0
    q: float = 2.0
    J: int = 12
    disc_radius: float | None = None
    gamma: float | None = None
    angular_cap: int | None = None
    include_fa: bool | None = None
    seed: int = 0
    expectations: list[Expectation] = field(default_factory=list)


@dataclass
class VerdictSummary:
    scenario: str
    check: str                          # embedding-bounded | embedding-compact |
    #                                     operator-bounded | operator-compact |
    #                                     class-checks | lemma-checks
    numbers: dict = field(default_factory=dict)
    outcome: str = "ran"                # pass | fail | inconclusive | ran
    error: str = ""

    def line(self) -> str:
        parts = [f"scenario={self.scenario}", f"check={self.check}"]
        for k in sorted(self.numbers):
            v = self.numbers[k]
            parts.append(f"{k}={_fmt(v)}")
        if self.outcome != "ran":
            parts.append(f"outcome={self.outcome}")
        if self.error:
            parts.append("error=" + self.error.replace(" ", "_"))
        return " ".join(parts)


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.12g}"
    return str(v)


def parse_config(text: str):
    """(globals, scenarios) from config text; raises ConfigError with line numbers."""
    globals_: dict[str, str] = {}
    scenarios: list[Scenario] = []
    current: Scenario | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not (line.endswith("]") and line.startswith("[scenario.")):
                raise ConfigError(f"bad section header {line!r}", lineno)
            name = line[len("[scenario."):-1]
            if not name:
                raise ConfigError("empty scenario name", lineno)
            current = Scenario(name=name)
            scenarios.append(current)
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if current is None:
                globals_[key] = value
            else:
                _apply_key(current, key, value)
        except (ValueError, KeyError) as exc:
            raise ConfigError(str(exc), lineno) from exc
    for s in scenarios:
        if not 0.0 < s.p <= s.q:
            raise ConfigError(f"scenario {s.name}: need 0 < p <= q")
    return globals_, scenarios


def _apply_key(s: Scenario, key: str, value: str) -> None:
    if key == "kind":
        if value not in ("embedding", "operator", "weight-class", "scale-class"):
            raise ValueError(f"unknown scenario kind {value!r}")
        s.kind = value
    elif key == "weight":
        s.weight = value
    elif key == "weight.nu":
        s.weight_nu = value
    elif key == "scale.psi":
        s.scale_psi = value
    elif key == "scale.phi":
        s.scale_phi = value
    elif key == "measure.component":
        s.components.append(value)
    elif key == "function":
        s.functions.append(value)
    elif key == "g":
        s.symbol = value
    elif key == "p":
        s.p = float(value)
    elif key == "q":
        s.q = float(value)
    elif key == "J":
        s.J = int(value)
    elif key == "r":
        s.disc_radius = float(value)
    elif key == "gamma":
        s.gamma = float(value)
    elif key == "angular_cap":
        s.angular_cap = int(value)
    elif key == "fa":
        s.include_fa = value.lower() == "true"
    elif key == "seed":
        s.seed = int(value)
    elif key.startswith("expect."):
        s.expectations.append(_parse_expectation(key[len("expect."):], value))
    else:
        raise ValueError(f"unknown key {key!r}")


def _parse_expectation(key: str, value: str) -> Expectation:
    tol = None
    parts = value.split()
    if len(parts) == 2 and parts[1].startswith("tol="):
        value = parts[0]
        tol = float(parts[1][4:])
    elif len(parts) != 1:
        raise ValueError(f"bad expectation value {value!r}")
    return Expectation(key=key, value=value, tol=tol)


def _judge(expect: Expectation, numbers: dict) -> str:
    """pass | fail | inconclusive for one declared expectation."""
    key = expect.key
    if key in ("bounded", "vanishing"):
        verdict = numbers.get(key, "missing")
        if verdict == "inconclusive":
            return "inconclusive"
        want = expect.value.lower() == "true"
        hit = verdict == ("bounded" if key == "bounded" else "vanishing")
        return "pass" if hit == want else "fail"
    if key in ("slope", "sup"):
        got = numbers.get(key if key != "sup" else "sup")
        target = float(expect.value)
        tol = expect.tol if expect.tol is not None else 0.05
        if got is None or (isinstance(got, float) and math.isnan(got)):
            return "inconclusive"
        return "pass" if abs(got - target) <= tol else "fail"
    if key in ("sup_min", "sup_max"):
        got = numbers.get("sup")
        if got is None or math.isnan(got):
            return "inconclusive"
        bound = float(expect.value)
        ok = got >= bound if key == "sup_min" else got <= bound
        return "pass" if ok else "fail"
    if key in ("dhat", "dcheck", "monotone", "in_class"):
        got = str(numbers.get(key, "missing"))
        if got == "inconclusive" and expect.value != "inconclusive":
            return "inconclusive"
        return "pass" if got == expect.value else "fail"
    if key == "envelope_exponent":
        got = numbers.get("envelope_exponent")
        if got is None or math.isnan(got):
            return "inconclusive"
        tol = expect.tol if expect.tol is not None else 1e-6
        return "pass" if abs(got - float(expect.value)) <= tol else "fail"
    raise ValueError(f"unknown expectation key {key!r}")


def _outcome(expectations, numbers) -> str:
    if not expectations:
        return "ran"
    results = [_judge(e, numbers) for e in expectations]
    if any(r == "fail" for r in results):
        return "fail"
    if any(r == "inconclusive" for r in results):
        return "inconclusive"
    return "pass"


def _sweep_numbers(rep: SweepReport) -> dict:
    return {
        "bounded": rep.verdict_bounded,
        "vanishing": rep.verdict_vanishing,
        "sup": rep.global_sup_estimate,
        "slope": rep.boundary_exponent,
        "warnings": rep.warning_count,
    }


def run_scenario(s: Scenario, outdir: str | None,
                 config: ToolConfig = DEFAULT) -> VerdictSummary:
    """Execute one scenario; never raises for numeric failures."""
    check = {
        "embedding": "embedding-bounded",
        "operator": "operator-bounded",
        "weight-class": "class-checks",
        "scale-class": "class-checks",
    }[s.kind]
    if s.kind in ("embedding", "operator") and any(
            e.key == "vanishing" and e.value.lower() == "true"
            for e in s.expectations):
        check = check.replace("bounded", "compact")
    summary = VerdictSummary(scenario=s.name, check=check)
    try:
        if s.kind == "embedding":
            omega = parse_weight_spec(s.weight)
            psi = parse_scale_spec(s.scale_psi)
            phi = parse_scale_spec(s.scale_phi or s.scale_psi)
            if not s.components:
                raise ConfigError(f"scenario {s.name}: needs measure.component")
            mu = build_measure(s.components)
            ctx = CarlesonContext(omega, psi, phi, mu, s.p, s.q,
                                  disc_radius=s.disc_radius, gamma=s.gamma,
                                  config=config)
            include_fa = s.include_fa if s.include_fa is not None else mu.is_radial()
            rep = sweep(ctx, s.J, angular_cap=s.angular_cap, include_fa=include_fa)
            summary.numbers.update(_sweep_numbers(rep))
            if s.functions:
                from .carleson import embedding_norm_estimate
                corpus = [parse_function_spec(f, ctx) for f in s.functions]
                summary.numbers["embedding_lb"] = embedding_norm_estimate(ctx, corpus)
            if outdir is not None:
                _write_csv(os.path.join(outdir, f"{s.name}.csv"), rep)
        elif s.kind == "operator":
            omega = parse_weight_spec(s.weight)
            nu = parse_weight_spec(s.weight_nu or s.weight)
            psi = parse_scale_spec(s.scale_psi)
            phi = parse_scale_spec(s.scale_phi or s.scale_psi)
            if s.symbol is None:
                raise ConfigError(f"scenario {s.name}: operator kind needs g = ...")
            g = parse_symbol_spec(s.symbol)
            ctx = OperatorContext(omega, nu, psi, phi, s.p, s.q, g,
                                  disc_radius=s.disc_radius, gamma=s.gamma,
                                  config=config)
            include_fa = s.include_fa if s.include_fa is not None else False
            rep = tg_sweep(ctx, s.J, angular_cap=s.angular_cap, include_fa=include_fa)
            summary.numbers.update(_sweep_numbers(rep))
            if outdir is not None:
                _write_csv(os.path.join(outdir, f"{s.name}.csv"), rep)
        elif s.kind == "weight-class":
            omega = parse_weight_spec(s.weight)
            up = omega.dhat_report(s.J, config)
            low = omega.dcheck_report(s.J, config)
            summary.numbers.update({
                "dhat": up.verdict, "dhat_C": up.constant_C,
                "dcheck": low.verdict, "dcheck_C": low.constant_C,
                "dcheck_K": low.constant_K if low.constant_K is not None else float("nan"),
                "beta_fit": low.exponent_beta,
            })
        elif s.kind == "scale-class":
            psi = parse_scale_spec(s.scale_psi)
            try:
                direction, constant = check_essential_monotone(psi, config)
                band = check_square_doubling(psi, config.tower_height, config)
                env = growth_envelope(psi, config)
                psi.assert_in_class(config)
                summary.numbers.update({
                    "in_class": "true", "monotone": direction.replace("essentially-", ""),
                    "monotone_C": constant,
                    "sqdoub_min": band[0], "sqdoub_max": band[1],
                    "envelope_exponent": env[1],
                })
            except NotInClassError as exc:
                summary.numbers.update({"in_class": "false"})
                summary.error = str(exc)
        summary.outcome = _outcome(s.expectations, summary.numbers)
    except ToolkitError as exc:
        # numeric trouble is a scenario-level failure, never a run abort
        summary.outcome = "fail"
        summary.error = f"{type(exc).__name__}: {exc}"
    return summary


def _write_csv(path: str, rep: SweepReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for e in rep.entries:
            writer.writerow([
                e.level, f"{e.radius:.12g}", f"{e.theta:.12g}",
                f"{e.rho_square:.12g}", f"{e.rho_disc:.12g}",
                "" if math.isnan(e.fa_norm_p) else f"{e.fa_norm_p:.12g}",
                "" if math.isnan(e.embed_lb_ratio) else f"{e.embed_lb_ratio:.12g}",
            ])


def run(config_text: str, outdir: str | None = None,
        config: ToolConfig = DEFAULT) -> tuple[int, list[VerdictSummary]]:
    """Run every scenario in the config; returns (exit_code, summaries).

    A failing scenario never disturbs its siblings; scenarios run in a
    thread pool sized by the BERGZYG_THREADS environment variable (default
    1) and results are emitted in declaration order either way.
    """
    globals_, scenarios = parse_config(config_text)
    if not scenarios:
        raise ConfigError("config declares no scenarios")
    outdir = outdir if outdir is not None else globals_.get("output")
    if outdir:
        os.makedirs(outdir, exist_ok=True)
    workers = max(1, int(os.environ.get(THREAD_ENV, "1")))
    if workers == 1:
        summaries = [run_scenario(s, outdir, config) for s in scenarios]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            summaries = list(pool.map(lambda s: run_scenario(s, outdir, config),
                                      scenarios))
    if outdir:
        with open(os.path.join(outdir, "summary.txt"), "w") as fh:
            for summ in summaries:
                fh.write(summ.line() + "\n")
    outcomes = [s.outcome for s in summaries]
    if "fail" in outcomes:
        code = 1
    elif "inconclusive" in outcomes:
        code = 2
    else:
        code = 0
    return code, summaries
