"""Command line entry point.

Subcommands:
  run <config>            run every scenario in a config file (or builtin:<name>)
  sweep <config>          run only the first scenario and print its summary
  catalog [filter]        list shipped scenario configs
  weight-check <spec>     doubling-class diagnostics for one weight spec
  scale-check <spec>      class diagnostics for one scale spec

Exit codes: 0 pass / member, 1 fail / non-member, 2 inconclusive,
3 usage or parse errors.
"""
from __future__ import annotations

import argparse
import sys

from . import scenarios as catalog_mod
from .config import DEFAULT
from .errors import ConfigError, NotInClassError, ToolkitError
from .harness import parse_config, run, run_scenario
from .scale import (check_essential_monotone, check_square_doubling,
                    growth_envelope, parse_scale_spec)
from .weights import parse_weight_spec

USAGE_EXIT = 3


def _load_config(arg: str) -> str:
    if arg.startswith("builtin:"):
        return catalog_mod.builtin_config(arg[len("builtin:"):])
    with open(arg) as fh:
        return fh.read()


def cmd_run(args) -> int:
    code, summaries = run(_load_config(args.config), outdir=args.output)
    for s in summaries:
        print(s.line())
    return code


def cmd_sweep(args) -> int:
    _, scens = parse_config(_load_config(args.config))
    if not scens:
        raise ConfigError("config declares no scenarios")
    summary = run_scenario(scens[0], args.output, DEFAULT)
    print(summary.line())
    return {"pass": 0, "ran": 0, "fail": 1, "inconclusive": 2}[summary.outcome]


def cmd_catalog(args) -> int:
    for name in catalog_mod.catalog(args.filter):
        print(name)
    return 0


def cmd_weight_check(args) -> int:
    omega = parse_weight_spec(args.spec)
    up = omega.dhat_report()
    low = omega.dcheck_report()
    print(f"weight={omega.label}")
    print(f"dhat verdict={up.verdict} C={up.constant_C:.6g} "
          f"beta_fit={up.exponent_beta:.6g}")
    kshow = "nan" if low.constant_K is None else f"{low.constant_K:g}"
    print(f"dcheck verdict={low.verdict} C={low.constant_C:.6g} K={kshow} "
          f"beta_fit={low.exponent_beta:.6g}")
    if up.verdict == "member" and low.verdict == "member":
        return 0
    if "non-member" in (up.verdict, low.verdict):
        return 1
    return 2


def cmd_scale_check(args) -> int:
    psi = parse_scale_spec(args.spec)
    print(f"scale={psi.label}")
    try:
        direction, constant = check_essential_monotone(psi)
        band = check_square_doubling(psi, DEFAULT.tower_height)
        print(f"monotone direction={direction} C={constant:.6g}")
        print(f"square_doubling min={band[0]:.6g} max={band[1]:.6g}")
        env = growth_envelope(psi)
        print(f"envelope c1={env[0]:.6g} exponent={env[1]:.6g} C1={env[2]:.6g}")
        psi.assert_in_class()
        print("in_class=true")
        return 0
    except NotInClassError as exc:
        print(f"in_class=false reason={exc}")
        return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bergzyg",
        description="Numerical checks for weighted Bergman-Zygmund spaces "
                    "on the unit disc")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run all scenarios in a config")
    p_run.add_argument("config", help="config path or builtin:<name>")
    p_run.add_argument("--output", default=None, help="report directory")
    p_run.set_defaults(fn=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a single scenario")
    p_sweep.add_argument("config", help="config path or builtin:<name>")
    p_sweep.add_argument("--output", default=None)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_cat = sub.add_parser("catalog", help="list built-in scenarios")
    p_cat.add_argument("filter", nargs="?", default=None)
    p_cat.set_defaults(fn=cmd_catalog)

    p_w = sub.add_parser("weight-check", help="doubling diagnostics for a weight")
    p_w.add_argument("spec")
    p_w.set_defaults(fn=cmd_weight_check)

    p_s = sub.add_parser("scale-check", help="class diagnostics for a scale function")
    p_s.add_argument("spec")
    p_s.set_defaults(fn=cmd_scale_check)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except ToolkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
