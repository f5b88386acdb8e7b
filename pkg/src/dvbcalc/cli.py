"""Command line front end.

Subcommands:

* ``check <suite>``: run a property suite against a scenario file or a
  seeded random scenario and print its report.  Exit code 0 when every
  property passes, 1 when one fails, 2 on usage or scenario errors.
* ``gen``: print a seeded random scenario as JSON.
* ``dualize``: print the right dual of a scenario bundle, and with
  ``--point`` the dualized morphism blocks at a chart point.
* ``lift vertical`` / ``lift complete``: vertical lifts of the scenario
  core section and complete (tangent or cotangent) lifts of the scenario
  vector field.
* ``connection check {metric,symmetric,lagrangian}``: evaluate one
  connection predicate; failures carry a counterexample and replay seed.

Scenario problems are reported on stderr with a ``PARSE_ERROR:`` or
``INCONSISTENT_SCENARIO:`` prefix and exit code 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import Chart
from .duality import fiber_right_dual, right_dual, left_dual
from .geomech import (
    complete_cotangent_lift,
    complete_tangent_lift,
    vertical_lift,
)
from .ring import MultiPoly, rat
from .scenario import (
    InconsistentScenarioError,
    Scenario,
    ScenarioParseError,
    derive_seed,
    gen_random_scenario,
    load_scenario,
    random_core_section,
    random_vector_field,
    scenario_to_text,
)
from .suites import SUITE_NAMES, run_connection_check, run_suite


def _parse_point(text: str, dim: int, what: str = "point"):
    body = text.strip()
    if body.startswith("x="):
        body = body[2:].strip()
    parts = [p.strip() for p in body.split(",")] if body else []
    if len(parts) != dim:
        raise ScenarioParseError(
            f"{what} needs {dim} comma-separated coordinates, got {len(parts)}"
        )
    try:
        return tuple(rat(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioParseError(f"bad {what} coordinate: {exc}") from None


def _fmt_tuple(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _print_matrix(name: str, rows) -> None:
    print(f"{name}:")
    if not rows:
        print("  (empty)")
        return
    for row in rows:
        print("  [" + "  ".join(str(v) for v in row) + "]")


def _add_plan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="sampling seed override")
    p.add_argument("--samples", type=int, default=None, help="tuples per property")
    p.add_argument("--bound", type=int, default=None, help="coordinate magnitude bound")


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", metavar="FILE", help="scenario JSON file")
    group.add_argument(
        "--random", action="store_true", help="generate a scenario from --seed"
    )
    p.add_argument("--max-rank", type=int, default=3, help="random generation rank bound")
    p.add_argument(
        "--max-degree", type=int, default=2, help="random generation degree bound"
    )
    p.add_argument(
        "--symmetric",
        action="store_true",
        help="random generation: symmetric connection with side rank = chart dim",
    )


def _scenario_from_args(args) -> Scenario:
    if args.scenario is not None:
        sc = load_scenario(args.scenario)
    else:
        sc = gen_random_scenario(
            args.seed if args.seed is not None else 0,
            max_rank=args.max_rank,
            max_degree=args.max_degree,
            symmetric=args.symmetric,
        )
    if args.seed is not None or args.samples is not None or args.bound is not None:
        sc = sc.with_plan(seed=args.seed, samples=args.samples, bound=args.bound)
    return sc


def _cmd_check(args) -> int:
    sc = _scenario_from_args(args)
    report = run_suite(args.suite, sc, naive_identification=args.naive_identification)
    if args.json:
        print(json.dumps(report.to_obj(), indent=2, sort_keys=True))
    else:
        print(report.render(), end="")
    return 0 if report.passed else 1


def _cmd_gen(args) -> int:
    sc = gen_random_scenario(
        args.seed,
        max_rank=args.max_rank,
        max_degree=args.max_degree,
        symmetric=args.symmetric,
    )
    print(scenario_to_text(sc), end="")
    return 0


def _cmd_dualize(args) -> int:
    sc = load_scenario(args.scenario)
    b = sc.bundle
    x = None
    if args.point is not None:
        if sc.morphism is None:
            raise InconsistentScenarioError(
                "dualizing at a point needs a morphism section in the scenario"
            )
        x = _parse_point(args.point, b.chart.dim)
    dual = right_dual(b)
    ld = left_dual(b)
    print(f"bundle: ranks (n_F, n_C, n_E) = {b.ranks}; labels {', '.join(b.labels)}")
    print(f"right dual: ranks {dual.ranks}; labels {', '.join(dual.labels)}")
    print(f"left dual: ranks {ld.ranks}; labels {', '.join(ld.labels)}")
    if x is None:
        return 0
    fm = fiber_right_dual(sc.morphism.at(x))
    print(f"dual morphism blocks at x = {_fmt_tuple(x)}:")
    _print_matrix("l", fm.l)
    _print_matrix("c", fm.c)
    _print_matrix("r", fm.r)
    if not fm.psi or not any(any(row) for plane in fm.psi for row in plane):
        print("psi: 0")
    else:
        for g, plane in enumerate(fm.psi):
            _print_matrix(f"psi[{g + 1}]", plane)
    return 0


def _cmd_lift_vertical(args) -> int:
    sc = load_scenario(args.scenario)
    b = sc.bundle
    section = sc.core_section
    if section is None:
        rng = random.Random(derive_seed(sc.seed, "gen.core_section"))
        section = random_core_section(rng, sc.chart, b.n_C, 2)
    x = _parse_point(args.point, b.chart.dim)
    outer_len = b.n_E if args.side == "right" else b.n_F
    outer = _parse_point(args.outer, outer_len, what="outer fiber value")
    lifted = vertical_lift(b, args.side, section, x, outer)
    print(f"vertical lift ({args.side}) at x = {_fmt_tuple(x)}:")
    print(f"  f = {_fmt_tuple(lifted.f)}")
    print(f"  c = {_fmt_tuple(lifted.c)}")
    print(f"  e = {_fmt_tuple(lifted.e)}")
    return 0


def _restrict_to_chart(poly: MultiPoly, chart: Chart) -> MultiPoly:
    n = chart.dim
    data = {}
    for exps, coeff in poly.terms:
        if any(exps[n:]):
            raise InconsistentScenarioError(
                "complete lifts need a projectable field: base coefficients "
                "must not involve fiber variables"
            )
        data[tuple(exps[:n])] = coeff
    return MultiPoly.from_dict(chart.names, data)


def _cmd_lift_complete(args) -> int:
    sc = load_scenario(args.scenario)
    field = sc.vector_field
    if field is None:
        rng = random.Random(derive_seed(sc.seed, "gen.vector_field"))
        field = random_vector_field(rng, sc.side_bundle, 2)
    chart = sc.chart
    base = tuple(_restrict_to_chart(p, chart) for p in field.base)
    lift = (
        complete_tangent_lift(chart, base)
        if args.kind == "tangent"
        else complete_cotangent_lift(chart, base)
    )
    print(f"complete {args.kind} lift on chart dim {chart.dim} "
          f"(bundle label {lift.bundle.label}):")
    print("base: " + _fmt_tuple(lift.base))
    _print_matrix("fiber", lift.fiber.entries)
    return 0


def _cmd_connection_check(args) -> int:
    sc = _scenario_from_args(args)
    report = run_connection_check(args.kind, sc)
    print(report.render(), end="")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dvb",
        description="Exact property checks for decomposed double vector bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run a property suite")
    p_check.add_argument("suite", choices=SUITE_NAMES)
    _add_source_flags(p_check)
    _add_plan_flags(p_check)
    p_check.add_argument(
        "--naive-identification",
        action="store_true",
        help="also check that the naive third-dual identification diverges",
    )
    p_check.add_argument("--json", action="store_true", help="machine output only")
    p_check.set_defaults(func=_cmd_check)

    p_gen = sub.add_parser("gen", help="print a seeded random scenario")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--max-rank", type=int, default=3)
    p_gen.add_argument("--max-degree", type=int, default=2)
    p_gen.add_argument("--symmetric", action="store_true")
    p_gen.set_defaults(func=_cmd_gen)

    p_dual = sub.add_parser("dualize", help="right dual of the scenario bundle")
    p_dual.add_argument("--scenario", metavar="FILE", required=True)
    p_dual.add_argument(
        "--point", metavar="X", help='chart point, e.g. "x=1/2,-3"', default=None
    )
    p_dual.set_defaults(func=_cmd_dualize)

    p_lift = sub.add_parser("lift", help="vertical and complete lifts")
    lift_sub = p_lift.add_subparsers(dest="lift_kind", required=True)
    p_vert = lift_sub.add_parser("vertical", help="vertical lift of the core section")
    p_vert.add_argument("--scenario", metavar="FILE", required=True)
    p_vert.add_argument("--side", choices=("right", "left"), required=True)
    p_vert.add_argument("--point", metavar="X", required=True)
    p_vert.add_argument(
        "--outer", metavar="V", required=True, help="outer fiber value the lift sits over"
    )
    p_vert.set_defaults(func=_cmd_lift_vertical)
    p_comp = lift_sub.add_parser("complete", help="complete lift of the vector field")
    p_comp.add_argument("--scenario", metavar="FILE", required=True)
    p_comp.add_argument("--kind", choices=("tangent", "cotangent"), required=True)
    p_comp.set_defaults(func=_cmd_lift_complete)

    p_conn = sub.add_parser("connection", help="connection predicates")
    conn_sub = p_conn.add_subparsers(dest="conn_cmd", required=True)
    p_cc = conn_sub.add_parser("check", help="evaluate one connection predicate")
    p_cc.add_argument("kind", choices=("metric", "symmetric", "lagrangian"))
    _add_source_flags(p_cc)
    _add_plan_flags(p_cc)
    p_cc.set_defaults(func=_cmd_connection_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except ScenarioParseError as exc:
        print(f"PARSE_ERROR: {exc}", file=sys.stderr)
        return 2
    except InconsistentScenarioError as exc:
        print(f"INCONSISTENT_SCENARIO: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
