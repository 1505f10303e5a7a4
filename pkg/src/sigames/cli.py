"""Command-line interface.

Exit codes: 0 on success, 2 on invalid input, 3 when a size cap is exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .allocations import beta_certificate, unitary_owen_point, unitary_prices
from .errors import CapExceeded, SIGameError, ValidationError
from .games import (
    allocation_from_csv,
    allocation_to_csv,
    build_game,
    core_membership,
    dual_allocation,
)
from .instance import SIInstance, coalition_params, format_rational, label
from .lotsizing import solve_bruteforce, solve_dp
from .nucleolus import nucleolus
from .simulation import SimConfig, run_table_experiment
from .surplus import core_via_surplus, surplus_game


def _load(path) -> SIInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return SIInstance.from_json(text)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(values) -> str:
    return "(" + ", ".join(str(format_rational(v)) for v in values) + ")"


def cmd_solve(args):
    inst = _load(args.instance)
    mask = args.coalition if args.coalition is not None else inst.grand
    params = coalition_params(inst, mask)
    sol = solve_bruteforce(params, all_plans=True) if args.all_plans else solve_dp(params)
    print(f"coalition {label(mask)}: cost {format_rational(sol.cost)}")
    for plan in sol.plans or (sol.plan,):
        prices = unitary_prices(params, plan)
        print(f"  plan {plan.sigma} open {plan.open_periods} prices {_fmt(prices)}")
    if sol.truncated:
        print("  (plan enumeration truncated)")


def cmd_game(args):
    game, profile = build_game(_load(args.instance))
    _emit(game.to_csv(), args.out)


def cmd_allocate(args):
    inst = _load(args.instance)
    game, profile = build_game(inst)
    if args.rule == "unitary-owen":
        x = unitary_owen_point(inst, profile.grand_plan)
    elif args.rule == "dual":
        x = dual_allocation(inst)
    elif args.rule == "nucleolus":
        x = nucleolus(game)
    else:
        if args.alpha:
            alpha = allocation_from_csv(Path(args.alpha).read_text())
        else:
            alpha = nucleolus(surplus_game(inst, profile))
        x = core_via_surplus(inst, profile, alpha)
        print(f"plan profile {profile.fingerprint()}", file=sys.stderr)
    report = core_membership(game, x)
    print(f"core member: {'yes' if report else 'no'}", file=sys.stderr)
    _emit(allocation_to_csv(x), args.out)


def cmd_check_core(args):
    inst = _load(args.instance)
    try:
        x = allocation_from_csv(Path(args.allocation).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {args.allocation}: {exc.strerror}") from None
    game, _ = build_game(inst)
    report = core_membership(game, x)
    print("member" if report else "not a member")
    print(f"efficiency gap: {format_rational(report.efficiency_gap)}")
    for mask, amount in report.violations:
        print(f"violated by {label(mask)}: overcharged {format_rational(amount)}")


def cmd_certificate(args):
    inst = _load(args.instance)
    _, profile = build_game(inst)
    cert = beta_certificate(profile)
    if cert:
        _emit(cert.to_csv(), args.out)
    else:
        row = cert.witness
        print(f"no certificate: coalition {label(row.mask)} "
              f"(weight total {format_rational(row.total)}, slack {format_rational(row.slack)})")


def cmd_simulate(args):
    make = SimConfig.positive if args.positive else SimConfig
    cfg = make(args.players, args.periods, args.trials, args.seed, mode=args.mode)
    report = run_table_experiment(cfg, workers=args.workers)
    if args.out:
        Path(args.out).write_text(report.to_csv())
    sys.stdout.write(report.to_markdown())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal plan of one coalition")
    p.add_argument("instance")
    p.add_argument("--coalition", type=int, help="bitmask (default: grand coalition)")
    p.add_argument("--all-plans", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("game", help="characteristic function as CSV")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("allocate", help="compute an allocation")
    p.add_argument("instance")
    p.add_argument("--rule", required=True,
                   choices=["unitary-owen", "dual", "nucleolus", "owen-map"])
    p.add_argument("--alpha", help="surplus-core allocation CSV for owen-map")
    p.add_argument("--out")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("check-core", help="test an allocation CSV against the core")
    p.add_argument("instance")
    p.add_argument("allocation")
    p.set_defaults(func=cmd_check_core)

    p = sub.add_parser("certificate", help="weights certifying the unitary Owen point")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("simulate", help="success rate of unitary Owen points")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--periods", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--positive", action="store_true", help="strictly positive ranges")
    p.add_argument("--mode", choices=["canonical", "exhaustive"], default="exhaustive")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV report path")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, SIGameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
