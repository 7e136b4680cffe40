"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 I/O error,
5 self-check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import attrition, dynamics, market, report
from .games import ContractError
from .output import format_number, trace_to_csv
from .scenario import (
    GAME_MODELS,
    MODELS,
    Scenario,
    ScenarioParseError,
    ScenarioValidationError,
    load_scenario,
)
from .svgplot import profit_chart

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_SELF_CHECK = 5

DEFAULT_GRID = 11
DEFAULT_ROUNDS = 100_000


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _market(s: Scenario) -> market.MarketParams:
    return market.MarketParams(
        p=s.get("p"),
        Q=s.get("Q"),
        c=s.get("c", 0.0),
        n=s.get("n0", 1.0),
        D_P=s.get("D_P", 0.0),
        D_I=s.get("D_I", 0.0),
        INV=s.get("INV", 0.0),
    )


def game_text(s: Scenario) -> str:
    """Build the model's game and render its equilibrium report."""
    if s.model == "carcass":
        game = market.build_carcass_game(s.get("Q"))
        return report.game_report(f"carcass contest, Q = {format_number(s.get('Q'))}", game, "troop 2", "troop 1")
    if s.model == "deterrence":
        q, d1, d2 = s.get("Q"), s.get("d1"), s.get("d2")
        game = market.build_deterrence_game(q, d1, d2)
        regime = "both blockade" if d1 <= q / 2 and d2 <= q / 2 else "chicken or one-sided (some d > Q/2)"
        return report.game_report(
            f"blockade/deterrence game, Q = {format_number(q)}, d1 = {format_number(d1)}, d2 = {format_number(d2)}",
            game,
            "pirate",
            "industry",
            [f"regime: {regime}"],
        )
    if s.model == "entry":
        params = _market(s)
        game = market.build_entry_game(params)
        notes = [
            f"pi_1 = p*Q/n0 - c - D_P = {format_number(market.competitive_profit(params, params.D_P))}",
            f"pi_2 = p*Q/n0 - c - D_I = {format_number(market.competitive_profit(params, params.D_I))}",
            f"pi_m = p*Q - c = {format_number(market.monopoly_profit(params))}",
        ]
        return report.game_report("entry game", game, "pirate", "industry", notes)
    if s.model == "dynamic_game":
        params = _market(s)
        t_exit, delta = int(s.get("T")), s.get("delta", 0.95)
        pi_p = dynamics.pirate_stream_literal(params, t_exit, delta)
        pi_i = dynamics.industry_stream_literal(params, t_exit, delta)
        game = market.build_dynamic_game(pi_p, pi_i, params.D_P, params.D_I)
        notes = [
            f"pi_P (discounted, {t_exit} competitive periods, delta = {format_number(delta)}) = {format_number(pi_p)}",
            f"pi_I (same, plus discounted monopoly tail) = {format_number(pi_i)}",
        ]
        return report.game_report("dynamic entry game", game, "pirate", "industry", notes)
    if s.model == "bioprospecting":
        if "pi_H" in s.params:
            pi_h, pi_m = s.get("pi_H"), s.get("pi_M")
            notes = []
        else:
            params = _market(s)
            pi_h, pi_m = market.healer_profit(params), market.bioprospector_profit(params)
            notes = [f"pi_H = p*Q/n0 - c = {format_number(pi_h)}", f"pi_M = p*Q - c - INV = {format_number(pi_m)}"]
        game = market.build_bioprospecting_game(pi_h, pi_m, s.get("f"))
        notes.append(report.BIOPROSPECTING_NOTE)
        return report.game_report("bioprospecting game", game, "healers", "bioprospector", notes)
    raise AssertionError(s.model)


def _load(path) -> Scenario:
    try:
        return load_scenario(path)
    except ScenarioParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    except ScenarioValidationError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: {exc}") from None


def cmd_analyze(args, out) -> int:
    s = _load(args.file)
    try:
        if s.model in GAME_MODELS:
            text = game_text(s)
        elif s.model == "free_entry":
            deterrence = s.get("D_I", s.get("D_P", 0.0))
            text = report.free_entry_report(_market(s), deterrence)
        elif s.model == "classic_attrition":
            contest = attrition.AttritionContest(s.get("V"), s.get("k"))
            text, ok = report.attrition_report(contest, DEFAULT_GRID, DEFAULT_ROUNDS, int(s.get("seed", 0)))
            out.write(text)
            return EXIT_OK if ok else EXIT_SELF_CHECK
        else:
            raise CliError(EXIT_VALIDATION, f"model {s.model} is a simulation; use the simulate command")
    except ContractError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    out.write(text)
    return EXIT_OK


def _scenario_for_dynamics(s: Scenario) -> dynamics.DynamicScenario:
    return dynamics.DynamicScenario(
        market=_market(s),
        n_decrement=s.get("r", 0.0),
        d_industry_increment=s.get("g", 0.0),
        d_pirate_increment=s.get("g_P", 0.0),
        discount=s.get("delta", 0.95),
        horizon=int(s.get("horizon", 30)),
        stream_mode=dynamics.StreamMode(s.mode or "eq1"),
    )


def _write_all(files: list[tuple[Path, str]]) -> None:
    written = []
    try:
        for path, text in files:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            written.append(path)
    except OSError as exc:
        for path in written:
            try:
                os.remove(path)
            except OSError:
                pass
        raise CliError(EXIT_IO, f"cannot write output: {exc}") from None


def cmd_simulate(args, out) -> int:
    s = _load(args.file)
    if s.model != "dynamics":
        raise CliError(EXIT_VALIDATION, f"simulate needs a dynamics scenario, got model {s.model}")
    try:
        scenario = _scenario_for_dynamics(s)
    except ContractError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    trace = dynamics.simulate_attrition(scenario)
    files = [(Path(args.out), trace_to_csv(trace))]
    if args.svg:
        chart = profit_chart(trace.column("t"), trace.column("industry_profit"), trace.column("pirate_profit"))
        files.append((Path(args.svg), chart))
    summary = report.simulation_summary(trace)
    _write_all(files)
    out.write(summary)
    return EXIT_OK


def cmd_attrition_ess(args, out) -> int:
    if args.grid < 1 or args.rounds < 1 or not 0 <= args.seed < 2**64:
        raise CliError(EXIT_VALIDATION, "grid and rounds must be >= 1 and seed an unsigned 64-bit integer")
    try:
        contest = attrition.AttritionContest(args.prize, args.cost)
    except ContractError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    text, ok = report.attrition_report(contest, args.grid, args.rounds, args.seed)
    out.write(text)
    return EXIT_OK if ok else EXIT_SELF_CHECK


def cmd_free_entry(args, out) -> int:
    try:
        params = market.MarketParams(p=args.p, Q=args.Q, c=args.c)
        if args.D < 0:
            raise ContractError(f"D must be >= 0, got {args.D!r}")
        text = report.free_entry_report(params, args.D)
    except ContractError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    out.write(text)
    return EXIT_OK


def _model_help() -> str:
    lines = ["scenario models (JSON: {\"model\": ..., \"params\": {...}, \"mode\": ...}):"]
    for name, schema in MODELS.items():
        required = ", ".join(sorted(schema.required))
        optional = ", ".join(sorted(schema.optional)) or "-"
        lines.append(f"  {name}: {schema.summary}")
        lines.append(f"      required: {required}; optional: {optional}")
    lines.append("exit codes: 0 ok, 2 parse error, 3 validation error, 4 I/O error, 5 self-check failure")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ipattrition",
        description="War-of-attrition models of intellectual-property disputes.",
        epilog=_model_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="equilibrium report for a game scenario")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run a dynamics scenario and write a CSV trace")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", help="optional SVG chart output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("attrition-ess", help="check the continuous war-of-attrition ESS")
    p.add_argument("--prize", type=float, required=True, help="prize V")
    p.add_argument("--cost", type=float, required=True, help="cost rate k per unit time")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="number of persistence levels in [0, 10V/k]")
    p.add_argument("--rounds", type=int, default=DEFAULT_ROUNDS, help="Monte Carlo opponents per level")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_attrition_ess)

    p = sub.add_parser("free-entry", help="zero-profit producer count")
    p.add_argument("--p", type=float, required=True, help="price")
    p.add_argument("--Q", type=float, required=True, help="total demand")
    p.add_argument("--c", type=float, required=True, help="production cost")
    p.add_argument("--D", type=float, required=True, help="blockade/deterrence cost")
    p.set_defaults(func=cmd_free_entry)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
