"""Plain-text reports for the command-line tool."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import attrition, games, market
from .dynamics import (
    accommodation_decision,
    breakeven_period,
    classify_incumbent_behavior,
)
from .output import format_number

FREE_ENTRY_NOTE = (
    "note: n* solves p*Q/n - c - D = 0, i.e. n* = p*Q / (c + D). Reading the formula "
    "as p*Q/D + c does not give zero profit, so the bracketed form is used."
)
BIOPROSPECTING_NOTE = (
    "note: (Accommodate, Patent) is not an equilibrium of this matrix, although it is "
    "sometimes presented as the dominant outcome. Accommodate is never a strict best "
    "response for the healers when pi_H > 0, and whether the firm patents turns on "
    "pi_M - f (its own margin), not on pi_H - f."
)


def _prob(x: float) -> str:
    text = format_number(x)
    frac = Fraction(x).limit_denominator(1000)
    if frac.denominator > 1 and abs(float(frac) - x) <= 1e-9:
        text += f" ({frac.numerator}/{frac.denominator})"
    return text


def format_matrix(game: games.NormalFormGame, row_title: str = "", col_title: str = "") -> str:
    cells = [[f"({format_number(a)}, {format_number(b)})" for a, b in row] for row in game.payoffs]
    first = max(len(str(a)) for a in game.row_actions + (row_title,))
    widths = [
        max(len(str(game.col_actions[j])), *(len(cells[i][j]) for i in range(len(cells))))
        for j in range(len(game.col_actions))
    ]
    lines = []
    if col_title:
        lines.append(" " * (first + 2) + col_title)
    lines.append(
        row_title.ljust(first) + "  " + "  ".join(str(c).ljust(w) for c, w in zip(game.col_actions, widths))
    )
    for label, row in zip(game.row_actions, cells):
        lines.append(str(label).ljust(first) + "  " + "  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(line.rstrip() for line in lines)


def _dominance(d) -> str:
    if d is None:
        return "none"
    return f"{d.action} ({d.strength.value})"


def format_equilibria(game: games.NormalFormGame, row_title="row", col_title="column") -> str:
    rep = games.analyze(game)
    lines = [
        f"dominant action, {row_title}: {_dominance(rep.dominant_row)}",
        f"dominant action, {col_title}: {_dominance(rep.dominant_col)}",
    ]
    idx = games.pure_nash_indices(game)
    if idx:
        lines.append("pure Nash equilibria:")
        for i, j in idx:
            u1, u2 = game.payoffs[i, j]
            kind = "strict" if games.is_strict_nash(game, i, j) else "weak"
            lines.append(
                f"  ({game.row_actions[i]}, {game.col_actions[j]}) payoffs "
                f"({format_number(u1)}, {format_number(u2)}) [{kind}]"
            )
        if len(idx) == 1:
            lines.append("  unique pure Nash equilibrium")
    else:
        lines.append("pure Nash equilibria: none")
    mixed = rep.mixed_2x2
    if isinstance(mixed, games.Continuum):
        who = ", ".join(row_title if p is games.Player.ROW else col_title for p in mixed.players)
        lines.append(f"mixed equilibrium: continuum (indifference is degenerate for mixing by {who})")
    elif mixed is not None:
        p, q = mixed[0].probabilities[0], mixed[1].probabilities[0]
        lines.append(
            f"mixed equilibrium: {row_title} plays {game.row_actions[0]} with probability {_prob(p)}, "
            f"{col_title} plays {game.col_actions[0]} with probability {_prob(q)}"
        )
    elif game.shape == (2, 2):
        lines.append("mixed equilibrium: none in the interior")
    if rep.ess:
        lines.append("evolutionary stability (symmetric game, pure mutants):")
        for strategy, verdict in rep.ess:
            probs = strategy.probabilities
            if max(probs) == 1.0:
                name = str(game.row_actions[probs.index(1.0)])
            else:
                name = "mix(" + ", ".join(_prob(x) for x in probs) + ")"
            lines.append(f"  {name}: {verdict.value}")
    return "\n".join(lines)


def game_report(title: str, game: games.NormalFormGame, row_title: str, col_title: str, notes=()) -> str:
    parts = [
        title,
        "",
        format_matrix(game, row_title, col_title),
        "",
        format_equilibria(game, row_title, col_title),
    ]
    if notes:
        parts.append("")
        parts.extend(notes)
    return "\n".join(parts) + "\n"


def free_entry_report(params: market.MarketParams, deterrence: float) -> str:
    n_star = market.free_entry_n(params, deterrence)
    residual = params.p * (params.Q / n_star) - params.c - deterrence
    return (
        f"free-entry producer count n* = {format_number(n_star)}\n"
        f"whole producers (floor): {market.free_entry_floor(params, deterrence)}\n"
        f"residual profit at n*: {format_number(residual)}\n"
        f"{FREE_ENTRY_NOTE}\n"
    )


def attrition_report(contest: attrition.AttritionContest, grid_points: int, rounds: int, seed: int):
    """Return ``(text, ok)``; ``ok`` is False if any analytic payoff misses zero by 1e-6."""
    levels = np.linspace(0.0, 10.0 * contest.scale, grid_points)
    analytic = [attrition.payoff_vs_ess(contest, float(x)) for x in levels]
    mc = attrition.simulate_tournament(contest, levels, seed, rounds)
    ok = all(abs(v) <= 1e-6 for v in analytic)
    lines = [
        f"war of attrition: prize V = {format_number(contest.prize)}, cost rate k = "
        f"{format_number(contest.cost_rate)}, ESS mean persistence V/k = {format_number(contest.scale)}",
        f"Monte Carlo: {rounds} rounds per level, seed {seed}",
        f"{'level':>12}  {'analytic':>14}  {'mc_mean':>14}  {'std_err':>12}",
    ]
    for x, a, r in zip(levels, analytic, mc):
        lines.append(
            f"{format_number(float(x), 6):>12}  {a:>14.3e}  {r.mean:>14.6f}  {r.std_error:>12.6f}"
        )
    lines.append(
        "self-check: all analytic payoffs within 1e-6 of 0" if ok else "self-check FAILED: analytic payoff off zero"
    )
    return "\n".join(lines) + "\n", ok


def simulation_summary(trace) -> str:
    onset = trace.monopoly_onset
    breakeven = breakeven_period(trace)
    entrant = trace.records[0].pirate_profit
    lines = [
        f"periods simulated: {len(trace.records)}",
        f"monopoly onset T: {onset if onset is not None else 'not reached'}",
        f"breakeven period: {breakeven if breakeven is not None else 'none'}",
        f"total discounted industry profit: {format_number(trace.total_discounted_industry)}",
        f"decision: {accommodation_decision(trace).value}",
        f"entrant profit at entry: {format_number(entrant)}",
        f"incumbent behaviour: {classify_incumbent_behavior(trace, entrant).value}",
    ]
    return "\n".join(lines) + "\n"
