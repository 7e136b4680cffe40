"""Discounted profit streams and the multi-period attrition simulation.

Periods run ``t = 0 .. T-1`` under competition and from ``T`` on under
monopoly.  A discount factor ``delta`` in (0, 1) keeps the monopoly tail
finite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .games import ContractError
from .market import MarketParams, monopoly_profit


class StreamMode(enum.Enum):
    LITERAL = "literal"
    EQ1 = "eq1"


class Decision(enum.Enum):
    FIGHT = "Fight"
    ACCOMMODATE = "Accommodate"


class IncumbentBehavior(enum.Enum):
    BLOCKADED = "Blockaded"
    DETERRED = "Deterred"
    ACCOMMODATED = "Accommodated"


def _geometric(ratio: float, terms: int) -> float:
    """1 + ratio + ... + ratio**(terms-1)."""
    if ratio == 1.0:
        return float(terms)
    return (1.0 - ratio**terms) / (1.0 - ratio)


def pirate_stream_literal(params: MarketParams, T: int, delta: float) -> float:
    """Discounted revenue per firm over ``T`` competitive periods.

    ``delta == 1`` is accepted here and gives the plain undiscounted sum.
    """
    if T < 1:
        raise ContractError(f"T must be >= 1, got {T!r}")
    if not 0 < delta <= 1:
        raise ContractError(f"discount must be in (0, 1], got {delta!r}")
    return params.p * (params.Q / params.n) * _geometric(delta, T)


def industry_stream_literal(params: MarketParams, T: int, delta: float) -> float:
    """Competitive revenue for ``T`` periods followed by monopoly revenue forever."""
    if T < 1:
        raise ContractError(f"T must be >= 1, got {T!r}")
    if not 0 < delta < 1:
        raise ContractError(f"divergent tail: discount must be in (0, 1), got {delta!r}")
    competitive = params.p * (params.Q / params.n) * _geometric(delta, T)
    tail = params.p * params.Q * delta**T / (1.0 - delta)
    return competitive + tail


@dataclass(frozen=True)
class DynamicScenario:
    """Exogenous paths for the pirate population and the deterrence costs.

    ``market.n`` is the initial producer count; ``market.D_I``/``market.D_P``
    are the initial deterrence costs.
    """

    market: MarketParams
    n_decrement: float = 0.0
    d_industry_increment: float = 0.0
    d_pirate_increment: float = 0.0
    discount: float = 0.95
    horizon: int = 30
    stream_mode: StreamMode = StreamMode.EQ1

    def __post_init__(self):
        if not 0 < self.discount < 1:
            raise ContractError(f"discount must be in (0, 1), got {self.discount!r}")
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ContractError(f"horizon must be a positive integer, got {self.horizon!r}")
        for name in ("n_decrement", "d_industry_increment", "d_pirate_increment"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ContractError(f"{name} must be >= 0, got {value!r}")
        object.__setattr__(self, "horizon", int(self.horizon))
        object.__setattr__(self, "stream_mode", StreamMode(self.stream_mode))


@dataclass(frozen=True)
class PeriodRecord:
    t: int
    n: float
    D_I: float
    D_P: float
    pirate_profit: float
    industry_profit: float
    disc_cum_industry: float
    disc_cum_pirate: float


@dataclass
class SimulationTrace:
    records: list[PeriodRecord] = field(default_factory=list)
    monopoly_onset: Optional[int] = None
    discount: float = 0.95
    scenario: Optional[DynamicScenario] = None

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.records]

    @property
    def total_discounted_industry(self) -> float:
        return self.records[-1].disc_cum_industry if self.records else 0.0


def simulate_attrition(scenario: DynamicScenario) -> SimulationTrace:
    """Simulate the shrinking pirate population against rising deterrence.

    In EQ1 mode per-period profits are p*Q/n_t - c - D_t; LITERAL mode drops
    ``c`` and ``D`` during competition.  Once ``n_t`` reaches 1 the pirates
    are gone, deterrence spending stops and the industry earns p*Q - c.
    """
    m = scenario.market
    delta = scenario.discount
    literal = scenario.stream_mode is StreamMode.LITERAL
    trace = SimulationTrace(discount=delta, scenario=scenario)
    cum_i = cum_p = 0.0
    for t in range(scenario.horizon):
        n_t = max(1.0, m.n - scenario.n_decrement * t)
        if trace.monopoly_onset is None and n_t <= 1:
            trace.monopoly_onset = t
        if trace.monopoly_onset is None:
            d_i = m.D_I + scenario.d_industry_increment * t
            d_p = m.D_P + scenario.d_pirate_increment * t
            revenue = m.p * (m.Q / n_t)
            if literal:
                pirate, industry = revenue, revenue
            else:
                pirate, industry = revenue - m.c - d_p, revenue - m.c - d_i
        else:
            d_i = d_p = 0.0
            pirate, industry = 0.0, monopoly_profit(m)
        weight = delta**t
        cum_i += weight * industry
        cum_p += weight * pirate
        trace.records.append(PeriodRecord(t, n_t, d_i, d_p, pirate, industry, cum_i, cum_p))
    return trace


def breakeven_period(trace: SimulationTrace) -> Optional[int]:
    """First period whose discounted cumulative industry profit is back at or
    above zero after having been negative."""
    dipped = False
    for r in trace.records:
        if r.disc_cum_industry < 0:
            dipped = True
        elif dipped:
            return r.t
    return None


def accommodation_decision(trace: SimulationTrace) -> Decision:
    # Accommodating yields 0, so fighting pays only if the horizon total is positive.
    if trace.total_discounted_industry > 0:
        return Decision.FIGHT
    return Decision.ACCOMMODATE


def classify_incumbent_behavior(trace: SimulationTrace, entrant_profit_at_entry: float) -> IncumbentBehavior:
    """Blockaded, deterred or accommodated entry.

    Entry fails when the entrant's profit at entry is not positive; whether
    that took incumbent effort is read off the trace's deterrence spending.
    """
    if entrant_profit_at_entry > 0:
        return IncumbentBehavior.ACCOMMODATED
    spending = sum(r.D_I for r in trace.records)
    if spending > 0:
        return IncumbentBehavior.DETERRED
    return IncumbentBehavior.BLOCKADED
