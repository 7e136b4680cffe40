import math
import random

import pytest

from ipattrition.dynamics import (
    ContractError,
    Decision,
    DynamicScenario,
    IncumbentBehavior,
    StreamMode,
    accommodation_decision,
    breakeven_period,
    classify_incumbent_behavior,
    industry_stream_literal,
    pirate_stream_literal,
    simulate_attrition,
)
from ipattrition.market import MarketParams

REFERENCE_MARKET = MarketParams(p=1, Q=100, c=1, n=20)


def reference(**overrides):
    kwargs = dict(
        market=REFERENCE_MARKET,
        n_decrement=1,
        d_industry_increment=2,
        discount=0.95,
        horizon=30,
        stream_mode=StreamMode.EQ1,
    )
    kwargs.update(overrides)
    return DynamicScenario(**kwargs)


def hand_trace(p, Q, c, n0, r, g, delta, horizon):
    """Industry profits and their discounted running total, written out longhand."""
    rows = []
    onset = None
    for t in range(horizon):
        n = max(1.0, n0 - r * t)
        if onset is None and n <= 1:
            onset = t
        profit = p * Q - c if onset is not None else p * Q / n - c - g * t
        rows.append(profit)
    cums = [math.fsum(delta**s * rows[s] for s in range(t + 1)) for t in range(horizon)]
    return rows, cums, onset


def test_pirate_stream_examples():
    params = MarketParams(p=1, Q=100, n=20)
    assert pirate_stream_literal(params, 3, 1.0) == 15
    assert pirate_stream_literal(params, 1, 0.3) == 5
    expected = math.fsum(5 * 0.9**t for t in range(10))
    assert pirate_stream_literal(params, 10, 0.9) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(32.566, abs=1e-3)


def test_industry_stream_example():
    params = MarketParams(p=1, Q=100, n=20)
    competitive = math.fsum(5 * 0.9**t for t in range(5))
    tail = math.fsum(100 * 0.9**t for t in range(5, 1000))
    value = industry_stream_literal(params, 5, 0.9)
    assert value == pytest.approx(competitive + tail, abs=1e-9)
    assert value == pytest.approx(610.9655, abs=1e-4)


def test_industry_stream_rejects_undiscounted_tail():
    with pytest.raises(ContractError, match="divergent"):
        industry_stream_literal(MarketParams(p=1, Q=1), 3, 1.0)


def test_industry_stream_limit_for_distant_exit():
    params = MarketParams(p=1, Q=100, n=20)
    assert industry_stream_literal(params, 2000, 0.9) == pytest.approx(5 / 0.1, rel=1e-12)


def test_industry_dominates_pirate_on_random_draws():
    rng = random.Random(17)
    for _ in range(200):
        params = MarketParams(p=rng.uniform(0.5, 5), Q=rng.uniform(10, 200), n=rng.uniform(1, 50))
        t_exit, delta = rng.randint(1, 40), rng.uniform(0.6, 0.95)
        assert industry_stream_literal(params, t_exit, delta) > pirate_stream_literal(params, t_exit, delta)


def test_reference_trace_golden_values():
    trace = simulate_attrition(reference())
    industry = trace.column("industry_profit")
    assert industry[0] == 4.0
    assert industry[10] == -11.0
    assert trace.monopoly_onset == 19
    assert industry[19] == 99
    assert industry[-1] == 99
    assert any(x < 0 for x in industry)


def test_reference_trace_matches_longhand_recomputation():
    trace = simulate_attrition(reference())
    rows, cums, onset = hand_trace(1, 100, 1, 20, 1, 2, 0.95, 30)
    assert onset == trace.monopoly_onset
    for rec, profit, cum in zip(trace.records, rows, cums):
        assert rec.industry_profit == pytest.approx(profit, abs=1e-12)
        assert rec.disc_cum_industry == pytest.approx(cum, abs=1e-9)


def test_reference_breakeven_and_decision():
    trace = simulate_attrition(reference())
    _, cums, _ = hand_trace(1, 100, 1, 20, 1, 2, 0.95, 30)
    dipped = [t for t, c in enumerate(cums) if c < 0]
    expected = next(t for t in range(dipped[0], 30) if cums[t] >= 0)
    assert expected == 20
    assert breakeven_period(trace) == 20
    assert accommodation_decision(trace) is Decision.FIGHT
    assert trace.total_discounted_industry == pytest.approx(264.077227, abs=1e-6)


def test_heavy_deterrence_accommodates():
    trace = simulate_attrition(reference(d_industry_increment=50, horizon=15))
    assert accommodation_decision(trace) is Decision.ACCOMMODATE
    assert breakeven_period(trace) is None


def test_zero_deterrence_positive_margin_fights():
    trace = simulate_attrition(reference(d_industry_increment=0))
    assert all(r.industry_profit > 0 for r in trace.records)
    assert accommodation_decision(trace) is Decision.FIGHT
    assert breakeven_period(trace) is None


def test_flat_trace():
    trace = simulate_attrition(reference(n_decrement=0, d_industry_increment=0))
    assert trace.monopoly_onset is None
    assert len({r.industry_profit for r in trace.records}) == 1
    assert len({r.pirate_profit for r in trace.records}) == 1


def test_trace_invariants():
    scenario = reference(n_decrement=1.5, d_pirate_increment=0.5)
    trace = simulate_attrition(scenario)
    for rec in trace.records:
        assert rec.n == max(1.0, 20 - 1.5 * rec.t)
        if trace.monopoly_onset is not None and rec.t >= trace.monopoly_onset:
            assert rec.pirate_profit == 0 and rec.industry_profit == 99
            assert rec.D_I == 0 and rec.D_P == 0
    for name, profit in (("disc_cum_industry", "industry_profit"), ("disc_cum_pirate", "pirate_profit")):
        values = trace.column(profit)
        for t, cum in enumerate(trace.column(name)):
            assert cum == pytest.approx(math.fsum(0.95**s * values[s] for s in range(t + 1)), abs=1e-9)


def test_literal_mode_reproduces_stream_partial_sums():
    market = MarketParams(p=1, Q=100, n=20, c=3, D_I=4, D_P=2)
    trace = simulate_attrition(
        DynamicScenario(market, discount=0.9, horizon=12, stream_mode=StreamMode.LITERAL)
    )
    for rec in trace.records:
        assert rec.disc_cum_pirate == pytest.approx(pirate_stream_literal(market, rec.t + 1, 0.9), abs=1e-9)
        assert rec.disc_cum_industry == pytest.approx(pirate_stream_literal(market, rec.t + 1, 0.9), abs=1e-9)


def test_monotone_in_deterrence_growth():
    totals = [
        simulate_attrition(reference(d_industry_increment=g)).total_discounted_industry
        for g in (0, 0.5, 1, 2, 4, 8)
    ]
    assert all(a >= b for a, b in zip(totals, totals[1:]))


def test_monopoly_weight_grows_with_discount():
    def monopoly_share(delta):
        trace = simulate_attrition(reference(discount=delta))
        competitive = sum(
            delta**r.t * r.industry_profit for r in trace.records if r.t < trace.monopoly_onset
        )
        return trace.total_discounted_industry - competitive

    shares = [monopoly_share(d) for d in (0.5, 0.7, 0.9, 0.95, 0.99)]
    assert all(a < b for a, b in zip(shares, shares[1:]))


def test_classify_incumbent_behavior():
    quiet = simulate_attrition(reference(d_industry_increment=0))
    active = simulate_attrition(reference())
    assert classify_incumbent_behavior(quiet, -2) is IncumbentBehavior.BLOCKADED
    assert classify_incumbent_behavior(active, -2) is IncumbentBehavior.DETERRED
    assert classify_incumbent_behavior(active, 3) is IncumbentBehavior.ACCOMMODATED


def test_breakeven_edge_cases():
    trace = simulate_attrition(reference(d_industry_increment=50, horizon=15))
    assert trace.records[-1].disc_cum_industry < 0
    assert breakeven_period(trace) is None


def test_scenario_validation():
    with pytest.raises(ContractError):
        reference(discount=1.0)
    with pytest.raises(ContractError):
        reference(horizon=0)
    with pytest.raises(ContractError):
        reference(n_decrement=-1)
