"""Exit criteria for the package, one test per criterion.

A summary line per criterion is printed at the end of the pytest run.
"""

import io
import json
import math
import random
from pathlib import Path

import numpy as np
import pytest

from ipattrition import attrition, cli
from ipattrition.attrition import AttritionContest, payoff_vs_ess, simulate_tournament
from ipattrition.dynamics import (
    Decision,
    DynamicScenario,
    accommodation_decision,
    breakeven_period,
    industry_stream_literal,
    pirate_stream_literal,
    simulate_attrition,
)
from ipattrition.games import (
    EssVerdict,
    NormalFormGame,
    Player,
    Strength,
    dominant_action,
    ess_check,
    mixed_nash_2x2,
    pure_nash,
)
from ipattrition.market import (
    MarketParams,
    build_bioprospecting_game,
    build_carcass_game,
    build_deterrence_game,
    competitive_profit,
    free_entry_n,
)
from ipattrition.oracle import brute_force_nash

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
EPS = 1e-9


def run_cli(*argv):
    out = io.StringIO()
    return cli.main([str(a) for a in argv], out=out), out.getvalue()


@pytest.mark.criterion(1, "carcass game: Fight strictly dominant, unique pure Nash, 100 random Q")
def test_criterion_1_carcass():
    rng = random.Random(101)
    for _ in range(100):
        q = 1e6 - rng.uniform(0, 1e6)  # (0, 1e6]
        game = build_carcass_game(q)
        for player in Player:
            d = dominant_action(game, player)
            assert d is not None and d.action == "Fight" and d.strength is Strength.STRICT
        assert pure_nash(game) == [("Fight", "Fight")]


@pytest.mark.criterion(2, "free entry: zero profit at n* within 1e-9, n* decreasing in D and c")
def test_criterion_2_free_entry():
    rng = random.Random(202)
    for _ in range(100):
        p, q = rng.uniform(1, 10), rng.uniform(10, 1000)
        c, d = rng.uniform(0, 5), rng.uniform(0, 5)
        if c + d == 0:
            continue
        params = MarketParams(p=p, Q=q, c=c)
        n_star = free_entry_n(params, d)
        assert abs(competitive_profit(MarketParams(p=p, Q=q, c=c, n=n_star), d)) < EPS
        bump = rng.uniform(1e-3, 5)
        assert free_entry_n(params, d + bump) < n_star
        assert free_entry_n(MarketParams(p=p, Q=q, c=c + bump), d) < n_star


@pytest.mark.criterion(3, "deterrence regimes; mixed (10/11, 10/11) within 1e-9 and ESS")
def test_criterion_3_deterrence():
    for q in (0.5, 1, 4, 10, 37.5):
        for d1 in np.linspace(0, q, 9):
            for d2 in np.linspace(0, q, 9):
                game = build_deterrence_game(q, d1, d2)
                expected = d1 <= q / 2 + EPS and d2 <= q / 2 + EPS
                assert (("Blockade", "Blockade") in pure_nash(game)) == expected
    game = build_deterrence_game(10, 6, 6)
    p, r = mixed_nash_2x2(game)
    assert abs(p.probabilities[0] - 10 / 11) < EPS
    assert abs(r.probabilities[0] - 10 / 11) < EPS
    assert ess_check(game, p) is EssVerdict.ESS


def _games_with_interior_equilibrium(rng, count):
    found = []
    while len(found) < count:
        game = NormalFormGame.from_matrices(rng.uniform(-10, 10, (2, 2)), rng.uniform(-10, 10, (2, 2)))
        mixed = mixed_nash_2x2(game)
        if isinstance(mixed, tuple):
            found.append((game, mixed))
    return found


@pytest.mark.criterion(4, "oracle equivalence: pure Nash on 200 games, mixed within 1e-3 of grid on 50")
def test_criterion_4_oracle_equivalence():
    rng = np.random.default_rng(404)
    for _ in range(200):
        m, n = rng.integers(1, 5, size=2)
        game = NormalFormGame.from_matrices(rng.uniform(-10, 10, (m, n)), rng.uniform(-10, 10, (m, n)))
        assert pure_nash(game) == brute_force_nash(game, 1).pure_labels(game)
    kinds = set()
    for game, (p, q) in _games_with_interior_equilibrium(rng, 50):
        kinds.add(len(pure_nash(game)))
        best = brute_force_nash(game, 1000).best_interior
        assert abs(best[0] - p.probabilities[0]) <= 1e-3
        assert abs(best[1] - q.probabilities[0]) <= 1e-3
    # both cyclic (no pure equilibrium) and chicken/coordination games were covered
    assert kinds == {0, 2}


@pytest.mark.criterion(5, "classic attrition: |payoff_vs_ess| < 1e-6 on grids; MC means within 3 SE")
def test_criterion_5_classic_attrition():
    rng = random.Random(505)
    contests = [AttritionContest(rng.uniform(0.1, 20), rng.uniform(0.1, 20)) for _ in range(20)]
    for contest in contests:
        for x in np.linspace(0, 10 * contest.scale, 50):
            assert abs(payoff_vs_ess(contest, float(x))) < 1e-6
    checks = [(AttritionContest(2, 1), [0.0, 0.5, 2.0, 8.0])]
    checks += [(c, [0.25 * c.scale, c.scale, 4 * c.scale]) for c in contests[:3]]
    for seed, (contest, levels) in enumerate(checks):
        for r in simulate_tournament(contest, levels, seed, 10**6):
            assert abs(r.mean) <= 3 * r.std_error


@pytest.mark.criterion(6, "industry stream > pirate stream; both match summation oracles within 1e-9")
def test_criterion_6_streams():
    rng = random.Random(606)
    for _ in range(100):
        params = MarketParams(p=rng.uniform(0.5, 5), Q=rng.uniform(10, 200), n=rng.uniform(1, 50))
        t_exit, delta = rng.randint(1, 40), rng.uniform(0.6, 0.95)
        pirate = pirate_stream_literal(params, t_exit, delta)
        industry = industry_stream_literal(params, t_exit, delta)
        assert industry > pirate
        share = params.p * params.Q / params.n
        assert abs(pirate - math.fsum(delta**t * share for t in range(t_exit))) < EPS
        terms = 1000
        truncated = math.fsum(
            delta**t * (share if t < t_exit else params.p * params.Q) for t in range(terms)
        )
        remainder = params.p * params.Q * delta**terms / (1 - delta)
        assert -EPS < industry - truncated < remainder + EPS


@pytest.mark.criterion(7, "reference trajectory: 4, -11, T=19, 99, breakeven in (19, 30], Fight; g=50 -> Accommodate")
def test_criterion_7_trajectory():
    market = MarketParams(p=1, Q=100, c=1, n=20)
    base = dict(market=market, n_decrement=1, d_industry_increment=2, discount=0.95, horizon=30)
    trace = simulate_attrition(DynamicScenario(**base))
    industry = trace.column("industry_profit")
    assert industry[0] == 4.0
    assert industry[10] == -11.0
    assert trace.monopoly_onset == 19
    assert industry[19] == 99
    t_even = breakeven_period(trace)
    assert t_even is not None and 19 < t_even <= 30
    assert accommodation_decision(trace) is Decision.FIGHT
    heavy = simulate_attrition(DynamicScenario(**{**base, "d_industry_increment": 50, "horizon": 15}))
    assert accommodation_decision(heavy) is Decision.ACCOMMODATE


@pytest.mark.criterion(8, "bioprospecting regimes; report flags the Accommodate discrepancy")
def test_criterion_8_bioprospecting(tmp_path):
    assert pure_nash(build_bioprospecting_game(5, 10, 3)) == [("Blockade", "Patent")]
    nash = pure_nash(build_bioprospecting_game(5, 10, 15))
    assert ("Blockade", "NotPatent") in nash
    assert not any(row == "Accommodate" for row, _ in nash)
    path = tmp_path / "bio.json"
    path.write_text(json.dumps({"model": "bioprospecting", "params": {"pi_H": 5, "pi_M": 10, "f": 15}}))
    code, text = run_cli("analyze", path)
    assert code == 0
    assert "(Accommodate, Patent) is not an equilibrium" in text


@pytest.mark.criterion(9, "CLI byte-identical CSV/SVG reruns; exit codes 2, 3, 4, 5")
def test_criterion_9_cli(tmp_path, monkeypatch):
    for scenario in sorted(SCENARIOS.glob("dynamics*.json")):
        outputs = []
        for i in range(2):
            csv_path, svg_path = tmp_path / f"{scenario.stem}{i}.csv", tmp_path / f"{scenario.stem}{i}.svg"
            code, _ = run_cli("simulate", scenario, "--out", csv_path, "--svg", svg_path)
            assert code == 0
            outputs.append((csv_path.read_bytes(), svg_path.read_bytes()))
        assert outputs[0] == outputs[1]

    malformed = tmp_path / "bad.json"
    malformed.write_text('{"model": "carcass", "params": {"Q": 10,}}')
    assert run_cli("analyze", malformed)[0] == 2
    invalid = tmp_path / "invalid.json"
    invalid.write_text('{"model": "deterrence", "params": {"Q": 10, "d1": -1, "d2": 0}}')
    assert run_cli("analyze", invalid)[0] == 3
    code, _ = run_cli("simulate", SCENARIOS / "dynamics_reference.json", "--out", tmp_path / "nodir" / "x.csv")
    assert code == 4
    # a wrong equilibrium density must be caught by the indifference self-check
    monkeypatch.setattr(attrition, "ess_density", lambda c, x: 2 * c.cost_rate / c.prize * math.exp(-2 * x / c.scale))
    assert run_cli("attrition-ess", "--prize", 2, "--cost", 1, "--rounds", 100, "--grid", 3)[0] == 5
