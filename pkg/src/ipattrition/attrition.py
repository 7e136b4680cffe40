"""Symmetric continuous war of attrition.

Two contestants pay ``cost_rate`` per unit of persistence time until one
quits; the one who persists longer takes the prize.  The evolutionarily
stable persistence time is exponential with mean ``prize / cost_rate``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .games import ContractError

CHUNK = 1 << 16


@dataclass(frozen=True)
class AttritionContest:
    prize: float
    cost_rate: float

    def __post_init__(self):
        if not (math.isfinite(self.prize) and self.prize > 0):
            raise ContractError(f"prize must be positive, got {self.prize!r}")
        if not (math.isfinite(self.cost_rate) and self.cost_rate > 0):
            raise ContractError(f"cost rate must be positive, got {self.cost_rate!r}")

    @property
    def scale(self) -> float:
        """Mean persistence time under the ESS."""
        return self.prize / self.cost_rate


def ess_density(contest: AttritionContest, x: float) -> float:
    if x < 0:
        raise ContractError(f"persistence time must be >= 0, got {x!r}")
    rate = contest.cost_rate / contest.prize
    return rate * math.exp(-rate * x)


def ess_cdf(contest: AttritionContest, x: float) -> float:
    if x < 0:
        return 0.0
    return -math.expm1(-x / contest.scale)


def payoff_vs_ess(contest: AttritionContest, x: float) -> float:
    """Expected payoff of persisting exactly ``x`` against an ESS opponent.

    Winning against an opponent who quits at ``y < x`` earns ``V - k*y``;
    losing costs ``k*x``.  Integrated numerically so the indifference of the
    exponential ESS is checked rather than assumed.
    """
    if x < 0:
        raise ContractError(f"persistence time must be >= 0, got {x!r}")
    if x == 0:
        return 0.0
    v, k = contest.prize, contest.cost_rate
    win, _ = integrate.quad(
        lambda y: (v - k * y) * ess_density(contest, y), 0.0, x, epsabs=1e-12, epsrel=1e-10, limit=200
    )
    return win - k * x * (1.0 - ess_cdf(contest, x))


def _uniform_stream(seed: int, stream: int, count: int) -> np.ndarray:
    """Uniforms on (0, 1], generated in fixed-size chunks with per-chunk seeds.

    Chunk ``c`` of stream ``s`` depends only on ``(seed, s, c)``, so a longer
    run starts with exactly the draws of a shorter one and chunks may be
    produced in any order or in parallel.
    """
    if not 0 <= seed < 2**64:
        raise ContractError("seed must be an unsigned 64-bit integer")
    out = np.empty(count)
    for c, start in enumerate(range(0, count, CHUNK)):
        size = min(CHUNK, count - start)
        seq = np.random.SeedSequence(entropy=seed, spawn_key=(stream, c))
        rng = np.random.Generator(np.random.PCG64(seq))
        out[start : start + size] = 1.0 - rng.random(size)
    return out


def _inverse_cdf(contest: AttritionContest, u: np.ndarray) -> np.ndarray:
    return -contest.scale * np.log(u)


def sample_persistence(contest: AttritionContest, seed: int, count: int) -> np.ndarray:
    """``count`` persistence times drawn from the ESS by inverse CDF."""
    if count < 1:
        raise ContractError("count must be >= 1")
    return _inverse_cdf(contest, _uniform_stream(seed, 0, count))


def contest_payoff(contest: AttritionContest, mine, theirs):
    """Payoff to the player persisting ``mine`` against ``theirs`` (vectorised)."""
    v, k = contest.prize, contest.cost_rate
    mine = np.asarray(mine, dtype=float)
    theirs = np.asarray(theirs, dtype=float)
    return np.where(
        mine > theirs,
        v - k * theirs,
        np.where(mine < theirs, -k * mine, v / 2 - k * mine),
    )


@dataclass(frozen=True)
class TournamentResult:
    level: float
    mean: float
    std_error: float


def simulate_tournament(contest: AttritionContest, pure_levels, seed: int, rounds: int) -> list[TournamentResult]:
    """Mean payoff of each fixed persistence level against ``rounds`` ESS opponents.

    Level ``i`` draws its opponents from its own random stream, so adding a
    level never changes the results of the others.
    """
    levels = [float(x) for x in pure_levels]
    if not levels:
        raise ContractError("need at least one persistence level")
    if any(not math.isfinite(x) or x < 0 for x in levels):
        raise ContractError("persistence levels must be finite and >= 0")
    if rounds < 1:
        raise ContractError("rounds must be >= 1")
    results = []
    for i, level in enumerate(levels):
        opponents = _inverse_cdf(contest, _uniform_stream(seed, i + 1, rounds))
        payoffs = contest_payoff(contest, level, opponents)
        mean = float(payoffs.mean()) + 0.0  # no negative zero
        if rounds > 1:
            se = float(payoffs.std(ddof=1) / math.sqrt(rounds))
        else:
            se = math.nan
        results.append(TournamentResult(level, mean, se))
    return results
