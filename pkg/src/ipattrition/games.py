"""Finite two-player normal-form games.

Payoffs are floats compared with a single absolute tolerance ``EPS``.
Everything here is a pure function of an immutable :class:`NormalFormGame`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

EPS = 1e-9


class ContractError(ValueError):
    """Raised when an operation is called with inputs outside its contract."""


class Player(enum.Enum):
    ROW = 0
    COL = 1


class Strength(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


class EssVerdict(enum.Enum):
    ESS = "ESS"
    NASH_NOT_ESS = "Nash, not ESS"
    NOT_NASH = "not Nash"


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    """Two-player bimatrix game with labelled actions.

    ``payoffs`` has shape ``(m, n, 2)``; ``payoffs[i, j]`` is the pair
    ``(u_row, u_col)`` when row plays ``i`` and column plays ``j``.
    """

    row_actions: tuple
    col_actions: tuple
    payoffs: np.ndarray

    def __post_init__(self):
        rows = tuple(self.row_actions)
        cols = tuple(self.col_actions)
        pay = np.array(self.payoffs, dtype=float)
        if pay.shape != (len(rows), len(cols), 2):
            raise ContractError(
                f"payoff shape {pay.shape} does not match "
                f"{len(rows)}x{len(cols)} actions"
            )
        if not np.all(np.isfinite(pay)):
            raise ContractError("payoffs must be finite")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ContractError("action labels must be distinct per player")
        if not rows or not cols:
            raise ContractError("each player needs at least one action")
        object.__setattr__(self, "row_actions", rows)
        object.__setattr__(self, "col_actions", cols)
        object.__setattr__(self, "payoffs", _frozen(pay))

    @classmethod
    def from_matrices(cls, row_payoffs, col_payoffs, row_actions=None, col_actions=None):
        a = np.asarray(row_payoffs, dtype=float)
        b = np.asarray(col_payoffs, dtype=float)
        if a.ndim != 2 or a.shape != b.shape:
            raise ContractError("row and column payoff matrices must share a 2-d shape")
        m, n = a.shape
        if row_actions is None:
            row_actions = tuple(f"r{i}" for i in range(m))
        if col_actions is None:
            col_actions = tuple(f"c{j}" for j in range(n))
        return cls(tuple(row_actions), tuple(col_actions), np.stack([a, b], axis=-1))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_actions), len(self.col_actions)

    @property
    def row_matrix(self) -> np.ndarray:
        return self.payoffs[:, :, 0]

    @property
    def col_matrix(self) -> np.ndarray:
        return self.payoffs[:, :, 1]

    def actions(self, player: Player) -> tuple:
        return self.row_actions if player is Player.ROW else self.col_actions

    def cell(self, row_action, col_action) -> tuple[float, float]:
        i = self.row_actions.index(row_action)
        j = self.col_actions.index(col_action)
        return float(self.payoffs[i, j, 0]), float(self.payoffs[i, j, 1])

    def scaled(self, factor: float) -> "NormalFormGame":
        return NormalFormGame(self.row_actions, self.col_actions, self.payoffs * factor)

    def is_symmetric(self, tol: float = EPS) -> bool:
        m, n = self.shape
        if m != n:
            return False
        return bool(np.all(np.abs(self.row_matrix - self.col_matrix.T) <= tol))

    def __eq__(self, other):
        if not isinstance(other, NormalFormGame):
            return NotImplemented
        return (
            self.row_actions == other.row_actions
            and self.col_actions == other.col_actions
            and np.array_equal(self.payoffs, other.payoffs)
        )

    def __hash__(self):
        return hash((self.row_actions, self.col_actions, self.payoffs.tobytes()))


@dataclass(frozen=True)
class MixedStrategy:
    probabilities: tuple

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probabilities)
        if not probs:
            raise ContractError("a mixed strategy needs at least one action")
        if any(not np.isfinite(x) or x < 0 for x in probs):
            raise ContractError(f"probabilities must be non-negative: {probs}")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ContractError(f"probabilities must sum to 1, got {sum(probs)!r}")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def pure(cls, index: int, size: int) -> "MixedStrategy":
        probs = [0.0] * size
        probs[index] = 1.0
        return cls(tuple(probs))

    def __len__(self):
        return len(self.probabilities)

    def as_array(self) -> np.ndarray:
        return np.array(self.probabilities)


StrategyLike = Union[MixedStrategy, Sequence[float]]


def _as_mix(strategy: StrategyLike) -> MixedStrategy:
    if isinstance(strategy, MixedStrategy):
        return strategy
    return MixedStrategy(tuple(strategy))


@dataclass(frozen=True)
class Continuum:
    """A player's indifference equation is 0 = 0: every mix makes the opponent indifferent."""

    players: tuple


@dataclass(frozen=True)
class Dominance:
    action: object
    index: int
    strength: Strength


@dataclass
class EquilibriumReport:
    dominant_row: Optional[Dominance]
    dominant_col: Optional[Dominance]
    pure_nash: list
    mixed_2x2: Union[tuple, Continuum, None]
    ess: list = field(default_factory=list)


def _own_and_other(game: NormalFormGame, player: Player) -> np.ndarray:
    """Player's payoff matrix oriented as (own action, opponent action)."""
    if player is Player.ROW:
        return game.row_matrix
    return game.col_matrix.T


def expected_payoffs(game: NormalFormGame, player: Player, opponent_mix: StrategyLike) -> np.ndarray:
    """Expected payoff of each of ``player``'s actions against ``opponent_mix``."""
    mix = _as_mix(opponent_mix)
    own = _own_and_other(game, player)
    if len(mix) != own.shape[1]:
        raise ContractError(
            f"opponent mix has {len(mix)} entries, opponent has {own.shape[1]} actions"
        )
    return own @ mix.as_array()


def best_response(game: NormalFormGame, player: Player, opponent_mix: StrategyLike) -> frozenset:
    """Indices of all actions within ``EPS`` of the best expected payoff."""
    values = expected_payoffs(game, player, opponent_mix)
    top = values.max()
    return frozenset(int(i) for i in np.flatnonzero(values >= top - EPS))


def dominant_action(game: NormalFormGame, player: Player) -> Optional[Dominance]:
    """Return the action dominating every other action, if any.

    Strict means every comparison against every opponent action exceeds ``EPS``.
    Among several weak dominators the lowest index wins.
    """
    own = _own_and_other(game, player)
    labels = game.actions(player)
    k = own.shape[0]
    for a in range(k):
        others = [b for b in range(k) if b != a]
        diffs = own[a] - own[others] if others else np.zeros((0, own.shape[1]))
        if np.all(diffs > EPS):
            return Dominance(labels[a], a, Strength.STRICT)
    for a in range(k):
        others = [b for b in range(k) if b != a]
        if np.all(own[a] - own[others] >= -EPS):
            return Dominance(labels[a], a, Strength.WEAK)
    return None


def pure_nash_indices(game: NormalFormGame) -> list[tuple[int, int]]:
    m, n = game.shape
    found = []
    for i in range(m):
        for j in range(n):
            if i in best_response(game, Player.ROW, MixedStrategy.pure(j, n)) and j in best_response(
                game, Player.COL, MixedStrategy.pure(i, m)
            ):
                found.append((i, j))
    return found


def pure_nash(game: NormalFormGame) -> list[tuple]:
    """All pure profiles (weak ones included), row-major, as action-label pairs."""
    return [(game.row_actions[i], game.col_actions[j]) for i, j in pure_nash_indices(game)]


def is_strict_nash(game: NormalFormGame, i: int, j: int) -> bool:
    m, n = game.shape
    a, b = game.row_matrix, game.col_matrix
    row_ok = all(a[i, j] - a[r, j] > EPS for r in range(m) if r != i)
    col_ok = all(b[i, j] - b[i, c] > EPS for c in range(n) if c != j)
    return row_ok and col_ok


def mixed_nash_2x2(game: NormalFormGame) -> Union[tuple, Continuum, None]:
    """Interior mixed equilibrium of a 2x2 game.

    Returns ``(row_mix, col_mix)`` when both mixing probabilities lie strictly
    inside (0, 1), a :class:`Continuum` when some indifference equation is
    identically satisfied, and ``None`` otherwise.
    """
    if game.shape != (2, 2):
        raise ContractError(f"mixed_nash_2x2 needs a 2x2 game, got {game.shape}")
    a, b = game.row_matrix, game.col_matrix
    # p = P(row plays 0) makes the column player indifferent.
    col_slope = b[0, 0] - b[1, 0] - b[0, 1] + b[1, 1]
    col_const = b[1, 1] - b[1, 0]
    # q = P(col plays 0) makes the row player indifferent.
    row_slope = a[0, 0] - a[0, 1] - a[1, 0] + a[1, 1]
    row_const = a[1, 1] - a[0, 1]

    degenerate = []
    if abs(col_slope) <= EPS and abs(col_const) <= EPS:
        degenerate.append(Player.ROW)
    if abs(row_slope) <= EPS and abs(row_const) <= EPS:
        degenerate.append(Player.COL)
    if degenerate:
        return Continuum(tuple(degenerate))
    if abs(col_slope) <= EPS or abs(row_slope) <= EPS:
        return None
    p = col_const / col_slope
    q = row_const / row_slope
    if not (EPS < p < 1 - EPS and EPS < q < 1 - EPS):
        return None
    return MixedStrategy((p, 1 - p)), MixedStrategy((q, 1 - q))


def _mix_payoff(matrix: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    return float(x @ matrix @ y)


def ess_check(game: NormalFormGame, candidate: StrategyLike) -> EssVerdict:
    """Maynard Smith stability of ``candidate`` against every pure mutant.

    Only pure mutants are tested; for 2x2 symmetric games that is equivalent
    to testing all mixed mutants.
    """
    if not game.is_symmetric():
        raise ContractError("ESS is defined for symmetric games only")
    x = _as_mix(candidate)
    k = game.shape[0]
    if len(x) != k:
        raise ContractError(f"candidate has {len(x)} entries, game has {k} actions")
    a = game.row_matrix
    s = x.as_array()
    incumbent = _mix_payoff(a, s, s)
    verdict = EssVerdict.ESS
    for i in range(k):
        mutant = np.zeros(k)
        mutant[i] = 1.0
        if np.allclose(mutant, s, rtol=0, atol=EPS):
            continue
        invader = _mix_payoff(a, mutant, s)
        if invader > incumbent + EPS:
            return EssVerdict.NOT_NASH
        if invader >= incumbent - EPS:
            if not _mix_payoff(a, s, mutant) > _mix_payoff(a, mutant, mutant) + EPS:
                verdict = EssVerdict.NASH_NOT_ESS
    return verdict


def analyze(game: NormalFormGame) -> EquilibriumReport:
    """Collect dominance, pure and mixed equilibria, and ESS verdicts for ``game``."""
    report = EquilibriumReport(
        dominant_row=dominant_action(game, Player.ROW),
        dominant_col=dominant_action(game, Player.COL),
        pure_nash=pure_nash(game),
        mixed_2x2=mixed_nash_2x2(game) if game.shape == (2, 2) else None,
    )
    if game.is_symmetric():
        k = game.shape[0]
        for i in range(k):
            pure = MixedStrategy.pure(i, k)
            report.ess.append((pure, ess_check(game, pure)))
        mixed = report.mixed_2x2
        if isinstance(mixed, tuple) and np.allclose(
            mixed[0].as_array(), mixed[1].as_array(), rtol=0, atol=EPS
        ):
            report.ess.append((mixed[0], ess_check(game, mixed[0])))
    return report
