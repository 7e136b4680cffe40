"""Brute-force equilibrium search, kept independent of the analytic solvers.

Used by the test-suite to cross-check :mod:`ipattrition.games`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .games import ContractError, NormalFormGame

GAIN_TOL = 1e-6


@dataclass
class BruteForceResult:
    pure: list = field(default_factory=list)
    """Pure profiles ``(i, j)`` whose largest unilateral gain is below ``GAIN_TOL``."""
    grid: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    """Grid points ``(p, q)`` with regret below ``GAIN_TOL``; 2x2 games only."""
    best_interior: tuple | None = None
    """Interior grid point ``(p, q, regret)`` of least regret; 2x2 games only."""

    def pure_labels(self, game: NormalFormGame) -> list:
        return [(game.row_actions[i], game.col_actions[j]) for i, j in self.pure]


def _pure_gain(a: np.ndarray, b: np.ndarray, i: int, j: int) -> float:
    return max(a[:, j].max() - a[i, j], b[i, :].max() - b[i, j])


def grid_regret(game: NormalFormGame, grid: int) -> np.ndarray:
    """Regret at every ``(p, q) = (i/grid, j/grid)`` of a 2x2 game.

    ``p`` is the probability of the first row, ``q`` of the first column.
    A player's regret is the most it could gain by moving the probability
    of any action it actually plays to its best pure action; the two regrets
    are summed.  This bounds the plain expected gain from above and, unlike
    it, does not shrink near the edges of the square, so its interior
    minimum sits at the indifference point.
    """
    a, b = game.row_matrix, game.col_matrix
    p = np.linspace(0.0, 1.0, grid + 1)[:, None]
    q = np.linspace(0.0, 1.0, grid + 1)[None, :]
    row_top = q * a[0, 0] + (1 - q) * a[0, 1]
    row_bottom = q * a[1, 0] + (1 - q) * a[1, 1]
    col_left = p * b[0, 0] + (1 - p) * b[1, 0]
    col_right = p * b[0, 1] + (1 - p) * b[1, 1]
    row_best = np.maximum(row_top, row_bottom)
    col_best = np.maximum(col_left, col_right)
    row_regret = np.maximum(
        np.where(p > 0, row_best - row_top, 0.0), np.where(p < 1, row_best - row_bottom, 0.0)
    )
    col_regret = np.maximum(
        np.where(q > 0, col_best - col_left, 0.0), np.where(q < 1, col_best - col_right, 0.0)
    )
    return row_regret + col_regret


def brute_force_nash(game: NormalFormGame, grid: int) -> BruteForceResult:
    """Exhaustive equilibrium search.

    Every pure profile is tested exactly.  For 2x2 games the mixing square is
    scanned on ``(grid + 1)**2`` points; points whose regret is below
    ``GAIN_TOL`` go to ``grid`` and the least-regret interior point to
    ``best_interior`` (the grid-resolution estimate of a mixed equilibrium).
    """
    if grid < 1:
        raise ContractError("grid must be >= 1")
    a, b = game.row_matrix, game.col_matrix
    m, n = game.shape
    result = BruteForceResult()
    result.pure = [
        (i, j) for i in range(m) for j in range(n) if _pure_gain(a, b, i, j) < GAIN_TOL
    ]
    if (m, n) == (2, 2):
        regret = grid_regret(game, grid)
        ii, jj = np.nonzero(regret < GAIN_TOL)
        result.grid = np.column_stack([ii / grid, jj / grid])
        if grid >= 2:
            core = regret[1:-1, 1:-1]
            i, j = np.unravel_index(np.argmin(core), core.shape)
            result.best_interior = ((i + 1) / grid, (j + 1) / grid, float(core[i, j]))
    return result
