"""Per-period profit formulas and the game matrices built from them.

Rows are always the challenger (troop, pirate, healers); columns the
incumbent or counterpart (other troop, industry, bioprospector).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .games import ContractError, NormalFormGame

BLOCKADE = "Blockade"
ACCOMMODATE = "Accommodate"
FIGHT = "Fight"
LEAVE = "Leave"
PATENT = "Patent"
NOT_PATENT = "NotPatent"


class UnboundedEntry(ContractError):
    """Zero-profit condition has no finite producer count (c + D = 0)."""


@dataclass(frozen=True)
class MarketParams:
    """Economic primitives shared by the piracy and bioprospecting models.

    ``p`` price, ``Q`` total demand per period, ``c`` production cost per
    firm and period, ``n`` number of producers, ``D_P``/``D_I`` per-period
    blockade/deterrence costs of pirates and industry, ``INV`` one-time
    patent investment, ``f`` one-time entrance cost.
    """

    p: float
    Q: float
    c: float = 0.0
    n: float = 1.0
    D_P: float = 0.0
    D_I: float = 0.0
    INV: float = 0.0
    f: float = 0.0

    def __post_init__(self):
        for name in ("p", "Q", "c", "n", "D_P", "D_I", "INV", "f"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise ContractError(f"{name} must be finite, got {value!r}")
        if self.p <= 0:
            raise ContractError(f"price p must be > 0, got {self.p!r}")
        if self.Q <= 0:
            raise ContractError(f"demand Q must be > 0, got {self.Q!r}")
        if self.n < 1:
            raise ContractError(f"producer count n must be >= 1, got {self.n!r}")
        for name in ("c", "D_P", "D_I", "INV", "f"):
            if getattr(self, name) < 0:
                raise ContractError(f"{name} must be >= 0, got {getattr(self, name)!r}")


def competitive_profit(params: MarketParams, deterrence: float) -> float:
    """Per-firm profit with ``n`` producers sharing demand: p*Q/n - c - D."""
    return params.p * (params.Q / params.n) - params.c - deterrence


def monopoly_profit(params: MarketParams) -> float:
    return params.p * params.Q - params.c


def free_entry_n(params: MarketParams, deterrence: float) -> float:
    """Producer count at which :func:`competitive_profit` is zero.

    Solves p*Q/n - c - D = 0, giving n* = p*Q / (c + D).  The count is a
    continuous quantity; see :func:`free_entry_floor` for a whole number.
    """
    if deterrence < 0:
        raise ContractError(f"deterrence must be >= 0, got {deterrence!r}")
    burden = params.c + deterrence
    if burden <= 0:
        raise UnboundedEntry("unbounded entry: c + D = 0, profit never reaches zero")
    return params.p * params.Q / burden


def free_entry_floor(params: MarketParams, deterrence: float) -> int:
    return math.floor(free_entry_n(params, deterrence))


def healer_profit(params: MarketParams) -> float:
    return params.p * (params.Q / params.n) - params.c


def bioprospector_profit(params: MarketParams) -> float:
    """Monopoly profit from a patent net of the investment ``INV``."""
    return params.p * params.Q - params.c - params.INV


def _two_by_two(rows, cols, bb, ba, ab, aa) -> NormalFormGame:
    return NormalFormGame(rows, cols, [[bb, ba], [ab, aa]])


def build_carcass_game(Q: float) -> NormalFormGame:
    """Two troops contest a carcass worth ``Q``; sharing splits it."""
    if not (math.isfinite(Q) and Q > 0):
        raise ContractError(f"prize Q must be > 0, got {Q!r}")
    return _two_by_two(
        (FIGHT, LEAVE), (FIGHT, LEAVE), (Q / 2, Q / 2), (Q, 0.0), (0.0, Q), (0.0, 0.0)
    )


def build_deterrence_game(Q: float, d1: float, d2: float) -> NormalFormGame:
    """Pirate (rows) against industry (columns), each paying its blockade cost
    only when both blockade."""
    if not (math.isfinite(Q) and Q > 0):
        raise ContractError(f"prize Q must be > 0, got {Q!r}")
    if d1 < 0 or d2 < 0:
        raise ContractError("deterrence costs must be >= 0")
    return _two_by_two(
        (BLOCKADE, ACCOMMODATE),
        (BLOCKADE, ACCOMMODATE),
        (Q / 2 - d1, Q / 2 - d2),
        (Q, 0.0),
        (0.0, Q),
        (0.0, 0.0),
    )


def build_entry_game(params: MarketParams) -> NormalFormGame:
    pirate = competitive_profit(params, params.D_P)
    industry = competitive_profit(params, params.D_I)
    mono = monopoly_profit(params)
    return _two_by_two(
        (BLOCKADE, ACCOMMODATE),
        (BLOCKADE, ACCOMMODATE),
        (pirate, industry),
        (mono, 0.0),
        (0.0, mono),
        (0.0, 0.0),
    )


def build_dynamic_game(pi_P: float, pi_I: float, d_P: float, d_I: float) -> NormalFormGame:
    """Game over whole profit streams; ``pi_P``/``pi_I`` are stream values."""
    return _two_by_two(
        (BLOCKADE, ACCOMMODATE),
        (BLOCKADE, ACCOMMODATE),
        (pi_P - d_P, pi_I - d_I),
        (pi_P, 0.0),
        (0.0, pi_I),
        (0.0, 0.0),
    )


def build_bioprospecting_game(pi_H: float, pi_M: float, f: float) -> NormalFormGame:
    """Healers (rows) against a bioprospecting firm (columns).

    The matrix is deliberately left asymmetric: healers keep ``pi_H`` under
    (Accommodate, NotPatent) but get nothing under (Accommodate, Patent).
    """
    return _two_by_two(
        (BLOCKADE, ACCOMMODATE),
        (PATENT, NOT_PATENT),
        (pi_H, pi_M - f),
        (pi_H, 0.0),
        (0.0, pi_M),
        (pi_H, 0.0),
    )
