"""War-of-attrition models of intellectual-property disputes."""

from .games import (
    EPS,
    ContractError,
    EssVerdict,
    MixedStrategy,
    NormalFormGame,
    Player,
    Strength,
    best_response,
    dominant_action,
    ess_check,
    mixed_nash_2x2,
    pure_nash,
)

__version__ = "0.1.0"
