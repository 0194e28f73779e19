"""Two-player graph games with reachability or parity objectives under progress assumptions."""
from .augmented import (ALGORITHMS, attr_pers, qsolve_pers, qsolve_region, solve_augmented,
                        solve_colive, zielonka_pers)
from .classic import solve_parity_parys, solve_parity_zielonka, solve_reachability
from .io import parse_game, serialize_game, serialize_result
from .model import (AugmentedGame, CoLiveEdges, GameError, GameGraph, InfSetProfile,
                    LabeledGame, LabeledGameGraph, LassoWitness, LiveCnfGroups, LiveEdges,
                    LiveGroups, NoAssumption, Parity, PersistentLiveGroup,
                    PersistentLiveGroups, Rabin, Reach, SizeBoundError, SolveResult)
from .oracle import oracle_solve, sat_brute, verify_strategy
from .ops import attractor
from .semantics import classify_infset

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "AugmentedGame", "CoLiveEdges", "GameError", "GameGraph", "InfSetProfile",
    "LabeledGame", "LabeledGameGraph", "LassoWitness", "LiveCnfGroups", "LiveEdges",
    "LiveGroups", "NoAssumption", "Parity", "PersistentLiveGroup", "PersistentLiveGroups",
    "Rabin", "Reach", "SizeBoundError", "SolveResult", "attr_pers", "attractor",
    "classify_infset", "oracle_solve", "parse_game", "qsolve_pers", "qsolve_region",
    "sat_brute", "serialize_game", "serialize_result", "solve_augmented", "solve_colive",
    "solve_parity_parys", "solve_parity_zielonka", "solve_reachability", "verify_strategy",
    "zielonka_pers",
]
