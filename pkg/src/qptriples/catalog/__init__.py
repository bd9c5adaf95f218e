"""Every universe and model studied: odd-coefficient triples, matchings, permutations, E8/E7 data."""

from .gamedag import GameDag, game_dag
from .models import Matching, all_matchings, matching_stats, matching_to_kroot, perm_to_kroot
from .table1 import table1
from .universes import build_U, triple_T, triple_Tprime

__all__ = [
    "GameDag",
    "Matching",
    "all_matchings",
    "build_U",
    "game_dag",
    "matching_stats",
    "matching_to_kroot",
    "perm_to_kroot",
    "table1",
    "triple_T",
    "triple_Tprime",
]
