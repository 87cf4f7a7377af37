"""Sorting with pop stacks and bypass."""

from .machines import (BUBBLE, POPSTACK, PSB, PSBP, QUEUE, STACK, MachineConfig, SortOutcome,
                       Step, Trace, compose, dfs_sortable, dfs_sortable_word, greedy_parallel,
                       image, psb, psb_map, psbp, psbw, run)
from .perms import (BarredPattern, GuardError, ParseError, PatternBasis, avoids, contains,
                    format_permutation, parse_permutation)
from .preimage import preimages
from .words import perm_to_path, perm_to_word, word_to_perm

__version__ = "0.1.0"

__all__ = [
    "BUBBLE", "POPSTACK", "PSB", "PSBP", "QUEUE", "STACK", "MachineConfig", "SortOutcome",
    "Step", "Trace", "compose", "dfs_sortable", "dfs_sortable_word", "greedy_parallel",
    "image", "psb", "psb_map", "psbp", "psbw", "run", "BarredPattern", "GuardError",
    "ParseError", "PatternBasis", "avoids", "contains", "format_permutation",
    "parse_permutation", "preimages", "perm_to_path", "perm_to_word", "word_to_perm",
]
