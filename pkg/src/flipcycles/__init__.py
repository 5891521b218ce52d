"""Rainbow cycles in flip graphs.

Five flip-graph families are implemented: triangulations of a convex
polygon, plane spanning trees on a point set in general position,
non-crossing perfect matchings on points in convex position, permutations
under transpositions, and k-element subsets under element exchange.  For
each family the package provides explicit rainbow-cycle constructions, an
independent verifier, and a pruned exhaustive search engine.

Importing the package registers every family's verification rule, so
``core.verify_rainbow`` works on any cycle no matter how it was produced.
"""
from __future__ import annotations

from . import core, search
from . import triangulations, permutations, subsets, matchings, geometry, trees
from .core import LabeledFlipCycle, RainbowReport, cyclic_dist, sigma, verify_rainbow
from .search import (
    FlipGraphOracle,
    SearchBudget,
    SearchResult,
    SearchStatus,
    connected_components,
    exhaustive_rainbow_search,
)

__all__ = [
    "core",
    "search",
    "geometry",
    "triangulations",
    "trees",
    "matchings",
    "permutations",
    "subsets",
    "LabeledFlipCycle",
    "RainbowReport",
    "cyclic_dist",
    "sigma",
    "verify_rainbow",
    "FlipGraphOracle",
    "SearchBudget",
    "SearchResult",
    "SearchStatus",
    "connected_components",
    "exhaustive_rainbow_search",
]

__version__ = "0.1.0"
