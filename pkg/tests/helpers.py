"""Shared fixtures: random weight systems, corpus access, small graphs."""

import random
from importlib import resources

from gkmfaces.formats import parse_graph_with_connection, parse_matroid, parse_poset
from gkmfaces.gkm import GkmGraph
from gkmfaces.matroid import WeightSystem

# the three standing small examples used throughout the suite
BASIS2 = WeightSystem(2, [(1, 0), (0, 1)])
UNIFORM23 = WeightSystem(2, [(1, 0), (0, 1), (1, 1)])
COLLINEAR = WeightSystem(2, [(1, 0), (2, 0), (0, 1)])


def random_weight_system(rng: random.Random, max_n: int = 7, max_k: int = 4) -> WeightSystem:
    """Random nonzero integer weights, entries in [-3, 3]."""
    k = rng.randint(1, max_k)
    n = rng.randint(1, max_n)
    weights = []
    while len(weights) < n:
        w = tuple(rng.randint(-3, 3) for _ in range(k))
        if any(w):
            weights.append(w)
    return WeightSystem(k, weights)


def weight_corpus(seed: int, count: int, max_n: int = 7, max_k: int = 4):
    rng = random.Random(seed)
    return [random_weight_system(rng, max_n, max_k) for _ in range(count)]


def corpus_path(name: str):
    return resources.files("gkmfaces") / "data" / name


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text()


def corpus_matroid(name: str) -> WeightSystem:
    return parse_matroid(corpus_text(name))


def corpus_poset(name: str):
    return parse_poset(corpus_text(name))


def corpus_graph(name: str):
    """(graph, connection-or-None) for a bundled .gkm file."""
    return parse_graph_with_connection(corpus_text(name))


GKM_CORPUS = ("s2.gkm", "cp2.gkm", "square.gkm", "g6.gkm")


def square_graph(signed: bool = False) -> GkmGraph:
    return GkmGraph(
        2,
        ["v00", "v10", "v01", "v11"],
        [("b", "v00", "v10"), ("t", "v01", "v11"), ("l", "v00", "v01"), ("r", "v10", "v11")],
        {"b": (1, 0), "t": (1, 0), "l": (0, 1), "r": (0, 1)},
        signed=signed,
    )


def cp2_graph(signed: bool = False) -> GkmGraph:
    return GkmGraph(
        2,
        ["A", "B", "C"],
        [("ab", "A", "B"), ("ac", "A", "C"), ("bc", "B", "C")],
        {"ab": (1, 0), "ac": (0, 1), "bc": (-1, 1)},
        signed=signed,
    )
