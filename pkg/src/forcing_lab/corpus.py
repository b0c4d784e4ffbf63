"""Graph corpora: the networkx graph atlas (all graphs up to 7 vertices) and seeded random graphs."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from .graph import Graph, InputError, from_edges


def from_networkx(G) -> Graph:
    index = {v: i for i, v in enumerate(sorted(G.nodes))}
    return from_edges(len(index), [(index[u], index[v]) for u, v in G.edges])


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    return tuple(from_networkx(G) for G in nx.graph_atlas_g())


def atlas(max_n: int, min_n: int = 1, connected: bool = False) -> list[Graph]:
    """Every graph (up to isomorphism) with min_n <= n <= max_n, max_n at most 7."""
    if max_n > 7:
        raise InputError("the graph atlas only covers graphs with at most 7 vertices")
    return [g for g in _atlas() if min_n <= g.n <= max_n and (not connected or g.is_connected())]


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_graphs(count: int, n_min: int, n_max: int, seed: int = 0, connected: bool = False) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng.randint(n_min, n_max), rng.uniform(0.2, 0.8), rng)
        if not connected or g.is_connected():
            out.append(g)
    return out
