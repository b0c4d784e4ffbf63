"""Leaf stripping: repeatedly delete a degree-one vertex together with its neighbour."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .graph import Graph, InputError, graph6_encode, iter_bits


@dataclass
class StripTrace:
    removed: list[tuple[int, int]] = field(default_factory=list)  # (leaf, neighbour), original labels
    residual: Graph = None
    residual_map: list[int] = field(default_factory=list)  # residual index -> original index

    @property
    def empty(self) -> bool:
        return self.residual.n == 0

    def to_dict(self) -> dict:
        return {
            "removed": [[u, v] for u, v in self.removed],
            "residual_graph6": graph6_encode(self.residual),
            "residual_map": list(self.residual_map),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _leaves_in(g: Graph, alive: int) -> list[int]:
    return [v for v in iter_bits(alive) if (g.adj[v] & alive).bit_count() == 1]


def leaf_strip(g: Graph, rng: random.Random | None = None) -> StripTrace:
    """Strip leaves until none remain. Picks the lowest-index leaf unless ``rng`` is given,
    in which case each step picks a uniformly random leaf."""
    alive = g.vertices
    removed = []
    while True:
        lv = _leaves_in(g, alive)
        if not lv:
            break
        u = lv[0] if rng is None else rng.choice(lv)
        v = (g.adj[u] & alive).bit_length() - 1
        removed.append((u, v))
        alive &= ~(1 << u | 1 << v)
    residual, back = g.induced(alive)
    return StripTrace(removed, residual, back)


def strip_step(g: Graph, leaf: int) -> tuple[Graph, list[int]]:
    """Remove one leaf and its neighbour; returns the smaller graph and its index map."""
    if g.degree(leaf) != 1:
        raise InputError(f"vertex {leaf} is not a leaf")
    nb = g.adj[leaf].bit_length() - 1
    return g.remove(1 << leaf | 1 << nb)


def skew_zero_test(g: Graph) -> bool:
    """True exactly when the skew forcing number is 0, via stripping to the empty graph."""
    return leaf_strip(g).empty


def is_forest(g: Graph) -> bool:
    seen = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 0
        frontier = 1 << s
        while frontier:
            comp |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
        seen |= comp
        edges = sum((g.adj[v] & comp).bit_count() for v in iter_bits(comp)) // 2
        if edges != comp.bit_count() - 1:
            return False
    return True


def tree_skew_number(t: Graph) -> int:
    if not is_forest(t):
        raise InputError("graph has a cycle; tree_skew_number needs a forest")
    trace = leaf_strip(t)
    if trace.residual.num_edges():
        raise AssertionError("a stripped forest must be edgeless")
    return trace.residual.n


def perfect_matchings(g: Graph, limit: int = 2) -> int:
    """Count perfect matchings, stopping once ``limit`` have been found."""
    if g.n % 2:
        return 0

    def count(alive: int, budget: int) -> int:
        if not alive:
            return 1
        u = (alive & -alive).bit_length() - 1
        total = 0
        for v in iter_bits(g.adj[u] & alive):
            total += count(alive & ~(1 << u | 1 << v), budget - total)
            if total >= budget:
                break
        return total

    return count(g.vertices, limit)


def matching_from_trace(trace: StripTrace) -> list[tuple[int, int]]:
    return sorted(tuple(sorted(p)) for p in trace.removed)


def unique_matching_positive_skew(graphs, zminus=None):
    """First graph in ``graphs`` with exactly one perfect matching and positive skew number."""
    if zminus is None:
        from .solvers import zminus_number

        zminus = lambda g: zminus_number(g).value  # noqa: E731
    for g in graphs:
        if perfect_matchings(g) == 1 and zminus(g) > 0:
            return g
    return None
