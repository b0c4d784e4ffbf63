"""r-fold forcing games on blowups and the cluster-level machinery around them.

Clusters are tagged All / Most / One / None (``A M O N``) by how many of their r vertices are
blue (r, r-1, 1, 0). One and Most clusters keep their blue vertices at the lowest indices of
the cluster; placement inside a cluster never matters because its vertices are twins.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .forcing import ClosureResult, Coloring2, Coloring3, Rule, drive
from .graph import BlowupMap, Graph, InputError, blowup, component_of, components_after_removal, iter_bits

TAGS = "AMON"


@dataclass(frozen=True)
class ClusterProfile:
    tags: str
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise InputError("fold count must be >= 1")
        if set(self.tags) - set(TAGS):
            raise InputError(f"profile tags must be drawn from {TAGS}: {self.tags!r}")
        if "M" in self.tags and self.r < 3:
            raise InputError("Most clusters only exist for r >= 3")

    @property
    def n(self) -> int:
        return len(self.tags)

    @property
    def a(self) -> int:
        return self.tags.count("A")

    @property
    def m(self) -> int:
        return self.tags.count("M")

    @property
    def ell(self) -> int:
        return self.tags.count("O")

    @property
    def size(self) -> int:
        return self.r * self.a + (self.r - 1) * self.m + self.ell

    def counts(self) -> list[int]:
        per = {"A": self.r, "M": self.r - 1, "O": 1, "N": 0}
        return [per[t] for t in self.tags]

    def bmap(self) -> BlowupMap:
        return BlowupMap(self.r, self.n)

    def to_blue(self) -> int:
        blue = 0
        for u, c in enumerate(self.counts()):
            blue |= ((1 << c) - 1) << (u * self.r)
        return blue

    def coloring(self) -> "RfoldColoring":
        return RfoldColoring(self.to_blue(), self.bmap())

    def __str__(self):
        return f"{self.tags}@r={self.r}"

    @classmethod
    def parse(cls, text: str) -> "ClusterProfile":
        m = re.fullmatch(r"\s*([AMON]*)@r=(\d+)\s*", text)
        if not m:
            raise InputError(f"bad cluster profile {text!r}")
        return cls(m.group(1), int(m.group(2)))


@dataclass(frozen=True)
class RfoldColoring:
    blue: int
    map: BlowupMap

    def __post_init__(self):
        if self.blue >> self.map.order:
            raise InputError("blue set exceeds the blowup vertex range")


@dataclass(frozen=True)
class NonConforming:
    """Clusters whose blue count is not one of r, r-1, 1, 0 (as allowed at this r)."""

    counts: dict[int, int]


# ---------------------------------------------------------------- games

@lru_cache(maxsize=None)
def rfold_rule(kind: str, r: int) -> Rule:
    """The r-fold PSD rule (``psd``) or the r-fold standard rule (``std``) as a :class:`Rule`."""

    def color(blue, u):
        return "blue" if blue >> u & 1 else "white"

    def apply(blue, w):
        return blue | w

    if kind == "psd":
        def legal(g: Graph, blue: int):
            comps = components_after_removal(g, blue)
            out = []
            for u in iter_bits(blue):
                nb = g.adj[u] & ~blue
                if not nb:
                    continue
                for comp in comps:
                    w = nb & comp
                    if w and w.bit_count() <= r:
                        out.append((u, w, comp))
            out.sort(key=lambda f: (f[0], f[1]))
            return out

        def check(g: Graph, blue: int, force):
            u, w, _ = force
            if not blue >> u & 1 or not w or w & blue:
                return None
            comp = component_of(g, w.bit_length() - 1, g.vertices & ~blue)
            if g.adj[u] & comp == w and w.bit_count() <= r:
                return u, w, comp
            return None
    elif kind == "std":
        def legal(g: Graph, blue: int):
            out = []
            for u in iter_bits(blue):
                w = g.adj[u] & ~blue
                if w and w.bit_count() <= r:
                    out.append((u, w, None))
            return out

        def check(g: Graph, blue: int, force):
            u, w, _ = force
            if blue >> u & 1 and w and g.adj[u] & ~blue == w and w.bit_count() <= r:
                return force
            return None
    else:
        raise ValueError(f"unknown r-fold game {kind!r}")
    return Rule(legal, check, apply, lambda s: s, color)


def _rfold_closure(kind, bg, bmap, start, policy, seed, record) -> ClosureResult:
    if bg.n != bmap.order:
        raise InputError("graph order does not match the blowup map")
    blue0 = start.blue if isinstance(start, RfoldColoring) else start
    tag = "rfold_psd" if kind == "psd" else "rfold_std"
    blue, chron = drive(bg, rfold_rule(kind, bmap.r), blue0, tag, policy, seed, record)
    return ClosureResult(blue == bg.vertices, Coloring2(blue), chron)


def rfold_psd_closure(bg: Graph, bmap: BlowupMap, start: RfoldColoring | int, policy: str = "round",
                      seed: int | None = None, record: bool = True) -> ClosureResult:
    return _rfold_closure("psd", bg, bmap, start, policy, seed, record)


def rfold_std_closure(bg: Graph, bmap: BlowupMap, start: RfoldColoring | int, policy: str = "round",
                      seed: int | None = None, record: bool = True) -> ClosureResult:
    return _rfold_closure("std", bg, bmap, start, policy, seed, record)


def clusters_touched(bmap: BlowupMap, mask: int) -> list[int]:
    return sorted({bmap.cluster_of(x) for x in iter_bits(mask)})


# ---------------------------------------------------------------- profiles

def classify(bmap: BlowupMap, blue: int) -> ClusterProfile | NonConforming:
    r = bmap.r
    tags = []
    bad = {}
    for u, c in enumerate(bmap.counts(blue)):
        if c == r:
            tags.append("A")
        elif c == 0:
            tags.append("N")
        elif c == 1:
            tags.append("O")
        elif c == r - 1:
            tags.append("M")
        else:
            bad[u] = c
    if bad:
        return NonConforming(bad)
    return ClusterProfile("".join(tags), r)


def _fill(bmap: BlowupMap, u: int, count: int) -> int:
    return ((1 << count) - 1) << (u * bmap.r)


def consolidate(bmap: BlowupMap, blue: int, clusters: list[int], mode: str = "full") -> int:
    """Redistribute the blue vertices held by ``clusters`` (in the given order).

    ``full``: every listed cluster must be partially filled; with p*r + q blue among them the
    first p become All, the next holds q, the rest are emptied.
    ``partial`` (r >= 3): clusters hold at most r-1 blue each and at least r*(m-1) in total;
    the first m-2 become All, the next Most, and the last keeps the remainder.
    """
    r = bmap.r
    counts = bmap.counts(blue)
    if len(set(clusters)) != len(clusters):
        raise InputError("clusters listed twice")
    total = sum(counts[u] for u in clusters)
    cleared = blue
    for u in clusters:
        cleared &= ~bmap.cluster(u)

    if mode == "full":
        for u in clusters:
            if not 1 <= counts[u] <= r - 1:
                raise InputError(f"cluster {u} is not partially filled ({counts[u]} of {r} blue)")
        p, q = divmod(total, r)
        out = cleared
        for k, u in enumerate(clusters):
            if k < p:
                out |= bmap.cluster(u)
            elif k == p:
                out |= _fill(bmap, u, q)
        return out

    if mode == "partial":
        m = len(clusters)
        if r < 3:
            raise InputError("partial consolidation needs r >= 3")
        if m < 2:
            raise InputError("partial consolidation needs at least two clusters")
        for u in clusters:
            if counts[u] > r - 1:
                raise InputError(f"cluster {u} has no white vertex")
        if total < r * (m - 1):
            raise InputError(f"need at least r*(m-1) = {r * (m - 1)} blue vertices, found {total}")
        out = cleared
        for u in clusters[:-2]:
            out |= bmap.cluster(u)
        out |= _fill(bmap, clusters[-2], r - 1)
        out |= _fill(bmap, clusters[-1], total - r * (m - 2) - (r - 1))
        return out

    raise ValueError(f"unknown consolidation mode {mode!r}")


def replicate(profile: ClusterProfile, s: int) -> RfoldColoring:
    if s < 2:
        raise InputError("replication target must have s >= 2")
    if profile.m:
        raise InputError("only All/One/None profiles can be replicated")
    return ClusterProfile(profile.tags, s).coloring()


def convert_profile_to_skew3(profile: ClusterProfile) -> Coloring3:
    dark = light = 0
    for u, t in enumerate(profile.tags):
        if t in "AM":
            dark |= 1 << u
        elif t == "O":
            light |= 1 << u
    return Coloring3(dark, light)


def convert_skew3_to_profile(start: Coloring3, r: int, n: int) -> ClusterProfile:
    tags = []
    for u in range(n):
        if start.dark >> u & 1:
            tags.append("A")
        elif start.light >> u & 1:
            tags.append("O")
        else:
            tags.append("N")
    return ClusterProfile("".join(tags), r)


def profile_forces(g: Graph, profile: ClusterProfile, game: str) -> bool:
    """Does the canonical coloring of ``profile`` force the blowup of ``g`` (``psd``/``std``)?"""
    bg, bmap = blowup(g, profile.r)
    final, _ = drive(bg, rfold_rule(game, profile.r), profile.to_blue(), game, record=False)
    return final == bg.vertices


# ---------------------------------------------------------------- process search

def single_cluster_process(bg: Graph, bmap: BlowupMap, blue: int, game: str,
                           allow_pairs: bool = False) -> bool:
    """Is there a forcing process in which every step forces into exactly one cluster?

    With ``allow_pairs`` (standard game) a step may also force a One and a Most cluster
    together, or two One clusters when r = 2.
    """
    rule = rfold_rule(game, bmap.r)
    r = bmap.r
    dead: set[int] = set()

    def ok_step(state: int, w: int) -> bool:
        touched = clusters_touched(bmap, w)
        if len(touched) == 1:
            return True
        if not allow_pairs or len(touched) != 2:
            return False
        c = sorted(bmap.counts(state)[u] for u in touched)
        return c == [1, r - 1] or (r == 2 and c == [1, 1])

    def search(state: int) -> bool:
        if state == bg.vertices:
            return True
        if state in dead:
            return False
        seen = set()
        for _, w, _ in rule.legal(bg, state):
            if w in seen or not ok_step(state, w):
                continue
            seen.add(w)
            if search(state | w):
                return True
        dead.add(state)
        return False

    return search(blue)
