"""Simple graphs over 0..n-1 with bitset adjacency, graph6 I/O, blowups and families."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class CapacityError(RuntimeError):
    """Instance exceeds a configured exact-search limit."""


class Graph6Error(InputError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} (byte {offset})")
        self.offset = offset


def bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[i]`` is the neighbourhood of ``i`` as a bitmask."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InputError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, a in enumerate(self.adj):
            if a & ~full:
                raise InputError(f"neighbour of {i} out of range")
            if a >> i & 1:
                raise InputError(f"self-loop at {i}")
            for j in iter_bits(a):
                if not self.adj[j] >> i & 1:
                    raise InputError(f"asymmetric adjacency {i}-{j}")

    @property
    def vertices(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((a.bit_count() for a in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in iter_bits(self.adj[i] >> (i + 1) << (i + 1))]

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def isolated(self) -> int:
        return bits(i for i in range(self.n) if not self.adj[i])

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def is_connected(self) -> bool:
        return len(components_after_removal(self, 0)) <= 1

    def induced(self, mask: int) -> tuple["Graph", list[int]]:
        """Subgraph induced by ``mask``, relabelled in increasing order; also returns new->old map."""
        keep = members(mask)
        index = {v: k for k, v in enumerate(keep)}
        adj = tuple(bits(index[w] for w in iter_bits(self.adj[v] & mask)) for v in keep)
        return Graph(len(keep), adj), keep

    def remove(self, mask: int) -> tuple["Graph", list[int]]:
        return self.induced(self.vertices & ~mask)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise InputError("vertex count must be non-negative")
    adj = [0] * n
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise InputError(f"self-loop at {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, (0,) * n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(i + offset, j + offset) for i, j in g.edges()]
        offset += g.n
    return from_edges(offset, edges)


# ---------------------------------------------------------------- graph6

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def graph6_encode(g: Graph) -> str:
    out = _encode_n(g.n)
    chunk = nbits = 0
    for j in range(1, g.n):
        a = g.adj[j]
        for i in range(j):
            chunk = chunk << 1 | (a >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chunk)
                chunk = nbits = 0
    if nbits:
        out.append(chunk << (6 - nbits))
    return "".join(chr(c + 63) for c in out)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
        base = len(_HEADER)
    if not s:
        raise Graph6Error("empty graph6 word", base)
    data = []
    for k, ch in enumerate(s):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise Graph6Error(f"invalid character {ch!r}", base + k)
        data.append(c)
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise Graph6Error("truncated length header", base + len(data))
        n = data[1] << 12 | data[2] << 6 | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated length header", base + len(data))
        n = 0
        for c in data[2:8]:
            n = n << 6 | c
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise Graph6Error(f"expected {need} edge bytes, found {len(data) - pos}", base + min(len(data), pos + need))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if data[pos + byte] >> (5 - off) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        if data[-1] & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error("nonzero padding bits", base + len(data) - 1)
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield graph6_decode(line)


# ---------------------------------------------------------------- structure

def components_after_removal(g: Graph, removed: int) -> list[int]:
    """Vertex sets of the connected components of ``g - removed``, ordered by least vertex."""
    rest = g.vertices & ~removed
    adj = g.adj
    comps = []
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def component_of(g: Graph, v: int, allowed: int) -> int:
    """Component of ``v`` inside the subgraph induced by ``allowed`` (which must contain v)."""
    comp = frontier = 1 << v
    adj = g.adj
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


def leaves(g: Graph) -> int:
    return bits(i for i in range(g.n) if g.adj[i].bit_count() == 1)


def independence_number(g: Graph, limit: int = 20) -> int:
    if g.n > limit:
        raise CapacityError(f"independence number limited to n <= {limit}, got {g.n}")
    adj = g.adj

    def best(cand: int) -> int:
        if not cand:
            return 0
        # vertices of degree <= 1 in the candidate subgraph are always safe to take
        for v in iter_bits(cand):
            if (adj[v] & cand).bit_count() <= 1:
                return 1 + best(cand & ~(1 << v) & ~adj[v])
        v = max(iter_bits(cand), key=lambda u: (adj[u] & cand).bit_count())
        return max(1 + best(cand & ~(1 << v) & ~adj[v]), best(cand & ~(1 << v)))

    return best(g.vertices)


# ---------------------------------------------------------------- blowups

@dataclass(frozen=True)
class BlowupMap:
    """Cluster R_u of the r-blowup is the index range u*r .. u*r + r - 1."""

    r: int
    base_n: int

    @property
    def order(self) -> int:
        return self.r * self.base_n

    def cluster(self, u: int) -> int:
        return ((1 << self.r) - 1) << (u * self.r)

    def cluster_of(self, x: int) -> int:
        return x // self.r

    def counts(self, blue: int) -> list[int]:
        full = (1 << self.r) - 1
        return [(blue >> (u * self.r) & full).bit_count() for u in range(self.base_n)]


def blowup(g: Graph, r: int) -> tuple[Graph, BlowupMap]:
    if r < 1:
        raise InputError("blowup fold count must be >= 1")
    bmap = BlowupMap(r, g.n)
    cl = [bmap.cluster(u) for u in range(g.n)]
    adj = []
    for u in range(g.n):
        nb = 0
        for w in iter_bits(g.adj[u]):
            nb |= cl[w]
        adj.extend([nb] * r)
    return Graph(g.n * r, tuple(adj)), bmap


# ---------------------------------------------------------------- families

FAMILY_MINIMUM = {
    "path": 1,
    "cycle": 3,
    "complete": 1,
    "wheel": 4,
    "star": 1,
    "random_tree": 1,
}


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q}: the p-set is 0..p-1, the q-set p..p+q-1."""
    return from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def wheel(n: int) -> Graph:
    """W_n: rim C_{n-1} on 0..n-2 in cycle order, hub n-1."""
    rim = n - 1
    return from_edges(n, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])


def star(k: int) -> Graph:
    """K_{1,k}: centre 0, outer vertices 1..k."""
    return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree via a Pruefer sequence."""
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return from_edges(n, edges)


def k52_leaf_example() -> Graph:
    """K_{5,2} with a pendant leaf on each vertex of the 5-side.

    Q = {0, 1}, P = {2..6}, leaf 7+i hangs off 2+i.
    """
    edges = [(q, p) for q in (0, 1) for p in range(2, 7)]
    edges += [(2 + i, 7 + i) for i in range(5)]
    return from_edges(12, edges)


def generate(spec: str) -> Graph:
    """Build a named family member from ``name:arg[,arg]`` (``:`` also accepted between args)."""
    name, _, rest = spec.strip().partition(":")
    name = name.strip().lower().replace("-", "_")
    args = [a for a in re.split(r"[,:]", rest) if a.strip()] if rest else []
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise InputError(f"non-integer family argument in {spec!r}") from None

    def want(k: int):
        if len(nums) != k:
            raise InputError(f"family {name!r} takes {k} argument(s), got {len(nums)}")

    if name in ("k52_leaf_example", "k52"):
        want(0)
        return k52_leaf_example()
    if name in ("complete_bipartite", "bipartite"):
        want(2)
        p, q = nums
        if p < 1 or q < 1:
            raise InputError("complete_bipartite needs p, q >= 1")
        return complete_bipartite(p, q)
    if name == "random_tree":
        want(2)
        n, seed = nums
        if n < 1:
            raise InputError("random_tree needs n >= 1")
        return random_tree(n, seed)
    builders = {"path": path, "cycle": cycle, "complete": complete, "wheel": wheel, "star": star}
    if name not in builders:
        raise InputError(f"unknown family {name!r}")
    want(1)
    (n,) = nums
    if n < FAMILY_MINIMUM[name]:
        raise InputError(f"{name} needs parameter >= {FAMILY_MINIMUM[name]}, got {n}")
    return builders[name](n)
