import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from forcing_lab.graph import (BlowupMap, CapacityError, Graph, Graph6Error, InputError, blowup, bits,
                               complete, complete_bipartite, component_of, components_after_removal, cycle,
                               disjoint_union, empty_graph, from_edges, generate, graph6_decode, graph6_encode,
                               independence_number, k52_leaf_example, leaves, members, path,
                               random_tree, read_graph6_lines, star, wheel)

from oracles import to_nx


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edges(n, chosen)


def test_from_edges_path():
    g = from_edges(3, [(0, 1), (1, 2)])
    assert g.edges() == [(0, 1), (1, 2)]
    assert g == path(3)


def test_single_vertex_min_degree_zero():
    g = from_edges(1, [])
    assert g.n == 1 and g.min_degree() == 0


def test_duplicate_edges_collapse():
    assert from_edges(4, [(0, 1), (1, 0), (2, 3)]).num_edges() == 2


@pytest.mark.parametrize("edges", [[(0, 3)], [(1, 1)], [(-1, 0)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(InputError):
        from_edges(3, edges)


def test_graph_checks_symmetry():
    with pytest.raises(InputError):
        Graph(2, (0b10, 0))


def test_graph6_known_words():
    # hand-decoded: n=3 header 'B'; '_' = 0b100000 sets only the bit for edge 0-1
    assert graph6_decode("B_").edges() == [(0, 1)]
    assert graph6_decode("Bg").edges() == [(0, 1), (1, 2)]
    assert graph6_encode(path(3)) == "Bg"
    assert graph6_encode(empty_graph(1)) == "@"
    assert graph6_encode(empty_graph(0)) == "?"


def test_graph6_header_prefix():
    assert graph6_decode(">>graph6<<Bg") == path(3)


@pytest.mark.parametrize("word,offset", [("B", 1), ("B__", 2), ("B\x7f", 1), ("Ba", 1), ("~?", 2)])
def test_graph6_errors_carry_offset(word, offset):
    with pytest.raises(Graph6Error) as info:
        graph6_decode(word)
    assert info.value.offset == offset


def test_graph6_large_header_roundtrip():
    g = path(70)
    word = graph6_encode(g)
    assert word[0] == "~"
    assert graph6_decode(word) == g
    assert nx.to_graph6_bytes(to_nx(g), header=False).decode().strip() == word


def test_graph6_matches_networkx_on_random_graphs():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(0, 10)
        g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4])
        word = graph6_encode(g)
        assert graph6_decode(word) == g
        assert nx.to_graph6_bytes(to_nx(g), header=False).decode().strip() == word


@given(graphs())
def test_graph6_roundtrip(g):
    assert graph6_decode(graph6_encode(g)) == g


def test_read_lines_skips_blanks():
    assert list(read_graph6_lines(["Bg\n", "\n", "@"])) == [path(3), empty_graph(1)]


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_blowup_of_edge_is_complete_bipartite(r):
    bg, bmap = blowup(path(2), r)
    assert nx.is_isomorphic(to_nx(bg), nx.complete_bipartite_graph(r, r))
    assert bmap.order == 2 * r


def test_blowup_one_is_identity():
    g = wheel(6)
    assert blowup(g, 1)[0] == g


def test_blowup_k3_two_degrees():
    bg, _ = blowup(complete(3), 2)
    assert bg.n == 6 and all(bg.degree(v) == 4 for v in range(6))


def test_blowup_rejects_zero():
    with pytest.raises(InputError):
        blowup(path(2), 0)


@settings(max_examples=60)
@given(graphs(max_n=6), st.integers(1, 4))
def test_blowup_structure(g, r):
    bg, bmap = blowup(g, r)
    assert bg.n == g.n * r
    assert bg.num_edges() == r * r * g.num_edges()
    for u in range(g.n):
        assert bg.is_independent(bmap.cluster(u))
        for x in members(bmap.cluster(u)):
            assert bmap.cluster_of(x) == u
            assert bg.degree(x) == r * g.degree(u)
    assert nx.is_isomorphic(to_nx(bg), nx.lexicographic_product(to_nx(g), nx.empty_graph(r)))


def test_blowup_map_counts():
    bmap = BlowupMap(3, 2)
    assert bmap.counts(0b011_111) == [3, 2]


def test_components_examples():
    assert components_after_removal(path(3), bits([1])) == [bits([0]), bits([2])]
    g = disjoint_union(path(2), cycle(3))
    assert components_after_removal(g, 0) == [bits([0, 1]), bits([2, 3, 4])]
    assert components_after_removal(cycle(5), bits([0, 2])) == [bits([1]), bits([3, 4])]


@settings(max_examples=80)
@given(graphs(max_n=9), st.integers(0, 511))
def test_components_partition(g, removed):
    removed &= g.vertices
    comps = components_after_removal(g, removed)
    union = 0
    for c in comps:
        assert not union & c
        union |= c
        assert component_of(g, members(c)[0], g.vertices & ~removed) == c
    assert union == g.vertices & ~removed
    G = to_nx(g).subgraph(members(g.vertices & ~removed))
    assert sorted(map(sorted, nx.connected_components(G))) == sorted(members(c) for c in comps)


def test_leaves_examples():
    assert leaves(path(4)) == bits([0, 3])
    assert leaves(cycle(5)) == 0
    assert leaves(star(4)) == bits([1, 2, 3, 4])


def test_family_shapes():
    w = wheel(5)
    assert w.degree(4) == 4 and all(w.degree(v) == 3 for v in range(4))
    g = k52_leaf_example()
    assert g.n == 12 and g.num_edges() == 15
    assert all(g.has_edge(2 + i, 7 + i) for i in range(5))
    assert complete_bipartite(3, 2).edges() == [(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)]


@pytest.mark.parametrize("seed", range(20))
def test_random_tree_is_tree(seed):
    g = random_tree(9, seed)
    assert g.num_edges() == 8 and g.is_connected()


@pytest.mark.parametrize("n", range(2, 9))
def test_path_and_cycle_properties(n):
    assert bin(leaves(path(n))).count("1") == 2
    if n >= 3:
        assert all(cycle(n).degree(v) == 2 for v in range(n))


def test_generate_specs():
    assert generate("path:4") == path(4)
    assert generate("complete_bipartite:3,2") == complete_bipartite(3, 2)
    assert generate("complete_bipartite:3:2") == complete_bipartite(3, 2)
    assert generate("k52_leaf_example") == k52_leaf_example()
    assert generate("random_tree:6,3") == random_tree(6, 3)


@pytest.mark.parametrize("spec", ["cycle:2", "wheel:3", "nope:3", "path", "path:x", "complete_bipartite:0,2"])
def test_generate_rejects(spec):
    with pytest.raises(InputError):
        generate(spec)


def test_independence_examples():
    assert independence_number(complete(6)) == 1
    assert independence_number(cycle(5)) == 2
    assert independence_number(complete_bipartite(5, 2)) == 5


def test_independence_matches_networkx():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 11)
        g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35])
        clique, _ = nx.max_weight_clique(nx.complement(to_nx(g)), weight=None)
        assert independence_number(g) == len(clique)


def test_independence_limit():
    with pytest.raises(CapacityError):
        independence_number(path(21))
