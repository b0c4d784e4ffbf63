import random

import pytest

from forcing_lab.forcing import POLICIES, Coloring3, replay
from forcing_lab.graph import bits, complete, cycle, from_edges, k52_leaf_example, members, path, random_tree, star
from forcing_lab.threecolor import CLOSURES3, first_forces, frac_psd_closure, psd_first_forces, skew3_closure

import oracles


def random_instance(rng, n_max=9):
    n = rng.randint(1, n_max)
    p = rng.uniform(0.15, 0.7)
    g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
    dark = light = 0
    for v in range(n):
        x = rng.random()
        if x < 0.2:
            dark |= 1 << v
        elif x < 0.5:
            light |= 1 << v
    return g, Coloring3(dark, light)


def test_coloring3_disjoint():
    with pytest.raises(ValueError):
        Coloring3(0b1, 0b1)


@pytest.mark.parametrize("seed", range(8))
def test_frac_tree_single_light_leaf(seed):
    t = random_tree(9, seed)
    leaf = next(v for v in range(t.n) if t.degree(v) == 1)
    assert frac_psd_closure(t, Coloring3.of([], [leaf])).forced


def test_frac_k4_two_dark_one_light():
    assert frac_psd_closure(complete(4), Coloring3.of([0, 1], [2])).forced


def test_frac_k52_light_leaves():
    res = frac_psd_closure(k52_leaf_example(), Coloring3.of([], range(7, 12)))
    assert res.forced


def test_skew3_examples():
    assert skew3_closure(path(2), Coloring3.of([], [0])).forced
    res = skew3_closure(path(4), Coloring3.of([], [0, 2]))
    assert res.forced
    assert not skew3_closure(path(4), Coloring3.of([], [1])).forced


def test_skew3_p4_forces_in_expected_pairs():
    res = skew3_closure(path(4), Coloring3.of([], [0, 2]), policy="first")
    steps = {(f.forcer, members(f.forced)[0]) for f in res.chronicle}
    assert steps == {(0, 1), (2, 3), (3, 2), (1, 0)}


def test_first_forces_c5_light_forcer():
    fs = first_forces(cycle(5), Coloring3.of([0], [1]), "frac_psd")
    assert any(f.forcer == 1 and f.forced == bits([2]) and f.forcer_color == "light" for f in fs)


def test_first_forces_all_dark_is_empty():
    g = cycle(5)
    assert first_forces(g, Coloring3(g.vertices, 0), "frac_psd") == []
    assert first_forces(g, Coloring3(g.vertices, 0), "skew3") == []


def test_first_forces_star_center_disconnect():
    fs = first_forces(star(3), Coloring3.of([0], []), "frac_psd")
    assert len(fs) == 3 and all(f.disconnect and f.forcer_color == "dark" for f in fs)


def test_psd_first_forces_flags():
    fs = psd_first_forces(path(3), bits([0]))
    assert len(fs) == 1 and fs[0].disconnect is False
    fs = psd_first_forces(star(2), bits([0]))
    assert len(fs) == 2 and all(f.disconnect for f in fs)


def test_first_forces_rejects_rule():
    with pytest.raises(ValueError):
        first_forces(path(2), Coloring3(), "psd")


ORACLE = {"frac_psd": oracles.frac_psd_closes, "skew3": oracles.skew3_closes}


@pytest.mark.parametrize("rule", sorted(CLOSURES3))
def test_closures_agree_with_oracle(rule):
    rng = random.Random(21)
    for _ in range(300):
        g, c = random_instance(rng)
        got = CLOSURES3[rule](g, c, record=False).forced
        assert got == ORACLE[rule](oracles.to_nx(g), members(c.dark), members(c.light))


@pytest.mark.parametrize("rule", sorted(CLOSURES3))
def test_order_invariance(rule):
    rng = random.Random(31 + len(rule))
    for k in range(200):
        g, c = random_instance(rng)
        finals = {CLOSURES3[rule](g, c, policy, seed=k).final for policy in POLICIES}
        assert len(finals) == 1


@pytest.mark.parametrize("rule", sorted(CLOSURES3))
def test_monotone_in_both_colors(rule):
    rng = random.Random(41)
    for _ in range(200):
        g, c = random_instance(rng)
        extra_light = bits(v for v in range(g.n) if rng.random() < 0.3) & ~c.dark
        promote = c.light & bits(v for v in range(g.n) if rng.random() < 0.5)
        bigger = Coloring3(c.dark | promote, (c.light | extra_light) & ~promote)
        small = CLOSURES3[rule](g, c, record=False).final.dark
        big = CLOSURES3[rule](g, bigger, record=False).final.dark
        assert small & ~big == 0


@pytest.mark.parametrize("rule", sorted(CLOSURES3))
def test_chronicle_replays(rule):
    rng = random.Random(51)
    for k in range(150):
        g, c = random_instance(rng)
        res = CLOSURES3[rule](g, c, "random", seed=k)
        dark, light = replay(g, rule, (c.dark, c.light), res.chronicle)
        assert (dark, light) == (res.final.dark, res.final.light)
        for rec in res.chronicle:
            assert rec.forcer_color in ("dark", "light")


def test_skew3_forcing_implies_frac_forcing():
    rng = random.Random(61)
    for _ in range(400):
        g, c = random_instance(rng)
        if skew3_closure(g, c, record=False).forced:
            assert frac_psd_closure(g, c, record=False).forced


def test_skew3_forcing_implies_two_color_skew():
    from forcing_lab.forcing import Coloring2, skew_closure

    rng = random.Random(62)
    for _ in range(400):
        g, c = random_instance(rng)
        if skew3_closure(g, c, record=False).forced:
            assert skew_closure(g, Coloring2(c.dark | c.light), record=False).forced


def test_forced_games_end_all_dark():
    rng = random.Random(71)
    for _ in range(300):
        g, c = random_instance(rng)
        for rule in CLOSURES3:
            res = CLOSURES3[rule](g, c, record=False)
            if res.forced:
                assert res.final.dark == g.vertices and res.final.light == 0


def test_light_forcers_end_dark():
    rng = random.Random(81)
    for _ in range(300):
        g, c = random_instance(rng)
        res = frac_psd_closure(g, c)
        if res.forced:
            for rec in res.chronicle:
                if rec.forcer_color == "light":
                    assert res.final.dark >> rec.forcer & 1


def test_frac_dark_forcer_ignores_other_components():
    # vertex 0 is dark with a white neighbour 1 and a light neighbour 2 in a different component
    g = from_edges(3, [(0, 1), (0, 2)])
    fs = first_forces(g, Coloring3.of([0], [2]), "frac_psd")
    assert {(f.forcer, members(f.forced)[0]) for f in fs} == {(0, 1), (0, 2)}
