"""Three-color games: fractional PSD forcing and three-color skew forcing.

State is ``(dark, light)``; the target color is dark. A forced vertex turns dark, leaving the
light set if it was light.
"""

from __future__ import annotations

from .forcing import ClosureResult, Coloring3, ForceRecord, Rule, drive, register_rule, RULES
from .graph import Graph, component_of, components_after_removal, iter_bits


def _single(mask: int) -> bool:
    return bool(mask) and not mask & (mask - 1)


def _frac_legal(g: Graph, state):
    dark, light = state
    comps = components_after_removal(g, dark)
    out = []
    for u in iter_bits(dark):
        nb = g.adj[u] & ~dark
        if not nb:
            continue
        for comp in comps:
            w = nb & comp
            if _single(w):
                out.append((u, w, comp))
    for u in iter_bits(light):
        # every non-dark neighbour of u lies in u's own component
        w = g.adj[u] & ~dark
        if _single(w):
            comp = next(c for c in comps if c >> u & 1)
            out.append((u, w, comp))
    out.sort(key=lambda f: (f[0], f[1]))
    return out


def _frac_check(g: Graph, state, force):
    dark, light = state
    u, w, _ = force
    if not w or w & dark:
        return None
    comp = component_of(g, w.bit_length() - 1, g.vertices & ~dark)
    if dark >> u & 1 or (light >> u & 1 and comp >> u & 1):
        return (u, w, comp) if g.adj[u] & comp == w else None
    return None


def _skew3_legal(g: Graph, state):
    dark, light = state
    out = []
    for u in iter_bits(dark | light):
        w = g.adj[u] & ~dark
        if _single(w):
            out.append((u, w, None))
    return out


def _skew3_check(g: Graph, state, force):
    dark, light = state
    u, w, _ = force
    if (dark | light) >> u & 1 and w and g.adj[u] & ~dark == w:
        return force
    return None


def _apply3(state, w: int):
    dark, light = state
    return dark | w, light & ~w


def _dark(state) -> int:
    return state[0]


def _color3(state, u: int) -> str:
    dark, light = state
    if dark >> u & 1:
        return "dark"
    return "light" if light >> u & 1 else "white"


FRAC_PSD = Rule(_frac_legal, _frac_check, _apply3, _dark, _color3)
SKEW3 = Rule(_skew3_legal, _skew3_check, _apply3, _dark, _color3)
register_rule("frac_psd", FRAC_PSD)
register_rule("skew3", SKEW3)


def _closure3(g: Graph, start: Coloring3, name: str, policy, seed, record) -> ClosureResult:
    if (start.dark | start.light) & ~g.vertices:
        raise ValueError("coloring is not a subset of the vertex set")
    (dark, light), chron = drive(g, RULES[name], (start.dark, start.light), name, policy, seed, record)
    return ClosureResult(dark == g.vertices, Coloring3(dark, light), chron)


def frac_psd_closure(g: Graph, start: Coloring3, policy: str = "round", seed: int | None = None,
                     record: bool = True) -> ClosureResult:
    return _closure3(g, start, "frac_psd", policy, seed, record)


def skew3_closure(g: Graph, start: Coloring3, policy: str = "round", seed: int | None = None,
                  record: bool = True) -> ClosureResult:
    return _closure3(g, start, "skew3", policy, seed, record)


CLOSURES3 = {"frac_psd": frac_psd_closure, "skew3": skew3_closure}


def first_forces(g: Graph, start: Coloring3, rule: str) -> list[ForceRecord]:
    """Every force legal at step 1, tagged with the forcer's color and, for ``frac_psd``,
    whether it needs the disconnect rule (illegal under the whole-graph condition)."""
    if rule not in CLOSURES3:
        raise ValueError(f"rule must be one of {sorted(CLOSURES3)}")
    state = (start.dark, start.light)
    out = []
    for u, w, comp in RULES[rule].legal(g, state):
        disconnect = None
        if rule == "frac_psd":
            disconnect = g.adj[u] & ~start.dark != w
        out.append(ForceRecord(1, u, w, rule, comp, _color3(state, u), disconnect))
    return out


def psd_first_forces(g: Graph, blue: int) -> list[ForceRecord]:
    """Two-color PSD analogue of :func:`first_forces`."""
    out = []
    for u, w, comp in RULES["psd"].legal(g, blue):
        out.append(ForceRecord(1, u, w, "psd", comp, "blue", g.adj[u] & ~blue != w))
    return out
