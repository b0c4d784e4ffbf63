"""Forcing closures: a shared driver plus the standard, PSD and skew two-color rules.

Every rule is described by three pure functions over a small state value:

* ``legal(g, state)`` lists the forces available now as ``(forcer, forced_mask, component)``
  sorted by ``(forcer, forced)``;
* ``check(g, state, force)`` returns the force (with its current component) if it is still
  available, else None;
* ``apply(state, forced_mask)`` returns the successor state.

Two-color games use the blue bitmask as state; three-color games use ``(dark, light)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .graph import Graph, bits, component_of, components_after_removal, iter_bits, members

POLICIES = ("round", "first", "random")


@dataclass(frozen=True)
class Coloring2:
    blue: int = 0

    @classmethod
    def of(cls, blue=()) -> "Coloring2":
        return cls(bits(blue))

    def to_dict(self) -> dict:
        return {"blue": members(self.blue)}


@dataclass(frozen=True)
class Coloring3:
    dark: int = 0
    light: int = 0

    def __post_init__(self):
        if self.dark & self.light:
            raise ValueError("dark and light sets must be disjoint")

    @classmethod
    def of(cls, dark=(), light=()) -> "Coloring3":
        return cls(bits(dark), bits(light))

    def to_dict(self) -> dict:
        return {"dark": members(self.dark), "light": members(self.light)}


@dataclass(frozen=True)
class ForceRecord:
    step: int
    forcer: int
    forced: int
    rule: str
    component: int | None = None
    forcer_color: str | None = None
    disconnect: bool | None = None

    def to_dict(self) -> dict:
        d = {
            "step": self.step,
            "forcer": self.forcer,
            "forced": members(self.forced),
            "rule": self.rule,
            "component": None if self.component is None else members(self.component),
        }
        if self.forcer_color is not None:
            d["forcer_color"] = self.forcer_color
        if self.disconnect is not None:
            d["disconnect"] = self.disconnect
        return d


@dataclass
class ClosureResult:
    forced: bool
    final: Coloring2 | Coloring3
    chronicle: list[ForceRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "forced": self.forced,
            "final": self.final.to_dict(),
            "chronicle": [f.to_dict() for f in self.chronicle],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class Rule(NamedTuple):
    legal: Callable
    check: Callable
    apply: Callable
    target: Callable  # state -> mask of target-colored vertices
    color: Callable  # (state, forcer) -> "blue" | "dark" | "light" | "white"


# ---------------------------------------------------------------- two-color rules

def _std_legal(g: Graph, blue: int):
    out = []
    for u in iter_bits(blue):
        w = g.adj[u] & ~blue
        if w and not w & (w - 1):
            out.append((u, w, None))
    return out


def _std_check(g: Graph, blue: int, force):
    u, w, _ = force
    return force if blue >> u & 1 and g.adj[u] & ~blue == w else None


def _skew_legal(g: Graph, blue: int):
    out = []
    for u in range(g.n):
        w = g.adj[u] & ~blue
        if w and not w & (w - 1):
            out.append((u, w, None))
    return out


def _skew_check(g: Graph, blue: int, force):
    u, w, _ = force
    return force if g.adj[u] & ~blue == w else None


def _psd_legal(g: Graph, blue: int):
    comps = components_after_removal(g, blue)
    out = []
    for u in iter_bits(blue):
        nb = g.adj[u] & ~blue
        if not nb:
            continue
        for comp in comps:
            w = nb & comp
            if w and not w & (w - 1):
                out.append((u, w, comp))
    out.sort(key=lambda f: (f[0], f[1]))
    return out


def _psd_check(g: Graph, blue: int, force):
    u, w, _ = force
    if not blue >> u & 1 or not w or w & blue:
        return None
    comp = component_of(g, w.bit_length() - 1, g.vertices & ~blue)
    return (u, w, comp) if g.adj[u] & comp == w else None


def _blue_apply(blue: int, w: int) -> int:
    return blue | w


def _blue_color(blue: int, u: int) -> str:
    return "blue" if blue >> u & 1 else "white"


def _ident(state):
    return state


STANDARD = Rule(_std_legal, _std_check, _blue_apply, _ident, _blue_color)
PSD = Rule(_psd_legal, _psd_check, _blue_apply, _ident, _blue_color)
SKEW = Rule(_skew_legal, _skew_check, _blue_apply, _ident, _blue_color)

RULES: dict[str, Rule] = {"standard": STANDARD, "psd": PSD, "skew": SKEW}


def register_rule(name: str, rule: Rule):
    RULES[name] = rule


# ---------------------------------------------------------------- driver

def drive(g: Graph, rule: Rule, state, tag: str, policy: str = "round", seed: int | None = None,
          record: bool = True):
    """Run ``rule`` to its fixed point. Returns ``(final_state, chronicle)``.

    ``round``: take every force legal now, apply them in (forcer, forced) order, skipping any
    invalidated by an earlier one in the same round. ``first``: always apply the least legal
    force. ``random``: apply a uniformly chosen legal force (seeded).
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    rng = random.Random(seed)
    chronicle: list[ForceRecord] = []

    def fire(st, force):
        u, w, comp = force
        if record:
            chronicle.append(ForceRecord(len(chronicle) + 1, u, w, tag, comp, rule.color(st, u)))
        return rule.apply(st, w)

    while True:
        batch = rule.legal(g, state)
        if not batch:
            break
        if policy == "first":
            state = fire(state, batch[0])
        elif policy == "random":
            state = fire(state, rng.choice(batch))
        else:
            state = fire(state, batch[0])
            for force in batch[1:]:
                force = rule.check(g, state, force)
                if force is not None:
                    state = fire(state, force)
    return state, chronicle


def _closure2(g, start: Coloring2, name: str, policy, seed, record) -> ClosureResult:
    if start.blue & ~g.vertices:
        raise ValueError("coloring is not a subset of the vertex set")
    blue, chron = drive(g, RULES[name], start.blue, name, policy, seed, record)
    return ClosureResult(blue == g.vertices, Coloring2(blue), chron)


def std_closure(g: Graph, start: Coloring2, policy: str = "round", seed: int | None = None,
                record: bool = True) -> ClosureResult:
    return _closure2(g, start, "standard", policy, seed, record)


def psd_closure(g: Graph, start: Coloring2, policy: str = "round", seed: int | None = None,
                record: bool = True) -> ClosureResult:
    return _closure2(g, start, "psd", policy, seed, record)


def skew_closure(g: Graph, start: Coloring2, policy: str = "round", seed: int | None = None,
                 record: bool = True) -> ClosureResult:
    return _closure2(g, start, "skew", policy, seed, record)


CLOSURES2 = {"standard": std_closure, "psd": psd_closure, "skew": skew_closure}


def is_forcing_set(g: Graph, start: Coloring2, rule: str) -> bool:
    if rule not in CLOSURES2:
        raise ValueError(f"rule must be one of {sorted(CLOSURES2)}")
    return CLOSURES2[rule](g, start, record=False).forced


def closes(g: Graph, rule: str, state) -> bool:
    """Fast membership test: does ``state`` force ``g`` under ``rule``? (no chronicle)"""
    r = RULES[rule]
    final, _ = drive(g, r, state, rule, record=False)
    return r.target(final) == g.vertices


def replay(g: Graph, rule: str | Rule, state, chronicle: list[ForceRecord]):
    """Re-apply a chronicle from ``state``; raises ValueError on the first illegal step."""
    r = RULES[rule] if isinstance(rule, str) else rule
    for rec in chronicle:
        if r.check(g, state, (rec.forcer, rec.forced, rec.component)) is None:
            raise ValueError(f"step {rec.step}: {rec.forcer} -> {members(rec.forced)} is not legal")
        state = r.apply(state, rec.forced)
    return state


def legal_forces(g: Graph, rule: str, state) -> list[ForceRecord]:
    r = RULES[rule]
    return [ForceRecord(1, u, w, rule, comp, r.color(state, u)) for u, w, comp in r.legal(g, state)]
