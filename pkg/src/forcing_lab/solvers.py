"""Exact minimisation of the forcing parameters, with canonical witnesses.

All searches walk candidate sets by size, then lexicographically, so the first hit is the
canonical witness and results do not depend on scheduling.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations

from .forcing import RULES, Coloring2, Coloring3, ForceRecord, Rule, closes, drive
from .graph import CapacityError, Graph, InputError, bits, blowup, members, popcount
from .rfold import ClusterProfile, RfoldColoring, rfold_rule


@dataclass(frozen=True)
class SolverLimits:
    max_n: int = 12
    max_nr: int = 14
    time_budget: float | None = None  # seconds per call

    def __post_init__(self):
        if self.max_n < 1 or self.max_nr < 1:
            raise InputError("solver limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise InputError("time budget must be positive")


DEFAULT_LIMITS = SolverLimits()


@dataclass
class WitnessedValue:
    param: str
    value: int
    witness: Coloring2 | Coloring3 | ClusterProfile | RfoldColoring
    chronicle: list[ForceRecord] = field(default_factory=list)
    ellstar: int | None = None
    method: str = "exact"
    elapsed_ms: float = 0.0
    minima: list = field(default_factory=list)  # every optimal witness, when collected

    def to_dict(self, timing: bool = True) -> dict:
        d = {"param": self.param, "value": self.value}
        if self.ellstar is not None:
            d["ellstar"] = self.ellstar
        d["witness"] = witness_to_dict(self.witness)
        d["method"] = self.method
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))


def witness_to_dict(w) -> dict:
    if isinstance(w, ClusterProfile):
        return {"profile": w.tags, "r": w.r, "a": w.a, "m": w.m, "ell": w.ell}
    if isinstance(w, RfoldColoring):
        return {"blue": members(w.blue), "r": w.map.r}
    return w.to_dict()


class _Clock:
    def __init__(self, limits: SolverLimits):
        self.start = time.perf_counter()
        self.deadline = None if limits.time_budget is None else self.start + limits.time_budget
        self.ticks = 0

    def tick(self):
        self.ticks += 1
        if self.deadline is not None and self.ticks % 256 == 0 and time.perf_counter() > self.deadline:
            raise CapacityError("time budget exhausted")

    def ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0


def _check_n(g: Graph, limits: SolverLimits):
    if g.n > limits.max_n:
        raise CapacityError(f"n = {g.n} exceeds the subset-search limit {limits.max_n}")


def _subsets(pool: list[int], k: int):
    for combo in combinations(pool, k):
        yield bits(combo)


# ---------------------------------------------------------------- two-color minima

def _min_blue(g: Graph, rule: Rule, clock: _Clock) -> int:
    fixed = g.isolated()
    pool = members(g.vertices & ~fixed)
    for k in range(len(pool) + 1):
        for sub in _subsets(pool, k):
            clock.tick()
            blue = fixed | sub
            final, _ = drive(g, rule, blue, "", record=False)
            if final == g.vertices:
                return blue
    raise AssertionError("the full vertex set always forces")


def minimum_forcing_sets(g: Graph, rule_name: str, limits: SolverLimits = DEFAULT_LIMITS) -> list[int]:
    """Every minimum two-color forcing set under ``rule_name``, in lexicographic order."""
    _check_n(g, limits)
    clock = _Clock(limits)
    fixed = g.isolated()
    pool = members(g.vertices & ~fixed)
    for k in range(len(pool) + 1):
        found = []
        for sub in _subsets(pool, k):
            clock.tick()
            if closes(g, rule_name, fixed | sub):
                found.append(fixed | sub)
        if found:
            return found
    raise AssertionError("the full vertex set always forces")


def _two_color(g: Graph, rule_name: str, param: str, limits: SolverLimits) -> WitnessedValue:
    _check_n(g, limits)
    clock = _Clock(limits)
    rule = RULES[rule_name]
    blue = _min_blue(g, rule, clock)
    _, chron = drive(g, rule, blue, rule_name)
    return WitnessedValue(param, popcount(blue), Coloring2(blue), chron, method="exact", elapsed_ms=clock.ms())


def z_number(g: Graph, limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    return _two_color(g, "standard", "z", limits)


def zplus_number(g: Graph, limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    return _two_color(g, "psd", "z+", limits)


def skew2_number(g: Graph, limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    """Minimum two-color skew forcing set (an independent route to Z⁻)."""
    return _two_color(g, "skew", "z-2color", limits)


# ---------------------------------------------------------------- three-color minima

def _min_dark(g: Graph, rule_name: str, clock: _Clock) -> list[int]:
    """All dark sets of minimum size that force with every other vertex light, in lex order."""
    # making more vertices light never hurts, so D is usable iff (D, V - D) forces
    fixed = g.isolated()
    pool = members(g.vertices & ~fixed)
    for k in range(len(pool) + 1):
        found = []
        for sub in _subsets(pool, k):
            clock.tick()
            dark = fixed | sub
            if closes(g, rule_name, (dark, g.vertices & ~dark)):
                found.append(dark)
        if found:
            return found
    raise AssertionError("the full vertex set always forces")


def _three_color(g: Graph, rule_name: str, limits: SolverLimits, prune_independent: bool,
                 collect_all: bool):
    _check_n(g, limits)
    clock = _Clock(limits)
    darks = _min_dark(g, rule_name, clock)
    for size in range(g.n + 1):
        hits = []
        for dark in darks:
            rest = members(g.vertices & ~dark)
            for light in _subsets(rest, size):
                clock.tick()
                if prune_independent and not g.is_independent(light):
                    continue
                if closes(g, rule_name, (dark, light)):
                    hits.append(Coloring3(dark, light))
                    if not collect_all:
                        break
            if hits and not collect_all:
                break
        if hits:
            return hits, clock
    raise AssertionError("some light set always completes a usable dark set")


def _three_color_value(g, rule_name, param, limits, prune_independent=True) -> WitnessedValue:
    hits, clock = _three_color(g, rule_name, limits, prune_independent, collect_all=False)
    best = hits[0]
    _, chron = drive(g, RULES[rule_name], (best.dark, best.light), rule_name)
    return WitnessedValue(param, popcount(best.dark), best, chron, ellstar=popcount(best.light),
                          method="exact", elapsed_ms=clock.ms())


def zminus_number(g: Graph, limits: SolverLimits = DEFAULT_LIMITS,
                  prune_independent: bool = True) -> WitnessedValue:
    return _three_color_value(g, "skew3", "z-", limits, prune_independent)


def zf_plus_number(g: Graph, limits: SolverLimits = DEFAULT_LIMITS,
                   prune_independent: bool = True) -> WitnessedValue:
    return _three_color_value(g, "frac_psd", "zf+", limits, prune_independent)


def optimal_three_color_sets(g: Graph, rule_name: str,
                             limits: SolverLimits = DEFAULT_LIMITS) -> list[Coloring3]:
    """Every (D, L) with |D| minimal and |L| = ℓ*, found without the independence shortcut."""
    hits, _ = _three_color(g, rule_name, limits, prune_independent=False, collect_all=True)
    return hits


# ---------------------------------------------------------------- r-fold minima

def _kinds(r: int, allow_most: bool) -> str:
    if r == 1:
        return "AN"  # a single blue vertex already fills the cluster
    if allow_most and r >= 3:
        return "AMON"
    return "AON"


def _profiles_of_size(free: list[int], fixed_tags: list[str], r: int, kinds: str, size: int):
    """Tag strings with the given blue count over the free positions, sorted."""
    weight = {"A": r, "M": r - 1, "O": 1, "N": 0}
    k = len(free)
    out = []
    counts_a = range(k + 1) if "A" in kinds else [0]
    for a in counts_a:
        for m in (range(k - a + 1) if "M" in kinds else [0]):
            ell = size - weight["A"] * a - weight["M"] * m
            if ell < 0 or ell > k - a - m or (ell and "O" not in kinds):
                continue
            for pos_a in combinations(range(k), a):
                left = [i for i in range(k) if i not in pos_a]
                for pos_m in combinations(left, m):
                    left2 = [i for i in left if i not in pos_m]
                    for pos_o in combinations(left2, ell):
                        tags = list(fixed_tags)
                        for i in pos_a:
                            tags[free[i]] = "A"
                        for i in pos_m:
                            tags[free[i]] = "M"
                        for i in pos_o:
                            tags[free[i]] = "O"
                        out.append("".join(tags))
    out.sort()
    return out


def profile_minima(g: Graph, r: int, game: str, allow_most: bool,
                   limits: SolverLimits = DEFAULT_LIMITS, collect_all: bool = True):
    """Minimum-size canonical profiles forcing the r-fold blowup. Returns (size, profiles, clock)."""
    if r < 1:
        raise InputError("r must be >= 1")
    _check_n(g, limits)
    clock = _Clock(limits)
    kinds = _kinds(r, allow_most)
    bg, bmap = blowup(g, r)
    rule = rfold_rule(game, r)
    iso = g.isolated()
    fixed_tags = ["A" if iso >> u & 1 else "N" for u in range(g.n)]
    free = [u for u in range(g.n) if not iso >> u & 1]
    base = r * popcount(iso)
    for extra in range(r * len(free) + 1):
        hits = []
        for tags in _profiles_of_size(free, fixed_tags, r, kinds, extra):
            clock.tick()
            prof = ClusterProfile(tags, r)
            final, _ = drive(bg, rule, prof.to_blue(), "", record=False)
            if final == bg.vertices:
                hits.append(prof)
                if not collect_all:
                    break
        if hits:
            return base + extra, hits, clock
    raise AssertionError("the all-All profile always forces")


def _brute_rfold(g: Graph, r: int, game: str, param: str, limits: SolverLimits) -> WitnessedValue:
    if r < 1:
        raise InputError("r must be >= 1")
    if g.n * r > limits.max_nr:
        raise CapacityError(f"n*r = {g.n * r} exceeds the blowup brute-force limit {limits.max_nr}")
    clock = _Clock(limits)
    bg, bmap = blowup(g, r)
    rule = rfold_rule(game, r)
    blue = _min_blue(bg, rule, clock)
    tag = "rfold_psd" if game == "psd" else "rfold_std"
    _, chron = drive(bg, rule, blue, tag)
    return WitnessedValue(param, popcount(blue), RfoldColoring(blue, bmap), chron, method="brute",
                          elapsed_ms=clock.ms())


def _profile_value(g, r, game, allow_most, param, method, limits) -> WitnessedValue:
    size, hits, clock = profile_minima(g, r, game, allow_most, limits, collect_all=False)
    prof = hits[0]
    bg, _ = blowup(g, r)
    tag = "rfold_psd" if game == "psd" else "rfold_std"
    _, chron = drive(bg, rfold_rule(game, r), prof.to_blue(), tag)
    return WitnessedValue(param, size, prof, chron, method=method, elapsed_ms=clock.ms())


def zr_plus_number(g: Graph, r: int, method: str = "aon",
                   limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    if method == "aon":
        return _profile_value(g, r, "psd", False, "zr+", "aon", limits)
    if method == "brute":
        return _brute_rfold(g, r, "psd", "zr+", limits)
    raise InputError(f"method for zr+ must be aon or brute, not {method!r}")


def zr_number(g: Graph, r: int, method: str = "amon",
              limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    if method == "amon":
        return _profile_value(g, r, "std", True, "zr", "amon", limits)
    if method == "brute":
        return _brute_rfold(g, r, "std", "zr", limits)
    raise InputError(f"method for zr must be amon or brute, not {method!r}")


def large_fold(g: Graph) -> int:
    """The fold count used for the "r = n" statements (at least 2, so One and All differ)."""
    return max(g.n, 2)


def astar_plus(g: Graph, limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    """Number of All clusters in an optimal AON profile of the n-fold PSD game, with its ℓ."""
    r = large_fold(g)
    size, hits, clock = profile_minima(g, r, "psd", False, limits, collect_all=True)
    alls = {p.a for p in hits}
    if len(alls) != 1:
        raise AssertionError(f"optimal AON profiles disagree on the All count: {sorted(alls)}")
    prof = hits[0]
    return WitnessedValue("astar+", prof.a, prof, ellstar=prof.ell, method="aon",
                          elapsed_ms=clock.ms(), minima=hits)


# ---------------------------------------------------------------- dispatch

PARAMS = ("z", "z+", "z-", "zf+", "zr", "zr+", "astar+")


def compute(g: Graph, param: str, r: int | None = None, method: str = "auto",
            limits: SolverLimits = DEFAULT_LIMITS) -> WitnessedValue:
    """Compute one parameter. With ``auto`` the r-fold solvers use the profile search and,
    when the blowup is small enough, confirm it against brute force."""
    if param not in PARAMS:
        raise InputError(f"unknown parameter {param!r}; choose from {', '.join(PARAMS)}")
    if param == "z":
        return z_number(g, limits)
    if param == "z+":
        return zplus_number(g, limits)
    if param == "z-":
        return zminus_number(g, limits)
    if param == "zf+":
        return zf_plus_number(g, limits)
    if param == "astar+":
        return astar_plus(g, limits)
    if r is None:
        raise InputError(f"--r is required for {param}")
    restricted = "aon" if param == "zr+" else "amon"
    solver = zr_plus_number if param == "zr+" else zr_number
    if method == "auto":
        res = solver(g, r, restricted, limits)
        if g.n * r <= limits.max_nr:
            check = solver(g, r, "brute", limits)
            if check.value != res.value:
                raise AssertionError(f"{param}: {restricted} gives {res.value}, brute force gives {check.value}")
            res.method = f"{restricted}+brute"
        return res
    if method not in (restricted, "brute"):
        raise InputError(f"method for {param} must be auto, {restricted} or brute")
    return solver(g, r, method, limits)


def revalidate(g: Graph, res: WitnessedValue) -> bool:
    """Replay a result's chronicle from its witness and confirm the graph ends fully forced."""
    from .forcing import replay

    w = res.witness
    if res.param in ("z", "z+", "z-2color"):
        rule = {"z": "standard", "z+": "psd", "z-2color": "skew"}[res.param]
        return popcount(w.blue) == res.value and replay(g, rule, w.blue, res.chronicle) == g.vertices
    if res.param in ("z-", "zf+"):
        rule = "skew3" if res.param == "z-" else "frac_psd"
        final = replay(g, rule, (w.dark, w.light), res.chronicle)
        return popcount(w.dark) == res.value and popcount(w.light) == res.ellstar and final[0] == g.vertices
    if res.param in ("zr", "zr+"):
        game = "std" if res.param == "zr" else "psd"
        if isinstance(w, ClusterProfile):
            r, blue = w.r, w.to_blue()
        else:
            r, blue = w.map.r, w.blue
        bg, _ = blowup(g, r)
        return popcount(blue) == res.value and replay(bg, rfold_rule(game, r), blue, res.chronicle) == bg.vertices
    if res.param == "astar+":
        bg, _ = blowup(g, w.r)
        final, _ = drive(bg, rfold_rule("psd", w.r), w.to_blue(), "", record=False)
        return w.a == res.value and final == bg.vertices
    raise ValueError(f"cannot revalidate {res.param!r}")
