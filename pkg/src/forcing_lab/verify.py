"""Theorem-verification harness: checks the structural identities and bounds graph by graph."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, partial

from .forcing import Coloring3, closes
from .graph import CapacityError, Graph, components_after_removal, graph6_encode, independence_number
from .leafstrip import skew_zero_test
from .solvers import (DEFAULT_LIMITS, SolverLimits, astar_plus, large_fold, minimum_forcing_sets,
                      optimal_three_color_sets, profile_minima, skew2_number, z_number, zf_plus_number,
                      zminus_number, zplus_number, zr_number, zr_plus_number)
from .threecolor import first_forces, psd_first_forces

SMALL_FOLDS = (2, 3)


class _Facts:
    """Lazily computed parameters of one graph, shared between checks."""

    def __init__(self, g: Graph, limits: SolverLimits, fault: bool):
        self.g = g
        self.limits = limits
        self.fault = fault

    @cached_property
    def z(self):
        return z_number(self.g, self.limits).value

    @cached_property
    def zp(self):
        return zplus_number(self.g, self.limits).value

    @cached_property
    def zm_res(self):
        return zminus_number(self.g, self.limits)

    @cached_property
    def zm(self):
        return self.zm_res.value

    @cached_property
    def ellm(self):
        return self.zm_res.ellstar

    @cached_property
    def zfp_res(self):
        return zf_plus_number(self.g, self.limits)

    @cached_property
    def zfp(self):
        # the injected fault shifts the fractional value so the harness must notice
        return self.zfp_res.value + (1 if self.fault else 0)

    @cached_property
    def ellp(self):
        return self.zfp_res.ellstar

    @cached_property
    def astar(self):
        return astar_plus(self.g, self.limits)

    @cached_property
    def alpha(self):
        return independence_number(self.g)

    @property
    def has_edge(self):
        return self.g.num_edges() > 0


def _expect(fails: list[str], ok: bool, msg: str):
    if not ok:
        fails.append(msg)


# ---------------------------------------------------------------- checks
# each returns a list of failure messages, or None when the identity does not apply

def check_zf_equals_astar(f: _Facts):
    fails = []
    _expect(fails, f.zfp == f.astar.value, f"Zf+ = {f.zfp} but a*+ = {f.astar.value}")
    _expect(fails, f.ellp == f.astar.ellstar, f"l*+ = {f.ellp} but the AON profile has {f.astar.ellstar} One clusters")
    return fails


def check_zr_plus_large_r(f: _Facts):
    fails = []
    a, ell = f.astar.value, f.astar.ellstar
    for r in (large_fold(f.g), large_fold(f.g) + 1):
        v = zr_plus_number(f.g, r, "aon", f.limits).value
        _expect(fails, v == r * a + ell, f"Z[{r}]+ = {v} != {r}*{a} + {ell}")
    return fails


def check_zr_plus_lower(f: _Facts):
    fails = []
    for r in SMALL_FOLDS:
        v = zr_plus_number(f.g, r, "aon", f.limits).value
        _expect(fails, v >= r * f.astar.value, f"Z[{r}]+ = {v} < {r}*a*+ = {r * f.astar.value}")
    return fails


def check_amon_large_r(f: _Facts):
    fails = []
    r = large_fold(f.g)
    _, hits, _ = profile_minima(f.g, r, "std", True, f.limits, collect_all=True)
    for p in hits:
        _expect(fails, p.a + p.m == f.zm, f"{p}: a + m = {p.a + p.m} but Z- = {f.zm}")
        _expect(fails, p.ell >= p.m, f"{p}: l = {p.ell} < m = {p.m}")
    return fails


def check_zr_lower(f: _Facts):
    fails = []
    for r in SMALL_FOLDS:
        v = zr_number(f.g, r, "amon", f.limits).value
        _expect(fails, v >= r * f.zm, f"Z[{r}] = {v} < {r}*Z- = {r * f.zm}")
    return fails


def check_zr_basics(f: _Facts):
    fails = []
    v1 = zr_number(f.g, 1, "amon", f.limits).value
    _expect(fails, v1 == f.z, f"Z[1] = {v1} but Z = {f.z}")
    p1 = zr_plus_number(f.g, 1, "aon", f.limits).value
    _expect(fails, p1 == f.zp, f"Z[1]+ = {p1} but Z+ = {f.zp}")
    for r in SMALL_FOLDS:
        v = zr_number(f.g, r, "amon", f.limits).value
        _expect(fails, v <= r * f.z, f"Z[{r}] = {v} > {r}*Z")
        p = zr_plus_number(f.g, r, "aon", f.limits).value
        _expect(fails, p <= r * f.zp, f"Z[{r}]+ = {p} > {r}*Z+")
    return fails


def check_bound_chain(f: _Facts):
    g, fails = f.g, []
    n = g.n
    if n:
        _expect(fails, g.min_degree() - 1 <= f.zfp, f"delta - 1 = {g.min_degree() - 1} > Zf+ = {f.zfp}")
    if f.has_edge:
        _expect(fails, f.zfp <= f.zp - 1, f"Zf+ = {f.zfp} > Z+ - 1 = {f.zp - 1}")
        _expect(fails, f.ellp >= 1, "l*+ = 0 on a graph with an edge")
    _expect(fails, f.zfp <= f.zm, f"Zf+ = {f.zfp} > Z- = {f.zm}")
    _expect(fails, f.zp <= f.zfp + f.ellp, f"Z+ = {f.zp} > Zf+ + l*+ = {f.zfp + f.ellp}")
    _expect(fails, f.zm <= f.z <= f.zm + f.ellm, f"Z- <= Z <= Z- + l*- fails: {f.zm}, {f.z}, {f.ellm}")
    if n >= 2 and g.is_connected():
        _expect(fails, f.zm <= n - 2, f"Z- = {f.zm} > n - 2")
    _expect(fails, f.ellm <= (n - f.zm) // 2, f"l*- = {f.ellm} > floor((n - Z-)/2)")
    _expect(fails, f.ellp <= f.alpha, f"l*+ = {f.ellp} > alpha = {f.alpha}")
    _expect(fails, f.ellm <= f.alpha, f"l*- = {f.ellm} > alpha = {f.alpha}")
    return fails


def check_skew_two_color(f: _Facts):
    v = skew2_number(f.g, f.limits).value
    return [] if v == f.zm else [f"two-color skew minimum {v} != three-color Z- {f.zm}"]


def check_oracle_equivalence(f: _Facts):
    fails = []
    for r in SMALL_FOLDS:
        if f.g.n * r > f.limits.max_nr:
            continue
        a = zr_plus_number(f.g, r, "aon", f.limits).value
        b = zr_plus_number(f.g, r, "brute", f.limits).value
        _expect(fails, a == b, f"Z[{r}]+: aon {a} != brute {b}")
        a = zr_number(f.g, r, "amon", f.limits).value
        b = zr_number(f.g, r, "brute", f.limits).value
        _expect(fails, a == b, f"Z[{r}]: amon {a} != brute {b}")
    return fails


def check_light_independent(f: _Facts):
    fails = []
    for rule in ("frac_psd", "skew3"):
        for s in optimal_three_color_sets(f.g, rule, f.limits):
            _expect(fails, f.g.is_independent(s.light), f"{rule}: optimal light set {s.to_dict()} not independent")
    return fails


def check_first_force_light(f: _Facts):
    if not f.has_edge:
        return None
    for s in optimal_three_color_sets(f.g, "frac_psd", f.limits):
        if any(rec.forcer_color == "light" for rec in first_forces(f.g, s, "frac_psd")):
            return []
    return ["no optimal fractional PSD set has a light first force"]


def check_pivoting(f: _Facts):
    if not f.has_edge:
        return None
    for blue in minimum_forcing_sets(f.g, "psd", f.limits):
        if any(not rec.disconnect for rec in psd_first_forces(f.g, blue)):
            return []
    return ["every minimum PSD set needs the disconnect rule for its first force"]


def check_dark_swap(f: _Facts):
    fails = []
    samples = optimal_three_color_sets(f.g, "frac_psd", f.limits) + swap_samples(f.g, 10, seed=f.g.n)
    for s in samples:
        for rec in first_forces(f.g, s, "frac_psd"):
            if rec.forcer_color != "dark" or rec.forced & s.light:
                continue
            swapped = (s.dark & ~(1 << rec.forcer)) | rec.forced
            _expect(fails, closes(f.g, "frac_psd", (swapped, s.light)),
                    f"swap {rec.forcer}->{rec.forced.bit_length() - 1} breaks {s.to_dict()}")
    return fails


def check_strip_zero(f: _Facts):
    t = skew_zero_test(f.g)
    return [] if t == (f.zm == 0) else [f"strip test says {t} but Z- = {f.zm}"]


def check_additivity(f: _Facts):
    comps = components_after_removal(f.g, 0)
    if len(comps) < 2:
        return None
    fails = []
    parts = [f.g.induced(c)[0] for c in comps]
    for name, solver, total in (("Z", z_number, f.z), ("Z+", zplus_number, f.zp),
                                ("Z-", zminus_number, f.zm), ("Zf+", zf_plus_number, f.zfp)):
        s = sum(solver(p, f.limits).value for p in parts)
        _expect(fails, s == total, f"{name}: components sum to {s}, whole graph gives {total}")
    return fails


CHECKS = {
    "zf_equals_astar": check_zf_equals_astar,
    "zr_plus_large_r": check_zr_plus_large_r,
    "zr_plus_lower": check_zr_plus_lower,
    "amon_large_r": check_amon_large_r,
    "zr_lower": check_zr_lower,
    "zr_basics": check_zr_basics,
    "bound_chain": check_bound_chain,
    "skew_two_color": check_skew_two_color,
    "oracle_equivalence": check_oracle_equivalence,
    "light_independent": check_light_independent,
    "first_force_light": check_first_force_light,
    "pivoting": check_pivoting,
    "dark_swap": check_dark_swap,
    "strip_zero": check_strip_zero,
    "additivity": check_additivity,
}


# ---------------------------------------------------------------- report

@dataclass
class GraphResult:
    graph6: str
    n: int
    outcomes: dict[str, str]  # identity -> "pass" | "skip" | "fail: ..." | "error: ..."
    gap: int | None = None  # Zf+ + l*+ - Z+, reported for the open question, not asserted

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.outcomes.items() if v.startswith("fail")]

    @property
    def errored(self) -> list[str]:
        return [k for k, v in self.outcomes.items() if v.startswith("error")]

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "n": self.n, "outcomes": self.outcomes, "gap": self.gap}


@dataclass
class VerifyReport:
    identities: list[str]
    results: list[GraphResult] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(len(r.failed) for r in self.results)

    @property
    def errors(self) -> int:
        return sum(len(r.errored) for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> dict:
        out = {}
        for name in self.identities:
            counts = {"pass": 0, "fail": 0, "skip": 0, "error": 0}
            for r in self.results:
                counts[r.outcomes[name].split(":")[0]] += 1
            out[name] = counts
        return out

    def gap_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for r in self.results:
            if r.gap is not None:
                dist[r.gap] = dist.get(r.gap, 0) + 1
        return dict(sorted(dist.items()))

    def to_dict(self) -> dict:
        return {
            "graphs": len(self.results),
            "failures": self.failures,
            "errors": self.errors,
            "summary": self.summary(),
            "gap_distribution": {str(k): v for k, v in self.gap_distribution().items()},
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def format_row(r: GraphResult, identities: list[str]) -> str:
    marks = {"pass": ".", "skip": "-", "fail": "F", "error": "E"}
    cells = "".join(marks[r.outcomes[k].split(":")[0]] for k in identities)
    line = f"{r.graph6:<12} n={r.n:<2} {cells}"
    for k in identities:
        v = r.outcomes[k]
        if not v.startswith(("pass", "skip")):
            line += f"\n    {k}: {v}"
    return line


def verify_graph(g: Graph, identities: list[str] | None = None, limits: SolverLimits = DEFAULT_LIMITS,
                 fault: bool = False) -> GraphResult:
    names = list(identities or CHECKS)
    facts = _Facts(g, limits, fault)
    outcomes = {}
    for name in names:
        try:
            fails = CHECKS[name](facts)
        except CapacityError as exc:
            outcomes[name] = f"error: {exc}"
            continue
        except AssertionError as exc:
            outcomes[name] = f"fail: {exc}"
            continue
        if fails is None:
            outcomes[name] = "skip"
        elif fails:
            outcomes[name] = "fail: " + "; ".join(fails)
        else:
            outcomes[name] = "pass"
    try:
        gap = facts.zfp + facts.ellp - facts.zp
    except CapacityError:
        gap = None
    return GraphResult(graph6_encode(g), g.n, outcomes, gap)


def verify_theorems(corpus, sink=None, identities: list[str] | None = None,
                    limits: SolverLimits = DEFAULT_LIMITS, fault: bool = False, workers: int = 1) -> VerifyReport:
    """Check every selected identity on every graph. ``sink`` receives each GraphResult in input order."""
    names = list(identities or CHECKS)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown identities: {', '.join(sorted(unknown))}")
    report = VerifyReport(names)
    job = partial(verify_graph, identities=names, limits=limits, fault=fault)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stream = pool.map(job, corpus, chunksize=4)
            for res in stream:
                report.results.append(res)
                if sink:
                    sink(res)
    else:
        for g in corpus:
            res = job(g)
            report.results.append(res)
            if sink:
                sink(res)
    return report


def swap_samples(g: Graph, count: int, seed: int = 0):
    """Random fractional PSD forcing sets of ``g`` (not necessarily optimal), for swap checks."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        dark = light = 0
        for v in range(g.n):
            x = rng.random()
            if x < 0.3:
                dark |= 1 << v
            elif x < 0.6:
                light |= 1 << v
        if closes(g, "frac_psd", (dark, light)):
            out.append(Coloring3(dark, light))
    return out

