"""Verification campaigns over graph corpora.

Each graph is run through the full pipeline (0-mod-3 cycles, structures,
families, label assignments, structure-derived dominating set) and every
checkable claim becomes a flag in a per-graph report. A flag is True, False,
or None (inconclusive or not applicable). Falsified claims are data: they
never abort a run.
"""

from __future__ import annotations

import dataclasses
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import IO, Any, Sequence

from .cycles import Cycle, CycleBudget, c_g
from .domination import (
    FamilyCandidate,
    OracleRefused,
    StructureMethodFailed,
    brute_force_gamma,
    evaluate_families,
    greedy_gamma,
    is_dominating,
    structure_gamma,
)
from .graph import Graph, generate_named, generate_random_3connected, is_3_connected, load_graph, save_edgelist
from .structure import Family, Structure, build_family, enumerate_structures
from .x3assign import find_closed_x3_paths, min_label_assignment

DEFAULT_NAMED = (
    "K4", "K5", "prism3", "wheel(4)", "wheel(5)", "wheel(6)",
    "petersen", "cube_q3", "moebius_kantor",
)

OK_FLAGS = (
    "cycles_nonempty_ok",
    "family_bound_ok",
    "single_component_ok",
    "closed_path_ok",
    "theorem_t2_ok",
    "optimality_ok",
)


@dataclass(frozen=True)
class Settings:
    max_cycle_len: int | None = None
    max_cycles: int = 200_000
    max_structures: int = 10_000
    max_families: int = 10_000
    max_candidates: int = 64
    oracle_limit: int = 30
    closed_path_steps: int = 200_000
    allow_vertex_seam: bool = False
    loose_pattern: bool = False

    def __post_init__(self):
        for name in ("max_cycles", "max_structures", "max_families", "max_candidates",
                     "oracle_limit", "closed_path_steps"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_cycle_len is not None and self.max_cycle_len < 3:
            raise ValueError("max_cycle_len must be at least 3")

    @property
    def budget(self) -> CycleBudget:
        return CycleBudget(self.max_cycle_len, self.max_cycles)


@dataclass
class Analysis:
    graph: Graph
    settings: Settings
    cycles: list[Cycle]
    cycles_truncated: bool
    structures: list[Structure]
    structures_truncated: bool
    families: list[Family]
    families_truncated: bool
    candidates: list[FamilyCandidate]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def exhaustive(self) -> bool:
        return not (self.cycles_truncated or self.structures_truncated or self.families_truncated)


def analyze(g: Graph, settings: Settings = Settings()) -> Analysis:
    timings = {}
    t0 = time.perf_counter()
    cycles, cyc_tr = c_g(g, settings.budget)
    t1 = time.perf_counter()
    structures, st_tr = enumerate_structures(
        g, settings.budget, settings.max_structures, settings.allow_vertex_seam, pool=cycles
    )
    t2 = time.perf_counter()
    families, fam_tr = build_family(g, structures, settings.max_families)
    t3 = time.perf_counter()
    candidates = evaluate_families(g, families, settings.loose_pattern, settings.max_candidates)
    t4 = time.perf_counter()
    timings.update(cycles=t1 - t0, structures=t2 - t1, families=t3 - t2, assignment=t4 - t3)
    return Analysis(g, settings, cycles, cyc_tr, structures, st_tr, families, fam_tr,
                    candidates, {k: round(v * 1000, 3) for k, v in timings.items()})


def _require_3_connected(g: Graph) -> None:
    if not is_3_connected(g):
        raise ValueError("check requires a 3-connected graph")


def _best_failure(candidates: Sequence[FamilyCandidate]) -> dict | None:
    if not candidates:
        return None
    def badness(c: FamilyCandidate):
        big = sum(1 for r in c.leftover if len(r) > 1)
        return (c.labels is None, big, not c.exceptional_ok, c.family_index)
    return min(candidates, key=badness).as_dict()


def check_theorem_t2(g: Graph, settings: Settings = Settings(), analysis: Analysis | None = None):
    """Is there a family H whose leftover G - H has only singleton components,
    each with all neighbours labelled under a minimum assignment?

    Returns ``(ok, evidence)``; evidence names the witnessing family or the
    closest failure.
    """
    _require_3_connected(g)
    a = analysis or analyze(g, settings)
    for c in a.candidates:
        if c.leftover_ok:
            return True, {"witness": c.as_dict()}
    return False, {"families": len(a.families), "best_failure": _best_failure(a.candidates)}


def check_family_bound(g: Graph, settings: Settings = Settings(), analysis: Analysis | None = None):
    """Returns ``(ok, count, bound)`` with ok None when enumeration was truncated."""
    _require_3_connected(g)
    a = analysis or analyze(g, settings)
    bound = g.n + 1
    count = len(a.families)
    if not a.exhaustive:
        return None, count, bound
    return count <= bound, count, bound


def check_optimality(g: Graph, settings: Settings = Settings(), analysis: Analysis | None = None):
    """Returns ``(ok, oracle_gamma, structure_gamma_or_None)``."""
    _require_3_connected(g)
    oracle = brute_force_gamma(g, settings.oracle_limit)
    a = analysis or analyze(g, settings)
    try:
        got = structure_gamma(g, a.families, candidates=a.candidates)
    except StructureMethodFailed:
        return False, oracle.gamma, None
    return got.gamma == oracle.gamma, oracle.gamma, got.gamma


def check_single_component(a: Analysis) -> bool:
    return all(len(f.members) == 1 for f in a.families)


def check_closed_paths(a: Analysis) -> tuple[bool | None, dict]:
    """Two-cycle structures: every vertex pair has a closed labelled path pair
    under the minimum assignment. None when nothing applies or the search
    budget ran out without a definite failure."""
    tested = 0
    exhausted = False
    for idx, s in enumerate(a.structures):
        if len(s.cycles) != 2:
            continue
        asg = min_label_assignment(s, a.settings.loose_pattern)
        if not asg.feasible:
            continue
        tested += 1
        for u, v in combinations(s.vertices, 2):
            pair, ran_out = find_closed_x3_paths(s, asg, u, v, a.settings.closed_path_steps)
            if pair is None and ran_out:
                exhausted = True
            elif pair is None:
                return False, {"structure": idx, "pair": [u, v], "labels": list(asg.labels)}
    if tested == 0 or exhausted:
        return None, {"tested": tested, "budget_exhausted": exhausted}
    return True, {"tested": tested}


# ------------------------------------------------------------------ reports

@dataclass
class VerificationReport:
    graph_id: str
    source: str
    n: int
    m: int
    is_3_connected: bool
    exhaustive: bool | None = None
    cg_size: int | None = None
    cg_truncated: bool | None = None
    structure_count: int | None = None
    structures_truncated: bool | None = None
    family_count: int | None = None
    families_truncated: bool | None = None
    family_bound: int | None = None
    cycles_nonempty_ok: bool | None = None
    family_bound_ok: bool | None = None
    single_component_ok: bool | None = None
    closed_path_ok: bool | None = None
    theorem_t2_ok: bool | None = None
    oracle_gamma: int | None = None
    oracle_witness: list[int] | None = None
    greedy_gamma: int | None = None
    structure_gamma: int | None = None
    structure_witness: list[int] | None = None
    structure_failure: str | None = None
    structure_dominates: bool | None = None
    optimality_ok: bool | None = None
    runtime_ms: dict[str, float] = field(default_factory=dict)
    counterexample: dict | None = None

    def failed_flags(self) -> list[str]:
        return [f for f in OK_FLAGS if getattr(self, f) is False]

    def to_dict(self, include_timings: bool = False) -> dict:
        d = dataclasses.asdict(self)
        if not include_timings:
            d.pop("runtime_ms")
        return d


def verify_graph(g: Graph, graph_id: str, settings: Settings = Settings(), source: str = "") -> VerificationReport:
    rep = VerificationReport(graph_id, source, g.n, g.m, is_3_connected(g))
    t0 = time.perf_counter()
    if g.n <= settings.oracle_limit:
        oracle = brute_force_gamma(g, settings.oracle_limit)
        rep.oracle_gamma, rep.oracle_witness = oracle.gamma, list(oracle.witness)
    rep.greedy_gamma = greedy_gamma(g).gamma
    rep.runtime_ms["oracle"] = round((time.perf_counter() - t0) * 1000, 3)
    if not rep.is_3_connected:
        return rep

    a = analyze(g, settings)
    rep.runtime_ms.update(a.timings)
    rep.exhaustive = a.exhaustive
    rep.cg_size, rep.cg_truncated = len(a.cycles), a.cycles_truncated
    rep.structure_count, rep.structures_truncated = len(a.structures), a.structures_truncated
    rep.family_count, rep.families_truncated = len(a.families), a.families_truncated
    rep.cycles_nonempty_ok = bool(a.cycles) if (a.cycles or not a.cycles_truncated) else None
    rep.family_bound_ok, _, rep.family_bound = check_family_bound(g, settings, a)
    rep.single_component_ok = check_single_component(a)

    t0 = time.perf_counter()
    rep.closed_path_ok, closed_evidence = check_closed_paths(a)
    rep.runtime_ms["closed_paths"] = round((time.perf_counter() - t0) * 1000, 3)
    rep.theorem_t2_ok, t2_evidence = check_theorem_t2(g, settings, a)

    failure = None
    try:
        got = structure_gamma(g, a.families, candidates=a.candidates)
        rep.structure_gamma, rep.structure_witness = got.gamma, list(got.witness)
        rep.structure_dominates = is_dominating(g, got.witness)
    except StructureMethodFailed as exc:
        rep.structure_failure = str(exc)
        failure = exc.diagnostics()
    if rep.oracle_gamma is not None:
        rep.optimality_ok = rep.structure_gamma is not None and rep.structure_gamma == rep.oracle_gamma

    failed = rep.failed_flags()
    if failed:
        evidence: dict[str, Any] = {}
        if "theorem_t2_ok" in failed:
            evidence["theorem_t2"] = t2_evidence
        if "closed_path_ok" in failed:
            evidence["closed_path"] = closed_evidence
        if "optimality_ok" in failed:
            evidence["optimality"] = {
                "oracle_witness": rep.oracle_witness,
                "structure_witness": rep.structure_witness,
                "structure_failure": _trim(failure),
            }
        if "family_bound_ok" in failed:
            evidence["family_bound"] = {"count": rep.family_count, "bound": rep.family_bound}
        if "single_component_ok" in failed:
            evidence["single_component"] = {
                "family_sizes": [len(f.members) for f in a.families]
            }
        rep.counterexample = {"graph": save_edgelist(g), "failed": failed, "evidence": evidence}
    return rep


def _trim(diag: dict | None, keep: int = 3) -> dict | None:
    if diag is None:
        return None
    return {"reason": diag["reason"], "candidates": diag["candidates"][:keep],
            "candidate_count": len(diag["candidates"])}


def recheck(report_line: dict, settings: Settings = Settings()) -> VerificationReport:
    """Reload a counterexample's graph and re-run every check on it."""
    g = load_graph(report_line["counterexample"]["graph"], "edgelist")
    return verify_graph(g, report_line["graph_id"], settings, report_line.get("source", ""))


# ------------------------------------------------------------------ campaigns

@dataclass(frozen=True)
class CampaignConfig:
    named: tuple[str, ...] = DEFAULT_NAMED
    random_count: int = 100
    n_min: int = 6
    n_max: int = 14
    seed: int | None = 42
    files: tuple[str, ...] = ()
    settings: Settings = Settings()
    out: str | None = None
    include_timings: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.random_count < 0:
            raise ValueError("random_count must be non-negative")
        if self.random_count and self.seed is None:
            raise ValueError("a seed is required for a random corpus")
        if self.random_count and not 4 <= self.n_min <= self.n_max:
            raise ValueError("need 4 <= n_min <= n_max")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    @classmethod
    def from_dict(cls, raw: dict) -> "CampaignConfig":
        raw = dict(raw)
        known = {f.name for f in dataclasses.fields(cls)}
        setting_names = {f.name for f in dataclasses.fields(Settings)}
        settings = dict(raw.pop("settings", {}) or {})
        for key in list(raw):
            if key in setting_names:
                settings[key] = raw.pop(key)
        unknown = set(raw) - known
        bad = set(settings) - setting_names
        if unknown or bad:
            raise ValueError(f"unknown config keys: {sorted(unknown | bad)}")
        for key in ("named", "files"):
            if key in raw:
                raw[key] = tuple(raw[key])
        return cls(settings=Settings(**settings), **raw)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["named"], d["files"] = list(self.named), list(self.files)
        return d


def load_config(path: str | Path) -> CampaignConfig:
    return CampaignConfig.from_dict(json.loads(Path(path).read_text()))


def build_corpus(cfg: CampaignConfig) -> list[tuple[str, str, Graph]]:
    """(graph_id, source, graph) triples in corpus order."""
    corpus = [(name, f"named:{name}", generate_named(name)) for name in cfg.named]
    for path in cfg.files:
        corpus.append((Path(path).stem, f"file:{path}", load_graph(Path(path).read_text())))
    if cfg.random_count:
        rng = random.Random(cfg.seed)
        for i in range(cfg.random_count):
            n = rng.randint(cfg.n_min, cfg.n_max)
            gseed = rng.getrandbits(63)
            g = generate_random_3connected(n, gseed)
            corpus.append((f"random-{i:03d}", f"random:n={n},seed={gseed}", g))
    return corpus


def _verify_item(item):
    (graph_id, source, g), settings = item
    return verify_graph(g, graph_id, settings, source)


def run_campaign(cfg: CampaignConfig) -> tuple[list[VerificationReport], dict]:
    corpus = build_corpus(cfg)
    items = [(entry, cfg.settings) for entry in corpus]
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            reports = list(pool.map(_verify_item, items, chunksize=4))
    else:
        reports = [_verify_item(it) for it in items]
    return reports, summarize(reports, cfg)


def summarize(reports: Sequence[VerificationReport], cfg: CampaignConfig) -> dict:
    claims = {}
    for flag in OK_FLAGS:
        vals = [getattr(r, flag) for r in reports]
        passed, failed = vals.count(True), vals.count(False)
        claims[flag] = {
            "pass": passed,
            "fail": failed,
            "inconclusive": len(vals) - passed - failed,
            "pass_rate": round(passed / (passed + failed), 6) if passed + failed else None,
        }
    s = cfg.settings
    gaps = [r.structure_gamma - r.oracle_gamma for r in reports
            if r.structure_gamma is not None and r.oracle_gamma is not None]
    return {
        "graphs": len(reports),
        "three_connected": sum(r.is_3_connected for r in reports),
        "exhaustive": sum(bool(r.exhaustive) for r in reports),
        "semantics": {
            "structures": "greedy-closure",
            "seam": "vertex-or-edge" if s.allow_vertex_seam else "edge",
            "pattern": "loose" if s.loose_pattern else "exact",
        },
        "claims": claims,
        "structure_accepted": len(gaps),
        "structure_gap_histogram": {str(k): gaps.count(k) for k in sorted(set(gaps))},
        "config": {k: v for k, v in cfg.to_dict().items() if k not in ("jobs", "out")},
    }


def write_reports(
    reports: Sequence[VerificationReport], summary: dict, stream: IO[str], include_timings: bool = False
) -> None:
    for r in reports:
        stream.write(json.dumps(r.to_dict(include_timings), sort_keys=True) + "\n")
    stream.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
