"""Dominating sets: exact branch and bound, greedy, and structure-derived."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product
from typing import Iterable, Sequence

from .graph import Graph, mask_to_vertices
from .structure import Family, leftover_components
from .x3assign import min_label_assignments


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    witness: tuple[int, ...]
    method: str  # "brute_force" | "greedy" | "structure"
    exact: bool


class OracleRefused(ValueError):
    pass


def is_dominating(g: Graph, x: Iterable[int]) -> bool:
    covered = 0
    for v in x:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
        covered |= g.closed_mask(v)
    return covered == (1 << g.n) - 1


class _Cover:
    """Can `undom` be dominated by at most k vertices drawn from `allowed`?

    Branches on the lowest undominated vertex u: some member of N[u] must be
    chosen. Candidates whose remaining coverage is contained in a sibling's are
    skipped, and each finished sibling is excluded from the ones after it.
    Failures are memoised on (undom, allowed).
    """

    def __init__(self, g: Graph):
        self.closed = [g.closed_mask(v) for v in range(g.n)]
        self.failed: dict[tuple[int, int], int] = {}

    def feasible(self, undom: int, allowed: int, k: int) -> bool:
        if not undom:
            return True
        if k <= 0:
            return False
        key = (undom, allowed)
        if self.failed.get(key, -1) >= k:
            return False
        need = undom.bit_count()
        best_cov = 0
        for w in mask_to_vertices(allowed):
            c = (self.closed[w] & undom).bit_count()
            if c > best_cov:
                best_cov = c
        if best_cov == 0 or -(-need // best_cov) > k:
            self._fail(key, k)
            return False
        low = undom & -undom
        u = low.bit_length() - 1
        cands = mask_to_vertices(self.closed[u] & allowed)
        cover = {w: self.closed[w] & undom for w in cands}
        keep = []
        for w in cands:
            cw = cover[w]
            dominated = any(
                o != w and cw & cover[o] == cw and (cover[o] != cw or o < w) for o in cands
            )
            if not dominated:
                keep.append(w)
        keep.sort(key=lambda w: (-cover[w].bit_count(), w))
        for w in keep:
            if self.feasible(undom & ~self.closed[w], allowed, k - 1):
                return True
            allowed &= ~(1 << w)
        self._fail(key, k)
        return False

    def _fail(self, key, k):
        if self.failed.get(key, -1) < k:
            self.failed[key] = k


def brute_force_gamma(g: Graph, limit: int = 30) -> DominationResult:
    """Exact domination number with the lexicographically smallest optimum.

    Refuses graphs above `limit` vertices instead of falling back to a heuristic.
    """
    if g.n > limit:
        raise OracleRefused(f"exact oracle refuses n={g.n} > limit {limit}")
    full = (1 << g.n) - 1
    if g.n == 0:
        return DominationResult(0, (), "brute_force", True)
    solver = _Cover(g)
    gamma = 1
    while not solver.feasible(full, full, gamma):
        gamma += 1
    witness: list[int] = []
    undom = full
    start = 0
    for slot in range(gamma):
        for v in range(start, g.n):
            later = full & ~((1 << (v + 1)) - 1)
            rest = undom & ~solver.closed[v]
            if solver.feasible(rest, later, gamma - slot - 1):
                witness.append(v)
                undom = rest
                start = v + 1
                break
        if not undom:
            break
    return DominationResult(gamma, tuple(witness), "brute_force", True)


def greedy_gamma(g: Graph) -> DominationResult:
    undom = (1 << g.n) - 1
    chosen = []
    while undom:
        best = max(range(g.n), key=lambda w: ((g.closed_mask(w) & undom).bit_count(), -w))
        chosen.append(best)
        undom &= ~g.closed_mask(best)
    return DominationResult(len(chosen), tuple(sorted(chosen)), "greedy", False)


# --------------------------------------------------------- structure route

@dataclass
class FamilyCandidate:
    """One label set derived from a family, with the checks it passed."""

    family_index: int
    member_ids: tuple[int, ...]
    labels: tuple[int, ...] | None  # None when some member has no assignment
    phases: tuple[tuple[int, ...], ...] = ()
    leftover: list[list[int]] = field(default_factory=list)
    components_ok: bool = False
    exceptional_ok: bool = False
    dominating: bool = False
    infeasible_members: tuple[int, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.labels is not None and self.components_ok and self.exceptional_ok and self.dominating

    @property
    def leftover_ok(self) -> bool:
        return self.labels is not None and self.components_ok and self.exceptional_ok

    def as_dict(self) -> dict:
        return {
            "family_index": self.family_index,
            "member_ids": list(self.member_ids),
            "labels": None if self.labels is None else list(self.labels),
            "phases": [list(p) for p in self.phases],
            "leftover": self.leftover,
            "components_ok": self.components_ok,
            "exceptional_ok": self.exceptional_ok,
            "dominating": self.dominating,
            "infeasible_members": list(self.infeasible_members),
        }


class StructureMethodFailed(RuntimeError):
    def __init__(self, message: str, candidates: Sequence[FamilyCandidate]):
        super().__init__(message)
        self.candidates = list(candidates)

    def diagnostics(self) -> dict:
        return {"reason": str(self), "candidates": [c.as_dict() for c in self.candidates]}


def evaluate_family(
    g: Graph, family: Family, index: int = 0, loose: bool = False, max_candidates: int = 64
) -> list[FamilyCandidate]:
    """Label sets from every combination of the members' minimum assignments,
    each checked for leftover size, exceptional-vertex cover, and domination."""
    leftover = leftover_components(g, family.covered_mask)
    components_ok = all(len(r) <= 1 for r in leftover)
    options = [min_label_assignments(m, loose, limit=max_candidates) for m in family.members]
    missing = tuple(i for i, opts in zip(family.member_ids, options) if not opts)
    if missing:
        return [FamilyCandidate(index, family.member_ids, None, (), leftover, components_ok,
                                infeasible_members=missing)]
    out = []
    singles = [r[0] for r in leftover if len(r) == 1]
    for combo in islice(product(*options), max_candidates):
        labels = tuple(sorted({v for a in combo for v in a.labels}))
        lab = set(labels)
        exceptional_ok = all(set(g.adjacency[x]) <= lab for x in singles)
        out.append(FamilyCandidate(
            index, family.member_ids, labels, tuple(a.phases for a in combo), leftover,
            components_ok, exceptional_ok, is_dominating(g, labels),
        ))
    return out


def evaluate_families(
    g: Graph, families: Sequence[Family], loose: bool = False, max_candidates: int = 64
) -> list[FamilyCandidate]:
    out = []
    for i, fam in enumerate(families):
        out.extend(evaluate_family(g, fam, i, loose, max_candidates))
    return out


def structure_gamma(
    g: Graph,
    families: Sequence[Family],
    loose: bool = False,
    max_candidates: int = 64,
    candidates: Sequence[FamilyCandidate] | None = None,
) -> DominationResult:
    """Smallest accepted structure-derived label set.

    A candidate is accepted when every leftover component of G - H is a single
    vertex whose neighbours are all labelled, and the labels dominate G.
    Raises StructureMethodFailed, carrying every candidate, if none qualifies.
    """
    if candidates is None:
        candidates = evaluate_families(g, families, loose, max_candidates)
    accepted = [c for c in candidates if c.accepted]
    if not accepted:
        reason = "no families" if not families else "no family yields an accepted candidate"
        raise StructureMethodFailed(f"structure method failed: {reason}", candidates)
    best = min(accepted, key=lambda c: (len(c.labels), c.labels, c.family_index))
    return DominationResult(len(best.labels), best.labels, "structure", False)
