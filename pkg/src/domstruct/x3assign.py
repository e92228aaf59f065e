"""Every-third-vertex label assignments on structures.

Each cycle kept after the exclusive-vertex reduction gets a phase p in
{0, 1, 2}; the labels it demands are the vertices at positions i == p (mod 3)
of its canonical traversal. The label set X is the union of those demands.
In the default (exact) mode a cycle must carry labels at precisely those
positions; ``loose=True`` only requires them to be present.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cycles import Cycle
from .graph import Graph
from .structure import Structure, leftover_components


@dataclass(frozen=True)
class Assignment:
    structure: Structure = field(repr=False, compare=False)
    phases: tuple[int, ...]
    labels: tuple[int, ...]
    feasible: bool
    loose: bool = False

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_json(self, structure_id: int | str) -> str:
        return json.dumps(
            {
                "structure_id": structure_id,
                "phases": list(self.phases),
                "labels": list(self.labels),
                "feasible": self.feasible,
            },
            sort_keys=True,
        )


def pattern_vertices(cycle: Cycle, phase: int) -> tuple[int, ...]:
    return cycle.vertices[phase::3]


def cycle_matches(cycle: Cycle, phase: int, labels: set[int] | frozenset[int], loose: bool = False) -> bool:
    """Does `cycle` carry labels at every third position starting at `phase`?"""
    want = set(pattern_vertices(cycle, phase))
    if loose:
        return want <= labels
    return want == labels.intersection(cycle.vertices)


def labels_for(s: Structure, phases: Sequence[int]) -> tuple[int, ...]:
    if len(phases) != len(s.d_sg):
        raise ValueError(f"expected {len(s.d_sg)} phases, got {len(phases)}")
    out: set[int] = set()
    for c, p in zip(s.d_sg, phases):
        out.update(pattern_vertices(c, p))
    return tuple(sorted(out))


def is_feasible(s: Structure, phases: Sequence[int], loose: bool = False) -> bool:
    labels = set(labels_for(s, phases))
    return all(cycle_matches(c, p, labels, loose) for c, p in zip(s.d_sg, phases))


def make_assignment(s: Structure, phases: Sequence[int], loose: bool = False) -> Assignment:
    phases = tuple(phases)
    return Assignment(s, phases, labels_for(s, phases), is_feasible(s, phases, loose), loose)


def _check_lengths(s: Structure) -> None:
    bad = [c.vertices for c in s.d_sg if c.length % 3]
    if bad:
        raise ValueError(f"reduced cycles must have length 0 mod 3: {bad[:3]}")


class _Search:
    """Phase-by-phase search over the reduced cycles in canonical order.

    In exact mode a vertex fixed in or out of X by one cycle must agree with
    every later cycle through it; the first disagreement prunes the branch.
    """

    def __init__(self, s: Structure, loose: bool):
        _check_lengths(s)
        self.s = s
        self.loose = loose
        self.cycles = s.d_sg
        self.state: dict[int, bool] = {}

    def options(self, idx: int):
        """Phases of cycle idx compatible with the current state, with the
        vertices each would newly force in and out."""
        c = self.cycles[idx]
        for p in range(3):
            put, ok = [], True
            for pos, v in enumerate(c.vertices):
                want = pos % 3 == p
                have = self.state.get(v)
                if self.loose:
                    if want and not have:
                        put.append((v, True))
                elif have is None:
                    put.append((v, want))
                elif have != want:
                    ok = False
                    break
            if ok:
                yield p, put

    def apply(self, put):
        for v, val in put:
            self.state[v] = val

    def undo(self, put):
        for v, _ in put:
            del self.state[v]

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(v for v, val in self.state.items() if val))

    def size(self) -> int:
        return sum(1 for val in self.state.values() if val)


def assign_x3(s: Structure, loose: bool = False, limit: int = 100_000) -> list[Assignment]:
    """All feasible phase vectors (at most `limit` of them), smallest |X| first,
    ties broken by the label tuple."""
    search = _Search(s, loose)
    found: list[tuple[int, ...]] = []
    phases: list[int] = []

    def rec(idx: int) -> bool:
        if idx == len(search.cycles):
            found.append(tuple(phases))
            return len(found) < limit
        for p, put in list(search.options(idx)):
            search.apply(put)
            phases.append(p)
            go = rec(idx + 1)
            phases.pop()
            search.undo(put)
            if not go:
                return False
        return True

    rec(0)
    out = [Assignment(s, ph, labels_for(s, ph), True, loose) for ph in found]
    out.sort(key=lambda a: (a.size, a.labels, a.phases))
    return out


def min_label_assignments(s: Structure, loose: bool = False, limit: int = 64) -> list[Assignment]:
    """Every minimum-|X| assignment (up to `limit`), by label tuple then phases.

    Branch and bound with forward checking: a branch dies when some later
    cycle has no compatible phase, or when the labels already placed plus the
    cheapest completion of any single remaining cycle exceed the best size.
    """
    search = _Search(s, loose)
    k = len(search.cycles)
    best = [k * max((c.length for c in search.cycles), default=0) + 1]
    optima: list[tuple[int, ...]] = []
    phases: list[int] = []

    def bound(idx: int) -> int | None:
        extra = 0
        for j in range(idx, k):
            costs = [sum(1 for _, val in put if val) for _, put in search.options(j)]
            if not costs:
                return None
            extra = max(extra, min(costs))
        return search.size() + extra

    def rec(idx: int) -> None:
        lb = bound(idx)
        if lb is None or lb > best[0]:
            return
        if idx == k:
            size = search.size()
            if size < best[0]:
                best[0] = size
                optima.clear()
            optima.append(tuple(phases))
            return
        for p, put in list(search.options(idx)):
            search.apply(put)
            phases.append(p)
            rec(idx + 1)
            phases.pop()
            search.undo(put)

    rec(0)
    out = [Assignment(s, ph, labels_for(s, ph), True, loose) for ph in optima]
    out.sort(key=lambda a: (a.labels, a.phases))
    return out[:limit]


def min_label_assignment(s: Structure, loose: bool = False) -> Assignment:
    """The smallest-|X| assignment, lexicographically first on ties.

    An infeasible structure yields ``Assignment(feasible=False)`` with no
    phases or labels rather than an exception.
    """
    best = min_label_assignments(s, loose, limit=1)
    if not best:
        return Assignment(s, (), (), False, loose)
    return best[0]


# ----------------------------------------------------------- closed X-3-paths

def path_offsets(path: Sequence[int], labels: set[int] | frozenset[int], loose: bool = False) -> set[int]:
    """Offsets r for which `path` has its labels exactly at positions r mod 3."""
    ok = set()
    for r in range(3):
        if loose:
            good = all(v in labels for v in path[r::3])
        else:
            good = all((v in labels) == (i % 3 == r) for i, v in enumerate(path))
        if good:
            ok.add(r)
    return ok


def find_closed_x3_paths(
    s: Structure, a: Assignment, u: int, v: int, max_steps: int = 200_000
) -> tuple[tuple[tuple[int, ...], tuple[int, ...]] | None, bool]:
    """Search the union graph for two labelled u-v paths whose second vertices
    differ and whose second-to-last vertices differ.

    Returns ``(pair or None, exhausted)``; `exhausted` is True when the step
    budget ran out before the search space did.
    """
    if not a.feasible:
        raise ValueError("closed-path search needs a feasible assignment")
    if u == v:
        raise ValueError("closed X-3-paths are defined for distinct endpoints only")
    verts = set(s.vertices)
    if u not in verts or v not in verts:
        raise ValueError("both endpoints must lie on the structure")
    adj = s.union_adjacency()
    labels = frozenset(a.labels)
    loose = a.loose
    witnesses: dict[tuple[int, int], tuple[int, ...]] = {}
    steps = 0
    path = [u]
    on_path = {u}

    def offsets_after(offs: frozenset[int], w: int, pos: int) -> frozenset[int]:
        lab = w in labels
        if loose:
            return frozenset(r for r in offs if not (pos % 3 == r) or lab)
        return frozenset(r for r in offs if (pos % 3 == r) == lab)

    start = offsets_after(frozenset(range(3)), u, 0)

    class _Done(Exception):
        pass

    def record(p: tuple[int, ...]):
        key = (p[1], p[-2])
        if key in witnesses:
            return
        for (a1, b1), other in witnesses.items():
            if a1 != key[0] and b1 != key[1]:
                raise _Done((other, p))
        witnesses[key] = p

    def rec(x: int, offs: frozenset[int]):
        nonlocal steps
        for w in adj[x]:
            if w in on_path:
                continue
            steps += 1
            if steps > max_steps:
                raise _Done(None)
            nxt = offsets_after(offs, w, len(path))
            if not nxt:
                continue
            path.append(w)
            if w == v:
                record(tuple(path))
            else:
                on_path.add(w)
                rec(w, nxt)
                on_path.discard(w)
            path.pop()

    try:
        if start:
            rec(u, start)
    except _Done as done:
        if done.args[0] is None:
            return None, True
        return done.args[0], False
    return None, False


def has_closed_x3_path(s: Structure, a: Assignment, u: int, v: int, max_steps: int = 200_000) -> bool:
    pair, _ = find_closed_x3_paths(s, a, u, v, max_steps)
    return pair is not None


# ------------------------------------------------------ attachment diagnostics

class AttachmentType(str, enum.Enum):
    A = "a"  # on the structure, labelled
    B = "b"  # in R', no labelled structure neighbour
    C = "c"  # in R', some labelled structure neighbour
    D = "d"  # on the structure, unlabelled


def r_prime(g: Graph, s: Structure) -> tuple[int, ...]:
    """Off-structure vertices with at most one neighbour in their own leftover
    component (all other neighbours lie on the structure)."""
    out = []
    for comp in leftover_components(g, s.vmask):
        members = set(comp)
        for r in comp:
            if sum(1 for w in g.adjacency[r] if w in members) <= 1:
                out.append(r)
    return tuple(sorted(out))


def classify_attachment(o: int, s: Structure, a: Assignment, r_prime_set: Iterable[int]) -> AttachmentType:
    labels = set(a.labels)
    on_structure = s.vmask >> o & 1
    if on_structure:
        return AttachmentType.A if o in labels else AttachmentType.D
    if o in set(r_prime_set):
        touched = [w for w in s.graph.adjacency[o] if s.vmask >> w & 1]
        return AttachmentType.C if any(w in labels for w in touched) else AttachmentType.B
    raise ValueError(f"vertex {o} is neither on the structure nor in R'")
