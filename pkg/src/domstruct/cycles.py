"""Elementary cycles of an undirected graph and the 0-mod-3 collection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph


def edge_bit(u: int, v: int) -> int:
    """Bit index of edge {u, v}; independent of the graph order."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle in canonical form: smallest id first, then its smaller neighbour."""

    vertices: tuple[int, ...]
    vmask: int = field(init=False, repr=False, compare=False)
    emask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise ValueError(f"not an elementary cycle: {vs}")
        if vs != canonical_rotation(vs):
            raise ValueError(f"cycle {vs} not in canonical form; use Cycle.of()")
        vmask = emask = 0
        for i, v in enumerate(vs):
            vmask |= 1 << v
            emask |= 1 << edge_bit(v, vs[(i + 1) % len(vs)])
        object.__setattr__(self, "vmask", vmask)
        object.__setattr__(self, "emask", emask)

    @classmethod
    def of(cls, seq: Sequence[int]) -> "Cycle":
        return cls(canonical_rotation(tuple(seq)))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))]

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        return all(0 <= v < g.n for v in vs) and all(
            g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))
        )


def canonical_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + rot[:0:-1]
    return rot


@dataclass(frozen=True)
class CycleBudget:
    max_length: int | None = None  # None means n
    max_count: int = 200_000

    def __post_init__(self):
        if self.max_length is not None and self.max_length < 3:
            raise ValueError("max_length must be at least 3")
        if self.max_count < 1:
            raise ValueError("max_count must be positive")


def enumerate_cycles(g: Graph, budget: CycleBudget = CycleBudget()) -> tuple[list[Cycle], bool]:
    """All elementary cycles of length <= budget.max_length, sorted canonically.

    Each cycle is grown once from its smallest vertex s through vertices > s
    and kept only in the orientation whose second vertex is below its last.
    The flag is True when a cap cut the search short.
    """
    max_len = g.n if budget.max_length is None else min(budget.max_length, g.n)
    adj = g.adjacency
    found: list[tuple[int, ...]] = []
    truncated = False

    class _Stop(Exception):
        pass

    for s in range(g.n):
        higher = [w for w in adj[s] if w > s]
        if len(higher) < 2:
            continue
        closers = set(higher)
        path = [s]
        on_path = 1 << s

        def extend(v: int) -> None:
            nonlocal on_path, truncated
            depth = len(path)
            for w in adj[v]:
                if w <= s or on_path >> w & 1:
                    continue
                if depth >= max_len:
                    # an unexplored extension exists beyond the length cap
                    truncated = True
                    return
                path.append(w)
                on_path |= 1 << w
                if w in closers and len(path) >= 3 and path[1] < w:
                    if len(found) >= budget.max_count:
                        truncated = True
                        raise _Stop
                    found.append(tuple(path))
                extend(w)
                path.pop()
                on_path &= ~(1 << w)

        try:
            extend(s)
        except _Stop:
            break

    return sorted(Cycle(c) for c in found), truncated


def c_g(g: Graph, budget: CycleBudget = CycleBudget()) -> tuple[list[Cycle], bool]:
    cycles, truncated = enumerate_cycles(g, budget)
    return [c for c in cycles if c.length % 3 == 0], truncated
