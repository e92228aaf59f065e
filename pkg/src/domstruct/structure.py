"""Seamless cycle structures, their reductions, and disjoint families.

Two cycles connect without seam when their common subgraph is a single path.
By default that path must carry an edge; ``allow_vertex_seam`` also accepts a
single shared vertex.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cycles import Cycle, CycleBudget, c_g
from .graph import Graph, components_of_mask, mask_to_vertices


@dataclass(frozen=True)
class IntersectionShape:
    components: tuple[tuple[int, ...], ...]
    is_path: tuple[bool, ...]
    is_single_path: bool


def intersection_shape(c1: Cycle, c2: Cycle, allow_vertex_seam: bool = False) -> IntersectionShape:
    """Components of (V(c1) & V(c2), E(c1) & E(c2)), each walked in order.

    Paths are listed from their smaller endpoint; a non-path component (only
    possible when c1 == c2) is listed in c1's cyclic order.
    """
    shared_v = set(c1.vertices) & set(c2.vertices)
    shared_e = set(c1.edges()) & set(c2.edges())
    adj: dict[int, list[int]] = {v: [] for v in shared_v}
    for u, v in shared_e:
        adj[u].append(v)
        adj[v].append(u)

    comps, flags = [], []
    seen: set[int] = set()
    for start in sorted(shared_v):
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    todo.append(y)
        seen |= comp
        n_edges = sum(len(adj[x]) for x in comp) // 2
        if n_edges == len(comp) - 1 and all(len(adj[x]) <= 2 for x in comp):
            ends = sorted(x for x in comp if len(adj[x]) <= 1)
            walk, prev = [ends[0]], None
            while len(walk) < len(comp):
                nxt = [y for y in adj[walk[-1]] if y != prev][0]
                prev = walk[-1]
                walk.append(nxt)
            comps.append(tuple(walk))
            flags.append(True)
        else:
            comps.append(tuple(v for v in c1.vertices if v in comp))
            flags.append(False)

    single = len(comps) == 1 and flags[0] and (len(comps[0]) >= 2 or allow_vertex_seam)
    return IntersectionShape(tuple(comps), tuple(flags), single)


def is_seamless(c1: Cycle, c2: Cycle, allow_vertex_seam: bool = False) -> bool:
    # Two distinct cycles meet in a linear forest, so #components = |V∩| - |E∩|.
    if c1 == c2:
        return False
    shared_e = (c1.emask & c2.emask).bit_count()
    shared_v = (c1.vmask & c2.vmask).bit_count()
    if shared_e:
        return shared_v - shared_e == 1
    return allow_vertex_seam and shared_v == 1


def seamless_neighbours(
    cycles: Sequence[Cycle], allow_vertex_seam: bool = False, block: int = 1024
) -> list[list[int]]:
    """Adjacency lists (indices into `cycles`) of the seamless relation."""
    k = len(cycles)
    if k == 0:
        return []
    vmax = max(c.vmask.bit_length() for c in cycles)
    emax = max(c.emask.bit_length() for c in cycles)
    vinc = _incidence([c.vmask for c in cycles], vmax)
    einc = _incidence([c.emask for c in cycles], emax)
    nbrs: list[list[int]] = []
    for lo in range(0, k, block):
        sv = vinc[lo:lo + block] @ vinc.T
        se = einc[lo:lo + block] @ einc.T
        hit = (se >= 1) & (sv - se == 1)
        if allow_vertex_seam:
            hit |= (se == 0) & (sv == 1)
        for r in range(hit.shape[0]):
            hit[r, lo + r] = False
            nbrs.append(np.flatnonzero(hit[r]).tolist())
    return nbrs


def _incidence(masks: list[int], width: int) -> np.ndarray:
    out = np.zeros((len(masks), max(width, 1)), dtype=np.float32)
    for i, mask in enumerate(masks):
        out[i, mask_to_vertices(mask)] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class Structure:
    """A seamless-closed set of 0-mod-3 cycles with its union graph and reduction.

    Two structures are equal when their union graphs are.
    """

    graph: Graph = field(repr=False)
    cycles: tuple[Cycle, ...]
    d_sg: tuple[Cycle, ...]
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    allow_vertex_seam: bool = False
    vmask: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vmask", sum(1 << v for v in self.vertices))

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @classmethod
    def from_cycles(cls, g: Graph, cycles: Iterable[Cycle], allow_vertex_seam: bool = False):
        cyc = tuple(sorted(set(cycles)))
        verts = sorted({v for c in cyc for v in c.vertices})
        edges = sorted({e for c in cyc for e in c.edges()})
        return cls(g, cyc, reduce_d_sg(cyc), tuple(verts), tuple(edges), allow_vertex_seam)

    @property
    def key(self) -> tuple:
        """Union-graph identity used for deduplication."""
        return (self.vertices, self.edges)

    def seam_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i < j) of member cycles that connect without seam."""
        nbrs = seamless_neighbours(self.cycles, self.allow_vertex_seam)
        return [(i, j) for i, row in enumerate(nbrs) for j in row if i < j]

    def union_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def union_is_connected(self) -> bool:
        adj = self.union_adjacency()
        if not adj:
            return False
        start = self.vertices[0]
        seen = {start}
        todo = [start]
        while todo:
            for y in adj[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.vertices)


def reduce_d_sg(cycles: Sequence[Cycle]) -> tuple[Cycle, ...]:
    """Drop, in canonical order, each cycle that has no exclusive vertex.

    Exclusivity is judged against the cycles still present. Dropping only
    lowers vertex multiplicities, so a survivor never loses its exclusive
    vertex and one ordered pass reaches the fixpoint.
    """
    ordered = sorted(set(cycles))
    count: dict[int, int] = {}
    for c in ordered:
        for v in c.vertices:
            count[v] = count.get(v, 0) + 1
    kept = []
    remaining = len(ordered)
    for c in ordered:
        if remaining > 1 and all(count[v] > 1 for v in c.vertices):
            for v in c.vertices:
                count[v] -= 1
            remaining -= 1
        else:
            kept.append(c)
    return tuple(kept)


def grow_structure(
    g: Graph, seed: Cycle, pool: Sequence[Cycle], allow_vertex_seam: bool = False,
    neighbours: list[list[int]] | None = None,
) -> Structure:
    """Close `seed` under the seamless relation within `pool`.

    The greedy rule (add the smallest pool cycle seamless with a member until
    none is left) reaches the same fixpoint as a breadth-first sweep of the
    seamless relation, which is what runs here.
    """
    pool = list(pool)
    try:
        start = pool.index(seed)
    except ValueError:
        raise ValueError("seed cycle must belong to the pool") from None
    if neighbours is None:
        neighbours = seamless_neighbours(pool, allow_vertex_seam)
    members = {start}
    todo = deque([start])
    while todo:
        for j in neighbours[todo.popleft()]:
            if j not in members:
                members.add(j)
                todo.append(j)
    return Structure.from_cycles(g, (pool[i] for i in members), allow_vertex_seam)


def enumerate_structures(
    g: Graph,
    budget: CycleBudget = CycleBudget(),
    max_structures: int = 10_000,
    allow_vertex_seam: bool = False,
    pool: Sequence[Cycle] | None = None,
) -> tuple[list[Structure], bool]:
    """Grow a structure from every 0-mod-3 cycle, dedupe by union graph.

    Returned in order of their smallest seed cycle. The flag is True when the
    cycle budget or `max_structures` cut the result short.
    """
    truncated = False
    if pool is None:
        pool, truncated = c_g(g, budget)
    pool = sorted(pool)
    neighbours = seamless_neighbours(pool, allow_vertex_seam)
    assigned = [False] * len(pool)
    out: list[Structure] = []
    keys = set()
    for i in range(len(pool)):
        if assigned[i]:
            continue
        s = grow_structure(g, pool[i], pool, allow_vertex_seam, neighbours)
        for c in s.cycles:
            assigned[bisect.bisect_left(pool, c)] = True
        if s.key in keys:
            continue
        if len(out) >= max_structures:
            truncated = True
            break
        keys.add(s.key)
        out.append(s)
    return out, truncated


@dataclass(frozen=True)
class Family:
    members: tuple[Structure, ...]
    member_ids: tuple[int, ...]  # indices into the structure list
    covered_vertices: tuple[int, ...]

    @property
    def covered_mask(self) -> int:
        return sum(1 << v for v in self.covered_vertices)


def build_family(
    g: Graph, structures: Sequence[Structure], max_families: int = 10_000
) -> tuple[list[Family], bool]:
    """All maximal sets of pairwise vertex-disjoint structure graphs.

    Bron-Kerbosch with pivoting over the disjointness relation; families come
    out sorted by member indices. The flag is True if `max_families` fired.
    """
    k = len(structures)
    disjoint = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and not structures[i].vmask & structures[j].vmask:
                disjoint[i] |= 1 << j
    found: list[tuple[int, ...]] = []
    truncated = False

    def expand(r: int, p: int, x: int) -> bool:
        nonlocal truncated
        if not p and not x:
            if len(found) >= max_families:
                truncated = True
                return False
            found.append(tuple(mask_to_vertices(r)))
            return True
        pivot = max(mask_to_vertices(p | x), key=lambda u: (disjoint[u] & p).bit_count())
        for v in mask_to_vertices(p & ~disjoint[pivot]):
            if not expand(r | 1 << v, p & disjoint[v], x & disjoint[v]):
                return False
            p &= ~(1 << v)
            x |= 1 << v
        return True

    if k:
        expand(0, (1 << k) - 1, 0)
    families = []
    for ids in sorted(found):
        members = tuple(structures[i] for i in ids)
        covered = sorted({v for s in members for v in s.vertices})
        families.append(Family(members, ids, tuple(covered)))
    return families, truncated


def leftover_components(g: Graph, covered_mask: int) -> list[list[int]]:
    """Components of g minus the covered vertices."""
    return components_of_mask(g, ((1 << g.n) - 1) & ~covered_mask)


# ------------------------------------------------------------------ DOT export

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def to_dot(s: Structure, labels: Iterable[int] = (), name: str = "structure") -> str:
    """Graphviz text: one coloured edge group per cycle, seam paths bold,
    reduced-set cycles solid and dropped cycles dashed, labelled vertices filled."""
    labelled = set(labels)
    seam_edges: set[tuple[int, int]] = set()
    for i, j in s.seam_pairs():
        seam_edges |= set(s.cycles[i].edges()) & set(s.cycles[j].edges())
    kept = set(s.d_sg)
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in s.vertices:
        attrs = ' style=filled fillcolor="#333333" fontcolor=white' if v in labelled else ""
        lines.append(f"  {v} [label=\"{v}\"{attrs}];")
    for idx, c in enumerate(s.cycles):
        colour = _PALETTE[idx % len(_PALETTE)]
        style = "solid" if c in kept else "dashed"
        for u, v in c.edges():
            width = 3 if (u, v) in seam_edges else 1
            lines.append(
                f'  {u} -- {v} [color="{colour}" style={style} penwidth={width} '
                f'tooltip="cycle {idx}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
