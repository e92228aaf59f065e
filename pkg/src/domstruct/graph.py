"""Simple undirected graphs on dense integer ids, plus I/O and corpus generation."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

VertexSet = tuple[int, ...]  # sorted, duplicate free


class GraphFormatError(ValueError):
    """Raised for malformed graph text; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    nbr_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        edges = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(
            self, "nbr_mask", tuple(sum(1 << w for w in a) for a in adj)
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_mask[u] >> v & 1)

    def closed_mask(self, v: int) -> int:
        return self.nbr_mask[v] | (1 << v)

    def without(self, removed: Iterable[int]) -> list[list[int]]:
        """Connected components (sorted vertex lists) of g minus `removed`."""
        gone = 0
        for v in removed:
            gone |= 1 << v
        return components_of_mask(self, ((1 << self.n) - 1) & ~gone)


def components_of_mask(g: Graph, alive: int) -> list[list[int]]:
    comps = []
    rest = alive
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = g.nbr_mask[v] & alive & ~comp
            comp |= new
            frontier |= new
        rest &= ~comp
        comps.append(mask_to_vertices(comp))
    return comps


def mask_to_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def vertices_to_mask(vs: Iterable[int]) -> int:
    mask = 0
    for v in vs:
        mask |= 1 << v
    return mask


def closed_neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
        mask |= g.closed_mask(v)
    return tuple(mask_to_vertices(mask))


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components_of_mask(g, (1 << g.n) - 1)) == 1


def is_3_connected(g: Graph) -> bool:
    """Direct check: at least 4 vertices and g - a - b connected for every pair."""
    if g.n < 4:
        return False
    full = (1 << g.n) - 1
    if len(components_of_mask(g, full)) != 1:
        return False
    for a, b in combinations(range(g.n), 2):
        if len(components_of_mask(g, full & ~(1 << a) & ~(1 << b))) != 1:
            return False
    return True


# --------------------------------------------------------------------------- I/O

def load_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse `text` as ``edgelist`` (header "n m"), ``pairs`` (headerless,
    renumbered), or ``graph6``. ``auto`` picks graph6 for a single token line."""
    if fmt == "auto":
        fmt = _sniff(text)
    if fmt == "edgelist":
        return _load_edgelist(text)
    if fmt == "pairs":
        return _load_pairs(text)
    if fmt == "graph6":
        graphs = load_graph6_lines(text)
        if len(graphs) != 1:
            raise GraphFormatError(f"expected one graph6 line, found {len(graphs)}")
        return graphs[0]
    raise ValueError(f"unknown graph format {fmt!r}")


def _sniff(text: str) -> str:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if lines and len(lines[0].split()) == 1 and not lines[0].lstrip("-").isdigit():
        return "graph6"
    return "edgelist"


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {line.strip()!r}", lineno) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _load_edgelist(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise GraphFormatError("empty input, expected header 'n m'", 1)
    lineno, header = lines[0]
    vals = _ints(header, lineno)
    if len(vals) != 2 or vals[0] < 0 or vals[1] < 0:
        raise GraphFormatError("header must be 'n m' with non-negative integers", lineno)
    n, m = vals
    edges = []
    seen = set()
    for lineno, line in lines[1:]:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise GraphFormatError("edge line must hold exactly two vertex ids", lineno)
        u, v = pair
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def _load_pairs(text: str) -> Graph:
    raw_edges = []
    for lineno, line in _content_lines(text):
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError("edge line must hold exactly two labels", lineno)
        if toks[0] == toks[1]:
            raise GraphFormatError(f"self-loop at vertex {toks[0]}", lineno)
        raw_edges.append((toks[0], toks[1], lineno))
    labels = sorted({t for a, b, _ in raw_edges for t in (a, b)}, key=_label_key)
    index = {lab: i for i, lab in enumerate(labels)}
    seen = set()
    edges = []
    for a, b, lineno in raw_edges:
        u, v = sorted((index[a], index[b]))
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {a} {b}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(len(labels), edges)


def _label_key(label: str):
    return (0, int(label), "") if re.fullmatch(r"-?\d+", label) else (1, 0, label)


def save_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph6(line: str, lineno: int | None = None) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string", lineno)
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= d <= 63 for d in data):
        raise GraphFormatError("graph6 characters must lie in '?'..'~'", lineno)
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] != 63:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field", lineno)
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    else:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field", lineno)
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}", lineno
        )
    bits = []
    for d in body:
        bits.extend((d >> k) & 1 for k in range(5, -1, -1))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def load_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line, lineno) for lineno, line in _content_lines(text)]


# ---------------------------------------------------------------- generators

NAMED = ("K4", "K5", "prism3", "wheel", "petersen", "cube_q3", "moebius_kantor")


def _cycle_edges(vs: Sequence[int]) -> list[tuple[int, int]]:
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _generalized_petersen(k: int, step: int) -> Graph:
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((i, k + i))
        edges.append((k + i, k + (i + step) % k))
    return Graph.from_edges(2 * k, edges)


def generate_named(name: str) -> Graph:
    """Build a named 3-connected graph. ``wheel(k)`` is a hub joined to a k-cycle."""
    match = re.fullmatch(r"wheel\((\d+)\)|wheel(\d+)", name)
    if match:
        k = int(match.group(1) or match.group(2))
        if k < 3:
            raise ValueError(f"wheel(k) needs k >= 3, got {k}")
        rim = list(range(1, k + 1))
        return Graph.from_edges(k + 1, [(0, v) for v in rim] + _cycle_edges(rim))
    if name == "K4":
        return Graph.from_edges(4, combinations(range(4), 2))
    if name == "K5":
        return Graph.from_edges(5, combinations(range(5), 2))
    if name == "prism3":
        return Graph.from_edges(6, _cycle_edges([0, 1, 2]) + _cycle_edges([3, 4, 5])
                                + [(0, 3), (1, 4), (2, 5)])
    if name == "petersen":
        return _generalized_petersen(5, 2)
    if name == "cube_q3":
        return Graph.from_edges(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3)
                                    if u < u ^ (1 << b)])
    if name == "moebius_kantor":
        return _generalized_petersen(8, 3)
    raise ValueError(f"unknown named graph {name!r}; choose from {', '.join(NAMED)}")


def generate_random_3connected(n: int, seed: int, attempts: int = 1000) -> Graph:
    """Rejection-sample a 3-connected graph on n vertices.

    Each attempt draws G(n, p) with mean degree about 4, then tops up every
    vertex of degree < 3 with random extra edges. Deterministic in (n, seed).
    """
    if n < 4:
        raise ValueError(f"no 3-connected graph on {n} < 4 vertices")
    if attempts < 1:
        raise ValueError("attempts must be positive")
    rng = random.Random(seed)
    p = min(1.0, 4.0 / (n - 1))
    for _ in range(attempts):
        adj = [set() for _ in range(n)]
        for u, v in combinations(range(n), 2):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
        for v in range(n):
            while len(adj[v]) < 3:
                w = rng.choice([w for w in range(n) if w != v and w not in adj[v]])
                adj[v].add(w)
                adj[w].add(v)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
        if is_3_connected(g):
            return g
    raise RuntimeError(f"no 3-connected graph found for n={n}, seed={seed} in {attempts} attempts")
