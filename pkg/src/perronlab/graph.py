"""Immutable undirected simple graphs.

Vertices are 0..n-1.  Adjacency is stored as a tuple of sorted tuples, so
graphs are hashable and edits return new graphs that share unchanged rows.
BFS-based metrics (distance, diameter, connectivity) run on a cached CSR
view through the kernel layer.

Edge-list file format: one header line "n m", then m lines "u v"; blank
lines and lines starting with '#' are skipped.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from perronlab import kernels
from perronlab.errors import (
    BridgeRemoval,
    Disconnected,
    EdgeExists,
    EdgeMissing,
    InvalidParameters,
    InvalidSize,
    ParseError,
    VertexOutOfRange,
)


@dataclass(frozen=True, order=True)
class Edge:
    """Unordered vertex pair, normalized to u < v."""

    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise InvalidParameters(f"self-loop ({self.u}, {self.v}) is not an edge")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    def __iter__(self) -> Iterator[int]:
        return iter((self.u, self.v))


def as_edge(e) -> Edge:
    """Coerce an Edge or a (u, v) pair to a normalized Edge."""
    if isinstance(e, Edge):
        return e
    u, v = e
    return Edge(int(u), int(v))


@dataclass(frozen=True, repr=False)
class Graph:
    """Simple graph with n vertices, m edges, and sorted adjacency rows."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        """Build a graph from an edge collection; rejects loops, duplicates,
        and out-of-range endpoints."""
        if n < 1:
            raise InvalidSize(f"need at least one vertex, got n={n}")
        rows: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        m = 0
        for raw in edges:
            e = as_edge(raw)
            if e.u < 0 or e.v >= n:
                raise VertexOutOfRange(f"edge ({e.u}, {e.v}) outside [0, {n})")
            key = (e.u, e.v)
            if key in seen:
                raise InvalidParameters(f"duplicate edge ({e.u}, {e.v})")
            seen.add(key)
            rows[e.u].append(e.v)
            rows[e.v].append(e.u)
            m += 1
        return cls(n, tuple(tuple(sorted(r)) for r in rows), m)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in [0, {self.n})")

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(r) for r in self.adj), count=self.n, dtype=np.int64)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            return False
        row = self.adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> Iterator[Edge]:
        for u, row in enumerate(self.adj):
            for v in row:
                if v > u:
                    yield Edge(u, v)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) in int32, the layout the kernels expect."""
        degs = np.fromiter((len(r) for r in self.adj), count=self.n, dtype=np.int32)
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        np.cumsum(degs, out=indptr[1:])
        indices = np.fromiter(
            (v for row in self.adj for v in row), count=2 * self.m, dtype=np.int32
        )
        return indptr, indices

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, row in enumerate(self.adj):
            a[u, list(row)] = 1.0
        return a

    def is_regular(self) -> bool:
        degs = self.degrees()
        return bool(degs.min() == degs.max()) if self.n else True


@dataclass(frozen=True)
class StructureSummary:
    n: int
    m: int
    min_degree: int
    max_degree: int
    is_regular: bool
    is_connected: bool
    diameter: int | None


def add_edge(g: Graph, e) -> Graph:
    """New graph with e added; e must not already be present."""
    e = as_edge(e)
    g.check_vertex(e.u)
    g.check_vertex(e.v)
    if g.has_edge(e.u, e.v):
        raise EdgeExists(f"edge ({e.u}, {e.v}) already present")
    rows = list(g.adj)
    for a, b in ((e.u, e.v), (e.v, e.u)):
        row = rows[a]
        i = bisect_left(row, b)
        rows[a] = row[:i] + (b,) + row[i:]
    return Graph(g.n, tuple(rows), g.m + 1)


def _strip_edge(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.adj)
    rows[u] = tuple(x for x in rows[u] if x != v)
    rows[v] = tuple(x for x in rows[v] if x != u)
    return Graph(g.n, tuple(rows), g.m - 1)


def is_bridge(g: Graph, e) -> bool:
    """True iff removing e disconnects its endpoints."""
    e = as_edge(e)
    if not g.has_edge(e.u, e.v):
        raise EdgeMissing(f"edge ({e.u}, {e.v}) not present")
    stripped = _strip_edge(g, e.u, e.v)
    return distance(stripped, e.u, e.v) == math.inf

def remove_edge(g: Graph, e) -> Graph:
    """New graph with e removed; refuses bridges (the result must stay
    connected wherever the input was)."""
    e = as_edge(e)
    if is_bridge(g, e):
        raise BridgeRemoval(f"edge ({e.u}, {e.v}) is a bridge")
    return _strip_edge(g, e.u, e.v)


def distance(g: Graph, u: int, v: int) -> int | float:
    """Hop distance; math.inf if v is unreachable from u."""
    g.check_vertex(u)
    g.check_vertex(v)
    indptr, indices = g.csr
    d = int(kernels.bfs_distances(indptr, indices, u, g.n)[v])
    return math.inf if d < 0 else d


def is_connected(g: Graph) -> bool:
    if g.n == 1:
        return True
    indptr, indices = g.csr
    return bool((kernels.bfs_distances(indptr, indices, 0, g.n) >= 0).all())


def diameter(g: Graph) -> int:
    """Largest hop distance over all vertex pairs; requires connectivity."""
    indptr, indices = g.csr
    best = 0
    for s in range(g.n):
        d = kernels.bfs_distances(indptr, indices, s, g.n)
        if (d < 0).any():
            raise Disconnected("diameter is undefined on a disconnected graph")
        best = max(best, int(d.max()))
    return best


def structure_summary(g: Graph) -> StructureSummary:
    degs = g.degrees()
    connected = is_connected(g)
    return StructureSummary(
        n=g.n,
        m=g.m,
        min_degree=int(degs.min()),
        max_degree=int(degs.max()),
        is_regular=bool(degs.min() == degs.max()),
        is_connected=connected,
        diameter=diameter(g) if connected else None,
    )


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertices, relabeled to 0..k-1 in sorted order."""
    verts = sorted(set(vertices))
    for v in verts:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u in verts
        for v in g.adj[u]
        if v > u and v in index
    ]
    return Graph.from_edges(len(verts), edges)


def read_edge_list(path) -> Graph:
    """Load a graph from the "n m" / "u v" text format."""
    lines = Path(path).read_text().splitlines()
    rows: list[tuple[int, int]] = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-integer token in {line!r}") from exc
        if header is None:
            header = (a, b)
        else:
            rows.append((a, b))
    if header is None:
        raise ParseError(f"{path}: no header line")
    n, m = header
    if len(rows) != m:
        raise ParseError(f"{path}: header declares m={m} but {len(rows)} edges follow")
    return Graph.from_edges(n, rows)


def format_edge_list(g: Graph) -> str:
    """Render the "n m" / "u v" text format (edges sorted)."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{e.u} {e.v}" for e in g.edges())
    return "\n".join(out) + "\n"


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))
