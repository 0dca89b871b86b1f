"""Graph representation, BFS primitives, and the edge-list / DOT formats.

Everything downstream (pattern classifiers, oracles, the certifying solver)
builds on this module.  Determinism is a design rule: adjacency is stored
sorted, iteration is ascending by id, and BFS parents are least-id, so two
runs over the same input produce byte-identical output.
"""

from __future__ import annotations

from typing import Collection, Iterable, Iterator, Sequence

import numpy as np

from . import kernels

MAX_VERTICES = 2**31 - 1

_DOT_PALETTE = (
    "#1b9e77",
    "#d95f02",
    "#7570b3",
    "#e7298a",
    "#66a61e",
    "#e6ab02",
)


class EdgeListError(ValueError):
    """Rejected edge-list input; ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class Unreachable:
    """Singleton marker for "no path"; test with ``d is UNREACHABLE``.

    A marker object, deliberately not an integer, so an unreachable vertex
    can never be confused with a real distance.
    """

    __slots__ = ()
    _singleton: "Unreachable | None" = None

    def __new__(cls) -> "Unreachable":
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self) -> str:
        return "UNREACHABLE"


UNREACHABLE = Unreachable()


class Graph:
    """Immutable simple undirected graph on vertex ids 0..n-1.

    ``adj`` holds each vertex's neighbors as an ascending tuple and
    ``adj_sets`` the same data as frozensets for O(1) membership tests.
    Instances are safe for simultaneous readers; the CSR form used by the
    compiled kernel is cached on first use.
    """

    __slots__ = ("n", "m", "adj", "adj_sets", "_csr")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...]) -> None:
        self.n = n
        self.adj = adj
        self.adj_sets = tuple(frozenset(nb) for nb in adj)
        self.m = sum(len(nb) for nb in adj) // 2
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge collection, enforcing all invariants."""
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        if n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} exceeds the supported maximum {MAX_VERTICES}")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge endpoint out of range: ({u}, {v}) with n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls(n, tuple(tuple(sorted(nb)) for nb in adj))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as (u, v) with u < v, ascending."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), both int32, cached."""
        if self._csr is None:
            degrees = np.fromiter(
                (len(nb) for nb in self.adj), dtype=np.int32, count=self.n
            )
            indptr = np.zeros(self.n + 1, dtype=np.int32)
            np.cumsum(degrees, out=indptr[1:])
            indices = np.fromiter(
                (w for nb in self.adj for w in nb), dtype=np.int32, count=2 * self.m
            )
            self._csr = (indptr, indices)
        return self._csr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DistanceMap:
    """Per-vertex distance from a source set; ``d[v]`` is an int or UNREACHABLE."""

    __slots__ = ("source", "_dist")

    def __init__(self, source: frozenset[int], dist: np.ndarray) -> None:
        self.source = source
        self._dist = dist

    def __getitem__(self, v: int) -> int | Unreachable:
        d = int(self._dist[v])
        return UNREACHABLE if d < 0 else d

    def __len__(self) -> int:
        return len(self._dist)

    @property
    def raw(self) -> np.ndarray:
        """The int32 distance array; -1 encodes UNREACHABLE.  Internal form."""
        return self._dist


def check_path(g: Graph, path: Sequence[int]) -> None:
    """Raise ValueError unless ``path`` is a valid vertex path in ``g``."""
    if len(path) == 0:
        raise ValueError("path must be nonempty")
    for v in path:
        if not (0 <= v < g.n):
            raise ValueError(f"path vertex {v} out of range for n={g.n}")
    if len(set(path)) != len(path):
        raise ValueError("path vertices must be distinct")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"path step ({a}, {b}) is not an edge")


def is_path(g: Graph, path: Sequence[int]) -> bool:
    """True iff ``path`` is a valid vertex path in ``g``."""
    try:
        check_path(g, path)
    except ValueError:
        return False
    return True


def _check_ids(g: Graph, vertices: Iterable[int]) -> None:
    for v in vertices:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex id {v} out of range for n={g.n}")


def bfs_tree(
    g: Graph, sources: Collection[int], cap: int = -1
) -> tuple[np.ndarray, np.ndarray, int]:
    """Low-level BFS: (dist, parent, reached) with -1 for unvisited.

    Plumbing shared by the public operations and the solver, which needs
    the parent array to read off shortest paths.  Parents are least-id, so
    extracted paths are deterministic.
    """
    if not sources:
        raise ValueError("empty source set")
    _check_ids(g, sources)
    return kernels.bfs(g, sources, cap)


def bfs_from_set(g: Graph, sources: Collection[int]) -> DistanceMap:
    """Shortest-path distance from every vertex to the nearest source."""
    dist, _, _ = bfs_tree(g, sources)
    return DistanceMap(frozenset(sources), dist)


def covered_set(g: Graph, path: Sequence[int], k: int) -> set[int]:
    """Vertices within distance ``k`` of the path's vertex set."""
    check_path(g, path)
    if k < 0:
        raise ValueError(f"coverage radius must be nonnegative, got {k}")
    dist, _, _ = kernels.bfs(g, path, cap=k)
    return {int(v) for v in np.flatnonzero(dist >= 0)}


def path_eccentricity_of(g: Graph, path: Sequence[int]) -> int:
    """Maximum distance from any vertex of ``g`` to the path's vertex set."""
    check_path(g, path)
    dist, _, reached = kernels.bfs(g, path)
    if reached < g.n:
        raise ValueError("graph is disconnected: some vertex cannot reach the path")
    return int(dist.max())


def is_connected(g: Graph) -> bool:
    """True iff every vertex is reachable from vertex 0 (vacuously for n=0)."""
    if g.n == 0:
        return True
    _, _, reached = kernels.bfs(g, [0])
    return reached == g.n


def induced(g: Graph, vertices: Collection[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices`` plus the old-id -> new-id mapping.

    The mapping preserves ascending order, so results are canonical for a
    given vertex set.
    """
    _check_ids(g, vertices)
    ordered = sorted(set(vertices))
    mapping = {old: new for new, old in enumerate(ordered)}
    member = mapping.keys()
    edges = [
        (mapping[u], mapping[w])
        for u in ordered
        for w in g.adj[u]
        if u < w and w in member
    ]
    return Graph.from_edges(len(ordered), edges), mapping


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format; every rejection names its input line.

    Format: '#'-prefixed comment lines (and blank lines) are ignored; the
    first significant line is "n m"; exactly m significant lines "u v"
    follow with 0 <= u, v < n, u != v, each unordered pair at most once.
    """
    header: tuple[int, int] | None = None
    adj_edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last_line = 0
    for ln, raw_line in enumerate(text.splitlines(), start=1):
        last_line = ln
        stripped = raw_line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if header is None:
            if len(parts) != 2:
                raise EdgeListError(ln, f"malformed header {stripped!r}, expected 'n m'")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListError(
                    ln, f"malformed header {stripped!r}, expected two integers"
                ) from None
            if n < 0 or m < 0:
                raise EdgeListError(ln, f"header counts must be nonnegative, got {stripped!r}")
            if n > MAX_VERTICES:
                raise EdgeListError(
                    ln, f"vertex count {n} exceeds the supported maximum {MAX_VERTICES}"
                )
            header = (n, m)
            continue
        n, m = header
        if len(adj_edges) == m:
            raise EdgeListError(ln, f"unexpected content after {m} edges: {stripped!r}")
        if len(parts) != 2:
            raise EdgeListError(ln, f"malformed edge line {stripped!r}, expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(
                ln, f"malformed edge line {stripped!r}, expected two integers"
            ) from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(ln, f"edge endpoint out of range: {u} {v} with n={n}")
        if u == v:
            raise EdgeListError(ln, f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListError(ln, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        adj_edges.append((u, v))
    if header is None:
        raise EdgeListError(max(last_line, 1), "missing header line 'n m'")
    n, m = header
    if len(adj_edges) != m:
        raise EdgeListError(
            max(last_line, 1),
            f"header declares {m} edges but only {len(adj_edges)} present",
        )
    return Graph.from_edges(n, adj_edges)


def write_edge_list(g: Graph) -> str:
    """Canonical edge-list text: header, then edges with u < v ascending."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def emit_dot(
    g: Graph,
    highlights: Sequence[tuple[str, Collection[int]]] = (),
) -> str:
    """Deterministic DOT text for ``g``.

    Vertices appear ascending, edges with u < v ascending.  Each highlight
    set is filled with a palette color by label order; when sets overlap,
    the earliest label wins.
    """
    for _, vs in highlights:
        _check_ids(g, vs)
    style: dict[int, tuple[str, str]] = {}
    for i, (label, vs) in enumerate(highlights):
        color = _DOT_PALETTE[i % len(_DOT_PALETTE)]
        for v in vs:
            style.setdefault(v, (color, label))
    out = ["graph G {"]
    for v in range(g.n):
        if v in style:
            color, label = style[v]
            out.append(f'  {v} [style=filled, fillcolor="{color}", tooltip="{label}"];')
        else:
            out.append(f"  {v};")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
