"""Certifying search for dominating paths.

dominating_path(g) grows a path until every vertex has a neighbor on it,
or stops with three induced disjoint edges (no edges between them), the
obstruction that the growth argument needs absent.  On graphs free of
that obstruction the search always ends in a dominating path.  Each step
either lengthens the path or keeps its length while strictly growing the
dominated set, so the pair (length, dominated count) increases
lexicographically and the loop takes at most n*n steps.  All scans break
ties toward least ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import graph as graph_mod
from .graph import Graph

DOMINATING = "dominating"
EXTENDED = "extended"
REWIRED = "rewired"
WITNESS = "witness"


@dataclass(frozen=True)
class StepResult:
    kind: str
    path: tuple[int, ...] | None = None
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]] | None = None


@dataclass(frozen=True)
class DomPathCert:
    path: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {"kind": "dom_path", "path": list(self.path)}


@dataclass(frozen=True)
class ThreeP2Cert:
    """Three disjoint edges with no edges between them, listed as pairs."""

    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def to_json(self) -> dict[str, Any]:
        return {"kind": "three_p2", "pairs": [list(p) for p in self.pairs]}


def dom_certificate_from_json(obj: dict[str, Any]) -> DomPathCert | ThreeP2Cert:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("certificate must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "dom_path":
        return DomPathCert(path=tuple(int(v) for v in obj["path"]))
    if kind == "three_p2":
        pairs = obj["pairs"]
        if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
            raise ValueError("three_p2 certificate needs exactly three pairs")
        a, b, c = (tuple(int(v) for v in p) for p in pairs)
        return ThreeP2Cert(pairs=(a, b, c))
    raise ValueError(f"unknown certificate kind {kind!r}")


def check_dom_certificate(g: Graph, cert: Any) -> tuple[bool, str]:
    """Re-verify a dominating-path or three-edges certificate from scratch."""
    if isinstance(cert, dict):
        cert = dom_certificate_from_json(cert)
    if isinstance(cert, DomPathCert):
        try:
            graph_mod.check_path(g, cert.path)
        except ValueError as exc:
            return False, f"invalid path: {exc}"
        reached = graph_mod.bfs_tree(g, cert.path, cap=1)[2]
        if reached != g.n:
            return False, "path does not dominate the graph"
        return True, f"dominating path valid: {len(cert.path)} vertices"
    if isinstance(cert, ThreeP2Cert):
        flat = [v for p in cert.pairs for v in p]
        if len(set(flat)) != 6:
            return False, "pairs are not six distinct vertices"
        for v in flat:
            if not 0 <= v < g.n:
                return False, f"vertex {v} out of range"
        for a, b in cert.pairs:
            if not g.has_edge(a, b):
                return False, f"missing edge ({min(a, b)}, {max(a, b)})"
        for i in range(3):
            for j in range(i + 1, 3):
                for a in cert.pairs[i]:
                    for b in cert.pairs[j]:
                        if g.has_edge(a, b):
                            return False, f"unexpected edge ({min(a, b)}, {max(a, b)})"
        return True, "three separated edges valid: induced obstruction confirmed"
    raise ValueError(f"not a certificate: {type(cert).__name__}")


def _dominated_count(g: Graph, path: Sequence[int]) -> int:
    return graph_mod.bfs_tree(g, path, cap=1)[2]


def dom_step(g: Graph, path: Sequence[int]) -> StepResult:
    """One growth step.

    Outcomes: the path already dominates; a strictly longer path (it may
    trade an endpoint away, but everything stays dominated); a same-length
    rewiring that newly dominates the chosen distance-2 vertex; or three
    pairwise separated edges, the obstruction whose absence the progress
    argument relies on.
    """
    path = list(path)
    graph_mod.check_path(g, path)
    dist, _, reached = graph_mod.bfs_tree(g, path, cap=2)
    dist = np.asarray(dist)
    if reached == g.n and not np.any(dist == 2):
        return StepResult(DOMINATING, path=tuple(path))

    on_path = set(path)
    u, v = path[0], path[-1]
    for z in g.adj[u]:
        if z not in on_path:
            return StepResult(EXTENDED, path=tuple([z] + path))
    for z in g.adj[v]:
        if z not in on_path:
            return StepResult(EXTENDED, path=tuple(path + [z]))

    # Both endpoint neighborhoods lie on the path, yet some vertex is two
    # steps away.  Pull the path toward the least such vertex.
    far = np.flatnonzero(dist == 2)
    assert far.size, "undominated vertex missing despite failed domination"
    x = int(far[0])
    y = next(w for w in g.adj[x] if dist[w] == 1)
    assert len(path) >= 3, "distance-2 vertex next to a short path"
    u_next, v_prev = path[1], path[-2]
    if g.has_edge(y, u_next):
        return StepResult(EXTENDED, path=tuple([x, y] + path[1:]))
    if g.has_edge(y, v_prev):
        return StepResult(EXTENDED, path=tuple([x, y] + path[-2::-1]))

    t = min(i for i, p in enumerate(path) if g.has_edge(y, p))
    w = path[t]
    assert 2 <= t <= len(path) - 3, "anchor collided with the path ends"
    head = path[1:t]
    tail = path[t + 1:-1]
    if g.has_edge(u_next, v):
        new = [x, y, w] + head[::-1] + [v] + tail[::-1]
        return StepResult(EXTENDED, path=tuple(new))
    if g.has_edge(u, v_prev):
        new = [x, y, w] + tail + [u] + head
        return StepResult(EXTENDED, path=tuple(new))
    if g.has_edge(u, v):
        new = [x, y, w] + head[::-1] + [u, v] + tail[::-1]
        return StepResult(EXTENDED, path=tuple(new))
    if not g.has_edge(u_next, v_prev):
        pairs = ((u, u_next), (v, v_prev), (x, y))
        for p, q in pairs:
            assert g.has_edge(p, q)
        flat = [a for p in pairs for a in p]
        assert len(set(flat)) == 6
        for i in range(3):
            for j in range(i + 1, 3):
                for a in pairs[i]:
                    for b in pairs[j]:
                        assert not g.has_edge(a, b), "separated edges touch"
        return StepResult(WITNESS, pairs=pairs)
    new = [x, y, w] + head[::-1] + tail[::-1]
    return StepResult(REWIRED, path=tuple(new))


def dominating_path(
    g: Graph, start: Sequence[int] | None = None
) -> DomPathCert | ThreeP2Cert:
    """Grow a dominating path, or surface three pairwise separated edges."""
    cert, _ = dominating_path_detailed(g, start)
    return cert


def dominating_path_detailed(
    g: Graph, start: Sequence[int] | None = None
) -> tuple[DomPathCert | ThreeP2Cert, int]:
    """Like dominating_path, also returning the number of steps taken."""
    if g.n == 0:
        raise ValueError("dominating path needs a nonempty graph")
    if not graph_mod.is_connected(g):
        raise ValueError("dominating path needs a connected graph")
    path = [0] if start is None else list(start)
    graph_mod.check_path(g, path)
    steps = 0
    rank = (len(path), _dominated_count(g, path))
    while True:
        steps += 1
        if steps > g.n * g.n + 1:
            raise RuntimeError("internal error: step counter exceeded its bound")
        result = dom_step(g, path)
        if result.kind == DOMINATING:
            assert result.path is not None
            return DomPathCert(result.path), steps
        if result.kind == WITNESS:
            assert result.pairs is not None
            return ThreeP2Cert(result.pairs), steps
        assert result.path is not None
        path = list(result.path)
        new_rank = (len(path), _dominated_count(g, path))
        if not new_rank > rank:
            raise RuntimeError("internal error: step made no progress")
        rank = new_rank
