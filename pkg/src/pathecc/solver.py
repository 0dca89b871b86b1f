"""Certifying search for paths of low eccentricity.

solve(g, k) returns one of two certificates: a path whose eccentricity is
provably below k (the bound is re-established by a fresh breadth-first
pass before returning), or an annotated obstruction embedding a claw,
triangle, or center shape whose three legs each carry k vertices.  The
obstruction is validated edge by edge before it is handed back; a
validation failure is raised as an internal error, never swallowed.

Every outer iteration either terminates or covers at least one previously
uncovered vertex, so the outer loop runs at most n times.  All tie-breaks
are least-id, making runs bit-for-bit reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Collection, Sequence

import numpy as np

from . import graph as graph_mod
from . import patterns
from .graph import Graph
from .patterns import SolverWitness, StmWitness


@dataclass(frozen=True)
class PathCert:
    """A path together with its independently recomputed eccentricity."""

    k: int
    path: tuple[int, ...]
    eccentricity: int

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "path",
            "k": self.k,
            "path": list(self.path),
            "eccentricity": self.eccentricity,
        }


@dataclass(frozen=True)
class WitnessCert:
    """An obstruction whose presence forces every path to eccentricity >= k."""

    k: int
    witness: SolverWitness

    def to_json(self) -> dict[str, Any]:
        obj = {"kind": "witness"}
        obj.update(self.witness.to_json())
        return obj


@dataclass(frozen=True)
class SolveStats:
    outer_iterations: int
    peak_path_len: int


def certificate_from_json(obj: dict[str, Any]) -> PathCert | WitnessCert:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("certificate must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "path":
        try:
            return PathCert(
                k=int(obj["k"]),
                path=tuple(int(v) for v in obj["path"]),
                eccentricity=int(obj["eccentricity"]),
            )
        except KeyError as exc:
            raise ValueError(f"path certificate is missing field {exc}") from exc
    if kind == "witness":
        witness = SolverWitness.from_json(obj)
        return WitnessCert(k=witness.k, witness=witness)
    raise ValueError(f"unknown certificate kind {kind!r}")


def check_certificate(g: Graph, cert: Any) -> tuple[bool, str]:
    """Re-verify a certificate against the graph from scratch."""
    if isinstance(cert, dict):
        cert = certificate_from_json(cert)
    if isinstance(cert, PathCert):
        try:
            graph_mod.check_path(g, cert.path)
        except ValueError as exc:
            return False, f"invalid path: {exc}"
        try:
            ecc = graph_mod.path_eccentricity_of(g, cert.path)
        except ValueError as exc:
            return False, str(exc)
        if ecc != cert.eccentricity:
            return False, "eccentricity mismatch"
        if ecc >= cert.k:
            return False, f"eccentricity {ecc} is not below k={cert.k}"
        return True, (
            f"path certificate valid: {len(cert.path)} vertices, "
            f"eccentricity {ecc} < {cert.k}"
        )
    if isinstance(cert, WitnessCert):
        violation = patterns.validate_solver_witness(g, cert.witness, cert.k)
        if violation is not None:
            return False, f"witness invalid: {violation}"
        return True, f"witness certificate valid: class {cert.witness.cls}, k={cert.k}"
    raise ValueError(f"not a certificate: {type(cert).__name__}")


# ---------------------------------------------------------------------------
# Constructive search for a claw / triangle / center core


def _guided_path(
    g: Graph, allowed: set[int], source: int, targets: set[int]
) -> list[int] | None:
    """Shortest path from source to the nearest target inside ``allowed``.

    Deterministic: level-synchronous with sorted frontiers, so parents are
    least-id and the reached target is the least id at minimum distance.
    """
    if source in targets:
        return [source]
    dist = {source: 0}
    parent: dict[int, int] = {}
    frontier = [source]
    found = None
    while frontier and found is None:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w in allowed and w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    nxt.append(w)
        nxt = sorted(set(nxt))
        hits = [w for w in nxt if w in targets]
        if hits:
            found = hits[0]
        frontier = nxt
    if found is None:
        return None
    chain = [found]
    while chain[-1] != source:
        chain.append(parent[chain[-1]])
    chain.reverse()
    return chain


def _connected_set(g: Graph, vs: set[int]) -> bool:
    start = min(vs)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w in vs and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen == vs


def _gated(g: Graph, witness: StmWitness) -> StmWitness:
    violation = patterns.classify_stm(g, witness)
    if violation is not None:
        raise RuntimeError(f"internal validation failure: {violation}")
    return witness


def stm_construct(
    g: Graph, extremities: Collection[int], candidates: Collection[int]
) -> StmWitness:
    """Build a claw/triangle/center core with the given three extremities.

    The three extremities must be pairwise nonadjacent, disjoint from the
    candidate set, and each must have a neighbor among the candidates; the
    candidates must induce a connected subgraph.  The construction only
    ever looks at candidate and extremity vertices, maintains an induced
    path between two extremities, and pulls it toward the third until one
    of the three shapes appears.  The distance from the third extremity to
    the path interior drops on every rewiring, so at most n rounds run,
    each a breadth-first pass: O(n(n+m)) overall.  Every returned shape is
    re-checked vertex by vertex first.
    """
    ext = tuple(extremities)
    if len(ext) != 3 or len(set(ext)) != 3:
        raise ValueError(
            "stm_construct precondition violated: need three distinct extremities"
        )
    cand = set(candidates)
    if not cand:
        raise ValueError("stm_construct precondition violated: empty candidate set")
    if cand & set(ext):
        raise ValueError(
            "stm_construct precondition violated: candidates overlap the extremities"
        )
    lo, mid, hi = sorted(ext)
    for p, q in ((lo, mid), (lo, hi), (mid, hi)):
        if g.has_edge(p, q):
            raise ValueError(
                f"stm_construct precondition violated: extremities {p} and {q} are adjacent"
            )
    for e in ext:
        if not any(w in cand for w in g.adj[e]):
            raise ValueError(
                f"stm_construct precondition violated: extremity {e} has no "
                "neighbor in the candidate set"
            )
    if not _connected_set(g, cand):
        raise ValueError(
            "stm_construct precondition violated: candidate set is not connected"
        )

    pole = hi
    q_path = _guided_path(g, cand | {lo, mid}, lo, {mid})
    if q_path is None:
        raise RuntimeError(
            "internal error: extremities not linked through the candidate set"
        )
    h_allowed = cand | {pole}
    prev_phi: int | None = None

    for _ in range(g.n + 2):
        a, b = q_path[0], q_path[-1]
        contacts = [q for q in q_path if g.has_edge(pole, q)]
        if len(contacts) >= 2:
            return _gated(g, patterns.stm_m(q_path, pole))
        if len(contacts) == 1:
            i = q_path.index(contacts[0])
            arms = (tuple(reversed(q_path[:i])), tuple(q_path[i + 1:]), (pole,))
            return _gated(g, patterns.stm_s(q_path[i], arms))

        interior = set(q_path[1:-1])
        reach = _guided_path(g, h_allowed, pole, interior)
        assert reach is not None, "pole lost contact with the path interior"
        phi = len(reach) - 1
        assert phi >= 2, "adjacent pole slipped past the contact check"
        if prev_phi is not None and phi >= prev_phi:
            raise RuntimeError("internal error: progress measure failed to decrease")
        prev_phi = phi

        adj_a = [i for i in range(1, phi) if g.has_edge(reach[i], a)]
        adj_b = [i for i in range(1, phi) if g.has_edge(reach[i], b)]

        if not adj_a and not adj_b:
            last = reach[phi - 1]
            hooks = [j for j, q in enumerate(q_path) if g.has_edge(last, q)]
            j1, j2 = hooks[0], hooks[-1]
            assert 1 <= j1 and j2 <= len(q_path) - 2, "hooks strayed onto the ends"
            if j1 == j2:
                arms = (
                    tuple(reversed(q_path[:j1])),
                    tuple(q_path[j1 + 1:]),
                    tuple(reversed(reach[:phi])),
                )
                return _gated(g, patterns.stm_s(q_path[j1], arms))
            if j2 == j1 + 1:
                triangle = (q_path[j1], q_path[j2], last)
                arms = (
                    tuple(reversed(q_path[:j1])),
                    tuple(q_path[j2 + 1:]),
                    tuple(reversed(reach[:phi - 1])),
                )
                return _gated(g, patterns.stm_t(triangle, arms))
            q_path = q_path[:j1 + 1] + [last] + q_path[j2:]
            continue

        shared = sorted(set(adj_a) & set(adj_b))
        if shared:
            q_path = [a, reach[shared[0]], b]
            continue

        if adj_a and adj_b:
            marks = sorted(set(adj_a) | set(adj_b))
            a_side = set(adj_a)
            for mp, mq in zip(marks, marks[1:]):
                if (mp in a_side) != (mq in a_side):
                    seg = reach[mp:mq + 1]
                    middle = seg if mp in a_side else list(reversed(seg))
                    q_path = [a] + middle + [b]
                    break
            else:
                raise RuntimeError(
                    "internal error: no boundary pair among the side contacts"
                )
            continue

        if adj_b:
            q_path = list(reversed(q_path))
            a, b = b, a
            adj_a = adj_b
        i_star = max(adj_a)
        last = reach[phi - 1]
        hooks = [j for j, q in enumerate(q_path) if g.has_edge(last, q)]
        j2 = hooks[-1]
        assert 1 <= j2 <= len(q_path) - 2, "far hook strayed onto the ends"
        if j2 >= 2:
            q_path = [a] + reach[i_star:phi] + q_path[j2:]
            continue
        core = [pole] + reach[1:phi] + q_path[1:]
        return _gated(g, patterns.stm_m(core, a))

    raise RuntimeError("internal error: core construction failed to terminate")


# ---------------------------------------------------------------------------
# The outer covering loop


def _reached_count(g: Graph, path: Sequence[int], k: int) -> int:
    return graph_mod.bfs_tree(g, path, cap=k - 1)[2]


def _endpoint_arm(g: Graph, path: list[int], k: int, head: bool) -> tuple[int, ...]:
    """The forced k-vertex arm hanging off one irremovable endpoint.

    The least vertex covered by the path but not by the path minus its
    endpoint sits at distance exactly k-1 from that endpoint and at least
    k from the rest, so the shortest route between them leaves the path
    immediately and stays clear of it.
    """
    endpoint = path[0] if head else path[-1]
    rest = path[1:] if head else path[:-1]
    dist_full = graph_mod.bfs_tree(g, path, cap=k - 1)[0]
    dist_rest = graph_mod.bfs_tree(g, rest, cap=k - 1)[0]
    lost = np.flatnonzero((np.asarray(dist_full) >= 0) & (np.asarray(dist_rest) < 0))
    assert lost.size, "endpoint was removable after all"
    outer = int(lost[0])
    dist_o, parent_o, _ = graph_mod.bfs_tree(g, [outer], cap=k - 1)
    assert int(dist_o[endpoint]) == k - 1, "lost vertex not at the forced distance"
    arm = [endpoint]
    while arm[-1] != outer:
        arm.append(int(parent_o[arm[-1]]))
    assert len(arm) == k
    return tuple(arm)


def _shrink(
    g: Graph, path: list[int], k: int
) -> tuple[list[int], tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Strip removable endpoints, then read off both forced arms.

    Removal keeps the covered set intact (counts suffice: the smaller
    source set covers a subset, and equal size means equal set).  A path
    shrunk to one vertex carries no arms.
    """
    cur = list(path)
    target = _reached_count(g, cur, k)
    while len(cur) > 1:
        if _reached_count(g, cur[1:], k) == target:
            cur = cur[1:]
            continue
        if _reached_count(g, cur[:-1], k) == target:
            cur = cur[:-1]
            continue
        break
    if len(cur) == 1:
        return cur, None
    return cur, (
        _endpoint_arm(g, cur, k, head=True),
        _endpoint_arm(g, cur, k, head=False),
    )


def _far_arm(g: Graph, path: list[int], k: int) -> list[int]:
    """k vertices walking inward from the least uncovered vertex at distance k."""
    dist, parent, _ = graph_mod.bfs_tree(g, path, cap=k)
    at_k = np.flatnonzero(np.asarray(dist) == k)
    assert at_k.size, "no vertex at the boundary distance"
    arm = [int(at_k[0])]
    for _ in range(k - 1):
        arm.append(int(parent[arm[-1]]))
    return arm


def _extend_or_three_pk(
    g: Graph,
    path: list[int],
    arms: tuple[tuple[int, ...], tuple[int, ...]] | None,
    arm_x: list[int],
) -> list[int] | None:
    """Splice the far arm in, or report that the three arms sit apart.

    Returns the strictly larger path, or None when the far arm and the two
    endpoint arms are pairwise disjoint with no edges between them.  The
    splice cases are scanned in a fixed order (far-arm index ascending,
    head arm before tail arm, arm index ascending), so the outcome is
    deterministic.  Every returned path contains all old path vertices
    plus the far vertex.
    """
    if arms is None:
        assert g.has_edge(arm_x[-1], path[0])
        return arm_x + path
    ext_u, ext_v = arms
    set_u, set_v = set(ext_u), set(ext_v)
    assert not set_u & set_v, "endpoint arms intersect"

    # First: the far arm runs into an endpoint arm.
    for i, q in enumerate(arm_x):
        if q in set_u:
            j = ext_u.index(q)
            assert j >= 1
            return arm_x[:i + 1] + [ext_u[t] for t in range(j - 1, -1, -1)] + path[1:]
        if q in set_v:
            j = ext_v.index(q)
            assert j >= 1
            rev = list(reversed(path))
            return arm_x[:i + 1] + [ext_v[t] for t in range(j - 1, -1, -1)] + rev[1:]

    # Second: an edge from the far arm to an endpoint arm.
    for i, q in enumerate(arm_x):
        for arm, along in ((ext_u, path), (ext_v, list(reversed(path)))):
            for j, e in enumerate(arm):
                if g.has_edge(q, e):
                    return (
                        arm_x[:i + 1]
                        + [arm[t] for t in range(j, -1, -1)]
                        + along[1:]
                    )

    # Third: an edge between the two endpoint arms; rethread through it.
    y = arm_x[-1]
    for j1, uu in enumerate(ext_u):
        for j2, vv in enumerate(ext_v):
            if g.has_edge(uu, vv):
                w = min(p for p in path if g.has_edge(y, p))
                idx_w = path.index(w)
                return (
                    arm_x
                    + path[idx_w:]
                    + [ext_v[t] for t in range(1, j2 + 1)]
                    + [ext_u[t] for t in range(j1, 0, -1)]
                    + path[:idx_w]
                )

    return None


_ROTATION_STATE_LIMIT = 4096


def _rotation_repair(g: Graph, path: list[int]) -> list[int] | None:
    """Insertion and end-rotation search for one more vertex (radius-0 runs).

    Breadth-first over end-rotated variants of the path, each checked for
    an insertable outside vertex or an extendable end.  Bounded, ordered
    scans keep it deterministic; None means no variant grew within the
    state budget.
    """
    start = tuple(path)
    seen = {min(start, start[::-1])}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        cset = set(cur)
        for z in range(g.n):
            if z in cset:
                continue
            nb = g.adj_sets[z]
            for i in range(len(cur) - 1):
                if cur[i] in nb and cur[i + 1] in nb:
                    return list(cur[:i + 1]) + [z] + list(cur[i + 1:])
        for orient in (cur, cur[::-1]):
            for w in g.adj[orient[-1]]:
                if w not in cset:
                    return list(orient) + [w]
        if len(seen) >= _ROTATION_STATE_LIMIT:
            continue
        for orient in (cur, cur[::-1]):
            tail = orient[-1]
            for i in range(len(orient) - 2):
                if g.has_edge(tail, orient[i]):
                    rotated = orient[:i + 1] + orient[i + 1:][::-1]
                    key = min(rotated, rotated[::-1])
                    if key not in seen:
                        seen.add(key)
                        queue.append(rotated)
    return None


def _assemble_witness(
    g: Graph,
    path: list[int],
    arms: tuple[tuple[int, ...], tuple[int, ...]],
    arm_x: list[int],
    k: int,
) -> SolverWitness:
    assert len(path) >= 3, "a two-vertex path cannot host three separated arms"
    u, v = path[0], path[-1]
    y = arm_x[-1]
    core = stm_construct(g, (u, v, y), path[1:-1])
    ext_for = {
        u: tuple(arms[0]),
        v: tuple(arms[1]),
        y: tuple(reversed(arm_x)),
    }
    cls = {"S": patterns.CLASS_SK, "T": patterns.CLASS_TK, "M": patterns.CLASS_MK}[
        core.cls
    ]
    witness = SolverWitness(
        cls=cls,
        k=k,
        extremities=core.extremities,
        core=core,
        extensions=tuple(ext_for[e] for e in core.extremities),
    )
    witness = patterns.attach_embedded(g, witness, k)
    violation = patterns.validate_solver_witness(g, witness, k)
    if violation is not None:
        raise RuntimeError(f"internal validation failure: {violation}")
    return witness


TraceHook = Callable[[dict[str, Any]], None]


def _emit(trace: TraceHook | None, iteration: int, path_len: int, covered: int, action: str) -> None:
    if trace is not None:
        trace(
            {
                "iteration": iteration,
                "path_len": path_len,
                "covered": covered,
                "action": action,
            }
        )


def solve_detailed(
    g: Graph, k: int, trace: TraceHook | None = None
) -> tuple[PathCert | WitnessCert, SolveStats]:
    """Run the covering loop, returning the certificate plus run counters."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if g.n == 0:
        raise ValueError("solve needs a nonempty graph")
    if not graph_mod.is_connected(g):
        raise ValueError("solve needs a connected graph")

    path = [0]
    peak = 1
    outer = 0
    while True:
        outer += 1
        if outer > g.n + 1:
            raise RuntimeError("internal error: outer loop exceeded its vertex bound")
        covered = _reached_count(g, path, k)
        if covered == g.n:
            ecc = graph_mod.path_eccentricity_of(g, path)
            if ecc >= k:
                raise RuntimeError(
                    f"internal error: covered path has eccentricity {ecc} >= {k}"
                )
            _emit(trace, outer, len(path), covered, "path")
            return PathCert(k, tuple(path), ecc), SolveStats(outer, peak)

        tight, arms = _shrink(g, path, k)
        arm_x = _far_arm(g, tight, k)
        extended = _extend_or_three_pk(g, tight, arms, arm_x)
        if extended is not None:
            path = extended
            peak = max(peak, len(path))
            _emit(trace, outer, len(path), covered, "extend")
            continue

        if k == 1:
            repaired = _rotation_repair(g, tight)
            if repaired is not None:
                path = repaired
                peak = max(peak, len(path))
                _emit(trace, outer, len(path), covered, "repair")
                continue

        assert arms is not None
        witness = _assemble_witness(g, tight, arms, arm_x, k)
        _emit(trace, outer, len(tight), covered, "witness")
        return WitnessCert(k, witness), SolveStats(outer, peak)


def solve(g: Graph, k: int, trace: TraceHook | None = None) -> PathCert | WitnessCert:
    """Certified outcome: a path with eccentricity < k, or an obstruction."""
    return solve_detailed(g, k, trace)[0]
