"""Desk-scale exact references and deterministic random instance generators.

Every polynomial routine in the library is cross-checked against the
oracles here: exhaustive path-eccentricity search, bitmask longest-path
dynamic programming, induced-pattern backtracking, brute *-consecutive-ones
ordering search, k-asteroidal-triple scanning, and subset-enumeration
search for S/T/M witnesses.  Oracles are deliberately written against the
plain adjacency lists, independent of the BFS kernel used by the fast
code, so the two routes share no machinery.

Generators use a counter-based PRNG (splitmix64's finalizer over a
seed + index stream) so that a (spec, seed) pair names one exact graph,
reproducible across runs, platforms, and languages.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Any, Collection, Iterable, Sequence

import numpy as np

from . import graph as graph_mod
from . import patterns
from .graph import Graph
from .patterns import FamilySpec, SolverWitness, StmWitness


class CapExceeded(Exception):
    """An oracle was asked to exceed its configured size cap."""


@dataclass(frozen=True)
class OracleCaps:
    """Size caps for the exhaustive oracles; conservative defaults."""

    path_ecc: int = 12
    pattern: int = 12
    c1p: int = 9
    stm_closed_neighborhood: int = 13
    longest_path: int = 20


DEFAULT_CAPS = OracleCaps()


def _apsp(g: Graph) -> list[list[int]]:
    """All-pairs shortest paths by per-vertex BFS; -1 = unreachable."""
    table = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if dist[w] < 0:
                        dist[w] = d + 1
                        nxt.append(w)
            frontier = nxt
            d += 1
        table.append(dist)
    return table


# ---------------------------------------------------------------------------
# brute_path_eccentricity


def brute_path_eccentricity(g: Graph, cap: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact minimum path eccentricity with an optimal path.

    Exhaustive DFS over simple vertex sequences in lexicographic order;
    the first path achieving each strictly better value is kept, so the
    returned path is the lexicographically least optimal one.  A branch
    is discarded only when no extension of it can beat the current best
    (distances to the path plus everything still reachable from its tail
    bound every extension from below), which keeps the search exhaustive.
    Finding eccentricity 0 returns immediately.
    """
    limit = DEFAULT_CAPS.path_ecc if cap is None else cap
    if g.n > limit:
        raise CapExceeded(f"graph has {g.n} vertices, oracle cap is {limit}")
    if g.n == 0:
        raise ValueError("path eccentricity needs a nonempty graph")
    if not graph_mod.is_connected(g):
        raise ValueError("path eccentricity oracle needs a connected graph")

    n = g.n
    dist_t = _apsp(g)
    adjbits = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1

    best_ecc = n
    best_path: list[int] = []
    found_zero = False

    def visit(path: list[int], pmask: int, dcur: list[int]) -> None:
        nonlocal best_ecc, best_path, found_zero
        ecc = max(dcur)
        if ecc < best_ecc:
            best_ecc = ecc
            best_path = path.copy()
            if ecc == 0:
                found_zero = True
                return
        tail = path[-1]
        allowed = (full & ~pmask) | (1 << tail)
        reach = 1 << tail
        frontier = reach
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adjbits[b.bit_length() - 1]
            nxt &= allowed & ~reach
            reach |= nxt
            frontier = nxt
        ext = reach & ~(1 << tail)
        dmin = list(dcur)
        e = ext
        while e:
            b = e & -e
            e ^= b
            row = dist_t[b.bit_length() - 1]
            dmin = [a if a < c else c for a, c in zip(dmin, row)]
        if max(dmin) >= best_ecc:
            return
        for w in g.adj[tail]:
            if not (pmask >> w) & 1:
                dnew = [a if a < c else c for a, c in zip(dcur, dist_t[w])]
                path.append(w)
                visit(path, pmask | (1 << w), dnew)
                path.pop()
                if found_zero:
                    return

    for s in range(n):
        visit([s], 1 << s, list(dist_t[s]))
        if found_zero:
            break
    return best_ecc, tuple(best_path)


def brute_longest_path(g: Graph, cap: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact longest path (vertex count, path) via subset dynamic programming.

    Completely independent of the DFS enumeration in
    brute_path_eccentricity: states are (vertex set, endpoint) pairs.
    Deterministic: the numerically smallest optimal vertex set is chosen,
    then the path is rebuilt through least-id endpoints.
    """
    limit = DEFAULT_CAPS.longest_path if cap is None else cap
    if g.n > limit:
        raise CapExceeded(f"graph has {g.n} vertices, oracle cap is {limit}")
    if g.n == 0:
        raise ValueError("longest path needs a nonempty graph")
    n = g.n
    adjbits = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    ends = [0] * (1 << n)
    for v in range(n):
        ends[1 << v] = 1 << v
    best_size = 1
    best_mask = 1
    for s in range(1, 1 << n):
        eb = ends[s]
        if not eb:
            continue
        size = s.bit_count()
        if size > best_size:
            best_size = size
            best_mask = s
        f = eb
        while f:
            b = f & -f
            f ^= b
            cand = adjbits[b.bit_length() - 1] & ~s
            c = cand
            while c:
                cb = c & -c
                c ^= cb
                ends[s | cb] |= cb
        del eb
    path = []
    s = best_mask
    vb = ends[s] & -ends[s]
    v = vb.bit_length() - 1
    path.append(v)
    while s != 1 << v:
        prev = ends[s ^ (1 << v)] & adjbits[v]
        s ^= 1 << v
        pb = prev & -prev
        v = pb.bit_length() - 1
        path.append(v)
    return best_size, tuple(path)


# ---------------------------------------------------------------------------
# find_induced


def find_induced(
    host: Graph, pattern: Graph, cap: int | None = None
) -> dict[int, int] | None:
    """An induced embedding of ``pattern`` into ``host``, or None.

    The mapping preserves adjacency and non-adjacency.  Pattern vertices
    are placed in degree-descending (then id-ascending) order; host
    candidates are tried in ascending id order, so the result is
    deterministic.
    """
    limit = DEFAULT_CAPS.pattern if cap is None else cap
    if pattern.n > limit:
        raise CapExceeded(f"pattern has {pattern.n} vertices, oracle cap is {limit}")
    if pattern.n == 0:
        return {}
    if pattern.n > host.n:
        return None
    order = sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        pv = order[pos]
        for hv in range(host.n):
            if hv in used or host.degree(hv) < pattern.degree(pv):
                continue
            ok = True
            for prev_p, prev_h in mapping.items():
                if pattern.has_edge(pv, prev_p) != host.has_edge(hv, prev_h):
                    ok = False
                    break
            if ok:
                mapping[pv] = hv
                used.add(hv)
                if place(pos + 1):
                    return True
                del mapping[pv]
                used.discard(hv)
        return False

    return dict(mapping) if place(0) else None


# ---------------------------------------------------------------------------
# brute_star_c1p


def brute_star_c1p(g: Graph, cap: int | None = None) -> tuple[int, ...] | None:
    """A vertex ordering making N(v) or N[v] consecutive for every v, or None.

    Orderings are enumerated lexicographically with no canonicalization.
    The per-vertex open/closed choice is independent; a branch is cut as
    soon as some vertex has both variants irreparably split (members on
    both sides of a placed non-member can never become consecutive, since
    positions only grow).  Returns the lexicographically least ordering.
    """
    limit = DEFAULT_CAPS.c1p if cap is None else cap
    if g.n > limit:
        raise CapExceeded(f"graph has {g.n} vertices, oracle cap is {limit}")
    n = g.n
    if n == 0:
        return ()
    open_masks = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    masks = [open_masks, [open_masks[v] | (1 << v) for v in range(n)]]
    # state per (vertex, variant): 0 = no member placed, 1 = inside the
    # member run, 2 = a non-member closed the run, 3 = split beyond repair
    state = [[0, 0] for _ in range(n)]
    perm: list[int] = []
    used = 0

    def extend() -> bool:
        nonlocal used
        if len(perm) == n:
            return True
        for w in range(n):
            if (used >> w) & 1:
                continue
            changed: list[tuple[int, int, int]] = []
            dead = False
            for v in range(n):
                for t in (0, 1):
                    s = state[v][t]
                    if s == 3:
                        continue
                    if (masks[t][v] >> w) & 1:
                        ns = 1 if s < 2 else 3
                    else:
                        ns = 2 if s == 1 else s
                    if ns != s:
                        changed.append((v, t, s))
                        state[v][t] = ns
                if state[v][0] == 3 and state[v][1] == 3:
                    dead = True
                    break
            if not dead:
                perm.append(w)
                used |= 1 << w
                if extend():
                    return True
                perm.pop()
                used ^= 1 << w
            for v, t, s in reversed(changed):
                state[v][t] = s
        return False

    return tuple(perm) if extend() else None


# ---------------------------------------------------------------------------
# is_k_at_free


def is_k_at_free(g: Graph, k: int):
    """True, or the first lexicographic independent triple that is a k-AT.

    A triple is a k-AT when, for each member v, the other two lie in one
    component of the graph minus v's closed radius-k ball.  Callers should
    test the result with ``is True``; an offending triple is itself truthy.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = g.n
    dist_t = _apsp(g)

    def connected_avoiding(src: int, dst: int, banned: set[int]) -> bool:
        if src in banned or dst in banned:
            return False
        seen = {src}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w == dst:
                        return True
                    if w not in seen and w not in banned:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return src == dst

    for a in range(n):
        for b in range(a + 1, n):
            if g.has_edge(a, b):
                continue
            for c in range(b + 1, n):
                if g.has_edge(a, c) or g.has_edge(b, c):
                    continue
                is_at = True
                for v, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
                    banned = {u for u in range(n) if 0 <= dist_t[v][u] <= k}
                    if not connected_avoiding(o1, o2, banned):
                        is_at = False
                        break
                if is_at:
                    return (a, b, c)
    return True


# ---------------------------------------------------------------------------
# brute_stm_search


def _degrees_within(g: Graph, vs: set[int]) -> dict[int, int]:
    return {v: sum(1 for u in g.adj[v] if u in vs) for v in vs}


def _connected_within(g: Graph, vs: set[int]) -> bool:
    if not vs:
        return True
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


def _walk_arm(g: Graph, vs: set[int], start: int, first: int) -> list[int]:
    """Follow the unique degree-<=2 chain from ``start`` into ``first``."""
    arm = [first]
    prev, cur = start, first
    while True:
        nxts = [u for u in g.adj[cur] if u in vs and u != prev]
        if not nxts:
            return arm
        prev, cur = cur, nxts[0]
        arm.append(cur)


def _candidate_s(g: Graph, vs: set[int], iset: set[int]) -> StmWitness | None:
    deg = _degrees_within(g, vs)
    edges = sum(deg.values()) // 2
    if edges != len(vs) - 1 or not _connected_within(g, vs):
        return None
    deg3 = [v for v, d in deg.items() if d == 3]
    if len(deg3) != 1 or any(d > 3 for d in deg.values()):
        return None
    branch = deg3[0]
    if {v for v, d in deg.items() if d == 1} != iset or branch in iset:
        return None
    arms = [_walk_arm(g, vs, branch, nb) for nb in g.adj[branch] if nb in vs]
    if len(arms) != 3:
        return None
    arms.sort(key=lambda a: a[-1])
    return patterns.stm_s(branch, arms)


def _candidate_t(g: Graph, vs: set[int], iset: set[int]) -> StmWitness | None:
    deg = _degrees_within(g, vs)
    edges = sum(deg.values()) // 2
    if edges != len(vs) or not _connected_within(g, vs):
        return None
    deg3 = sorted(v for v, d in deg.items() if d == 3)
    if len(deg3) != 3 or any(d > 3 for d in deg.values()):
        return None
    t0, t1, t2 = deg3
    if not (g.has_edge(t0, t1) and g.has_edge(t0, t2) and g.has_edge(t1, t2)):
        return None
    if {v for v, d in deg.items() if d == 1} != iset or iset & set(deg3):
        return None
    tri_set = set(deg3)
    arms = []
    for t in deg3:
        pendant = [nb for nb in g.adj[t] if nb in vs and nb not in tri_set]
        if len(pendant) != 1:
            return None
        arms.append(_walk_arm(g, vs, t, pendant[0]))
    order = sorted(range(3), key=lambda i: arms[i][-1])
    triangle = tuple(deg3[i] for i in order)
    return patterns.stm_t(triangle, [arms[i] for i in order])


def _candidate_m(g: Graph, vs: set[int], iset: set[int]) -> StmWitness | None:
    for center in sorted(iset):
        rest = vs - {center}
        others = sorted(iset - {center})
        deg = _degrees_within(g, rest)
        if len(rest) < 2 or any(d > 2 for d in deg.values()):
            continue
        if sum(deg.values()) // 2 != len(rest) - 1 or not _connected_within(g, rest):
            continue
        tips = sorted(v for v, d in deg.items() if d <= 1)
        if tips != others:
            continue
        seq = _walk_arm(g, rest, -1, others[0])
        if len(seq) != len(rest) or seq[-1] != others[1]:
            continue
        if sum(1 for u in g.adj[center] if u in rest) < 2:
            continue
        return patterns.stm_m(seq, center)
    return None


def brute_stm_search(
    g: Graph, extremities: Collection[int], candidates: Collection[int], cap: int | None = None
) -> StmWitness:
    """Minimum-cardinality S/T/M witness over subsets of ``candidates``.

    Subsets are enumerated by size, then lexicographically; the witness's
    extremities are exactly the given three vertices.  The chosen subset
    plus the extremities must induce one of the three shapes; the result
    is re-checked by classify_stm before being returned.
    """
    limit = DEFAULT_CAPS.stm_closed_neighborhood if cap is None else cap
    iset = set(extremities)
    cset = sorted(set(candidates))
    if len(iset) != 3:
        raise ValueError("exactly three extremities required")
    ext = sorted(iset)
    for a, b in itertools.combinations(ext, 2):
        if g.has_edge(a, b):
            raise ValueError(f"extremities {a} and {b} are adjacent")
    if iset & set(cset):
        raise ValueError("extremities must be disjoint from the candidate set")
    if not _connected_within(g, set(cset)):
        raise ValueError("candidate set is not connected")
    neighborhood = set(cset)
    for v in cset:
        neighborhood.update(g.adj[v])
    if not iset <= neighborhood:
        raise ValueError("every extremity needs a neighbor in the candidate set")
    if len(neighborhood | set(cset)) > limit:
        raise CapExceeded(
            f"closed neighborhood has {len(neighborhood)} vertices, oracle cap is {limit}"
        )
    for size in range(len(cset) + 1):
        for chosen in itertools.combinations(cset, size):
            vs = set(chosen) | iset
            witness = (
                _candidate_s(g, vs, iset)
                or _candidate_t(g, vs, iset)
                or _candidate_m(g, vs, iset)
            )
            if witness is not None:
                violation = patterns.classify_stm(g, witness)
                if violation is not None:
                    raise RuntimeError(
                        f"internal error: exhaustive witness fails its own check: {violation}"
                    )
                return witness
    raise RuntimeError(
        "no S/T/M witness found although the preconditions hold; this is a bug"
    )


# ---------------------------------------------------------------------------
# Counter-based PRNG


MASK64 = (1 << 64) - 1
_PHI64 = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """The splitmix64 finalizer: a 64-bit bijective hash."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MIX_A) & MASK64
    x ^= x >> 27
    x = (x * _MIX_B) & MASK64
    x ^= x >> 31
    return x


@dataclass(frozen=True)
class CounterRng:
    """Counter-addressable random values: value(i) depends only on (seed, i).

    Integer-only math, so any language reproduces the same stream.
    """

    seed: int

    def value(self, index: int) -> int:
        return mix64((self.seed + (index + 1) * _PHI64) & MASK64)

    def below(self, index: int, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.value(index) % bound


def _mix64_vec(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = x.copy()
        x ^= x >> np.uint64(30)
        x *= np.uint64(_MIX_A)
        x ^= x >> np.uint64(27)
        x *= np.uint64(_MIX_B)
        x ^= x >> np.uint64(31)
    return x


def _threshold(p: float) -> int:
    return min(max(int(p * 2.0**64), 0), 1 << 64)


_VECTOR_MIN_PAIRS = 4096
_GNP_RETRIES = 8


# ---------------------------------------------------------------------------
# GenSpec and gen_random


GEN_KINDS = frozenset({"GNP_CONNECTED", "PATTERN_FREE", "SPLIT", "MK_INSTANCE"})


@dataclass(frozen=True)
class GenSpec:
    """Recipe plus seed for one deterministic random graph."""

    kind: str
    seed: int = 0
    n: int | None = None
    p: float | None = None
    density: float | None = None
    k: int | None = None
    core_len: int | None = None
    center_degree: int | None = None
    base: "GenSpec | None" = None
    forbidden: tuple[FamilySpec, ...] = ()
    max_rejections: int = 64

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {"kind": self.kind, "seed": self.seed}
        for name in ("n", "p", "density", "k", "core_len", "center_degree"):
            val = getattr(self, name)
            if val is not None:
                obj[name] = val
        if self.base is not None:
            obj["base"] = self.base.to_json()
        if self.forbidden:
            obj["forbidden"] = [f.to_json() for f in self.forbidden]
        if self.kind == "PATTERN_FREE":
            obj["max_rejections"] = self.max_rejections
        return obj

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "GenSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("generator spec must be an object with a 'kind' field")
        kind = obj["kind"]
        if kind not in GEN_KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        base = cls.from_json(obj["base"]) if "base" in obj else None
        forbidden = tuple(FamilySpec.from_json(f) for f in obj.get("forbidden", []))
        return cls(
            kind=kind,
            seed=int(obj.get("seed", 0)),
            n=obj.get("n"),
            p=obj.get("p"),
            density=obj.get("density"),
            k=obj.get("k"),
            core_len=obj.get("core_len"),
            center_degree=obj.get("center_degree"),
            base=base,
            forbidden=forbidden,
            max_rejections=int(obj.get("max_rejections", 64)),
        )


def expand_manifest(entries: Iterable[dict[str, Any]]) -> list[GenSpec]:
    """Flatten a corpus manifest: [{"spec": {...}, "seeds": [...]}, ...]."""
    out = []
    for entry in entries:
        spec = GenSpec.from_json(entry["spec"])
        for seed in entry["seeds"]:
            out.append(replace(spec, seed=int(seed)))
    return out


def _pair_edges_by_threshold(
    n: int, thr: int, rng: CounterRng, base_index: int, pairs: Sequence[tuple[int, int]]
) -> list[tuple[int, int]]:
    """Scalar route: keep (i, j) iff the pair's counter value clears thr."""
    if thr <= 0:
        return []
    if thr >= 1 << 64:
        return list(pairs)
    return [(i, j) for i, j in pairs if rng.value(base_index + i * n + j) < thr]


def _pair_edges_by_threshold_vec(
    n: int, thr: int, rng: CounterRng, base_index: int, ii: np.ndarray, jj: np.ndarray
) -> list[tuple[int, int]]:
    """Vector route; must agree with the scalar route bit for bit."""
    if thr <= 0:
        return []
    if thr >= 1 << 64:
        return list(zip(ii.tolist(), jj.tolist()))
    with np.errstate(over="ignore"):
        idx = (
            np.uint64(base_index)
            + ii.astype(np.uint64) * np.uint64(n)
            + jj.astype(np.uint64)
        )
        counters = np.uint64(rng.seed & MASK64) + (idx + np.uint64(1)) * np.uint64(
            _PHI64
        )
    vals = _mix64_vec(counters)
    mask = vals < np.uint64(thr)
    return list(zip(ii[mask].tolist(), jj[mask].tolist()))


def _gnp_edges(n: int, p: float, rng: CounterRng, base_index: int) -> list[tuple[int, int]]:
    thr = _threshold(p)
    total_pairs = n * (n - 1) // 2
    if total_pairs >= _VECTOR_MIN_PAIRS:
        edges: list[tuple[int, int]] = []
        rows_per_chunk = max(1, (1 << 21) // max(n, 1))
        for r0 in range(0, n, rows_per_chunk):
            r1 = min(n, r0 + rows_per_chunk)
            sizes = [n - 1 - i for i in range(r0, r1)]
            if sum(sizes) == 0:
                continue
            ii = np.repeat(np.arange(r0, r1, dtype=np.uint64), sizes)
            jj = np.concatenate(
                [np.arange(i + 1, n, dtype=np.uint64) for i in range(r0, r1)]
            )
            edges.extend(_pair_edges_by_threshold_vec(n, thr, rng, base_index, ii, jj))
        return edges
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _pair_edges_by_threshold(n, thr, rng, base_index, pairs)


def _components(g: Graph) -> list[list[int]]:
    """Connected components as sorted lists, ordered by least vertex."""
    seen: set[int] = set()
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w not in comp:
                        comp.add(w)
                        nxt.append(w)
            frontier = nxt
        seen |= comp
        comps.append(sorted(comp))
    return comps


def _gen_gnp_connected(spec: GenSpec) -> Graph:
    if spec.n is None or spec.n < 1:
        raise ValueError(f"GNP_CONNECTED requires n >= 1, got {spec.n}")
    if spec.p is None:
        raise ValueError("GNP_CONNECTED requires p")
    n = spec.n
    rng = CounterRng(spec.seed)
    g = None
    for attempt in range(_GNP_RETRIES):
        edges = _gnp_edges(n, spec.p, rng, attempt * n * n)
        g = Graph.from_edges(n, edges)
        if graph_mod.is_connected(g):
            return g
    assert g is not None
    comps = _components(g)
    edges = list(g.edges())
    base = _GNP_RETRIES * n * n
    for i in range(len(comps) - 1):
        a = comps[i][rng.below(base + 2 * i, len(comps[i]))]
        b = comps[i + 1][rng.below(base + 2 * i + 1, len(comps[i + 1]))]
        edges.append((a, b))
    return Graph.from_edges(n, edges)


def _gen_split(spec: GenSpec) -> Graph:
    if spec.n is None or spec.n < 1:
        raise ValueError(f"SPLIT requires n >= 1, got {spec.n}")
    if spec.density is None:
        raise ValueError("SPLIT requires density")
    n = spec.n
    h = max(1, n // 2)
    rng = CounterRng(spec.seed)
    thr = _threshold(spec.density)
    edges = [(i, j) for i in range(h) for j in range(i + 1, h)]
    cross_pairs = [(i, j) for i in range(h) for j in range(h, n)]
    if len(cross_pairs) >= _VECTOR_MIN_PAIRS:
        ii = np.repeat(np.arange(0, h, dtype=np.uint64), n - h)
        jj = np.tile(np.arange(h, n, dtype=np.uint64), h)
        cross = _pair_edges_by_threshold_vec(n, thr, rng, 0, ii, jj)
    else:
        cross = _pair_edges_by_threshold(n, thr, rng, 0, cross_pairs)
    edges.extend(cross)
    attached = [False] * (n - h)
    for i, j in cross:
        attached[j - h] = True
    base = n * n
    for t, j in enumerate(range(h, n)):
        if not attached[t]:
            edges.append((rng.below(base + t, h), j))
    return Graph.from_edges(n, edges)


def _gen_mk_instance(spec: GenSpec) -> tuple[Graph, SolverWitness]:
    if spec.k is None or spec.k < 1:
        raise ValueError(f"MK_INSTANCE requires k >= 1, got {spec.k}")
    if spec.core_len is None or spec.core_len < 4:
        raise ValueError(f"MK_INSTANCE requires core_len >= 4, got {spec.core_len}")
    interior = spec.core_len - 2
    if spec.center_degree is None or not 2 <= spec.center_degree <= interior:
        raise ValueError(
            f"MK_INSTANCE requires 2 <= center_degree <= {interior}, "
            f"got {spec.center_degree}"
        )
    k = spec.k
    t = spec.core_len
    center = t
    rng = CounterRng(spec.seed)
    edges = [(i, i + 1) for i in range(t - 1)]
    pool = list(range(1, t - 1))
    for i in range(spec.center_degree):
        edges.append((pool.pop(rng.below(i, len(pool))), center))
    nxt = t + 1
    extensions = []
    for anchor in (0, t - 1, center):
        arm = [anchor]
        for _ in range(k - 1):
            edges.append((arm[-1], nxt))
            arm.append(nxt)
            nxt += 1
        extensions.append(tuple(arm))
    g = Graph.from_edges(nxt, edges)
    core = patterns.stm_m(tuple(range(t)), center)
    witness = SolverWitness(
        cls=patterns.CLASS_MK,
        k=k,
        extremities=(0, t - 1, center),
        core=core,
        extensions=(extensions[0], extensions[1], extensions[2]),
    )
    witness = patterns.attach_embedded(g, witness, k)
    violation = patterns.validate_solver_witness(g, witness, k)
    if violation is not None:
        raise RuntimeError(f"internal error: canonical annotation invalid: {violation}")
    return g, witness


def _gen_pattern_free(spec: GenSpec) -> Graph:
    if spec.base is None:
        raise ValueError("PATTERN_FREE requires a base spec")
    if not spec.forbidden:
        raise ValueError("PATTERN_FREE requires a forbidden-family list")
    pats = [patterns.build_family(f) for f in spec.forbidden]
    rng = CounterRng(spec.seed)
    for attempt in range(spec.max_rejections):
        candidate = gen_random(replace(spec.base, seed=rng.value(attempt)))
        if all(find_induced(candidate, pat) is None for pat in pats):
            return candidate
    raise ValueError(
        f"rejection budget exhausted after {spec.max_rejections} attempts"
    )


def gen_annotated(spec: GenSpec) -> tuple[Graph, SolverWitness | None]:
    """Like gen_random, also returning the canonical witness when one exists."""
    if spec.kind == "GNP_CONNECTED":
        return _gen_gnp_connected(spec), None
    if spec.kind == "SPLIT":
        return _gen_split(spec), None
    if spec.kind == "MK_INSTANCE":
        return _gen_mk_instance(spec)
    if spec.kind == "PATTERN_FREE":
        return _gen_pattern_free(spec), None
    raise ValueError(f"unknown generator kind {spec.kind!r}")


def gen_random(spec: GenSpec) -> Graph:
    """The graph named by (spec, seed); identical on every call."""
    return gen_annotated(spec)[0]
