"""Named graph families, S/T/M witness structures, validators, extractors.

The witness layer is the certifying half of the library: solver output is
plain data that this module checks against the host graph with direct
adjacency tests only, no search.  Checkers report the first violated
clause as a short string, or None when everything holds, so a failure
message always names the exact broken invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Iterator, Sequence

from .graph import Graph

FAMILY_KINDS = frozenset(
    {"PATH", "CYCLE", "COMPLETE", "STAR", "CLAW", "NET", "SK", "TK", "THREE_PK", "UNION"}
)

CLASS_SK = "S_k"
CLASS_TK = "T_k"
CLASS_MK = "M_k"
WITNESS_CLASSES = (CLASS_SK, CLASS_TK, CLASS_MK)
_CORE_FOR_CLASS = {CLASS_SK: "S", CLASS_TK: "T", CLASS_MK: "M"}

SK_MINUS_LEAF = "SK_MINUS_LEAF"
TK_MINUS_LEAF = "TK_MINUS_LEAF"


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for a named graph family; ``build_family`` realizes it."""

    kind: str
    n: int | None = None
    k: int | None = None
    parts: tuple["FamilySpec", ...] = ()

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {"kind": self.kind}
        if self.n is not None:
            obj["n"] = self.n
        if self.k is not None:
            obj["k"] = self.k
        if self.parts:
            obj["parts"] = [p.to_json() for p in self.parts]
        return obj

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "FamilySpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("family spec must be an object with a 'kind' field")
        kind = obj["kind"]
        if kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {kind!r}")
        parts = tuple(cls.from_json(p) for p in obj.get("parts", []))
        return cls(kind=kind, n=obj.get("n"), k=obj.get("k"), parts=parts)


def _spec_n(spec: FamilySpec, minimum: int = 1) -> int:
    if spec.n is None or spec.n < minimum:
        raise ValueError(f"{spec.kind} requires n >= {minimum}, got {spec.n}")
    return spec.n


def _spec_k(spec: FamilySpec) -> int:
    if spec.k is None or spec.k < 1:
        raise ValueError(f"{spec.kind} requires k >= 1, got {spec.k}")
    return spec.k


def build_family(spec: FamilySpec) -> Graph:
    """Construct a named family with its frozen canonical labeling.

    PATH(n): 0-1-...-(n-1).
    CYCLE(n): PATH(n) plus the edge (n-1, 0); requires n >= 3.
    COMPLETE(n): every pair on 0..n-1.
    STAR(n): K_{1,n} with center 0 and leaves 1..n (n+1 vertices).
    CLAW: STAR(3).  NET: TK(1).
    SK(k): branch 0; arm i occupies 1+i*k .. (i+1)*k, chained outward from 0.
    TK(k): triangle 0,1,2; arm i occupies 3+i*k .. 2+(i+1)*k, attached to i.
    THREE_PK(k): UNION of three PATH(k) components.
    UNION(parts): parts relabeled left to right by vertex-count offsets.
    """
    kind = spec.kind
    if kind == "PATH":
        n = _spec_n(spec)
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "CYCLE":
        n = _spec_n(spec, minimum=3)
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "COMPLETE":
        n = _spec_n(spec)
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "STAR":
        n = _spec_n(spec)
        return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])
    if kind == "CLAW":
        return build_family(FamilySpec("STAR", n=3))
    if kind == "NET":
        return build_family(FamilySpec("TK", k=1))
    if kind == "SK":
        k = _spec_k(spec)
        edges = []
        for i in range(3):
            arm = list(range(1 + i * k, 1 + (i + 1) * k))
            edges.append((0, arm[0]))
            edges.extend(zip(arm, arm[1:]))
        return Graph.from_edges(3 * k + 1, edges)
    if kind == "TK":
        k = _spec_k(spec)
        edges = [(0, 1), (0, 2), (1, 2)]
        for i in range(3):
            arm = list(range(3 + i * k, 3 + (i + 1) * k))
            edges.append((i, arm[0]))
            edges.extend(zip(arm, arm[1:]))
        return Graph.from_edges(3 * k + 3, edges)
    if kind == "THREE_PK":
        k = _spec_k(spec)
        part = FamilySpec("PATH", n=k)
        return build_family(FamilySpec("UNION", parts=(part, part, part)))
    if kind == "UNION":
        if not spec.parts:
            raise ValueError("UNION requires at least one part")
        edges: list[tuple[int, int]] = []
        offset = 0
        for part in spec.parts:
            g = build_family(part)
            edges.extend((u + offset, v + offset) for u, v in g.edges())
            offset += g.n
        return Graph.from_edges(offset, edges)
    raise ValueError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# Witness structures


@dataclass(frozen=True)
class StmWitness:
    """Annotated S/T/M decomposition, checkable by ``classify_stm``.

    cls "S": ``branch`` plus three ``arms`` (branch-to-tip paths, branch
    excluded, inner vertex first).  cls "T": ``triangle`` (3 ids) plus
    ``arms`` where arm i attaches to triangle[i].  cls "M": ``core_path``
    (an induced path) plus ``center``.  ``extremities`` are the arm tips
    for S/T and (core start, core end, center) for M.
    """

    cls: str
    extremities: tuple[int, int, int]
    branch: int | None = None
    triangle: tuple[int, int, int] | None = None
    arms: tuple[tuple[int, ...], ...] | None = None
    core_path: tuple[int, ...] | None = None
    center: int | None = None

    def iter_vertices(self) -> Iterator[int]:
        if self.cls == "S":
            if self.branch is not None:
                yield self.branch
            for arm in self.arms or ():
                yield from arm
        elif self.cls == "T":
            yield from self.triangle or ()
            for arm in self.arms or ():
                yield from arm
        else:
            yield from self.core_path or ()
            if self.center is not None:
                yield self.center

    def vertex_set(self) -> set[int]:
        return set(self.iter_vertices())

    def to_json(self) -> dict[str, Any]:
        if self.cls == "S":
            return {
                "class": "S",
                "branch": self.branch,
                "arms": [list(a) for a in self.arms or ()],
            }
        if self.cls == "T":
            return {
                "class": "T",
                "triangle": list(self.triangle or ()),
                "arms": [list(a) for a in self.arms or ()],
            }
        return {
            "class": "M",
            "center": self.center,
            "core_path": list(self.core_path or ()),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "StmWitness":
        tag = obj.get("class")
        if tag == "S":
            arms = tuple(tuple(a) for a in obj["arms"])
            return stm_s(obj["branch"], arms)
        if tag == "T":
            arms = tuple(tuple(a) for a in obj["arms"])
            return stm_t(tuple(obj["triangle"]), arms)
        if tag == "M":
            return stm_m(tuple(obj["core_path"]), obj["center"])
        raise ValueError(f"unknown core class {tag!r}")


def stm_s(branch: int, arms: Sequence[Sequence[int]]) -> StmWitness:
    arms_t = tuple(tuple(a) for a in arms)
    tips = tuple(a[-1] for a in arms_t if a)
    if len(arms_t) != 3 or len(tips) != 3:
        raise ValueError("S witness needs three nonempty arms")
    return StmWitness(cls="S", extremities=tips, branch=branch, arms=arms_t)


def stm_t(triangle: Sequence[int], arms: Sequence[Sequence[int]]) -> StmWitness:
    arms_t = tuple(tuple(a) for a in arms)
    tips = tuple(a[-1] for a in arms_t if a)
    if len(arms_t) != 3 or len(tips) != 3:
        raise ValueError("T witness needs three nonempty arms")
    return StmWitness(
        cls="T", extremities=tips, triangle=tuple(triangle), arms=arms_t
    )


def stm_m(core_path: Sequence[int], center: int) -> StmWitness:
    core = tuple(core_path)
    if not core:
        raise ValueError("M witness needs a nonempty core path")
    return StmWitness(
        cls="M",
        extremities=(core[0], core[-1], center),
        core_path=core,
        center=center,
    )


@dataclass(frozen=True)
class NearEmbedding:
    """An S_k-minus-leaf or T_k-minus-leaf embedding, arm lengths (k, k, k-1)."""

    tag: str
    arms: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    branch: int | None = None
    triangle: tuple[int, int, int] | None = None

    def to_json(self) -> dict[str, Any]:
        vertices: dict[str, Any] = {"arms": [list(a) for a in self.arms]}
        if self.tag == SK_MINUS_LEAF:
            vertices["branch"] = self.branch
        else:
            vertices["triangle"] = list(self.triangle or ())
        return {"tag": self.tag, "vertices": vertices}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "NearEmbedding":
        tag = obj.get("tag")
        vert = obj.get("vertices", {})
        arms = tuple(tuple(a) for a in vert.get("arms", ()))
        if tag == SK_MINUS_LEAF:
            return cls(tag=tag, arms=arms, branch=vert.get("branch"))
        if tag == TK_MINUS_LEAF:
            tri = vert.get("triangle")
            return cls(tag=tag, arms=arms, triangle=tuple(tri) if tri else None)
        raise ValueError(f"unknown near-pattern tag {tag!r}")


@dataclass(frozen=True)
class EmbeddedCerts:
    """The three containment certificates carried inside a SolverWitness."""

    three_pk: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    p2k1_pk1: tuple[tuple[int, ...], tuple[int, ...]]
    near: NearEmbedding

    def to_json(self) -> dict[str, Any]:
        return {
            "three_pk": [list(p) for p in self.three_pk],
            "p2k1_pk1": [list(self.p2k1_pk1[0]), list(self.p2k1_pk1[1])],
            "near": self.near.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "EmbeddedCerts":
        three = tuple(tuple(p) for p in obj["three_pk"])
        pair = obj["p2k1_pk1"]
        return cls(
            three_pk=three,
            p2k1_pk1=(tuple(pair[0]), tuple(pair[1])),
            near=NearEmbedding.from_json(obj["near"]),
        )


@dataclass(frozen=True)
class SolverWitness:
    """A full structural witness: S/T/M core plus one k-vertex arm per extremity.

    ``extensions[i]`` lists the arm at ``extremities[i]`` starting with the
    extremity itself and walking outward; each arm has exactly k vertices.
    ``embedded`` carries the containment certificates and may be None while
    a witness is under construction; ``attach_embedded`` fills it.
    """

    cls: str
    k: int
    extremities: tuple[int, int, int]
    core: StmWitness
    extensions: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    embedded: EmbeddedCerts | None = None

    def vertex_set(self) -> set[int]:
        out = self.core.vertex_set()
        for arm in self.extensions:
            out.update(arm)
        return out

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "class": self.cls,
            "k": self.k,
            "extremities": list(self.extremities),
            "core": self.core.to_json(),
            "extensions": [list(a) for a in self.extensions],
        }
        if self.embedded is not None:
            obj["embedded"] = self.embedded.to_json()
        return obj

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "SolverWitness":
        try:
            extremities = tuple(obj["extremities"])
            extensions = tuple(tuple(a) for a in obj["extensions"])
            core = StmWitness.from_json(obj["core"])
            embedded = (
                EmbeddedCerts.from_json(obj["embedded"]) if "embedded" in obj else None
            )
            return cls(
                cls=obj["class"],
                k=int(obj["k"]),
                extremities=extremities,  # type: ignore[arg-type]
                core=core,
                extensions=extensions,  # type: ignore[arg-type]
                embedded=embedded,
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed witness JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Adjacency-check helpers


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _ids_in_range(g: Graph, vertices: Iterator[int]) -> bool:
    return all(0 <= v < g.n for v in vertices)


def _edge_diff(
    g: Graph, vertices: set[int], required: set[tuple[int, int]]
) -> tuple[tuple[int, int] | None, tuple[int, int] | None]:
    """First missing required edge and first unexpected edge inside ``vertices``."""
    missing = None
    for a, b in sorted(required):
        if not g.has_edge(a, b):
            missing = (a, b)
            break
    extra = None
    for a in sorted(vertices):
        for b in g.adj[a]:
            if a < b and b in vertices and (a, b) not in required:
                extra = (a, b)
                break
        if extra:
            break
    return missing, extra


def _chain_edges(attach: int, arm: Sequence[int]) -> set[tuple[int, int]]:
    out = set()
    if arm:
        out.add(_pair(attach, arm[0]))
        for a, b in zip(arm, arm[1:]):
            out.add(_pair(a, b))
    return out


def _induced_path_ok(g: Graph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` is an induced path (the empty sequence counts)."""
    if len(seq) != len(set(seq)):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            return False
    for v in seq:
        for nb in g.adj[v]:
            other = pos.get(nb)
            if other is not None and abs(other - pos[v]) > 1:
                return False
    return True


def _no_edges_between(g: Graph, left: Sequence[int], right_set: set[int]) -> bool:
    for v in left:
        for nb in g.adj[v]:
            if nb in right_set:
                return False
    return True


# ---------------------------------------------------------------------------
# classify_stm


def classify_stm(g: Graph, w: StmWitness) -> str | None:
    """Check an S/T/M annotation against the host graph.

    Returns None when every clause holds, otherwise a short string naming
    the first violated clause.
    """
    if w.cls not in ("S", "T", "M"):
        return "unknown class"
    if not _ids_in_range(g, w.iter_vertices()):
        return "vertex id out of range"
    if w.cls == "S":
        return _classify_s(g, w)
    if w.cls == "T":
        return _classify_t(g, w)
    return _classify_m(g, w)


def _classify_s(g: Graph, w: StmWitness) -> str | None:
    if (
        w.branch is None
        or w.arms is None
        or len(w.arms) != 3
        or any(len(a) == 0 for a in w.arms)
    ):
        return "malformed S annotation"
    vs = [w.branch] + [v for arm in w.arms for v in arm]
    if len(set(vs)) != len(vs):
        return "annotation vertices not distinct"
    required: set[tuple[int, int]] = set()
    for arm in w.arms:
        required |= _chain_edges(w.branch, arm)
    missing, extra = _edge_diff(g, set(vs), required)
    if missing:
        return f"missing edge ({missing[0]}, {missing[1]})"
    if extra:
        return f"unexpected edge ({extra[0]}, {extra[1]})"
    if w.extremities != tuple(arm[-1] for arm in w.arms):
        return "extremities mismatch"
    return None


def _classify_t(g: Graph, w: StmWitness) -> str | None:
    if (
        w.triangle is None
        or len(set(w.triangle)) != 3
        or w.arms is None
        or len(w.arms) != 3
        or any(len(a) == 0 for a in w.arms)
    ):
        return "malformed T annotation"
    vs = list(w.triangle) + [v for arm in w.arms for v in arm]
    if len(set(vs)) != len(vs):
        return "annotation vertices not distinct"
    t = w.triangle
    required = {_pair(t[0], t[1]), _pair(t[0], t[2]), _pair(t[1], t[2])}
    for i, arm in enumerate(w.arms):
        required |= _chain_edges(t[i], arm)
    missing, extra = _edge_diff(g, set(vs), required)
    if missing:
        return f"missing edge ({missing[0]}, {missing[1]})"
    if extra:
        return f"unexpected edge ({extra[0]}, {extra[1]})"
    if w.extremities != tuple(arm[-1] for arm in w.arms):
        return "extremities mismatch"
    return None


def _classify_m(g: Graph, w: StmWitness) -> str | None:
    if w.core_path is None or len(w.core_path) == 0 or w.center is None:
        return "malformed M annotation"
    core = w.core_path
    vs = list(core) + [w.center]
    if len(set(vs)) != len(vs):
        return "annotation vertices not distinct"
    for a, b in zip(core, core[1:]):
        if not g.has_edge(a, b):
            return f"missing edge ({a}, {b})"
    pos = {v: i for i, v in enumerate(core)}
    for v in core:
        for nb in g.adj[v]:
            other = pos.get(nb)
            if other is not None and abs(other - pos[v]) > 1:
                return f"unexpected edge ({min(v, nb)}, {max(v, nb)})"
    if g.has_edge(w.center, core[0]) or g.has_edge(w.center, core[-1]):
        return "center adjacent to endpoint"
    core_set = set(core)
    if sum(1 for nb in g.adj[w.center] if nb in core_set) < 2:
        return "center has fewer than 2 neighbors on the core"
    if w.extremities != (core[0], core[-1], w.center):
        return "extremities mismatch"
    return None


# ---------------------------------------------------------------------------
# SolverWitness validation


def _combined_legs(w: SolverWitness) -> list[list[int]]:
    """Core arm i plus its extension walked inner to outer (S/T classes)."""
    assert w.core.arms is not None
    return [list(core_arm) + list(ext[1:]) for core_arm, ext in zip(w.core.arms, w.extensions)]


def _skeleton_violation(g: Graph, w: SolverWitness, k: int) -> str | None:
    """All SolverWitness clauses except the embedded certificates."""
    if k < 1:
        return "invalid k"
    if w.cls not in WITNESS_CLASSES:
        return "unknown class"
    if w.k != k:
        return "k mismatch"
    if w.core.cls != _CORE_FOR_CLASS[w.cls]:
        return "class does not match core"
    core_violation = classify_stm(g, w.core)
    if core_violation:
        return f"core: {core_violation}"
    if w.extremities != w.core.extremities:
        return "extremities do not match core"
    if len(w.extensions) != 3:
        return "malformed extensions"
    for i, arm in enumerate(w.extensions):
        if len(arm) != k:
            return "arm length not k"
        if arm[0] != w.extremities[i]:
            return "arm does not start at its extremity"
        if not _induced_path_ok(g, arm):
            return "arm not an induced path"
    core_vs = w.core.vertex_set()
    tails = [arm[1:] for arm in w.extensions]
    tail_all = [v for t in tails for v in t]
    if len(set(tail_all)) != len(tail_all):
        return "arm not disjoint"
    if set(tail_all) & core_vs:
        return "arm not disjoint"
    for i in range(3):
        for j in range(i + 1, 3):
            if not _no_edges_between(g, w.extensions[i], set(w.extensions[j])):
                return "edge between arms"
    witness_all = core_vs | set(tail_all)
    for arm in w.extensions:
        own = set(arm)
        for v in arm[1:]:
            for nb in g.adj[v]:
                if nb in witness_all and nb not in own:
                    return "arm tail attached outside its extremity"
    if w.cls in (CLASS_SK, CLASS_TK):
        legs = _combined_legs(w)
        inner = [leg[:k] for leg in legs]
        vs = {v for leg in inner for v in leg}
        required: set[tuple[int, int]] = set()
        if w.cls == CLASS_SK:
            assert w.core.branch is not None
            vs.add(w.core.branch)
            for leg in inner:
                required |= _chain_edges(w.core.branch, leg)
            label = "S_k"
        else:
            assert w.core.triangle is not None
            t = w.core.triangle
            vs.update(t)
            required = {_pair(t[0], t[1]), _pair(t[0], t[2]), _pair(t[1], t[2])}
            for i, leg in enumerate(inner):
                required |= _chain_edges(t[i], leg)
            label = "T_k"
        missing, extra = _edge_diff(g, vs, required)
        if missing or extra:
            return f"embedded {label} check failed"
    return None


def _near_violation(g: Graph, near: NearEmbedding, k: int, witness_all: set[int]) -> str | None:
    if near.tag not in (SK_MINUS_LEAF, TK_MINUS_LEAF):
        return "embedded near-pattern check failed"
    if len(near.arms) != 3:
        return "embedded near-pattern check failed"
    if [len(a) for a in near.arms] != [k, k, k - 1]:
        return "embedded near-pattern check failed"
    vs: set[int] = set()
    required: set[tuple[int, int]] = set()
    if near.tag == SK_MINUS_LEAF:
        if near.branch is None:
            return "embedded near-pattern check failed"
        vs.add(near.branch)
        for arm in near.arms:
            vs.update(arm)
            required |= _chain_edges(near.branch, arm)
    else:
        if near.triangle is None or len(set(near.triangle)) != 3:
            return "embedded near-pattern check failed"
        t = near.triangle
        vs.update(t)
        required = {_pair(t[0], t[1]), _pair(t[0], t[2]), _pair(t[1], t[2])}
        for i, arm in enumerate(near.arms):
            vs.update(arm)
            required |= _chain_edges(t[i], arm)
    expected_count = (1 if near.tag == SK_MINUS_LEAF else 3) + sum(
        len(a) for a in near.arms
    )
    if len(vs) != expected_count or not vs <= witness_all:
        return "embedded near-pattern check failed"
    missing, extra = _edge_diff(g, vs, required)
    if missing or extra:
        return "embedded near-pattern check failed"
    return None


def validate_solver_witness(g: Graph, w: SolverWitness, k: int) -> str | None:
    """Full witness check: skeleton plus all three embedded certificates.

    Returns None when valid, otherwise the first violated clause.
    """
    violation = _skeleton_violation(g, w, k)
    if violation:
        return violation
    if w.embedded is None:
        return "missing embedded certificates"
    emb = w.embedded
    witness_all = w.vertex_set()

    if len(emb.three_pk) != 3:
        return "embedded 3P_k check failed"
    seen: set[int] = set()
    for part in emb.three_pk:
        if len(part) != k or not _induced_path_ok(g, part):
            return "embedded 3P_k check failed"
        if set(part) & seen or not set(part) <= witness_all:
            return "embedded 3P_k check failed"
        seen.update(part)
    for i in range(3):
        for j in range(i + 1, 3):
            if not _no_edges_between(g, emb.three_pk[i], set(emb.three_pk[j])):
                return "embedded 3P_k check failed"

    long_path, short_path = emb.p2k1_pk1
    if len(long_path) != 2 * k + 1 or len(short_path) != k - 1:
        return "embedded P_2k+1 plus P_k-1 check failed"
    if not _induced_path_ok(g, long_path) or not _induced_path_ok(g, short_path):
        return "embedded P_2k+1 plus P_k-1 check failed"
    if set(long_path) & set(short_path):
        return "embedded P_2k+1 plus P_k-1 check failed"
    if not set(long_path) <= witness_all or not set(short_path) <= witness_all:
        return "embedded P_2k+1 plus P_k-1 check failed"
    if not _no_edges_between(g, long_path, set(short_path)):
        return "embedded P_2k+1 plus P_k-1 check failed"

    return _near_violation(g, emb.near, k, witness_all)


def _require_skeleton(g: Graph, w: SolverWitness, k: int) -> None:
    violation = _skeleton_violation(g, w, k)
    if violation:
        raise ValueError(f"witness failed validation: {violation}")


# ---------------------------------------------------------------------------
# Embedding extractors


def extract_3pk(
    g: Graph, w: SolverWitness, k: int
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Three disjoint induced k-vertex paths with no edges between them.

    For every witness class these are exactly the three extension arms:
    each is the outermost k vertices of its leg, and the arm-isolation
    invariants make them pairwise nonadjacent.
    """
    _require_skeleton(g, w, k)
    return w.extensions


def extract_p2k1_pk1(
    g: Graph, w: SolverWitness, k: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """An induced path on 2k+1 vertices plus a disjoint induced path on k-1.

    S core: two legs joined through the branch; the third leg, innermost k
    vertices minus the branch-adjacent one, gives the short path.  T core:
    one leg, two triangle vertices, then k-1 of another leg; the third leg
    trimmed to k-1.  M core: the core path extended through the endpoint
    arms, trimmed to its first 2k+1 vertices; the center's arm minus the
    center.  k = 1 yields an empty short path.
    """
    _require_skeleton(g, w, k)
    if w.cls == CLASS_SK:
        legs = _combined_legs(w)
        assert w.core.branch is not None
        long_path = list(reversed(legs[0][:k])) + [w.core.branch] + legs[1][:k]
        short_path = legs[2][:k][1:]
    elif w.cls == CLASS_TK:
        legs = _combined_legs(w)
        assert w.core.triangle is not None
        t = w.core.triangle
        long_path = list(reversed(legs[0][:k])) + [t[0], t[1]] + legs[1][: k - 1]
        short_path = legs[2][: k - 1]
    else:
        assert w.core.core_path is not None
        extended = (
            list(reversed(w.extensions[0]))
            + list(w.core.core_path[1:])
            + list(w.extensions[1][1:])
        )
        long_path = extended[: 2 * k + 1]
        short_path = list(w.extensions[2][1:])
    return tuple(long_path), tuple(short_path)


def extract_near_sk_tk(g: Graph, w: SolverWitness, k: int) -> NearEmbedding:
    """An induced S_k-minus-leaf or T_k-minus-leaf, arm lengths (k, k, k-1).

    S/T cores keep their own shape with the third leg shortened by one.
    M cores split on j1/jm, the first/last core positions adjacent to the
    center: consecutive positions give a triangle (T_k minus leaf), spread
    positions give a spider at the center (S_k minus leaf); either way the
    two outward legs walk the core away from the center's neighbor range,
    which is what keeps them induced and pendant.
    """
    _require_skeleton(g, w, k)
    if w.cls == CLASS_SK:
        legs = _combined_legs(w)
        assert w.core.branch is not None
        return NearEmbedding(
            tag=SK_MINUS_LEAF,
            branch=w.core.branch,
            arms=(
                tuple(legs[0][:k]),
                tuple(legs[1][:k]),
                tuple(legs[2][: k - 1]),
            ),
        )
    if w.cls == CLASS_TK:
        legs = _combined_legs(w)
        assert w.core.triangle is not None
        return NearEmbedding(
            tag=TK_MINUS_LEAF,
            triangle=w.core.triangle,
            arms=(
                tuple(legs[0][:k]),
                tuple(legs[1][:k]),
                tuple(legs[2][: k - 1]),
            ),
        )
    assert w.core.core_path is not None and w.core.center is not None
    core = w.core.core_path
    center = w.core.center
    positions = [i for i, v in enumerate(core) if g.has_edge(center, v)]
    j1, jm = positions[0], positions[-1]
    left = list(core[:j1][::-1]) + list(w.extensions[0][1:])
    right = list(core[jm + 1 :]) + list(w.extensions[1][1:])
    center_arm = tuple(w.extensions[2][1:])
    if jm == j1 + 1:
        return NearEmbedding(
            tag=TK_MINUS_LEAF,
            triangle=(core[j1], core[jm], center),
            arms=(tuple(left[:k]), tuple(right[:k]), center_arm),
        )
    return NearEmbedding(
        tag=SK_MINUS_LEAF,
        branch=center,
        arms=(
            tuple([core[j1]] + left[: k - 1]),
            tuple([core[jm]] + right[: k - 1]),
            center_arm,
        ),
    )


def attach_embedded(g: Graph, w: SolverWitness, k: int) -> SolverWitness:
    """Fill a skeleton witness's embedded certificates via the extractors."""
    emb = EmbeddedCerts(
        three_pk=extract_3pk(g, w, k),
        p2k1_pk1=extract_p2k1_pk1(g, w, k),
        near=extract_near_sk_tk(g, w, k),
    )
    return replace(w, embedded=emb)


# ---------------------------------------------------------------------------
# fits_bound


def _path_components(h: Graph) -> list[int] | None:
    """Component sizes if h is a disjoint union of paths, else None."""
    if any(h.degree(v) > 2 for v in range(h.n)):
        return None
    sizes = []
    unseen = set(range(h.n))
    while unseen:
        start = min(unseen)
        comp = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in h.adj[u]:
                    if v not in comp:
                        comp.add(v)
                        nxt.append(v)
            frontier = nxt
        edge_count = sum(len(h.adj[v]) for v in comp) // 2
        if edge_count != len(comp) - 1:
            return None
        unseen -= comp
        sizes.append(len(comp))
    return sizes


def _packs(sizes: list[int], caps: list[int]) -> bool:
    """Can the component sizes be grouped into host paths of the given sizes?

    Placing a component into a nonempty host costs one extra vertex (the
    skipped gap between consecutive components along the host path).
    """
    order = sorted(sizes, reverse=True)
    remaining = list(caps)
    occupied = [False] * len(caps)

    def place(i: int) -> bool:
        if i == len(order):
            return True
        tried: set[tuple[int, bool]] = set()
        for j in range(len(remaining)):
            state = (remaining[j], occupied[j])
            if state in tried:
                continue
            tried.add(state)
            cost = order[i] + (1 if occupied[j] else 0)
            if remaining[j] >= cost:
                remaining[j] -= cost
                was = occupied[j]
                occupied[j] = True
                if place(i + 1):
                    return True
                remaining[j] += cost
                occupied[j] = was
        return False

    return place(0)


def fits_bound(h: Graph, k: int) -> bool:
    """True iff h is an induced subgraph of 3P_k or of P_{2k+1} + P_{k-1}.

    An induced subgraph of a disjoint union of paths is itself one, so the
    test is: h must be a disjoint union of paths whose component orders
    pack into host paths of sizes (k, k, k) or (2k+1, k-1), where every
    component after the first in a host costs one extra skipped vertex.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    sizes = _path_components(h)
    if sizes is None:
        return False
    return _packs(sizes, [k, k, k]) or _packs(sizes, [2 * k + 1, k - 1])
