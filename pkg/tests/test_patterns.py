"""Family builders, S/T/M annotation checking, witness validation, extractors."""

import pytest

from pathecc import (
    EmbeddedCerts,
    FamilySpec,
    Graph,
    NearEmbedding,
    SolverWitness,
    StmWitness,
    attach_embedded,
    build_family,
    classify_stm,
    extract_3pk,
    extract_near_sk_tk,
    extract_p2k1_pk1,
    fits_bound,
    solve,
    stm_m,
    stm_s,
    stm_t,
    validate_solver_witness,
)
from pathecc.patterns import SK_MINUS_LEAF, TK_MINUS_LEAF

from dataclasses import replace


def fam(kind, **kw):
    return build_family(FamilySpec(kind, **kw))


def is_induced_path(g, seq):
    """Independent check, written against adj_sets only."""
    seq = list(seq)
    if len(seq) != len(set(seq)):
        return False
    for i, v in enumerate(seq):
        for j in range(i + 1, len(seq)):
            adjacent = seq[j] in g.adj_sets[v]
            if adjacent != (j == i + 1):
                return False
    return True


def no_cross_edges(g, a, b):
    return all(y not in g.adj_sets[x] for x in a for y in b)


# ---------------------------------------------------------------------------
# build_family


def test_sk1_is_the_claw():
    assert fam("SK", k=1) == fam("CLAW")


def test_net_is_tk1():
    assert fam("NET") == fam("TK", k=1)


def test_cycle3_is_complete3():
    assert fam("CYCLE", n=3) == fam("COMPLETE", n=3)


def test_star_counts():
    g = fam("STAR", n=4)
    assert g.n == 5
    assert sorted(g.edges()) == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_sk2_frozen_layout():
    g = fam("SK", k=2)
    assert g.n == 7
    assert sorted(g.edges()) == [(0, 1), (0, 3), (0, 5), (1, 2), (3, 4), (5, 6)]


def test_tk2_frozen_layout():
    g = fam("TK", k=2)
    assert g.n == 9
    assert sorted(g.edges()) == [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 5),
        (2, 7),
        (3, 4),
        (5, 6),
        (7, 8),
    ]


def test_three_pk_is_a_union_of_paths():
    g = fam("THREE_PK", k=2)
    p2 = FamilySpec("PATH", n=2)
    assert g == build_family(FamilySpec("UNION", parts=(p2, p2, p2)))
    assert g.n == 6
    assert sorted(g.edges()) == [(0, 1), (2, 3), (4, 5)]


def test_union_relabels_left_to_right():
    g = build_family(
        FamilySpec(
            "UNION",
            parts=(FamilySpec("PATH", n=3), FamilySpec("COMPLETE", n=3)),
        )
    )
    assert g.n == 6
    assert sorted(g.edges()) == [(0, 1), (1, 2), (3, 4), (3, 5), (4, 5)]


@pytest.mark.parametrize(
    "spec, fragment",
    [
        (FamilySpec("PATH", n=0), "PATH requires n >= 1"),
        (FamilySpec("CYCLE", n=2), "CYCLE requires n >= 3"),
        (FamilySpec("SK", k=0), "SK requires k >= 1"),
        (FamilySpec("TK"), "TK requires k >= 1"),
        (FamilySpec("UNION"), "UNION requires at least one part"),
    ],
)
def test_family_parameter_errors(spec, fragment):
    with pytest.raises(ValueError, match=fragment):
        build_family(spec)


def test_family_spec_json_round_trip():
    spec = FamilySpec(
        "UNION",
        parts=(FamilySpec("SK", k=3), FamilySpec("PATH", n=5)),
    )
    assert FamilySpec.from_json(spec.to_json()) == spec


def test_family_spec_rejects_unknown_kind():
    with pytest.raises(ValueError, match="unknown family kind"):
        FamilySpec.from_json({"kind": "WHEEL", "n": 5})
    with pytest.raises(ValueError, match="must be an object"):
        FamilySpec.from_json(["PATH"])


# ---------------------------------------------------------------------------
# classify_stm
#
# The checker reports the first violated clause by name, so each tamper case
# asserts the exact string.  Hosts below: SK(2) is 0 with three two-vertex
# chains; the bull is a triangle 1,2,4 with pendants 0 and 3.

BULL = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)])


def test_classify_valid_s():
    g = fam("SK", k=2)
    assert classify_stm(g, stm_s(0, ((1, 2), (3, 4), (5, 6)))) is None


def test_classify_valid_t():
    g = fam("NET")
    assert classify_stm(g, stm_t((0, 1, 2), ((3,), (4,), (5,)))) is None


def test_classify_valid_m():
    assert classify_stm(BULL, stm_m((0, 1, 2, 3), 4)) is None


@pytest.mark.parametrize(
    "witness, expected",
    [
        (StmWitness(cls="X", extremities=(0, 0, 0)), "unknown class"),
        (stm_s(0, ((1,), (3,), (9,))), "vertex id out of range"),
        (
            StmWitness(cls="S", extremities=(1, 3, 5), branch=None, arms=((1,), (3,), (5,))),
            "malformed S annotation",
        ),
        (stm_s(0, ((1,), (1,), (5,))), "annotation vertices not distinct"),
        (stm_s(0, ((1,), (3,), (6,))), "missing edge (0, 6)"),
        (
            StmWitness(cls="S", extremities=(2, 4, 5), branch=0, arms=((1, 2), (3, 4), (5, 6))),
            "extremities mismatch",
        ),
    ],
)
def test_classify_s_tampers(witness, expected):
    g = fam("SK", k=2)
    assert classify_stm(g, witness) == expected


def test_classify_s_unexpected_edge():
    host = Graph.from_edges(7, [(0, 1), (0, 3), (0, 5), (1, 2), (3, 4), (5, 6), (2, 4)])
    w = stm_s(0, ((1, 2), (3, 4), (5, 6)))
    assert classify_stm(host, w) == "unexpected edge (2, 4)"


@pytest.mark.parametrize(
    "witness, expected",
    [
        (
            StmWitness(cls="T", extremities=(3, 4, 5), triangle=(0, 1, 1), arms=((3,), (4,), (5,))),
            "malformed T annotation",
        ),
        (stm_t((0, 1, 2), ((3,), (5,), (4,))), "missing edge (1, 5)"),
        (stm_t((0, 1, 2), ((3,), (4,), (5,))), None),
    ],
)
def test_classify_t_tampers(witness, expected):
    # arms are attached by position, so swapping two of them breaks the chain
    g = fam("TK", k=1)
    assert classify_stm(g, witness) == expected


def test_classify_m_tampers():
    assert classify_stm(BULL, stm_m((0, 2, 1, 3), 4)) == "missing edge (0, 2)"
    chorded = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 4), (2, 4)])
    assert classify_stm(chorded, stm_m((0, 1, 2, 3), 4)) == "unexpected edge (0, 2)"
    assert classify_stm(BULL, stm_m((0, 1, 2), 4)) == "center adjacent to endpoint"
    sparse = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)])
    assert (
        classify_stm(sparse, stm_m((0, 1, 2, 3), 4))
        == "center has fewer than 2 neighbors on the core"
    )
    crooked = StmWitness(cls="M", extremities=(3, 0, 4), core_path=(0, 1, 2, 3), center=4)
    assert classify_stm(BULL, crooked) == "extremities mismatch"
    assert (
        classify_stm(BULL, StmWitness(cls="M", extremities=(0, 0, 0), core_path=(), center=None))
        == "malformed M annotation"
    )


def test_stm_constructor_guards():
    with pytest.raises(ValueError, match="three nonempty arms"):
        stm_s(0, ((1,), (2,)))
    with pytest.raises(ValueError, match="three nonempty arms"):
        stm_t((0, 1, 2), ((3,), (4,), ()))
    with pytest.raises(ValueError, match="nonempty core path"):
        stm_m((), 4)


def test_stm_witness_json_round_trip():
    for w in (
        stm_s(0, ((1, 2), (3, 4), (5, 6))),
        stm_t((0, 1, 2), ((3,), (4,), (5,))),
        stm_m((0, 1, 2, 3), 4),
    ):
        assert StmWitness.from_json(w.to_json()) == w
    with pytest.raises(ValueError, match="unknown core class"):
        StmWitness.from_json({"class": "Q"})


# ---------------------------------------------------------------------------
# validate_solver_witness
#
# Start from a witness the solver actually emits on SK(2) and tamper one
# field at a time.  Every clause string below is part of the contract.


@pytest.fixture(scope="module")
def sk2_witness():
    g = fam("SK", k=2)
    result = solve(g, 2)
    assert result.witness is not None
    return g, result.witness


def test_solver_witness_on_sk2_is_valid(sk2_witness):
    g, w = sk2_witness
    assert validate_solver_witness(g, w, 2) is None
    assert w.cls == "S_k"
    assert w.extremities == (1, 3, 5)
    assert w.extensions == ((1, 2), (3, 4), (5, 6))


def test_solver_witness_json_round_trip(sk2_witness):
    g, w = sk2_witness
    back = SolverWitness.from_json(w.to_json())
    assert back == w
    assert validate_solver_witness(g, back, 2) is None
    bare = replace(w, embedded=None)
    assert SolverWitness.from_json(bare.to_json()) == bare


def test_solver_witness_malformed_json():
    with pytest.raises(ValueError, match="malformed witness JSON"):
        SolverWitness.from_json({"class": "S_k", "k": 2})


def test_witness_k_mismatch(sk2_witness):
    g, w = sk2_witness
    assert validate_solver_witness(g, w, 3) == "k mismatch"


def test_witness_invalid_k(sk2_witness):
    g, w = sk2_witness
    assert validate_solver_witness(g, w, 0) == "invalid k"


def test_witness_unknown_class(sk2_witness):
    g, w = sk2_witness
    assert validate_solver_witness(g, replace(w, cls="Z_k"), 2) == "unknown class"


def test_witness_class_core_disagreement(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, cls="T_k", k=2)
    assert validate_solver_witness(g, tampered, 2) == "class does not match core"


def test_witness_core_violation_is_prefixed(sk2_witness):
    g, w = sk2_witness
    bad_core = stm_s(0, ((1,), (3,), (6,)))
    tampered = replace(w, core=bad_core)
    assert validate_solver_witness(g, tampered, 2) == "core: missing edge (0, 6)"


def test_witness_extremity_core_disagreement(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, extremities=(1, 5, 3))
    assert validate_solver_witness(g, tampered, 2) == "extremities do not match core"


def test_witness_malformed_extensions(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, extensions=w.extensions[:2])
    assert validate_solver_witness(g, tampered, 2) == "malformed extensions"


def test_witness_arm_length(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, extensions=((1,), w.extensions[1], w.extensions[2]))
    assert validate_solver_witness(g, tampered, 2) == "arm length not k"


def test_witness_arm_start(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, extensions=((2, 1), w.extensions[1], w.extensions[2]))
    assert validate_solver_witness(g, tampered, 2) == "arm does not start at its extremity"


def test_witness_arm_not_induced(sk2_witness):
    g, w = sk2_witness
    tampered = replace(w, extensions=((1, 4), w.extensions[1], w.extensions[2]))
    assert validate_solver_witness(g, tampered, 2) == "arm not an induced path"


def test_witness_arm_reenters_core(sk2_witness):
    # walk the first arm back into the branch vertex instead of outward
    g, w = sk2_witness
    tampered = replace(w, extensions=((1, 0), w.extensions[1], w.extensions[2]))
    assert validate_solver_witness(g, tampered, 2) == "arm not disjoint"


def test_witness_edge_between_arms(sk2_witness):
    _, w = sk2_witness
    host = Graph.from_edges(
        7, [(0, 1), (0, 3), (0, 5), (1, 2), (3, 4), (5, 6), (2, 4)]
    )
    assert validate_solver_witness(host, w, 2) == "edge between arms"


def test_witness_arm_tail_attached_to_core(sk2_witness):
    _, w = sk2_witness
    host = Graph.from_edges(
        7, [(0, 1), (0, 3), (0, 5), (1, 2), (3, 4), (5, 6), (0, 2)]
    )
    assert validate_solver_witness(host, w, 2) == "arm tail attached outside its extremity"


def test_witness_missing_embedded(sk2_witness):
    g, w = sk2_witness
    assert validate_solver_witness(g, replace(w, embedded=None), 2) == "missing embedded certificates"


def test_witness_embedded_tampers(sk2_witness):
    g, w = sk2_witness
    emb = w.embedded

    overlap = replace(w, embedded=replace(emb, three_pk=(emb.three_pk[0],) * 3))
    assert validate_solver_witness(g, overlap, 2) == "embedded 3P_k check failed"

    short = replace(w, embedded=replace(emb, p2k1_pk1=(emb.p2k1_pk1[0][:3], emb.p2k1_pk1[1])))
    assert validate_solver_witness(g, short, 2) == "embedded P_2k+1 plus P_k-1 check failed"

    bad_near = replace(w, embedded=replace(emb, near=replace(emb.near, tag="HOUSE")))
    assert validate_solver_witness(g, bad_near, 2) == "embedded near-pattern check failed"


# ---------------------------------------------------------------------------
# extractors
#
# Frozen outputs plus independent structural checks: the extracted paths are
# re-verified positionally against adj_sets, not trusted from the library's
# own induced-path helper.


def check_three_disjoint_paths(g, parts, k):
    seen = set()
    for part in parts:
        assert len(part) == k
        assert is_induced_path(g, part)
        assert not (set(part) & seen)
        seen.update(part)
    for i in range(3):
        for j in range(i + 1, 3):
            assert no_cross_edges(g, parts[i], parts[j])


def check_long_short(g, long_path, short_path, k):
    assert len(long_path) == 2 * k + 1
    assert len(short_path) == k - 1
    assert is_induced_path(g, long_path)
    assert is_induced_path(g, short_path)
    assert not (set(long_path) & set(short_path))
    assert no_cross_edges(g, long_path, short_path)


def test_extract_from_sk2(sk2_witness):
    g, w = sk2_witness
    parts = extract_3pk(g, w, 2)
    assert parts == ((1, 2), (3, 4), (5, 6))
    check_three_disjoint_paths(g, parts, 2)

    long_path, short_path = extract_p2k1_pk1(g, w, 2)
    assert long_path == (2, 1, 0, 3, 4)
    assert short_path == (6,)
    check_long_short(g, long_path, short_path, 2)

    near = extract_near_sk_tk(g, w, 2)
    assert near.tag == SK_MINUS_LEAF
    assert near.branch == 0
    assert near.arms == ((1, 2), (3, 4), (5,))


def test_extract_from_net():
    g = fam("NET")
    result = solve(g, 1)
    w = result.witness
    assert w is not None and w.cls == "T_k"

    parts = extract_3pk(g, w, 1)
    check_three_disjoint_paths(g, parts, 1)

    long_path, short_path = extract_p2k1_pk1(g, w, 1)
    assert short_path == ()
    check_long_short(g, long_path, short_path, 1)

    near = extract_near_sk_tk(g, w, 1)
    assert near.tag == TK_MINUS_LEAF
    assert near.triangle == (0, 1, 2)
    assert [len(a) for a in near.arms] == [1, 1, 0]


def m_witness(core, center, g, k=1):
    w = SolverWitness(
        cls="M_k",
        k=k,
        extremities=(core[0], core[-1], center),
        core=stm_m(core, center),
        extensions=((core[0],), (core[-1],), (center,)),
    )
    return attach_embedded(g, w, k)


def test_center_with_consecutive_neighbors_gives_triangle():
    # bull: the center's two core neighbors are adjacent, so the near
    # embedding keeps them as a triangle
    w = m_witness((0, 1, 2, 3), 4, BULL)
    assert validate_solver_witness(BULL, w, 1) is None
    near = w.embedded.near
    assert near.tag == TK_MINUS_LEAF
    assert near.triangle == (1, 2, 4)
    assert near.arms == ((0,), (3,), ())


def test_center_with_spread_neighbors_gives_spider():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 5)])
    w = m_witness((0, 1, 2, 3, 4), 5, g)
    assert validate_solver_witness(g, w, 1) is None
    near = w.embedded.near
    assert near.tag == SK_MINUS_LEAF
    assert near.branch == 5
    assert near.arms == ((1,), (3,), ())


def test_near_embedding_json_round_trip(sk2_witness):
    g, w = sk2_witness
    near = w.embedded.near
    assert NearEmbedding.from_json(near.to_json()) == near
    with pytest.raises(ValueError, match="unknown near-pattern tag"):
        NearEmbedding.from_json({"tag": "BARN", "vertices": {"arms": []}})


def test_embedded_certs_json_round_trip(sk2_witness):
    _, w = sk2_witness
    emb = w.embedded
    assert EmbeddedCerts.from_json(emb.to_json()) == emb


# ---------------------------------------------------------------------------
# fits_bound


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fits_bound_hand_cases(k):
    assert fits_bound(fam("THREE_PK", k=k), k)
    assert fits_bound(fam("PATH", n=2 * k + 1), k)
    assert not fits_bound(fam("PATH", n=2 * k + 2), k)
    assert not fits_bound(fam("CLAW"), k)
    assert not fits_bound(fam("COMPLETE", n=3), k)
    two_piece = FamilySpec(
        "UNION", parts=(FamilySpec("PATH", n=2 * k + 1), FamilySpec("PATH", n=k))
    )
    assert not fits_bound(build_family(two_piece), k)


def test_fits_bound_packs_with_gaps():
    # four isolated vertices sit inside three P3 components: one host path
    # takes two of them with a skipped middle vertex
    isolated = Graph.from_edges(4, [])
    assert fits_bound(isolated, 3)
    assert not fits_bound(Graph.from_edges(7, []), 3)


def test_fits_bound_trivia():
    assert fits_bound(Graph.from_edges(0, []), 1)
    with pytest.raises(ValueError, match="k must be >= 1"):
        fits_bound(fam("PATH", n=1), 0)
