"""Exhaustive oracles, the counter PRNG, and the deterministic generators.

Every oracle gets at least one cross-check against an implementation that
shares no code with it: bitmask DP against DFS enumeration, permutation
scans against the pruned ordering search, a five-line reference PRNG
against the vectorized one.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathecc import (
    CapExceeded,
    CounterRng,
    FamilySpec,
    GenSpec,
    Graph,
    brute_longest_path,
    brute_path_eccentricity,
    brute_star_c1p,
    brute_stm_search,
    build_family,
    classify_stm,
    expand_manifest,
    find_induced,
    gen_annotated,
    gen_random,
    is_connected,
    is_k_at_free,
    validate_solver_witness,
)
from pathecc.oracles import MASK64, _gnp_edges, _pair_edges_by_threshold, _threshold

from conftest import rand_graph


def fam(kind, **kw):
    return build_family(FamilySpec(kind, **kw))


# ---------------------------------------------------------------------------
# independent re-implementations used as cross-checks


def ham_path_exists(g):
    """Bitmask DP: does g have a path visiting every vertex once?"""
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return True
    reach = [0] * (1 << n)
    for v in range(n):
        reach[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        ends = reach[mask]
        if not ends:
            continue
        if mask == (1 << n) - 1:
            return True
        for v in range(n):
            if ends >> v & 1:
                for w in g.adj[v]:
                    if not mask >> w & 1:
                        reach[mask | 1 << w] |= 1 << w
    return bool(reach[(1 << n) - 1])


def longest_path_rec(g):
    """Plain recursive enumeration, no pruning; vertex count only."""
    best = 1 if g.n else 0

    def go(v, visited, length):
        nonlocal best
        best = max(best, length)
        for w in g.adj[v]:
            if w not in visited:
                visited.add(w)
                go(w, visited, length + 1)
                visited.discard(w)

    for s in range(g.n):
        go(s, {s}, 1)
    return best


def consecutive_ok(g, order):
    """Does the ordering make N(v) or N[v] consecutive for every vertex?"""
    pos = {v: i for i, v in enumerate(order)}

    def contiguous(vs):
        ps = sorted(pos[v] for v in vs)
        return not ps or ps[-1] - ps[0] == len(ps) - 1

    return all(
        contiguous(g.adj[v]) or contiguous(set(g.adj[v]) | {v}) for v in range(g.n)
    )


def ordering_exists_exhaustive(g):
    return any(consecutive_ok(g, p) for p in itertools.permutations(range(g.n)))


def splitmix64_ref(seed, count):
    """Straight transcription of the reference generator."""
    out = []
    state = seed & MASK64
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


# ---------------------------------------------------------------------------
# brute_path_eccentricity


def test_path_eccentricity_frozen_values():
    assert brute_path_eccentricity(fam("CYCLE", n=6)) == (0, (0, 1, 2, 3, 4, 5))
    assert brute_path_eccentricity(fam("PATH", n=7))[0] == 0
    assert brute_path_eccentricity(fam("SK", k=2)) == (2, (0,))
    assert brute_path_eccentricity(fam("TK", k=2)) == (2, (0, 1, 2))
    assert brute_path_eccentricity(fam("NET")) == (1, (0, 1, 2))


def test_path_eccentricity_input_errors():
    with pytest.raises(ValueError, match="connected"):
        brute_path_eccentricity(fam("THREE_PK", k=2))
    with pytest.raises(ValueError, match="nonempty"):
        brute_path_eccentricity(Graph.from_edges(0, []))
    with pytest.raises(CapExceeded, match="graph has 13 vertices, oracle cap is 12"):
        brute_path_eccentricity(fam("PATH", n=13))
    assert brute_path_eccentricity(fam("PATH", n=13), cap=13)[0] == 0


def test_zero_eccentricity_means_spanning_path():
    hits = 0
    for seed in range(400):
        g = rand_graph(seed, 3 + seed % 6, 0.15 + 0.1 * (seed % 7))
        if not is_connected(g):
            continue
        ecc, path = brute_path_eccentricity(g)
        if ecc == 0:
            hits += 1
            assert len(path) == g.n
        assert (ecc == 0) == ham_path_exists(g)
    assert hits > 50


# ---------------------------------------------------------------------------
# brute_longest_path


def test_longest_path_frozen_values():
    assert brute_longest_path(fam("SK", k=2)) == (5, (2, 1, 0, 3, 4))
    assert brute_longest_path(fam("PATH", n=7))[0] == 7
    with pytest.raises(CapExceeded, match="oracle cap is 20"):
        brute_longest_path(fam("PATH", n=21))
    with pytest.raises(ValueError, match="nonempty"):
        brute_longest_path(Graph.from_edges(0, []))


def test_longest_path_matches_recursive_enumeration():
    for seed in range(300):
        g = rand_graph(seed + 1000, 2 + seed % 7, 0.3)
        size, path = brute_longest_path(g)
        assert size == longest_path_rec(g)
        assert len(path) == size
        assert len(set(path)) == size
        assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------------------
# find_induced


def check_embedding(host, pattern, mapping):
    assert sorted(mapping) == list(range(pattern.n))
    assert len(set(mapping.values())) == pattern.n
    for a in range(pattern.n):
        for b in range(a + 1, pattern.n):
            assert pattern.has_edge(a, b) == host.has_edge(mapping[a], mapping[b])


def test_find_induced_frozen_cases():
    hit = find_induced(fam("SK", k=2), fam("CLAW"))
    assert hit == {0: 0, 1: 1, 2: 3, 3: 5}
    check_embedding(fam("SK", k=2), fam("CLAW"), hit)

    assert find_induced(fam("NET"), fam("CLAW")) is None

    hit = find_induced(fam("TK", k=2), fam("THREE_PK", k=2))
    assert hit == {0: 0, 1: 3, 2: 5, 3: 6, 4: 7, 5: 8}
    check_embedding(fam("TK", k=2), fam("THREE_PK", k=2), hit)


def test_find_induced_edge_cases():
    assert find_induced(fam("PATH", n=3), Graph.from_edges(0, [])) == {}
    assert find_induced(fam("PATH", n=3), fam("PATH", n=4)) is None
    with pytest.raises(CapExceeded, match="pattern has 13 vertices"):
        find_induced(fam("PATH", n=20), fam("PATH", n=13))
    assert find_induced(fam("PATH", n=20), fam("PATH", n=13), cap=13) is not None


def test_find_induced_vs_subgraph_scan():
    # every reported embedding must verify; every None must survive an
    # exhaustive scan over vertex subsets of the host
    pattern = fam("CLAW")
    for seed in range(200):
        host = rand_graph(seed + 2000, 4 + seed % 4, 0.4)
        hit = find_induced(host, pattern)
        exists = any(
            find_matching(host, pattern, subset)
            for subset in itertools.combinations(range(host.n), pattern.n)
        )
        if hit is None:
            assert not exists
        else:
            check_embedding(host, pattern, hit)
            assert exists


def find_matching(host, pattern, subset):
    for perm in itertools.permutations(subset):
        if all(
            pattern.has_edge(a, b) == host.has_edge(perm[a], perm[b])
            for a in range(pattern.n)
            for b in range(a + 1, pattern.n)
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# brute_star_c1p


def test_star_consecutive_frozen_cases():
    assert brute_star_c1p(fam("PATH", n=4)) == (0, 1, 2, 3)
    assert brute_star_c1p(fam("CLAW")) == (0, 1, 2, 3)
    assert brute_star_c1p(fam("SK", k=2)) is None
    assert brute_star_c1p(fam("NET")) is None
    assert brute_star_c1p(Graph.from_edges(0, [])) == ()
    with pytest.raises(CapExceeded, match="oracle cap is 9"):
        brute_star_c1p(fam("PATH", n=10))


def test_star_consecutive_vs_permutation_scan():
    found = rejected = 0
    for seed in range(250):
        g = rand_graph(seed + 3000, 6 + seed % 2, 0.25 + 0.06 * (seed % 5))
        order = brute_star_c1p(g)
        if order is None:
            rejected += 1
            assert not ordering_exists_exhaustive(g)
        else:
            found += 1
            assert sorted(order) == list(range(g.n))
            assert consecutive_ok(g, order)
    assert found > 40 and rejected > 40


def test_orderable_graphs_have_near_spanning_paths():
    for seed in range(250):
        g = rand_graph(seed + 4000, 3 + seed % 6, 0.5)
        if not is_connected(g):
            continue
        if brute_star_c1p(g) is not None:
            assert brute_path_eccentricity(g)[0] <= 1


# ---------------------------------------------------------------------------
# is_k_at_free


def test_k_at_frozen_cases():
    assert is_k_at_free(fam("CLAW"), 1) is True
    assert is_k_at_free(fam("CYCLE", n=6), 1) == (0, 2, 4)
    assert is_k_at_free(fam("SK", k=2), 1) == (2, 4, 6)
    assert is_k_at_free(fam("SK", k=2), 2) is True
    with pytest.raises(ValueError, match="k must be >= 1"):
        is_k_at_free(fam("CLAW"), 0)


def test_k_at_triples_are_independent():
    for seed in range(150):
        g = rand_graph(seed + 5000, 4 + seed % 5, 0.3)
        hit = is_k_at_free(g, 1)
        if hit is not True:
            a, b, c = hit
            assert a < b < c
            assert not g.has_edge(a, b)
            assert not g.has_edge(a, c)
            assert not g.has_edge(b, c)


def test_k_at_freeness_is_monotone_in_k():
    for seed in range(150):
        g = rand_graph(seed + 6000, 4 + seed % 5, 0.35)
        if is_k_at_free(g, 1) is True:
            assert is_k_at_free(g, 2) is True
        if is_k_at_free(g, 2) is True:
            assert is_k_at_free(g, 3) is True


# ---------------------------------------------------------------------------
# brute_stm_search


def test_stm_search_branch_instance():
    # five-vertex path with a foot hanging off the middle: the middle
    # vertex becomes the branch of a spider
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    w = brute_stm_search(g, (0, 4, 5), (1, 2, 3))
    assert w.cls == "S"
    assert w.branch == 2
    assert w.extremities == (0, 4, 5)
    assert classify_stm(g, w) is None


def test_stm_search_center_instance():
    # same path, foot attached at two spread interior vertices instead
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 5)])
    w = brute_stm_search(g, (0, 4, 5), (1, 2, 3))
    assert w.cls == "M"
    assert w.center == 5
    assert w.core_path == (0, 1, 2, 3, 4)
    assert classify_stm(g, w) is None


def test_stm_search_short_core_instance():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)])
    w = brute_stm_search(g, (0, 3, 4), (1, 2))
    assert w.cls == "M"
    assert w.center == 4
    assert w.core_path == (0, 1, 2, 3)
    assert classify_stm(g, w) is None


def test_stm_search_minimality():
    # candidate pool padded with unused vertices; the search must still
    # return the 3-vertex core, not something larger
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (2, 6), (6, 7)])
    w = brute_stm_search(g, (0, 4, 5), (1, 2, 3, 6, 7))
    assert w.cls == "S"
    assert w.vertex_set() == {0, 1, 2, 3, 4, 5}


def test_stm_search_precondition_errors():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    with pytest.raises(ValueError, match="exactly three extremities"):
        brute_stm_search(g, (0, 4), (1, 2, 3))
    with pytest.raises(ValueError, match="extremities 0 and 1 are adjacent"):
        brute_stm_search(g, (0, 1, 5), (2, 3))
    with pytest.raises(ValueError, match="disjoint from the candidate set"):
        brute_stm_search(g, (0, 4, 5), (2, 3, 4))
    with pytest.raises(ValueError, match="candidate set is not connected"):
        brute_stm_search(g, (0, 4, 5), (1, 3))
    with pytest.raises(ValueError, match="needs a neighbor in the candidate set"):
        brute_stm_search(g, (0, 4, 5), (1, 2))


def test_stm_search_cap():
    # star with 14 leaves: the candidate's closed neighborhood is all 15
    # vertices, past the default cap
    g = fam("STAR", n=14)
    with pytest.raises(CapExceeded, match="oracle cap is 13"):
        brute_stm_search(g, (1, 2, 3), (0,))
    w = brute_stm_search(g, (1, 2, 3), (0,), cap=15)
    assert w.cls == "S"
    assert w.branch == 0


# ---------------------------------------------------------------------------
# counter PRNG


def test_rng_matches_published_stream():
    # first outputs of the well-known 64-bit mixer stream from seed 0
    rng = CounterRng(0)
    assert [rng.value(i) for i in range(4)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
        0xF88BB8A8724C81EC,
    ]


@given(st.integers(0, MASK64), st.integers(0, 500))
@settings(max_examples=200, deadline=None)
def test_rng_matches_reference_transcription(seed, index):
    rng = CounterRng(seed)
    assert rng.value(index) == splitmix64_ref(seed, index + 1)[-1]


def test_rng_below():
    rng = CounterRng(7)
    vals = [rng.below(i, 10) for i in range(100)]
    assert all(0 <= v < 10 for v in vals)
    assert len(set(vals)) > 3
    assert rng.below(0, 10) == rng.below(0, 10)
    with pytest.raises(ValueError, match="bound must be positive"):
        rng.below(0, 0)


def test_threshold_extremes():
    assert _threshold(0.0) == 0
    assert _threshold(1.0) == 1 << 64
    assert _threshold(-3.0) == 0
    assert _threshold(5.0) == 1 << 64
    rng = CounterRng(3)
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    assert _pair_edges_by_threshold(6, _threshold(0.0), rng, 0, pairs) == []
    assert _pair_edges_by_threshold(6, _threshold(1.0), rng, 0, pairs) == pairs


@pytest.mark.parametrize("n, p", [(100, 0.07), (100, 0.5), (128, 0.93)])
def test_edge_sampling_routes_agree(n, p):
    # n*(n-1)/2 >= 4096 pushes _gnp_edges onto the vectorized route; the
    # scalar route must produce the identical edge list
    rng = CounterRng(12345)
    fast = _gnp_edges(n, p, rng, 0)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    slow = _pair_edges_by_threshold(n, _threshold(p), rng, 0, pairs)
    assert fast == slow
    assert 0 < len(fast) < len(pairs)


# ---------------------------------------------------------------------------
# generators


def test_gnp_connected_deterministic():
    spec = GenSpec("GNP_CONNECTED", seed=1, n=8, p=0.3)
    assert gen_random(spec) == gen_random(spec)
    assert gen_random(spec) != gen_random(GenSpec("GNP_CONNECTED", seed=2, n=8, p=0.3))


@pytest.mark.parametrize("seed", range(8))
def test_gnp_connected_is_connected(seed):
    # p far below the connectivity threshold forces the tree augmentation
    g = gen_random(GenSpec("GNP_CONNECTED", seed=seed, n=14, p=0.02))
    assert g.n == 14
    assert is_connected(g)


def test_gnp_parameter_errors():
    with pytest.raises(ValueError, match="GNP_CONNECTED requires n >= 1"):
        gen_random(GenSpec("GNP_CONNECTED", n=0, p=0.5))
    with pytest.raises(ValueError, match="GNP_CONNECTED requires p"):
        gen_random(GenSpec("GNP_CONNECTED", n=5))


def test_split_structure():
    g = gen_random(GenSpec("SPLIT", seed=11, n=13, density=0.3))
    h = 6
    for i in range(h):
        for j in range(i + 1, h):
            assert g.has_edge(i, j)
    for i in range(h, 13):
        for j in range(i + 1, 13):
            assert not g.has_edge(i, j)
        assert g.degree(i) >= 1
    assert is_connected(g)


def test_mk_instance_annotation_validates():
    spec = GenSpec("MK_INSTANCE", seed=4, k=2, core_len=6, center_degree=2)
    g, witness = gen_annotated(spec)
    assert witness is not None
    assert witness.cls == "M_k"
    assert validate_solver_witness(g, witness, 2) is None
    assert gen_random(spec) == g


def test_mk_instance_parameter_errors():
    with pytest.raises(ValueError, match="core_len >= 4"):
        gen_random(GenSpec("MK_INSTANCE", k=1, core_len=3, center_degree=2))
    with pytest.raises(ValueError, match="2 <= center_degree <= 2"):
        gen_random(GenSpec("MK_INSTANCE", k=1, core_len=4, center_degree=3))


def test_pattern_free_rejection():
    base = GenSpec("GNP_CONNECTED", n=6, p=0.6)
    spec = GenSpec(
        "PATTERN_FREE",
        seed=21,
        base=base,
        forbidden=(FamilySpec("CLAW"), FamilySpec("NET")),
    )
    g = gen_random(spec)
    assert find_induced(g, fam("CLAW")) is None
    assert find_induced(g, fam("NET")) is None
    assert gen_random(spec) == g


def test_pattern_free_budget_exhaustion():
    # a single vertex is an induced subgraph of anything nonempty, so
    # every attempt is rejected
    spec = GenSpec(
        "PATTERN_FREE",
        seed=1,
        base=GenSpec("GNP_CONNECTED", n=4, p=0.5),
        forbidden=(FamilySpec("PATH", n=1),),
        max_rejections=5,
    )
    with pytest.raises(ValueError, match="rejection budget exhausted after 5"):
        gen_random(spec)


def test_gen_spec_json_round_trip():
    spec = GenSpec(
        "PATTERN_FREE",
        seed=9,
        base=GenSpec("SPLIT", seed=0, n=12, density=0.4),
        forbidden=(FamilySpec("SK", k=2), FamilySpec("TK", k=2)),
        max_rejections=32,
    )
    assert GenSpec.from_json(spec.to_json()) == spec
    with pytest.raises(ValueError, match="unknown generator kind"):
        GenSpec.from_json({"kind": "LATTICE"})
    with pytest.raises(ValueError, match="must be an object"):
        GenSpec.from_json(17)


def test_expand_manifest():
    entries = [
        {"spec": {"kind": "GNP_CONNECTED", "n": 6, "p": 0.5}, "seeds": [1, 2, 3]},
        {"spec": {"kind": "SPLIT", "n": 10, "density": 0.2}, "seeds": [7]},
    ]
    specs = expand_manifest(entries)
    assert len(specs) == 4
    assert [s.seed for s in specs] == [1, 2, 3, 7]
    assert specs[0].kind == "GNP_CONNECTED"
    assert specs[3].kind == "SPLIT"
    graphs = [gen_random(s) for s in specs]
    assert all(g.n in (6, 10) for g in graphs)
