"""Certifying path-eccentricity and dominating-path algorithms.

The solver either returns a short-eccentricity path or a structural
witness that none exists; both come with certificates that are re-checked
against the input graph by direct adjacency tests.  Exhaustive oracles,
deterministic generators, and a CLI live in their own modules.
"""

from .dompath import (
    DomPathCert,
    StepResult,
    ThreeP2Cert,
    check_dom_certificate,
    dom_certificate_from_json,
    dom_step,
    dominating_path,
    dominating_path_detailed,
)
from .graph import (
    UNREACHABLE,
    DistanceMap,
    EdgeListError,
    Graph,
    bfs_from_set,
    bfs_tree,
    check_path,
    covered_set,
    emit_dot,
    induced,
    is_connected,
    is_path,
    parse_edge_list,
    path_eccentricity_of,
    write_edge_list,
)
from .kernels import backend_name
from .oracles import (
    CapExceeded,
    CounterRng,
    GenSpec,
    OracleCaps,
    brute_longest_path,
    brute_path_eccentricity,
    brute_star_c1p,
    brute_stm_search,
    expand_manifest,
    find_induced,
    gen_annotated,
    gen_random,
    is_k_at_free,
)
from .patterns import (
    EmbeddedCerts,
    FamilySpec,
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
    stm_m,
    stm_s,
    stm_t,
    validate_solver_witness,
)
from .solver import (
    PathCert,
    SolveStats,
    WitnessCert,
    certificate_from_json,
    check_certificate,
    solve,
    solve_detailed,
    stm_construct,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CounterRng",
    "DistanceMap",
    "DomPathCert",
    "EdgeListError",
    "EmbeddedCerts",
    "FamilySpec",
    "GenSpec",
    "Graph",
    "NearEmbedding",
    "OracleCaps",
    "PathCert",
    "SolveStats",
    "SolverWitness",
    "StepResult",
    "StmWitness",
    "ThreeP2Cert",
    "UNREACHABLE",
    "WitnessCert",
    "attach_embedded",
    "backend_name",
    "bfs_from_set",
    "bfs_tree",
    "brute_longest_path",
    "brute_path_eccentricity",
    "brute_star_c1p",
    "brute_stm_search",
    "build_family",
    "certificate_from_json",
    "check_certificate",
    "check_dom_certificate",
    "check_path",
    "classify_stm",
    "covered_set",
    "dom_certificate_from_json",
    "dom_step",
    "dominating_path",
    "dominating_path_detailed",
    "emit_dot",
    "expand_manifest",
    "extract_3pk",
    "extract_near_sk_tk",
    "extract_p2k1_pk1",
    "find_induced",
    "fits_bound",
    "gen_annotated",
    "gen_random",
    "induced",
    "is_connected",
    "is_k_at_free",
    "is_path",
    "parse_edge_list",
    "path_eccentricity_of",
    "solve",
    "solve_detailed",
    "stm_construct",
    "stm_m",
    "stm_s",
    "stm_t",
    "validate_solver_witness",
    "write_edge_list",
]
