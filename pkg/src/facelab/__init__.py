"""Exact polytope face lattices, face-hypergraph connectivity, ridge paths."""

from .geometry import (
    GeometryError,
    Hyperplane,
    QVector,
    Rational,
    affine_rank,
    barycenter,
    convex_combination,
    format_rational,
    hyperplane_through,
    parse_rational,
    point_in_hull,
    segment_hyperplane_intersection,
    side,
)
from .generators import (
    FAMILIES,
    GeneratorError,
    GeneratorSpec,
    cross_polytope,
    cube,
    cyclic,
    generate,
    prism,
    prism_over,
    pyramid,
    pyramid_over,
    random_polytope,
    simplex,
)
from .hypergraph import (
    ConnectivityReport,
    DisconnectionWitness,
    FaceHypergraph,
    HypergraphError,
    build_hypergraph,
    check_duality_equivalence,
    find_isolating_set,
    is_connected_after_removal,
    strong_connectivity,
)
from .polytope import (
    EMPTY_FACE_ID,
    Face,
    FaceLattice,
    PolytopeError,
    VPolytope,
    face_id,
    face_lattice,
    facets,
    format_polytope,
    lattice_anti_isomorphic,
    load_polytope,
    parse_face_id,
    parse_polytope,
    polar_dual,
    polar_dual_with_incidence,
    save_polytope,
)
from .ridgepath import (
    BlockedSet,
    RidgePath,
    RidgePathError,
    RidgePathResult,
    find_cutting_hyperplane,
    find_ridge_path,
    search_cutting_hyperplane,
    solve_ridge_path,
    verify_ridge_path,
)
from .section import SectionError, SectionMap, cuts_face, parse_hyperplane, section

__version__ = "0.1.0"

__all__ = [
    "BlockedSet",
    "ConnectivityReport",
    "DisconnectionWitness",
    "EMPTY_FACE_ID",
    "FAMILIES",
    "Face",
    "FaceHypergraph",
    "FaceLattice",
    "GeneratorError",
    "GeneratorSpec",
    "GeometryError",
    "Hyperplane",
    "HypergraphError",
    "PolytopeError",
    "QVector",
    "Rational",
    "RidgePath",
    "RidgePathError",
    "RidgePathResult",
    "SectionError",
    "SectionMap",
    "VPolytope",
    "affine_rank",
    "barycenter",
    "build_hypergraph",
    "check_duality_equivalence",
    "convex_combination",
    "cross_polytope",
    "cube",
    "cuts_face",
    "cyclic",
    "face_id",
    "face_lattice",
    "facets",
    "find_cutting_hyperplane",
    "find_isolating_set",
    "find_ridge_path",
    "format_polytope",
    "format_rational",
    "generate",
    "hyperplane_through",
    "is_connected_after_removal",
    "lattice_anti_isomorphic",
    "load_polytope",
    "parse_face_id",
    "parse_hyperplane",
    "parse_polytope",
    "parse_rational",
    "point_in_hull",
    "polar_dual",
    "polar_dual_with_incidence",
    "prism",
    "prism_over",
    "pyramid",
    "pyramid_over",
    "random_polytope",
    "save_polytope",
    "search_cutting_hyperplane",
    "section",
    "segment_hyperplane_intersection",
    "side",
    "simplex",
    "solve_ridge_path",
    "strong_connectivity",
    "verify_ridge_path",
]
