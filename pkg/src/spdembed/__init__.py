"""Low-distortion embeddings of graphs with shallow shortest path decompositions into l_p."""
from .embed import (
    CoordinateMeta,
    EmbedParams,
    Embedding,
    EmbeddingPlan,
    compose,
    embed,
    embed_compact,
    embed_single,
    load_embedding,
    save_embedding,
    sign_codes,
)
from .graph import GraphError, WeightedGraph, apsp, dijkstra, normalize_and_scale, read_graph, write_graph
from .lowerbound import (
    PoincareWeights,
    diamond_distortion_lower_bound,
    diamond_poincare,
    diamond_weighted_distance_sum,
    quadrilateral_gap,
)
from .metrics import DistortionReport, contraction_estimate, coordinate_lipschitz, distortion, max_support
from .rng import make_rng
from .sawtooth import RandomShift, sawtooth, sawtooth_shifted
from .spd import (
    SPD,
    Cluster,
    PathDecomposition,
    SPDValidationError,
    build_spd,
    build_spd_from_path_decomposition,
    build_spd_greedy,
    pathwidth_exact,
    validate_path_decomposition,
    validate_spd,
)

__version__ = "0.1.0"
