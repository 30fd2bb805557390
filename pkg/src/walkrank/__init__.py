"""Graph affinities from Borda-aggregated, Jaccard-biased random walks.

The core pipeline: anchored random walks from every start node produce
first-visit rankings, Borda aggregation turns them into a dissimilarity
matrix, and Ward clustering / MDS / kNN classification consume it.
Includes the comparison baselines (Jaccard, Dice, personalized PageRank,
Laplacian embedding), synthetic generators (SBM, LFR, perturbation, kNN
graphs, subgraph sampling), partition metrics, and a benchmark harness.
"""

from .affinity import (
    RAW,
    ROW_NORMALIZED,
    STATES,
    SYMMETRIC,
    AffinityMatrix,
    BordaScores,
    MatrixStateError,
    assemble_affinity,
    borda,
    row_normalize,
    symmetrize,
)
from .analysis import (
    Dendrogram,
    EmbeddingMatrix,
    classical_mds,
    knn_classify,
    ward_cluster,
    ward_linkage,
)
from .baselines import (
    EmbeddingConfig,
    PprConfig,
    dice_matrix,
    embedding_distance_matrix,
    jaccard_matrix,
    laplacian_embedding,
    laplacian_matrix,
    personalized_pagerank,
    ppr_rows,
)
from .bench import METHODS, PRESETS, build_method_matrix, run_preset
from .generators import (
    GenerationError,
    LfrConfig,
    Partition,
    PerturbConfig,
    SbmConfig,
    knn_graph,
    lfr,
    mixing_fraction,
    perturb,
    sample_connected_subgraph,
    sbm,
)
from .graph import (
    Graph,
    component_labels,
    dice,
    from_edge_list,
    induced_subgraph,
    is_connected,
    jaccard,
    largest_connected_component,
)
from .io import (
    LabeledDataset,
    ParseError,
    read_edge_list,
    read_features,
    read_labels,
    read_matrix,
    read_report,
    write_edge_list,
    write_labels,
    write_matrix,
    write_report,
)
from .metrics import (
    ami,
    ari,
    balanced_accuracy,
    contingency,
    expected_mutual_information,
    nmi,
)
from .walks import (
    AnchoredKernel,
    DeadEndError,
    ExtendedRanking,
    WalkConfig,
    build_kernel,
    mix_seed,
    rank_table,
    run_walk,
    run_walks,
    transition_distribution,
    walk_stream,
)

__version__ = "0.1.0"

__all__ = [
    "AffinityMatrix",
    "AnchoredKernel",
    "BordaScores",
    "DeadEndError",
    "Dendrogram",
    "EmbeddingConfig",
    "EmbeddingMatrix",
    "ExtendedRanking",
    "GenerationError",
    "Graph",
    "LabeledDataset",
    "LfrConfig",
    "METHODS",
    "MatrixStateError",
    "PRESETS",
    "ParseError",
    "Partition",
    "PerturbConfig",
    "PprConfig",
    "RAW",
    "ROW_NORMALIZED",
    "STATES",
    "SYMMETRIC",
    "SbmConfig",
    "WalkConfig",
    "ami",
    "ari",
    "assemble_affinity",
    "balanced_accuracy",
    "borda",
    "build_kernel",
    "build_method_matrix",
    "classical_mds",
    "component_labels",
    "contingency",
    "dice",
    "dice_matrix",
    "embedding_distance_matrix",
    "expected_mutual_information",
    "from_edge_list",
    "induced_subgraph",
    "is_connected",
    "jaccard",
    "jaccard_matrix",
    "knn_classify",
    "knn_graph",
    "laplacian_embedding",
    "laplacian_matrix",
    "largest_connected_component",
    "lfr",
    "mix_seed",
    "mixing_fraction",
    "nmi",
    "personalized_pagerank",
    "perturb",
    "ppr_rows",
    "rank_table",
    "read_edge_list",
    "read_features",
    "read_labels",
    "read_matrix",
    "read_report",
    "row_normalize",
    "run_preset",
    "run_walk",
    "run_walks",
    "sample_connected_subgraph",
    "sbm",
    "symmetrize",
    "transition_distribution",
    "walk_stream",
    "ward_cluster",
    "ward_linkage",
    "write_edge_list",
    "write_labels",
    "write_matrix",
    "write_report",
]
