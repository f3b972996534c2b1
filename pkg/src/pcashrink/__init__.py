"""Covariance PCA from scratch, plus tools that measure what truncating
the transform does to pairwise distances: every distance shrinks (never
grows), the shrinkage is bounded by the endpoints' reconstruction
errors, and the discarded-eigenvalue sum predicts how much shrinkage to
expect. See the demos/ directory for worked examples."""

from ._version import VERSION as __version__
from .errors import (
    BadFoldsError,
    DatasetIOError,
    DatasetParseError,
    DegenerateLabelsError,
    DimMismatchError,
    EmptyDataError,
    FullRankInjectiveError,
    InsufficientPairsError,
    InsufficientRowsError,
    NoConvergenceError,
    NonFiniteError,
    NotSymmetricError,
    ToolkitError,
    ZeroVarianceError,
)
from .matrix import (
    EigenPairs,
    covariance,
    euclidean_distance,
    jacobi_eigendecomposition,
)
from .pca import (
    PcaModel,
    discarded_eigenvalue_sum,
    fit,
    load_model,
    reconstruct,
    save_model,
    transform,
)
from .shrinkage import (
    CorrelationSummary,
    PairTable,
    ShrinkageRecord,
    ShrinkageSummary,
    collision_witness,
    mean_shrinkage,
    pair_reconstruction_error,
    pair_shrinkage,
    pearson,
    shrinkage_summary,
    shrinkage_table,
)
from .experiments import (
    Dataset,
    STRONG_CORRELATION,
    SweepResult,
    SweepRow,
    anisotropic_gaussian,
    correlate,
    knn_accuracy,
    load_csv,
    run_sweep,
)

__all__ = [
    "__version__",
    "ToolkitError",
    "EmptyDataError",
    "NonFiniteError",
    "NotSymmetricError",
    "NoConvergenceError",
    "DimMismatchError",
    "FullRankInjectiveError",
    "InsufficientPairsError",
    "ZeroVarianceError",
    "InsufficientRowsError",
    "BadFoldsError",
    "DegenerateLabelsError",
    "DatasetIOError",
    "DatasetParseError",
    "EigenPairs",
    "covariance",
    "euclidean_distance",
    "jacobi_eigendecomposition",
    "PcaModel",
    "fit",
    "transform",
    "reconstruct",
    "discarded_eigenvalue_sum",
    "save_model",
    "load_model",
    "ShrinkageRecord",
    "ShrinkageSummary",
    "PairTable",
    "CorrelationSummary",
    "pair_shrinkage",
    "pair_reconstruction_error",
    "collision_witness",
    "shrinkage_table",
    "shrinkage_summary",
    "mean_shrinkage",
    "pearson",
    "Dataset",
    "STRONG_CORRELATION",
    "SweepRow",
    "SweepResult",
    "load_csv",
    "knn_accuracy",
    "run_sweep",
    "correlate",
    "anisotropic_gaussian",
]
