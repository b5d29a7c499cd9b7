"""Stay, destination and GOI extraction from GPS trajectories."""

from ._core import (
    Destination,
    FinalGrid,
    GoigridError,
    GridCell,
    InvalidInput,
    MergeParams,
    PipelineConfig,
    Region,
    Stay,
    StageMismatch,
    StayParams,
    Trajectory,
    __version__,
    estimate_gois,
    evaluate_batch,
    extract_destinations,
    extract_stays,
    generate_scenario,
    geometric_similarity,
    jaccard,
    label,
    label_nnq,
    partition,
    project,
    unproject,
)

__all__ = [
    "Destination",
    "FinalGrid",
    "GoigridError",
    "GridCell",
    "InvalidInput",
    "MergeParams",
    "PipelineConfig",
    "Region",
    "Stay",
    "StageMismatch",
    "StayParams",
    "Trajectory",
    "__version__",
    "estimate_gois",
    "evaluate_batch",
    "extract_destinations",
    "extract_stays",
    "generate_scenario",
    "geometric_similarity",
    "jaccard",
    "label",
    "label_nnq",
    "partition",
    "project",
    "unproject",
]
