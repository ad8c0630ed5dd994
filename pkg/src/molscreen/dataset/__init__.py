"""Dataset assembly: ingestion, labelling, clustering, leakage-safe splits."""

from .butina import butina_cluster, exclude_near_duplicates
from .density import MatrixAsymmetric, density_cluster
from .ingest import (
    ACTIVITY_THRESHOLD,
    ActivityLabel,
    ActivityRecord,
    ClassifiedCompound,
    ColumnMap,
    MissingColumn,
    RawRecord,
    Rejection,
    aggregate_replicates,
    classify_compounds,
    filter_cell_lines,
    ingest_gi50,
    label_activity,
    write_rejections,
)
from .split import (
    FOLDS,
    DatasetSplit,
    RatiosDontSumToOne,
    SimilarityAudit,
    assign_folds,
    audit_split,
    random_split,
    read_split_manifest,
    write_audit,
    write_split_manifest,
)

__all__ = [
    "ACTIVITY_THRESHOLD",
    "ActivityLabel",
    "ActivityRecord",
    "ClassifiedCompound",
    "ColumnMap",
    "DatasetSplit",
    "FOLDS",
    "MatrixAsymmetric",
    "MissingColumn",
    "RatiosDontSumToOne",
    "RawRecord",
    "Rejection",
    "SimilarityAudit",
    "aggregate_replicates",
    "assign_folds",
    "audit_split",
    "butina_cluster",
    "classify_compounds",
    "density_cluster",
    "exclude_near_duplicates",
    "filter_cell_lines",
    "ingest_gi50",
    "label_activity",
    "random_split",
    "read_split_manifest",
    "write_audit",
    "write_rejections",
]
