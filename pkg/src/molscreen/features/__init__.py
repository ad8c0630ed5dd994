"""Numeric molecular representations: graphs, fingerprints, descriptors."""

from .atom_bond import (
    ATOM_DIM,
    BOND_DIM,
    LAYOUT_VERSION,
    atom_feature_names,
    atom_feature_vector,
    bond_feature_names,
    bond_feature_vector,
    is_conjugated,
)
from .descriptors import DESCRIPTOR_NAMES, physchem_descriptors
from .fingerprint import (
    Fingerprint,
    WidthMismatch,
    ecfp,
    environment_identifiers,
    jaccard_distance_matrix,
    tanimoto,
)
from .graph import (
    GLOBAL_DIM,
    FeaturizedGraph,
    add_explicit_hydrogens,
    export_feature_matrix,
    featurize,
)
from .pharmacophore import (
    VECTOR_LENGTH,
    atom_pharmacophore_types,
    pharmacophore_names,
    pharmacophore_pairs,
)
from .scaler import (
    FeatureScaler,
    SchemaMismatch,
    TooFewRows,
    apply_scaler,
    fit_scaler,
    invert_scaler,
)

__all__ = [
    "ATOM_DIM",
    "BOND_DIM",
    "DESCRIPTOR_NAMES",
    "FeatureScaler",
    "FeaturizedGraph",
    "Fingerprint",
    "GLOBAL_DIM",
    "LAYOUT_VERSION",
    "SchemaMismatch",
    "TooFewRows",
    "VECTOR_LENGTH",
    "WidthMismatch",
    "add_explicit_hydrogens",
    "apply_scaler",
    "atom_feature_names",
    "atom_feature_vector",
    "atom_pharmacophore_types",
    "bond_feature_names",
    "bond_feature_vector",
    "ecfp",
    "environment_identifiers",
    "export_feature_matrix",
    "featurize",
    "fit_scaler",
    "invert_scaler",
    "is_conjugated",
    "jaccard_distance_matrix",
    "pharmacophore_names",
    "pharmacophore_pairs",
    "physchem_descriptors",
    "tanimoto",
]
