"""Euler characteristic transform descriptors for molecular graphs."""

from ._core import (  # noqa: F401
    Atom,
    Bond,
    BondOrder,
    Chirality,
    DirectionSet,
    EctmolError,
    FEATURE_WIDTH,
    GENERATOR_ID,
    MolecularGraph,
    ThresholdGrid,
    __version__,
    add_implicit_hydrogens,
    compute_ecc,
    compute_ect,
    connected_components,
    cross_validate,
    cycle_rank,
    ect_batch,
    ect_from_smiles,
    edge_list,
    euler_characteristic,
    feature_names,
    featurize,
    largest_component,
    normalize_dataset,
    parse_smiles,
    r_squared,
    rmse,
    sample_directions,
)
