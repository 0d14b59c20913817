//! Relevance relations, transitivity, and the partition implications that
//! make strictly positive binary and regular Gaussian distributions transitive.

mod clean;
mod gaussian_props;
mod relations;
mod transitivity;

pub use clean::{
    check_clean, check_pt_bin, partition_triples, CheckResult, Disjunct, PartitionTriple,
    PtBinBlocks,
};
pub use gaussian_props::{
    check_gaussian_properties, gaussian_axioms_check, GaussianPropertiesReport, GaussianProperty,
    PropertyViolation, GAUSSIAN_PROPS_LIMIT,
};
pub use relations::{
    mutually_irrelevant, mutually_irrelevant_sets, relations, uncoupled, unrelated, Relation,
    RelationVerdict, Witness, RELATION_LIMIT,
};
pub use transitivity::{is_transitive, relevance_matrix, TransitivityVerdict, TRANSITIVITY_LIMIT};
