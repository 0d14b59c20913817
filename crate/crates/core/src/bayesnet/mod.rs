//! Minimal Bayesian networks built from a CI oracle, and graph queries on them.

mod build;
mod dag;
mod dsep;
mod factor;

pub use build::{
    audit_minimality, build_network, build_network_canonical, build_network_named, minimal_parents,
    MinimalityViolation,
};
pub use dag::{alarm_network, Dag};
pub use dsep::{
    d_separated, d_separated_by_trails, find_trail, trails_between, SeparationQuery, Trail,
};
pub use factor::factorization_error;

/// Partition of the nodes into maximal trail-connected sets, ordered by least member.
pub fn connected_components(dag: &Dag) -> Vec<crate::model::VarSet> {
    dag.connected_components()
}
