//! Universes, independence triplets, dependency models and the graphoid axioms.

mod axioms;
mod closure;
mod dependency;
mod triplet;
mod universe;

pub use axioms::{check_graphoid_axioms, Axiom, AxiomViolation};
pub use closure::{graphoid_closure, CLOSURE_LIMIT};
pub use dependency::DependencyModel;
pub use triplet::{all_triplets, Triplet};
pub use universe::{Members, Subsets, Universe, VarSet, VariableId, MAX_VARIABLES};

pub(crate) use closure::check_bound;
