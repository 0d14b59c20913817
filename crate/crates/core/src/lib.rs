//! Relevance reasoning over graphoids.
//!
//! Conditional-independence oracles over discrete tables and regular
//! Gaussians, graphoid closure, minimal Bayesian network construction,
//! d-separation, the relations mutually-irrelevant / uncoupled / unrelated,
//! transitivity checks and similarity networks.
//!
//! The numeric backends are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

// Matrix and table code indexes several arrays with one loop variable, and
// negated comparisons deliberately reject NaN alongside out-of-range values.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod bayesnet;
pub mod dist;
mod error;
pub mod io;
pub mod model;
pub mod relevance;
mod scalar;
pub mod simnet;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use bayesnet::{Dag, SeparationQuery, Trail};
pub use dist::{CiOracle as GenericCiOracle, IndependenceOracle};
pub use model::{DependencyModel, Triplet, Universe, VarSet, VariableId};

pub type JointTable = dist::JointTable<f64>;
pub type GaussianModel = dist::GaussianModel<f64>;
pub type CiOracle = dist::CiOracle<f64>;
pub type JointTableF32 = dist::JointTable<f32>;
pub type GaussianModelF32 = dist::GaussianModel<f32>;
