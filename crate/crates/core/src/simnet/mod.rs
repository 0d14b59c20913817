//! Similarity networks: one local network per subset of hypotheses, each over
//! the variables that help distinguish the hypotheses in that subset.

use std::fmt;

use serde::Serialize;

use crate::bayesnet::{build_network, factorization_error, Dag};
use crate::dist::{CiOracle, IndependenceOracle, JointTable};
use crate::error::{Error, Result};
use crate::model::{VarSet, VariableId};
use crate::relevance::mutually_irrelevant;
use crate::scalar::Scalar;

pub mod fixtures;

/// Inclusion rule for local networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NetType {
    /// Variables related to the hypothesis (connected in a minimal network).
    Related = 1,
    /// Variables relevant to the hypothesis (not mutually irrelevant).
    Relevant = 2,
}

impl NetType {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(NetType::Related),
            2 => Ok(NetType::Relevant),
            other => Err(Error::InvalidArgument(format!(
                "similarity network type must be 1 or 2, got {other}"
            ))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for NetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {}", self.number())
    }
}

impl Serialize for NetType {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

/// A distinguished hypothesis variable and a cover of its values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCover {
    pub h: usize,
    /// Each subset sorted and free of duplicates.
    pub subsets: Vec<Vec<usize>>,
}

impl HypothesisCover {
    /// Validates against `table`: every subset holds at least two distinct
    /// values of `h`, and together the subsets cover the domain of `h`.
    pub fn new<T: Scalar>(
        table: &JointTable<T>,
        h: usize,
        subsets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let u = table.universe();
        if h >= u.len() {
            return Err(Error::InvalidCover(format!(
                "hypothesis index {h} is outside the universe"
            )));
        }
        let card = u.cardinality(h);
        let mut covered = vec![false; card];
        let mut normalized = Vec::with_capacity(subsets.len());
        for mut s in subsets {
            s.sort_unstable();
            s.dedup();
            if s.len() < 2 {
                return Err(Error::InvalidCover(format!(
                    "subset {s:?} of `{}` needs at least two values",
                    u.name(h)
                )));
            }
            if let Some(v) = s.iter().find(|v| **v >= card) {
                return Err(Error::InvalidCover(format!(
                    "value {v} is outside the domain of `{}`",
                    u.name(h)
                )));
            }
            for v in &s {
                covered[*v] = true;
            }
            normalized.push(s);
        }
        if normalized.is_empty() || covered.contains(&false) {
            return Err(Error::InvalidCover(format!(
                "subsets do not cover the domain of `{}`",
                u.name(h)
            )));
        }
        Ok(Self {
            h,
            subsets: normalized,
        })
    }

    /// The single subset holding every value of `h`.
    pub fn whole<T: Scalar>(table: &JointTable<T>, h: usize) -> Result<Self> {
        let card = table
            .universe()
            .check_set(VarSet::singleton(h))
            .map(|_| table.universe().cardinality(h))?;
        Self::new(table, h, vec![(0..card).collect()])
    }

    /// [`HypothesisCover::new`] with names and value labels.
    pub fn named<T: Scalar, S: AsRef<str>>(
        table: &JointTable<T>,
        h: &str,
        subsets: &[Vec<S>],
    ) -> Result<Self> {
        let u = table.universe();
        let hi = u.index_of(h)?;
        let subsets = subsets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|label| {
                        let label = label.as_ref();
                        u.domain(hi).iter().position(|v| v == label).ok_or_else(|| {
                            Error::InvalidCover(format!("`{label}` is not a value of `{h}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, hi, subsets)
    }
}

/// One local network of a similarity network.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalNetwork {
    /// The hypotheses this network distinguishes (values of `h`).
    pub hypotheses: Vec<usize>,
    /// Included variables, as indices into the source table's universe (`h` excluded).
    pub included: VarSet,
    /// Minimal network over `{h} ∪ included` with `h` first, then listing order.
    pub dag: Dag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityNetwork {
    pub cover: HypothesisCover,
    pub net_type: NetType,
    pub locals: Vec<LocalNetwork>,
}

/// Conditions `table` on `h ∈ hs`; the domain of `h` shrinks to `hs`.
pub fn restrict_to_hypotheses<T: Scalar>(
    table: &JointTable<T>,
    h: usize,
    hs: &[usize],
) -> Result<JointTable<T>> {
    table.condition_on_values(h, hs)
}

/// Variables other than `h` included by `net_type` in the `hs`-restricted table.
pub fn included_variables<T: Scalar>(
    table: &JointTable<T>,
    h: usize,
    hs: &[usize],
    net_type: NetType,
) -> Result<VarSet> {
    let restricted = restrict_to_hypotheses(table, h, hs)?;
    let oracle = CiOracle::table(restricted);
    let others = oracle.universe().all().without(h);
    match net_type {
        NetType::Related => {
            let order: Vec<usize> = std::iter::once(h).chain(others.iter()).collect();
            let dag = build_network(&oracle, &order)?;
            Ok(others.iter().filter(|&x| dag.connected(x, h)).collect())
        }
        NetType::Relevant => {
            let mut included = VarSet::EMPTY;
            for x in others.iter() {
                if !mutually_irrelevant(&oracle, x, h)?.holds {
                    included = included.with(x);
                }
            }
            Ok(included)
        }
    }
}

/// The marginal of the `hs`-restricted table over `{h} ∪ included`.
fn local_table<T: Scalar>(
    table: &JointTable<T>,
    h: usize,
    hs: &[usize],
    included: VarSet,
) -> Result<JointTable<T>> {
    restrict_to_hypotheses(table, h, hs)?.marginalize(included.with(h))
}

pub fn build_local<T: Scalar>(
    table: &JointTable<T>,
    h: usize,
    hs: &[usize],
    net_type: NetType,
) -> Result<LocalNetwork> {
    let included = included_variables(table, h, hs, net_type)?;
    let keep = included.with(h);
    let marginal = local_table(table, h, hs, included)?;
    let local_h = table
        .universe()
        .project(keep, VarSet::singleton(h))
        .first()
        .expect("h is kept");
    let order: Vec<usize> = std::iter::once(local_h)
        .chain((0..keep.len()).filter(|&v| v != local_h))
        .collect();
    let dag = build_network(&CiOracle::table(marginal), &order)?;
    let mut hypotheses = hs.to_vec();
    hypotheses.sort_unstable();
    hypotheses.dedup();
    Ok(LocalNetwork {
        hypotheses,
        included,
        dag,
    })
}

pub fn build_similarity<T: Scalar>(
    table: &JointTable<T>,
    cover: &HypothesisCover,
    net_type: NetType,
) -> Result<SimilarityNetwork> {
    let locals = cover
        .subsets
        .iter()
        .map(|hs| build_local(table, cover.h, hs, net_type))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimilarityNetwork {
        cover: cover.clone(),
        net_type,
        locals,
    })
}

/// Largest chaining-rule residual over the local networks: each local dag's
/// product of conditionals against the restricted marginal it was built from.
pub fn chain_rule_error<T: Scalar>(table: &JointTable<T>, net: &SimilarityNetwork) -> Result<T> {
    let mut worst = T::zero();
    for local in &net.locals {
        let marginal = local_table(table, net.cover.h, &local.hypotheses, local.included)?;
        worst = worst.max(factorization_error(&marginal, &local.dag)?);
    }
    Ok(worst)
}

/// Variables included under one type but not the other, for one cover subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub hypotheses: Vec<usize>,
    pub related_only: Vec<VariableId>,
    pub relevant_only: Vec<VariableId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// One entry per cover subset whose included sets differ.
    pub divergences: Vec<Divergence>,
}

/// Compares the included sets of the two network types subset by subset.
pub fn types_equivalent<T: Scalar>(
    table: &JointTable<T>,
    cover: &HypothesisCover,
) -> Result<EquivalenceReport> {
    let u = table.universe();
    let mut divergences = Vec::new();
    for hs in &cover.subsets {
        let related = included_variables(table, cover.h, hs, NetType::Related)?;
        let relevant = included_variables(table, cover.h, hs, NetType::Relevant)?;
        if related != relevant {
            divergences.push(Divergence {
                hypotheses: hs.clone(),
                related_only: u.names(related.difference(relevant)),
                relevant_only: u.names(relevant.difference(related)),
            });
        }
    }
    Ok(EquivalenceReport {
        equivalent: divergences.is_empty(),
        divergences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::random_spb;
    use crate::model::Universe;
    use crate::simnet::fixtures::{diagnosis_cover, diagnosis_table, xor_hypothesis_table};

    #[test]
    fn cover_validation() {
        let t = diagnosis_table::<f64>();
        assert!(HypothesisCover::new(&t, 0, vec![vec![0, 1], vec![2, 3, 4]]).is_ok());
        assert!(HypothesisCover::new(&t, 0, vec![vec![0], vec![1, 2, 3, 4]]).is_err());
        assert!(HypothesisCover::new(&t, 0, vec![vec![0, 1], vec![2, 3]]).is_err());
        assert!(HypothesisCover::new(&t, 0, vec![vec![0, 1], vec![2, 3, 4, 5]]).is_err());
        assert!(HypothesisCover::new(&t, 9, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn full_restriction_is_identity() {
        let t = random_spb::<f64>(3, 4).unwrap();
        assert_eq!(restrict_to_hypotheses(&t, 0, &[0, 1]).unwrap(), t);
    }

    #[test]
    fn xor_types_diverge_on_y() {
        let t = xor_hypothesis_table::<f64>();
        let cover = HypothesisCover::whole(&t, 0).unwrap();
        let related = build_similarity(&t, &cover, NetType::Related).unwrap();
        let relevant = build_similarity(&t, &cover, NetType::Relevant).unwrap();
        assert_eq!(related.locals[0].included, VarSet::from_indices([1, 2]));
        assert_eq!(relevant.locals[0].included, VarSet::singleton(2));
        let report = types_equivalent(&t, &cover).unwrap();
        assert!(!report.equivalent);
        assert_eq!(report.divergences.len(), 1);
        assert_eq!(
            report.divergences[0].related_only,
            vec![VariableId::new("y").unwrap()]
        );
        assert!(report.divergences[0].relevant_only.is_empty());
        for net in [&related, &relevant] {
            assert!(chain_rule_error(&t, net).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn diagnosis_structure() {
        let t = diagnosis_table::<f64>();
        let cover = diagnosis_cover(&t);
        let net = build_similarity(&t, &cover, NetType::Related).unwrap();
        let u = t.universe();
        let names = |s: VarSet| {
            u.names(s)
                .into_iter()
                .map(|v| v.as_str().to_owned())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(net.locals[0].included), ["u1", "u2", "u3"]);
        assert_eq!(names(net.locals[1].included), ["u1"]);
        assert_eq!(names(net.locals[2].included), ["u1", "u2", "u3", "u4"]);
        assert!(types_equivalent(&t, &cover).unwrap().equivalent);
        assert!(chain_rule_error(&t, &net).unwrap() <= 1e-9);
        // The local dag lists h first.
        assert_eq!(net.locals[1].dag.universe().name(0), "h");
        assert_eq!(net.locals[1].dag.order()[0], 0);
    }

    #[test]
    fn positive_binary_tables_agree() {
        for seed in 0..10 {
            let t = random_spb::<f64>(4, seed).unwrap();
            let cover = HypothesisCover::whole(&t, 0).unwrap();
            assert!(types_equivalent(&t, &cover).unwrap().equivalent);
        }
    }

    #[test]
    fn lone_variable_plus_hypothesis() {
        let u = Universe::with_cardinalities([("h", 2), ("a", 2)]).unwrap();
        let t = JointTable::new(u, vec![0.4, 0.1, 0.2, 0.3]).unwrap();
        let cover = HypothesisCover::whole(&t, 0).unwrap();
        assert!(types_equivalent(&t, &cover).unwrap().equivalent);
        let net = build_similarity(&t, &cover, NetType::Relevant).unwrap();
        assert_eq!(net.locals[0].included, VarSet::singleton(1));
        assert_eq!(net.locals[0].dag.edges(), vec![(0, 1)]);
    }

    #[test]
    fn deterministic() {
        let t = diagnosis_table::<f64>();
        let cover = diagnosis_cover(&t);
        assert_eq!(
            build_similarity(&t, &cover, NetType::Relevant).unwrap(),
            build_similarity(&t, &cover, NetType::Relevant).unwrap()
        );
    }
}
