//! JSON interchange for models, distributions, networks and reports.
//!
//! Variable sets are written as arrays of names sorted alphabetically.
//! Probabilities and moments are written as shortest round-trip decimals,
//! so `from_json(to_json(x)) == x` bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bayesnet::Dag;
use crate::dist::{GaussianModel, JointTable};
use crate::error::{Error, Result};
use crate::model::{DependencyModel, Triplet, Universe, VarSet};
use crate::relevance::PartitionTriple;
use crate::scalar::Scalar;
use crate::simnet::SimilarityNetwork;

/// Artifacts with a JSON file format.
pub trait JsonArtifact: Sized {
    fn to_json(&self) -> Result<String>;
    fn from_json(text: &str) -> Result<Self>;
}

/// Names of `set`, sorted alphabetically.
pub fn sorted_names(universe: &Universe, set: VarSet) -> Vec<String> {
    let mut names: Vec<String> = set.iter().map(|v| universe.name(v).to_owned()).collect();
    names.sort();
    names
}

fn pretty<S: Serialize>(value: &S) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

#[derive(Serialize, Deserialize)]
struct TripletJson {
    x: Vec<String>,
    y: Vec<String>,
    z: Vec<String>,
}

impl TripletJson {
    fn from_triplet(u: &Universe, t: &Triplet) -> Self {
        Self {
            x: sorted_names(u, t.x),
            y: sorted_names(u, t.y),
            z: sorted_names(u, t.z),
        }
    }

    fn to_triplet(&self, u: &Universe) -> Result<Triplet> {
        Triplet::named(u, &self.x, &self.y, &self.z)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    variables: Vec<String>,
    triplets: Vec<TripletJson>,
}

impl JsonArtifact for DependencyModel {
    fn to_json(&self) -> Result<String> {
        let u = self.universe();
        pretty(&ModelJson {
            variables: u
                .variables()
                .iter()
                .map(|v| v.as_str().to_owned())
                .collect(),
            triplets: self
                .triplets()
                .iter()
                .map(|t| TripletJson::from_triplet(u, t))
                .collect(),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let m: ModelJson = serde_json::from_str(text)?;
        let u = Universe::new(m.variables)?;
        let triplets = m
            .triplets
            .iter()
            .map(|t| t.to_triplet(&u))
            .collect::<Result<Vec<_>>>()?;
        DependencyModel::new(u, triplets)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteVariable {
    name: String,
    values: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    variables: Vec<DiscreteVariable>,
    probs: Vec<f64>,
}

impl<T: Scalar> JsonArtifact for JointTable<T> {
    fn to_json(&self) -> Result<String> {
        let u = self.universe();
        pretty(&TableJson {
            variables: (0..u.len())
                .map(|i| DiscreteVariable {
                    name: u.name(i).to_owned(),
                    values: u.domain(i).to_vec(),
                })
                .collect(),
            probs: self.probs().iter().map(|p| p.to_f64_lossy()).collect(),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(text)?;
        let u = Universe::with_domains(t.variables.into_iter().map(|v| (v.name, v.values)))?;
        JointTable::new(u, t.probs.into_iter().map(T::lit).collect())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianJson {
    variables: Vec<String>,
    mean: Vec<f64>,
    cov: Vec<Vec<f64>>,
}

impl<T: Scalar> JsonArtifact for GaussianModel<T> {
    fn to_json(&self) -> Result<String> {
        let u = self.universe();
        pretty(&GaussianJson {
            variables: u
                .variables()
                .iter()
                .map(|v| v.as_str().to_owned())
                .collect(),
            mean: self.mean().iter().map(|m| m.to_f64_lossy()).collect(),
            cov: self
                .cov_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|c| c.to_f64_lossy()).collect())
                .collect(),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let g: GaussianJson = serde_json::from_str(text)?;
        let u = Universe::new(g.variables)?;
        let cov = g
            .cov
            .into_iter()
            .map(|row| row.into_iter().map(T::lit).collect())
            .collect();
        GaussianModel::new(u, g.mean.into_iter().map(T::lit).collect(), cov)
    }
}

/// A distribution file: a discrete table or a Gaussian.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution<T: Scalar = f64> {
    Table(JointTable<T>),
    Gaussian(GaussianModel<T>),
}

impl<T: Scalar> Distribution<T> {
    pub fn universe(&self) -> &Universe {
        match self {
            Distribution::Table(t) => t.universe(),
            Distribution::Gaussian(g) => g.universe(),
        }
    }
}

impl<T: Scalar> JsonArtifact for Distribution<T> {
    fn to_json(&self) -> Result<String> {
        match self {
            Distribution::Table(t) => t.to_json(),
            Distribution::Gaussian(g) => g.to_json(),
        }
    }

    /// A document with `probs` is a table; one with `cov` is a Gaussian.
    fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let has = |key: &str| value.get(key).is_some();
        if has("probs") {
            Ok(Distribution::Table(JointTable::from_json(text)?))
        } else if has("cov") {
            Ok(Distribution::Gaussian(GaussianModel::from_json(text)?))
        } else {
            Err(Error::InvalidDistribution(
                "expected a `probs` (discrete) or `cov` (Gaussian) field".into(),
            ))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DagJson {
    order: Vec<String>,
    #[serde(default)]
    parents: BTreeMap<String, Vec<String>>,
}

impl JsonArtifact for Dag {
    /// Every node gets a `parents` entry, empty for roots.
    fn to_json(&self) -> Result<String> {
        let u = self.universe();
        pretty(&DagJson {
            order: self.order().iter().map(|&v| u.name(v).to_owned()).collect(),
            parents: (0..self.len())
                .map(|v| (u.name(v).to_owned(), sorted_names(u, self.parents(v))))
                .collect(),
        })
    }

    /// The universe lists variables in construction order; missing
    /// `parents` entries mean no parents.
    fn from_json(text: &str) -> Result<Self> {
        let d: DagJson = serde_json::from_str(text)?;
        let u = Universe::new(d.order.iter().cloned())?;
        let parents: Vec<(String, Vec<String>)> = d.parents.into_iter().collect();
        Dag::from_names(u, &d.order, &parents)
    }
}

#[derive(Serialize)]
struct LocalJson {
    hypotheses: Vec<usize>,
    included: Vec<String>,
    dag: serde_json::Value,
}

#[derive(Serialize)]
struct SimilarityJson {
    h: String,
    #[serde(rename = "type")]
    net_type: u8,
    locals: Vec<LocalJson>,
}

/// Writes a similarity network; `universe` is the source table's universe.
pub fn similarity_to_json(net: &SimilarityNetwork, universe: &Universe) -> Result<String> {
    let locals = net
        .locals
        .iter()
        .map(|l| {
            Ok(LocalJson {
                hypotheses: l.hypotheses.clone(),
                included: sorted_names(universe, l.included),
                dag: serde_json::from_str(&l.dag.to_json()?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    pretty(&SimilarityJson {
        h: universe.name(net.cover.h).to_owned(),
        net_type: net.net_type.number(),
        locals,
    })
}

/// A partition triple by name, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedPartitionTriple {
    pub x: [Vec<String>; 2],
    pub y: [Vec<String>; 2],
    pub z: [Vec<String>; 2],
    pub e: String,
    pub e_values: (usize, usize),
}

impl NamedPartitionTriple {
    pub fn new(universe: &Universe, pt: &PartitionTriple) -> Self {
        let pair = |p: [VarSet; 2]| p.map(|s| sorted_names(universe, s));
        Self {
            x: pair(pt.x),
            y: pair(pt.y),
            z: pair(pt.z),
            e: universe.name(pt.e).to_owned(),
            e_values: pt.e_values,
        }
    }
}

/// A triplet by name, for reports.
pub fn named_triplet(universe: &Universe, t: &Triplet) -> serde_json::Value {
    serde_json::to_value(TripletJson::from_triplet(universe, t)).expect("string arrays serialize")
}
