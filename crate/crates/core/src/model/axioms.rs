use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::model::closure::{check_bound, CLOSURE_LIMIT};
use crate::model::dependency::DependencyModel;
use crate::model::triplet::Triplet;
use crate::model::universe::VarSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    TrivialIndependence,
    Symmetry,
    Decomposition,
    WeakUnion,
    Contraction,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::TrivialIndependence => "trivial independence",
            Axiom::Symmetry => "symmetry",
            Axiom::Decomposition => "decomposition",
            Axiom::WeakUnion => "weak union",
            Axiom::Contraction => "contraction",
        };
        f.write_str(s)
    }
}

/// An axiom instance whose premises are in the model but whose conclusion is not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub premises: Vec<Triplet>,
    pub missing: Triplet,
}

/// Instantiates every axiom against `model` and lists the instances it fails.
///
/// The result is sorted, so the output is reproducible.
pub fn check_graphoid_axioms(model: &DependencyModel) -> Result<Vec<AxiomViolation>> {
    let n = model.universe().len();
    check_bound(n, CLOSURE_LIMIT)?;
    let set: HashSet<Triplet> = model.triplets().iter().copied().collect();
    let mut out = Vec::new();

    let all = VarSet::full(n);
    for z in all.subsets() {
        for x in all.difference(z).subsets() {
            let t = Triplet::raw(x, VarSet::EMPTY, z);
            if !set.contains(&t) {
                out.push(AxiomViolation {
                    axiom: Axiom::TrivialIndependence,
                    premises: Vec::new(),
                    missing: t,
                });
            }
        }
    }

    for &t in model.triplets() {
        let s = t.swapped();
        if !set.contains(&s) {
            out.push(AxiomViolation {
                axiom: Axiom::Symmetry,
                premises: vec![t],
                missing: s,
            });
        }

        for w in t.y.subsets() {
            if w.is_empty() {
                continue;
            }
            let rest = t.y.difference(w);
            let dec = Triplet::raw(t.x, rest, t.z);
            if !rest.is_empty() && !set.contains(&dec) {
                out.push(AxiomViolation {
                    axiom: Axiom::Decomposition,
                    premises: vec![t],
                    missing: dec,
                });
            }
            let wu = Triplet::raw(t.x, rest, t.z.union(w));
            if !set.contains(&wu) {
                out.push(AxiomViolation {
                    axiom: Axiom::WeakUnion,
                    premises: vec![t],
                    missing: wu,
                });
            }
        }

        // t = (X, W | Z') paired with (X, Y | Z) where Z' = Z ∪ Y.
        for y in t.z.subsets() {
            if y.is_empty() || t.y.is_empty() {
                continue;
            }
            let z = t.z.difference(y);
            let first = Triplet::raw(t.x, y, z);
            if set.contains(&first) {
                let concl = Triplet::raw(t.x, y.union(t.y), z);
                if !set.contains(&concl) {
                    out.push(AxiomViolation {
                        axiom: Axiom::Contraction,
                        premises: vec![first, t],
                        missing: concl,
                    });
                }
            }
        }
    }

    out.sort();
    out.dedup();
    Ok(out)
}
