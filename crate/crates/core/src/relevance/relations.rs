//! The three pairwise relations: mutually irrelevant, uncoupled, unrelated.

use serde::Serialize;

use crate::bayesnet::{build_network_canonical, find_trail};
use crate::dist::IndependenceOracle;
use crate::error::{Error, Result};
use crate::model::{check_bound, Triplet, Universe, VarSet, VariableId};

/// Largest universe the subset and partition sweeps enumerate.
pub const RELATION_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    MutuallyIrrelevant,
    Uncoupled,
    Unrelated,
}

/// Evidence substantiating a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A conditioning set under which the pair is dependent.
    Conditioning { z: Vec<VariableId> },
    /// A split of the universe into two marginally independent parts.
    Partition {
        first: Vec<VariableId>,
        second: Vec<VariableId>,
    },
    /// A trail connecting the pair in a minimal network.
    Trail { nodes: Vec<VariableId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn check_pair(universe: &Universe, x: usize, y: usize) -> Result<()> {
    universe.check_set(VarSet::from_indices([x, y]))?;
    if x == y {
        return Err(Error::InvalidSets(format!(
            "relations need two distinct variables, got `{}` twice",
            universe.name(x)
        )));
    }
    Ok(())
}

/// Lexicographically least `Z ⊆ U \ (A ∪ B)` with `(A, B | Z)` failing, if any.
fn least_dependence_witness<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    a: VarSet,
    b: VarSet,
) -> Result<Option<VarSet>> {
    let rest = oracle.universe().all().difference(a.union(b));
    for z in rest.subsets_lex() {
        if !oracle.independent(&Triplet::raw(a, b, z))? {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// `({x}, {y} | Z)` holds for every `Z ⊆ U \ {x, y}`.
///
/// On failure the witness is the lexicographically least violating `Z`.
pub fn mutually_irrelevant<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
) -> Result<RelationVerdict> {
    let u = oracle.universe();
    check_bound(u.len(), RELATION_LIMIT)?;
    check_pair(u, x, y)?;
    let witness = least_dependence_witness(oracle, VarSet::singleton(x), VarSet::singleton(y))?;
    Ok(RelationVerdict {
        relation: Relation::MutuallyIrrelevant,
        holds: witness.is_none(),
        witness: witness.map(|z| Witness::Conditioning { z: u.names(z) }),
    })
}

/// `(A, B | Z)` holds for every `Z ⊆ U \ (A ∪ B)`.
pub fn mutually_irrelevant_sets<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    a: VarSet,
    b: VarSet,
) -> Result<bool> {
    let u = oracle.universe();
    check_bound(u.len(), RELATION_LIMIT)?;
    u.check_set(a.union(b))?;
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return Err(Error::InvalidSets(format!(
            "mutual irrelevance needs disjoint non-empty sets, got {a:?} and {b:?}"
        )));
    }
    Ok(least_dependence_witness(oracle, a, b)?.is_none())
}

/// Some partition `U₁ ∋ x`, `U₂ ∋ y` of the universe has `(U₁, U₂ | ∅)`.
///
/// Scans `U₁ = {x} ∪ S` with `S ⊆ U \ {x, y}` in lexicographic order; the
/// witness is the first partition found.
pub fn uncoupled<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
) -> Result<RelationVerdict> {
    let u = oracle.universe();
    check_bound(u.len(), RELATION_LIMIT)?;
    check_pair(u, x, y)?;
    let all = u.all();
    let rest = all.without(x).without(y);
    for s in rest.subsets_lex() {
        let first = s.with(x);
        let second = all.difference(first);
        if oracle.independent(&Triplet::raw(first, second, VarSet::EMPTY))? {
            return Ok(RelationVerdict {
                relation: Relation::Uncoupled,
                holds: true,
                witness: Some(Witness::Partition {
                    first: u.names(first),
                    second: u.names(second),
                }),
            });
        }
    }
    Ok(RelationVerdict {
        relation: Relation::Uncoupled,
        holds: false,
        witness: None,
    })
}

/// `x` and `y` lie in different components of the minimal network built
/// under the universe listing order; one network suffices because the
/// component structure does not depend on the order.
pub fn unrelated<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
) -> Result<RelationVerdict> {
    let u = oracle.universe();
    check_pair(u, x, y)?;
    let dag = build_network_canonical(oracle)?;
    let trail = find_trail(&dag, x, y);
    Ok(RelationVerdict {
        relation: Relation::Unrelated,
        holds: trail.is_none(),
        witness: trail.map(|t| Witness::Trail {
            nodes: t.nodes.iter().map(|&v| u.variable(v).clone()).collect(),
        }),
    })
}

/// All three relations for one pair, in declaration order.
pub fn relations<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
) -> Result<[RelationVerdict; 3]> {
    Ok([
        mutually_irrelevant(oracle, x, y)?,
        uncoupled(oracle, x, y)?,
        unrelated(oracle, x, y)?,
    ])
}
