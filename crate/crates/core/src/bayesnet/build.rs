use serde::Serialize;

use crate::bayesnet::dag::{check_order, Dag};
use crate::dist::IndependenceOracle;
use crate::error::Result;
use crate::model::{Triplet, VarSet};

/// Smallest parent set for `order[position]`: the cardinality-minimum,
/// lexicographically least `π ⊆ predecessors` such that the node is
/// independent of the remaining predecessors given `π`.
///
/// Candidates are tried by ascending size, so no proper subset of the
/// returned set qualifies.
pub fn minimal_parents<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    order: &[usize],
    position: usize,
) -> Result<VarSet> {
    check_order(order, oracle.universe().len())?;
    let node = order[position];
    let predecessors: VarSet = order[..position].iter().copied().collect();
    for candidate in predecessors.subsets_by_size() {
        let rest = predecessors.difference(candidate);
        let t = Triplet::new(VarSet::singleton(node), rest, candidate)?;
        if oracle.independent(&t)? {
            return Ok(candidate);
        }
    }
    // The full predecessor set always qualifies through trivial independence,
    // unless the oracle is not a graphoid.
    Ok(predecessors)
}

/// The minimal Bayesian network of the oracle's model under `order`.
pub fn build_network<O: IndependenceOracle + ?Sized>(oracle: &O, order: &[usize]) -> Result<Dag> {
    let universe = oracle.universe().clone();
    check_order(order, universe.len())?;
    let mut parents = vec![VarSet::EMPTY; universe.len()];
    for position in 0..order.len() {
        parents[order[position]] = minimal_parents(oracle, order, position)?;
    }
    Dag::new(universe, order.to_vec(), parents)
}

/// [`build_network`] with the universe listing order.
pub fn build_network_canonical<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<Dag> {
    let order: Vec<usize> = (0..oracle.universe().len()).collect();
    build_network(oracle, &order)
}

/// [`build_network`] with an order given by names.
pub fn build_network_named<O: IndependenceOracle + ?Sized, S: AsRef<str>>(
    oracle: &O,
    order: &[S],
) -> Result<Dag> {
    let u = oracle.universe();
    let order = order
        .iter()
        .map(|s| u.index_of(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    build_network(oracle, &order)
}

/// A parent set that could shrink: `({node}, removable | parents \ removable)` holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityViolation {
    pub node: usize,
    pub removable: Vec<usize>,
}

/// Lists every node and non-empty `Z₁ ⊆ π(node)` with `({node}, Z₁ | π(node) \ Z₁)` in the model.
///
/// Missing edges are not reported; only reducible parent sets are.
pub fn audit_minimality<O: IndependenceOracle + ?Sized>(
    dag: &Dag,
    oracle: &O,
) -> Result<Vec<MinimalityViolation>> {
    let mut out = Vec::new();
    for node in 0..dag.len() {
        let parents = dag.parents(node);
        for z1 in parents.subsets_lex() {
            if z1.is_empty() {
                continue;
            }
            let t = Triplet::new(VarSet::singleton(node), z1, parents.difference(z1))?;
            if oracle.independent(&t)? {
                out.push(MinimalityViolation {
                    node,
                    removable: z1.iter().collect(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::fixtures::{burglary_model, xor_table};
    use crate::dist::CiOracle;
    use crate::model::Universe;

    fn xor() -> CiOracle<f64> {
        CiOracle::table(xor_table())
    }

    #[test]
    fn xor_minimal_parents() {
        let o = xor();
        // order (x, y, z): z needs both coins
        assert_eq!(
            minimal_parents(&o, &[0, 1, 2], 2).unwrap(),
            VarSet::from_indices([0, 1])
        );
        // order (z, x, y): z alone screens y from x
        assert_eq!(
            minimal_parents(&o, &[2, 0, 1], 2).unwrap(),
            VarSet::singleton(2)
        );
        assert_eq!(minimal_parents(&o, &[0, 1, 2], 0).unwrap(), VarSet::EMPTY);
    }

    #[test]
    fn xor_networks() {
        let o = xor();
        let d = build_network_named(&o, &["x", "y", "z"]).unwrap();
        assert_eq!(
            d.named_edges(),
            vec![("x".into(), "z".into()), ("y".into(), "z".into())]
        );
        let d = build_network_named(&o, &["z", "x", "y"]).unwrap();
        assert_eq!(
            d.named_edges(),
            vec![("z".into(), "x".into()), ("z".into(), "y".into())]
        );
        assert!(audit_minimality(&d, &o).unwrap().is_empty());
    }

    #[test]
    fn burglary_graphoid_gives_alarm_network() {
        let o = CiOracle::<f64>::model(&burglary_model()).unwrap();
        let d = build_network_named(&o, &["burglary", "sensorA", "sensorB", "alarm", "patrol"])
            .unwrap();
        let mut expect: Vec<(String, String)> = [
            ("burglary", "sensorA"),
            ("burglary", "sensorB"),
            ("sensorA", "alarm"),
            ("sensorB", "alarm"),
            ("alarm", "patrol"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expect.sort();
        let mut got = d.named_edges();
        got.sort();
        assert_eq!(got, expect);
        assert!(audit_minimality(&d, &o).unwrap().is_empty());
    }

    #[test]
    fn extra_edge_is_flagged() {
        let o = xor();
        let d = build_network_named(&o, &["x", "y", "z"]).unwrap();
        let padded = d.with_edge(0, 1).unwrap();
        let v = audit_minimality(&padded, &o).unwrap();
        assert_eq!(
            v,
            vec![MinimalityViolation {
                node: 1,
                removable: vec![0]
            }]
        );
    }

    #[test]
    fn edgeless_audit_is_vacuous() {
        let o = xor();
        let d = Dag::edgeless(o.universe().clone());
        assert!(audit_minimality(&d, &o).unwrap().is_empty());
    }

    #[test]
    fn independent_coins_give_no_edges() {
        let u = Universe::with_cardinalities([("a", 2), ("b", 2), ("c", 2)]).unwrap();
        let t = crate::dist::JointTable::from_weights(u, vec![1.0; 8]).unwrap();
        let o = CiOracle::table(t);
        for order in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(build_network(&o, &order).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn invalid_order_rejected() {
        let o = xor();
        assert!(build_network(&o, &[0, 0, 1]).is_err());
        assert!(build_network_named(&o, &["x", "y"]).is_err());
    }
}
