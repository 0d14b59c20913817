//! Properties regular Gaussians satisfy beyond the graphoid axioms.

use serde::Serialize;

use crate::dist::{CiMap, CiOracle, GaussianModel, IndependenceOracle};
use crate::error::Result;
use crate::model::{check_bound, Triplet, VarSet};
use crate::scalar::Scalar;

/// Largest universe [`gaussian_axioms_check`] enumerates.
pub const GAUSSIAN_PROPS_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianProperty {
    /// `I(X, Y | Z) & I(X, W | Z) ⇒ I(X, Y ∪ W | Z)`.
    Composition,
    /// `I(X, Y | ∅) & I(X, Y | e) ⇒ I(X, e | ∅) or I(e, Y | ∅)`.
    MarginalWeakTransitivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    pub property: GaussianProperty,
    pub premises: Vec<Triplet>,
    /// The conclusions that fail; for a disjunctive conclusion, both sides.
    pub failed: Vec<Triplet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussianPropertiesReport {
    pub violations: Vec<PropertyViolation>,
    /// Statements checked per property, in [`GaussianProperty`] order.
    pub instances: [usize; 2],
    /// Unification is satisfied by construction: the Gaussian oracle never
    /// sees conditioning values, so a statement given `Z = z` is the same
    /// statement for every `z`.
    pub unification: &'static str,
}

impl GaussianPropertiesReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks composition and marginal weak transitivity against `oracle` over
/// every assignment of variables to the roles X, Y, W, Z (non-empty X, Y, W)
/// and every X, Y, e.
pub fn check_gaussian_properties<O: IndependenceOracle + ?Sized>(
    oracle: &O,
) -> Result<GaussianPropertiesReport> {
    let n = oracle.universe().len();
    check_bound(n, GAUSSIAN_PROPS_LIMIT)?;
    let map = CiMap::build(oracle, GAUSSIAN_PROPS_LIMIT)?;
    let mut violations = Vec::new();
    let mut instances = [0, 0];

    // Roles: 0 unused, 1 X, 2 Y, 3 W, 4 Z.
    for code in 0..5usize.pow(n as u32) {
        let mut sets = [VarSet::EMPTY; 5];
        let mut c = code;
        for v in 0..n {
            sets[c % 5] = sets[c % 5].with(v);
            c /= 5;
        }
        let [_, x, y, w, z] = sets;
        if x.is_empty() || y.is_empty() || w.is_empty() {
            continue;
        }
        instances[0] += 1;
        let p1 = Triplet::raw(x, y, z);
        let p2 = Triplet::raw(x, w, z);
        let goal = Triplet::raw(x, y.union(w), z);
        if map.holds(&p1) && map.holds(&p2) && !map.holds(&goal) {
            violations.push(PropertyViolation {
                property: GaussianProperty::Composition,
                premises: vec![p1, p2],
                failed: vec![goal],
            });
        }
    }

    // Roles: 0 unused, 1 X, 2 Y; e ranges over the unused variables.
    for code in 0..3usize.pow(n as u32) {
        let mut sets = [VarSet::EMPTY; 3];
        let mut c = code;
        for v in 0..n {
            sets[c % 3] = sets[c % 3].with(v);
            c /= 3;
        }
        let [unused, x, y] = sets;
        if x.is_empty() || y.is_empty() {
            continue;
        }
        for e in unused.iter().map(VarSet::singleton) {
            instances[1] += 1;
            let p1 = Triplet::raw(x, y, VarSet::EMPTY);
            let p2 = Triplet::raw(x, y, e);
            let left = Triplet::raw(x, e, VarSet::EMPTY);
            let right = Triplet::raw(e, y, VarSet::EMPTY);
            if map.holds(&p1) && map.holds(&p2) && !map.holds(&left) && !map.holds(&right) {
                violations.push(PropertyViolation {
                    property: GaussianProperty::MarginalWeakTransitivity,
                    premises: vec![p1, p2],
                    failed: vec![left, right],
                });
            }
        }
    }

    violations.sort_by(|a, b| (a.property, &a.premises).cmp(&(b.property, &b.premises)));
    Ok(GaussianPropertiesReport {
        violations,
        instances,
        unification: "structurally_satisfied",
    })
}

/// [`check_gaussian_properties`] on a Gaussian at the default tolerance.
pub fn gaussian_axioms_check<T: Scalar>(g: &GaussianModel<T>) -> Result<GaussianPropertiesReport> {
    check_gaussian_properties(&CiOracle::gaussian(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::fixtures::xor_table;
    use crate::dist::random_gaussian;
    use crate::model::Universe;

    #[test]
    fn random_gaussians_satisfy_properties() {
        for seed in 0..10 {
            let r = gaussian_axioms_check(&random_gaussian::<f64>(4, seed).unwrap()).unwrap();
            assert!(r.is_clean(), "{:?}", r.violations.first());
            assert!(r.instances[0] > 0 && r.instances[1] > 0);
        }
    }

    #[test]
    fn diagonal_gaussian_is_clean() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let cov = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 2.0 } else { 0.0 }).collect())
            .collect();
        let g = GaussianModel::new(u, vec![0.0; 3], cov).unwrap();
        assert!(gaussian_axioms_check(&g).unwrap().is_clean());
    }

    #[test]
    fn parity_breaks_composition() {
        // z = x xor y: x is independent of y and of z, but not of {y, z}.
        let u = Universe::with_cardinalities([("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let probs = (0..8)
            .map(|i| {
                if (i >> 2) ^ ((i >> 1) & 1) == i & 1 {
                    0.25
                } else {
                    0.0
                }
            })
            .collect();
        let parity = crate::dist::JointTable::new(u, probs).unwrap();
        let r = check_gaussian_properties(&CiOracle::table(parity)).unwrap();
        let x = VarSet::singleton(0);
        assert!(r
            .violations
            .iter()
            .any(|v| v.property == GaussianProperty::Composition
                && v.failed == vec![Triplet::raw(x, VarSet::from_indices([1, 2]), VarSet::EMPTY)]));
    }

    #[test]
    fn xor_breaks_marginal_weak_transitivity() {
        // I(x, y | ∅) and I(x, y | z), yet z depends on each coin.
        let r = check_gaussian_properties(&CiOracle::table(xor_table::<f64>())).unwrap();
        let v = r
            .violations
            .iter()
            .find(|v| v.property == GaussianProperty::MarginalWeakTransitivity)
            .unwrap();
        assert_eq!(
            v.premises[0],
            Triplet::raw(VarSet::singleton(0), VarSet::singleton(1), VarSet::EMPTY)
        );
    }

    #[test]
    fn universe_bound() {
        assert!(gaussian_axioms_check(&random_gaussian::<f64>(7, 0).unwrap()).is_err());
    }
}
