//! Hypothesis tables used as regression anchors for similarity networks.

use crate::dist::fixtures::xor_table_named;
use crate::dist::JointTable;
use crate::model::Universe;
use crate::scalar::Scalar;
use crate::simnet::HypothesisCover;

/// The two-coin record table with the first coin playing the hypothesis `h`:
/// variables `h`, `y`, `z`, where `z` records both coins.
///
/// `y` is connected to `h` through `z` in every minimal network, yet `y` and
/// `h` are mutually irrelevant, so the two network types differ on `y`.
pub fn xor_hypothesis_table<T: Scalar>() -> JointTable<T> {
    xor_table_named("h", "y", "z")
}

/// `P(u_i = 1 | h)` for the five hypotheses of [`diagnosis_table`].
const DIAGNOSIS_LIKELIHOODS: [[f64; 5]; 4] = [
    [0.2, 0.5, 0.8, 0.3, 0.7], // u1 separates every pair of hypotheses
    [0.1, 0.6, 0.4, 0.5, 0.5], // u2 cannot tell h4 from h5
    [0.7, 0.3, 0.5, 0.2, 0.2], // u3 cannot tell h4 from h5
    [0.3, 0.3, 0.3, 0.8, 0.8], // u4 only tells {h1, h2, h3} from {h4, h5}
];

/// A structural stand-in for the five-hypothesis example: a uniform `h` over
/// `h1..h5` and four binary findings, independent given `h`.
///
/// Only `u1` distinguishes `h4` from `h5`, and `u4` does not help among
/// `h1, h2, h3`. The numbers are synthetic; only the pattern of which
/// finding varies with which hypotheses is meaningful.
pub fn diagnosis_table<T: Scalar>() -> JointTable<T> {
    let hypotheses: Vec<String> = (1..=5).map(|i| format!("h{i}")).collect();
    let binary = || vec!["0".to_string(), "1".to_string()];
    let universe = Universe::with_domains([
        ("h".to_string(), hypotheses),
        ("u1".to_string(), binary()),
        ("u2".to_string(), binary()),
        ("u3".to_string(), binary()),
        ("u4".to_string(), binary()),
    ])
    .expect("fixture names are distinct");
    let probs = (0..5 * 16)
        .map(|i| {
            let h = i / 16;
            let p: f64 = (0..4)
                .map(|k| {
                    let q = DIAGNOSIS_LIKELIHOODS[k][h];
                    if (i >> (3 - k)) & 1 == 1 {
                        q
                    } else {
                        1.0 - q
                    }
                })
                .product();
            T::lit(0.2 * p)
        })
        .collect();
    JointTable::new(universe, probs).expect("fixture is a valid distribution")
}

/// Cover `{h1, h2, h3}`, `{h4, h5}`, `{h3, h4}` of [`diagnosis_table`].
pub fn diagnosis_cover<T: Scalar>(table: &JointTable<T>) -> HypothesisCover {
    HypothesisCover::new(table, 0, vec![vec![0, 1, 2], vec![3, 4], vec![2, 3]])
        .expect("fixture cover is valid")
}
