//! Transitivity of pairwise relevance.

use serde::Serialize;

use crate::dist::IndependenceOracle;
use crate::error::Result;
use crate::model::{check_bound, VariableId};
use crate::relevance::mutually_irrelevant;

/// Largest universe [`is_transitive`] sweeps.
pub const TRANSITIVITY_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityVerdict {
    pub transitive: bool,
    /// Least `(a, b, c)` with `a` relevant to `b`, `b` relevant to `c`, and `a` irrelevant to `c`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[VariableId; 3]>,
}

/// Relevance matrix: `relevant[a][b]` iff `a` and `b` are not mutually irrelevant.
pub fn relevance_matrix<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<Vec<Vec<bool>>> {
    let n = oracle.universe().len();
    check_bound(n, TRANSITIVITY_LIMIT)?;
    let mut relevant = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                relevant[a][b] = !mutually_irrelevant(oracle, a, b)?.holds;
            }
        }
    }
    Ok(relevant)
}

/// Whether relevance is transitive over all ordered triples of distinct variables.
pub fn is_transitive<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<TransitivityVerdict> {
    let relevant = relevance_matrix(oracle)?;
    let u = oracle.universe();
    let n = u.len();
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a && relevant[a][b]) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                if relevant[b][c] && !relevant[a][c] {
                    return Ok(TransitivityVerdict {
                        transitive: false,
                        witness: Some([a, b, c].map(|v| u.variable(v).clone())),
                    });
                }
            }
        }
    }
    Ok(TransitivityVerdict {
        transitive: true,
        witness: None,
    })
}
