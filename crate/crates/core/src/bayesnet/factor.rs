use crate::bayesnet::Dag;
use crate::dist::JointTable;
use crate::error::{Error, Result};
use crate::model::VarSet;
use crate::scalar::Scalar;

/// Largest absolute difference between `table` and `Π P(v | parents(v))`
/// over all full assignments, with the conditionals read off `table`.
///
/// `dag` must be over the same variables as `table` (matched by name).
pub fn factorization_error<T: Scalar>(table: &JointTable<T>, dag: &Dag) -> Result<T> {
    let tu = table.universe();
    let du = dag.universe();
    if tu.len() != du.len() {
        return Err(Error::InvalidArgument(format!(
            "DAG has {} nodes, table has {} variables",
            du.len(),
            tu.len()
        )));
    }
    // Node index in the DAG -> variable index in the table.
    let to_table = (0..du.len())
        .map(|v| tu.index_of(du.name(v)))
        .collect::<Result<Vec<_>>>()?;
    let lift = |s: VarSet| s.iter().map(|v| to_table[v]).collect::<VarSet>();

    struct Factor<T> {
        family: Vec<T>,
        family_enc: crate::dist::table::SubsetEncoder,
        parents: Vec<T>,
        parents_enc: crate::dist::table::SubsetEncoder,
    }
    let factors: Vec<Factor<T>> = (0..du.len())
        .map(|v| {
            let pa = lift(dag.parents(v));
            let fam = pa.with(to_table[v]);
            Factor {
                family: table.marginal_vec(fam),
                family_enc: table.encoder(fam),
                parents: table.marginal_vec(pa),
                parents_enc: table.encoder(pa),
            }
        })
        .collect();

    let mut worst = T::zero();
    for (i, p) in table.probs().iter().enumerate() {
        let mut product = T::one();
        for f in &factors {
            let denom = f.parents[f.parents_enc.code(table, i)];
            product = if denom > T::zero() {
                product * f.family[f.family_enc.code(table, i)] / denom
            } else {
                T::zero()
            };
        }
        worst = worst.max((product - *p).abs());
    }
    Ok(worst)
}
