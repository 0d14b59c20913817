//! The three-partition implication satisfied by strictly positive binary and
//! regular Gaussian distributions, in its partition form and in its
//! eight-block form.
//!
//! Both forms share one shape: three antecedents (a marginal statement on
//! the distribution with `e` summed out, and two statements given distinct
//! values `e′`, `e″` of `e`) and a two-sided disjunctive consequent on the
//! full distribution.

use serde::Serialize;

use crate::dist::{Backend, CiOracle, GaussianModel, JointTable};
use crate::error::{Error, Result};
use crate::model::{Triplet, Universe, VarSet};
use crate::scalar::Scalar;

/// Which side of the consequent holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjunct {
    First,
    Second,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "disjunct", rename_all = "snake_case")]
pub enum CheckResult {
    AntecedentFails,
    ConsequentHolds(Disjunct),
    Violation,
}

impl CheckResult {
    pub fn is_violation(self) -> bool {
        self == CheckResult::Violation
    }

    fn from_parts(antecedents: bool, first: bool, second: bool) -> Self {
        match (antecedents, first, second) {
            (false, _, _) => CheckResult::AntecedentFails,
            (true, true, true) => CheckResult::ConsequentHolds(Disjunct::Both),
            (true, true, false) => CheckResult::ConsequentHolds(Disjunct::First),
            (true, false, true) => CheckResult::ConsequentHolds(Disjunct::Second),
            (true, false, false) => CheckResult::Violation,
        }
    }
}

/// Three partitions `(X₁, X₂)`, `(Y₁, Y₂)`, `(Z₁, Z₂)` of `U = universe \ {e}`
/// and two distinct values of `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionTriple {
    pub x: [VarSet; 2],
    pub y: [VarSet; 2],
    pub z: [VarSet; 2],
    pub e: usize,
    pub e_values: (usize, usize),
}

fn check_e(universe: &Universe, e: usize, e_values: (usize, usize)) -> Result<()> {
    if e >= universe.len() {
        return Err(Error::InvalidPartition(format!(
            "variable #{e} is not in the universe"
        )));
    }
    if e_values.0 == e_values.1 {
        return Err(Error::InvalidPartition(format!(
            "the two values of `{}` must differ",
            universe.name(e)
        )));
    }
    if universe.is_labeled() {
        let card = universe.cardinality(e);
        if e_values.0 >= card || e_values.1 >= card {
            return Err(Error::InvalidPartition(format!(
                "values {e_values:?} are outside the domain of `{}`",
                universe.name(e)
            )));
        }
    }
    Ok(())
}

impl PartitionTriple {
    /// Builds the triple from the first part of each partition; the second
    /// parts are the complements within `universe \ {e}`.
    pub fn new(
        universe: &Universe,
        x1: VarSet,
        y1: VarSet,
        z1: VarSet,
        e: usize,
        e_values: (usize, usize),
    ) -> Result<Self> {
        check_e(universe, e, e_values)?;
        let u = universe.all().without(e);
        let pt = Self {
            x: [x1, u.difference(x1)],
            y: [y1, u.difference(y1)],
            z: [z1, u.difference(z1)],
            e,
            e_values,
        };
        pt.validate(universe)?;
        Ok(pt)
    }

    /// [`PartitionTriple::new`] with names; `e_values` are value labels.
    pub fn named<S: AsRef<str>>(
        universe: &Universe,
        x1: &[S],
        y1: &[S],
        z1: &[S],
        e: &str,
        e_values: (&str, &str),
    ) -> Result<Self> {
        let e = universe.index_of(e)?;
        let value = |label: &str| {
            universe
                .domain(e)
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "`{label}` is not a value of `{}`",
                        universe.name(e)
                    ))
                })
        };
        let values = (value(e_values.0)?, value(e_values.1)?);
        Self::new(
            universe,
            universe.set(x1)?,
            universe.set(y1)?,
            universe.set(z1)?,
            e,
            values,
        )
    }

    pub fn validate(&self, universe: &Universe) -> Result<()> {
        check_e(universe, self.e, self.e_values)?;
        let u = universe.all().without(self.e);
        for (name, [a, b]) in [("X", self.x), ("Y", self.y), ("Z", self.z)] {
            if a.is_empty() || b.is_empty() || !a.is_disjoint(b) || a.union(b) != u {
                return Err(Error::InvalidPartition(format!(
                    "({a:?}, {b:?}) is not a partition of {u:?} into non-empty parts ({name})"
                )));
            }
        }
        Ok(())
    }

    /// `X₁ ∩ Y₁ ∩ Z₁`.
    pub fn r1(&self) -> VarSet {
        self.x[0].intersection(self.y[0]).intersection(self.z[0])
    }

    /// `X₂ ∩ Y₂ ∩ Z₂`.
    pub fn r2(&self) -> VarSet {
        self.x[1].intersection(self.y[1]).intersection(self.z[1])
    }

    /// The eight blocks obtained by intersecting the three partitions.
    pub fn blocks(&self) -> PtBinBlocks {
        let [x1, x2] = self.x;
        let [y1, y2] = self.y;
        let [z1, z2] = self.z;
        let cap = |a: VarSet, b: VarSet, c: VarSet| a.intersection(b).intersection(c);
        PtBinBlocks {
            a: [
                cap(x1, y1, z1),
                cap(x1, y1, z2),
                cap(x1, y2, z1),
                cap(x1, y2, z2),
            ],
            b: [
                cap(x2, y2, z2),
                cap(x2, y2, z1),
                cap(x2, y1, z2),
                cap(x2, y1, z1),
            ],
            e: self.e,
            e_values: self.e_values,
        }
    }
}

/// Every ordered partition triple of `universe \ {e}` for the given values of `e`.
pub fn partition_triples(
    universe: &Universe,
    e: usize,
    e_values: (usize, usize),
) -> Result<Vec<PartitionTriple>> {
    check_e(universe, e, e_values)?;
    let u = universe.all().without(e);
    let parts: Vec<VarSet> = u
        .subsets_lex()
        .into_iter()
        .filter(|s| !s.is_empty() && *s != u)
        .collect();
    let mut out = Vec::with_capacity(parts.len().pow(3));
    for &x1 in &parts {
        for &y1 in &parts {
            for &z1 in &parts {
                out.push(PartitionTriple::new(universe, x1, y1, z1, e, e_values)?);
            }
        }
    }
    Ok(out)
}

/// Eight pairwise disjoint blocks `A₁..A₄`, `B₁..B₄` covering `universe \ {e}`,
/// any of which may be empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PtBinBlocks {
    pub a: [VarSet; 4],
    pub b: [VarSet; 4],
    pub e: usize,
    pub e_values: (usize, usize),
}

impl PtBinBlocks {
    pub fn validate(&self, universe: &Universe) -> Result<()> {
        check_e(universe, self.e, self.e_values)?;
        let mut seen = VarSet::EMPTY;
        for block in self.a.iter().chain(&self.b) {
            if !block.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!(
                    "block {block:?} overlaps another block"
                )));
            }
            seen = seen.union(*block);
        }
        if seen != universe.all().without(self.e) {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {seen:?}, expected every variable except `{}`",
                universe.name(self.e)
            )));
        }
        Ok(())
    }

    fn union(sets: &[VarSet]) -> VarSet {
        sets.iter().fold(VarSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// `(A₁A₂A₃A₄, B₁B₂B₃B₄)`: the marginal antecedent.
    pub fn first_antecedent(&self) -> (VarSet, VarSet) {
        (Self::union(&self.a), Self::union(&self.b))
    }

    /// `(A₁A₂B₃B₄, B₁B₂A₃A₄)`: the antecedent given `e = e′`.
    pub fn second_antecedent(&self) -> (VarSet, VarSet) {
        let [a1, a2, a3, a4] = self.a;
        let [b1, b2, b3, b4] = self.b;
        (
            Self::union(&[a1, a2, b3, b4]),
            Self::union(&[b1, b2, a3, a4]),
        )
    }

    /// `(A₁A₃B₂B₄, B₁B₃A₂A₄)`: the antecedent given `e = e″`.
    pub fn third_antecedent(&self) -> (VarSet, VarSet) {
        let [a1, a2, a3, a4] = self.a;
        let [b1, b2, b3, b4] = self.b;
        (
            Self::union(&[a1, a3, b2, b4]),
            Self::union(&[b1, b3, a2, a4]),
        )
    }
}

/// The statement kinds both checks are phrased in.
trait Statements {
    /// `I(A, B | ∅)` with `e` summed out.
    fn marginal(&self, a: VarSet, b: VarSet) -> Result<bool>;
    /// `I(A, B | ∅)` given `e` takes its `which`-th value.
    fn given_e(&self, a: VarSet, b: VarSet, which: usize) -> Result<bool>;
    /// `I(A, B | ∅)` on the full distribution.
    fn joint(&self, a: VarSet, b: VarSet) -> Result<bool>;
}

struct TableStatements<'a, T: Scalar> {
    table: &'a JointTable<T>,
    keep: VarSet,
    without_e: JointTable<T>,
    /// Conditioned tables; `None` when the evidence has zero probability,
    /// in which case every statement given it holds vacuously.
    given: [Option<JointTable<T>>; 2],
    tolerance: T,
}

impl<'a, T: Scalar> TableStatements<'a, T> {
    fn new(
        table: &'a JointTable<T>,
        e: usize,
        values: (usize, usize),
        tolerance: T,
    ) -> Result<Self> {
        let keep = table.universe().all().without(e);
        let cond = |v: usize| match table.condition_on(e, v) {
            Ok(t) => Ok(Some(t)),
            Err(Error::ZeroProbabilityEvidence { .. }) => Ok(None),
            Err(err) => Err(err),
        };
        Ok(Self {
            table,
            keep,
            without_e: table.marginalize(keep)?,
            given: [cond(values.0)?, cond(values.1)?],
            tolerance,
        })
    }

    fn reduced(&self, t: &JointTable<T>, a: VarSet, b: VarSet) -> Result<bool> {
        let u = self.table.universe();
        let triplet = Triplet::new(
            u.project(self.keep, a),
            u.project(self.keep, b),
            VarSet::EMPTY,
        )?;
        Ok(t.ci(&triplet, self.tolerance)?.holds)
    }
}

impl<T: Scalar> Statements for TableStatements<'_, T> {
    fn marginal(&self, a: VarSet, b: VarSet) -> Result<bool> {
        self.reduced(&self.without_e, a, b)
    }

    fn given_e(&self, a: VarSet, b: VarSet, which: usize) -> Result<bool> {
        match &self.given[which] {
            Some(t) => self.reduced(t, a, b),
            None => Ok(true),
        }
    }

    fn joint(&self, a: VarSet, b: VarSet) -> Result<bool> {
        Ok(self
            .table
            .ci(&Triplet::new(a, b, VarSet::EMPTY)?, self.tolerance)?
            .holds)
    }
}

/// For a Gaussian, a statement given `e = v` is the same for every `v`:
/// conditional covariances do not depend on the conditioning values.
struct GaussianStatements<'a, T: Scalar> {
    model: &'a GaussianModel<T>,
    e: usize,
    tolerance: T,
}

impl<T: Scalar> Statements for GaussianStatements<'_, T> {
    fn marginal(&self, a: VarSet, b: VarSet) -> Result<bool> {
        Ok(self
            .model
            .ci(&Triplet::new(a, b, VarSet::EMPTY)?, self.tolerance)?
            .holds)
    }

    fn given_e(&self, a: VarSet, b: VarSet, _which: usize) -> Result<bool> {
        let t = Triplet::new(a, b, VarSet::singleton(self.e))?;
        Ok(self.model.ci(&t, self.tolerance)?.holds)
    }

    fn joint(&self, a: VarSet, b: VarSet) -> Result<bool> {
        self.marginal(a, b)
    }
}

fn with_statements<T: Scalar, R>(
    oracle: &CiOracle<T>,
    e: usize,
    e_values: (usize, usize),
    f: impl FnOnce(&dyn Statements) -> Result<R>,
) -> Result<R> {
    match oracle.backend() {
        Backend::Table(table) => f(&TableStatements::new(
            table,
            e,
            e_values,
            oracle.tolerance(),
        )?),
        Backend::Gaussian(model) => f(&GaussianStatements {
            model,
            e,
            tolerance: oracle.tolerance(),
        }),
        Backend::Model(_) => Err(Error::UnsupportedBackend("dependency-model")),
    }
}

fn evaluate(
    s: &dyn Statements,
    all: VarSet,
    antecedents: [(VarSet, VarSet); 3],
    sides: [VarSet; 2],
) -> Result<CheckResult> {
    let [first, second, third] = antecedents;
    let holds = s.marginal(first.0, first.1)?
        && s.given_e(second.0, second.1, 0)?
        && s.given_e(third.0, third.1, 1)?;
    if !holds {
        return Ok(CheckResult::AntecedentFails);
    }
    let side = |r: VarSet| s.joint(r, all.difference(r));
    Ok(CheckResult::from_parts(
        true,
        side(sides[0])?,
        side(sides[1])?,
    ))
}

/// Evaluates the partition form on a discrete table or a Gaussian.
///
/// Triples with an empty `R₁` or `R₂` fall outside the statement's
/// hypothesis and are reported as [`CheckResult::AntecedentFails`].
/// Evidence of zero probability makes the statement given it hold vacuously.
pub fn check_clean<T: Scalar>(oracle: &CiOracle<T>, pt: &PartitionTriple) -> Result<CheckResult> {
    let universe = crate::dist::IndependenceOracle::universe(oracle);
    pt.validate(universe)?;
    if pt.r1().is_empty() || pt.r2().is_empty() {
        return Ok(CheckResult::AntecedentFails);
    }
    let all = universe.all();
    with_statements(oracle, pt.e, pt.e_values, |s| {
        evaluate(
            s,
            all,
            [(pt.x[0], pt.x[1]), (pt.y[0], pt.y[1]), (pt.z[0], pt.z[1])],
            [pt.r1(), pt.r2()],
        )
    })
}

/// Evaluates the eight-block form on a table with a binary `e`.
///
/// An empty `A₁` or `B₁` makes its consequent side hold trivially.
pub fn check_pt_bin<T: Scalar>(
    table: &JointTable<T>,
    blocks: &PtBinBlocks,
    tolerance: T,
) -> Result<CheckResult> {
    let universe = table.universe();
    blocks.validate(universe)?;
    if universe.cardinality(blocks.e) != 2 {
        return Err(Error::InvalidPartition(format!(
            "`{}` must be binary",
            universe.name(blocks.e)
        )));
    }
    let oracle = CiOracle::table(table.clone()).with_tolerance(tolerance)?;
    with_statements(&oracle, blocks.e, blocks.e_values, |s| {
        evaluate(
            s,
            universe.all(),
            [
                blocks.first_antecedent(),
                blocks.second_antecedent(),
                blocks.third_antecedent(),
            ],
            [blocks.a[0], blocks.b[0]],
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{random_gaussian, random_spb, DISCRETE_TOLERANCE};

    /// Two independent dependent pairs `(a, b)` and `(c, d)` plus a fair coin `e`.
    fn two_blocks_and_coin() -> JointTable {
        let u = Universe::with_cardinalities([("a", 2), ("b", 2), ("c", 2), ("d", 2), ("e", 2)])
            .unwrap();
        let ab = [[0.4, 0.1], [0.1, 0.4]];
        let cd = [[0.3, 0.2], [0.05, 0.45]];
        let probs = (0..32)
            .map(|i| ab[i >> 4][(i >> 3) & 1] * cd[(i >> 2) & 1][(i >> 1) & 1] * 0.5)
            .collect();
        JointTable::new(u, probs).unwrap()
    }

    #[test]
    fn identical_partitions_on_block_product() {
        let t = two_blocks_and_coin();
        let u = t.universe().clone();
        let pt = PartitionTriple::named(&u, &["a", "b"], &["a", "b"], &["a", "b"], "e", ("0", "1"))
            .unwrap();
        assert_eq!(pt.r1(), u.set(&["a", "b"]).unwrap());
        let r = check_clean(&CiOracle::table(t), &pt).unwrap();
        assert_eq!(r, CheckResult::ConsequentHolds(Disjunct::Both));
    }

    #[test]
    fn failing_antecedent_is_reported() {
        let t = two_blocks_and_coin();
        let u = t.universe().clone();
        let pt =
            PartitionTriple::named(&u, &["a"], &["a", "b"], &["a", "b"], "e", ("0", "1")).unwrap();
        assert_eq!(
            check_clean(&CiOracle::table(t), &pt).unwrap(),
            CheckResult::AntecedentFails
        );
    }

    #[test]
    fn empty_r_is_outside_the_hypothesis() {
        let t = two_blocks_and_coin();
        let u = t.universe().clone();
        let pt = PartitionTriple::named(&u, &["a", "b"], &["c", "d"], &["a", "b"], "e", ("0", "1"))
            .unwrap();
        assert!(pt.r1().is_empty());
        assert_eq!(
            check_clean(&CiOracle::table(t), &pt).unwrap(),
            CheckResult::AntecedentFails
        );
    }

    #[test]
    fn invalid_partitions_rejected() {
        let u = Universe::with_cardinalities([("a", 2), ("b", 2), ("e", 2)]).unwrap();
        let full = u.set(&["a", "b"]).unwrap();
        let a = VarSet::singleton(0);
        assert!(PartitionTriple::new(&u, full, a, a, 2, (0, 1)).is_err());
        assert!(PartitionTriple::new(&u, a, a, a, 2, (1, 1)).is_err());
        assert!(PartitionTriple::new(&u, a, a, a, 2, (0, 2)).is_err());
        assert!(PartitionTriple::new(&u, a.with(2), a, a, 2, (0, 1)).is_err());
    }

    #[test]
    fn spb_and_gaussian_never_violate() {
        for seed in 0..10 {
            let t = random_spb::<f64>(4, seed).unwrap();
            let g = random_gaussian::<f64>(4, seed).unwrap();
            let (ot, og) = (CiOracle::table(t.clone()), CiOracle::gaussian(g));
            for pt in partition_triples(t.universe(), 3, (0, 1)).unwrap() {
                assert!(!check_clean(&ot, &pt).unwrap().is_violation());
                assert!(!check_clean(&og, &pt).unwrap().is_violation());
            }
        }
    }

    #[test]
    fn block_form_agrees_with_partition_form() {
        for seed in 0..10 {
            let t = random_spb::<f64>(4, seed).unwrap();
            let o = CiOracle::table(t.clone());
            for pt in partition_triples(t.universe(), 0, (1, 0)).unwrap() {
                let clean = check_clean(&o, &pt).unwrap();
                let bin = check_pt_bin(&t, &pt.blocks(), DISCRETE_TOLERANCE).unwrap();
                if pt.r1().is_empty() || pt.r2().is_empty() {
                    assert!(!bin.is_violation());
                } else {
                    assert_eq!(clean, bin, "{pt:?}");
                }
            }
        }
    }

    #[test]
    fn block_mapping_recovers_r_sets() {
        let u = Universe::with_cardinalities([("a", 2), ("b", 2), ("c", 2), ("e", 2)]).unwrap();
        let pt =
            PartitionTriple::named(&u, &["a", "b"], &["a"], &["a", "c"], "e", ("0", "1")).unwrap();
        let blocks = pt.blocks();
        blocks.validate(&u).unwrap();
        assert_eq!(blocks.a[0], pt.r1());
        assert_eq!(blocks.b[0], pt.r2());
        assert_eq!(blocks.first_antecedent(), (pt.x[0], pt.x[1]));
        assert_eq!(blocks.second_antecedent(), (pt.y[0], pt.y[1]));
        assert_eq!(blocks.third_antecedent(), (pt.z[0], pt.z[1]));
    }

    #[test]
    fn block_form_needs_binary_e() {
        let t = crate::dist::fixtures::xor_table::<f64>();
        let blocks = PtBinBlocks {
            a: [
                VarSet::singleton(0),
                VarSet::EMPTY,
                VarSet::EMPTY,
                VarSet::EMPTY,
            ],
            b: [
                VarSet::singleton(1),
                VarSet::EMPTY,
                VarSet::EMPTY,
                VarSet::EMPTY,
            ],
            e: 2,
            e_values: (0, 1),
        };
        assert!(matches!(
            check_pt_bin(&t, &blocks, 1e-9),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn model_backend_unsupported() {
        let u = Universe::with_cardinalities([("a", 2), ("b", 2), ("e", 2)]).unwrap();
        let o = CiOracle::<f64>::model(&crate::model::DependencyModel::empty(u.clone())).unwrap();
        let pt = PartitionTriple::new(
            &u,
            VarSet::singleton(0),
            VarSet::singleton(0),
            VarSet::singleton(0),
            2,
            (0, 1),
        )
        .unwrap();
        assert!(matches!(
            check_clean(&o, &pt),
            Err(Error::UnsupportedBackend(_))
        ));
    }

    #[test]
    fn result_json() {
        assert_eq!(
            serde_json::to_string(&CheckResult::ConsequentHolds(Disjunct::First)).unwrap(),
            r#"{"result":"consequent_holds","disjunct":"first"}"#
        );
        assert_eq!(
            serde_json::to_string(&CheckResult::Violation).unwrap(),
            r#"{"result":"violation"}"#
        );
    }
}
