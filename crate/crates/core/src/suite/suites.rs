use rand::RngExt;

use crate::bayesnet::{
    alarm_network, audit_minimality, build_network, d_separated, d_separated_by_trails, Dag,
    SeparationQuery,
};
use crate::dist::fixtures::xor_table;
use crate::dist::random::rng;
use crate::dist::{
    extract_model, random_gaussian, random_gaussian_factored, random_spb, random_spb_factored,
    CiMap, CiOracle, GaussianModel, IndependenceOracle, JointTable, DISCRETE_TOLERANCE,
};
use crate::error::Result;
use crate::model::{all_triplets, check_graphoid_axioms, Triplet, Universe, VarSet};
use crate::relevance::{
    check_clean, check_pt_bin, gaussian_axioms_check, is_transitive, mutually_irrelevant,
    mutually_irrelevant_sets, partition_triples, uncoupled, unrelated, CheckResult,
    PartitionTriple, PtBinBlocks, RelationVerdict,
};
use crate::simnet::fixtures::{diagnosis_cover, diagnosis_table, xor_hypothesis_table};
use crate::simnet::{
    build_similarity, chain_rule_error, types_equivalent, HypothesisCover, NetType,
};
use crate::suite::generate::{case_seed, random_dag, random_order, random_proper_subset};
use crate::suite::{Failure, Tally};

pub(crate) struct Params {
    pub seed: u64,
    pub n_vars: usize,
    pub samples: usize,
}

/// `(X, Y, Z, separated)` by variable name.
type GoldenQuery = (
    &'static [&'static str],
    &'static [&'static str],
    &'static [&'static str],
    bool,
);

/// Stream identifiers for [`case_seed`].
const SPB: u64 = 1;
const FACTORED: u64 = 2;
const GAUSSIAN: u64 = 3;
const ORDERS: u64 = 4;
const DAGS: u64 = 5;
const PARTITIONS: u64 = 6;
const FACTORED_GAUSSIAN: u64 = 7;

/// Edge probability of the factored tables and Gaussians; low enough that many draws
/// split into several blocks.
const FACTORED_EDGE_PROB: f64 = 0.35;
/// Largest chaining-rule residual accepted on a local network.
const CHAIN_RULE_TOLERANCE: f64 = 1e-9;
/// Partition triples sampled per table when exhaustive enumeration is too large.
const SAMPLED_TRIPLES: usize = 200;
/// Largest total variable count swept exhaustively by the partition suites.
const EXHAUSTIVE_CLEAN_LIMIT: usize = 4;
/// Random DAGs checked per sample for reachability against trail enumeration.
const DAGS_PER_SAMPLE: usize = 5;

/// The two strictly positive binary families: unstructured and DAG-factored.
#[derive(Clone, Copy)]
enum Family {
    Spb,
    Factored,
}

impl Family {
    const BOTH: [Family; 2] = [Family::Spb, Family::Factored];

    fn stream(self) -> u64 {
        match self {
            Family::Spb => SPB,
            Family::Factored => FACTORED,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Family::Spb => "spb",
            Family::Factored => "factored",
        }
    }

    fn table(self, n: usize, seed: u64) -> Result<JointTable> {
        match self {
            Family::Spb => random_spb(n, seed),
            Family::Factored => random_spb_factored(n, FACTORED_EDGE_PROB, seed),
        }
    }
}

/// A generated case: identifier, description of its inputs, and the distribution.
struct Case<D> {
    id: String,
    inputs: String,
    dist: D,
}

/// `n` cycling through `lo..=hi` with the sample index.
fn cycle(i: usize, lo: usize, hi: usize) -> usize {
    lo + i % (hi - lo + 1)
}

fn tables(p: &Params, i: usize, n: usize) -> Result<Vec<Case<JointTable>>> {
    Family::BOTH
        .iter()
        .map(|&f| {
            let seed = case_seed(p.seed, f.stream(), i as u64);
            Ok(Case {
                id: format!("{}-{i:04}", f.tag()),
                inputs: format!("random_{}(n={n}, seed={seed})", f.tag()),
                dist: f.table(n, seed)?,
            })
        })
        .collect()
}

/// An unstructured and a DAG-factored Gaussian for sample `i`.
fn gaussian_models(p: &Params, i: usize, n: usize) -> Result<Vec<Case<GaussianModel>>> {
    let seed = case_seed(p.seed, GAUSSIAN, i as u64);
    let factored_seed = case_seed(p.seed, FACTORED_GAUSSIAN, i as u64);
    Ok(vec![
        Case {
            id: format!("gaussian-{i:04}"),
            inputs: format!("random_gaussian(n={n}, seed={seed})"),
            dist: random_gaussian(n, seed)?,
        },
        Case {
            id: format!("gaussian-factored-{i:04}"),
            inputs: format!("random_gaussian_factored(n={n}, edge_prob={FACTORED_EDGE_PROB}, seed={factored_seed})"),
            dist: random_gaussian_factored(n, FACTORED_EDGE_PROB, factored_seed)?,
        },
    ])
}

fn gaussians(p: &Params, i: usize, n: usize) -> Result<Vec<Case<CiOracle>>> {
    Ok(gaussian_models(p, i, n)?
        .into_iter()
        .map(|c| Case {
            id: c.id,
            inputs: c.inputs,
            dist: CiOracle::gaussian(c.dist),
        })
        .collect())
}

fn show_set(u: &Universe, s: VarSet) -> String {
    let names: Vec<&str> = s.iter().map(|v| u.name(v)).collect();
    format!("{{{}}}", names.join(","))
}

fn show_triplet(u: &Universe, t: &Triplet) -> String {
    t.display(u).to_string()
}

fn show_order(u: &Universe, order: &[usize]) -> String {
    let names: Vec<&str> = order.iter().map(|&v| u.name(v)).collect();
    names.join(",")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, left: VarSet, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for v in left.iter() {
            prefix.push(v);
            extend(prefix, left.without(v), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), VarSet::full(n), &mut out);
    out
}

/// Every graphoid axiom holds on the model a table or Gaussian induces, and the
/// definitional test agrees with the factorization test.
pub(crate) fn axioms(p: &Params, tally: &mut Tally) -> Result<()> {
    let tol = DISCRETE_TOLERANCE;
    for i in 0..p.samples {
        let n = cycle(i, 2, p.n_vars);
        for case in tables(p, i, n)? {
            let table = &case.dist;
            let u = table.universe();
            let model = extract_model(&CiOracle::table(table.clone()))?;
            let violations = check_graphoid_axioms(&model)?;
            tally.check(violations.is_empty(), || {
                let v = &violations[0];
                Failure::new(
                    format!("{}/axioms", case.id),
                    case.inputs.clone(),
                    "no axiom violations",
                    format!("{} violations", violations.len()),
                )
                .with_witness(format!(
                    "{} requires {}",
                    v.axiom,
                    show_triplet(u, &v.missing)
                ))
            });
            for t in all_triplets(n) {
                let holds = model.contains(&t)?;
                let gap = table.factorization_gap(&t, tol)?;
                tally.check(holds == (gap <= 2.0 * tol), || {
                    Failure::new(
                        format!("{}/factorization/{}", case.id, show_triplet(u, &t)),
                        case.inputs.clone(),
                        format!("factorization gap {} 2*tol", if holds { "<=" } else { ">" }),
                        format!("gap {gap:e}"),
                    )
                });
            }
        }
        for g in gaussians(p, i, n)? {
            let u = g.dist.universe().clone();
            let violations = check_graphoid_axioms(&extract_model(&g.dist)?)?;
            tally.check(violations.is_empty(), || {
                let v = &violations[0];
                Failure::new(
                    format!("{}/axioms", g.id),
                    g.inputs.clone(),
                    "no axiom violations",
                    format!("{} violations", violations.len()),
                )
                .with_witness(format!(
                    "{} requires {}",
                    v.axiom,
                    show_triplet(&u, &v.missing)
                ))
            });
        }
    }
    Ok(())
}

/// d-separation in a minimal network implies independence; the reachability
/// search agrees with trail enumeration; the alarm network examples hold.
pub(crate) fn dsep_soundness(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 2, p.n_vars);
        for (k, case) in tables(p, i, n)?.into_iter().enumerate() {
            let map = CiMap::build(&CiOracle::table(case.dist), p.n_vars)?;
            let u = map.universe().clone();
            let mut r = rng(case_seed(p.seed, ORDERS, (2 * i + k) as u64));
            for _ in 0..3 {
                let order = random_order(n, &mut r);
                let dag = build_network(&map, &order)?;
                for a in 0..n {
                    for b in a + 1..n {
                        let rest = u.all().without(a).without(b);
                        for z in rest.subsets() {
                            let t = Triplet::new(VarSet::singleton(a), VarSet::singleton(b), z)?;
                            let q = SeparationQuery::new(t.x, t.y, t.z)?;
                            let separated = d_separated(&dag, &q)?;
                            tally.check(!separated || map.holds(&t), || {
                                Failure::new(
                                    format!(
                                        "{}/order[{}]/{}",
                                        case.id,
                                        show_order(&u, &order),
                                        show_triplet(&u, &t)
                                    ),
                                    case.inputs.clone(),
                                    "d-separated implies independent",
                                    "d-separated but dependent",
                                )
                            });
                        }
                    }
                }
            }
        }
    }

    let alarm = alarm_network();
    let au = alarm.universe().clone();
    let golden: [GoldenQuery; 5] = [
        (&["u2"], &["u3"], &["u1"], true),
        (&["u2"], &["u3"], &["u1", "u5"], false),
        (&["u1"], &["u5"], &["u2", "u4"], true),
        (&["u5"], &["u1"], &["u2", "u3"], true),
        (&["u2"], &["u3"], &[], false),
    ];
    for (x, y, z, expect) in golden {
        let q = SeparationQuery::named(&au, x, y, z)?;
        let got = d_separated(&alarm, &q)?;
        tally.check(got == expect, || {
            Failure::new(
                format!("alarm_network/{x:?}-{y:?}-{z:?}"),
                "alarm network",
                expect.to_string(),
                got.to_string(),
            )
        });
    }

    let mut r = rng(case_seed(p.seed, DAGS, 0));
    for j in 0..DAGS_PER_SAMPLE * p.samples {
        let dag = random_dag(6, 8, &mut r);
        reachability_matches_trails(&dag, &format!("dag-{j:05}"), tally)?;
    }
    Ok(())
}

fn reachability_matches_trails(dag: &Dag, id: &str, tally: &mut Tally) -> Result<()> {
    let u = dag.universe();
    for t in all_triplets(dag.len()) {
        if t.x.is_empty() || t.y.is_empty() {
            continue;
        }
        let q = SeparationQuery::new(t.x, t.y, t.z)?;
        let fast = d_separated(dag, &q)?;
        let slow = d_separated_by_trails(dag, &q)?;
        tally.check(fast == slow, || {
            Failure::new(
                format!("{id}/{}", show_triplet(u, &t)),
                format!("edges {:?}", dag.named_edges()),
                format!("trail enumeration says {slow}"),
                format!("reachability says {fast}"),
            )
        });
    }
    Ok(())
}

/// Component structure does not depend on the construction order; separate
/// components are marginally independent; every node is independent of its
/// non-descendants given its parents; built networks are minimal.
pub(crate) fn components(p: &Params, tally: &mut Tally) -> Result<()> {
    let n = p.n_vars;
    let orders = permutations(n);
    for i in 0..p.samples {
        for case in tables(p, i, n)? {
            let map = CiMap::build(&CiOracle::table(case.dist), n)?;
            let u = map.universe().clone();
            let canonical = build_network(&map, &orders[0])?;
            let expected = canonical.connected_components();
            for order in &orders[1..] {
                let got = build_network(&map, order)?.connected_components();
                tally.check(got == expected, || {
                    Failure::new(
                        format!("{}/order[{}]", case.id, show_order(&u, order)),
                        case.inputs.clone(),
                        format!("{expected:?}"),
                        format!("{got:?}"),
                    )
                });
            }
            for (ai, &a) in expected.iter().enumerate() {
                for &b in &expected[ai + 1..] {
                    let t = Triplet::new(a, b, VarSet::EMPTY)?;
                    tally.check(map.holds(&t), || {
                        Failure::new(
                            format!(
                                "{}/components-independent/{}",
                                case.id,
                                show_triplet(&u, &t)
                            ),
                            case.inputs.clone(),
                            "components marginally independent",
                            "dependent",
                        )
                    });
                }
            }
            for x in 0..n {
                let parents = canonical.parents(x);
                let others = u
                    .all()
                    .difference(canonical.descendants(x))
                    .without(x)
                    .difference(parents);
                let t = Triplet::new(VarSet::singleton(x), others, parents)?;
                tally.check(map.holds(&t), || {
                    Failure::new(
                        format!("{}/local-markov/{}", case.id, u.name(x)),
                        case.inputs.clone(),
                        "independent of non-descendants given parents",
                        format!("{} fails", show_triplet(&u, &t)),
                    )
                });
            }
            let violations = audit_minimality(&canonical, &map)?;
            tally.check(violations.is_empty(), || {
                Failure::new(
                    format!("{}/minimality", case.id),
                    case.inputs.clone(),
                    "no reducible parent set",
                    format!("{violations:?}"),
                )
            });
        }
    }
    Ok(())
}

struct PairVerdicts {
    irrelevant: RelationVerdict,
    uncoupled: RelationVerdict,
    unrelated: RelationVerdict,
}

fn pair_verdicts<O: IndependenceOracle + ?Sized>(
    o: &O,
    x: usize,
    y: usize,
) -> Result<PairVerdicts> {
    Ok(PairVerdicts {
        irrelevant: mutually_irrelevant(o, x, y)?,
        uncoupled: uncoupled(o, x, y)?,
        unrelated: unrelated(o, x, y)?,
    })
}

/// Checks relating the three relations on one oracle.
fn relation_checks(
    map: &CiMap,
    id: &str,
    inputs: &str,
    orders: &[Vec<usize>],
    tally: &mut Tally,
) -> Result<()> {
    let u = map.universe().clone();
    let n = u.len();
    let transitive = is_transitive(map)?.transitive;
    let mut verdicts = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let v = pair_verdicts(map, x, y)?;
            let pair = format!("{},{}", u.name(x), u.name(y));
            tally.check(v.uncoupled.holds == v.unrelated.holds, || {
                Failure::new(
                    format!("{id}/uncoupled-vs-unrelated/{pair}"),
                    inputs,
                    format!("uncoupled = {}", v.uncoupled.holds),
                    format!("unrelated = {}", v.unrelated.holds),
                )
                .with_witness(format!(
                    "{:?}",
                    v.unrelated
                        .witness
                        .as_ref()
                        .or(v.uncoupled.witness.as_ref())
                ))
            });
            tally.check(!v.uncoupled.holds || v.irrelevant.holds, || {
                Failure::new(
                    format!("{id}/relevant-implies-coupled/{pair}"),
                    inputs,
                    "uncoupled pairs are mutually irrelevant",
                    "uncoupled yet relevant",
                )
                .with_witness(format!("{:?}", v.irrelevant.witness))
            });
            if transitive {
                tally.check(v.uncoupled.holds || !v.irrelevant.holds, || {
                    Failure::new(
                        format!("{id}/coupled-implies-relevant/{pair}"),
                        inputs,
                        "in a transitive model coupled pairs are relevant",
                        "coupled yet mutually irrelevant",
                    )
                });
            }
            verdicts.push((x, y, v.unrelated.holds));
        }
    }
    for order in orders {
        let dag = build_network(map, order)?;
        for &(x, y, unrelated) in &verdicts {
            let connected = dag.connected(x, y);
            tally.check(connected != unrelated, || {
                Failure::new(
                    format!(
                        "{id}/order[{}]/{},{}",
                        show_order(&u, order),
                        u.name(x),
                        u.name(y)
                    ),
                    inputs,
                    format!("connected = {}", !unrelated),
                    format!("connected = {connected}"),
                )
            });
        }
    }
    // Mutual irrelevance composes: J(A, B) and J(A, C) give J(A, B ∪ C).
    for code in 0..4usize.pow(n as u32) {
        let mut sets = [VarSet::EMPTY; 4];
        let mut c = code;
        for v in 0..n {
            sets[c % 4] = sets[c % 4].with(v);
            c /= 4;
        }
        let [_, a, b, cc] = sets;
        if a.is_empty() || b.is_empty() || cc.is_empty() {
            continue;
        }
        let premises =
            mutually_irrelevant_sets(map, a, b)? && mutually_irrelevant_sets(map, a, cc)?;
        let ok = !premises || mutually_irrelevant_sets(map, a, b.union(cc))?;
        tally.check(ok, || {
            Failure::new(
                format!(
                    "{id}/irrelevance-composes/{}-{}-{}",
                    show_set(&u, a),
                    show_set(&u, b),
                    show_set(&u, cc)
                ),
                inputs,
                "J(A, B ∪ C)",
                "mutual irrelevance fails for the union",
            )
        });
    }
    Ok(())
}

/// Unrelated and uncoupled coincide, irrelevance follows from uncoupling
/// (and conversely for transitive models), and the XOR table shows the gap.
pub(crate) fn relations(p: &Params, tally: &mut Tally) -> Result<()> {
    let n = p.n_vars;
    let orders = permutations(n);
    for i in 0..p.samples {
        for case in tables(p, i, n)? {
            let map = CiMap::build(&CiOracle::table(case.dist), n)?;
            relation_checks(&map, &case.id, &case.inputs, &orders, tally)?;
        }
        for g in gaussians(p, i, n)? {
            let map = CiMap::build(&g.dist, n)?;
            relation_checks(&map, &g.id, &g.inputs, &orders, tally)?;
        }
    }

    let xor = CiOracle::table(xor_table::<f64>());
    let v = pair_verdicts(&xor, 0, 1)?;
    let t = is_transitive(&xor)?;
    let witness = t
        .witness
        .as_ref()
        .map(|w| w.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(","));
    let expected = (true, false, false, false, Some("x,z,y".to_string()));
    let got = (
        v.irrelevant.holds,
        v.uncoupled.holds,
        v.unrelated.holds,
        t.transitive,
        witness,
    );
    tally.check(got == expected, || {
        Failure::new(
            "xor/gap",
            "xor fixture",
            "(irrelevant, uncoupled, unrelated, transitive, witness) = (true, false, false, false, x,z,y)",
            format!("{got:?}"),
        )
    });
    Ok(())
}

/// Every ordered partition triple for every `e` on small universes, and a
/// seeded sample of triples on larger ones.
fn partition_cases(u: &Universe, stream_seed: u64) -> Result<Vec<PartitionTriple>> {
    let n = u.len();
    if n <= EXHAUSTIVE_CLEAN_LIMIT {
        let mut out = Vec::new();
        for e in 0..n {
            out.extend(partition_triples(u, e, (0, 1))?);
        }
        return Ok(out);
    }
    let mut r = rng(stream_seed);
    (0..SAMPLED_TRIPLES)
        .map(|_| {
            let e = r.random_range(0..n);
            let rest = u.all().without(e);
            let values = if r.random::<bool>() { (0, 1) } else { (1, 0) };
            let x1 = random_proper_subset(rest, &mut r);
            let y1 = random_proper_subset(rest, &mut r);
            let z1 = random_proper_subset(rest, &mut r);
            PartitionTriple::new(u, x1, y1, z1, e, values)
        })
        .collect()
}

fn clean_checks(
    oracle: &CiOracle,
    id: &str,
    inputs: &str,
    stream_seed: u64,
    tally: &mut Tally,
) -> Result<()> {
    let u = oracle.universe().clone();
    let triples = partition_cases(&u, stream_seed)?;
    let mut violations = 0;
    for pt in &triples {
        let r = check_clean(oracle, pt)?;
        if r.is_violation() {
            violations += 1;
        }
        tally.check(!r.is_violation(), || {
            Failure::new(
                format!(
                    "{id}/X1={}/Y1={}/Z1={}/e={}",
                    show_set(&u, pt.x[0]),
                    show_set(&u, pt.y[0]),
                    show_set(&u, pt.z[0]),
                    u.name(pt.e)
                ),
                inputs,
                "no violation",
                "violation",
            )
        });
    }
    // A distribution satisfying every instance is transitive.
    if u.len() <= EXHAUSTIVE_CLEAN_LIMIT && violations == 0 {
        let t = is_transitive(oracle)?;
        tally.check(t.transitive, || {
            Failure::new(
                format!("{id}/transitive"),
                inputs,
                "transitive",
                "not transitive",
            )
            .with_witness(format!("{:?}", t.witness))
        });
    }
    Ok(())
}

/// The partition implication never fails on strictly positive binary tables
/// or regular Gaussians.
pub(crate) fn clean(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 3, p.n_vars);
        for (k, case) in tables(p, i, n)?.into_iter().enumerate() {
            let oracle = CiOracle::table(case.dist);
            let seed = case_seed(p.seed, PARTITIONS, (4 * i + k) as u64);
            clean_checks(&oracle, &case.id, &case.inputs, seed, tally)?;
        }
        for (k, g) in gaussians(p, i, n)?.into_iter().enumerate() {
            let seed = case_seed(p.seed, PARTITIONS, (4 * i + 2 + k) as u64);
            clean_checks(&g.dist, &g.id, &g.inputs, seed, tally)?;
        }
    }
    Ok(())
}

/// The block form agrees with the partition form and never fails on
/// strictly positive binary tables.
pub(crate) fn pt_bin(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 3, p.n_vars);
        let family = Family::BOTH[i % 2];
        let seed = case_seed(p.seed, family.stream(), i as u64);
        let table = family.table(n, seed)?;
        let u = table.universe().clone();
        let inputs = format!("random_{}(n={n}, seed={seed})", family.tag());
        let id = format!("{}-{i:04}", family.tag());
        let oracle = CiOracle::table(table.clone());
        let mut r = rng(case_seed(p.seed, PARTITIONS, i as u64));

        let pt = partition_cases(&u, r.random())?[0];
        let clean = check_clean(&oracle, &pt)?;
        let bin = check_pt_bin(&table, &pt.blocks(), DISCRETE_TOLERANCE)?;
        let agree = if pt.r1().is_empty() || pt.r2().is_empty() {
            clean == CheckResult::AntecedentFails && !bin.is_violation()
        } else {
            clean == bin
        };
        tally.check(agree, || {
            Failure::new(
                format!("{id}/agreement"),
                inputs.clone(),
                format!("{clean:?}"),
                format!("{bin:?}"),
            )
            .with_witness(format!(
                "X1={} Y1={} Z1={} e={}",
                show_set(&u, pt.x[0]),
                show_set(&u, pt.y[0]),
                show_set(&u, pt.z[0]),
                u.name(pt.e)
            ))
        });

        let e = r.random_range(0..n);
        let mut blocks = PtBinBlocks {
            a: [VarSet::EMPTY; 4],
            b: [VarSet::EMPTY; 4],
            e,
            e_values: if r.random::<bool>() { (0, 1) } else { (1, 0) },
        };
        for v in u.all().without(e).iter() {
            let k = r.random_range(0..8usize);
            let slot = if k < 4 {
                &mut blocks.a[k]
            } else {
                &mut blocks.b[k - 4]
            };
            *slot = slot.with(v);
        }
        let got = check_pt_bin(&table, &blocks, DISCRETE_TOLERANCE)?;
        tally.check(!got.is_violation(), || {
            Failure::new(
                format!("{id}/blocks"),
                inputs.clone(),
                "no violation",
                "violation",
            )
            .with_witness(format!("{blocks:?}"))
        });
    }
    Ok(())
}

/// Composition and marginal weak transitivity hold for regular Gaussians.
pub(crate) fn gaussian_props(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 2, p.n_vars);
        for g in gaussian_models(p, i, n)? {
            let report = gaussian_axioms_check(&g.dist)?;
            let u = g.dist.universe();
            tally.check(report.is_clean(), || {
                let v = &report.violations[0];
                let premises: Vec<String> = v.premises.iter().map(|t| show_triplet(u, t)).collect();
                Failure::new(
                    g.id.clone(),
                    g.inputs.clone(),
                    "no violations",
                    format!("{} violations", report.violations.len()),
                )
                .with_witness(format!(
                    "{:?}: {}",
                    v.property,
                    premises.join(" & ")
                ))
            });
        }
    }
    Ok(())
}

fn transitivity_checks(oracle: &CiOracle, id: &str, inputs: &str, tally: &mut Tally) -> Result<()> {
    let map = CiMap::build(oracle, oracle.universe().len())?;
    let t = is_transitive(&map)?;
    tally.check(t.transitive, || {
        Failure::new(
            format!("{id}/transitive"),
            inputs,
            "transitive",
            "not transitive",
        )
        .with_witness(format!("{:?}", t.witness))
    });
    let n = map.universe().len();
    for x in 0..n {
        for y in x + 1..n {
            let coupled = !uncoupled(&map, x, y)?.holds;
            let relevant = !mutually_irrelevant(&map, x, y)?.holds;
            tally.check(!t.transitive || !coupled || relevant, || {
                Failure::new(
                    format!("{id}/coupled-implies-relevant/{x},{y}"),
                    inputs,
                    "coupled pairs are relevant",
                    "coupled yet mutually irrelevant",
                )
            });
        }
    }
    Ok(())
}

/// Strictly positive binary tables and regular Gaussians are transitive;
/// the XOR table is not.
pub(crate) fn transitivity(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 2, p.n_vars);
        for case in tables(p, i, n)? {
            transitivity_checks(&CiOracle::table(case.dist), &case.id, &case.inputs, tally)?;
        }
    }
    for i in 0..(p.samples / 2).max(1) {
        let n = cycle(i, 2, p.n_vars);
        for g in gaussians(p, i, n)? {
            transitivity_checks(&g.dist, &g.id, &g.inputs, tally)?;
        }
    }
    let t = is_transitive(&CiOracle::table(xor_table::<f64>()))?;
    tally.check(!t.transitive, || {
        Failure::new(
            "xor/transitive",
            "xor fixture",
            "not transitive",
            "transitive",
        )
    });
    Ok(())
}

fn simnet_checks(
    table: &JointTable,
    cover: &HypothesisCover,
    id: &str,
    inputs: &str,
    tally: &mut Tally,
) -> Result<()> {
    let report = types_equivalent(table, cover)?;
    tally.check(report.equivalent, || {
        Failure::new(
            format!("{id}/equivalent"),
            inputs,
            "type 1 = type 2",
            "types differ",
        )
        .with_witness(format!("{:?}", report.divergences))
    });
    let related = build_similarity(table, cover, NetType::Related)?;
    let relevant = build_similarity(table, cover, NetType::Relevant)?;
    for (l1, l2) in related.locals.iter().zip(&relevant.locals) {
        tally.check(l2.included.is_subset(l1.included), || {
            Failure::new(
                format!("{id}/relevant-within-related/{:?}", l1.hypotheses),
                inputs,
                "type 2 included within type 1",
                format!("{:?} vs {:?}", l2.included, l1.included),
            )
        });
    }
    for net in [&related, &relevant] {
        let err = chain_rule_error(table, net)?;
        tally.check(err <= CHAIN_RULE_TOLERANCE, || {
            Failure::new(
                format!("{id}/chain-rule/{}", net.net_type),
                inputs,
                format!("residual <= {CHAIN_RULE_TOLERANCE:e}"),
                format!("residual {err:e}"),
            )
        });
    }
    Ok(())
}

/// Type 1 and type 2 similarity networks coincide on strictly positive
/// binary tables; the XOR-derived table separates them on `y`.
pub(crate) fn simnet_equiv(p: &Params, tally: &mut Tally) -> Result<()> {
    for i in 0..p.samples {
        let n = cycle(i, 2, p.n_vars);
        for case in tables(p, i, n)? {
            let cover = HypothesisCover::whole(&case.dist, 0)?;
            simnet_checks(&case.dist, &cover, &case.id, &case.inputs, tally)?;
        }
    }

    let xor = xor_hypothesis_table::<f64>();
    let cover = HypothesisCover::whole(&xor, 0)?;
    let report = types_equivalent(&xor, &cover)?;
    let diverging: Vec<Vec<&str>> = report
        .divergences
        .iter()
        .map(|d| {
            d.related_only
                .iter()
                .chain(&d.relevant_only)
                .map(|v| v.as_str())
                .collect()
        })
        .collect();
    tally.check(!report.equivalent && diverging == vec![vec!["y"]], || {
        Failure::new(
            "xor/divergence",
            "xor hypothesis fixture",
            "divergence {y}",
            format!("{diverging:?}"),
        )
    });
    for net_type in [NetType::Related, NetType::Relevant] {
        let net = build_similarity(&xor, &cover, net_type)?;
        let err = chain_rule_error(&xor, &net)?;
        tally.check(err <= CHAIN_RULE_TOLERANCE, || {
            Failure::new(
                format!("xor/chain-rule/{net_type}"),
                "xor hypothesis fixture",
                "residual <= 1e-9",
                format!("{err:e}"),
            )
        });
    }

    let diagnosis = diagnosis_table::<f64>();
    let cover = diagnosis_cover(&diagnosis);
    let u = diagnosis.universe();
    let net = build_similarity(&diagnosis, &cover, NetType::Related)?;
    let got: Vec<String> = net.locals.iter().map(|l| show_set(u, l.included)).collect();
    let expected = ["{u1,u2,u3}", "{u1}", "{u1,u2,u3,u4}"];
    tally.check(got == expected, || {
        Failure::new(
            "diagnosis/included",
            "diagnosis fixture",
            format!("{expected:?}"),
            format!("{got:?}"),
        )
    });
    simnet_checks(&diagnosis, &cover, "diagnosis", "diagnosis fixture", tally)?;
    Ok(())
}
