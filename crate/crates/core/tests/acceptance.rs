//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Runs without the libtest harness so every line reaches the output even
//! when all criteria pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphoid::bayesnet::{alarm_network, build_network, d_separated, d_separated_by_trails};
use graphoid::dist::fixtures::xor_table;
use graphoid::dist::{
    extract_model, random_gaussian, random_gaussian_factored, random_spb, random_spb_factored,
    CiMap,
};
use graphoid::model::{all_triplets, check_graphoid_axioms};
use graphoid::relevance::{
    check_clean, check_pt_bin, gaussian_axioms_check, is_transitive, mutually_irrelevant,
    partition_triples, uncoupled, unrelated, PartitionTriple,
};
use graphoid::simnet::fixtures::xor_hypothesis_table;
use graphoid::simnet::{
    build_similarity, chain_rule_error, types_equivalent, HypothesisCover, NetType,
};
use graphoid::suite::{case_seed, random_dag, random_order, random_proper_subset};
use graphoid::{
    CiOracle, IndependenceOracle, JointTable, Result, SeparationQuery, Triplet, Universe, VarSet,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;
const SPB: u64 = 1;
const FACTORED: u64 = 2;
const GAUSSIAN: u64 = 3;
const ORDERS: u64 = 4;
const DAGS: u64 = 5;
const PARTITIONS: u64 = 6;
const FACTORED_GAUSSIAN: u64 = 7;

const DISCRETE_TOL: f64 = 1e-9;
const CHAIN_RULE_TOL: f64 = 1e-9;
const FACTORED_EDGE_PROB: f64 = 0.35;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        ok,
        detail: detail.into(),
    })
}

/// Size cycling through `lo..=hi` so every size gets an equal share of samples.
fn size(i: usize, lo: usize, hi: usize) -> usize {
    lo + i % (hi - lo + 1)
}

fn spb(i: usize, n: usize) -> JointTable {
    random_spb(n, case_seed(SEED, SPB, i as u64)).expect("valid size")
}

fn factored(i: usize, n: usize) -> JointTable {
    random_spb_factored(n, FACTORED_EDGE_PROB, case_seed(SEED, FACTORED, i as u64))
        .expect("valid size")
}

fn gaussian(i: usize, n: usize) -> CiOracle {
    CiOracle::gaussian(random_gaussian(n, case_seed(SEED, GAUSSIAN, i as u64)).expect("valid size"))
}

fn factored_gaussian(i: usize, n: usize) -> CiOracle {
    let seed = case_seed(SEED, FACTORED_GAUSSIAN, i as u64);
    CiOracle::gaussian(random_gaussian_factored(n, FACTORED_EDGE_PROB, seed).expect("valid size"))
}

fn rng(stream: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed(SEED, stream, i as u64))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

fn sorted_components(dag: &graphoid::Dag) -> Vec<VarSet> {
    let mut c = dag.connected_components();
    c.sort();
    c
}

/// A random partition triple with `e` and its values drawn as well.
fn random_partition(u: &Universe, r: &mut ChaCha8Rng) -> Result<PartitionTriple> {
    let n = u.len();
    let e = r.random_range(0..n);
    let rest = u.all().without(e);
    let values = if r.random::<bool>() { (0, 1) } else { (1, 0) };
    let x1 = random_proper_subset(rest, r);
    let y1 = random_proper_subset(rest, r);
    let z1 = random_proper_subset(rest, r);
    PartitionTriple::new(u, x1, y1, z1, e, values)
}

/// Every triple for every `e` up to four variables, 200 sampled triples above.
fn partition_cases(u: &Universe, i: usize) -> Result<Vec<PartitionTriple>> {
    if u.len() <= 4 {
        let mut out = Vec::new();
        for e in 0..u.len() {
            out.extend(partition_triples(u, e, (0, 1))?);
        }
        return Ok(out);
    }
    let mut r = rng(PARTITIONS, i);
    (0..200).map(|_| random_partition(u, &mut r)).collect()
}

fn graphoid_extraction() -> Result<Outcome> {
    let mut violations = 0;
    for i in 0..200 {
        let model = extract_model(&CiOracle::table(spb(i, size(i, 2, 4))))?;
        violations += check_graphoid_axioms(&model)?.len();
    }
    outcome(
        violations == 0,
        format!("200 tables (n = 2..4), {violations} axiom violations"),
    )
}

fn dsep_soundness() -> Result<Outcome> {
    let (mut queries, mut counterexamples) = (0usize, 0usize);
    for i in 0..400 {
        let n = size(i, 2, 5);
        // The unstructured tables rarely separate anything, so structured
        // tables follow them to exercise the implication.
        let table = if i < 200 {
            spb(i, n)
        } else {
            factored(i - 200, n)
        };
        let map = CiMap::build(&CiOracle::table(table.clone()), n)?;
        for k in 0..3 {
            let order = random_order(n, &mut rng(ORDERS, 3 * i + k));
            let dag = build_network(&map, &order)?;
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    for z in table.universe().all().without(x).without(y).subsets() {
                        let q =
                            SeparationQuery::new(VarSet::singleton(x), VarSet::singleton(y), z)?;
                        if d_separated(&dag, &q)? {
                            queries += 1;
                            let t = Triplet::new(q.x, q.y, q.z)?;
                            if !table.ci(&t, DISCRETE_TOL)?.holds {
                                counterexamples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    outcome(
        counterexamples == 0,
        format!("200 spb + 200 factored tables x 3 orders, {queries} separated queries, {counterexamples} counterexamples"),
    )
}

fn alarm_golden() -> Result<Outcome> {
    let dag = alarm_network();
    let u = dag.universe();
    let cases: [(&str, &str, &[&str], bool); 3] = [
        ("u2", "u3", &["u1"], true),
        ("u2", "u3", &["u1", "u5"], false),
        ("u1", "u5", &["u2", "u4"], true),
    ];
    let mut wrong = Vec::new();
    for (x, y, z, expected) in cases {
        let q = SeparationQuery::named(u, &[x], &[y], z)?;
        if d_separated(&dag, &q)? != expected {
            wrong.push(format!("({x}, {y} | {z:?})"));
        }
    }
    outcome(
        wrong.is_empty(),
        format!("3 queries, mismatches: {wrong:?}"),
    )
}

/// The tables shared by the component and relation criteria.
fn component_tables() -> Vec<(String, JointTable)> {
    let mut out: Vec<(String, JointTable)> =
        (0..100).map(|i| (format!("spb#{i}"), spb(i, 4))).collect();
    out.extend((0..100).map(|i| (format!("factored#{i}"), factored(i, 4))));
    out
}

fn component_invariance() -> Result<Outcome> {
    let orders = permutations(4);
    let (mut mismatches, mut split) = (0, 0);
    for (_, table) in component_tables() {
        let map = CiMap::build(&CiOracle::table(table), 4)?;
        let reference = sorted_components(&build_network(&map, &orders[0])?);
        if reference.len() > 1 {
            split += 1;
        }
        for order in &orders[1..] {
            if sorted_components(&build_network(&map, order)?) != reference {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("100 spb + 100 factored tables x 24 orders ({split} with several components), {mismatches} mismatches"),
    )
}

fn unrelated_iff_uncoupled() -> Result<Outcome> {
    let (mut checked, mut mismatches, mut unrelated_pairs) = (0, 0, 0);
    for (_, table) in component_tables() {
        let map = CiMap::build(&CiOracle::table(table), 4)?;
        for (x, y) in pairs(4) {
            let a = uncoupled(&map, x, y)?.holds;
            let b = unrelated(&map, x, y)?.holds;
            checked += 1;
            unrelated_pairs += usize::from(b);
            mismatches += usize::from(a != b);
        }
    }
    outcome(
        mismatches == 0,
        format!("{checked} pairs ({unrelated_pairs} unrelated), {mismatches} mismatches"),
    )
}

fn relevant_implies_coupled() -> Result<Outcome> {
    let mut oracles: Vec<CiMap> = Vec::new();
    for (_, table) in component_tables() {
        oracles.push(CiMap::build(&CiOracle::table(table), 4)?);
    }
    for i in 0..100 {
        let n = size(i, 2, 5);
        oracles.push(CiMap::build(&gaussian(i, n), n)?);
        oracles.push(CiMap::build(&factored_gaussian(i, n), n)?);
    }
    let mut breaks = 0;
    for map in &oracles {
        for (x, y) in pairs(map.universe().len()) {
            let relevant = !mutually_irrelevant(map, x, y)?.holds;
            if relevant && uncoupled(map, x, y)?.holds {
                breaks += 1;
            }
        }
    }
    let xor = CiOracle::table(xor_table());
    let (x, y) = (0, 1);
    let irrelevant = mutually_irrelevant(&xor, x, y)?.holds;
    let coupled = !uncoupled(&xor, x, y)?.holds;
    let t = is_transitive(&xor)?;
    let xor_ok = irrelevant && coupled && !t.transitive && t.witness.is_some();
    outcome(
        breaks == 0 && xor_ok,
        format!(
            "{} models, {breaks} relevant-but-uncoupled pairs; xor: irrelevant={irrelevant}, coupled={coupled}, transitive={}, witness={:?}",
            oracles.len(),
            t.transitive,
            t.witness.map(|w| w.map(|v| v.as_str().to_owned()))
        ),
    )
}

fn clean_implication() -> Result<Outcome> {
    let (mut checked, mut violations, mut consequents) = (0usize, 0usize, 0usize);
    let mut run = |oracle: &CiOracle, i: usize| -> Result<()> {
        for pt in partition_cases(oracle.universe(), i)? {
            let r = check_clean(oracle, &pt)?;
            checked += 1;
            violations += usize::from(r.is_violation());
            consequents += usize::from(matches!(
                r,
                graphoid::relevance::CheckResult::ConsequentHolds(_)
            ));
        }
        Ok(())
    };
    for i in 0..500 {
        run(&CiOracle::table(spb(i, size(i, 3, 5))), i)?;
    }
    for i in 0..500 {
        run(&gaussian(i, size(i, 3, 5)), 500 + i)?;
    }
    for i in 0..200 {
        run(&CiOracle::table(factored(i, size(i, 3, 5))), 1000 + i)?;
        run(&factored_gaussian(i, size(i, 3, 5)), 1200 + i)?;
    }
    outcome(
        violations == 0,
        format!("500 spb + 500 Gaussians + 200 factored of each (n = 3..5), {checked} triples, {consequents} with antecedent, {violations} violations"),
    )
}

fn pt_bin_agreement() -> Result<Outcome> {
    let (mut disagreements, mut violations, mut live) = (0, 0, 0);
    let tables = (0..200)
        .map(|i| (i, spb(i, size(i, 3, 5))))
        .chain((0..200).map(|i| (200 + i, factored(i, size(i, 3, 5)))));
    for (i, table) in tables {
        let pt = random_partition(table.universe(), &mut rng(PARTITIONS, 10_000 + i))?;
        let clean = check_clean(&CiOracle::table(table.clone()), &pt)?;
        let bin = check_pt_bin(&table, &pt.blocks(), DISCRETE_TOL)?;
        violations += usize::from(bin.is_violation());
        let agrees = if pt.r1().is_empty() || pt.r2().is_empty() {
            !bin.is_violation()
        } else {
            bin == clean
        };
        disagreements += usize::from(!agrees);
        live += usize::from(!matches!(
            bin,
            graphoid::relevance::CheckResult::AntecedentFails
        ));
    }
    outcome(
        disagreements == 0 && violations == 0,
        format!("200 spb + 200 factored pairs ({live} with antecedent), {disagreements} disagreements, {violations} violations"),
    )
}

fn gaussian_properties() -> Result<Outcome> {
    let (mut violations, mut instances) = (0, [0usize; 2]);
    for i in 0..200 {
        let n = size(i, 2, 5);
        let g = if i < 100 {
            random_gaussian::<f64>(n, case_seed(SEED, GAUSSIAN, i as u64))?
        } else {
            random_gaussian_factored::<f64>(
                n,
                FACTORED_EDGE_PROB,
                case_seed(SEED, FACTORED_GAUSSIAN, i as u64),
            )?
        };
        let report = gaussian_axioms_check(&g)?;
        violations += report.violations.len();
        instances[0] += report.instances[0];
        instances[1] += report.instances[1];
    }
    outcome(
        violations == 0,
        format!(
            "100 + 100 factored Gaussians (n = 2..5), {} composition + {} marginal-weak-transitivity instances, {violations} violations",
            instances[0], instances[1]
        ),
    )
}

fn transitivity() -> Result<Outcome> {
    let mut intransitive = 0;
    for i in 0..200 {
        intransitive +=
            usize::from(!is_transitive(&CiOracle::table(spb(i, size(i, 2, 5))))?.transitive);
    }
    for i in 0..100 {
        intransitive += usize::from(!is_transitive(&gaussian(i, size(i, 2, 5)))?.transitive);
        intransitive +=
            usize::from(!is_transitive(&factored_gaussian(i, size(i, 2, 5)))?.transitive);
        intransitive +=
            usize::from(!is_transitive(&CiOracle::table(factored(i, size(i, 2, 5))))?.transitive);
    }
    let xor = is_transitive(&CiOracle::table(xor_table()))?;
    outcome(
        intransitive == 0 && !xor.transitive,
        format!("200 spb + 100 Gaussians + 100 factored of each, {intransitive} intransitive; xor transitive={}", xor.transitive),
    )
}

fn similarity_networks() -> Result<Outcome> {
    let (mut differing, mut worst) = (0, 0.0f64);
    let mut chain = |table: &JointTable, cover: &HypothesisCover| -> Result<()> {
        for net_type in [NetType::Related, NetType::Relevant] {
            worst = worst.max(chain_rule_error(
                table,
                &build_similarity(table, cover, net_type)?,
            )?);
        }
        Ok(())
    };
    for i in 0..100 {
        // Factored tables follow the stated sample so some variables drop out.
        let table = if i < 50 {
            spb(i, size(i, 2, 5))
        } else {
            factored(i, size(i, 2, 5))
        };
        let cover = HypothesisCover::whole(&table, 0)?;
        differing += usize::from(!types_equivalent(&table, &cover)?.equivalent);
        chain(&table, &cover)?;
    }
    let xor = xor_hypothesis_table::<f64>();
    let cover = HypothesisCover::whole(&xor, 0)?;
    let report = types_equivalent(&xor, &cover)?;
    chain(&xor, &cover)?;
    let divergence: Vec<String> = report
        .divergences
        .iter()
        .flat_map(|d| d.related_only.iter().chain(&d.relevant_only))
        .map(|v| v.as_str().to_owned())
        .collect();
    let xor_ok = !report.equivalent && divergence == ["y"];
    outcome(
        differing == 0 && xor_ok && worst <= CHAIN_RULE_TOL,
        format!("50 spb + 50 factored tables, {differing} non-equivalent; xor divergence {divergence:?}; worst chain-rule residual {worst:e}"),
    )
}

fn dsep_equivalence() -> Result<Outcome> {
    let (mut queries, mut disagreements) = (0usize, 0usize);
    for i in 0..1000 {
        let dag = random_dag(6, 8, &mut rng(DAGS, i));
        let n = dag.len();
        for t in all_triplets(n).filter(|t| !t.x.is_empty() && !t.y.is_empty()) {
            let q = SeparationQuery::new(t.x, t.y, t.z)?;
            queries += 1;
            if d_separated(&dag, &q)? != d_separated_by_trails(&dag, &q)? {
                disagreements += 1;
            }
        }
    }
    outcome(
        disagreements == 0,
        format!(
            "1000 dags (<= 6 nodes, <= 8 edges), {queries} queries, {disagreements} disagreements"
        ),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [(&str, Option<Duration>, Check); 12] = [
        ("graphoid extraction", Some(secs(60)), graphoid_extraction),
        ("d-separation soundness", Some(secs(120)), dsep_soundness),
        ("alarm network golden queries", Some(secs(1)), alarm_golden),
        (
            "component invariance across orders",
            Some(secs(120)),
            component_invariance,
        ),
        ("unrelated iff uncoupled", None, unrelated_iff_uncoupled),
        (
            "relevant implies coupled; xor gap",
            None,
            relevant_implies_coupled,
        ),
        (
            "three-partition implication",
            Some(secs(600)),
            clean_implication,
        ),
        (
            "block form agrees with partition form",
            Some(secs(120)),
            pt_bin_agreement,
        ),
        (
            "Gaussian composition and weak transitivity",
            Some(secs(120)),
            gaussian_properties,
        ),
        ("transitivity", Some(secs(300)), transitivity),
        ("similarity network types", None, similarity_networks),
        (
            "reachability equals trail enumeration",
            Some(secs(60)),
            dsep_equivalence,
        ),
    ];
    let mut failed = 0;
    for (k, (title, target, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = target.is_none_or(|t| elapsed < t);
        let budget = target.map_or(String::new(), |t| format!(", target < {}s", t.as_secs()));
        let (ok, detail) = match result {
            Ok(o) => (o.ok && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {title} — {detail} ({:.2}s{budget})",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
