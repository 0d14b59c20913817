//! Seed derivation and random structures for the suites.

use rand::seq::SliceRandom;
use rand::{Rng, RngExt};

use crate::bayesnet::Dag;
use crate::model::{Universe, VarSet};

/// Seed of case `index` in stream `stream` of a run seeded with `seed`.
///
/// SplitMix64 finalizer over the packed inputs, so neighbouring seeds and
/// indices give unrelated cases.
pub fn case_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A uniformly random permutation of `0..n`.
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// A non-empty proper subset of `set`, which must have at least two members.
pub fn random_proper_subset<R: Rng + ?Sized>(set: VarSet, rng: &mut R) -> VarSet {
    debug_assert!(set.len() >= 2);
    loop {
        let s: VarSet = set.iter().filter(|_| rng.random::<bool>()).collect();
        if !s.is_empty() && s != set {
            return s;
        }
    }
}

/// A random DAG on `2..=max_nodes` nodes named `n1..`, with at most
/// `max_edges` edges placed uniformly among forward pairs of a random order.
pub fn random_dag<R: Rng + ?Sized>(max_nodes: usize, max_edges: usize, rng: &mut R) -> Dag {
    let n = rng.random_range(2..=max_nodes.max(2));
    let universe =
        Universe::new((1..=n).map(|i| format!("n{i}"))).expect("generated names are unique");
    let order = random_order(n, rng);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.random_range(0..=max_edges.min(pairs.len()));
    let mut parents = vec![VarSet::EMPTY; n];
    for &(i, j) in &pairs[..m] {
        parents[order[j]] = parents[order[j]].with(order[i]);
    }
    Dag::new(universe, order, parents).expect("edges follow the order")
}
