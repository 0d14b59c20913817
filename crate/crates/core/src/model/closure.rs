//! Least graphoid containing a dependency model.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::model::dependency::DependencyModel;
use crate::model::triplet::Triplet;
use crate::model::universe::VarSet;

/// Largest universe accepted by closure and axiom checking.
pub const CLOSURE_LIMIT: usize = 8;

pub(crate) fn check_bound(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::UniverseTooLarge { actual: n, limit })
    } else {
        Ok(())
    }
}

/// Every `(X, ∅ | Z)` and its mirror `(∅, X | Z)` over `n` variables.
pub(crate) fn trivial_triplets(n: usize) -> impl Iterator<Item = Triplet> {
    let all = VarSet::full(n);
    all.subsets().flat_map(move |z| {
        all.difference(z).subsets().flat_map(move |x| {
            [
                Triplet::raw(x, VarSet::EMPTY, z),
                Triplet::raw(VarSet::EMPTY, x, z),
            ]
        })
    })
}

struct Closure {
    known: HashSet<Triplet>,
    // (x, z) -> every y with (x, y | z) known; the join key for contraction.
    by_x_z: HashMap<(VarSet, VarSet), Vec<VarSet>>,
    queue: VecDeque<Triplet>,
}

impl Closure {
    fn add(&mut self, t: Triplet) {
        if self.known.insert(t) {
            self.by_x_z.entry((t.x, t.z)).or_default().push(t.y);
            self.queue.push_back(t);
        }
    }

    fn run(&mut self) {
        while let Some(t) = self.queue.pop_front() {
            self.add(t.swapped());

            // Decomposition and weak union over every split Y = Y' ∪ W.
            for w in t.y.subsets() {
                let rest = t.y.difference(w);
                self.add(Triplet::raw(t.x, rest, t.z));
                self.add(Triplet::raw(t.x, rest, t.z.union(w)));
            }

            // Contraction with t = (X, Y | Z) as the first premise:
            // (X, W | Z ∪ Y) known ⇒ (X, Y ∪ W | Z).
            if let Some(ws) = self.by_x_z.get(&(t.x, t.z.union(t.y))) {
                let derived: Vec<Triplet> = ws
                    .iter()
                    .map(|&w| Triplet::raw(t.x, t.y.union(w), t.z))
                    .collect();
                for d in derived {
                    self.add(d);
                }
            }

            // Contraction with t = (X, W | Z') as the second premise, Z' = Z ∪ Y.
            for y in t.z.subsets() {
                if y.is_empty() {
                    continue;
                }
                let z = t.z.difference(y);
                if self.known.contains(&Triplet::raw(t.x, y, z)) {
                    self.add(Triplet::raw(t.x, y.union(t.y), z));
                }
            }
        }
    }
}

/// Closes `model` under trivial independence, symmetry, decomposition,
/// weak union and contraction.
///
/// A work queue of newly derived triplets drives the fixpoint, so only
/// triplets reachable from the model and the trivial instances are visited.
pub fn graphoid_closure(model: &DependencyModel) -> Result<DependencyModel> {
    let n = model.universe().len();
    check_bound(n, CLOSURE_LIMIT)?;

    let mut state = Closure {
        known: HashSet::new(),
        by_x_z: HashMap::new(),
        queue: VecDeque::new(),
    };
    for t in trivial_triplets(n).chain(model.triplets().iter().copied()) {
        state.add(t);
    }
    state.run();

    let triplets: BTreeSet<Triplet> = state.known.into_iter().collect();
    Ok(DependencyModel::from_parts(
        model.universe().clone(),
        triplets,
    ))
}
