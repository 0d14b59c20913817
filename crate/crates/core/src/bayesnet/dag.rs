use crate::error::{Error, Result};
use crate::model::{Universe, VarSet};

/// A directed acyclic graph built along a construction order.
///
/// Every parent of a node precedes it in `order`, which makes acyclicity
/// structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    universe: Universe,
    parents: Vec<VarSet>,
    order: Vec<usize>,
}

/// Checks that `order` lists every index of a universe of size `n` exactly once.
pub(crate) fn check_order(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order has {} entries, universe has {n}",
            order.len()
        )));
    }
    let mut seen = VarSet::EMPTY;
    for &v in order {
        if v >= n || seen.contains(v) {
            return Err(Error::InvalidOrder(format!(
                "index {v} is out of range or repeated"
            )));
        }
        seen = seen.with(v);
    }
    Ok(())
}

impl Dag {
    pub fn new(universe: Universe, order: Vec<usize>, parents: Vec<VarSet>) -> Result<Self> {
        let n = universe.len();
        check_order(&order, n)?;
        if parents.len() != n {
            return Err(Error::InvalidDag(format!(
                "expected {n} parent sets, found {}",
                parents.len()
            )));
        }
        let mut earlier = VarSet::EMPTY;
        for &v in &order {
            if !parents[v].is_subset(earlier) {
                return Err(Error::InvalidDag(format!(
                    "parents of `{}` must precede it in the construction order",
                    universe.name(v)
                )));
            }
            earlier = earlier.with(v);
        }
        Ok(Self {
            universe,
            parents,
            order,
        })
    }

    /// Edgeless DAG with the universe listing order as construction order.
    pub fn edgeless(universe: Universe) -> Self {
        let n = universe.len();
        Self {
            universe,
            parents: vec![VarSet::EMPTY; n],
            order: (0..n).collect(),
        }
    }

    /// Builds from names: `order` lists every variable, `parents` maps a child to its parents.
    pub fn from_names<S: AsRef<str>>(
        universe: Universe,
        order: &[S],
        parents: &[(S, Vec<S>)],
    ) -> Result<Self> {
        let order = order
            .iter()
            .map(|s| universe.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let mut sets = vec![VarSet::EMPTY; universe.len()];
        for (child, ps) in parents {
            let c = universe.index_of(child.as_ref())?;
            sets[c] = sets[c].union(universe.set(ps)?);
        }
        Self::new(universe, order, sets)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn parents(&self, v: usize) -> VarSet {
        self.parents[v]
    }

    pub fn parent_sets(&self) -> &[VarSet] {
        &self.parents
    }

    pub fn children(&self, v: usize) -> VarSet {
        (0..self.len())
            .filter(|&c| self.parents[c].contains(v))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> VarSet {
        self.parents[v].union(self.children(v))
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    /// Edges as `(parent, child)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|c| self.parents[c].iter().map(move |p| (p, c)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    /// Edges by name, for readable assertions and reports.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(p, c)| {
                (
                    self.universe.name(p).to_owned(),
                    self.universe.name(c).to_owned(),
                )
            })
            .collect()
    }

    /// Adds `from → to`; rejected unless `from` precedes `to` in the construction order.
    pub fn with_edge(&self, from: usize, to: usize) -> Result<Dag> {
        let mut parents = self.parents.clone();
        parents[to] = parents[to].with(from);
        Dag::new(self.universe.clone(), self.order.clone(), parents)
    }

    /// Nodes reachable from `v` by a directed path of length at least one.
    pub fn descendants(&self, v: usize) -> VarSet {
        let mut seen = VarSet::EMPTY;
        let mut stack: Vec<usize> = self.children(v).iter().collect();
        while let Some(u) = stack.pop() {
            if !seen.contains(u) {
                seen = seen.with(u);
                stack.extend(self.children(u).iter());
            }
        }
        seen
    }

    /// Nodes with a directed path of length at least one into some member of `set`.
    pub fn ancestors(&self, set: VarSet) -> VarSet {
        let mut seen = VarSet::EMPTY;
        let mut stack: Vec<usize> = set.iter().flat_map(|v| self.parents[v].iter()).collect();
        while let Some(u) = stack.pop() {
            if !seen.contains(u) {
                seen = seen.with(u);
                stack.extend(self.parents[u].iter());
            }
        }
        seen
    }

    /// Maximal sets of nodes joined by trails, each sorted, ordered by least member.
    pub fn connected_components(&self) -> Vec<VarSet> {
        let mut assigned = VarSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if assigned.contains(start) {
                continue;
            }
            let mut comp = VarSet::singleton(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u).iter() {
                    if !comp.contains(w) {
                        comp = comp.with(w);
                        stack.push(w);
                    }
                }
            }
            assigned = assigned.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.connected_components()
            .iter()
            .any(|c| c.contains(a) && c.contains(b))
    }
}

/// The alarm network: u1 = burglary, u2 = sensor B, u3 = sensor A, u4 = alarm, u5 = patrol.
pub fn alarm_network() -> Dag {
    let u = Universe::new(["u1", "u2", "u3", "u4", "u5"]).expect("fixture names are distinct");
    Dag::from_names(
        u,
        &["u1", "u2", "u3", "u4", "u5"],
        &[
            ("u2", vec!["u1"]),
            ("u3", vec!["u1"]),
            ("u4", vec!["u2", "u3"]),
            ("u5", vec!["u4"]),
        ],
    )
    .expect("fixture DAG is valid")
}
