//! d-separation: a linear-time reachability search and the definitional
//! trail enumeration it is validated against.

use serde::Serialize;

use crate::bayesnet::Dag;
use crate::error::{Error, Result};
use crate::model::{Universe, VarSet};

/// Three disjoint node sets: is X d-separated from Y by Z?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeparationQuery {
    pub x: VarSet,
    pub y: VarSet,
    pub z: VarSet,
}

impl SeparationQuery {
    pub fn new(x: VarSet, y: VarSet, z: VarSet) -> Result<Self> {
        if !(x.is_disjoint(y) && x.is_disjoint(z) && y.is_disjoint(z)) {
            return Err(Error::InvalidSets(format!(
                "({x:?}, {y:?} | {z:?}) are not pairwise disjoint"
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn named<S: AsRef<str>>(universe: &Universe, x: &[S], y: &[S], z: &[S]) -> Result<Self> {
        Self::new(universe.set(x)?, universe.set(y)?, universe.set(z)?)
    }

    fn validate(&self, dag: &Dag) -> Result<()> {
        Self::new(self.x, self.y, self.z)?;
        dag.universe().check_set(self.x.union(self.y).union(self.z))
    }
}

/// A simple path in the underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trail {
    /// Visited nodes, endpoints included.
    pub nodes: Vec<usize>,
    /// Traversed links as `(parent, child)`, in traversal order.
    pub links: Vec<(usize, usize)>,
}

impl Trail {
    fn from_nodes(dag: &Dag, nodes: Vec<usize>) -> Self {
        let links = nodes
            .windows(2)
            .map(|w| {
                if dag.has_edge(w[0], w[1]) {
                    (w[0], w[1])
                } else {
                    (w[1], w[0])
                }
            })
            .collect();
        Self { nodes, links }
    }

    /// Interior nodes with both adjacent links pointing into them.
    pub fn head_to_head(&self, dag: &Dag) -> VarSet {
        self.nodes
            .windows(3)
            .filter(|w| dag.has_edge(w[0], w[1]) && dag.has_edge(w[2], w[1]))
            .map(|w| w[1])
            .collect()
    }

    /// Active w.r.t. `z`: every head-to-head node is in `z` or has a
    /// descendant in `z`, and every other node is outside `z`.
    pub fn is_active(&self, dag: &Dag, z: VarSet) -> bool {
        let h2h = self.head_to_head(dag);
        self.nodes.iter().enumerate().all(|(k, &v)| {
            let interior = k > 0 && k + 1 < self.nodes.len();
            if interior && h2h.contains(v) {
                z.contains(v) || !dag.descendants(v).is_disjoint(z)
            } else {
                !z.contains(v)
            }
        })
    }

    pub fn names(&self, universe: &Universe) -> Vec<String> {
        self.nodes
            .iter()
            .map(|&v| universe.name(v).to_owned())
            .collect()
    }
}

/// True iff no trail from X to Y is active given Z.
///
/// Breadth-first search over (node, direction) states: a node entered from a
/// child may continue anywhere unless it is in Z; a node entered from a
/// parent continues to children unless it is in Z, and back up to parents
/// only if it is in Z or an ancestor of Z.
pub fn d_separated(dag: &Dag, q: &SeparationQuery) -> Result<bool> {
    q.validate(dag)?;
    if q.x.is_empty() || q.y.is_empty() {
        return Ok(true);
    }
    let opens_collider = q.z.union(dag.ancestors(q.z));
    let n = dag.len();
    // visited[v][0]: entered from a child (moving up); [1]: from a parent.
    let mut visited = vec![[false; 2]; n];
    let mut queue: std::collections::VecDeque<(usize, usize)> =
        q.x.iter().map(|v| (v, 0)).collect();
    while let Some((v, dir)) = queue.pop_front() {
        if visited[v][dir] {
            continue;
        }
        visited[v][dir] = true;
        let in_z = q.z.contains(v);
        if !in_z && q.y.contains(v) {
            return Ok(false);
        }
        if dir == 0 {
            if !in_z {
                queue.extend(dag.parents(v).iter().map(|p| (p, 0)));
                queue.extend(dag.children(v).iter().map(|c| (c, 1)));
            }
        } else {
            if !in_z {
                queue.extend(dag.children(v).iter().map(|c| (c, 1)));
            }
            if opens_collider.contains(v) {
                queue.extend(dag.parents(v).iter().map(|p| (p, 0)));
            }
        }
    }
    Ok(true)
}

/// Every simple trail between `a` and `b`.
pub fn trails_between(dag: &Dag, a: usize, b: usize) -> Vec<Trail> {
    fn walk(
        dag: &Dag,
        path: &mut Vec<usize>,
        on_path: VarSet,
        b: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("path starts non-empty");
        if last == b {
            out.push(path.clone());
            return;
        }
        for w in dag.neighbors(last).iter() {
            if !on_path.contains(w) {
                path.push(w);
                walk(dag, path, on_path.with(w), b, out);
                path.pop();
            }
        }
    }
    let mut raw = Vec::new();
    walk(dag, &mut vec![a], VarSet::singleton(a), b, &mut raw);
    raw.into_iter()
        .map(|nodes| Trail::from_nodes(dag, nodes))
        .collect()
}

/// d-separation straight from the definition: enumerate every trail between
/// a node of X and a node of Y and test whether any is active. Exponential;
/// meant for small graphs and as a cross-check of [`d_separated`].
pub fn d_separated_by_trails(dag: &Dag, q: &SeparationQuery) -> Result<bool> {
    q.validate(dag)?;
    for a in q.x.iter() {
        for b in q.y.iter() {
            if trails_between(dag, a, b)
                .iter()
                .any(|t| t.is_active(dag, q.z))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A shortest trail from `a` to `b`, ties broken toward lower node indices.
pub fn find_trail(dag: &Dag, a: usize, b: usize) -> Option<Trail> {
    let n = dag.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = VarSet::singleton(a);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut nodes = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                nodes.push(cur);
            }
            nodes.reverse();
            return Some(Trail::from_nodes(dag, nodes));
        }
        for w in dag.neighbors(u).iter() {
            if !seen.contains(w) {
                seen = seen.with(w);
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayesnet::alarm_network;

    fn q(d: &Dag, x: &[&str], y: &[&str], z: &[&str]) -> SeparationQuery {
        SeparationQuery::named(d.universe(), x, y, z).unwrap()
    }

    #[test]
    fn alarm_examples() {
        let d = alarm_network();
        for (x, y, z, expect) in [
            (&["u2"][..], &["u3"][..], &["u1"][..], true),
            (&["u2"], &["u3"], &["u1", "u5"], false),
            (&["u1"], &["u5"], &["u2", "u4"], true),
            (&["u5"], &["u1"], &["u2", "u3"], true),
            (&["u2"], &["u3"], &[], false),
            (&["u1"], &["u5"], &[], false),
        ] {
            let query = q(&d, x, y, z);
            assert_eq!(
                d_separated(&d, &query).unwrap(),
                expect,
                "{x:?} {y:?} {z:?}"
            );
            assert_eq!(d_separated_by_trails(&d, &query).unwrap(), expect);
        }
    }

    #[test]
    fn alarm_trails() {
        let d = alarm_network();
        let trails = trails_between(&d, 1, 2);
        assert_eq!(trails.len(), 2);
        let collider = trails.iter().find(|t| t.nodes == vec![1, 3, 2]).unwrap();
        assert_eq!(collider.head_to_head(&d), VarSet::singleton(3));
        assert!(!collider.is_active(&d, VarSet::singleton(0)));
        assert!(collider.is_active(&d, VarSet::from_indices([0, 4])));
    }

    #[test]
    fn empty_sides_are_separated() {
        let d = alarm_network();
        assert!(d_separated(&d, &q(&d, &[], &["u1"], &[])).unwrap());
    }

    #[test]
    fn overlapping_query_rejected() {
        assert!(
            SeparationQuery::new(VarSet::singleton(0), VarSet::singleton(0), VarSet::EMPTY)
                .is_err()
        );
        let d = alarm_network();
        let outside = SeparationQuery {
            x: VarSet::singleton(9),
            y: VarSet::singleton(0),
            z: VarSet::EMPTY,
        };
        assert!(d_separated(&d, &outside).is_err());
    }

    #[test]
    fn shortest_trail() {
        let d = alarm_network();
        let t = find_trail(&d, 1, 4).unwrap();
        assert_eq!(t.nodes, vec![1, 3, 4]);
        assert_eq!(t.links, vec![(1, 3), (3, 4)]);
        let u = Universe::new(["a", "b"]).unwrap();
        assert!(find_trail(&Dag::edgeless(u), 0, 1).is_none());
    }
}
