use std::fmt;

use crate::error::{Error, Result};
use crate::model::universe::{Universe, VarSet};

/// An independence statement `(X, Y | Z)`: X is independent of Y given Z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Triplet {
    pub x: VarSet,
    pub y: VarSet,
    pub z: VarSet,
}

impl Triplet {
    /// Builds a triplet, rejecting overlapping sets.
    pub fn new(x: VarSet, y: VarSet, z: VarSet) -> Result<Self> {
        let t = Self { x, y, z };
        if !t.is_disjoint() {
            return Err(Error::InvalidTriplet(format!(
                "sets overlap in ({x:?}, {y:?} | {z:?})"
            )));
        }
        Ok(t)
    }

    /// Same as [`Triplet::new`] for callers that already guarantee disjointness.
    pub(crate) fn raw(x: VarSet, y: VarSet, z: VarSet) -> Self {
        debug_assert!(x.is_disjoint(y) && x.is_disjoint(z) && y.is_disjoint(z));
        Self { x, y, z }
    }

    /// Resolves names against `universe`.
    pub fn named<S: AsRef<str>>(universe: &Universe, x: &[S], y: &[S], z: &[S]) -> Result<Self> {
        let t = Self::new(universe.set(x)?, universe.set(y)?, universe.set(z)?)?;
        Ok(t)
    }

    pub fn is_disjoint(&self) -> bool {
        self.x.is_disjoint(self.y) && self.x.is_disjoint(self.z) && self.y.is_disjoint(self.z)
    }

    pub fn mentioned(&self) -> VarSet {
        self.x.union(self.y).union(self.z)
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            z: self.z,
        }
    }

    pub fn validate(&self, universe: &Universe) -> Result<()> {
        if !self.is_disjoint() {
            return Err(Error::InvalidTriplet(format!("sets overlap in {self:?}")));
        }
        if !self.mentioned().is_subset(universe.all()) {
            return Err(Error::InvalidTriplet(format!(
                "{self:?} references variables outside a universe of {}",
                universe.len()
            )));
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        DisplayTriplet { t: self, universe }
    }
}

impl fmt::Debug for Triplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?} | {:?})", self.x, self.y, self.z)
    }
}

struct DisplayTriplet<'a> {
    t: &'a Triplet,
    universe: &'a Universe,
}

impl fmt::Display for DisplayTriplet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |s: VarSet| {
            let v: Vec<&str> = s.iter().map(|i| self.universe.name(i)).collect();
            format!("{{{}}}", v.join(","))
        };
        write!(
            f,
            "({}, {} | {})",
            names(self.t.x),
            names(self.t.y),
            names(self.t.z)
        )
    }
}

/// Every triplet over a universe of `n` variables, each variable placed in X, Y, Z or none.
pub fn all_triplets(n: usize) -> impl Iterator<Item = Triplet> {
    let total = 4u64.pow(n as u32);
    (0..total).map(move |mut code| {
        let (mut x, mut y, mut z) = (VarSet::EMPTY, VarSet::EMPTY, VarSet::EMPTY);
        for i in 0..n {
            match code & 3 {
                1 => x = x.with(i),
                2 => y = y.with(i),
                3 => z = z.with(i),
                _ => {}
            }
            code >>= 2;
        }
        Triplet::raw(x, y, z)
    })
}
