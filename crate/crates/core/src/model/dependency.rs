use std::collections::BTreeSet;

use crate::error::Result;
use crate::model::triplet::Triplet;
use crate::model::universe::{Universe, VarSet};

/// An explicit, finite set of independence triplets over a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyModel {
    universe: Universe,
    triplets: BTreeSet<Triplet>,
}

impl DependencyModel {
    pub fn empty(universe: Universe) -> Self {
        Self {
            universe,
            triplets: BTreeSet::new(),
        }
    }

    pub fn new(universe: Universe, triplets: impl IntoIterator<Item = Triplet>) -> Result<Self> {
        let mut model = Self::empty(universe);
        for t in triplets {
            model.insert(t)?;
        }
        Ok(model)
    }

    /// Inserts a validated triplet; returns whether it was new.
    pub fn insert(&mut self, t: Triplet) -> Result<bool> {
        t.validate(&self.universe)?;
        Ok(self.triplets.insert(t))
    }

    pub(crate) fn from_parts(universe: Universe, triplets: BTreeSet<Triplet>) -> Self {
        Self { universe, triplets }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn triplets(&self) -> &BTreeSet<Triplet> {
        &self.triplets
    }

    pub fn len(&self) -> usize {
        self.triplets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triplets.is_empty()
    }

    /// Literal membership; no axioms are applied.
    pub fn contains(&self, t: &Triplet) -> Result<bool> {
        t.validate(&self.universe)?;
        Ok(self.triplets.contains(t))
    }

    pub fn is_subset(&self, other: &DependencyModel) -> bool {
        self.triplets.is_subset(&other.triplets)
    }

    /// Drops every triplet that mentions a variable outside `keep`, and
    /// re-indexes the survivors over the reduced universe.
    pub fn restrict(&self, keep: VarSet) -> Result<DependencyModel> {
        self.universe.check_set(keep)?;
        let universe = self.universe.restrict(keep);
        let triplets = self
            .triplets
            .iter()
            .filter(|t| t.mentioned().is_subset(keep))
            .map(|t| {
                Triplet::raw(
                    self.universe.project(keep, t.x),
                    self.universe.project(keep, t.y),
                    self.universe.project(keep, t.z),
                )
            })
            .collect();
        Ok(Self { universe, triplets })
    }

    /// [`DependencyModel::restrict`] by variable names.
    pub fn restrict_named<S: AsRef<str>>(&self, keep: &[S]) -> Result<DependencyModel> {
        let keep = self.universe.set(keep)?;
        self.restrict(keep)
    }
}
