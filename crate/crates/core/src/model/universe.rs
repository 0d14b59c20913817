use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on universe size; sets are stored as 64-bit masks.
pub const MAX_VARIABLES: usize = 64;

/// Name of a variable, unique within its [`Universe`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableId(String);

impl VariableId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyVariableName);
        }
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for VariableId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VariableId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A set of variables, stored as a bitmask over universe indices.
///
/// The total order is lexicographic over the ascending member indices, so
/// `{} < {0} < {0,1} < {0,2} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_VARIABLES);
        Self(1u64 << index)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARIABLES);
        if n == MAX_VARIABLES {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_VARIABLES && self.0 & (1u64 << index) != 0
    }

    pub fn with(self, index: usize) -> Self {
        Self(self.0 | (1u64 << index))
    }

    pub fn without(self, index: usize) -> Self {
        Self(self.0 & !(1u64 << index))
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, including `self` and the empty set, in bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Subsets ordered by ascending cardinality, lexicographic within a cardinality.
    pub fn subsets_by_size(self) -> Vec<VarSet> {
        let mut all: Vec<VarSet> = self.subsets().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// Subsets in lexicographic order.
    pub fn subsets_lex(self) -> Vec<VarSet> {
        let mut all: Vec<VarSet> = self.subsets().collect();
        all.sort();
        all
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serializes as the ascending array of member indices.
impl Serialize for VarSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let current = self.next?;
        // Standard submask successor: (s - mask) & mask, wrapping back to 0 at the end.
        let succ = current.wrapping_sub(self.mask) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(VarSet(current))
    }
}

/// An ordered, finite set of variables with optional value labels.
///
/// Distribution-backed universes carry a non-empty domain per variable;
/// universes used only for dependency models or Gaussians leave domains empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    variables: Vec<VariableId>,
    domains: Vec<Vec<String>>,
    index: HashMap<VariableId, usize>,
}

impl Universe {
    /// A universe without value labels.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let variables = names
            .into_iter()
            .map(VariableId::new)
            .collect::<Result<Vec<_>>>()?;
        let domains = vec![Vec::new(); variables.len()];
        Self::build(variables, domains)
    }

    /// A universe where every variable carries a non-empty list of value labels.
    pub fn with_domains<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<String>)>,
        S: Into<String>,
    {
        let mut variables = Vec::new();
        let mut domains = Vec::new();
        for (name, domain) in vars {
            let id = VariableId::new(name)?;
            if domain.is_empty() {
                return Err(Error::EmptyDomain(id.0));
            }
            variables.push(id);
            domains.push(domain);
        }
        Self::build(variables, domains)
    }

    /// Universe of `names`, each with the value labels `"0"`, ..., `"k-1"`.
    pub fn with_cardinalities<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self> {
        Self::with_domains(
            vars.into_iter()
                .map(|(n, k)| (n, (0..k).map(|v| v.to_string()).collect())),
        )
    }

    fn build(variables: Vec<VariableId>, domains: Vec<Vec<String>>) -> Result<Self> {
        if variables.len() > MAX_VARIABLES {
            return Err(Error::UniverseTooLarge {
                actual: variables.len(),
                limit: MAX_VARIABLES,
            });
        }
        let mut index = HashMap::with_capacity(variables.len());
        for (i, v) in variables.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.0.clone()));
            }
        }
        Ok(Self {
            variables,
            domains,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.variables
    }

    pub fn variable(&self, index: usize) -> &VariableId {
        &self.variables[index]
    }

    pub fn name(&self, index: usize) -> &str {
        self.variables[index].as_str()
    }

    pub fn domain(&self, index: usize) -> &[String] {
        &self.domains[index]
    }

    pub fn domains(&self) -> &[Vec<String>] {
        &self.domains
    }

    pub fn cardinality(&self, index: usize) -> usize {
        self.domains[index].len()
    }

    pub fn is_labeled(&self) -> bool {
        !self.variables.is_empty() && self.domains.iter().all(|d| !d.is_empty())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_owned()))
    }

    pub fn all(&self) -> VarSet {
        VarSet::full(self.len())
    }

    /// Resolves a list of names into a set.
    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<VarSet>>()
    }

    /// Member names of `set`, in universe order.
    pub fn names(&self, set: VarSet) -> Vec<VariableId> {
        set.iter().map(|i| self.variables[i].clone()).collect()
    }

    pub fn check_set(&self, set: VarSet) -> Result<()> {
        if set.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::InvalidSets(format!(
                "set {set:?} references indices outside a universe of {} variables",
                self.len()
            )))
        }
    }

    /// Sub-universe with the members of `keep`, preserving listing order.
    pub fn restrict(&self, keep: VarSet) -> Universe {
        let (variables, domains) = keep
            .iter()
            .map(|i| (self.variables[i].clone(), self.domains[i].clone()))
            .unzip();
        // Names are already unique.
        Self::build(variables, domains).expect("sub-universe of a valid universe")
    }

    /// Translates `set` into the index space of `self.restrict(keep)`.
    pub fn project(&self, keep: VarSet, set: VarSet) -> VarSet {
        debug_assert!(set.is_subset(keep));
        keep.iter()
            .enumerate()
            .filter(|(_, i)| set.contains(*i))
            .map(|(j, _)| j)
            .collect()
    }

    /// Translates `set` from the index space of `self.restrict(keep)` back into `self`.
    pub fn lift(&self, keep: VarSet, set: VarSet) -> VarSet {
        keep.iter()
            .enumerate()
            .filter(|(j, _)| set.contains(*j))
            .map(|(_, i)| i)
            .collect()
    }

    pub(crate) fn replace_domain(&mut self, index: usize, domain: Vec<String>) {
        self.domains[index] = domain;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = VarSet::from_indices([0, 2, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(VarSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn lexicographic_order() {
        let a = VarSet::from_indices([0, 1]);
        let b = VarSet::from_indices([0, 2]);
        let c = VarSet::from_indices([1]);
        assert!(VarSet::EMPTY < VarSet::singleton(0));
        assert!(VarSet::singleton(0) < a);
        assert!(a < b && b < c);
    }

    #[test]
    fn by_size_ordering() {
        let s = VarSet::full(3);
        let order = s.subsets_by_size();
        assert_eq!(order[0], VarSet::EMPTY);
        assert_eq!(order[1], VarSet::singleton(0));
        assert_eq!(order[3], VarSet::singleton(2));
        assert_eq!(order[4], VarSet::from_indices([0, 1]));
        assert_eq!(order[7], s);
    }

    #[test]
    fn duplicate_and_empty_names_rejected() {
        assert!(matches!(
            Universe::new(["x", "x"]),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(matches!(Universe::new([""]), Err(Error::EmptyVariableName)));
        assert!(matches!(
            Universe::with_domains([("x", vec![])]),
            Err(Error::EmptyDomain(_))
        ));
    }

    #[test]
    fn project_and_lift_are_inverse() {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        let keep = VarSet::from_indices([1, 3]);
        let sub = u.restrict(keep);
        assert_eq!(sub.name(0), "b");
        assert_eq!(sub.name(1), "d");
        let s = VarSet::singleton(3);
        let p = u.project(keep, s);
        assert_eq!(p, VarSet::singleton(1));
        assert_eq!(u.lift(keep, p), s);
    }
}
