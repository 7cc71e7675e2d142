//! Labeled finite ground sets and their subsets.
//!
//! A [`GroundSet`] is an ordered list of distinct string labels; the order is
//! fixed at construction and is the canonical order used for bit-vector
//! subsets, serialization, and the total orders on points that some graph
//! constructions rely on.  A [`Subset`] is a bit-vector over that canonical
//! order.  Both are immutable after construction and cheap to clone.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of points per side of a relation.
pub const DEFAULT_MAX_GROUND: usize = 16;

/// Cap on the number of points per side of a relation.
///
/// Read once from the `MATCOMP_MAX_GROUND` environment variable, falling back
/// to [`DEFAULT_MAX_GROUND`].  The pair universe of a relation is never
/// materialized, only realized pairs are stored, but constructors that
/// enumerate subsets still need a sane bound.
pub fn max_ground_points() -> usize {
    static CAP: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("MATCOMP_MAX_GROUND")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_GROUND)
    })
}

/// Suffix appended to left/domain-side labels on collision in disjoint unions.
pub const DOMAIN_TAG: &str = "/d";
/// Suffix appended to right/codomain-side labels on collision in disjoint unions.
pub const CODOMAIN_TAG: &str = "/c";

/// An ordered set of distinct point labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    labels: Arc<Vec<String>>,
}

impl GroundSet {
    /// Builds a ground set from labels, which must be pairwise distinct.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > 64 {
            return Err(Error::TooManyPoints {
                size: labels.len(),
                max: 64,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet {
            labels: Arc::new(labels),
        })
    }

    /// The empty ground set.
    pub fn empty() -> Self {
        GroundSet {
            labels: Arc::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    /// Mask with every point set.
    pub fn full_mask(&self) -> u64 {
        if self.labels.is_empty() {
            0
        } else {
            (!0u64) >> (64 - self.labels.len())
        }
    }

    /// True when both ground sets carry the same labels, in any order.
    pub fn same_elements(&self, other: &GroundSet) -> bool {
        self.len() == other.len() && self.labels.iter().all(|l| other.contains(l))
    }

    /// For each position in `self`, the position of the same label in `other`.
    pub fn permutation_to(&self, other: &GroundSet) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        self.labels.iter().map(|l| other.position(l)).collect()
    }

    /// The full subset of this ground set.
    pub fn full_subset(&self) -> Subset {
        Subset {
            ground: self.clone(),
            mask: self.full_mask(),
        }
    }

    /// The empty subset of this ground set.
    pub fn empty_subset(&self) -> Subset {
        Subset {
            ground: self.clone(),
            mask: 0,
        }
    }

    /// Builds a subset from labels of this ground set.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = 0u64;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .position(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            mask |= 1 << i;
        }
        Ok(Subset {
            ground: self.clone(),
            mask,
        })
    }

    /// Subset from a raw mask; the mask must stay within range.
    pub fn subset_from_mask(&self, mask: u64) -> Result<Subset> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::InvalidParameter(format!(
                "mask {mask:#x} exceeds ground set of {} points",
                self.len()
            )));
        }
        Ok(Subset {
            ground: self.clone(),
            mask,
        })
    }

    /// Ground set keeping only the labels in `mask`, in canonical order.
    pub fn restrict(&self, mask: u64) -> GroundSet {
        let labels: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| l.clone())
            .collect();
        GroundSet {
            labels: Arc::new(labels),
        }
    }

    /// Labels of `self` that do not occur in `other`, in canonical order.
    pub fn difference(&self, other: &GroundSet) -> GroundSet {
        let labels: Vec<String> = self
            .labels
            .iter()
            .filter(|l| !other.contains(l))
            .cloned()
            .collect();
        GroundSet {
            labels: Arc::new(labels),
        }
    }

    /// Labels common to `self` and `other`, in `self`'s order.
    pub fn intersection(&self, other: &GroundSet) -> GroundSet {
        let labels: Vec<String> = self
            .labels
            .iter()
            .filter(|l| other.contains(l))
            .cloned()
            .collect();
        GroundSet {
            labels: Arc::new(labels),
        }
    }

    /// Disjoint union of two ground sets.
    ///
    /// Colliding labels are renamed by suffixing `/d` on the left side and
    /// `/c` on the right side.  If the renamed labels still collide the union
    /// is rejected.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        let mut labels = Vec::with_capacity(self.len() + other.len());
        for l in self.labels.iter() {
            if other.contains(l) {
                labels.push(format!("{l}{DOMAIN_TAG}"));
            } else {
                labels.push(l.clone());
            }
        }
        for l in other.labels.iter() {
            if self.contains(l) {
                labels.push(format!("{l}{CODOMAIN_TAG}"));
            } else {
                labels.push(l.clone());
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::LabelClash(l.clone()));
            }
        }
        Ok(GroundSet {
            labels: Arc::new(labels),
        })
    }

    /// Iterates over all subset masks, in increasing numeric order.
    pub fn all_masks(&self) -> impl Iterator<Item = u64> {
        0..(1u64 << self.len())
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A subset of a [`GroundSet`], stored as a bit-vector in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    ground: GroundSet,
    mask: u64,
}

impl Subset {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, label: &str) -> bool {
        match self.ground.position(label) {
            Some(i) => self.mask >> i & 1 == 1,
            None => false,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            ground: self.ground.clone(),
            mask: !self.mask & self.ground.full_mask(),
        }
    }

    /// Labels of the subset, in the ground set's canonical order.
    pub fn labels(&self) -> Vec<String> {
        self.ground
            .labels()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.mask >> i & 1 == 1)
            .map(|(_, l)| l.clone())
            .collect()
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same_ground(other)?;
        Ok(Subset {
            ground: self.ground.clone(),
            mask: self.mask | other.mask,
        })
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_same_ground(other)?;
        Ok(Subset {
            ground: self.ground.clone(),
            mask: self.mask & other.mask,
        })
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check_same_ground(other)?;
        Ok(Subset {
            ground: self.ground.clone(),
            mask: self.mask & !other.mask,
        })
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.check_same_ground(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    fn check_same_ground(&self, other: &Subset) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!(
                "{:?} vs {:?}",
                self.ground, other.ground
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for l in self.labels() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Remaps `mask` through a positional permutation: bit `i` moves to `perm[i]`.
pub(crate) fn remap_mask(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_labels_required() {
        assert!(GroundSet::new(["a", "b", "a"]).is_err());
        assert!(GroundSet::new(["a", "b"]).is_ok());
    }

    #[test]
    fn subset_algebra() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let s = g.subset(["a", "c"]).unwrap();
        assert_eq!(s.mask(), 0b101);
        assert_eq!(s.complement().labels(), vec!["b".to_string()]);
        assert_eq!(s.len(), 2);
        assert!(s.contains("a") && !s.contains("b"));
    }

    #[test]
    fn disjoint_union_tags_only_collisions() {
        let a = GroundSet::new(["a", "x"]).unwrap();
        let b = GroundSet::new(["a", "y"]).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.labels(), ["a/d", "x", "a/c", "y"]);
    }

    #[test]
    fn permutation_roundtrip() {
        let a = GroundSet::new(["a", "b", "c"]).unwrap();
        let b = GroundSet::new(["c", "a", "b"]).unwrap();
        let p = a.permutation_to(&b).unwrap();
        assert_eq!(remap_mask(0b001, &p), 0b010); // a -> position 1 in b
        assert_eq!(remap_mask(0b111, &p), 0b111);
    }
}
