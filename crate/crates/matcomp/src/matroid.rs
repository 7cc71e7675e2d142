//! Matroids given by their families of bases.
//!
//! A matroid here is a ground set together with a family of equal-size basis
//! subsets satisfying the exchange axiom.  The empty family is permitted and
//! is called the zero matroid; it has no well-defined rank but is needed as
//! the zero morphism of the strict composition category.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{remap_mask, GroundSet, Subset};

/// A matroid: a ground set plus a (possibly empty) family of bases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    ground: GroundSet,
    bases: BTreeSet<u64>,
}

/// Checks the basis exchange axiom for a family of subsets.
///
/// Returns `true` iff the family is empty (the zero matroid) or all members
/// have equal cardinality and for every pair of bases `X, X'` and every
/// `x ∈ X \ X'` there is `x' ∈ X' \ X` with `X - x + x'` in the family.
pub fn is_matroid(ground: &GroundSet, bases: &[Subset]) -> Result<bool> {
    let mut masks = BTreeSet::new();
    for b in bases {
        if b.ground() != ground {
            return Err(Error::GroundMismatch(format!(
                "basis over {:?}, expected {:?}",
                b.ground(),
                ground
            )));
        }
        masks.insert(b.mask());
    }
    Ok(is_matroid_masks(&masks))
}

/// Exchange-axiom check on raw masks.
pub(crate) fn is_matroid_masks(bases: &BTreeSet<u64>) -> bool {
    let mut iter = bases.iter();
    let first = match iter.next() {
        None => return true, // zero matroid
        Some(&b) => b,
    };
    let rank = first.count_ones();
    if bases.iter().any(|b| b.count_ones() != rank) {
        return false;
    }
    for &x in bases {
        for &xp in bases {
            let mut out = x & !xp;
            while out != 0 {
                let e = out.trailing_zeros();
                out &= out - 1;
                let mut found = false;
                let mut cand = xp & !x;
                while cand != 0 {
                    let ep = cand.trailing_zeros();
                    cand &= cand - 1;
                    if bases.contains(&(x & !(1 << e) | (1 << ep))) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

impl Matroid {
    /// Builds a matroid, validating the exchange axiom.
    pub fn new(ground: GroundSet, bases: Vec<Subset>) -> Result<Self> {
        if !is_matroid(&ground, &bases)? {
            return Err(Error::NotAMatroid(format!(
                "bases {:?} fail the exchange axiom",
                bases
            )));
        }
        Ok(Matroid {
            ground,
            bases: bases.into_iter().map(|b| b.mask()).collect(),
        })
    }

    /// Builds a matroid from labels for each basis.
    pub fn from_labels<I, J, S>(ground: GroundSet, bases: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let subsets: Vec<Subset> = bases
            .into_iter()
            .map(|b| ground.subset(b))
            .collect::<Result<_>>()?;
        Matroid::new(ground, subsets)
    }

    /// The zero matroid on a ground set (empty basis family).
    pub fn zero(ground: GroundSet) -> Self {
        Matroid {
            ground,
            bases: BTreeSet::new(),
        }
    }

    /// Used by operations whose output is a matroid by theorem; skips the
    /// axiom check.
    pub(crate) fn from_masks_unchecked(ground: GroundSet, bases: BTreeSet<u64>) -> Self {
        Matroid { ground, bases }
    }

    /// The rank-`k` uniform matroid on `ground`; zero when `k` is out of range.
    pub fn uniform(ground: GroundSet, k: usize) -> Self {
        let mut bases = BTreeSet::new();
        if k <= ground.len() {
            for m in ground.all_masks() {
                if m.count_ones() as usize == k {
                    bases.insert(m);
                }
            }
        }
        Matroid { ground, bases }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn is_zero(&self) -> bool {
        self.bases.is_empty()
    }

    /// The common size of the bases; `None` for the zero matroid.
    pub fn rank(&self) -> Option<usize> {
        self.bases.iter().next().map(|b| b.count_ones() as usize)
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> impl Iterator<Item = Subset> + '_ {
        self.bases
            .iter()
            .map(|&m| self.ground.subset_from_mask(m).expect("stored mask"))
    }

    pub(crate) fn basis_masks(&self) -> &BTreeSet<u64> {
        &self.bases
    }

    pub fn contains_basis(&self, s: &Subset) -> bool {
        s.ground() == &self.ground && self.bases.contains(&s.mask())
    }

    /// The dual matroid: complements of the bases.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full_mask();
        Matroid {
            ground: self.ground.clone(),
            bases: self.bases.iter().map(|b| !b & full).collect(),
        }
    }

    /// Replaces the label at one point, keeping the canonical order.
    pub fn relabel(&self, old: &str, new: &str) -> Result<Matroid> {
        let i = self
            .ground
            .position(old)
            .ok_or_else(|| Error::UnknownLabel(old.to_string()))?;
        let mut labels: Vec<String> = self.ground.labels().to_vec();
        labels[i] = new.to_string();
        Ok(Matroid {
            ground: GroundSet::new(labels)?,
            bases: self.bases.clone(),
        })
    }

    /// The same matroid with its ground set sorted by label, for comparisons
    /// between matroids built along different routes.
    pub fn canonicalized(&self) -> Matroid {
        let mut labels: Vec<String> = self.ground.labels().to_vec();
        labels.sort();
        let sorted = GroundSet::new(labels).expect("labels stay distinct");
        let perm = self.ground.permutation_to(&sorted).expect("same labels");
        Matroid {
            ground: sorted,
            bases: self.bases.iter().map(|&b| remap_mask(b, &perm)).collect(),
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid({:?}, [", self.ground)?;
        for (i, b) in self.bases().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", b)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn rank_one_uniform_is_matroid() {
        let ground = g(&["a", "b"]);
        let bases = vec![ground.subset(["a"]).unwrap(), ground.subset(["b"]).unwrap()];
        assert!(is_matroid(&ground, &bases).unwrap());
    }

    #[test]
    fn empty_family_is_zero_matroid() {
        let ground = g(&["a", "b"]);
        assert!(is_matroid(&ground, &[]).unwrap());
        let z = Matroid::zero(ground);
        assert!(z.is_zero());
        assert_eq!(z.rank(), None);
    }

    #[test]
    fn unequal_sizes_rejected() {
        let ground = g(&["a", "b"]);
        let bases = vec![
            ground.empty_subset(),
            ground.subset(["a", "b"]).unwrap(),
        ];
        assert!(!is_matroid(&ground, &bases).unwrap());
    }

    #[test]
    fn exchange_failure_detected() {
        // {ab, cd} is the classic non-matroid pair.
        let ground = g(&["a", "b", "c", "d"]);
        let bases = vec![
            ground.subset(["a", "b"]).unwrap(),
            ground.subset(["c", "d"]).unwrap(),
        ];
        assert!(!is_matroid(&ground, &bases).unwrap());
        assert!(Matroid::new(ground, bases).is_err());
    }

    #[test]
    fn dual_involution() {
        let m = Matroid::from_labels(g(&["a", "b", "c"]), [["a"], ["b"]]).unwrap();
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.dual().rank(), Some(2));
    }

    #[test]
    fn mismatched_ground_is_error() {
        let ground = g(&["a", "b"]);
        let other = g(&["x"]);
        let b = other.subset(["x"]).unwrap();
        assert!(is_matroid(&ground, &[b]).is_err());
    }
}
