//! Relations on subset lattices and the relational exchange axiom.
//!
//! A [`SubsetRelation`] between ground sets `A` and `B` is a finite set of
//! pairs `(X, Y)` with `X ⊆ A`, `Y ⊆ B`, stored as sorted mask pairs for
//! deterministic iteration.  Relations satisfying the exchange axiom are
//! exactly the matroids on `A ⊔ B`, via the associated matroid with bases
//! `X̄ ⊔ Y`; that bijection is what makes relations composable morphisms.
//!
//! Two implementations of the exchange check are kept side by side: the
//! definitional quadruple scan (`exchange_check_direct`) and the associated
//! matroid route (`exchange_check`).  The direct form is the oracle, the
//! matroid form the fast path; tests require them to agree everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{max_ground_points, remap_mask, GroundSet, Subset};
use crate::matroid::{is_matroid_masks, Matroid};

/// A point of the disjoint union `A ⊔ B` underlying a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Domain(usize),
    Codomain(usize),
}

/// The pair `(k, l)` of non-negative integers attached to a lax composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositionType {
    pub k: u32,
    pub l: u32,
}

impl CompositionType {
    pub fn new(k: u32, l: u32) -> Self {
        CompositionType { k, l }
    }

    pub fn total(&self) -> u32 {
        self.k + self.l
    }

    /// Componentwise partial order: `self ≤ other` iff both components are.
    pub fn leq(&self, other: &CompositionType) -> bool {
        self.k <= other.k && self.l <= other.l
    }

    pub fn plus(&self, other: &CompositionType) -> CompositionType {
        CompositionType::new(self.k + other.k, self.l + other.l)
    }
}

impl fmt::Display for CompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// A relation between the subset lattices of two ground sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetRelation {
    domain: GroundSet,
    codomain: GroundSet,
    pairs: BTreeSet<(u64, u64)>,
}

/// The parameter of [`SubsetRelation::basic`].
#[derive(Debug, Clone)]
pub enum BasicRelation {
    Zero,
    Identity,
    Elementary(Subset, Subset),
    Covering,
    PartialIdentity(Subset, Subset),
    Uniform(i64),
}

impl SubsetRelation {
    /// Builds a relation from subset pairs.
    pub fn new<I>(domain: GroundSet, codomain: GroundSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        check_side(&domain)?;
        check_side(&codomain)?;
        let mut set = BTreeSet::new();
        for (x, y) in pairs {
            if x.ground() != &domain {
                return Err(Error::GroundMismatch(format!(
                    "pair domain {:?}, expected {:?}",
                    x.ground(),
                    domain
                )));
            }
            if y.ground() != &codomain {
                return Err(Error::GroundMismatch(format!(
                    "pair codomain {:?}, expected {:?}",
                    y.ground(),
                    codomain
                )));
            }
            set.insert((x.mask(), y.mask()));
        }
        Ok(SubsetRelation {
            domain,
            codomain,
            pairs: set,
        })
    }

    pub(crate) fn from_masks(
        domain: GroundSet,
        codomain: GroundSet,
        pairs: BTreeSet<(u64, u64)>,
    ) -> Result<Self> {
        check_side(&domain)?;
        check_side(&codomain)?;
        debug_assert!(pairs
            .iter()
            .all(|&(x, y)| x & !domain.full_mask() == 0 && y & !codomain.full_mask() == 0));
        Ok(SubsetRelation {
            domain,
            codomain,
            pairs,
        })
    }

    /// The zero relation: no pair is related.
    pub fn zero(domain: GroundSet, codomain: GroundSet) -> Result<Self> {
        Self::from_masks(domain, codomain, BTreeSet::new())
    }

    /// The identity relation on `a`: `X` related to `X`.
    pub fn identity(a: &GroundSet) -> Result<Self> {
        let pairs = a.all_masks().map(|m| (m, m)).collect();
        Self::from_masks(a.clone(), a.clone(), pairs)
    }

    /// The elementary relation: exactly the pair `(P, Q)`.
    pub fn elementary(p: &Subset, q: &Subset) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        pairs.insert((p.mask(), q.mask()));
        Self::from_masks(p.ground().clone(), q.ground().clone(), pairs)
    }

    /// The covering relation on `a`: `X ⊆ Y` with `|X| = |Y| - 1`.
    pub fn covering(a: &GroundSet) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for m in a.all_masks() {
            let mut rest = !m & a.full_mask();
            while rest != 0 {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                pairs.insert((m, m | 1 << e));
            }
        }
        Self::from_masks(a.clone(), a.clone(), pairs)
    }

    /// The partial identity `ι_{P,Q}`: `X` related to `Y` iff `P = Y \ X` and
    /// `Q = X \ Y`.  `P` and `Q` must be disjoint subsets of `a`.
    pub fn partial_identity(a: &GroundSet, p: &Subset, q: &Subset) -> Result<Self> {
        if p.ground() != a || q.ground() != a {
            return Err(Error::GroundMismatch(
                "partial identity subsets must live on the relation's ground set".into(),
            ));
        }
        if p.mask() & q.mask() != 0 {
            return Err(Error::OverlappingSets(format!("{:?} and {:?}", p, q)));
        }
        let free = a.full_mask() & !(p.mask() | q.mask());
        let mut pairs = BTreeSet::new();
        let mut d = free;
        loop {
            pairs.insert((d | q.mask(), d | p.mask()));
            if d == 0 {
                break;
            }
            d = (d - 1) & free;
        }
        Self::from_masks(a.clone(), a.clone(), pairs)
    }

    /// The degree-`k` uniform relation: `X` related to `Y` iff `|Y| - |X| = k`.
    pub fn uniform(k: i64, a: &GroundSet, b: &GroundSet) -> Result<Self> {
        check_side(a)?;
        check_side(b)?;
        let mut by_size_b: Vec<Vec<u64>> = vec![Vec::new(); b.len() + 1];
        for m in b.all_masks() {
            by_size_b[m.count_ones() as usize].push(m);
        }
        let mut pairs = BTreeSet::new();
        for m in a.all_masks() {
            let target = m.count_ones() as i64 + k;
            if target < 0 || target > b.len() as i64 {
                continue;
            }
            for &my in &by_size_b[target as usize] {
                pairs.insert((m, my));
            }
        }
        Self::from_masks(a.clone(), b.clone(), pairs)
    }

    /// Dispatches the basic constructors of the relation toolkit.
    pub fn basic(kind: BasicRelation, a: &GroundSet, b: &GroundSet) -> Result<Self> {
        let same = |kind: &str| -> Result<()> {
            if !a.same_elements(b) {
                return Err(Error::InvalidParameter(format!(
                    "{kind} relation requires equal ground sets"
                )));
            }
            Ok(())
        };
        match kind {
            BasicRelation::Zero => Self::zero(a.clone(), b.clone()),
            BasicRelation::Identity => {
                same("identity")?;
                let id = Self::identity(a)?;
                id.reindexed(a, b)
            }
            BasicRelation::Elementary(p, q) => Self::elementary(&p, &q),
            BasicRelation::Covering => {
                same("covering")?;
                Self::covering(a)?.reindexed(a, b)
            }
            BasicRelation::PartialIdentity(p, q) => {
                same("partial identity")?;
                Self::partial_identity(a, &p, &q)?.reindexed(a, b)
            }
            BasicRelation::Uniform(k) => Self::uniform(k, a, b),
        }
    }

    /// The partial-transversal relation of a total map `φ : A → B`:
    /// `X` related to `Y` iff `φ` restricts to a bijection `X → Y`.
    pub fn transversal(domain: &GroundSet, codomain: &GroundSet, map: &[(String, String)]) -> Result<Self> {
        check_side(domain)?;
        check_side(codomain)?;
        let mut image: Vec<Option<usize>> = vec![None; domain.len()];
        for (from, to) in map {
            let i = domain
                .position(from)
                .ok_or_else(|| Error::UnknownLabel(from.clone()))?;
            let j = codomain
                .position(to)
                .ok_or_else(|| Error::UnknownLabel(to.clone()))?;
            if image[i].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "map sends `{from}` to two targets"
                )));
            }
            image[i] = Some(j);
        }
        let image: Vec<usize> = image
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidParameter(format!(
                "map is not total: `{}` has no image",
                domain.label(i)
            ))))
            .collect::<Result<_>>()?;
        let mut pairs = BTreeSet::new();
        'outer: for m in domain.all_masks() {
            let mut y = 0u64;
            let mut mm = m;
            while mm != 0 {
                let i = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                let bit = 1u64 << image[i];
                if y & bit != 0 {
                    continue 'outer; // not injective on X
                }
                y |= bit;
            }
            pairs.insert((m, y));
        }
        Self::from_masks(domain.clone(), codomain.clone(), pairs)
    }

    pub fn domain(&self) -> &GroundSet {
        &self.domain
    }

    pub fn codomain(&self) -> &GroundSet {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.pairs.iter().map(|&(x, y)| {
            (
                self.domain.subset_from_mask(x).expect("stored mask"),
                self.codomain.subset_from_mask(y).expect("stored mask"),
            )
        })
    }

    pub(crate) fn mask_pairs(&self) -> &BTreeSet<(u64, u64)> {
        &self.pairs
    }

    pub fn relates(&self, x: &Subset, y: &Subset) -> bool {
        x.ground() == &self.domain
            && y.ground() == &self.codomain
            && self.pairs.contains(&(x.mask(), y.mask()))
    }

    pub(crate) fn contains_masks(&self, x: u64, y: u64) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Rebuilds the relation over equal ground sets given in a different
    /// canonical order.
    pub fn reindexed(&self, domain: &GroundSet, codomain: &GroundSet) -> Result<SubsetRelation> {
        if !self.domain.same_elements(domain) || !self.codomain.same_elements(codomain) {
            return Err(Error::GroundMismatch(
                "reindexing requires the same labels".into(),
            ));
        }
        let pd = self.domain.permutation_to(domain).expect("same labels");
        let pc = self.codomain.permutation_to(codomain).expect("same labels");
        let pairs = self
            .pairs
            .iter()
            .map(|&(x, y)| (remap_mask(x, &pd), remap_mask(y, &pc)))
            .collect();
        SubsetRelation::from_masks(domain.clone(), codomain.clone(), pairs)
    }

    /// Whether `u` and `v` are exchangeable in the related pair `(x, y)`.
    ///
    /// The eight cases add or delete `u` and `v` on the appropriate sides so
    /// that `|Y'| - |X'| = |Y| - |X|`; the predicate is symmetric in `u, v`.
    pub fn exchangeable(&self, x: &Subset, y: &Subset, u: Point, v: Point) -> bool {
        self.exchangeable_masks(x.mask(), y.mask(), u, v)
    }

    pub(crate) fn exchangeable_masks(&self, x: u64, y: u64, u: Point, v: Point) -> bool {
        if u == v {
            return true;
        }
        let has = |mask: u64, i: usize| mask >> i & 1 == 1;
        match (u, v) {
            (Point::Domain(a), Point::Codomain(b)) => {
                if has(x, a) && has(y, b) {
                    self.pairs.contains(&(x & !(1 << a), y & !(1 << b)))
                } else if !has(x, a) && !has(y, b) {
                    self.pairs.contains(&(x | 1 << a, y | 1 << b))
                } else {
                    false
                }
            }
            (Point::Codomain(b), Point::Domain(a)) => {
                self.exchangeable_masks(x, y, Point::Domain(a), Point::Codomain(b))
            }
            (Point::Domain(a), Point::Domain(b)) => {
                if has(x, a) && !has(x, b) {
                    self.pairs.contains(&(x & !(1 << a) | 1 << b, y))
                } else if !has(x, a) && has(x, b) {
                    self.pairs.contains(&((x | 1 << a) & !(1 << b), y))
                } else {
                    false
                }
            }
            (Point::Codomain(a), Point::Codomain(b)) => {
                if has(y, a) && !has(y, b) {
                    self.pairs.contains(&(x, y & !(1 << a) | 1 << b))
                } else if !has(y, a) && has(y, b) {
                    self.pairs.contains(&(x, (y | 1 << a) & !(1 << b)))
                } else {
                    false
                }
            }
        }
    }

    /// The definitional exchange-axiom check: for all related pairs
    /// `(X, Y)`, `(X', Y')` and every `u ∈ X̄ ⊔ Y` there must be some
    /// `v ∈ X̄' ⊔ Y'` exchangeable with `u` in `(X, Y)`.
    ///
    /// This is the oracle form; [`SubsetRelation::exchange_check`] is the
    /// fast path through the associated matroid, and the two must agree.
    pub fn exchange_check_direct(&self) -> bool {
        let full_a = self.domain.full_mask();
        for &(x, y) in &self.pairs {
            let mut us: Vec<Point> = Vec::new();
            let mut m = !x & full_a;
            while m != 0 {
                us.push(Point::Domain(m.trailing_zeros() as usize));
                m &= m - 1;
            }
            let mut m = y;
            while m != 0 {
                us.push(Point::Codomain(m.trailing_zeros() as usize));
                m &= m - 1;
            }
            for &(xp, yp) in &self.pairs {
                for &u in &us {
                    let mut ok = false;
                    let mut m = !xp & full_a;
                    while m != 0 && !ok {
                        let v = Point::Domain(m.trailing_zeros() as usize);
                        m &= m - 1;
                        ok = self.exchangeable_masks(x, y, u, v);
                    }
                    let mut m = yp;
                    while m != 0 && !ok {
                        let v = Point::Codomain(m.trailing_zeros() as usize);
                        m &= m - 1;
                        ok = self.exchangeable_masks(x, y, u, v);
                    }
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exchange-axiom check through the associated matroid (fast path).
    pub fn exchange_check(&self) -> bool {
        is_matroid_masks(&self.associated_masks())
    }

    pub(crate) fn associated_masks(&self) -> BTreeSet<u64> {
        let n = self.domain.len();
        let full_a = self.domain.full_mask();
        self.pairs
            .iter()
            .map(|&(x, y)| (!x & full_a) | (y << n))
            .collect()
    }

    /// The ground set `A ⊔ B` of the associated matroid, with colliding
    /// labels tagged `/d` and `/c`.
    pub fn associated_ground(&self) -> Result<GroundSet> {
        self.domain.disjoint_union(&self.codomain)
    }

    /// The family `{X̄ ⊔ Y}` over the related pairs, as subsets of
    /// [`SubsetRelation::associated_ground`].  No exchange check is applied.
    pub fn associated_family(&self) -> Result<(GroundSet, Vec<Subset>)> {
        let ground = self.associated_ground()?;
        let members = self
            .associated_masks()
            .into_iter()
            .map(|m| ground.subset_from_mask(m))
            .collect::<Result<_>>()?;
        Ok((ground, members))
    }

    /// The associated matroid `α_λ` with bases `X̄ ⊔ Y`.
    ///
    /// Errors when the relation does not satisfy the exchange axiom; the zero
    /// relation yields the zero matroid.
    pub fn associated_matroid(&self) -> Result<Matroid> {
        let masks = self.associated_masks();
        if !is_matroid_masks(&masks) {
            return Err(Error::NotExchange(
                "associated family fails the exchange axiom".into(),
            ));
        }
        Ok(Matroid::from_masks_unchecked(self.associated_ground()?, masks))
    }

    /// The common value of `|Y| - |X|`; `None` for the zero relation.
    ///
    /// Errors when the pair degrees disagree (which certifies the relation is
    /// not an exchange relation).
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut iter = self.pairs.iter();
        let &(x0, y0) = match iter.next() {
            None => return Ok(None),
            Some(p) => p,
        };
        let d = y0.count_ones() as i64 - x0.count_ones() as i64;
        for &(x, y) in iter {
            if y.count_ones() as i64 - x.count_ones() as i64 != d {
                return Err(Error::NotExchange(
                    "pair degrees |Y| - |X| are not constant".into(),
                ));
            }
        }
        Ok(Some(d))
    }

    /// The adjoint relation: swaps domain and codomain.
    pub fn adjoint(&self) -> SubsetRelation {
        SubsetRelation {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            pairs: self.pairs.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    /// The complement relation: `X` related to `Y` iff `X̄` related to `Ȳ`
    /// in the original.
    pub fn complement(&self) -> SubsetRelation {
        let fa = self.domain.full_mask();
        let fb = self.codomain.full_mask();
        SubsetRelation {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            pairs: self
                .pairs
                .iter()
                .map(|&(x, y)| (!x & fa, !y & fb))
                .collect(),
        }
    }

    /// The product relation on the disjoint unions of the interfaces;
    /// degrees add.
    pub fn tensor(&self, other: &SubsetRelation) -> Result<SubsetRelation> {
        let domain = self.domain.disjoint_union(&other.domain)?;
        let codomain = self.codomain.disjoint_union(&other.codomain)?;
        let (na, nb) = (self.domain.len(), self.codomain.len());
        let mut pairs = BTreeSet::new();
        for &(x1, y1) in &self.pairs {
            for &(x2, y2) in &other.pairs {
                pairs.insert((x1 | x2 << na, y1 | y2 << nb));
            }
        }
        SubsetRelation::from_masks(domain, codomain, pairs)
    }

    /// Transfers the points of `s ⊆ A` from the domain to the codomain.
    ///
    /// The result lives on `(A \ S, S ⊔ B)` and has the same associated
    /// matroid: the pair `(X, Y)` becomes `(X \ S, (S \ X) ⊔ Y)`.
    pub fn transfer_to_codomain(&self, s: &Subset) -> Result<SubsetRelation> {
        if s.ground() != &self.domain {
            return Err(Error::GroundMismatch(
                "transfer set must be a domain subset".into(),
            ));
        }
        let s_ground = self.domain.restrict(s.mask());
        let new_domain = self.domain.restrict(!s.mask() & self.domain.full_mask());
        let new_codomain = s_ground.disjoint_union(&self.codomain)?;
        let keep = !s.mask() & self.domain.full_mask();
        let ns = s_ground.len();
        let pairs = self
            .pairs
            .iter()
            .map(|&(x, y)| {
                let x_new = compress_mask(x & keep, keep);
                let s_part = compress_mask(s.mask() & !x, s.mask());
                (x_new, s_part | y << ns)
            })
            .collect();
        SubsetRelation::from_masks(new_domain, new_codomain, pairs)
    }

    /// Transfers the points of `t ⊆ B` from the codomain to the domain.
    ///
    /// The result lives on `(T ⊔ A, B \ T)`: the pair `(X, Y)` becomes
    /// `((T \ Y) ⊔ X, Y \ T)`.
    pub fn transfer_to_domain(&self, t: &Subset) -> Result<SubsetRelation> {
        if t.ground() != &self.codomain {
            return Err(Error::GroundMismatch(
                "transfer set must be a codomain subset".into(),
            ));
        }
        let t_ground = self.codomain.restrict(t.mask());
        let new_codomain = self.codomain.restrict(!t.mask() & self.codomain.full_mask());
        let new_domain = t_ground.disjoint_union(&self.domain)?;
        let keep = !t.mask() & self.codomain.full_mask();
        let nt = t_ground.len();
        let pairs = self
            .pairs
            .iter()
            .map(|&(x, y)| {
                let y_new = compress_mask(y & keep, keep);
                let t_part = compress_mask(t.mask() & !y, t.mask());
                (t_part | x << nt, y_new)
            })
            .collect();
        SubsetRelation::from_masks(new_domain, new_codomain, pairs)
    }

    /// Pointwise order on relations with the same interface.
    pub fn leq(&self, other: &SubsetRelation) -> Result<bool> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::GroundMismatch(
                "ordered relations must share their interface".into(),
            ));
        }
        Ok(self.pairs.is_subset(&other.pairs))
    }

    /// The sets relted to at least one domain subset.
    pub fn range(&self) -> Vec<Subset> {
        let masks: BTreeSet<u64> = self.pairs.iter().map(|&(_, y)| y).collect();
        masks
            .into_iter()
            .map(|m| self.codomain.subset_from_mask(m).expect("stored mask"))
            .collect()
    }

    /// The range of the adjoint.
    pub fn corange(&self) -> Vec<Subset> {
        let masks: BTreeSet<u64> = self.pairs.iter().map(|&(x, _)| x).collect();
        masks
            .into_iter()
            .map(|m| self.domain.subset_from_mask(m).expect("stored mask"))
            .collect()
    }

    /// A bimatroid relates the empty set to the empty set (and is exchange).
    pub fn is_bimatroid(&self) -> bool {
        self.pairs.contains(&(0, 0)) && self.exchange_check()
    }

    /// When the relation is the subset graph of a bijection `φ : A → B`,
    /// returns the bijection as `(domain label, codomain label)` pairs.
    pub fn isomorphism_witness(&self) -> Option<Vec<(String, String)>> {
        let n = self.domain.len();
        if self.codomain.len() != n || self.pairs.len() != 1usize << n {
            return None;
        }
        let mut phi: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let x = 1u64 << i;
            let mut image = None;
            for &(px, py) in &self.pairs {
                if px == x {
                    if image.is_some() {
                        return None;
                    }
                    image = Some(py);
                }
            }
            let y = image?;
            if y.count_ones() != 1 {
                return None;
            }
            phi[i] = Some(y.trailing_zeros() as usize);
        }
        let phi: Vec<usize> = phi.into_iter().collect::<Option<_>>()?;
        // The graph of φ on all subsets must reproduce the pair set exactly.
        for &(x, y) in &self.pairs {
            if remap_mask(x, &phi) != y {
                return None;
            }
        }
        Some(
            phi.iter()
                .enumerate()
                .map(|(i, &j)| (self.domain.label(i).to_string(), self.codomain.label(j).to_string()))
                .collect(),
        )
    }

    pub fn is_isomorphism(&self) -> bool {
        self.isomorphism_witness().is_some()
    }

    /// Index of the pairs by domain mask, for joins.
    pub(crate) fn by_domain(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut map: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &(x, y) in &self.pairs {
            map.entry(x).or_default().push(y);
        }
        map
    }
}

impl fmt::Debug for SubsetRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubsetRelation({:?} -> {:?}, {} pairs)",
            self.domain,
            self.codomain,
            self.pairs.len()
        )
    }
}

fn check_side(g: &GroundSet) -> Result<()> {
    let max = max_ground_points();
    if g.len() > max {
        return Err(Error::TooManyPoints { size: g.len(), max });
    }
    Ok(())
}

/// Compresses the bits of `mask` selected by `within` into the low positions,
/// preserving order.  Used when a ground set is restricted.
pub(crate) fn compress_mask(mask: u64, within: u64) -> u64 {
    let mut out = 0u64;
    let mut pos = 0;
    let mut w = within;
    while w != 0 {
        let i = w.trailing_zeros();
        w &= w - 1;
        if mask >> i & 1 == 1 {
            out |= 1 << pos;
        }
        pos += 1;
    }
    out
}

/// Convenience: a matroid viewed as a morphism from the empty set, with
/// pairs `(∅, B)` over the bases.
pub fn matroid_as_morphism(m: &Matroid) -> Result<SubsetRelation> {
    let pairs = m.basis_masks().iter().map(|&b| (0u64, b)).collect();
    SubsetRelation::from_masks(GroundSet::empty(), m.ground().clone(), pairs)
}

/// Inverse of [`matroid_as_morphism`] for relations out of the empty set.
pub fn morphism_as_matroid(rel: &SubsetRelation) -> Result<Matroid> {
    if !rel.domain().is_empty() {
        return Err(Error::GroundMismatch(
            "only morphisms from the empty set are matroids".into(),
        ));
    }
    let masks: BTreeSet<u64> = rel.mask_pairs().iter().map(|&(_, y)| y).collect();
    if !is_matroid_masks(&masks) {
        return Err(Error::NotAMatroid(
            "relation range is not a basis family".into(),
        ));
    }
    Ok(Matroid::from_masks_unchecked(rel.codomain().clone(), masks))
}
