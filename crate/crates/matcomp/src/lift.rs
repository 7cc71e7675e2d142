//! Dominant morphisms, projections, and general lifts.
//!
//! These operations turn the definite-type theorem into something testable:
//! a relation is *dominant* when every codomain point can be exchanged
//! against some domain point at every related pair; a lift of `λ` over
//! auxiliary sets `S, T` reproduces `λ` under the projection that pins the
//! auxiliary cardinalities at `(k, l)` and vanishes below; and the
//! `(S,T)`-general lift is the unique lift all of whose auxiliary points are
//! general.  Composing a general lift with a dominant morphism stays
//! general, which is exactly what the lax-composition type computation
//! certifies.  None of this is exposed on the CLI; it powers the property
//! suites.

use std::collections::BTreeSet;

use crate::compose::compose_strict;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::relation::{CompositionType, Point, SubsetRelation};

/// Every codomain point is exchangeable against some domain point, at every
/// related pair.
pub fn is_dominant(mu: &SubsetRelation) -> bool {
    let nb = mu.codomain().len();
    let na = mu.domain().len();
    mu.mask_pairs().iter().all(|&(x, y)| {
        (0..nb).all(|b| {
            (0..na).any(|a| mu.exchangeable_masks(x, y, Point::Domain(a), Point::Codomain(b)))
        })
    })
}

/// Composes with a uniform relation onto a fresh codomain to make the
/// morphism dominant while preserving its corange.
pub fn make_dominant(mu: &SubsetRelation) -> Result<SubsetRelation> {
    if mu.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    let sizes: Vec<usize> = mu.range().iter().map(|y| y.len()).collect();
    let m = *sizes.iter().min().expect("nonzero relation") as i64;
    let n = *sizes.iter().max().expect("nonzero relation") as i64;
    let d = GroundSet::new((0..(n - m)).map(|i| format!("d{i}")))?;
    let u = SubsetRelation::uniform(-m, mu.codomain(), &d)?;
    compose_strict(mu, &u)
}

/// Whether the codomain point `t` is general in `lambda`: for every related
/// pair avoiding `t` it is exchangeable with every point of `X̄ ⊔ Y`.
pub fn is_general_codomain_point(lambda: &SubsetRelation, t: usize) -> bool {
    let full_a = lambda.domain().full_mask();
    lambda.mask_pairs().iter().all(|&(x, y)| {
        if y >> t & 1 == 1 {
            return true;
        }
        let u = Point::Codomain(t);
        let mut ok = true;
        let mut m = !x & full_a;
        while ok && m != 0 {
            let z = Point::Domain(m.trailing_zeros() as usize);
            m &= m - 1;
            ok = lambda.exchangeable_masks(x, y, u, z);
        }
        let mut m = y;
        while ok && m != 0 {
            let z = Point::Codomain(m.trailing_zeros() as usize);
            m &= m - 1;
            ok = lambda.exchangeable_masks(x, y, u, z);
        }
        ok
    })
}

/// Whether the domain point `s` is general: the same condition in the
/// adjoint, i.e. against every point of `X ⊔ Ȳ` at pairs avoiding `s`.
pub fn is_general_domain_point(lambda: &SubsetRelation, s: usize) -> bool {
    let full_b = lambda.codomain().full_mask();
    lambda.mask_pairs().iter().all(|&(x, y)| {
        if x >> s & 1 == 1 {
            return true;
        }
        let u = Point::Domain(s);
        let mut ok = true;
        let mut m = x;
        while ok && m != 0 {
            let z = Point::Domain(m.trailing_zeros() as usize);
            m &= m - 1;
            ok = lambda.exchangeable_masks(x, y, u, z);
        }
        let mut m = !y & full_b;
        while ok && m != 0 {
            let z = Point::Codomain(m.trailing_zeros() as usize);
            m &= m - 1;
            ok = lambda.exchangeable_masks(x, y, u, z);
        }
        ok
    })
}

/// Whether `lambda_tilde` on `(A ⊗ S, B ⊗ T)` is nonzero with every point of
/// `S ⊔ T` general.
pub fn is_general(lambda_tilde: &SubsetRelation, s: &GroundSet, t: &GroundSet) -> Result<bool> {
    if lambda_tilde.is_zero() {
        return Ok(false);
    }
    for l in s.labels() {
        let i = lambda_tilde
            .domain()
            .position(l)
            .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
        if !is_general_domain_point(lambda_tilde, i) {
            return Ok(false);
        }
    }
    for l in t.labels() {
        let j = lambda_tilde
            .codomain()
            .position(l)
            .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
        if !is_general_codomain_point(lambda_tilde, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The projection `π_{k,l} = (1_A ⊗ u^k_{∅,S}) ∘ λ̃ ∘ (1_B ⊗ u^{-l}_{T,∅})`:
/// keeps the `(X, Y)` with some `(X, U) λ̃ (Y, V)`, `|U| = k`, `|V| = l`.
pub fn projection(
    lambda_tilde: &SubsetRelation,
    s: &GroundSet,
    t: &GroundSet,
    k: u32,
    l: u32,
) -> Result<SubsetRelation> {
    let a = lambda_tilde.domain().difference(s);
    let b = lambda_tilde.codomain().difference(t);
    if a.len() + s.len() != lambda_tilde.domain().len()
        || b.len() + t.len() != lambda_tilde.codomain().len()
    {
        return Err(Error::GroundMismatch(
            "auxiliary sets must split the interface".into(),
        ));
    }
    let head = SubsetRelation::identity(&a)?
        .tensor(&SubsetRelation::uniform(k as i64, &GroundSet::empty(), s)?)?;
    let tail = SubsetRelation::identity(&b)?
        .tensor(&SubsetRelation::uniform(-(l as i64), t, &GroundSet::empty())?)?;
    compose_strict(&compose_strict(&head, lambda_tilde)?, &tail)
}

/// The explicit `(S, T)`-general lift of `λ` of type `(k, l)`:
/// `(X, U)` related to `(Y, V)` iff some related `(X', Y')` of `λ` and some
/// `c ≥ 0` satisfy `|U| = |X'∖X| + |Y∖Y'| + k + c` and
/// `|V| = |X∖X'| + |Y'∖Y| + l + c`.
pub fn general_lift(
    lambda: &SubsetRelation,
    s: &GroundSet,
    t: &GroundSet,
    k: u32,
    l: u32,
) -> Result<SubsetRelation> {
    if lambda.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    let a = lambda.domain();
    let b = lambda.codomain();
    for lab in s.labels() {
        if a.contains(lab) {
            return Err(Error::LabelClash(lab.clone()));
        }
    }
    for lab in t.labels() {
        if b.contains(lab) {
            return Err(Error::LabelClash(lab.clone()));
        }
    }
    let domain = a.disjoint_union(s)?;
    let codomain = b.disjoint_union(t)?;
    let na = a.len();
    let nb = b.len();
    let mut pairs = BTreeSet::new();
    for du in domain.all_masks() {
        let x = du & a.full_mask();
        let usize_ = (du >> na).count_ones() as i64;
        for cv in codomain.all_masks() {
            let y = cv & b.full_mask();
            let vsize = (cv >> nb).count_ones() as i64;
            let witnessed = lambda.mask_pairs().iter().any(|&(xp, yp)| {
                let need_u = (xp & !x).count_ones() as i64
                    + (y & !yp).count_ones() as i64
                    + k as i64;
                let need_v = (x & !xp).count_ones() as i64
                    + (yp & !y).count_ones() as i64
                    + l as i64;
                let c = usize_ - need_u;
                c >= 0 && vsize - need_v == c
            });
            if witnessed {
                pairs.insert((du, cv));
            }
        }
    }
    SubsetRelation::from_masks(domain, codomain, pairs)
}

/// Groups a base relation with its auxiliary sets and intended lift type.
#[derive(Debug, Clone)]
pub struct LiftContext {
    pub relation: SubsetRelation,
    pub s: GroundSet,
    pub t: GroundSet,
    pub kind: CompositionType,
}

impl LiftContext {
    pub fn new(relation: SubsetRelation, s: GroundSet, t: GroundSet, kind: CompositionType) -> Self {
        LiftContext { relation, s, t, kind }
    }

    /// The size bound `(k, l) ≤ (|S| - |B|, |T| - |B|)` required by the
    /// composition lemma.
    pub fn bound_satisfied(&self) -> bool {
        let nb = self.relation.codomain().len() as i64;
        (self.kind.k as i64) <= self.s.len() as i64 - nb
            && (self.kind.l as i64) <= self.t.len() as i64 - nb
    }

    pub fn lift(&self) -> Result<SubsetRelation> {
        general_lift(&self.relation, &self.s, &self.t, self.kind.k, self.kind.l)
    }

    pub fn project(&self, lifted: &SubsetRelation, k: u32, l: u32) -> Result<SubsetRelation> {
        projection(lifted, &self.s, &self.t, k, l)
    }

    /// The type of `lifted` as a lift: the unique minimal `(k, l)` with a
    /// nonzero projection, provided projections vanish off the up-set.
    pub fn lift_type(&self, lifted: &SubsetRelation) -> Result<Option<CompositionType>> {
        let max_k = self.s.len() as u32;
        let max_l = self.t.len() as u32;
        let mut minimal: Option<CompositionType> = None;
        for k in 0..=max_k {
            for l in 0..=max_l {
                if !self.project(lifted, k, l)?.is_zero() {
                    let this = CompositionType::new(k, l);
                    match minimal {
                        None => minimal = Some(this),
                        Some(prev) => {
                            if this.leq(&prev) {
                                minimal = Some(this);
                            } else if !prev.leq(&this) {
                                return Ok(None); // incomparable nonzero projections
                            }
                        }
                    }
                }
            }
        }
        // verify the vanishing clause: nonzero only above the minimum
        if let Some(kind) = minimal {
            for k in 0..=max_k {
                for l in 0..=max_l {
                    let nonzero = !self.project(lifted, k, l)?.is_zero();
                    if nonzero && !kind.leq(&CompositionType::new(k, l)) {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(minimal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::matroid_as_morphism;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn isomorphisms_are_dominant() {
        let a = g(&["a", "b"]);
        assert!(is_dominant(&SubsetRelation::identity(&a).unwrap()));
    }

    #[test]
    fn negative_uniform_relations_are_dominant() {
        let a = g(&["a", "b", "c"]);
        let b = g(&["x", "y"]);
        assert!(is_dominant(&SubsetRelation::uniform(-1, &a, &b).unwrap()));
        assert!(is_dominant(&SubsetRelation::uniform(0, &a, &a).unwrap()));
    }

    #[test]
    fn empty_domain_elementary_not_dominant() {
        let b = g(&["b"]);
        let e = SubsetRelation::elementary(
            &GroundSet::empty().empty_subset(),
            &b.subset(["b"]).unwrap(),
        )
        .unwrap();
        assert!(!is_dominant(&e));
    }

    #[test]
    fn make_dominant_preserves_corange() {
        let a = g(&["a", "b"]);
        let b = g(&["x", "y"]);
        let e = SubsetRelation::elementary(
            &a.subset(["a"]).unwrap(),
            &b.subset(["x", "y"]).unwrap(),
        )
        .unwrap();
        let nu = make_dominant(&e).unwrap();
        assert!(is_dominant(&nu));
        assert_eq!(nu.corange(), e.corange());

        let u = SubsetRelation::uniform(-1, &a, &b).unwrap();
        let nu = make_dominant(&u).unwrap();
        assert!(is_dominant(&nu));
        assert_eq!(nu.corange(), u.corange());
    }

    #[test]
    fn general_lift_projects_back() {
        let a = g(&["a"]);
        let b = g(&["x"]);
        let lam = SubsetRelation::uniform(0, &a, &b).unwrap();
        let s = g(&["s1", "s2"]);
        let t = g(&["t1", "t2"]);
        for (k, l) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let lifted = general_lift(&lam, &s, &t, k, l).unwrap();
            assert!(lifted.exchange_check(), "lift must be exchange");
            assert!(is_general(&lifted, &s, &t).unwrap());
            let ctx = LiftContext::new(lam.clone(), s.clone(), t.clone(), CompositionType::new(k, l));
            assert_eq!(ctx.project(&lifted, k, l).unwrap(), lam);
            assert_eq!(ctx.lift_type(&lifted).unwrap(), Some(CompositionType::new(k, l)));
        }
    }

    #[test]
    fn plain_tensor_lift_is_not_general() {
        // λ ⊗ 1_S leaves the S points rigidly paired, hence not general.
        let a = g(&["a"]);
        let b = g(&["x"]);
        let lam = matroid_as_morphism(
            &crate::matroid::Matroid::from_labels(b.clone(), [["x"]]).unwrap(),
        )
        .unwrap();
        let _ = a;
        let s = g(&["s"]);
        let tensored = lam.tensor(&SubsetRelation::identity(&s).unwrap()).unwrap();
        assert!(!is_general(&tensored, &s, &s).unwrap());
    }

    #[test]
    fn empty_auxiliaries_vacuously_general() {
        let a = g(&["a"]);
        let id = SubsetRelation::identity(&a).unwrap();
        let empty = GroundSet::empty();
        assert!(is_general(&id, &empty, &empty).unwrap());
        let zero = SubsetRelation::zero(a.clone(), a).unwrap();
        assert!(!is_general(&zero, &empty, &empty).unwrap());
    }

    #[test]
    fn general_lift_unique_among_general_lifts() {
        // exhaustive check on a small instance: every (S,T)-general lift of
        // λ of type (k,l) equals the explicit one
        let a = g(&["a"]);
        let b = g(&["x"]);
        let lam = SubsetRelation::identity(&a).unwrap().reindexed(&a, &a).unwrap();
        let lam = lam.reindexed(&a, &a).unwrap();
        let s = g(&["s"]);
        let t = g(&["t"]);
        let (k, l) = (0u32, 0u32);
        let reference = general_lift(&lam, &s, &t, k, l).unwrap();
        let _ = b;
        let ctx = LiftContext::new(lam.clone(), s.clone(), t.clone(), CompositionType::new(k, l));
        // enumerate all relations on (A ⊔ S, A ⊔ T) that are exchange,
        // (S,T)-general lifts of λ of type (k,l)
        let domain = a.disjoint_union(&s).unwrap();
        let codomain = a.disjoint_union(&t).unwrap();
        let universe: Vec<(u64, u64)> = domain
            .all_masks()
            .flat_map(|x| codomain.all_masks().map(move |y| (x, y)))
            .collect();
        let mut found = 0;
        for selector in 0u64..(1 << universe.len()) {
            let pairs: std::collections::BTreeSet<(u64, u64)> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| selector >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let cand =
                SubsetRelation::from_masks(domain.clone(), codomain.clone(), pairs).unwrap();
            if !cand.exchange_check() || !is_general(&cand, &s, &t).unwrap() {
                continue;
            }
            if ctx.lift_type(&cand).unwrap() != Some(CompositionType::new(k, l)) {
                continue;
            }
            if ctx.project(&cand, k, l).unwrap() != lam {
                continue;
            }
            assert_eq!(cand, reference, "two distinct general lifts of one type");
            found += 1;
        }
        assert_eq!(found, 1);
    }
}
