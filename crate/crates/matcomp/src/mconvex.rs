//! Bounded M-convex sets and relations on integer vectors.
//!
//! An M-convex set generalizes the basis-indicator vectors of a matroid to
//! integer points: whenever `p(e) > q(e)` for members `p, q`, some `f` with
//! `p(f) < q(f)` lets `p - ψ_e + ψ_f` stay in the set.  A relation `Λ`
//! between `Z^E` and `Z^F` is M-convex when `Γ_Λ = {(-p, q)}` is; bounded
//! relations store their finite support explicitly.  Lax composition extends
//! to this setting with the mismatch measured by `‖q - q'‖₁` and the type
//! read off the positive/negative parts.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::relation::{CompositionType, SubsetRelation};

/// A total integer assignment on a ground set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntegerVector {
    ground: GroundSet,
    values: Vec<i64>,
}

impl IntegerVector {
    pub fn new(ground: GroundSet, values: Vec<i64>) -> Result<Self> {
        if values.len() != ground.len() {
            return Err(Error::GroundMismatch(format!(
                "{} values for {} points",
                values.len(),
                ground.len()
            )));
        }
        Ok(IntegerVector { ground, values })
    }

    pub fn zero(ground: GroundSet) -> Self {
        let n = ground.len();
        IntegerVector {
            ground,
            values: vec![0; n],
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, label: &str) -> Option<i64> {
        self.ground.position(label).map(|i| self.values[i])
    }

    pub fn sup_norm(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// The M-convex exchange axiom on a finite family of integer vectors.
pub fn is_mconvex(vectors: &[IntegerVector]) -> Result<bool> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            if v.ground != first.ground {
                return Err(Error::GroundMismatch(
                    "all vectors must share one index set".into(),
                ));
            }
        }
    }
    let set: BTreeSet<&[i64]> = vectors.iter().map(|v| v.values.as_slice()).collect();
    Ok(is_mconvex_raw(&set))
}

fn is_mconvex_raw(set: &BTreeSet<&[i64]>) -> bool {
    for p in set {
        for q in set {
            let n = p.len();
            for e in 0..n {
                if p[e] <= q[e] {
                    continue;
                }
                let mut ok = false;
                for f in 0..n {
                    if p[f] < q[f] {
                        let mut moved = p.to_vec();
                        moved[e] -= 1;
                        moved[f] += 1;
                        if set.contains(moved.as_slice()) {
                            ok = true;
                            break;
                        }
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// A bounded M-convex relation, stored by its finite set of related vector
/// pairs.  The sign-flipped graph `Γ_Λ = {(-p, q)}` must be M-convex; the
/// empty relation is the zero morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedMConvexRelation {
    domain: GroundSet,
    codomain: GroundSet,
    pairs: BTreeSet<(Vec<i64>, Vec<i64>)>,
}

impl BoundedMConvexRelation {
    pub fn new(
        domain: GroundSet,
        codomain: GroundSet,
        pairs: Vec<(IntegerVector, IntegerVector)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (p, q) in pairs {
            if p.ground != domain || q.ground != codomain {
                return Err(Error::GroundMismatch(
                    "pair grounds must match the relation interface".into(),
                ));
            }
            set.insert((p.values, q.values));
        }
        let rel = BoundedMConvexRelation {
            domain,
            codomain,
            pairs: set,
        };
        if !rel.graph_is_mconvex() {
            return Err(Error::NotMConvex(
                "the graph {(-p, q)} fails the exchange axiom".into(),
            ));
        }
        Ok(rel)
    }

    fn from_raw(
        domain: GroundSet,
        codomain: GroundSet,
        pairs: BTreeSet<(Vec<i64>, Vec<i64>)>,
    ) -> Result<Self> {
        let rel = BoundedMConvexRelation {
            domain,
            codomain,
            pairs,
        };
        if !rel.graph_is_mconvex() {
            return Err(Error::NotMConvex(
                "the graph {(-p, q)} fails the exchange axiom".into(),
            ));
        }
        Ok(rel)
    }

    fn graph_is_mconvex(&self) -> bool {
        let joined: Vec<Vec<i64>> = self
            .pairs
            .iter()
            .map(|(p, q)| {
                let mut v: Vec<i64> = p.iter().map(|x| -x).collect();
                v.extend_from_slice(q);
                v
            })
            .collect();
        let set: BTreeSet<&[i64]> = joined.iter().map(|v| v.as_slice()).collect();
        is_mconvex_raw(&set)
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

    pub fn pairs(&self) -> impl Iterator<Item = (IntegerVector, IntegerVector)> + '_ {
        self.pairs.iter().map(|(p, q)| {
            (
                IntegerVector {
                    ground: self.domain.clone(),
                    values: p.clone(),
                },
                IntegerVector {
                    ground: self.codomain.clone(),
                    values: q.clone(),
                },
            )
        })
    }

    pub fn relates(&self, p: &IntegerVector, q: &IntegerVector) -> bool {
        self.pairs
            .contains(&(p.values.clone(), q.values.clone()))
    }

    /// The componentwise sup-norm bounds `(k, l)` of the stored support.
    pub fn bounds(&self) -> (i64, i64) {
        let mut k = 0;
        let mut l = 0;
        for (p, q) in &self.pairs {
            k = k.max(p.iter().map(|v| v.abs()).max().unwrap_or(0));
            l = l.max(q.iter().map(|v| v.abs()).max().unwrap_or(0));
        }
        (k, l)
    }

    /// Translation by `(p0, q0)`: `p Λ' q` iff `p - p0 Λ q - q0`.
    pub fn translate(&self, p0: &IntegerVector, q0: &IntegerVector) -> Result<Self> {
        if p0.ground != self.domain || q0.ground != self.codomain {
            return Err(Error::GroundMismatch(
                "translation vectors must match the interface".into(),
            ));
        }
        let pairs = self
            .pairs
            .iter()
            .map(|(p, q)| {
                (
                    p.iter().zip(&p0.values).map(|(a, b)| a + b).collect(),
                    q.iter().zip(&q0.values).map(|(a, b)| a + b).collect(),
                )
            })
            .collect();
        // translation preserves M-convexity, revalidated cheaply
        Self::from_raw(self.domain.clone(), self.codomain.clone(), pairs)
    }

    /// The truncation `Λ(k, l)`: keeps pairs with `‖p‖∞ ≤ k`, `‖q‖∞ ≤ l`.
    pub fn truncate(&self, k: i64, l: i64) -> Result<Self> {
        let pairs = self
            .pairs
            .iter()
            .filter(|(p, q)| {
                p.iter().all(|v| v.abs() <= k) && q.iter().all(|v| v.abs() <= l)
            })
            .cloned()
            .collect();
        Self::from_raw(self.domain.clone(), self.codomain.clone(), pairs)
    }
}

/// The skeleton of a block-symmetric relation: replaces each block by the
/// cardinality profile of the related pairs.  Blocks must partition the two
/// sides and the relation must be symmetric on each block.
pub fn skeleton(
    mu: &SubsetRelation,
    domain_blocks: &[crate::ground::Subset],
    codomain_blocks: &[crate::ground::Subset],
) -> Result<BoundedMConvexRelation> {
    check_partition(mu.domain(), domain_blocks)?;
    check_partition(mu.codomain(), codomain_blocks)?;
    for b in domain_blocks {
        if !crate::matroid_ops::is_symmetric(mu, crate::matroid_ops::Side::Domain, b)? {
            return Err(Error::SymmetryViolation(format!("{:?}", b)));
        }
    }
    for b in codomain_blocks {
        if !crate::matroid_ops::is_symmetric(mu, crate::matroid_ops::Side::Codomain, b)? {
            return Err(Error::SymmetryViolation(format!("{:?}", b)));
        }
    }
    let dom = index_ground(domain_blocks.len())?;
    let cod = index_ground(codomain_blocks.len())?;
    let pairs = mu
        .mask_pairs()
        .iter()
        .map(|&(x, y)| {
            (
                domain_blocks
                    .iter()
                    .map(|b| (x & b.mask()).count_ones() as i64)
                    .collect::<Vec<_>>(),
                codomain_blocks
                    .iter()
                    .map(|b| (y & b.mask()).count_ones() as i64)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    BoundedMConvexRelation::from_raw(dom, cod, pairs)
}

fn index_ground(n: usize) -> Result<GroundSet> {
    GroundSet::new((1..=n).map(|i| i.to_string()))
}

fn check_partition(ground: &GroundSet, blocks: &[crate::ground::Subset]) -> Result<()> {
    let mut seen = 0u64;
    for b in blocks {
        if b.ground() != ground {
            return Err(Error::GroundMismatch(
                "blocks must be subsets of the relation side".into(),
            ));
        }
        if seen & b.mask() != 0 {
            return Err(Error::OverlappingSets(format!("{:?}", b)));
        }
        seen |= b.mask();
    }
    if seen != ground.full_mask() {
        return Err(Error::InvalidParameter(
            "blocks must cover the whole side".into(),
        ));
    }
    Ok(())
}

/// Encodes a subset relation by characteristic vectors: `(X, Y)` becomes
/// `(ψ_X, ψ_Y)`.  Exchange relations encode to M-convex relations.
pub fn encode_relation(rel: &SubsetRelation) -> Result<BoundedMConvexRelation> {
    let pairs = rel
        .mask_pairs()
        .iter()
        .map(|&(x, y)| {
            (
                (0..rel.domain().len()).map(|i| (x >> i & 1) as i64).collect(),
                (0..rel.codomain().len()).map(|i| (y >> i & 1) as i64).collect(),
            )
        })
        .collect();
    BoundedMConvexRelation::from_raw(rel.domain().clone(), rel.codomain().clone(), pairs)
}

/// Lax composition of bounded M-convex relations: the minimal-`‖q - q'‖₁`
/// level, together with the type `(‖(q-q')⁺‖₁, ‖(q-q')⁻‖₁)` common to all
/// minimal witnesses (asserted).
pub fn compose_mconvex(
    lambda: &BoundedMConvexRelation,
    theta: &BoundedMConvexRelation,
) -> Result<(BoundedMConvexRelation, CompositionType)> {
    if lambda.is_zero() || theta.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    if !lambda.codomain.same_elements(&theta.domain) {
        return Err(Error::InterfaceMismatch {
            expected: format!("{:?}", lambda.codomain),
            found: format!("{:?}", theta.domain),
        });
    }
    let perm = theta
        .domain
        .permutation_to(&lambda.codomain)
        .expect("same labels");
    let reorder = |q: &[i64]| -> Vec<i64> {
        let mut out = vec![0; q.len()];
        for (i, &v) in q.iter().enumerate() {
            out[perm[i]] = v;
        }
        out
    };

    let mut best: Option<i64> = None;
    for (_, qp) in &lambda.pairs {
        for (q, _) in &theta.pairs {
            let q = reorder(q);
            let m: i64 = q.iter().zip(qp).map(|(a, b)| (a - b).abs()).sum();
            best = Some(match best {
                None => m,
                Some(b) => b.min(m),
            });
        }
    }
    let m0 = best.expect("nonzero relations have witnesses");

    let mut kind: Option<CompositionType> = None;
    let mut pairs = BTreeSet::new();
    for (p, qp) in &lambda.pairs {
        for (q, r) in &theta.pairs {
            let q = reorder(q);
            let diff: Vec<i64> = q.iter().zip(qp).map(|(a, b)| a - b).collect();
            let m: i64 = diff.iter().map(|d| d.abs()).sum();
            if m != m0 {
                continue;
            }
            let k: i64 = diff.iter().filter(|&&d| d > 0).sum();
            let l: i64 = -diff.iter().filter(|&&d| d < 0).sum::<i64>();
            let this = CompositionType::new(k as u32, l as u32);
            match kind {
                None => kind = Some(this),
                Some(prev) => assert_eq!(
                    prev, this,
                    "type law violated: two minimal witnesses with different signs"
                ),
            }
            pairs.insert((p.clone(), r.clone()));
        }
    }
    let rel = BoundedMConvexRelation::from_raw(
        lambda.domain.clone(),
        theta.codomain.clone(),
        pairs,
    )?;
    Ok((rel, kind.expect("minimal level is nonempty")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    fn vecs(ground: &GroundSet, rows: &[&[i64]]) -> Vec<IntegerVector> {
        rows.iter()
            .map(|r| IntegerVector::new(ground.clone(), r.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn matroid_bases_are_mconvex() {
        let m = Matroid::from_labels(g(&["a", "b", "c"]), [["a", "b"], ["a", "c"], ["b", "c"]])
            .unwrap();
        let ground = m.ground().clone();
        let vectors: Vec<IntegerVector> = m
            .bases()
            .map(|b| {
                IntegerVector::new(
                    ground.clone(),
                    (0..ground.len()).map(|i| (b.mask() >> i & 1) as i64).collect(),
                )
                .unwrap()
            })
            .collect();
        assert!(is_mconvex(&vectors).unwrap());
    }

    #[test]
    fn singleton_is_mconvex() {
        let ground = g(&["a", "b"]);
        assert!(is_mconvex(&vecs(&ground, &[&[3, -1]])).unwrap());
    }

    #[test]
    fn diagonal_pair_is_not_mconvex() {
        let ground = g(&["a", "b"]);
        assert!(!is_mconvex(&vecs(&ground, &[&[0, 0], &[1, 1]])).unwrap());
    }

    #[test]
    fn skeleton_of_uniform_relation() {
        let a = g(&["a", "b"]);
        let b = g(&["x", "y", "z"]);
        let u = SubsetRelation::uniform(1, &a, &b).unwrap();
        let sk = skeleton(&u, &[a.full_subset()], &[b.full_subset()]).unwrap();
        // profiles {(s, s+1) : 0 <= s <= 2}
        assert_eq!(sk.num_pairs(), 3);
        for (p, q) in sk.pairs() {
            assert_eq!(q.values()[0] - p.values()[0], 1);
        }
    }

    #[test]
    fn skeleton_of_identity_is_diagonal() {
        let a = g(&["a", "b"]);
        let id = SubsetRelation::identity(&a).unwrap();
        let sk = skeleton(&id, &[a.full_subset()], &[a.full_subset()]).unwrap();
        assert_eq!(sk.num_pairs(), 3);
        for (p, q) in sk.pairs() {
            assert_eq!(p.values(), q.values());
        }
    }

    #[test]
    fn skeleton_rejects_asymmetric_blocks() {
        let a = g(&["a", "b"]);
        let b = g(&["x"]);
        let e = SubsetRelation::elementary(&a.subset(["a"]).unwrap(), &b.empty_subset()).unwrap();
        assert!(matches!(
            skeleton(&e, &[a.full_subset()], &[b.full_subset()]),
            Err(Error::SymmetryViolation(_))
        ));
    }

    #[test]
    fn empty_blocks_give_zero_profile() {
        let empty = GroundSet::empty();
        let rel = SubsetRelation::identity(&empty).unwrap();
        let sk = skeleton(&rel, &[empty.empty_subset()], &[empty.empty_subset()]).unwrap();
        assert_eq!(sk.num_pairs(), 1);
        let (p, q) = sk.pairs().next().unwrap();
        assert_eq!(p.values(), &[0]);
        assert_eq!(q.values(), &[0]);
    }

    #[test]
    fn translate_roundtrip() {
        let a = g(&["a"]);
        let b = g(&["x"]);
        let rel = encode_relation(&SubsetRelation::uniform(0, &a, &b).unwrap()).unwrap();
        let p0 = IntegerVector::new(a.clone(), vec![2]).unwrap();
        let q0 = IntegerVector::new(b.clone(), vec![-1]).unwrap();
        let moved = rel.translate(&p0, &q0).unwrap();
        let zero_p = IntegerVector::zero(a.clone());
        let zero_q = IntegerVector::zero(b.clone());
        assert_eq!(rel.translate(&zero_p, &zero_q).unwrap(), rel);
        let back = moved
            .translate(
                &IntegerVector::new(a, vec![-2]).unwrap(),
                &IntegerVector::new(b, vec![1]).unwrap(),
            )
            .unwrap();
        assert_eq!(back, rel);
    }

    #[test]
    fn compose_strict_case_matches_relations() {
        let a = g(&["a"]);
        let b = g(&["x", "y"]);
        let c = g(&["u"]);
        let lam = SubsetRelation::uniform(1, &a, &b).unwrap();
        let mu = SubsetRelation::uniform(-1, &b, &c).unwrap();
        let (composed, kind) = compose_mconvex(
            &encode_relation(&lam).unwrap(),
            &encode_relation(&mu).unwrap(),
        )
        .unwrap();
        assert_eq!(kind, CompositionType::new(0, 0));
        let strict = crate::compose::compose_strict(&lam, &mu).unwrap();
        assert_eq!(composed, encode_relation(&strict).unwrap());
    }

    #[test]
    fn loop_contraction_type_lifts_to_vectors() {
        // {∅} on {e} composed with χ^e: type (1,0)
        let e = g(&["e"]);
        let loopm = SubsetRelation::new(
            GroundSet::empty(),
            e.clone(),
            vec![(GroundSet::empty().empty_subset(), e.empty_subset())],
        )
        .unwrap();
        let chi = SubsetRelation::uniform(-1, &e, &GroundSet::empty()).unwrap();
        let (out, kind) = compose_mconvex(
            &encode_relation(&loopm).unwrap(),
            &encode_relation(&chi).unwrap(),
        )
        .unwrap();
        assert_eq!(kind, CompositionType::new(1, 0));
        assert_eq!(out.num_pairs(), 1);
    }

    #[test]
    fn truncation_within_bounds_is_mconvex() {
        let a = g(&["a", "b"]);
        let rel = encode_relation(&SubsetRelation::covering(&a).unwrap()).unwrap();
        let (k, l) = rel.bounds();
        for kk in 0..=k {
            for ll in 0..=l {
                assert!(rel.truncate(kk, ll).is_ok());
            }
        }
    }
}
