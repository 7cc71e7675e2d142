//! Strict, lax, and multifold composition of subset relations.
//!
//! Strict composition is ordinary relational composition and can vanish.
//! Lax composition relaxes the middle match: `λ •_{k,l} μ` relates `X` to `Z`
//! when there are middle sets `Y', Y` with `X λ Y'`, `Y μ Z`, `|Y \ Y'| = k`
//! and `|Y' \ Y| = l`.  The lax composite is the level of minimal total
//! `k + l`; on nonzero exchange relations that minimal level is attained at a
//! unique `(k, l)` (the type), is itself a nonzero exchange relation, and the
//! whole operation is associative with types additive under association.
//! Those facts are theorems; this module asserts them where it relies on
//! them, and the test suites verify them wholesale.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::relation::{CompositionType, SubsetRelation};

/// Strict or lax evaluation, for the operations that support both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Lax,
}

/// A nonzero lax composite together with its type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxResult {
    pub relation: SubsetRelation,
    pub kind: CompositionType,
}

impl LaxResult {
    pub fn total_type(&self) -> u32 {
        self.kind.total()
    }
}

/// Relational composition: `X` related to `Z` iff some middle `Y` matches.
///
/// The codomain of `lambda` and the domain of `mu` must carry the same
/// labels; differing canonical orders are permuted away.
pub fn compose_strict(lambda: &SubsetRelation, mu: &SubsetRelation) -> Result<SubsetRelation> {
    let mu = align_middle(lambda, mu)?;
    let index = mu.by_domain();
    let mut pairs = BTreeSet::new();
    for &(x, y) in lambda.mask_pairs() {
        if let Some(zs) = index.get(&y) {
            for &z in zs {
                pairs.insert((x, z));
            }
        }
    }
    SubsetRelation::from_masks(lambda.domain().clone(), mu.codomain().clone(), pairs)
}

/// The level relation `λ •_{k,l} μ`.
pub fn bullet_level(
    lambda: &SubsetRelation,
    mu: &SubsetRelation,
    k: u32,
    l: u32,
) -> Result<SubsetRelation> {
    let mu = align_middle(lambda, mu)?;
    let mut pairs = BTreeSet::new();
    for &(x, yp) in lambda.mask_pairs() {
        for &(y, z) in mu.mask_pairs() {
            if (y & !yp).count_ones() == k && (yp & !y).count_ones() == l {
                pairs.insert((x, z));
            }
        }
    }
    SubsetRelation::from_masks(lambda.domain().clone(), mu.codomain().clone(), pairs)
}

/// Lax composition `λ • μ` of nonzero exchange relations.
///
/// Scans total mismatch `m = 0, 1, 2, …` and, within the minimal nonzero
/// level, asserts that exactly one `(k, l)` is realized.  That uniqueness is
/// a theorem for exchange relations, so its failure is a defect, not an
/// input error.
pub fn compose_lax(lambda: &SubsetRelation, mu: &SubsetRelation) -> Result<LaxResult> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    if !lambda.exchange_check() || !mu.exchange_check() {
        return Err(Error::NotExchange(
            "lax composition is defined on exchange relations".into(),
        ));
    }
    compose_lax_unchecked(lambda, mu)
}

pub(crate) fn compose_lax_unchecked(
    lambda: &SubsetRelation,
    mu: &SubsetRelation,
) -> Result<LaxResult> {
    let mu = align_middle(lambda, mu)?;
    let bound = 2 * lambda.codomain().len() as u32;
    for m in 0..=bound {
        let mut found: Option<LaxResult> = None;
        for k in 0..=m {
            let level = bullet_level(lambda, &mu, k, m - k)?;
            if !level.is_zero() {
                assert!(
                    found.is_none(),
                    "definite type violated at total {m}: levels ({},{}) and ({k},{}) both nonzero",
                    found.as_ref().unwrap().kind.k,
                    found.as_ref().unwrap().kind.l,
                    m - k,
                );
                found = Some(LaxResult {
                    relation: level,
                    kind: CompositionType::new(k, m - k),
                });
            }
        }
        if let Some(result) = found {
            return Ok(result);
        }
    }
    unreachable!("nonzero relations always meet at some finite mismatch")
}

/// One covering (`Up`) or co-covering (`Down`) factor of `η^{k,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverStep {
    Up,
    Down,
}

/// A strict composition of covering and co-covering relations on `e`, with
/// the factors in the given order.
pub fn covering_composite(e: &GroundSet, steps: &[CoverStep]) -> Result<SubsetRelation> {
    let eta = SubsetRelation::covering(e)?;
    let eta_dag = eta.adjoint();
    let mut acc = SubsetRelation::identity(e)?;
    for step in steps {
        acc = match step {
            CoverStep::Up => compose_strict(&acc, &eta)?,
            CoverStep::Down => compose_strict(&acc, &eta_dag)?,
        };
    }
    Ok(acc)
}

/// `η^{k,l}` in the canonical order: `k` covering factors, then `l`
/// co-covering factors.
pub fn eta_composite(e: &GroundSet, k: u32, l: u32) -> Result<SubsetRelation> {
    let mut steps = vec![CoverStep::Up; k as usize];
    steps.extend(std::iter::repeat(CoverStep::Down).take(l as usize));
    covering_composite(e, &steps)
}

/// The evaluation morphism on `(A ⊗ A, ∅)`: `(X, Y)` related to `∅` iff
/// `X = Ȳ` across the two copies.
pub fn evaluation(a: &GroundSet) -> Result<SubsetRelation> {
    let domain = a.disjoint_union(a)?;
    let n = a.len();
    let full = a.full_mask();
    let pairs = a
        .all_masks()
        .map(|x| (x | ((!x & full) << n), 0u64))
        .collect();
    SubsetRelation::from_masks(domain, GroundSet::empty(), pairs)
}

/// The coevaluation morphism, adjoint to [`evaluation`].
pub fn coevaluation(a: &GroundSet) -> Result<SubsetRelation> {
    Ok(evaluation(a)?.adjoint())
}

/// Finds disjoint `K, L ⊆ B` of sizes given by the type of `λ • μ` with
/// `λ ∘ ι_{K,L} ∘ μ = λ • μ`.
///
/// Witnesses are searched in lexicographic mask order and the first is
/// returned; the structure theorem guarantees existence and makes every
/// witness produce the same composite.
pub fn structure_factor(
    lambda: &SubsetRelation,
    mu: &SubsetRelation,
) -> Result<(Subset, Subset)> {
    let lax = compose_lax(lambda, mu)?;
    let b = lambda.codomain().clone();
    let (k, l) = (lax.kind.k, lax.kind.l);
    for km in b.all_masks() {
        if km.count_ones() != k {
            continue;
        }
        for lm in b.all_masks() {
            if lm.count_ones() != l || km & lm != 0 {
                continue;
            }
            let iota = SubsetRelation::partial_identity(
                &b,
                &b.subset_from_mask(km)?,
                &b.subset_from_mask(lm)?,
            )?;
            let composite = compose_strict(&compose_strict(lambda, &iota)?, mu)?;
            if !composite.is_zero() {
                assert_eq!(
                    composite, lax.relation,
                    "structure theorem witness disagrees with the lax composite"
                );
                return Ok((b.subset_from_mask(km)?, b.subset_from_mask(lm)?));
            }
        }
    }
    unreachable!("structure theorem guarantees a witness")
}

/// Checks the converse clause of the structure theorem: every disjoint
/// `(K, L)` of the right sizes whose composite is nonzero reproduces
/// `λ • μ` exactly.  Returns the number of witnesses.
pub fn verify_structure_converse(
    lambda: &SubsetRelation,
    mu: &SubsetRelation,
) -> Result<usize> {
    let lax = compose_lax(lambda, mu)?;
    let b = lambda.codomain().clone();
    let (k, l) = (lax.kind.k, lax.kind.l);
    let mut witnesses = 0;
    for km in b.all_masks() {
        if km.count_ones() != k {
            continue;
        }
        for lm in b.all_masks() {
            if lm.count_ones() != l || km & lm != 0 {
                continue;
            }
            let iota = SubsetRelation::partial_identity(
                &b,
                &b.subset_from_mask(km)?,
                &b.subset_from_mask(lm)?,
            )?;
            let composite = compose_strict(&compose_strict(lambda, &iota)?, mu)?;
            if !composite.is_zero() {
                if composite != lax.relation {
                    return Err(Error::NotExchange(format!(
                        "structure converse fails at K={km:#x}, L={lm:#x}"
                    )));
                }
                witnesses += 1;
            }
        }
    }
    Ok(witnesses)
}

/// A chain of ground sets `E_0, …, E_{m+1}` with morphisms
/// `μ_i : E_i \ E_{i+1} → E_{i+1} \ E_i`; the overlaps `E_i ∩ E_{i+1}` are
/// carried by identity wires.
#[derive(Debug, Clone)]
pub struct MultifoldPlan {
    grounds: Vec<GroundSet>,
    morphisms: Vec<SubsetRelation>,
}

impl MultifoldPlan {
    pub fn new(grounds: Vec<GroundSet>, morphisms: Vec<SubsetRelation>) -> Result<Self> {
        if grounds.len() != morphisms.len() + 1 || morphisms.is_empty() {
            return Err(Error::ShapeViolation(format!(
                "{} ground sets for {} morphisms",
                grounds.len(),
                morphisms.len()
            )));
        }
        for (i, m) in morphisms.iter().enumerate() {
            let expect_dom = grounds[i].difference(&grounds[i + 1]);
            let expect_cod = grounds[i + 1].difference(&grounds[i]);
            if !m.domain().same_elements(&expect_dom) {
                return Err(Error::ShapeViolation(format!(
                    "stage {i}: domain {:?} should be {:?}",
                    m.domain(),
                    expect_dom
                )));
            }
            if !m.codomain().same_elements(&expect_cod) {
                return Err(Error::ShapeViolation(format!(
                    "stage {i}: codomain {:?} should be {:?}",
                    m.codomain(),
                    expect_cod
                )));
            }
        }
        Ok(MultifoldPlan { grounds, morphisms })
    }

    pub fn stages(&self) -> usize {
        self.morphisms.len()
    }

    /// `μ̂_i = μ_i ⊗ 1_{E_i ∩ E_{i+1}}`, reindexed onto `(E_i, E_{i+1})`.
    pub fn extended_stage(&self, i: usize) -> Result<SubsetRelation> {
        let overlap = self.grounds[i].intersection(&self.grounds[i + 1]);
        let overlap_id = SubsetRelation::identity(&overlap)?;
        let hat = self.morphisms[i].tensor(&overlap_id)?;
        hat.reindexed(&self.grounds[i], &self.grounds[i + 1])
    }
}

/// The left-to-right fold `Π(μ_0, …, μ_m)`.
///
/// In strict mode the result may be zero and the reported type is `(0,0)`.
/// In lax mode the per-stage types accumulate into the type of the whole
/// composition.
pub fn multifold(plan: &MultifoldPlan, mode: Mode) -> Result<(SubsetRelation, CompositionType)> {
    let mut acc = plan.extended_stage(0)?;
    let mut kind = CompositionType::new(0, 0);
    for i in 1..=plan.stages() - 1 {
        let stage = plan.extended_stage(i)?;
        match mode {
            Mode::Strict => {
                acc = compose_strict(&acc, &stage)?;
            }
            Mode::Lax => {
                let r = compose_lax(&acc, &stage)?;
                kind = kind.plus(&r.kind);
                acc = r.relation;
            }
        }
    }
    Ok((acc, kind))
}

/// Finds per-stage partial identities `ι_{K_i, L_i}` on `E_i \ E_{i+1}`
/// turning the strict fold into the lax fold, and returns the `(K_i, L_i)`.
pub fn multifold_structure(plan: &MultifoldPlan) -> Result<Vec<(Subset, Subset)>> {
    let (target, _) = multifold(plan, Mode::Lax)?;
    let mut witnesses = vec![];
    let mut acc = plan.extended_stage(0)?;
    for i in 1..=plan.stages() - 1 {
        let stage = plan.extended_stage(i)?;
        let lax = compose_lax(&acc, &stage)?;
        let b = plan.morphisms[i].domain().clone();
        let (k, l) = (lax.kind.k, lax.kind.l);
        let mut found = None;
        'search: for km in b.all_masks() {
            if km.count_ones() != k {
                continue;
            }
            for lm in b.all_masks() {
                if lm.count_ones() != l || km & lm != 0 {
                    continue;
                }
                let iota = SubsetRelation::partial_identity(
                    &b,
                    &b.subset_from_mask(km)?,
                    &b.subset_from_mask(lm)?,
                )?;
                let patched = compose_strict(&iota, &plan.morphisms[i])?;
                let overlap = plan.grounds[i].intersection(&plan.grounds[i + 1]);
                let hat = patched
                    .tensor(&SubsetRelation::identity(&overlap)?)?
                    .reindexed(&plan.grounds[i], &plan.grounds[i + 1])?;
                if compose_strict(&acc, &hat)? == lax.relation {
                    found = Some((b.subset_from_mask(km)?, b.subset_from_mask(lm)?));
                    break 'search;
                }
            }
        }
        let w = found.expect("multifold structure theorem guarantees a witness");
        witnesses.push(w);
        acc = lax.relation;
    }
    assert_eq!(acc, target, "stagewise factorization must hit the lax fold");
    Ok(witnesses)
}

/// The covariant hom action: sends `μ : S → A` to `μ ∘ λ` (or `μ • λ`).
pub fn hom_apply(mu: &SubsetRelation, lambda: &SubsetRelation, mode: Mode) -> Result<SubsetRelation> {
    match mode {
        Mode::Strict => compose_strict(mu, lambda),
        Mode::Lax => Ok(compose_lax(mu, lambda)?.relation),
    }
}

/// Base change along `κ : S → T`: sends `μ : S → A` to `κ̄† ∘ μ` (or the
/// lax analogue).
pub fn base_change(kappa: &SubsetRelation, mu: &SubsetRelation, mode: Mode) -> Result<SubsetRelation> {
    let lead = kappa.complement().adjoint();
    match mode {
        Mode::Strict => compose_strict(&lead, mu),
        Mode::Lax => Ok(compose_lax(&lead, mu)?.relation),
    }
}

/// The monoid morphism `ρ_S : S ⊗ S → S`, `(X, Y) ↦ Z` iff `X ∪ Y = S` and
/// `X ∩ Y = Z`.
pub fn rho(s: &GroundSet) -> Result<SubsetRelation> {
    let domain = s.disjoint_union(s)?;
    let n = s.len();
    let full = s.full_mask();
    let mut pairs = BTreeSet::new();
    for x in s.all_masks() {
        for y in s.all_masks() {
            if x | y == full {
                pairs.insert((x | y << n, x & y));
            }
        }
    }
    SubsetRelation::from_masks(domain, s.clone(), pairs)
}

/// Which monoidal structure over the common domain `S` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SVariant {
    /// `⊗_S`, built from `ρ_S`; degrees add.
    Meet,
    /// `⊗̄_S`, built from `ρ̄_S`; degrees add minus `|S|`.
    Join,
}

/// Tensor over a common base: both morphisms must have domain `S`.
pub fn tensor_over_s(
    mu: &SubsetRelation,
    nu: &SubsetRelation,
    s: &GroundSet,
    variant: SVariant,
) -> Result<SubsetRelation> {
    if !mu.domain().same_elements(s) || !nu.domain().same_elements(s) {
        return Err(Error::GroundMismatch(
            "tensor over S requires both domains to be S".into(),
        ));
    }
    match variant {
        SVariant::Meet => {
            let lead = rho(s)?.complement().adjoint();
            compose_strict(&lead, &mu.tensor(nu)?)
        }
        SVariant::Join => {
            let meet = tensor_over_s(&mu.complement(), &nu.complement(), s, SVariant::Meet)?;
            Ok(meet.complement())
        }
    }
}

fn align_middle(lambda: &SubsetRelation, mu: &SubsetRelation) -> Result<SubsetRelation> {
    if lambda.codomain() == mu.domain() {
        return Ok(mu.clone());
    }
    if !lambda.codomain().same_elements(mu.domain()) {
        return Err(Error::InterfaceMismatch {
            expected: format!("{:?}", lambda.codomain()),
            found: format!("{:?}", mu.domain()),
        });
    }
    mu.reindexed(lambda.codomain(), mu.codomain())
}
