//! The semiring-weighted composition `★` and the Tutte polynomial.
//!
//! Morphisms here are formal linear combinations of nonzero exchange
//! relations over a commutative semiring `R` with distinguished elements
//! `x, y`.  Composition multiplies coefficients by `x^k y^l` where `(k, l)`
//! is the type of the underlying lax composition:
//! with `x = y = 1` over the Boolean semiring this is lax composition, with
//! `x = y = 0` it degenerates to strict composition (positive-type terms get
//! coefficient zero and are dropped), and over `Z[x, y]` with the pair
//! `(x-1, y-1)` it computes the Tutte polynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::compose::{coevaluation, compose_lax, evaluation};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matroid::Matroid;
use crate::relation::{matroid_as_morphism, SubsetRelation};

/// A commutative semiring.  Laws are spot-tested, not enforced.
pub trait Semiring {
    type Elem: Clone + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a);
        }
        out
    }
}

/// The Boolean semiring `({0,1}, ∨, ∧)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoolSemiring;

impl Semiring for BoolSemiring {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
}

/// An integer polynomial in two variables, stored as a sorted map from
/// `(x-power, y-power)` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn monomial(i: u32, j: u32, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((i, j), c);
        }
        BivariatePolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, &c) in &other.terms {
            let e = terms.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                terms.remove(&k);
            }
        }
        BivariatePolynomial { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                let k = (i1 + i2, j1 + j2);
                let e = terms.entry(k).or_insert(0);
                *e += c1 * c2;
                if *e == 0 {
                    terms.remove(&k);
                }
            }
        }
        BivariatePolynomial { terms }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `(x-power, y-power, coefficient)` triples, sorted by powers.
    pub fn coefficients(&self) -> Vec<(u32, u32, i64)> {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c)).collect()
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * x.pow(i) * y.pow(j))
            .sum()
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Canonical text form: terms sorted by descending `(x, y)` powers,
    /// joined by ` + `; unit coefficients and zero powers are suppressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut printed = false;
            if c != 1 || (i, j) == (0, 0) {
                write!(f, "{c}")?;
                printed = true;
            }
            if i > 0 {
                if printed {
                    write!(f, " ")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
                printed = true;
            }
            if j > 0 {
                if printed {
                    write!(f, " ")?;
                }
                if j == 1 {
                    write!(f, "y")?;
                } else {
                    write!(f, "y^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The semiring of integer bivariate polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PolySemiring;

impl Semiring for PolySemiring {
    type Elem = BivariatePolynomial;

    fn zero(&self) -> BivariatePolynomial {
        BivariatePolynomial::zero()
    }

    fn one(&self) -> BivariatePolynomial {
        BivariatePolynomial::constant(1)
    }

    fn add(&self, a: &BivariatePolynomial, b: &BivariatePolynomial) -> BivariatePolynomial {
        a.add(b)
    }

    fn mul(&self, a: &BivariatePolynomial, b: &BivariatePolynomial) -> BivariatePolynomial {
        a.mul(b)
    }
}

/// A semiring together with the distinguished pair `(x, y)` weighting the
/// lax-composition types.
#[derive(Debug, Clone)]
pub struct StarContext<R: Semiring> {
    pub ring: R,
    pub x: R::Elem,
    pub y: R::Elem,
}

impl StarContext<BoolSemiring> {
    /// Boolean semiring with `x = y = 0`: recovers strict composition.
    pub fn boolean00() -> Self {
        StarContext {
            ring: BoolSemiring,
            x: false,
            y: false,
        }
    }

    /// Boolean semiring with `x = y = 1`: recovers lax composition.
    pub fn boolean11() -> Self {
        StarContext {
            ring: BoolSemiring,
            x: true,
            y: true,
        }
    }
}

impl StarContext<PolySemiring> {
    /// `Z[x,y]` with the variables themselves as the distinguished pair.
    pub fn polynomial() -> Self {
        StarContext {
            ring: PolySemiring,
            x: BivariatePolynomial::x(),
            y: BivariatePolynomial::y(),
        }
    }

    /// `Z[x,y]` with the pair `(x-1, y-1)`: the Tutte specialization.
    pub fn tutte() -> Self {
        StarContext {
            ring: PolySemiring,
            x: BivariatePolynomial::x().add(&BivariatePolynomial::constant(-1)),
            y: BivariatePolynomial::y().add(&BivariatePolynomial::constant(-1)),
        }
    }
}

/// A formal linear combination of nonzero exchange relations with a common
/// interface.  The empty combination is the zero morphism.
pub struct WeightedMorphism<R: Semiring> {
    domain: GroundSet,
    codomain: GroundSet,
    terms: BTreeMap<SubsetRelation, R::Elem>,
}

impl<R: Semiring> Clone for WeightedMorphism<R> {
    fn clone(&self) -> Self {
        WeightedMorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<R: Semiring> PartialEq for WeightedMorphism<R> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.terms == other.terms
    }
}

impl<R: Semiring> Eq for WeightedMorphism<R> {}

impl<R: Semiring> WeightedMorphism<R> {
    pub fn zero(domain: GroundSet, codomain: GroundSet) -> Self {
        WeightedMorphism {
            domain,
            codomain,
            terms: BTreeMap::new(),
        }
    }

    /// A single-term combination.  The relation must be a nonzero exchange
    /// relation; a zero coefficient yields the zero morphism.
    pub fn single(ctx: &StarContext<R>, relation: SubsetRelation, coeff: R::Elem) -> Result<Self> {
        if relation.is_zero() {
            return Err(Error::ZeroMorphism);
        }
        if !relation.exchange_check() {
            return Err(Error::NotExchange(
                "weighted terms must be exchange relations".into(),
            ));
        }
        let mut out = WeightedMorphism::zero(relation.domain().clone(), relation.codomain().clone());
        if !ctx.ring.is_zero(&coeff) {
            out.terms.insert(relation, coeff);
        }
        Ok(out)
    }

    /// Sums combinations termwise.
    pub fn plus(&self, ctx: &StarContext<R>, other: &Self) -> Result<Self> {
        if !self.domain.same_elements(&other.domain)
            || !self.codomain.same_elements(&other.codomain)
        {
            return Err(Error::InterfaceMismatch {
                expected: format!("{:?} -> {:?}", self.domain, self.codomain),
                found: format!("{:?} -> {:?}", other.domain, other.codomain),
            });
        }
        let mut out = self.clone();
        for (rel, c) in &other.terms {
            let rel = rel.reindexed(&self.domain, &self.codomain)?;
            out.accumulate(ctx, rel, c.clone());
        }
        Ok(out)
    }

    fn accumulate(&mut self, ctx: &StarContext<R>, rel: SubsetRelation, coeff: R::Elem) {
        if ctx.ring.is_zero(&coeff) {
            return;
        }
        let entry = self.terms.remove(&rel);
        let total = match entry {
            None => coeff,
            Some(prev) => ctx.ring.add(&prev, &coeff),
        };
        if !ctx.ring.is_zero(&total) {
            self.terms.insert(rel, total);
        }
    }

    pub fn domain(&self) -> &GroundSet {
        &self.domain
    }

    pub fn codomain(&self) -> &GroundSet {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubsetRelation, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, rel: &SubsetRelation) -> Option<&R::Elem> {
        self.terms.get(rel)
    }
}

impl<R: Semiring> fmt::Debug for WeightedMorphism<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WeightedMorphism({:?} -> {:?}, {} terms)",
            self.domain,
            self.codomain,
            self.terms.len()
        )
    }
}

/// `★`-composition: bilinear expansion with per-term lax composition, the
/// coefficient picking up `x^k y^l` for the type `(k, l)`.
pub fn star_compose<R: Semiring>(
    ctx: &StarContext<R>,
    a: &WeightedMorphism<R>,
    b: &WeightedMorphism<R>,
) -> Result<WeightedMorphism<R>> {
    if !a.codomain.same_elements(&b.domain) {
        return Err(Error::InterfaceMismatch {
            expected: format!("{:?}", a.codomain),
            found: format!("{:?}", b.domain),
        });
    }
    let mut out = WeightedMorphism::zero(a.domain.clone(), b.codomain.clone());
    for (ra, ca) in &a.terms {
        for (rb, cb) in &b.terms {
            let lax = compose_lax(ra, rb)?;
            let weight = ctx.ring.mul(
                &ctx.ring.pow(&ctx.x, lax.kind.k),
                &ctx.ring.pow(&ctx.y, lax.kind.l),
            );
            let coeff = ctx.ring.mul(&ctx.ring.mul(ca, cb), &weight);
            out.accumulate(ctx, lax.relation.reindexed(&a.domain, &b.codomain)?, coeff);
        }
    }
    Ok(out)
}

/// Termwise tensor product with coefficient multiplication.
pub fn star_tensor<R: Semiring>(
    ctx: &StarContext<R>,
    a: &WeightedMorphism<R>,
    b: &WeightedMorphism<R>,
) -> Result<WeightedMorphism<R>> {
    let domain = a.domain.disjoint_union(&b.domain)?;
    let codomain = a.codomain.disjoint_union(&b.codomain)?;
    let mut out = WeightedMorphism::zero(domain, codomain);
    for (ra, ca) in &a.terms {
        for (rb, cb) in &b.terms {
            out.accumulate(ctx, ra.tensor(rb)?, ctx.ring.mul(ca, cb));
        }
    }
    Ok(out)
}

/// The trace of an endomorphism: `tr(λ) = ev† ★ (λ ⊗ 1_A) ★ ev`, read off
/// as the coefficient of the unique relation `∅ → ∅`.
pub fn trace<R: Semiring>(ctx: &StarContext<R>, a: &WeightedMorphism<R>) -> Result<R::Elem> {
    if !a.domain.same_elements(&a.codomain) {
        return Err(Error::InterfaceMismatch {
            expected: format!("{:?}", a.domain),
            found: format!("{:?}", a.codomain),
        });
    }
    let ground = &a.domain;
    let id = WeightedMorphism::single(ctx, SubsetRelation::identity(ground)?, ctx.ring.one())?;
    let coev = WeightedMorphism::single(ctx, coevaluation(ground)?, ctx.ring.one())?;
    let ev = WeightedMorphism::single(ctx, evaluation(ground)?, ctx.ring.one())?;
    let middle = star_tensor(ctx, a, &id)?;
    let out = star_compose(ctx, &star_compose(ctx, &coev, &middle)?, &ev)?;
    let unit = SubsetRelation::identity(&GroundSet::empty())?;
    Ok(out
        .coefficient_of(&unit)
        .cloned()
        .unwrap_or_else(|| ctx.ring.zero()))
}

/// The deletion summand `δ^e + χ^e` over a ground set, as a weighted
/// morphism with unit coefficients.
fn removal_sum(
    ctx: &StarContext<PolySemiring>,
    ground: &GroundSet,
    e: &str,
) -> Result<WeightedMorphism<PolySemiring>> {
    let delta = crate::matroid_ops::deletion_morphism(ground, e)?;
    let chi = crate::matroid_ops::contraction_morphism(ground, e)?;
    let d = WeightedMorphism::single(ctx, delta, ctx.ring.one())?;
    let c = WeightedMorphism::single(ctx, chi, ctx.ring.one())?;
    d.plus(ctx, &c)
}

/// The Tutte morphism `τ : E → ∅` over `Z[x,y]` with the pair `(x-1, y-1)`:
/// the sum of all elementary relations `e_{X,∅}`, which must agree with the
/// `★`-product of the factors `δ^{e_i} + χ^{e_i}` (asserted here).
pub fn tau(ground: &GroundSet) -> Result<WeightedMorphism<PolySemiring>> {
    let ctx = StarContext::tutte();
    let empty = GroundSet::empty();

    // Sum form: Σ_{X ⊆ E} e_{X,∅}.
    let mut sum = WeightedMorphism::zero(ground.clone(), empty.clone());
    for m in ground.all_masks() {
        let e = SubsetRelation::elementary(&ground.subset_from_mask(m)?, &empty.empty_subset())?;
        sum = sum.plus(&ctx, &WeightedMorphism::single(&ctx, e, ctx.ring.one())?)?;
    }

    // Product form: (δ^{e_1} + χ^{e_1}) ★ ... ★ (δ^{e_n} + χ^{e_n}).
    let mut product: Option<WeightedMorphism<PolySemiring>> = None;
    let mut current = ground.clone();
    for label in ground.labels().to_vec() {
        let factor = removal_sum(&ctx, &current, &label)?;
        current = current.difference(&GroundSet::new([label.clone()])?);
        product = Some(match product {
            None => factor,
            Some(p) => star_compose(&ctx, &p, &factor)?,
        });
    }
    let product = match product {
        None => WeightedMorphism::single(
            &ctx,
            SubsetRelation::identity(&empty)?,
            ctx.ring.one(),
        )?,
        Some(p) => p,
    };
    assert_eq!(
        sum, product,
        "the two expansions of the Tutte morphism must agree"
    );
    Ok(sum)
}

/// The Tutte polynomial of a nonzero matroid, computed by applying the
/// Tutte morphism: `τ_★(α; x-1, y-1)`.
pub fn tutte(alpha: &Matroid) -> Result<BivariatePolynomial> {
    if alpha.is_zero() {
        return Err(Error::ZeroMatroid);
    }
    let ctx = StarContext::tutte();
    let alpha_w = WeightedMorphism::single(&ctx, matroid_as_morphism(alpha)?, ctx.ring.one())?;
    let t = tau(alpha.ground())?;
    let out = star_compose(&ctx, &alpha_w, &t)?;
    let unit = SubsetRelation::identity(&GroundSet::empty())?;
    Ok(out
        .coefficient_of(&unit)
        .cloned()
        .unwrap_or_else(BivariatePolynomial::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn polynomial_display() {
        let p = BivariatePolynomial::x().add(&BivariatePolynomial::y());
        assert_eq!(p.to_string(), "x + y");
        let q = BivariatePolynomial::monomial(2, 1, 3).add(&BivariatePolynomial::constant(1));
        assert_eq!(q.to_string(), "3 x^2 y + 1");
        assert_eq!(BivariatePolynomial::zero().to_string(), "0");
    }

    #[test]
    fn boolean_star_matches_lax_and_strict() {
        let e = g(&["e"]);
        let free = SubsetRelation::new(
            GroundSet::empty(),
            e.clone(),
            vec![(GroundSet::empty().empty_subset(), e.subset(["e"]).unwrap())],
        )
        .unwrap();
        let delta = crate::matroid_ops::deletion_morphism(&e, "e").unwrap();

        // x = y = 1: the composition survives with coefficient one (lax).
        let lax_ctx = StarContext::boolean11();
        let a = WeightedMorphism::single(&lax_ctx, free.clone(), true).unwrap();
        let b = WeightedMorphism::single(&lax_ctx, delta.clone(), true).unwrap();
        let out = star_compose(&lax_ctx, &a, &b).unwrap();
        assert_eq!(out.num_terms(), 1);

        // x = y = 0: the positive-type term is killed (strict).
        let strict_ctx = StarContext::boolean00();
        let a = WeightedMorphism::single(&strict_ctx, free, true).unwrap();
        let b = WeightedMorphism::single(&strict_ctx, delta, true).unwrap();
        let out = star_compose(&strict_ctx, &a, &b).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn trace_of_empty_identity_is_one() {
        let ctx = StarContext::boolean00();
        let id = WeightedMorphism::single(
            &ctx,
            SubsetRelation::identity(&GroundSet::empty()).unwrap(),
            true,
        )
        .unwrap();
        assert!(trace(&ctx, &id).unwrap());
    }

    #[test]
    fn trace_of_identity_by_definition() {
        let ctx = StarContext::polynomial();
        let a = g(&["a", "b"]);
        let id = WeightedMorphism::single(
            &ctx,
            SubsetRelation::identity(&a).unwrap(),
            ctx.ring.one(),
        )
        .unwrap();
        // the snake composite is strict, so the trace is the unit coefficient
        assert_eq!(trace(&ctx, &id).unwrap(), BivariatePolynomial::constant(1));
    }

    #[test]
    fn tau_small_cases() {
        let t0 = tau(&GroundSet::empty()).unwrap();
        assert_eq!(t0.num_terms(), 1);
        let t1 = tau(&g(&["e"])).unwrap();
        assert_eq!(t1.num_terms(), 2);
        let t3 = tau(&g(&["a", "b", "c"])).unwrap();
        assert_eq!(t3.num_terms(), 8);
    }

    #[test]
    fn tutte_base_cases() {
        let single_loop = Matroid::from_labels(g(&["e"]), [Vec::<&str>::new()]).unwrap();
        assert_eq!(tutte(&single_loop).unwrap().to_string(), "x");
        let single_coloop = Matroid::from_labels(g(&["e"]), [["e"]]).unwrap();
        assert_eq!(tutte(&single_coloop).unwrap().to_string(), "y");
    }

    #[test]
    fn tutte_u12() {
        let m = Matroid::from_labels(g(&["a", "b"]), [["a"], ["b"]]).unwrap();
        assert_eq!(tutte(&m).unwrap().to_string(), "x + y");
    }

    #[test]
    fn tutte_rejects_zero() {
        assert_eq!(tutte(&Matroid::zero(g(&["a"]))).unwrap_err(), Error::ZeroMatroid);
    }

    #[test]
    fn tutte_subset_count_at_two_two() {
        // evaluating at (2,2) makes the weight of every subset term 1
        let m = Matroid::from_labels(g(&["a", "b", "c"]), [["a", "b"], ["a", "c"]]).unwrap();
        let t = tutte(&m).unwrap();
        assert_eq!(t.eval(2, 2), 1 << 3);
    }
}
