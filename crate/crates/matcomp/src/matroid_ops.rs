//! Classical matroid constructions expressed through the composition engine.
//!
//! Deletion and contraction of a point `e` are the hom actions of the
//! morphisms `δ^e = 1_{E-e} ⊗ u⁰_{{e},∅}` and `χ^e = 1_{E-e} ⊗ u^{-1}_{{e},∅}`.
//! Under strict composition these are the "strict" operations, which vanish
//! exactly on coloops and loops; under lax composition they reproduce the
//! classical two-case definitions and never vanish.  Minors, 2-sums,
//! parallel/series connections and symmetrization are all routed through the
//! same generic machinery rather than built ad hoc.

use crate::compose::{base_change, compose_strict, hom_apply, tensor_over_s, Mode, SVariant};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::matroid::Matroid;
use crate::relation::{matroid_as_morphism, morphism_as_matroid, SubsetRelation};

/// A matroid with a distinguished basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMatroid {
    matroid: Matroid,
    basepoint: String,
}

impl PointedMatroid {
    pub fn new(matroid: Matroid, basepoint: impl Into<String>) -> Result<Self> {
        let basepoint = basepoint.into();
        if !matroid.ground().contains(&basepoint) {
            return Err(Error::MissingPoint(basepoint));
        }
        Ok(PointedMatroid { matroid, basepoint })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn basepoint(&self) -> &str {
        &self.basepoint
    }

    /// The pointed matroid as a morphism `{z0} → E - z0`: the pair
    /// `({z0}, Y)` stands for a basis `Y` avoiding the basepoint and
    /// `(∅, Y)` for a basis `Y + z0`.
    pub fn as_morphism(&self) -> Result<SubsetRelation> {
        let ground = self.matroid.ground();
        let z = ground.position(&self.basepoint).expect("validated basepoint");
        let zbit = 1u64 << z;
        let rest_mask = ground.full_mask() & !zbit;
        let rest = ground.restrict(rest_mask);
        let zset = ground.restrict(zbit);
        let mut pairs = std::collections::BTreeSet::new();
        for &b in self.matroid.basis_masks() {
            let y = crate::relation::compress_mask(b & rest_mask, rest_mask);
            if b & zbit != 0 {
                pairs.insert((0u64, y));
            } else {
                pairs.insert((1u64, y));
            }
        }
        SubsetRelation::from_masks(zset, rest, pairs)
    }

    /// Rebuilds a pointed matroid from a morphism out of a singleton base.
    pub fn from_morphism(rel: &SubsetRelation) -> Result<Self> {
        if rel.domain().len() != 1 {
            return Err(Error::InvalidParameter(
                "pointed matroids come from morphisms out of a singleton".into(),
            ));
        }
        let basepoint = rel.domain().label(0).to_string();
        let matroid = rel.associated_matroid()?;
        PointedMatroid::new(matroid, basepoint)
    }

    /// Relabels the basepoint, keeping everything else.
    pub fn with_basepoint_renamed(&self, new: &str) -> Result<Self> {
        let m = self.matroid.relabel(&self.basepoint, new)?;
        PointedMatroid::new(m, new)
    }
}

/// The loops of a nonzero matroid: points in no basis.
pub fn loops(alpha: &Matroid) -> Result<Subset> {
    if alpha.is_zero() {
        return Err(Error::ZeroMatroid);
    }
    let mut union = 0u64;
    for &b in alpha.basis_masks() {
        union |= b;
    }
    alpha.ground().subset_from_mask(alpha.ground().full_mask() & !union)
}

/// The coloops of a nonzero matroid: points in every basis.
pub fn coloops(alpha: &Matroid) -> Result<Subset> {
    if alpha.is_zero() {
        return Err(Error::ZeroMatroid);
    }
    let mut inter = alpha.ground().full_mask();
    for &b in alpha.basis_masks() {
        inter &= b;
    }
    alpha.ground().subset_from_mask(inter)
}

/// The morphism `δ^e = 1_{E-e} ⊗ u⁰_{{e},∅} : E → E - e`.
pub fn deletion_morphism(ground: &GroundSet, e: &str) -> Result<SubsetRelation> {
    point_removal_morphism(ground, e, 0)
}

/// The morphism `χ^e = 1_{E-e} ⊗ u^{-1}_{{e},∅} : E → E - e`.
pub fn contraction_morphism(ground: &GroundSet, e: &str) -> Result<SubsetRelation> {
    point_removal_morphism(ground, e, -1)
}

fn point_removal_morphism(ground: &GroundSet, e: &str, k: i64) -> Result<SubsetRelation> {
    let pos = ground
        .position(e)
        .ok_or_else(|| Error::MissingPoint(e.to_string()))?;
    let ebit = 1u64 << pos;
    let rest = ground.restrict(ground.full_mask() & !ebit);
    let eset = ground.restrict(ebit);
    let id = SubsetRelation::identity(&rest)?;
    let u = SubsetRelation::uniform(k, &eset, &GroundSet::empty())?;
    let tensored = id.tensor(&u)?;
    tensored.reindexed(ground, &rest)
}

/// Deletes the point `e`.
///
/// Strict mode is the relation-theoretic operation and returns the zero
/// matroid exactly when `e` is a coloop; lax mode is classical deletion and
/// requires a nonzero input.
pub fn delete(alpha: &Matroid, e: &str, mode: Mode) -> Result<Matroid> {
    removal(alpha, e, mode, deletion_morphism)
}

/// Contracts the point `e`; strict mode vanishes exactly on loops.
pub fn contract(alpha: &Matroid, e: &str, mode: Mode) -> Result<Matroid> {
    removal(alpha, e, mode, contraction_morphism)
}

fn removal(
    alpha: &Matroid,
    e: &str,
    mode: Mode,
    morphism: fn(&GroundSet, &str) -> Result<SubsetRelation>,
) -> Result<Matroid> {
    let op = morphism(alpha.ground(), e)?;
    let mu = matroid_as_morphism(alpha)?;
    if mode == Mode::Lax && alpha.is_zero() {
        return Err(Error::ZeroMatroid);
    }
    let out = hom_apply(&mu, &op, mode)?;
    morphism_as_matroid(&out)
}

/// A minor: lax-deletes `delete_set` and lax-contracts `contract_set`.
///
/// The two sets must be disjoint; the result is independent of the
/// interleaving order.
pub fn minor(alpha: &Matroid, delete_set: &Subset, contract_set: &Subset) -> Result<Matroid> {
    if delete_set.ground() != alpha.ground() || contract_set.ground() != alpha.ground() {
        return Err(Error::GroundMismatch(
            "minor sets must live on the matroid's ground set".into(),
        ));
    }
    if delete_set.mask() & contract_set.mask() != 0 {
        return Err(Error::OverlappingSets(format!(
            "{:?} and {:?}",
            delete_set, contract_set
        )));
    }
    let mut current = alpha.clone();
    for label in delete_set.labels() {
        current = delete(&current, &label, Mode::Lax)?;
    }
    for label in contract_set.labels() {
        current = contract(&current, &label, Mode::Lax)?;
    }
    Ok(current)
}

fn fresh_basepoint(taken: &[&GroundSet]) -> String {
    let mut name = "z0".to_string();
    while taken.iter().any(|g| g.contains(&name)) {
        name.push('\'');
    }
    name
}

fn prepare_connection(
    alpha: &PointedMatroid,
    beta: &PointedMatroid,
) -> Result<(SubsetRelation, SubsetRelation, GroundSet)> {
    let a_rest = alpha
        .matroid()
        .ground()
        .difference(&GroundSet::new([alpha.basepoint()])?);
    let b_rest = beta
        .matroid()
        .ground()
        .difference(&GroundSet::new([beta.basepoint()])?);
    for l in b_rest.labels() {
        if a_rest.contains(l) {
            return Err(Error::LabelClash(l.clone()));
        }
    }
    let z0 = fresh_basepoint(&[&a_rest, &b_rest]);
    let ap = alpha.with_basepoint_renamed(&z0)?;
    let bp = beta.with_basepoint_renamed(&z0)?;
    let mu = ap.as_morphism()?;
    let nu = bp.as_morphism()?;
    let s = GroundSet::new([z0])?;
    Ok((mu, nu, s))
}

/// Parallel connection of two pointed matroids: `µ ⊗_{{z0}} ν`.
pub fn parallel_connection(alpha: &PointedMatroid, beta: &PointedMatroid) -> Result<PointedMatroid> {
    let (mu, nu, s) = prepare_connection(alpha, beta)?;
    let rel = tensor_over_s(&mu, &nu, &s, SVariant::Meet)?;
    PointedMatroid::from_morphism(&rel)
}

/// Series connection of two pointed matroids: `µ ⊗̄_{{z0}} ν`.
pub fn series_connection(alpha: &PointedMatroid, beta: &PointedMatroid) -> Result<PointedMatroid> {
    let (mu, nu, s) = prepare_connection(alpha, beta)?;
    let rel = tensor_over_s(&mu, &nu, &s, SVariant::Join)?;
    PointedMatroid::from_morphism(&rel)
}

/// The 2-sum: base change of the parallel connection along
/// `δ = u⁰_{{z0},∅}`.  May be the zero matroid.
pub fn two_sum(alpha: &PointedMatroid, beta: &PointedMatroid) -> Result<Matroid> {
    let (mu, nu, s) = prepare_connection(alpha, beta)?;
    let parallel = tensor_over_s(&mu, &nu, &s, SVariant::Meet)?;
    let delta = SubsetRelation::uniform(0, &s, &GroundSet::empty())?;
    let out = base_change(&delta, &parallel, Mode::Strict)?;
    morphism_as_matroid(&out)
}

/// Applies the symmetrization morphism `σ = 1_{E∖S} ⊗ u^k_{S,T}` on the
/// right of `λ`.  `S` is a codomain subset; `T` must be disjoint from
/// `E ∖ S` (take `T = S`, `k = 0` for plain symmetrization).
pub fn symmetrize(
    lambda: &SubsetRelation,
    s: &Subset,
    t: &GroundSet,
    k: i64,
) -> Result<SubsetRelation> {
    let e = lambda.codomain();
    if s.ground() != e {
        return Err(Error::GroundMismatch(
            "symmetrization set must be a codomain subset".into(),
        ));
    }
    let rest_mask = e.full_mask() & !s.mask();
    let rest = e.restrict(rest_mask);
    for l in t.labels() {
        if rest.contains(l) {
            return Err(Error::LabelClash(l.clone()));
        }
    }
    let s_ground = e.restrict(s.mask());
    let sigma = SubsetRelation::identity(&rest)?
        .tensor(&SubsetRelation::uniform(k, &s_ground, t)?)?;
    let sigma = sigma.reindexed(e, sigma.codomain())?;
    compose_strict(lambda, &sigma)
}

/// Symmetrization of a matroid, returning a matroid (possibly zero when the
/// rank shift `k` is infeasible).
pub fn symmetrize_matroid(alpha: &Matroid, s: &Subset, t: &GroundSet, k: i64) -> Result<Matroid> {
    let mu = matroid_as_morphism(alpha)?;
    let out = symmetrize(&mu, s, t, k)?;
    morphism_as_matroid(&out)
}

/// Which side of a relation a symmetry block lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Domain,
    Codomain,
}

/// Whether every permutation of `S` (inside one side) maps the pair set to
/// itself.  Transpositions generate, so only those are checked.
pub fn is_symmetric(lambda: &SubsetRelation, side: Side, s: &Subset) -> Result<bool> {
    let ground = match side {
        Side::Domain => lambda.domain(),
        Side::Codomain => lambda.codomain(),
    };
    if s.ground() != ground {
        return Err(Error::GroundMismatch(
            "symmetry block must be a subset of the chosen side".into(),
        ));
    }
    let positions: Vec<usize> = (0..ground.len()).filter(|i| s.mask() >> i & 1 == 1).collect();
    for (ai, &i) in positions.iter().enumerate() {
        for &j in positions.iter().skip(ai + 1) {
            let swap = |m: u64| {
                let bi = m >> i & 1;
                let bj = m >> j & 1;
                m & !(1 << i) & !(1 << j) | bj << i | bi << j
            };
            let ok = lambda.mask_pairs().iter().all(|&(x, y)| {
                let (xs, ys) = match side {
                    Side::Domain => (swap(x), y),
                    Side::Codomain => (x, swap(y)),
                };
                lambda.contains_masks(xs, ys)
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether any single point is exchangeable for `e` against every basis,
/// used by tests that cross-check loops/coloops against strict vanishing.
pub fn is_loop(alpha: &Matroid, e: &str) -> Result<bool> {
    Ok(loops(alpha)?.contains(e))
}

pub fn is_coloop(alpha: &Matroid, e: &str) -> Result<bool> {
    Ok(coloops(alpha)?.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    fn u12() -> Matroid {
        Matroid::from_labels(g(&["a", "b"]), [["a"], ["b"]]).unwrap()
    }

    #[test]
    fn loops_and_coloops_basics() {
        let rank0 = Matroid::from_labels(g(&["e"]), [Vec::<&str>::new()]).unwrap();
        assert_eq!(loops(&rank0).unwrap().labels(), vec!["e".to_string()]);
        assert!(coloops(&rank0).unwrap().is_empty());

        let free = Matroid::from_labels(g(&["e"]), [["e"]]).unwrap();
        assert_eq!(coloops(&free).unwrap().labels(), vec!["e".to_string()]);
        assert!(loops(&free).unwrap().is_empty());

        let m = u12();
        assert!(loops(&m).unwrap().is_empty());
        assert!(coloops(&m).unwrap().is_empty());

        assert_eq!(loops(&Matroid::zero(g(&["e"]))).unwrap_err(), Error::ZeroMatroid);
    }

    #[test]
    fn strict_removal_vanishes_exactly_on_co_loops() {
        let free = Matroid::from_labels(g(&["e"]), [["e"]]).unwrap();
        assert!(delete(&free, "e", Mode::Strict).unwrap().is_zero());
        let lax = delete(&free, "e", Mode::Lax).unwrap();
        assert!(!lax.is_zero());
        assert_eq!(lax.rank(), Some(0));

        let rank0 = Matroid::from_labels(g(&["e"]), [Vec::<&str>::new()]).unwrap();
        assert!(contract(&rank0, "e", Mode::Strict).unwrap().is_zero());
        // lax contraction of a loop equals strict deletion
        assert_eq!(
            contract(&rank0, "e", Mode::Lax).unwrap(),
            delete(&rank0, "e", Mode::Strict).unwrap()
        );
    }

    #[test]
    fn non_coloop_removal_classical_values() {
        let m = u12();
        let del = delete(&m, "a", Mode::Lax).unwrap();
        assert_eq!(del.rank(), Some(1));
        assert!(del.contains_basis(&del.ground().subset(["b"]).unwrap()));
        let con = contract(&m, "a", Mode::Lax).unwrap();
        assert_eq!(con.rank(), Some(0));
    }

    #[test]
    fn missing_point_is_an_error() {
        assert!(delete(&u12(), "zz", Mode::Lax).is_err());
    }

    #[test]
    fn minor_identity_and_full() {
        let m = u12();
        let id = minor(&m, &m.ground().empty_subset(), &m.ground().empty_subset()).unwrap();
        assert_eq!(id, m);
        let all = minor(&m, &m.ground().subset(["a"]).unwrap(), &m.ground().subset(["b"]).unwrap())
            .unwrap();
        assert!(all.ground().is_empty());
        assert!(!all.is_zero());
        let overlap = minor(&m, &m.ground().subset(["a"]).unwrap(), &m.ground().subset(["a"]).unwrap());
        assert!(overlap.is_err());
    }

    #[test]
    fn parallel_connection_of_free_points() {
        let free = |l: &str| {
            PointedMatroid::new(
                Matroid::from_labels(g(&[l]), [[l]]).unwrap(),
                l,
            )
            .unwrap()
        };
        let p = parallel_connection(&free("x"), &free("y")).unwrap();
        assert_eq!(p.basepoint(), "z0");
        assert_eq!(p.matroid().rank(), Some(1));
        assert_eq!(p.matroid().num_bases(), 1);
        assert_eq!(
            p.matroid().bases().next().unwrap().labels(),
            vec!["z0".to_string()]
        );
    }

    #[test]
    fn connection_formulas_agree_with_display_forms() {
        // γ' and γ'' from the displayed formulas, against ⊗_S / ⊗̄_S.
        let alpha = PointedMatroid::new(
            Matroid::from_labels(g(&["x0", "p"]), [["x0"], ["p"]]).unwrap(),
            "x0",
        )
        .unwrap();
        let beta = PointedMatroid::new(
            Matroid::from_labels(g(&["y0", "q"]), [["y0", "q"]]).unwrap(),
            "y0",
        )
        .unwrap();

        let par = parallel_connection(&alpha, &beta).unwrap();
        let ser = series_connection(&alpha, &beta).unwrap();

        // display-formula route: (α ⊗ β) ∘ (1_C ⊗ u^{-1 or 0}_{{x0,y0},{z0}})
        let a_mor = matroid_as_morphism(alpha.matroid()).unwrap();
        let b_mor = matroid_as_morphism(beta.matroid()).unwrap();
        let tens = a_mor.tensor(&b_mor).unwrap();
        let c = g(&["p", "q"]);
        let xy = g(&["x0", "y0"]);
        let z = g(&["z0"]);
        let check = |k: i64, expected: &PointedMatroid| {
            let tail = SubsetRelation::identity(&c)
                .unwrap()
                .tensor(&SubsetRelation::uniform(k, &xy, &z).unwrap())
                .unwrap();
            let gamma = compose_strict(&tens, &tail).unwrap();
            let m = morphism_as_matroid(&gamma).unwrap();
            assert_eq!(
                m.canonicalized(),
                expected.matroid().canonicalized(),
                "display formula diverges at k={k}"
            );
        };
        check(-1, &par);
        check(0, &ser);

        // series rank = rank α + rank β
        assert_eq!(ser.matroid().rank(), Some(3));
        // parallel rank = rank α + rank β - 1
        assert_eq!(par.matroid().rank(), Some(2));

        // 2-sum = δ∘(parallel) = χ∘(series)
        let two = two_sum(&alpha, &beta).unwrap();
        let chi = SubsetRelation::uniform(-1, &g(&["z0"]), &GroundSet::empty()).unwrap();
        let ser_mor = ser.as_morphism().unwrap();
        let via_chi =
            morphism_as_matroid(&base_change(&chi, &ser_mor, Mode::Strict).unwrap()).unwrap();
        assert_eq!(two.canonicalized(), via_chi.canonicalized());
    }

    #[test]
    fn series_degree_identity() {
        // deg(µ ⊗̄_{z0} ν) = deg µ + deg ν + 1 (join shift at |S| = 1)
        let alpha = PointedMatroid::new(u12(), "a").unwrap();
        let beta = PointedMatroid::new(
            Matroid::from_labels(g(&["c", "d"]), [["c"], ["d"]]).unwrap(),
            "c",
        )
        .unwrap();
        let (mu, nu, s) = super::prepare_connection(&alpha, &beta).unwrap();
        let join = tensor_over_s(&mu, &nu, &s, SVariant::Join).unwrap();
        let dm = mu.degree().unwrap().unwrap();
        let dn = nu.degree().unwrap().unwrap();
        assert_eq!(join.degree().unwrap(), Some(dm + dn + 1));
    }

    #[test]
    fn symmetrize_minimal_cover() {
        // α = {{a}} on {a,b}, S = {a,b} → {{a},{b}}
        let alpha = Matroid::from_labels(g(&["a", "b"]), [["a"]]).unwrap();
        let s = alpha.ground().full_subset();
        let sym = symmetrize_matroid(&alpha, &s, &s.ground().clone(), 0).unwrap();
        assert_eq!(sym, u12());
        // already-symmetric input is fixed
        let again = symmetrize_matroid(&sym, &s, &s.ground().clone(), 0).unwrap();
        assert_eq!(again, sym);
    }

    #[test]
    fn symmetrize_rank_shift() {
        let alpha = Matroid::from_labels(g(&["a", "b"]), [["a"]]).unwrap();
        let s = alpha.ground().full_subset();
        let up = symmetrize_matroid(&alpha, &s, &s.ground().clone(), 1).unwrap();
        assert_eq!(up.rank(), Some(2));
    }

    #[test]
    fn symmetry_predicate() {
        let a = g(&["a", "b"]);
        let b = g(&["x", "y"]);
        let u = SubsetRelation::uniform(0, &a, &b).unwrap();
        assert!(is_symmetric(&u, Side::Domain, &a.full_subset()).unwrap());
        assert!(is_symmetric(&u, Side::Codomain, &b.full_subset()).unwrap());

        let e = SubsetRelation::elementary(&a.subset(["a"]).unwrap(), &b.empty_subset()).unwrap();
        // symmetric on S iff S ⊆ P or S ∩ P = ∅ (P = {a})
        assert!(is_symmetric(&e, Side::Domain, &a.subset(["a"]).unwrap()).unwrap());
        assert!(!is_symmetric(&e, Side::Domain, &a.full_subset()).unwrap());

        let eta = SubsetRelation::covering(&a).unwrap();
        assert!(is_symmetric(&eta, Side::Domain, &a.full_subset()).unwrap());

        // block on the wrong ground set
        assert!(is_symmetric(&u, Side::Domain, &b.full_subset()).is_err());
    }

    #[test]
    fn removal_morphisms_commute() {
        let e = g(&["a", "b", "c"]);
        let da = deletion_morphism(&e, "a").unwrap();
        let cb = contraction_morphism(&e.difference(&g(&["a"])), "b").unwrap();
        let db = contraction_morphism(&e, "b").unwrap();
        let ca = deletion_morphism(&e.difference(&g(&["b"])), "a").unwrap();
        let left = compose_strict(&da, &cb).unwrap();
        let right = compose_strict(&db, &ca).unwrap();
        assert_eq!(left.reindexed(&e, &g(&["c"])).unwrap(), right.reindexed(&e, &g(&["c"])).unwrap());
    }
}
