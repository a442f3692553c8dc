//! `Hol(G) = ρ(G) ⋊ Aut(G)` inside `Perm(G)`, its regular subgroups and the
//! quotient `T(G) = NHol(G)/Hol(G)`.
//!
//! Points are element indices of `G`. Every element of `Hol(G)` factors uniquely
//! as `ρ(a)·φ`, and `(ρ(a)φ)(1) = a⁻¹`, so membership is a lookup of
//! `φ = ρ(a⁻¹)·η` in `Aut(G)` rather than a hash of a degree-`|G|` permutation.
//! `NHol(G)` is never formed as a normalizer in `Perm(G)`: each regular subgroup
//! `N` isomorphic to `G` with normalizer `Hol(G)` yields a conjugator
//! `π: x ↦ ψ(x)(1)` for an isomorphism `ψ: G → N`, and these conjugators represent
//! the cosets of `Hol(G)` in `NHol(G)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crossed::{
    crossed_hom, enumerate_crossed_homs, enumerate_homomorphisms, fpf_pairs, g_from_fh, h_from_fg, CrossedHom,
    Homomorphism, Parameterization,
};
use crate::error::{Error, Result};
use crate::groups::{automorphism_group, find_isomorphism, AutGroupRecord, FiniteGroup};
use crate::perm::{close_generators, is_normal, normal_subgroups_of_order, PermGroup, Permutation};
use crate::Budget;

/// `G` with `Aut(G)`, `Hol(G)`, `λ(G)` and `ρ(G)` as permutation groups on `G`.
#[derive(Clone, Debug)]
pub struct HolomorphContext {
    g: FiniteGroup,
    aut: AutGroupRecord,
    hol: PermGroup,
    lambda: PermGroup,
    rho: PermGroup,
}

/// `λ(G)` and `ρ(G)` as permutation groups of degree `|G|`.
pub fn left_right_regular(g: &FiniteGroup) -> (PermGroup, PermGroup) {
    let n = g.order();
    let lambda = (0..n).map(|a| g.left_regular(a)).collect();
    let rho = (0..n).map(|a| g.right_regular(a)).collect();
    let gens_l: Vec<Permutation> = g.generators().iter().map(|&s| g.left_regular(s)).collect();
    let gens_r: Vec<Permutation> = g.generators().iter().map(|&s| g.right_regular(s)).collect();
    (PermGroup::from_elements(n, lambda, &gens_l), PermGroup::from_elements(n, rho, &gens_r))
}

impl HolomorphContext {
    /// Closes `ρ(G) ∪ Aut(G)` and checks `|Hol(G)| = |G|·|Aut(G)|` and that
    /// `Hol(G)` normalizes both `λ(G)` and `ρ(G)`.
    pub fn build(g: &FiniteGroup, budget: &Budget) -> Result<Self> {
        let aut = automorphism_group(g, budget)?;
        let expected = g.order() * aut.order();
        budget.check(expected, &format!("building Hol({})", g.name()))?;
        let mut gens: Vec<Permutation> = g.generators().iter().map(|&s| g.right_regular(s)).collect();
        gens.extend(aut.as_group().generators().iter().map(|&i| aut.automorphism(i).clone()));
        let hol = close_generators(&gens, g.order(), budget)?;
        if hol.order() != expected {
            return Err(Error::Inconsistency(format!(
                "|Hol({})| = {} but |G|·|Aut(G)| = {expected}",
                g.name(),
                hol.order()
            )));
        }
        let (lambda, rho) = left_right_regular(g);
        let ctx = HolomorphContext { g: g.clone(), aut, hol, lambda, rho };
        for h in ctx.hol.generators() {
            for sub in [&ctx.lambda, &ctx.rho] {
                if sub.generators().iter().any(|s| !sub.contains(&h.conjugate(s))) {
                    return Err(Error::Inconsistency("Hol(G) does not normalize λ(G) and ρ(G)".into()));
                }
            }
        }
        Ok(ctx)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn aut(&self) -> &AutGroupRecord {
        &self.aut
    }

    pub fn hol(&self) -> &PermGroup {
        &self.hol
    }

    pub fn lambda(&self) -> &PermGroup {
        &self.lambda
    }

    pub fn rho(&self) -> &PermGroup {
        &self.rho
    }

    /// `ρ(a)·φ_i`, i.e. `x ↦ φ_i(x)·a⁻¹`.
    pub fn element(&self, a: usize, phi: usize) -> Permutation {
        let g = &self.g;
        let ai = g.inv(a);
        let p = self.aut.automorphism(phi);
        Permutation::from_images_unchecked((0..g.order()).map(|x| g.mul(p.apply(x), ai) as u32).collect())
    }

    /// The factorization `η = ρ(a)·φ`, or `None` when `η ∉ Hol(G)`.
    pub fn factor(&self, eta: &Permutation) -> Option<(usize, usize)> {
        let g = &self.g;
        if eta.degree() != g.order() {
            return None;
        }
        let a = g.inv(eta.apply(g.identity()));
        let phi = Permutation::from_images_unchecked((0..g.order()).map(|x| g.mul(eta.apply(x), a) as u32).collect());
        self.aut.position(&phi).map(|i| (a, i))
    }

    pub fn contains(&self, eta: &Permutation) -> bool {
        self.factor(eta).is_some()
    }

    /// `x ↦ ξ(η) = η(1)` is a bijection `n → G`.
    pub fn is_regular_subgroup(&self, n: &PermGroup) -> bool {
        is_regular(n, &self.g)
    }
}

/// Convenience wrapper for [`HolomorphContext::build`].
pub fn build_holomorph(g: &FiniteGroup, budget: &Budget) -> Result<HolomorphContext> {
    HolomorphContext::build(g, budget)
}

fn is_regular(n: &PermGroup, g: &FiniteGroup) -> bool {
    if n.degree() != g.order() || n.order() != g.order() {
        return false;
    }
    let mut seen = vec![false; g.order()];
    n.elements().iter().all(|p| !std::mem::replace(&mut seen[p.apply(g.identity())], true))
}

pub fn is_regular_subgroup(n: &PermGroup, ctx: &HolomorphContext) -> bool {
    is_regular(n, &ctx.g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupTag {
    Lambda,
    Rho,
    Other,
}

/// One regular subgroup of `Hol(G)` with its properties.
#[derive(Clone, Debug)]
pub struct RegularSubgroupRecord {
    pub subgroup: PermGroup,
    pub regular: bool,
    pub normal_in_hol: bool,
    /// An isomorphism `G → N` as positions in `subgroup.elements()`, if one exists.
    pub iso_to_g: Option<Vec<u32>>,
    /// `(f, g, h)` over `Γ = G` through `iso_to_g`, or over `Γ = N` itself
    /// (indexed like `subgroup.elements()`) when `N` is not isomorphic to `G`.
    pub parameterization: Option<Parameterization>,
    pub tag: SubgroupTag,
}

impl RegularSubgroupRecord {
    /// Canonical identity of the subgroup: its sorted element list.
    pub fn key(&self) -> &[Permutation] {
        self.subgroup.elements()
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

fn tag_of(ctx: &HolomorphContext, n: &PermGroup) -> SubgroupTag {
    if n == &ctx.lambda {
        SubgroupTag::Lambda
    } else if n == &ctx.rho {
        SubgroupTag::Rho
    } else {
        SubgroupTag::Other
    }
}

/// `(f, g)` read off from `β(γ) = ρ(g(γ))·f(γ)` for the listed images `β(γ)`.
fn factor_map(ctx: &HolomorphContext, beta: &[&Permutation]) -> Result<(Homomorphism, Vec<u32>)> {
    let mut f = Vec::with_capacity(beta.len());
    let mut values = Vec::with_capacity(beta.len());
    for eta in beta {
        let (a, phi) = ctx.factor(eta).ok_or(Error::NotContained)?;
        values.push(a as u32);
        f.push(phi as u32);
    }
    Ok((Homomorphism::new(f), values))
}

fn parameterize(ctx: &HolomorphContext, gamma: &FiniteGroup, beta: &[&Permutation]) -> Result<Parameterization> {
    let (f, values) = factor_map(ctx, beta)?;
    let f = Homomorphism::checked(gamma, ctx.aut.as_group(), f.images().to_vec())?;
    let crossed = crossed_hom(gamma, &ctx.g, &ctx.aut, &f, values)?;
    let h = h_from_fg(gamma, &ctx.aut, &crossed)?;
    Ok(Parameterization { crossed, h })
}

/// Record for a regular subgroup found by a normal-subgroup scan.
fn record_from_subgroup(ctx: &HolomorphContext, n: PermGroup) -> Result<RegularSubgroupRecord> {
    let regular = is_regular(&n, &ctx.g);
    let normal_in_hol = is_normal(&n, &ctx.hol)?;
    let as_group = FiniteGroup::from_perm_group("N", &n)?;
    let iso_to_g = find_isomorphism(&ctx.g, &as_group);
    let parameterization = match &iso_to_g {
        Some(psi) => {
            let beta: Vec<&Permutation> = psi.iter().map(|&i| n.element(i as usize)).collect();
            Some(parameterize(ctx, &ctx.g, &beta)?)
        }
        None => {
            let beta: Vec<&Permutation> = n.elements().iter().collect();
            Some(parameterize(ctx, &as_group, &beta)?)
        }
    };
    let tag = tag_of(ctx, &n);
    Ok(RegularSubgroupRecord { subgroup: n, regular, normal_in_hol, iso_to_g, parameterization, tag })
}

/// Record for `β(f,g)(G)` with `g` bijective.
fn record_from_crossed(ctx: &HolomorphContext, crossed: CrossedHom, h: Homomorphism) -> Result<RegularSubgroupRecord> {
    let g = &ctx.g;
    let beta: Vec<Permutation> = (0..g.order()).map(|x| ctx.element(crossed.apply(x), crossed.action().apply(x))).collect();
    let gens: Vec<Permutation> = g.generators().iter().map(|&s| beta[s].clone()).collect();
    let n = PermGroup::from_elements(g.order(), beta.clone(), &gens);
    if n.order() != g.order() {
        return Err(Error::Inconsistency("β(f,g) is not injective for a bijective g".into()));
    }
    let iso: Vec<u32> = beta.iter().map(|p| n.position(p).map(|i| i as u32)).collect::<Option<_>>().ok_or_else(
        || Error::Inconsistency("β(f,g)(G) is not closed".into()),
    )?;
    let regular = is_regular(&n, g);
    let normal_in_hol = is_normal(&n, &ctx.hol)?;
    let tag = tag_of(ctx, &n);
    Ok(RegularSubgroupRecord {
        subgroup: n,
        regular,
        normal_in_hol,
        iso_to_g: Some(iso),
        parameterization: Some(Parameterization { crossed, h }),
        tag,
    })
}

/// Sorted `(g(γ), f(γ))` pairs; equal exactly when the images `β(f,g)(Γ)` agree.
fn image_key(c: &CrossedHom) -> Vec<(u32, u32)> {
    let mut key: Vec<(u32, u32)> = (0..c.values().len()).map(|x| c.beta_pair(x)).collect();
    key.sort_unstable();
    key
}

/// Distinct images of bijective crossed homomorphisms `G → G`, one `(g, h)` per
/// image, found from fixed point free pairs `(f, h)` (centerless `G`) or from
/// direct crossed homomorphism enumeration (otherwise).
pub fn h2_parameterizations(ctx: &HolomorphContext, budget: &Budget) -> Result<Vec<(CrossedHom, Homomorphism)>> {
    let (g, aut) = (&ctx.g, &ctx.aut);
    let homs = enumerate_homomorphisms(g, aut.as_group(), budget)?;
    let what = format!("enumerating H2({})", g.name());
    let mut unique: BTreeMap<Vec<(u32, u32)>, (CrossedHom, Homomorphism)> = BTreeMap::new();
    let mut keep = |found: Vec<(CrossedHom, Homomorphism)>| -> Result<()> {
        for (c, h) in found {
            if !c.is_bijective() {
                return Err(Error::Inconsistency("fixed point free pair gave a non-bijective crossed hom".into()));
            }
            unique.entry(image_key(&c)).or_insert((c, h));
        }
        budget.check(unique.len().saturating_mul(g.order()), &what)
    };
    if aut.conj_is_injective() {
        // Each image arises from |Aut(G)| pairs; only distinct images are kept.
        for chunk in fpf_pairs(g, aut, &homs).chunks(4096) {
            let found = chunk
                .par_iter()
                .map(|&(i, j)| Ok((g_from_fh(g, g, aut, &homs[i], &homs[j])?, homs[j].clone())))
                .collect::<Result<Vec<_>>>()?;
            keep(found)?;
        }
    } else {
        for f in &homs {
            let found = enumerate_crossed_homs(g, g, aut, f, true, budget)?
                .into_iter()
                .map(|c| {
                    let h = h_from_fg(g, aut, &c)?;
                    Ok((c, h))
                })
                .collect::<Result<Vec<_>>>()?;
            keep(found)?;
        }
    }
    Ok(unique.into_values().collect())
}

/// `H₂(G)`: regular subgroups of `Hol(G)` isomorphic to `G`, in canonical order.
#[allow(non_snake_case)]
pub fn enumerate_H2(ctx: &HolomorphContext, budget: &Budget) -> Result<Vec<RegularSubgroupRecord>> {
    let mut records = h2_parameterizations(ctx, budget)?
        .into_par_iter()
        .map(|(c, h)| record_from_crossed(ctx, c, h))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.key().cmp(b.key()));
    Ok(records)
}

/// `H₁(G)`: normal regular subgroups of `Hol(G)`, in canonical order.
#[allow(non_snake_case)]
pub fn enumerate_H1(ctx: &HolomorphContext, budget: &Budget) -> Result<Vec<RegularSubgroupRecord>> {
    let candidates = normal_subgroups_of_order(&ctx.hol, ctx.g.order(), budget)?;
    let mut records = candidates
        .into_iter()
        .filter(|n| is_regular(n, &ctx.g))
        .map(|n| record_from_subgroup(ctx, n))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.key().cmp(b.key()));
    Ok(records)
}

/// `T(G)` realized on `H₀(G)`: element `k` is the coset `π_k·Hol(G)` with
/// `π_k λ(G) π_k⁻¹ = H₀[k]`.
#[derive(Clone, Debug)]
pub struct TGroup {
    pub h0: Vec<RegularSubgroupRecord>,
    pub conjugators: Vec<Permutation>,
    pub group: FiniteGroup,
    pub hol_order: usize,
    pub nhol_order: usize,
    /// For every ordered pair in `H₀`, exactly one element of `T` conjugates the first to the second.
    pub acts_regularly: bool,
    /// Conjugators built from other isomorphisms lie in the same `Hol(G)`-coset.
    pub coset_independent: bool,
}

impl TGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `C<n>` when cyclic, otherwise a short description.
    pub fn structure(&self) -> String {
        let n = self.group.order();
        if (0..n).any(|x| self.group.element_order(x) == n) {
            format!("C{n}")
        } else if self.group.is_abelian() {
            format!("abelian of order {n}")
        } else {
            format!("non-abelian of order {n}")
        }
    }
}

/// `π: x ↦ ψ(x)(1)` for an isomorphism `ψ: G → N` given on element indices of `G`.
fn conjugator(g: &FiniteGroup, psi: &dyn Fn(usize) -> Permutation) -> Permutation {
    Permutation::from_images_unchecked((0..g.order()).map(|x| psi(x).apply(g.identity()) as u32).collect())
}

/// Position in `members` of the subgroup containing all of `elements`.
fn locate(members: &[RegularSubgroupRecord], elements: &[Permutation]) -> Option<usize> {
    members.iter().position(|m| elements.iter().all(|p| m.subgroup.contains(p)))
}

/// `H₀ = H₁ ∩ H₂` and the group `T(G)` acting on it.
#[allow(non_snake_case)]
pub fn enumerate_H0_and_T(
    ctx: &HolomorphContext,
    h1: &[RegularSubgroupRecord],
    h2: &[RegularSubgroupRecord],
) -> Result<TGroup> {
    let g = &ctx.g;
    let h0: Vec<RegularSubgroupRecord> =
        h2.iter().filter(|r| h1.iter().any(|s| s.key() == r.key())).cloned().collect();
    let lambda_pos = h0
        .iter()
        .position(|r| r.subgroup == ctx.lambda)
        .ok_or_else(|| Error::Inconsistency("λ(G) is missing from H0".into()))?;

    let conj_for = |r: &RegularSubgroupRecord, twist: &dyn Fn(usize) -> usize| -> Result<Permutation> {
        let psi = r.iso_to_g.as_ref().ok_or_else(|| Error::Inconsistency("H0 member without isomorphism".into()))?;
        Ok(conjugator(g, &|x| r.subgroup.element(psi[twist(x)] as usize).clone()))
    };
    let conjugators: Vec<Permutation> = h0.iter().map(|r| conj_for(r, &|x| x)).collect::<Result<_>>()?;

    for (r, pi) in h0.iter().zip(&conjugators) {
        let pi_inv = pi.inverse();
        let psi = r.iso_to_g.as_deref().unwrap_or_default();
        for &s in g.generators() {
            let image = pi.compose_unchecked(&g.left_regular(s)).compose_unchecked(&pi_inv);
            if psi.get(s).map(|&i| r.subgroup.element(i as usize)) != Some(&image) {
                return Err(Error::Inconsistency("conjugator does not carry λ(G) to its subgroup".into()));
            }
        }
        if ctx.hol.generators().iter().any(|h| !ctx.contains(&pi.compose_unchecked(h).compose_unchecked(&pi_inv))) {
            return Err(Error::Inconsistency("a conjugator does not normalize Hol(G)".into()));
        }
    }

    let lambda_gens: Vec<Permutation> = g.generators().iter().map(|&s| g.left_regular(s)).collect();
    let k = h0.len();
    let mut table = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let p = conjugators[i].compose_unchecked(&conjugators[j]);
            let pi = p.inverse();
            let images: Vec<Permutation> =
                lambda_gens.iter().map(|l| p.compose_unchecked(l).compose_unchecked(&pi)).collect();
            let m = locate(&h0, &images)
                .ok_or_else(|| Error::Inconsistency("product of conjugators leaves H0".into()))?;
            table[i * k + j] = m as u32;
        }
    }
    let group = FiniteGroup::from_table(format!("T({})", g.name()), k, table, (0..k).collect(), None)?;
    if group.identity() != lambda_pos {
        return Err(Error::Inconsistency("the identity of T(G) is not the coset of λ(G)".into()));
    }
    let group = group.with_small_generators();

    // The action on H0 computed from each member's own generators.
    let mut acts_regularly = true;
    let mut hits = vec![0usize; k * k];
    for pi in &conjugators {
        let pi_inv = pi.inverse();
        for (j, r) in h0.iter().enumerate() {
            let images: Vec<Permutation> =
                r.subgroup.generators().iter().map(|s| pi.compose_unchecked(s).compose_unchecked(&pi_inv)).collect();
            match locate(&h0, &images) {
                Some(m) => hits[j * k + m] += 1,
                None => acts_regularly = false,
            }
        }
    }
    acts_regularly &= hits.iter().all(|&c| c == 1);

    let mut coset_independent = true;
    for (r, pi) in h0.iter().zip(&conjugators) {
        let pi_inv = pi.inverse();
        for &alpha in ctx.aut.as_group().generators() {
            let other = conj_for(r, &|x| ctx.aut.apply(alpha, x))?;
            coset_independent &= ctx.contains(&pi_inv.compose_unchecked(&other));
        }
    }

    Ok(TGroup {
        h0,
        conjugators,
        group,
        hol_order: ctx.hol.order(),
        nhol_order: k * ctx.hol.order(),
        acts_regularly,
        coset_independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::normal_prop_check;
    use crate::groups::make_named_group;

    fn ctx(name: &str) -> HolomorphContext {
        HolomorphContext::build(&make_named_group(name).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn regular_representations() {
        let c1 = make_named_group("C1").unwrap();
        let (l, r) = left_right_regular(&c1);
        assert_eq!((l.order(), r.order()), (1, 1));
        let c6 = make_named_group("C6").unwrap();
        let (l, r) = left_right_regular(&c6);
        assert_eq!(l, r);
        let s3 = make_named_group("S3").unwrap();
        let (l, r) = left_right_regular(&s3);
        assert_ne!(l, r);
        assert_eq!(l.intersection(&r).order(), 1);
        // Convention: λ(a)λ(b) = λ(ab) and ρ(a)ρ(b) = ρ(ab).
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(s3.left_regular(a).compose_unchecked(&s3.left_regular(b)), s3.left_regular(s3.mul(a, b)));
                assert_eq!(s3.right_regular(a).compose_unchecked(&s3.right_regular(b)), s3.right_regular(s3.mul(a, b)));
            }
        }
    }

    #[test]
    fn holomorph_orders() {
        assert_eq!(ctx("C2").hol().order(), 2);
        assert_eq!(ctx("C1").hol().order(), 1);
        assert_eq!(ctx("S3").hol().order(), 36);
        assert_eq!(ctx("C6").hol().order(), 12);
        let a5 = ctx("A5");
        assert_eq!(a5.hol().order(), 7200);
    }

    #[test]
    fn factorization_is_membership() {
        for name in ["S3", "D4", "C2xC2"] {
            let c = ctx(name);
            let n = c.group().order();
            for eta in c.hol().elements() {
                let (a, phi) = c.factor(eta).unwrap();
                assert_eq!(&c.element(a, phi), eta);
            }
            // A permutation outside Hol: a transposition of two non-identity points.
            let mut images: Vec<u32> = (0..n as u32).collect();
            let e = c.group().identity();
            let pts: Vec<usize> = (0..n).filter(|&x| x != e).take(2).collect();
            images.swap(pts[0], pts[1]);
            let t = Permutation::from_images(images).unwrap();
            assert_eq!(c.contains(&t), c.hol().contains(&t), "{name}");
        }
    }

    #[test]
    fn regularity() {
        let c = ctx("S3");
        assert!(c.is_regular_subgroup(c.lambda()));
        assert!(is_regular_subgroup(c.rho(), &c));
        let auts: Vec<Permutation> = c.aut().automorphisms().to_vec();
        let stab = PermGroup::from_elements(6, auts, &[]);
        assert!(!c.is_regular_subgroup(&stab));
        assert!(!c.is_regular_subgroup(&PermGroup::trivial(6)));
        assert!(is_normal(c.lambda(), c.hol()).unwrap());
    }

    // Oracle: all regular subgroups of Hol(G) isomorphic to G, from every subset
    // generated by up to two elements of Hol(G).
    fn h2_brute(c: &HolomorphContext) -> Vec<Vec<Permutation>> {
        let g = c.group();
        let hol = c.hol();
        let n = g.order();
        let mut found = std::collections::BTreeSet::new();
        let elems = hol.elements();
        for x in 0..elems.len() {
            for y in x..elems.len() {
                let Ok(sub) = close_generators(&[elems[x].clone(), elems[y].clone()], n, &Budget::new(4 * n)) else {
                    continue;
                };
                if is_regular(&sub, g) {
                    let fg = FiniteGroup::from_perm_group("N", &sub).unwrap();
                    if find_isomorphism(g, &fg).is_some() {
                        found.insert(sub.elements().to_vec());
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn h2_matches_two_generator_scan() {
        // All these groups are 2-generated, so the scan sees every candidate.
        for name in ["C1", "C2", "S3", "C4", "C2xC2", "C6", "D4"] {
            let c = ctx(name);
            let fast: Vec<Vec<Permutation>> =
                enumerate_H2(&c, &Budget::default()).unwrap().iter().map(|r| r.key().to_vec()).collect();
            assert_eq!(fast, h2_brute(&c), "{name}");
        }
    }

    #[test]
    fn h2_routes_agree_on_centerless_groups() {
        for name in ["S3", "A4", "D5"] {
            let c = ctx(name);
            let b = Budget::default();
            let via_pairs: Vec<Vec<(u32, u32)>> =
                h2_parameterizations(&c, &b).unwrap().iter().map(|(g, _)| image_key(g)).collect();
            let homs = enumerate_homomorphisms(c.group(), c.aut().as_group(), &b).unwrap();
            let mut direct = std::collections::BTreeSet::new();
            for f in &homs {
                for g in enumerate_crossed_homs(c.group(), c.group(), c.aut(), f, true, &b).unwrap() {
                    direct.insert(image_key(&g));
                }
            }
            assert_eq!(via_pairs, direct.into_iter().collect::<Vec<_>>(), "{name}");
        }
    }

    #[test]
    fn h2_small_cases() {
        let b = Budget::default();
        assert_eq!(enumerate_H2(&ctx("C1"), &b).unwrap().len(), 1);
        let s3 = ctx("S3");
        let h2 = enumerate_H2(&s3, &b).unwrap();
        assert!(h2.iter().any(|r| r.tag == SubgroupTag::Lambda));
        assert!(h2.iter().any(|r| r.tag == SubgroupTag::Rho));
        assert!(h2.iter().all(|r| r.regular && r.iso_to_g.is_some()));
    }

    #[test]
    fn h1_and_t_for_small_groups() {
        let b = Budget::default();
        let c3 = ctx("C3");
        let h1 = enumerate_H1(&c3, &b).unwrap();
        assert!(h1.iter().any(|r| r.tag == SubgroupTag::Lambda && r.subgroup == *c3.rho()));

        let c2 = ctx("C2");
        let h1 = enumerate_H1(&c2, &b).unwrap();
        let h2 = enumerate_H2(&c2, &b).unwrap();
        let t = enumerate_H0_and_T(&c2, &h1, &h2).unwrap();
        assert_eq!(t.h0.len(), 1);
        assert_eq!(t.order(), 1);

        let s3 = ctx("S3");
        let h1 = enumerate_H1(&s3, &b).unwrap();
        let h2 = enumerate_H2(&s3, &b).unwrap();
        let t = enumerate_H0_and_T(&s3, &h1, &h2).unwrap();
        assert!(t.acts_regularly && t.coset_independent);
        assert_eq!(t.nhol_order, t.order() * 36);
        for r in &h1 {
            assert!(r.normal_in_hol && r.regular);
            assert!(normal_prop_check(r, s3.aut()).unwrap());
        }
        for r in &t.h0 {
            assert!(h1.iter().any(|s| s.key() == r.key()));
        }
    }

    #[test]
    fn normal_prop_requires_parameterization() {
        let c = ctx("S3");
        let mut r = enumerate_H2(&c, &Budget::default()).unwrap().remove(0);
        r.parameterization = None;
        assert!(matches!(normal_prop_check(&r, c.aut()), Err(Error::MissingParameterization)));
    }
}
