//! Crossed homomorphisms and the parameterization of regular subgroups of
//! `Hol(G)` by pairs of homomorphisms into `Aut(G)`.
//!
//! A map `Γ → Hol(G)` is written `γ ↦ ρ(g(γ))·f(γ)`. It is a homomorphism iff
//! `f: Γ → Aut(G)` is one and `g` is a crossed homomorphism for `f`:
//! `g(γδ) = g(γ) · f(γ)(g(δ))`. The companion map
//! `h(γ) = conj(g(γ))·f(γ)` is again a homomorphism with the same image as `f`
//! in `Out(G)`, and when `G` is centerless `g` can be recovered from `(f, h)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{AutGroupRecord, FiniteGroup};
use crate::holomorph::RegularSubgroupRecord;
use crate::perm::Permutation;
use crate::search::{homomorphisms, Search, StepRule};
use crate::Budget;

/// A map between indexed groups, stored as images of domain indices.
/// Domains below this order are checked on one thread; rayon's overhead
/// dominates a few hundred table lookups.
const PARALLEL_ORDER: usize = 128;

fn all_rows(n: usize, row: impl Fn(usize) -> bool + Sync + Send) -> bool {
    if n < PARALLEL_ORDER {
        (0..n).all(row)
    } else {
        (0..n).into_par_iter().all(row)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Homomorphism {
    images: Vec<u32>,
}

impl Homomorphism {
    /// Wraps an image array that the caller knows to be multiplicative.
    pub fn new(images: Vec<u32>) -> Self {
        Homomorphism { images }
    }

    /// Validates the homomorphism law on every pair.
    pub fn checked(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<u32>) -> Result<Self> {
        if images.len() != domain.order() || images.iter().any(|&v| v as usize >= codomain.order()) {
            return Err(Error::InvalidArgument("image array does not fit the groups".into()));
        }
        let hom = Homomorphism { images };
        if !hom.is_homomorphism(domain, codomain) {
            return Err(Error::InvalidArgument(format!(
                "map {} → {} is not a homomorphism",
                domain.name(),
                codomain.name()
            )));
        }
        Ok(hom)
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        Homomorphism { images: vec![codomain.identity() as u32; domain.order()] }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_homomorphism(&self, domain: &FiniteGroup, codomain: &FiniteGroup) -> bool {
        let n = domain.order();
        self.images.len() == n
            && self.apply(domain.identity()) == codomain.identity()
            && all_rows(n, |a| {
                let fa = self.apply(a);
                (0..n).all(|b| self.apply(domain.mul(a, b)) == codomain.mul(fa, self.apply(b)))
            })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<u32> = self.images.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_trivial(&self, codomain: &FiniteGroup) -> bool {
        self.images.iter().all(|&v| v as usize == codomain.identity())
    }

    pub fn kernel(&self, codomain: &FiniteGroup) -> Vec<usize> {
        (0..self.images.len()).filter(|&x| self.apply(x) == codomain.identity()).collect()
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.images.iter().map(|&v| v as usize).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// A crossed homomorphism `g: Γ → G` for the action `f: Γ → Aut(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossedHom {
    action: Homomorphism,
    values: Vec<u32>,
    injective: bool,
    bijective: bool,
}

impl CrossedHom {
    fn new(action: Homomorphism, values: Vec<u32>, target_order: usize) -> Self {
        let mut seen = values.clone();
        seen.sort_unstable();
        let injective = seen.windows(2).all(|w| w[0] != w[1]);
        let bijective = injective && values.len() == target_order;
        CrossedHom { action, values, injective, bijective }
    }

    pub fn action(&self) -> &Homomorphism {
        &self.action
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x] as usize
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    /// `β(γ) = ρ(g(γ))·f(γ)` as a pair `(g(γ), f(γ))` of element and automorphism indices.
    pub fn beta_pair(&self, x: usize) -> (u32, u32) {
        (self.values[x], self.action.images[x])
    }
}

/// The `(f, g, h)` triple attached to a regular subgroup `β(f,g)(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameterization {
    pub crossed: CrossedHom,
    pub h: Homomorphism,
}

impl Parameterization {
    pub fn f(&self) -> &Homomorphism {
        self.crossed.action()
    }

    pub fn g(&self) -> &CrossedHom {
        &self.crossed
    }
}

/// Every homomorphism `gamma → target`, validated on all pairs.
pub fn enumerate_homomorphisms(
    gamma: &FiniteGroup,
    target: &FiniteGroup,
    budget: &Budget,
) -> Result<Vec<Homomorphism>> {
    let maps = homomorphisms(gamma, target, budget)?;
    let homs: Vec<Homomorphism> = maps.into_iter().map(Homomorphism::new).collect();
    if let Some(bad) = homs.iter().find(|h| !h.is_homomorphism(gamma, target)) {
        return Err(Error::Inconsistency(format!("search produced a non-homomorphism {:?}", bad.images)));
    }
    Ok(homs)
}

/// The cocycle law `g(γδ) = g(γ)·f(γ)(g(δ))` on every pair.
pub fn is_crossed_hom(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    aut: &AutGroupRecord,
    f: &Homomorphism,
    values: &[u32],
) -> bool {
    let n = gamma.order();
    values.len() == n
        && values.iter().all(|&v| (v as usize) < g.order())
        && all_rows(n, |a| {
            let (ga, fa) = (values[a] as usize, f.apply(a));
            (0..n).all(|b| values[gamma.mul(a, b)] as usize == g.mul(ga, aut.apply(fa, values[b] as usize)))
        })
}

struct CrossedRule<'a> {
    g: &'a FiniteGroup,
    actions: Vec<&'a [u32]>,
}

impl StepRule for CrossedRule<'_> {
    fn target_order(&self) -> usize {
        self.g.order()
    }

    fn target_identity(&self) -> usize {
        self.g.identity()
    }

    #[inline]
    fn step(&self, j: usize, gen_value: usize, x_value: usize) -> usize {
        self.g.mul(gen_value, self.actions[j][x_value] as usize)
    }
}

/// Values `a` allowed at a generator `s` of order `k` with `φ = f(s)`: the pair
/// `ρ(a)φ` must have order dividing `k`, i.e. `a·φ(a)·…·φ^{k−1}(a) = 1`.
fn cocycle_candidates(gamma: &FiniteGroup, g: &FiniteGroup, aut: &AutGroupRecord, f: &Homomorphism) -> Vec<Vec<usize>> {
    gamma
        .generators()
        .iter()
        .map(|&s| {
            let k = gamma.element_order(s);
            let phi = aut.automorphism(f.apply(s));
            (0..g.order())
                .filter(|&a| {
                    let (mut acc, mut term) = (g.identity(), a);
                    for _ in 0..k {
                        acc = g.mul(acc, term);
                        term = phi.apply(term);
                    }
                    acc == g.identity()
                })
                .collect()
        })
        .collect()
}

/// All crossed homomorphisms `Γ → G` for the action `f`, or only the bijective ones.
pub fn enumerate_crossed_homs(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    aut: &AutGroupRecord,
    f: &Homomorphism,
    bijective_only: bool,
    budget: &Budget,
) -> Result<Vec<CrossedHom>> {
    if bijective_only && gamma.order() != g.order() {
        return Ok(Vec::new());
    }
    let actions = gamma.generators().iter().map(|&s| aut.automorphism(f.apply(s)).images()).collect();
    let rule = CrossedRule { g, actions };
    let candidates = cocycle_candidates(gamma, g, aut, f);
    let maps = Search::new(gamma, rule, candidates, bijective_only)
        .all(budget, &format!("enumerating crossed homomorphisms {} → {}", gamma.name(), g.name()))?;
    maps.into_iter()
        .map(|values| {
            // The search only checks edges of the generator graph; recheck every pair.
            if !is_crossed_hom(gamma, g, aut, f, &values) {
                return Err(Error::Inconsistency("search produced a map violating the cocycle law".into()));
            }
            Ok(CrossedHom::new(f.clone(), values, g.order()))
        })
        .collect()
}

/// Builds a crossed homomorphism from explicit values, checking the cocycle law.
pub fn crossed_hom(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    aut: &AutGroupRecord,
    f: &Homomorphism,
    values: Vec<u32>,
) -> Result<CrossedHom> {
    if !is_crossed_hom(gamma, g, aut, f, &values) {
        return Err(Error::NotCrossed);
    }
    Ok(CrossedHom::new(f.clone(), values, g.order()))
}

/// `β(f,g)(γ) = ρ(g(γ))·f(γ)`, i.e. `x ↦ f(γ)(x) · g(γ)⁻¹`, as permutations of `G`.
pub fn beta_map(gamma: &FiniteGroup, g: &FiniteGroup, aut: &AutGroupRecord, cg: &CrossedHom) -> Result<Vec<Permutation>> {
    if !is_crossed_hom(gamma, g, aut, cg.action(), cg.values()) {
        return Err(Error::NotCrossed);
    }
    Ok((0..gamma.order())
        .map(|x| {
            let ai = g.inv(cg.apply(x));
            let phi = aut.automorphism(cg.action().apply(x));
            Permutation::from_images_unchecked((0..g.order()).map(|y| g.mul(phi.apply(y), ai) as u32).collect())
        })
        .collect())
}

/// `h(f,g)(γ) = conj(g(γ))·f(γ)`, checked to be a homomorphism `Γ → Aut(G)`.
pub fn h_from_fg(gamma: &FiniteGroup, aut: &AutGroupRecord, cg: &CrossedHom) -> Result<Homomorphism> {
    let ag = aut.as_group();
    let images = (0..gamma.order())
        .map(|x| ag.mul(aut.conj(cg.apply(x)), cg.action().apply(x)) as u32)
        .collect();
    Homomorphism::checked(gamma, ag, images)
        .map_err(|_| Error::Inconsistency("h(f,g) is not a homomorphism".into()))
}

/// `π ∘ h = π ∘ f` in `Out(G)`.
pub fn in_hom_f(aut: &AutGroupRecord, f: &Homomorphism, h: &Homomorphism) -> bool {
    f.images.iter().zip(&h.images).all(|(&a, &b)| aut.same_outer_class(a as usize, b as usize))
}

/// `f(γ) = h(γ)` only at the identity.
pub fn is_fpf_pair(gamma: &FiniteGroup, f: &Homomorphism, h: &Homomorphism) -> bool {
    let e = gamma.identity();
    (0..gamma.order()).all(|x| x == e || f.images[x] != h.images[x])
}

/// The unique `g` with `h(f,g) = h`: `g(γ) = conj⁻¹(h(γ)·f(γ)⁻¹)`. Needs a
/// centerless `G` so that `conj` can be inverted.
pub fn g_from_fh(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    aut: &AutGroupRecord,
    f: &Homomorphism,
    h: &Homomorphism,
) -> Result<CrossedHom> {
    if !aut.conj_is_injective() {
        return Err(Error::NontrivialCenter);
    }
    let ag = aut.as_group();
    let values = (0..gamma.order())
        .map(|x| {
            let d = ag.mul(h.apply(x), ag.inv(f.apply(x)));
            aut.conj_preimage(d).map(|s| s as u32).ok_or(Error::NotInHomF)
        })
        .collect::<Result<Vec<u32>>>()?;
    crossed_hom(gamma, g, aut, f, values)
        .map_err(|_| Error::Inconsistency("conj⁻¹(h·f⁻¹) is not a crossed homomorphism".into()))
}

/// `Hom_f`: members of `homs` with the same image as `f` in `Out(G)`.
pub fn hom_f<'a>(aut: &AutGroupRecord, f: &Homomorphism, homs: &'a [Homomorphism]) -> Vec<&'a Homomorphism> {
    homs.iter().filter(|h| in_hom_f(aut, f, h)).collect()
}

/// `Hom_f°`: the members of `Hom_f` forming a fixed point free pair with `f`.
pub fn enumerate_hom_f_fpf(
    gamma: &FiniteGroup,
    aut: &AutGroupRecord,
    f: &Homomorphism,
    homs: &[Homomorphism],
) -> Vec<Homomorphism> {
    homs.iter()
        .filter(|h| in_hom_f(aut, f, h) && is_fpf_pair(gamma, f, h))
        .cloned()
        .collect()
}

/// Smallest member of the `Inn`-coset of each generator image.
fn outer_signature(gamma: &FiniteGroup, aut: &AutGroupRecord, inner: &[usize], h: &Homomorphism) -> Vec<usize> {
    let ag = aut.as_group();
    gamma
        .generators()
        .iter()
        .map(|&s| {
            let a = h.apply(s);
            inner.iter().map(|&i| ag.mul(i, a)).min().unwrap_or(a)
        })
        .collect()
}

/// Every ordered pair `(i, j)` of indices into `homs` with `homs[j] ∈ Hom_f°`
/// for `f = homs[i]`, in lexicographic order.
pub fn fpf_pairs(gamma: &FiniteGroup, aut: &AutGroupRecord, homs: &[Homomorphism]) -> Vec<(usize, usize)> {
    // Both maps are homomorphisms, so agreeing in Out(G) on generators suffices.
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let inner = aut.inner_indices();
    let keys: Vec<Vec<usize>> = homs.iter().map(|h| outer_signature(gamma, aut, &inner, h)).collect();
    for (i, k) in keys.iter().enumerate() {
        buckets.entry(k.clone()).or_default().push(i);
    }
    (0..homs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let bucket = &buckets[&keys[i]];
            bucket
                .iter()
                .filter(move |&&j| is_fpf_pair(gamma, &homs[i], &homs[j]))
                .map(move |&j| (i, j))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Images `f(Γ)` and `h(Γ)` are normal in `Aut(G)`; a necessary condition for
/// `β(f,g)(Γ)` to be normal in `Hol(G)`.
pub fn normal_prop_check(record: &RegularSubgroupRecord, aut: &AutGroupRecord) -> Result<bool> {
    let p = record.parameterization.as_ref().ok_or(Error::MissingParameterization)?;
    Ok(image_is_normal(aut, p.f()) && image_is_normal(aut, &p.h))
}

fn image_is_normal(aut: &AutGroupRecord, hom: &Homomorphism) -> bool {
    let ag = aut.as_group();
    let image = hom.image();
    ag.generators().iter().all(|&a| {
        let ai = ag.inv(a);
        image.iter().all(|&x| image.binary_search(&ag.mul(ag.mul(a, x), ai)).is_ok())
    })
}

/// Exhaustive comparison of `Z¹_f(Γ,G)` with `Hom_f(Γ, Aut(G))` over every `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub gamma: String,
    pub group: String,
    pub actions: usize,
    pub crossed_total: usize,
    pub hom_f_total: usize,
    pub injective_total: usize,
    pub fpf_total: usize,
    /// `g ↦ h(f,g)` is a bijection `Z¹_f → Hom_f` for every `f`.
    pub bijective: bool,
    /// It restricts to a bijection `Z¹_f° → Hom_f°`.
    pub restricts: bool,
    /// `g(γ₁) = g(γ₂) ⟺ h(γ₁⁻¹γ₂) = f(γ₁⁻¹γ₂)` on every pair.
    pub injectivity_transfer: bool,
    /// `β(f,g)` is a homomorphism with regular image exactly when `g` is bijective.
    pub beta_consistent: bool,
    /// `g_from_fh` inverts `h_from_fg`.
    pub round_trip: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.restricts && self.injectivity_transfer && self.beta_consistent && self.round_trip
    }
}

// β as one flat table; `cg` was already verified by the caller.
fn beta_consistent(gamma: &FiniteGroup, g: &FiniteGroup, aut: &AutGroupRecord, cg: &CrossedHom) -> bool {
    let (n, m) = (gamma.order(), g.order());
    let mut beta = vec![0usize; n * m];
    for x in 0..n {
        let (phi, ai) = (cg.action().apply(x), g.inv(cg.apply(x)));
        for y in 0..m {
            beta[x * m + y] = g.mul(aut.apply(phi, y), ai);
        }
    }
    let is_hom = (0..n).all(|a| {
        gamma.generators().iter().all(|&s| {
            let (sa, s, a) = (gamma.mul(s, a) * m, s * m, a * m);
            (0..m).all(|y| beta[sa + y] == beta[s + beta[a + y]])
        })
    });
    let mut at_one = vec![false; m];
    for x in 0..n {
        at_one[beta[x * m + g.identity()]] = true;
    }
    let regular = n == m && at_one.iter().all(|&b| b);
    is_hom && regular == cg.is_bijective()
}

/// Verifies the correspondence `g ↦ h(f,g)` for every action `f`. `G` must be centerless.
pub fn bijection_check(gamma: &FiniteGroup, g: &FiniteGroup, aut: &AutGroupRecord, budget: &Budget) -> Result<BijectionReport> {
    if !aut.conj_is_injective() {
        return Err(Error::NontrivialCenter);
    }
    let homs = enumerate_homomorphisms(gamma, aut.as_group(), budget)?;
    let mut report = BijectionReport {
        gamma: gamma.name().to_string(),
        group: g.name().to_string(),
        actions: homs.len(),
        bijective: true,
        restricts: true,
        injectivity_transfer: true,
        beta_consistent: true,
        round_trip: true,
        ..Default::default()
    };
    for f in &homs {
        let z = enumerate_crossed_homs(gamma, g, aut, f, false, budget)?;
        let mut target: Vec<&Homomorphism> = hom_f(aut, f, &homs);
        target.sort();
        let mut fpf: Vec<Homomorphism> = enumerate_hom_f_fpf(gamma, aut, f, &homs);
        fpf.sort();
        report.crossed_total += z.len();
        report.hom_f_total += target.len();
        report.fpf_total += fpf.len();

        let mut images = Vec::with_capacity(z.len());
        let mut injective_images = Vec::new();
        for cg in &z {
            let h = h_from_fg(gamma, aut, cg)?;
            report.round_trip &= g_from_fh(gamma, g, aut, f, &h)?.values() == cg.values();
            report.injectivity_transfer &= (0..gamma.order()).all(|a| {
                let ai = gamma.inv(a);
                (0..gamma.order()).all(|b| {
                    let d = gamma.mul(ai, b);
                    (cg.apply(a) == cg.apply(b)) == (h.apply(d) == f.apply(d))
                })
            });
            report.beta_consistent &= beta_consistent(gamma, g, aut, cg);
            if cg.is_injective() {
                report.injective_total += 1;
                injective_images.push(h.clone());
            }
            images.push(h);
        }
        images.sort();
        injective_images.sort();
        let distinct = images.windows(2).all(|w| w[0] != w[1]);
        report.bijective &= distinct && images.iter().eq(target.iter().copied());
        report.restricts &= injective_images == fpf;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphism_group, make_named_group};

    fn setup(name: &str) -> (FiniteGroup, AutGroupRecord) {
        let g = make_named_group(name).unwrap();
        let a = automorphism_group(&g, &Budget::default()).unwrap();
        (g, a)
    }

    fn identity_map(g: &FiniteGroup) -> Vec<u32> {
        (0..g.order() as u32).collect()
    }

    fn inner_action(g: &FiniteGroup, aut: &AutGroupRecord) -> Homomorphism {
        Homomorphism::new((0..g.order()).map(|x| aut.conj(x) as u32).collect())
    }

    // Oracle: all |G|^|Γ| maps checked against the cocycle law directly.
    fn brute_crossed(gamma: &FiniteGroup, g: &FiniteGroup, aut: &AutGroupRecord, f: &Homomorphism) -> Vec<Vec<u32>> {
        let (n, m) = (gamma.order(), g.order());
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let mut c = code;
            let vals: Vec<u32> = (0..n)
                .map(|_| {
                    let v = (c % m) as u32;
                    c /= m;
                    v
                })
                .collect();
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    vals[gamma.mul(a, b)] as usize
                        == g.mul(vals[a] as usize, aut.apply(f.apply(a), vals[b] as usize))
                })
            });
            if ok {
                out.push(vals);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn homomorphism_enumeration() {
        let b = Budget::default();
        let c2 = make_named_group("C2").unwrap();
        let c3 = make_named_group("C3").unwrap();
        let s3 = make_named_group("S3").unwrap();
        assert_eq!(enumerate_homomorphisms(&c2, &c3, &b).unwrap().len(), 1);
        assert_eq!(enumerate_homomorphisms(&c2, &c2, &b).unwrap().len(), 2);
        let homs = enumerate_homomorphisms(&s3, &s3, &b).unwrap();
        assert_eq!(homs.len(), 10);
        assert_eq!(homs.iter().filter(|h| h.is_trivial(&s3)).count(), 1);
        assert_eq!(homs.iter().filter(|h| h.kernel(&s3).len() == 3).count(), 3);
        assert_eq!(homs.iter().filter(|h| h.is_injective()).count(), 6);
    }

    #[test]
    fn cocycle_law_examples() {
        let (s3, aut) = setup("S3");
        let trivial = Homomorphism::trivial(&s3, aut.as_group());
        let ones = vec![s3.identity() as u32; 6];
        assert!(is_crossed_hom(&s3, &s3, &aut, &inner_action(&s3, &aut), &ones));
        // With trivial action the cocycle law is the homomorphism law.
        for h in enumerate_homomorphisms(&s3, &s3, &Budget::default()).unwrap() {
            assert!(is_crossed_hom(&s3, &s3, &aut, &trivial, h.images()));
        }
        // For the conjugation action the crossed homomorphism is inversion, not the identity:
        // γ·conj(γ)(δ) = γ²δγ⁻¹ differs from γδ once γ is not central.
        let inversion: Vec<u32> = (0..6).map(|x| s3.inv(x) as u32).collect();
        assert!(is_crossed_hom(&s3, &s3, &aut, &inner_action(&s3, &aut), &inversion));
        assert!(!is_crossed_hom(&s3, &s3, &aut, &inner_action(&s3, &aut), &identity_map(&s3)));
        assert!(is_crossed_hom(&s3, &s3, &aut, &trivial, &identity_map(&s3)));
        let mut broken = identity_map(&s3);
        broken.swap(1, 2);
        assert!(!is_crossed_hom(&s3, &s3, &aut, &trivial, &broken));
    }

    #[test]
    fn crossed_enumeration_matches_exhaustive_maps() {
        let b = Budget::default();
        for (gn, name) in [("C2", "C2"), ("S3", "S3"), ("C6", "S3"), ("C3", "C2xC2"), ("C4", "C2xC2")] {
            let gamma = make_named_group(gn).unwrap();
            let (g, aut) = setup(name);
            for f in enumerate_homomorphisms(&gamma, aut.as_group(), &b).unwrap() {
                let mut fast: Vec<Vec<u32>> = enumerate_crossed_homs(&gamma, &g, &aut, &f, false, &b)
                    .unwrap()
                    .into_iter()
                    .map(|c| c.values().to_vec())
                    .collect();
                fast.sort();
                assert_eq!(fast, brute_crossed(&gamma, &g, &aut, &f), "{gn} → {name}");
                let bij = enumerate_crossed_homs(&gamma, &g, &aut, &f, true, &b).unwrap();
                assert_eq!(bij.len(), fast.iter().filter(|v| CrossedHom::new(f.clone(), v.to_vec(), g.order()).bijective).count());
            }
        }
    }

    #[test]
    fn trivial_action_gives_homomorphisms() {
        let b = Budget::default();
        let (c2, aut) = setup("C2");
        let f = Homomorphism::trivial(&c2, aut.as_group());
        let z = enumerate_crossed_homs(&c2, &c2, &aut, &f, false, &b).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.iter().filter(|c| c.is_bijective()).count(), 1);
        let (s3, aut3) = setup("S3");
        let f3 = Homomorphism::trivial(&s3, aut3.as_group());
        assert_eq!(enumerate_crossed_homs(&s3, &s3, &aut3, &f3, false, &b).unwrap().len(), 10);
        let inner = inner_action(&s3, &aut3);
        let bij = enumerate_crossed_homs(&s3, &s3, &aut3, &inner, true, &b).unwrap();
        let inversion: Vec<u32> = (0..6).map(|x| s3.inv(x) as u32).collect();
        assert!(bij.iter().any(|c| c.values() == inversion.as_slice()));
        // Oracle count: |Z¹_f*| = |Hom_f°| for this f, by the exhaustive map scan.
        let brute = brute_crossed(&s3, &s3, &aut3, &inner);
        let brute_bij = brute.iter().filter(|v| CrossedHom::new(inner.clone(), v.to_vec(), 6).bijective).count();
        assert_eq!(bij.len(), brute_bij);
    }

    #[test]
    fn beta_images() {
        let (s3, aut) = setup("S3");
        let trivial = Homomorphism::trivial(&s3, aut.as_group());
        let id = crossed_hom(&s3, &s3, &aut, &trivial, identity_map(&s3)).unwrap();
        let beta = beta_map(&s3, &s3, &aut, &id).unwrap();
        for (x, b) in beta.iter().enumerate() {
            assert_eq!(*b, s3.right_regular(x));
        }
        // g(γ) = γ⁻¹ with the inner action has h trivial and lands in λ(G).
        let inner = inner_action(&s3, &aut);
        let inv = crossed_hom(&s3, &s3, &aut, &inner, (0..6).map(|x| s3.inv(x) as u32).collect()).unwrap();
        assert!(h_from_fg(&s3, &aut, &inv).unwrap().is_trivial(aut.as_group()));
        let beta = beta_map(&s3, &s3, &aut, &inv).unwrap();
        for (x, b) in beta.iter().enumerate() {
            assert_eq!(*b, s3.left_regular(x));
        }
        // A sign-like homomorphism is not bijective; its image fails regularity.
        let homs = enumerate_homomorphisms(&s3, &s3, &Budget::default()).unwrap();
        let sign = homs.iter().find(|h| h.kernel(&s3).len() == 3).unwrap();
        let cg = crossed_hom(&s3, &s3, &aut, &trivial, sign.images().to_vec()).unwrap();
        assert!(!cg.is_bijective() && beta_consistent(&s3, &s3, &aut, &cg));
        let beta = beta_map(&s3, &s3, &aut, &cg).unwrap();
        let mut at_one: Vec<usize> = beta.iter().map(|p| p.apply(s3.identity())).collect();
        at_one.sort_unstable();
        at_one.dedup();
        assert!(at_one.len() < 6);
        let bad = CrossedHom::new(trivial.clone(), { let mut v = identity_map(&s3); v.swap(1, 2); v }, 6);
        assert!(matches!(beta_map(&s3, &s3, &aut, &bad), Err(Error::NotCrossed)));
    }

    #[test]
    fn h_and_g_round_trip_on_s3() {
        let b = Budget::default();
        let (s3, aut) = setup("S3");
        let trivial = Homomorphism::trivial(&s3, aut.as_group());
        let ones = crossed_hom(&s3, &s3, &aut, &trivial, vec![0; 6]).unwrap();
        assert_eq!(h_from_fg(&s3, &aut, &ones).unwrap(), trivial);
        let id = crossed_hom(&s3, &s3, &aut, &trivial, identity_map(&s3)).unwrap();
        let h = h_from_fg(&s3, &aut, &id).unwrap();
        assert_eq!(h, inner_action(&s3, &aut));
        assert_eq!(g_from_fh(&s3, &s3, &aut, &trivial, &h).unwrap().values(), identity_map(&s3).as_slice());
        assert!(g_from_fh(&s3, &s3, &aut, &trivial, &trivial).unwrap().values().iter().all(|&v| v == 0));
        for f in enumerate_homomorphisms(&s3, aut.as_group(), &b).unwrap() {
            for cg in enumerate_crossed_homs(&s3, &s3, &aut, &f, false, &b).unwrap() {
                let h = h_from_fg(&s3, &aut, &cg).unwrap();
                assert!(in_hom_f(&aut, &f, &h));
                assert_eq!(g_from_fh(&s3, &s3, &aut, &f, &h).unwrap(), cg);
                if cg.is_bijective() {
                    assert!(is_fpf_pair(&s3, &f, &h));
                }
            }
        }
    }

    #[test]
    fn g_from_fh_errors() {
        let (c6, aut) = setup("C6");
        let f = Homomorphism::trivial(&c6, aut.as_group());
        assert!(matches!(g_from_fh(&c6, &c6, &aut, &f, &f), Err(Error::NontrivialCenter)));
        let (a4, aut_a4) = setup("A4");
        let c2 = make_named_group("C2").unwrap();
        let f = Homomorphism::trivial(&c2, aut_a4.as_group());
        let outer = (0..aut_a4.order())
            .find(|&i| !aut_a4.is_inner(i) && aut_a4.as_group().element_order(i) == 2)
            .unwrap();
        let mut images = vec![aut_a4.identity() as u32; 2];
        images[1 - c2.identity()] = outer as u32;
        let h = Homomorphism::checked(&c2, aut_a4.as_group(), images).unwrap();
        assert!(matches!(g_from_fh(&c2, &a4, &aut_a4, &f, &h), Err(Error::NotInHomF)));
    }

    #[test]
    fn hom_f_fpf_examples() {
        let b = Budget::default();
        let (c1, aut) = setup("C1");
        let homs = enumerate_homomorphisms(&c1, aut.as_group(), &b).unwrap();
        assert_eq!(enumerate_hom_f_fpf(&c1, &aut, &homs[0], &homs).len(), 1);

        let (a5, aut5) = setup("A5");
        let homs = enumerate_homomorphisms(&a5, aut5.as_group(), &b).unwrap();
        let inner = inner_action(&a5, &aut5);
        let fpf = enumerate_hom_f_fpf(&a5, &aut5, &inner, &homs);
        let z = enumerate_crossed_homs(&a5, &a5, &aut5, &inner, true, &b).unwrap();
        assert_eq!(fpf.len(), z.len());
    }

    #[test]
    fn pair_count_reproduces_h2_of_s5() {
        let (s5, aut) = setup("S5");
        let homs = enumerate_homomorphisms(&s5, aut.as_group(), &Budget::default()).unwrap();
        assert_eq!(homs.len(), 146);
        let pairs = fpf_pairs(&s5, &aut, &homs);
        assert_eq!(pairs.len() % aut.order(), 0);
        assert_eq!(pairs.len() / aut.order(), 32);
        // Out(S5) is trivial, so the bucketing must not have dropped pairs.
        let slow: usize = homs.iter().map(|f| enumerate_hom_f_fpf(&s5, &aut, f, &homs).len()).sum();
        assert_eq!(slow, pairs.len());
    }

    #[test]
    fn bijection_on_s3() {
        let (s3, aut) = setup("S3");
        for gn in ["S3", "C6"] {
            let gamma = make_named_group(gn).unwrap();
            let r = bijection_check(&gamma, &s3, &aut, &Budget::default()).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.crossed_total, r.hom_f_total);
            assert_eq!(r.injective_total, r.fpf_total);
        }
    }
}
