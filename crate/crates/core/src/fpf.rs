//! Fixed point free endomorphisms: brute force, the prime-index kernel count,
//! the closed formula for almost simple groups and the symmetric-group formula
//! for `#H₂(Sₙ)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::crossed::{enumerate_homomorphisms, fpf_pairs, Homomorphism};
use crate::error::{Error, Result};
use crate::groups::{automorphism_group, classify_almost_simple, count_elements_of_order, AutGroupRecord, FiniteGroup};
use crate::holomorph::{enumerate_H2, HolomorphContext};
use crate::perm::{closure_indices, Permutation};
use crate::search::{order_candidates, HomRule, Search};
use crate::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Brute,
    Formula,
}

/// Endomorphisms with a given kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBucket {
    pub kernel: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisChecks {
    pub almost_simple: Option<bool>,
    pub socle_index: Option<usize>,
    pub socle_index_prime: Option<bool>,
    /// `Inn(G)` is the only subgroup of `Aut(G)` isomorphic to `G`.
    pub unique_subgroup_iso_to_g: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpfCountReport {
    pub group: String,
    pub total: u64,
    /// Buckets in increasing kernel order.
    pub by_kernel: Vec<KernelBucket>,
    pub method: CountMethod,
    pub hypothesis_checks: HypothesisChecks,
}

impl FpfCountReport {
    pub fn bucket(&self, kernel_order: usize) -> u64 {
        self.by_kernel.iter().filter(|b| b.kernel.len() == kernel_order).map(|b| b.count).sum()
    }
}

/// `f(σ) = σ` only for `σ = 1`.
pub fn is_fixed_point_free(g: &FiniteGroup, f: &Homomorphism) -> bool {
    (0..g.order()).all(|x| x == g.identity() || f.apply(x) != x)
}

/// Some automorphism of `g` fixes only the identity.
pub fn has_fpf_automorphism(g: &FiniteGroup, aut: &AutGroupRecord) -> bool {
    aut.automorphisms()
        .iter()
        .any(|p| (0..g.order()).all(|x| x == g.identity() || p.apply(x) != x))
}

/// Counts `End_fpf(G)` by enumerating `End(G)`.
pub fn end_fpf_bruteforce(g: &FiniteGroup, budget: &Budget) -> Result<FpfCountReport> {
    let homs = enumerate_homomorphisms(g, g, budget)?;
    let mut buckets: BTreeMap<(usize, Vec<usize>), u64> = BTreeMap::new();
    for f in homs.iter().filter(|f| is_fixed_point_free(g, f)) {
        let kernel = f.kernel(g);
        *buckets.entry((kernel.len(), kernel)).or_default() += 1;
    }
    let by_kernel: Vec<KernelBucket> =
        buckets.into_iter().map(|((_, kernel), count)| KernelBucket { kernel, count }).collect();
    Ok(FpfCountReport {
        group: g.name().to_string(),
        total: by_kernel.iter().map(|b| b.count).sum(),
        by_kernel,
        method: CountMethod::Brute,
        hypothesis_checks: HypothesisChecks::default(),
    })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Outcome of the construction for one `(H, σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelImageCount {
    pub p: usize,
    pub sigma_in_h: bool,
    /// Fixed point free `f` with `ker f = H` and `f(G) = ⟨σ⟩`.
    pub count: usize,
    /// `p − 1` if `σ ∈ H`, else `p − 2`.
    pub predicted: usize,
}

impl KernelImageCount {
    pub fn matches(&self) -> bool {
        self.count == self.predicted
    }
}

/// Builds the `p − 1` maps `f_k(τʲh) = σ^{kj}` (`1 ≤ k < p`) for a normal `H` of
/// prime index `p`, a fixed `τ ∉ H` and `σ` of order `p`, and counts the fixed
/// point free ones.
pub fn kernel_image_count(g: &FiniteGroup, h_sub: &[usize], sigma: usize) -> Result<KernelImageCount> {
    let mut h: Vec<usize> = h_sub.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() || !g.order().is_multiple_of(h.len()) || closure_indices(g, &h) != h {
        return Err(Error::InvalidArgument("H is not a subgroup".into()));
    }
    let normal = g.generators().iter().all(|&s| {
        let si = g.inv(s);
        h.iter().all(|&x| h.binary_search(&g.mul(g.mul(s, x), si)).is_ok())
    });
    if !normal {
        return Err(Error::InvalidArgument("H is not normal".into()));
    }
    let p = g.order() / h.len();
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("index {p} of H is not prime")));
    }
    if g.element_order(sigma) != p {
        return Err(Error::InvalidArgument(format!("σ does not have order {p}")));
    }
    let in_h = |x: usize| h.binary_search(&x).is_ok();
    let tau = (0..g.order()).find(|&x| !in_h(x)).expect("proper subgroup");
    // coset[x] = j with x ∈ τʲH.
    let mut coset = vec![usize::MAX; g.order()];
    let mut t = g.identity();
    for j in 0..p {
        for &x in &h {
            coset[g.mul(t, x)] = j;
        }
        t = g.mul(tau, t);
    }
    let mut count = 0;
    for k in 1..p {
        let images: Vec<u32> = (0..g.order()).map(|x| g.pow(sigma, k * coset[x]) as u32).collect();
        let f = Homomorphism::checked(g, g, images)
            .map_err(|_| Error::Inconsistency("f_k is not a homomorphism".into()))?;
        if is_fixed_point_free(g, &f) {
            count += 1;
        }
    }
    let sigma_in_h = in_h(sigma);
    let predicted = if sigma_in_h { p - 1 } else { p - 2 };
    Ok(KernelImageCount { p, sigma_in_h, count, predicted })
}

/// Image sets of all injective homomorphisms `G → Aut(G)`, deduplicated.
pub fn subgroups_of_aut_isomorphic_to(g: &FiniteGroup, aut: &AutGroupRecord, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let target = aut.as_group();
    let candidates = order_candidates(g, target, true);
    let maps = Search::new(g, HomRule(target), candidates, true)
        .all(budget, &format!("embedding {} into Aut({})", g.name(), g.name()))?;
    let mut images: Vec<Vec<usize>> = maps
        .into_iter()
        .map(|m| {
            let mut v: Vec<usize> = m.into_iter().map(|x| x as usize).collect();
            v.sort_unstable();
            v
        })
        .collect();
    images.sort();
    images.dedup();
    Ok(images)
}

fn unique_subgroup_hypothesis(g: &FiniteGroup, aut: &AutGroupRecord, budget: &Budget) -> Result<(bool, Option<Vec<usize>>)> {
    let inner = aut.inner_indices();
    let images = subgroups_of_aut_isomorphic_to(g, aut, budget)?;
    let holds = images.len() == 1 && images[0] == inner;
    Ok((holds, images.into_iter().find(|s| *s != inner)))
}

/// `1 + #{σ ∈ Soc(G) of order p} + (p−2)/(p−1)·#{σ ∈ G∖Soc(G) of order p}` for an
/// almost simple `G` whose socle has prime index `p` and with `Inn(G)` the only
/// copy of `G` in `Aut(G)`. Refuses to evaluate when any hypothesis fails.
pub fn end_fpf_formula(g: &FiniteGroup, budget: &Budget) -> Result<FpfCountReport> {
    let class = classify_almost_simple(g)?;
    let mut checks = HypothesisChecks {
        almost_simple: Some(class.almost_simple),
        socle_index: Some(class.socle_index),
        socle_index_prime: Some(is_prime(class.socle_index)),
        unique_subgroup_iso_to_g: None,
    };
    if !class.almost_simple {
        return Err(Error::FormulaInapplicable(format!("{} is not almost simple", g.name())));
    }
    let p = class.socle_index;
    if !is_prime(p) {
        return Err(Error::FormulaInapplicable(format!("socle index {p} of {} is not prime", g.name())));
    }
    let aut = automorphism_group(g, budget)?;
    let (unique, _) = unique_subgroup_hypothesis(g, &aut, budget)?;
    checks.unique_subgroup_iso_to_g = Some(unique);
    if !unique {
        return Err(Error::FormulaInapplicable(format!("Aut({}) has another subgroup isomorphic to it", g.name())));
    }
    let socle = &class.socle;
    let outside: Vec<usize> = (0..g.order()).filter(|x| socle.binary_search(x).is_err()).collect();
    let inside = count_elements_of_order(g, p, Some(socle)) as u64;
    let out = count_elements_of_order(g, p, Some(&outside)) as u64;
    let p64 = p as u64;
    if !((p64 - 2) * out).is_multiple_of(p64 - 1) {
        return Err(Error::Inconsistency(format!("(p−2)·{out} is not divisible by p−1 = {}", p - 1)));
    }
    let with_socle_kernel = inside + (p64 - 2) * out / (p64 - 1);
    let by_kernel = vec![
        KernelBucket { kernel: vec![g.identity()], count: 0 },
        KernelBucket { kernel: socle.clone(), count: with_socle_kernel },
        KernelBucket { kernel: (0..g.order()).collect(), count: 1 },
    ];
    Ok(FpfCountReport {
        group: g.name().to_string(),
        total: 1 + with_socle_kernel,
        by_kernel,
        method: CountMethod::Formula,
        hypothesis_checks: checks,
    })
}

/// `#H₂(Sₙ) = 2·(1 + #{σ ∈ Aₙ of order 2})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnFormula {
    pub n: usize,
    /// From the cycle-type sum `Σ_{k even ≥ 2} n!/(k!·2ᵏ·(n−2k)!)`.
    pub involutions_in_an: u128,
    /// From an exhaustive scan of `Sₙ`, when `n ≤ 8`.
    pub involutions_by_scan: Option<u128>,
    pub value: u128,
}

pub const SN_SCAN_LIMIT: usize = 8;

fn involutions_in_an(n: usize) -> Option<u128> {
    let fact = |m: usize| (1..=m as u128).try_fold(1u128, |a, b| a.checked_mul(b));
    let mut total: u128 = 0;
    for k in (2..=n / 2).step_by(2) {
        let num = fact(n)?;
        let den = fact(k)?.checked_mul(1u128.checked_shl(k as u32)?)?.checked_mul(fact(n - 2 * k)?)?;
        total = total.checked_add(num / den)?;
    }
    Some(total)
}

/// Even permutations of order 2 in `Sₙ`, by iterating all `n!` permutations.
fn scan_involutions_in_an(n: usize) -> u128 {
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut count = 0;
    loop {
        let p = Permutation::from_images_unchecked(images.clone());
        if p.order() == 2 && p.is_even() {
            count += 1;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
            return count;
        };
        let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).expect("successor exists");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
}

pub fn h2_sn_formula(n: usize) -> Result<SnFormula> {
    if n < 5 {
        return Err(Error::FormulaInapplicable(format!("n = {n} is outside n ≥ 5")));
    }
    let sum = involutions_in_an(n).ok_or_else(|| Error::InvalidArgument(format!("n = {n} overflows")))?;
    let scan = (n <= SN_SCAN_LIMIT).then(|| scan_involutions_in_an(n));
    if scan.is_some_and(|s| s != sum) {
        return Err(Error::Inconsistency(format!("involution counts in A{n} disagree")));
    }
    let value = sum
        .checked_add(1)
        .and_then(|v| v.checked_mul(2))
        .ok_or_else(|| Error::InvalidArgument(format!("n = {n} overflows")))?;
    Ok(SnFormula { n, involutions_in_an: sum, involutions_by_scan: scan, value })
}

/// `#H₂(G) = #{(f, h) : h ∈ Hom_f°} / |Aut(G)|` for centerless `G`, without
/// building `Hol(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub group: String,
    pub homomorphisms: usize,
    pub fpf_pairs: u64,
    pub aut_order: u64,
    pub h2: u64,
}

pub fn count_h2_by_pairs(g: &FiniteGroup, budget: &Budget) -> Result<PairCount> {
    let aut = automorphism_group(g, budget)?;
    pair_count(g, &aut, budget)
}

fn pair_count(g: &FiniteGroup, aut: &AutGroupRecord, budget: &Budget) -> Result<PairCount> {
    if !aut.conj_is_injective() {
        return Err(Error::NontrivialCenter);
    }
    let homs = enumerate_homomorphisms(g, aut.as_group(), budget)?;
    let pairs = fpf_pairs(g, aut, &homs).len() as u64;
    let aut_order = aut.order() as u64;
    if !pairs.is_multiple_of(aut_order) {
        return Err(Error::Inconsistency(format!("{pairs} pairs is not a multiple of |Aut| = {aut_order}")));
    }
    Ok(PairCount { group: g.name().to_string(), homomorphisms: homs.len(), fpf_pairs: pairs, aut_order, h2: pairs / aut_order })
}

/// Largest holomorph that [`verify_theorem2_count`] materializes to cross-check
/// the pair count against an explicit list of subgroups.
pub const HOL_CROSSCHECK_LIMIT: usize = 200_000;

/// The routes to `#H₂(G) = 2·#End_fpf(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub group: String,
    pub hypothesis_holds: bool,
    /// A subgroup of `Aut(G)` isomorphic to `G` other than `Inn(G)`, as automorphism indices.
    pub witness: Option<Vec<usize>>,
    pub pairs: PairCount,
    /// Size of the explicit `H₂` list, when `Hol(G)` was small enough to build.
    pub h2_subgroups: Option<usize>,
    pub brute: FpfCountReport,
    pub formula: Option<FpfCountReport>,
    /// Why the formula was not evaluated.
    pub formula_note: Option<String>,
}

impl Theorem2Report {
    pub fn h2_count(&self) -> u64 {
        self.pairs.h2
    }

    /// Every route that ran gives `#H₂ = 2·#End_fpf`.
    pub fn agrees(&self) -> bool {
        let h2 = self.h2_count();
        self.hypothesis_holds
            && h2 == 2 * self.brute.total
            && self.h2_subgroups.is_none_or(|n| n as u64 == h2)
            && self.formula.as_ref().is_none_or(|f| f.total == self.brute.total)
    }
}

pub fn verify_theorem2_count(g: &FiniteGroup, budget: &Budget) -> Result<Theorem2Report> {
    if !classify_almost_simple(g)?.almost_simple {
        return Err(Error::NotAlmostSimple);
    }
    let aut = automorphism_group(g, budget)?;
    let (hypothesis_holds, witness) = unique_subgroup_hypothesis(g, &aut, budget)?;
    let pairs = pair_count(g, &aut, budget)?;
    let hol_order = g.order().saturating_mul(aut.order());
    let h2_subgroups = if hol_order <= HOL_CROSSCHECK_LIMIT.min(budget.max_elements) {
        let ctx = HolomorphContext::build(g, budget)?;
        Some(enumerate_H2(&ctx, budget)?.len())
    } else {
        None
    };
    let brute = end_fpf_bruteforce(g, budget)?;
    let (formula, formula_note) = match end_fpf_formula(g, budget) {
        Ok(r) => (Some(r), None),
        Err(Error::FormulaInapplicable(why)) => (None, Some(why)),
        Err(e) => return Err(e),
    };
    Ok(Theorem2Report { group: g.name().to_string(), hypothesis_holds, witness, pairs, h2_subgroups, brute, formula, formula_note })
}
