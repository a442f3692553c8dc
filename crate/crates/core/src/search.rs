//! Backtracking over generator images.
//!
//! A map out of a group is fixed by its values on the generators once a rule
//! says how to extend along `x ↦ s·x`. Generators are assigned one at a time;
//! after each assignment the map is propagated over the subgroup generated so
//! far and every edge is checked, which prunes inconsistent prefixes early.
//! Homomorphisms, isomorphisms and crossed homomorphisms all use this engine.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::Budget;

const UNSET: u32 = u32::MAX;

/// How a map extends from `x` to `generators[j] · x`.
pub(crate) trait StepRule: Sync {
    fn target_order(&self) -> usize;
    fn target_identity(&self) -> usize;
    /// Value at `s_j · x` given the value at `s_j` and the value at `x`.
    fn step(&self, gen_pos: usize, gen_value: usize, x_value: usize) -> usize;
}

/// Ordinary homomorphisms: `φ(s·x) = φ(s)·φ(x)`.
pub(crate) struct HomRule<'a>(pub &'a FiniteGroup);

impl StepRule for HomRule<'_> {
    fn target_order(&self) -> usize {
        self.0.order()
    }

    fn target_identity(&self) -> usize {
        self.0.identity()
    }

    #[inline]
    fn step(&self, _: usize, gen_value: usize, x_value: usize) -> usize {
        self.0.mul(gen_value, x_value)
    }
}

pub(crate) struct Search<'a, R: StepRule> {
    domain: &'a FiniteGroup,
    rule: R,
    candidates: Vec<Vec<usize>>,
    injective: bool,
    stages: Vec<Vec<usize>>,
}

fn stage_lists(domain: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = domain.generators();
    (0..gens.len())
        .map(|s| {
            let mut seen = FixedBitSet::with_capacity(domain.order());
            seen.insert(domain.identity());
            let mut list = vec![domain.identity()];
            let mut head = 0;
            while head < list.len() {
                let x = list[head];
                head += 1;
                for &g in &gens[..=s] {
                    let y = domain.mul(g, x);
                    if !seen.contains(y) {
                        seen.insert(y);
                        list.push(y);
                    }
                }
            }
            list
        })
        .collect()
}

impl<'a, R: StepRule> Search<'a, R> {
    /// `candidates[j]` lists the allowed values at `domain.generators()[j]`.
    pub(crate) fn new(domain: &'a FiniteGroup, rule: R, candidates: Vec<Vec<usize>>, injective: bool) -> Self {
        assert_eq!(candidates.len(), domain.generators().len());
        let stages = stage_lists(domain);
        Search { domain, rule, candidates, injective, stages }
    }

    fn initial(&self) -> Vec<u32> {
        let mut img = vec![UNSET; self.domain.order()];
        img[self.domain.identity()] = self.rule.target_identity() as u32;
        img
    }

    /// Propagates stage `s` values; false on any inconsistency.
    fn extend(&self, s: usize, img: &mut [u32]) -> bool {
        let gens = &self.domain.generators()[..=s];
        for &x in &self.stages[s] {
            let xv = img[x] as usize;
            for (j, &g) in gens.iter().enumerate() {
                let y = self.domain.mul(g, x);
                let v = self.rule.step(j, img[g] as usize, xv) as u32;
                if img[y] == UNSET {
                    img[y] = v;
                } else if img[y] != v {
                    return false;
                }
            }
        }
        if self.injective {
            let mut seen = FixedBitSet::with_capacity(self.rule.target_order());
            for &x in &self.stages[s] {
                let v = img[x] as usize;
                if seen.contains(v) {
                    return false;
                }
                seen.insert(v);
            }
        }
        true
    }

    fn try_assign(&self, s: usize, img: &[u32], cand: usize) -> Option<Vec<u32>> {
        let g = self.domain.generators()[s];
        if img[g] != UNSET && img[g] as usize != cand {
            return None;
        }
        let mut next = img.to_vec();
        next[g] = cand as u32;
        self.extend(s, &mut next).then_some(next)
    }

    fn dfs(
        &self,
        s: usize,
        img: Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        count: &AtomicUsize,
        limit: usize,
        abort: &AtomicBool,
    ) {
        if abort.load(Ordering::Relaxed) {
            return;
        }
        if s == self.candidates.len() {
            if count.fetch_add(1, Ordering::Relaxed) + 1 > limit {
                abort.store(true, Ordering::Relaxed);
                return;
            }
            out.push(img);
            return;
        }
        for &cand in &self.candidates[s] {
            if let Some(next) = self.try_assign(s, &img, cand) {
                self.dfs(s + 1, next, out, count, limit, abort);
            }
        }
    }

    /// Every map satisfying the rule, in candidate order. The number of results
    /// times the domain order is capped by the budget.
    pub(crate) fn all(&self, budget: &Budget, what: &str) -> Result<Vec<Vec<u32>>> {
        let limit = (budget.max_elements / self.domain.order().max(1)).max(1);
        let count = AtomicUsize::new(0);
        let abort = AtomicBool::new(false);
        let root = self.initial();
        let results: Vec<Vec<Vec<u32>>> = if self.candidates.is_empty() {
            vec![vec![root]]
        } else {
            self.candidates[0]
                .par_iter()
                .map(|&cand| {
                    let mut out = Vec::new();
                    if let Some(next) = self.try_assign(0, &root, cand) {
                        self.dfs(1, next, &mut out, &count, limit, &abort);
                    }
                    out
                })
                .collect()
        };
        if abort.load(Ordering::Relaxed) {
            return Err(Error::budget(what, budget.max_elements));
        }
        Ok(results.into_iter().flatten().collect())
    }

    /// First map in candidate order, if any.
    pub(crate) fn first(&self) -> Option<Vec<u32>> {
        fn go<R: StepRule>(search: &Search<'_, R>, s: usize, img: Vec<u32>) -> Option<Vec<u32>> {
            if s == search.candidates.len() {
                return Some(img);
            }
            search.candidates[s]
                .iter()
                .find_map(|&cand| search.try_assign(s, &img, cand).and_then(|next| go(search, s + 1, next)))
        }
        go(self, 0, self.initial())
    }
}

/// Candidate values for each generator: target elements whose order divides
/// (or, when `exact`, equals) the generator's order.
pub(crate) fn order_candidates(domain: &FiniteGroup, target: &FiniteGroup, exact: bool) -> Vec<Vec<usize>> {
    domain
        .generators()
        .iter()
        .map(|&g| {
            let k = domain.element_order(g);
            (0..target.order())
                .filter(|&y| {
                    let o = target.element_order(y);
                    if exact {
                        o == k
                    } else {
                        k.is_multiple_of(o)
                    }
                })
                .collect()
        })
        .collect()
}

/// Every homomorphism `domain → target`, as image arrays over domain indices.
pub fn homomorphisms(domain: &FiniteGroup, target: &FiniteGroup, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let candidates = order_candidates(domain, target, false);
    Search::new(domain, HomRule(target), candidates, false)
        .all(budget, &format!("enumerating Hom({}, {})", domain.name(), target.name()))
}
