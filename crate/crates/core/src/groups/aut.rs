use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, Permutation};
use crate::search::{HomRule, Search};
use crate::Budget;

/// `Aut(G)` as a list of permutations of `G`'s element indices, together with
/// its group structure and the inner automorphisms.
#[derive(Clone, Debug)]
pub struct AutGroupRecord {
    automorphisms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    as_group: FiniteGroup,
    inner: Vec<bool>,
    conj_map: Vec<usize>,
    conj_preimage: Vec<Option<usize>>,
}

impl AutGroupRecord {
    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn automorphisms(&self) -> &[Permutation] {
        &self.automorphisms
    }

    pub fn automorphism(&self, i: usize) -> &Permutation {
        &self.automorphisms[i]
    }

    /// `φ_i(x)`.
    #[inline]
    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.automorphisms[i].apply(x)
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Automorphisms as an abstract group; index `i` is `automorphism(i)` and the
    /// product is composition, `(φψ)(x) = φ(ψ(x))`.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.as_group
    }

    pub fn is_inner(&self, i: usize) -> bool {
        self.inner[i]
    }

    pub fn inner_indices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.inner[i]).collect()
    }

    /// Index of `conj(σ) = λ(σ)ρ(σ) = (x ↦ σxσ⁻¹)`.
    pub fn conj(&self, sigma: usize) -> usize {
        self.conj_map[sigma]
    }

    /// Smallest `σ` with `conj(σ) = automorphism(i)`, if `i` is inner.
    pub fn conj_preimage(&self, i: usize) -> Option<usize> {
        self.conj_preimage[i]
    }

    /// `conj` is injective exactly when the center is trivial.
    pub fn conj_is_injective(&self) -> bool {
        self.conj_map.len() == self.inner.iter().filter(|&&b| b).count()
    }

    pub fn conj_map(&self) -> &[usize] {
        &self.conj_map
    }

    /// `π(a) = π(b)` in `Out(G)`, i.e. `a·b⁻¹` is inner.
    pub fn same_outer_class(&self, a: usize, b: usize) -> bool {
        let g = &self.as_group;
        self.inner[g.mul(a, g.inv(b))]
    }

    pub fn identity(&self) -> usize {
        self.as_group.identity()
    }
}

fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let cc = conjugacy_classes(g);
    (0..g.order()).map(|x| cc.classes[cc.class_of[x]].len()).collect()
}

/// Candidates preserving element order and conjugacy-class size.
fn iso_candidates(from: &FiniteGroup, to: &FiniteGroup) -> Vec<Vec<usize>> {
    let (cs_from, cs_to) = (class_sizes(from), class_sizes(to));
    from.generators()
        .iter()
        .map(|&g| {
            (0..to.order())
                .filter(|&y| to.element_order(y) == from.element_order(g) && cs_to[y] == cs_from[g])
                .collect()
        })
        .collect()
}

/// Cayley table of the automorphisms; an automorphism is keyed by its values on
/// the generators, so a product costs one lookup per generator.
fn aut_table(g: &FiniteGroup, automorphisms: &[Permutation]) -> Result<FiniteGroup> {
    let gens = g.generators();
    let key = |f: &dyn Fn(usize) -> usize| -> Vec<u32> { gens.iter().map(|&s| f(s) as u32).collect() };
    let index: HashMap<Vec<u32>, usize> =
        automorphisms.iter().enumerate().map(|(i, p)| (key(&|s| p.apply(s)), i)).collect();
    let n = automorphisms.len();
    let mut table = vec![0u32; n * n];
    for (i, p) in automorphisms.iter().enumerate() {
        for (j, q) in automorphisms.iter().enumerate() {
            let k = index
                .get(&key(&|s| p.apply(q.apply(s))))
                .ok_or_else(|| Error::Inconsistency(format!("Aut({}) is not closed", g.name())))?;
            table[i * n + j] = *k as u32;
        }
    }
    let all: Vec<usize> = (1..n).collect();
    let group = FiniteGroup::from_table(format!("Aut({})", g.name()), n, table, all, None)?;
    Ok(group.with_small_generators())
}

/// The complete automorphism group, found by backtracking over generator images.
pub fn automorphism_group(g: &FiniteGroup, budget: &Budget) -> Result<AutGroupRecord> {
    let candidates = iso_candidates(g, g);
    let maps = Search::new(g, HomRule(g), candidates, true)
        .all(budget, &format!("enumerating Aut({})", g.name()))?;
    let mut automorphisms: Vec<Permutation> =
        maps.into_iter().map(Permutation::from_images_unchecked).collect();
    automorphisms.sort_unstable();
    automorphisms.dedup();
    let as_group = aut_table(g, &automorphisms)?;
    let index: HashMap<Permutation, usize> =
        automorphisms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut inner = vec![false; automorphisms.len()];
    let mut conj_map = Vec::with_capacity(g.order());
    let mut conj_preimage = vec![None; automorphisms.len()];
    for sigma in 0..g.order() {
        let si = g.inv(sigma);
        let conj = Permutation::from_images_unchecked(
            (0..g.order()).map(|x| g.mul(g.mul(sigma, x), si) as u32).collect(),
        );
        let i = *index
            .get(&conj)
            .ok_or_else(|| Error::Inconsistency(format!("inner automorphism of {} missing", g.name())))?;
        inner[i] = true;
        conj_preimage[i].get_or_insert(sigma);
        conj_map.push(i);
    }
    Ok(AutGroupRecord { automorphisms, index, as_group, inner, conj_map, conj_preimage })
}

/// An isomorphism `from → to` as an image array, or `None` if the groups are
/// not isomorphic. The search order is canonical, so the witness is deterministic.
pub fn find_isomorphism(from: &FiniteGroup, to: &FiniteGroup) -> Option<Vec<u32>> {
    if from.order() != to.order() {
        return None;
    }
    let candidates = iso_candidates(from, to);
    Search::new(from, HomRule(to), candidates, true).first()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{center, make_named_group};

    fn aut(name: &str) -> (FiniteGroup, AutGroupRecord) {
        let g = make_named_group(name).unwrap();
        let a = automorphism_group(&g, &Budget::default()).unwrap();
        (g, a)
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(aut("C2").1.order(), 1);
        assert_eq!(aut("C1").1.order(), 1);
        assert_eq!(aut("C6").1.order(), 2);
        assert_eq!(aut("C2xC2").1.order(), 6);
        assert_eq!(aut("S3").1.order(), 6);
        assert_eq!(aut("D4").1.order(), 8);
        let (_, a5) = aut("A5");
        assert_eq!(a5.order(), 120);
        assert_eq!(a5.inner_indices().len(), 60);
        let (_, s5) = aut("S5");
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.inner_indices().len(), 120);
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms() {
        let (g, a) = aut("D4");
        for p in a.automorphisms() {
            let mut seen = vec![false; g.order()];
            for x in 0..g.order() {
                assert!(!std::mem::replace(&mut seen[p.apply(x)], true));
                for y in 0..g.order() {
                    assert_eq!(p.apply(g.mul(x, y)), g.mul(p.apply(x), p.apply(y)));
                }
            }
        }
    }

    #[test]
    fn inner_is_normal_and_matches_quotient_by_center() {
        for name in ["S3", "D4", "A4", "S4", "C2xS3"] {
            let (g, a) = aut(name);
            let ag = a.as_group();
            let inner = a.inner_indices();
            for &i in &inner {
                for x in 0..ag.order() {
                    assert!(a.is_inner(ag.mul(ag.mul(x, i), ag.inv(x))), "{name}");
                }
            }
            // Inn(G) ≅ G/Z(G): fibres of conj are exactly the cosets of Z(G).
            let z = center(&g);
            assert_eq!(inner.len() * z.len(), g.order(), "{name}");
            for s in 0..g.order() {
                for t in 0..g.order() {
                    let same = a.conj(s) == a.conj(t);
                    let coset = z.contains(&g.mul(g.inv(s), t));
                    assert_eq!(same, coset, "{name}");
                }
            }
        }
    }

    #[test]
    fn pgl25_is_isomorphic_to_s5() {
        let s5 = make_named_group("S5").unwrap();
        let pgl = make_named_group("PGL(2,5)").unwrap();
        let iso = find_isomorphism(&pgl, &s5).expect("PGL(2,5) ≅ S5");
        for x in 0..120 {
            for y in 0..120 {
                assert_eq!(iso[pgl.mul(x, y)] as usize, s5.mul(iso[x] as usize, iso[y] as usize));
            }
        }
        let a5 = make_named_group("A5").unwrap();
        let psl = make_named_group("PSL(2,5)").unwrap();
        assert!(find_isomorphism(&psl, &a5).is_some());
        assert!(find_isomorphism(&make_named_group("C6").unwrap(), &make_named_group("S3").unwrap()).is_none());
        assert!(find_isomorphism(&make_named_group("D3").unwrap(), &make_named_group("S3").unwrap()).is_some());
    }
}
