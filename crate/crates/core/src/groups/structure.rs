use serde::{Deserialize, Serialize};

use super::{automorphism_group, FiniteGroup};
use crate::error::{Error, Result};
use crate::perm::{closure_indices, normal_subgroup_indices, Permutation};
use crate::Budget;

/// `{ z : z·x = x·z for all x }`, sorted.
pub fn center(g: &FiniteGroup) -> Vec<usize> {
    centralizer(g, g.generators())
}

/// Elements commuting with every element of `subset`.
pub fn centralizer(g: &FiniteGroup, subset: &[usize]) -> Vec<usize> {
    (0..g.order())
        .filter(|&z| subset.iter().all(|&x| g.mul(z, x) == g.mul(x, z)))
        .collect()
}

/// Number of elements of order exactly `m`, optionally restricted to `within`.
pub fn count_elements_of_order(g: &FiniteGroup, m: usize, within: Option<&[usize]>) -> usize {
    match within {
        Some(set) => set.iter().filter(|&&x| g.element_order(x) == m).count(),
        None => (0..g.order()).filter(|&x| g.element_order(x) == m).count(),
    }
}

/// Outcome of the socle-based almost-simple test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostSimpleClassification {
    /// All normal subgroups, sorted by order then elements.
    pub normal_subgroups: Vec<Vec<usize>>,
    pub minimal_normal_subgroups: Vec<Vec<usize>>,
    pub socle: Vec<usize>,
    pub socle_index: usize,
    /// The group itself is simple (non-trivial, only trivial and whole normal subgroups).
    pub simple: bool,
    pub socle_is_nonabelian_simple: bool,
    /// The centralizer of the socle is trivial.
    pub socle_self_centralizing: bool,
    pub almost_simple: bool,
    /// Every non-trivial normal subgroup contains the socle.
    pub every_normal_contains_socle: bool,
}

/// Computes the socle from the normal-subgroup lattice and decides whether the
/// group is almost simple, i.e. it has a unique minimal normal subgroup that is
/// non-abelian simple and self-centralizing (equivalently `Inn(T) ≤ G ≤ Aut(T)`).
pub fn classify_almost_simple(g: &FiniteGroup) -> Result<AlmostSimpleClassification> {
    let normal = normal_subgroup_indices(g);
    let nontrivial: Vec<&Vec<usize>> = normal.iter().filter(|n| n.len() > 1).collect();
    let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let minimal: Vec<Vec<usize>> = nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.len() < n.len() && is_subset(m, n)))
        .map(|n| (*n).clone())
        .collect();
    let socle = if minimal.is_empty() {
        vec![g.identity()]
    } else {
        let gens: Vec<usize> = minimal.iter().flatten().copied().collect();
        closure_indices(g, &gens)
    };
    let socle_index = g.order() / socle.len();
    let simple = g.order() > 1 && normal.len() == 2;
    let socle_is_nonabelian_simple = minimal.len() == 1 && {
        let t = g.subgroup("socle", &socle)?;
        !t.is_abelian() && normal_subgroup_indices(&t).len() == 2
    };
    let socle_self_centralizing = socle.len() > 1 && centralizer(g, &socle) == vec![g.identity()];
    let every_normal_contains_socle = nontrivial.iter().all(|n| is_subset(&socle, n));
    let almost_simple = socle_is_nonabelian_simple && socle_self_centralizing;
    Ok(AlmostSimpleClassification {
        normal_subgroups: normal,
        minimal_normal_subgroups: minimal,
        socle,
        socle_index,
        simple,
        socle_is_nonabelian_simple,
        socle_self_centralizing,
        almost_simple,
        every_normal_contains_socle,
    })
}

/// Evidence for the embedding `Aut(G) → Aut(T#)`, `θ ↦ θ|T#`, where `T#` is the socle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleEmbeddingWitness {
    pub group_order: usize,
    pub socle_order: usize,
    pub aut_order: usize,
    pub socle_aut_order: usize,
    /// Distinct automorphisms restrict to distinct automorphisms of the socle.
    pub restriction_injective: bool,
    /// `G → Inn(G) → Aut(G) → Aut(T#)` is injective, equals conjugation on `T#`,
    /// and on `T#` itself gives the inner automorphisms of `T#`.
    pub composition_is_inclusion: bool,
}

impl SocleEmbeddingWitness {
    pub fn holds(&self) -> bool {
        self.restriction_injective && self.composition_is_inclusion
    }
}

pub fn socle_embedding_check(g: &FiniteGroup, budget: &Budget) -> Result<SocleEmbeddingWitness> {
    let class = classify_almost_simple(g)?;
    if !class.almost_simple {
        return Err(Error::NotAlmostSimple);
    }
    let socle = &class.socle;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in socle.iter().enumerate() {
        pos[x] = i;
    }
    let t = g.subgroup("socle", socle)?;
    let aut_g = automorphism_group(g, budget)?;
    let aut_t = automorphism_group(&t, budget)?;

    let restrict = |apply: &dyn Fn(usize) -> usize| -> Result<usize> {
        let images: Vec<u32> = socle.iter().map(|&x| pos[apply(x)] as u32).collect();
        if images.contains(&u32::MAX) {
            return Err(Error::Inconsistency("socle is not characteristic".into()));
        }
        let p = Permutation::from_images(images)?;
        aut_t
            .position(&p)
            .ok_or_else(|| Error::Inconsistency("restriction is not an automorphism of the socle".into()))
    };

    let restricted: Vec<usize> =
        (0..aut_g.order()).map(|i| restrict(&|x| aut_g.apply(i, x))).collect::<Result<_>>()?;
    let mut sorted = restricted.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let restriction_injective = sorted.len() == restricted.len();

    let mut composition_is_inclusion = true;
    let mut seen = std::collections::HashSet::new();
    for x in 0..g.order() {
        let via_inn = restricted[aut_g.conj(x)];
        let xi = g.inv(x);
        let direct = restrict(&|y| g.mul(g.mul(x, y), xi))?;
        composition_is_inclusion &= via_inn == direct && seen.insert(via_inn);
        if pos[x] != usize::MAX {
            composition_is_inclusion &= via_inn == aut_t.conj(pos[x]);
        }
    }
    Ok(SocleEmbeddingWitness {
        group_order: g.order(),
        socle_order: socle.len(),
        aut_order: aut_g.order(),
        socle_aut_order: aut_t.order(),
        restriction_injective,
        composition_is_inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_named_group;

    fn g(name: &str) -> FiniteGroup {
        make_named_group(name).unwrap()
    }

    #[test]
    fn centers() {
        assert_eq!(center(&g("C6")).len(), 6);
        assert_eq!(center(&g("S5")), vec![g("S5").identity()]);
        assert_eq!(center(&g("D4")).len(), 2);
        // Oracle: check against every element, not just generators.
        let d = g("D4");
        let brute: Vec<usize> =
            (0..8).filter(|&z| (0..8).all(|x| d.mul(z, x) == d.mul(x, z))).collect();
        assert_eq!(center(&d), brute);
    }

    #[test]
    fn element_order_counts() {
        let a5 = g("A5");
        assert_eq!(count_elements_of_order(&a5, 1, None), 1);
        assert_eq!(count_elements_of_order(&a5, 2, None), 15);
        let s5 = g("S5");
        let class = classify_almost_simple(&s5).unwrap();
        let outside: Vec<usize> = (0..120).filter(|x| class.socle.binary_search(x).is_err()).collect();
        assert_eq!(count_elements_of_order(&s5, 2, Some(&outside)), 10);
        assert_eq!(count_elements_of_order(&s5, 2, Some(&class.socle)), 15);
    }

    #[test]
    fn almost_simple_classification() {
        let c6 = classify_almost_simple(&g("C6")).unwrap();
        assert!(!c6.almost_simple);
        let s5 = classify_almost_simple(&g("S5")).unwrap();
        assert!(s5.almost_simple && !s5.simple);
        assert_eq!(s5.socle.len(), 60);
        assert_eq!(s5.socle_index, 2);
        assert!(s5.every_normal_contains_socle);
        let a5 = classify_almost_simple(&g("A5")).unwrap();
        assert!(a5.almost_simple && a5.simple);
        assert_eq!(a5.socle_index, 1);
        let s4 = classify_almost_simple(&g("S4")).unwrap();
        assert!(!s4.almost_simple);
        assert_eq!(s4.socle.len(), 4);
        let a5c2 = classify_almost_simple(&g("A5xC2")).unwrap();
        assert!(!a5c2.almost_simple);
        assert!(classify_almost_simple(&g("PGL(2,7)")).unwrap().almost_simple);
        assert!(!classify_almost_simple(&g("C1")).unwrap().almost_simple);
    }

    #[test]
    fn almost_simple_implies_trivial_center() {
        for name in ["A5", "S5", "PSL(2,7)", "PGL(2,5)", "PGL(2,7)", "A6", "S3", "D4", "A4xC2", "C7"] {
            let grp = g(name);
            if classify_almost_simple(&grp).unwrap().almost_simple {
                assert_eq!(center(&grp).len(), 1, "{name}");
            }
        }
    }

    #[test]
    fn socle_embedding() {
        let b = Budget::default();
        let s5 = socle_embedding_check(&g("S5"), &b).unwrap();
        assert!(s5.holds());
        assert_eq!((s5.aut_order, s5.socle_aut_order), (120, 120));
        assert!(socle_embedding_check(&g("A5"), &b).unwrap().holds());
        assert!(matches!(socle_embedding_check(&g("S4"), &b), Err(Error::NotAlmostSimple)));
    }

    #[test]
    fn socle_embedding_a6() {
        let w = socle_embedding_check(&g("A6"), &Budget::default()).unwrap();
        assert!(w.holds());
        assert_eq!(w.socle_aut_order, 1440);
    }
}
