//! Cayley-table groups: construction of named groups, automorphism groups and
//! the structural checks used for almost simple groups.

mod aut;
mod named;
mod structure;

pub use aut::{automorphism_group, find_isomorphism, AutGroupRecord};
pub use named::{catalog_of_order, make_named_group, GroupDescriptor};
pub use structure::{
    center, centralizer, classify_almost_simple, count_elements_of_order, socle_embedding_check,
    AlmostSimpleClassification, SocleEmbeddingWitness,
};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{small_generating_set, IndexedGroup, PermGroup};

/// Largest order for which a full Cayley table is built.
pub const MAX_TABLE_ORDER: usize = 5040;

/// Orders up to this bound get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_ORDER: usize = 128;
const ASSOCIATIVITY_SAMPLES: usize = 10_000;

/// A finite group on element indices `0..order` given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    orders: Vec<usize>,
    labels: Option<Vec<String>>,
    // Breadth-first word tree over the generators: `bfs` lists the elements in
    // discovery order and `parent[x] = (generator position, y)` with x = gen·y.
    bfs: Vec<usize>,
    parent: Vec<(u32, u32)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl FiniteGroup {
    /// Builds and validates a group from a row-major multiplication table.
    ///
    /// Identity and inverse laws are checked for every element; associativity is
    /// checked exhaustively for small orders and on 10⁴ seeded random triples
    /// otherwise. `generators` must generate the whole group.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let name = name.into();
        if order == 0 || table.len() != order * order {
            return Err(Error::Inconsistency(format!("{name}: table has wrong shape")));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::budget(format!("building the Cayley table of {name}"), MAX_TABLE_ORDER));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::Inconsistency(format!("{name}: table entry out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::Inconsistency(format!("{name}: no identity")))?;
        let mut inverses = vec![0u32; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::Inconsistency(format!("{name}: element {x} has no inverse")))?;
            if table[inv * order + x] as usize != identity {
                return Err(Error::Inconsistency(format!("{name}: inverse of {x} is one-sided")));
            }
            inverses[x] = inv as u32;
        }
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        if order <= FULL_ASSOCIATIVITY_ORDER {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul(a, b);
                    for c in 0..order {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(Error::Inconsistency(format!("{name}: not associative")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::Inconsistency(format!("{name}: not associative")));
                }
            }
        }
        Self::assemble(name, order, table, inverses, identity, generators, labels)
    }

    fn assemble(
        name: String,
        order: usize,
        table: Vec<u32>,
        inverses: Vec<u32>,
        identity: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut g = FiniteGroup {
            name,
            order,
            table,
            inverses,
            identity,
            generators,
            orders: Vec::new(),
            labels,
            bfs: Vec::new(),
            parent: Vec::new(),
        };
        g.generators.retain(|&x| x != identity);
        g.generators.dedup();
        g.orders = (0..order).map(|x| crate::perm::element_order(&g, x)).collect();
        g.build_words();
        if g.bfs.len() != order {
            return Err(Error::Inconsistency(format!("{}: generators do not generate the group", g.name)));
        }
        Ok(g)
    }

    fn build_words(&mut self) {
        let n = self.order;
        let mut parent = vec![(u32::MAX, u32::MAX); n];
        let mut bfs = vec![self.identity];
        parent[self.identity] = (u32::MAX, self.identity as u32);
        let mut head = 0;
        while head < bfs.len() {
            let y = bfs[head];
            head += 1;
            for (j, &s) in self.generators.iter().enumerate() {
                let x = self.mul(s, y);
                if parent[x].0 == u32::MAX && x != self.identity {
                    parent[x] = (j as u32, y as u32);
                    bfs.push(x);
                }
            }
        }
        self.bfs = bfs;
        self.parent = parent;
    }

    /// Converts a permutation group into a table group with the same element order.
    pub fn from_perm_group(name: impl Into<String>, grp: &PermGroup) -> Result<Self> {
        let name = name.into();
        let n = grp.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::budget(format!("building the Cayley table of {name}"), MAX_TABLE_ORDER));
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = grp.mul(a, b) as u32;
            }
        }
        let inverses = (0..n).map(|a| grp.inv(a) as u32).collect();
        let labels = Some(grp.elements().iter().map(|p| p.to_string()).collect());
        let mut gens = grp.generator_indices().to_vec();
        if gens.is_empty() && n > 1 {
            let all: Vec<usize> = (0..n).collect();
            gens = small_generating_set(grp, &all);
        }
        Self::assemble(name, n, table, inverses, 0, gens, labels)
    }

    /// The subgroup on the given (sorted, closed) element set, re-indexed in that order.
    pub fn subgroup(&self, name: impl Into<String>, elements: &[usize]) -> Result<FiniteGroup> {
        let name = name.into();
        let m = elements.len();
        let mut pos = vec![u32::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = pos[self.mul(a, b)];
                if p == u32::MAX {
                    return Err(Error::Inconsistency(format!("{name}: element set is not closed")));
                }
                table[i * m + j] = p;
            }
        }
        let inverses = elements.iter().map(|&a| pos[self.inv(a)]).collect();
        let identity = pos[self.identity];
        if identity == u32::MAX {
            return Err(Error::Inconsistency(format!("{name}: identity missing")));
        }
        let gens: Vec<usize> =
            small_generating_set(self, elements).into_iter().map(|g| pos[g] as usize).collect();
        let labels = self.labels.as_ref().map(|l| elements.iter().map(|&e| l[e].clone()).collect());
        Self::assemble(name, m, table, inverses, identity as usize, gens, labels)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let name = format!("{}x{}", a.name, b.name);
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        if n > MAX_TABLE_ORDER {
            return Err(Error::budget(format!("building the Cayley table of {name}"), MAX_TABLE_ORDER));
        }
        let idx = |x: usize, y: usize| x * nb + y;
        let mut table = vec![0u32; n * n];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        table[idx(x1, y1) * n + idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2)) as u32;
                    }
                }
            }
        }
        let inverses = (0..n).map(|k| idx(a.inv(k / nb), b.inv(k % nb)) as u32).collect();
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| idx(g, b.identity)).collect();
        gens.extend(b.generators.iter().map(|&h| idx(a.identity, h)));
        let labels = Some(
            (0..n)
                .map(|k| format!("({}, {})", a.label(k / nb), b.label(k % nb)))
                .collect(),
        );
        Self::assemble(name, n, table, inverses, idx(a.identity, b.identity), gens, labels)
    }

    /// Replaces the generating set by a short one and rebuilds the word tree.
    pub fn with_small_generators(mut self) -> Self {
        let all: Vec<usize> = (0..self.order).collect();
        self.generators = small_generating_set(&self, &all);
        self.build_words();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut x = self.identity;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements in breadth-first order over the generators, identity first.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    /// For a non-identity element `x`, `(j, y)` with `x = generators[j] · y`.
    pub fn word_step(&self, x: usize) -> Option<(usize, usize)> {
        if x == self.identity {
            None
        } else {
            let (j, y) = self.parent[x];
            Some((j as usize, y as usize))
        }
    }

    /// Left-regular representation λ(G) as permutations of element indices.
    pub fn left_regular(&self, a: usize) -> crate::perm::Permutation {
        crate::perm::Permutation::from_images_unchecked(
            (0..self.order).map(|x| self.mul(a, x) as u32).collect(),
        )
    }

    /// Right-regular representation ρ(a) = (x ↦ x·a⁻¹).
    pub fn right_regular(&self, a: usize) -> crate::perm::Permutation {
        let ai = self.inv(a);
        crate::perm::Permutation::from_images_unchecked(
            (0..self.order).map(|x| self.mul(x, ai) as u32).collect(),
        )
    }
}

impl IndexedGroup for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn generator_indices(&self) -> &[usize] {
        &self.generators
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_group_tables() {
        // {0, 1} with 1·1 = 1: no inverse for 1.
        let err = FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1], vec![1], None).unwrap_err();
        assert!(matches!(err, Error::Inconsistency(_)));
        // Generators do not generate.
        let c2 = vec![0, 1, 1, 0];
        assert!(FiniteGroup::from_table("c2", 2, c2.clone(), vec![], None).is_err());
        assert!(FiniteGroup::from_table("c2", 2, c2, vec![1], None).is_ok());
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = make_named_group("S4").unwrap();
        assert_eq!(g.bfs_order()[0], g.identity());
        for &x in g.bfs_order() {
            if let Some((j, y)) = g.word_step(x) {
                assert_eq!(g.mul(g.generators()[j], y), x);
            }
        }
    }

    #[test]
    fn element_orders_sum_to_group_order() {
        for name in ["S5", "D4", "C6", "PSL(2,7)", "A4xC2"] {
            let g = make_named_group(name).unwrap();
            let total: usize =
                (1..=g.order()).map(|m| count_elements_of_order(&g, m, None)).sum();
            assert_eq!(total, g.order(), "{name}");
        }
    }
}
