//! Permutations, permutation groups, conjugacy classes and normal subgroups.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `i` to `p(q(i))`, so `q`
//! acts first. All group-theoretic routines that only need a multiplication on
//! element indices are written against [`IndexedGroup`] so they serve both
//! permutation groups and Cayley-table groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::Budget;

/// A bijection of `{0, …, degree − 1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree || touched[a as usize] {
                    return Err(Error::NotAPermutation(format!("{cycles:?}")));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ q`: apply `q` first, then `self`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: q.degree() });
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation { images: q.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        // (p o q o p^-1)(p(i)) = p(q(i))
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[self.images[i] as usize] = self.images[other.images[i] as usize];
        }
        Permutation { images }
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// Free-function form of [`Permutation::compose`].
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finite group whose elements are addressed by index `0..order`.
pub trait IndexedGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generator_indices(&self) -> &[usize];
}

/// A fully enumerated permutation group with a canonical (sorted) element order.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, vec![Permutation::identity(degree)], Vec::new())
    }

    /// Assembles a group from a complete, closed element set.
    pub(crate) fn from_elements(
        degree: usize,
        mut elements: Vec<Permutation>,
        generators: &[Permutation],
    ) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut grp = Self::from_sorted(degree, elements, Vec::new());
        grp.generators = generators.iter().filter_map(|g| grp.position(g)).collect();
        grp.generators.sort_unstable();
        grp.generators.dedup();
        grp
    }

    fn from_sorted(degree: usize, elements: Vec<Permutation>, generators: Vec<usize>) -> Self {
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        PermGroup { degree, elements, generators, index, inverses }
    }

    /// Closes a generating set with a small generating set recomputed from the elements.
    pub(crate) fn from_elements_minimal(degree: usize, elements: Vec<Permutation>) -> Self {
        let mut grp = Self::from_elements(degree, elements, &[]);
        let all: Vec<usize> = (0..grp.order()).collect();
        grp.generators = small_generating_set(&grp, &all);
        grp
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> Vec<&Permutation> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Elements common to both groups, as a group.
    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let common: Vec<Permutation> =
            self.elements.iter().filter(|p| other.contains(p)).cloned().collect();
        PermGroup::from_elements_minimal(self.degree, common)
    }
}

impl IndexedGroup for PermGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose_unchecked(&self.elements[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    fn generator_indices(&self) -> &[usize] {
        &self.generators
    }
}

/// Breadth-first closure of `gens` inside the symmetric group of the given degree.
///
/// Fails with [`Error::Budget`] as soon as more than `budget.max_elements` elements
/// have been produced; the result is never truncated.
pub fn close_generators(gens: &[Permutation], degree: usize, budget: &Budget) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { left: g.degree(), right: degree });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = g.compose_unchecked(&x);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                elements.push(y);
                budget.check(elements.len(), "closing a permutation group")?;
            }
        }
    }
    Ok(PermGroup::from_elements(degree, elements, gens))
}

/// Element indices of the subgroup generated by `gens`.
pub fn closure_indices<G: IndexedGroup + ?Sized>(g: &G, gens: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let id = g.identity();
    seen.insert(id);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &s in gens {
            let y = g.mul(s, x);
            if !seen.contains(y) {
                seen.insert(y);
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Greedy generating set for the subgroup with the given elements, preferring
/// elements of large order so that the result stays short.
pub fn small_generating_set<G: IndexedGroup + ?Sized>(g: &G, elements: &[usize]) -> Vec<usize> {
    let mut by_order: Vec<(usize, usize)> =
        elements.iter().map(|&e| (element_order(g, e), e)).collect();
    by_order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut current = FixedBitSet::with_capacity(g.order());
    current.insert(g.identity());
    let mut size = 1;
    for (_, e) in by_order {
        if size == elements.len() {
            break;
        }
        if current.contains(e) {
            continue;
        }
        gens.push(e);
        let closed = closure_indices(g, &gens);
        size = closed.len();
        current.clear();
        for x in closed {
            current.insert(x);
        }
    }
    gens.sort_unstable();
    gens
}

pub fn element_order<G: IndexedGroup + ?Sized>(g: &G, a: usize) -> usize {
    let id = g.identity();
    let mut x = a;
    let mut k = 1;
    while x != id {
        x = g.mul(a, x);
        k += 1;
    }
    k
}

/// Partition of a group into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    /// Classes sorted by smallest member; each class sorted. Class 0 is `{identity}`
    /// whenever the identity has the smallest index.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[x]` is the position of `x`'s class in `classes`.
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Conjugacy classes as orbits under conjugation by the generators.
pub fn conjugacy_classes<G: IndexedGroup + ?Sized>(g: &G) -> ConjugacyClasses {
    let n = g.order();
    let gens: Vec<(usize, usize)> =
        g.generator_indices().iter().map(|&s| (s, g.inv(s))).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &(s, s_inv) in &gens {
                let y = g.mul(g.mul(s, x), s_inv);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    ConjugacyClasses { classes, class_of }
}

/// Normal-subgroup machinery working on unions of conjugacy classes.
///
/// A union of classes containing the identity is a (normal) subgroup iff it is
/// closed under multiplication, and for classes `A`, `B` the classes met by `A·B`
/// are exactly those met by `a·B` for one representative `a ∈ A`. Class products
/// are therefore computed once per class pair and memoized.
pub struct ClassAlgebra<'a, G: IndexedGroup + ?Sized> {
    group: &'a G,
    classes: ConjugacyClasses,
    products: Vec<Option<FixedBitSet>>,
}

impl<'a, G: IndexedGroup + ?Sized> ClassAlgebra<'a, G> {
    pub fn new(group: &'a G) -> Self {
        let classes = conjugacy_classes(group);
        let k = classes.len();
        ClassAlgebra { group, classes, products: vec![None; k * k] }
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    fn product(&mut self, a: usize, b: usize) -> &FixedBitSet {
        let k = self.classes.len();
        let slot = a * k + b;
        if self.products[slot].is_none() {
            let rep = self.classes.classes[a][0];
            let mut set = FixedBitSet::with_capacity(k);
            for &y in &self.classes.classes[b] {
                set.insert(self.classes.class_of[self.group.mul(rep, y)]);
            }
            self.products[slot] = Some(set);
        }
        self.products[slot].as_ref().unwrap()
    }

    fn identity_class(&self) -> usize {
        self.classes.class_of[self.group.identity()]
    }

    /// Smallest multiplicatively closed class union containing `seed` and the identity.
    pub fn close(&mut self, seed: &FixedBitSet) -> FixedBitSet {
        let k = self.classes.len();
        let mut set = FixedBitSet::with_capacity(k);
        set.insert(self.identity_class());
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut members: Vec<usize> = vec![self.identity_class()];
        for c in seed.ones() {
            if !set.contains(c) {
                set.insert(c);
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            members.push(c);
            let snapshot = members.clone();
            for d in snapshot {
                let prod = self.product(c, d).clone();
                for e in prod.ones() {
                    if !set.contains(e) {
                        set.insert(e);
                        queue.push_back(e);
                    }
                }
            }
        }
        set
    }

    pub fn is_closed(&mut self, set: &FixedBitSet) -> bool {
        if !set.contains(self.identity_class()) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        for &a in &members {
            for &b in &members {
                if !self.product(a, b).is_subset(set) {
                    return false;
                }
            }
        }
        true
    }

    pub fn size_of(&self, set: &FixedBitSet) -> usize {
        set.ones().map(|c| self.classes.classes[c].len()).sum()
    }

    pub fn elements_of(&self, set: &FixedBitSet) -> Vec<usize> {
        let mut out: Vec<usize> =
            set.ones().flat_map(|c| self.classes.classes[c].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Every normal subgroup, as class sets, sorted by order and then by elements.
    ///
    /// Starting from the normal closures of single classes, joins are taken until
    /// no new class union appears. Every normal subgroup is the join of the normal
    /// closures of its classes, so the list is complete.
    pub fn normal_subgroups(&mut self) -> Vec<FixedBitSet> {
        let k = self.classes.len();
        let mut closures: Vec<FixedBitSet> = Vec::new();
        for c in 0..k {
            let mut seed = FixedBitSet::with_capacity(k);
            seed.insert(c);
            let cl = self.close(&seed);
            if !closures.contains(&cl) {
                closures.push(cl);
            }
        }
        let mut trivial = FixedBitSet::with_capacity(k);
        trivial.insert(self.identity_class());
        let mut found: HashSet<FixedBitSet> = HashSet::new();
        found.insert(trivial.clone());
        let mut queue = vec![trivial];
        while let Some(n) = queue.pop() {
            for cl in &closures {
                if cl.is_subset(&n) {
                    continue;
                }
                let mut seed = n.clone();
                seed.union_with(cl);
                let joined = self.close(&seed);
                if found.insert(joined.clone()) {
                    queue.push(joined);
                }
            }
        }
        let mut out: Vec<(usize, Vec<usize>, FixedBitSet)> = found
            .into_iter()
            .map(|s| (self.size_of(&s), self.elements_of(&s), s))
            .collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        out.into_iter().map(|(_, _, s)| s).collect()
    }
}

/// Element index sets of all normal subgroups, sorted by order then elements.
pub fn normal_subgroup_indices<G: IndexedGroup + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let mut alg = ClassAlgebra::new(g);
    alg.normal_subgroups().iter().map(|s| alg.elements_of(s)).collect()
}

/// Conjugacy classes of a permutation group, as permutations.
pub fn permutation_classes(grp: &PermGroup) -> Vec<Vec<Permutation>> {
    conjugacy_classes(grp)
        .classes
        .into_iter()
        .map(|c| c.into_iter().map(|i| grp.element(i).clone()).collect())
        .collect()
}

/// True iff `g·s·g⁻¹ ∈ sub` for every generator `g` of `grp` and every `s ∈ sub`.
pub fn is_normal(sub: &PermGroup, grp: &PermGroup) -> Result<bool> {
    if !sub.is_subgroup_of(grp) {
        return Err(Error::NotContained);
    }
    for g in grp.generators() {
        for s in sub.elements() {
            if !sub.contains(&g.conjugate(s)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All normal subgroups of `grp` with exactly `m` elements, in canonical order.
pub fn normal_subgroups_of_order(grp: &PermGroup, m: usize, budget: &Budget) -> Result<Vec<PermGroup>> {
    if m == 0 || !grp.order().is_multiple_of(m) {
        return Err(Error::NotDivisor(m, grp.order()));
    }
    budget.check(grp.order(), "enumerating normal subgroups")?;
    let mut alg = ClassAlgebra::new(grp);
    let subgroups = alg.normal_subgroups();
    Ok(subgroups
        .iter()
        .filter(|s| alg.size_of(s) == m)
        .map(|s| {
            let elems: Vec<Permutation> =
                alg.elements_of(s).into_iter().map(|i| grp.element(i).clone()).collect();
            PermGroup::from_elements_minimal(grp.degree(), elems)
        })
        .collect())
}
