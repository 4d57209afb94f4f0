//! Permutation groups with full element enumeration.
//!
//! A `PermGroup` is generators plus lazily computed derived data. The element
//! list is the primary representation: conjugacy classes, subgroup lattices,
//! quotients and the generation oracles all work on element indices. Groups
//! up to `Limits::max_table_order` additionally get a dense multiplication
//! table, which makes every closure computation a pure table walk.
//!
//! All caches are filled at most once behind `OnceLock`, so a group can be
//! shared freely across threads of a search.

use crate::error::{GroupError, Result};
use crate::fxhash::FxHashMap;
use crate::limits::Limits;
use crate::perm::Permutation;
use std::sync::{Arc, OnceLock};

/// A group of permutations of common degree, given by generators.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cache: Arc<OnceLock<Arc<Enumerated>>>,
}

/// Fully enumerated group data: elements in breadth-first order from the
/// identity (index 0), an index map, and optionally a dense Cayley table.
pub struct Enumerated {
    pub elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    table: OnceLock<Option<CayleyTable>>,
    inverses: OnceLock<Vec<u32>>,
}

pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
}

impl PermGroup {
    /// Builds a group from generators without enumerating it.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        if generators.is_empty() {
            return Err(GroupError::InvalidParameter(
                "generator list must be nonempty".into(),
            ));
        }
        let degree = generators[0].degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        Ok(PermGroup {
            degree,
            generators,
            cache: Arc::new(OnceLock::new()),
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(vec![Permutation::identity(degree.max(1))]).unwrap()
    }

    /// Breadth-first closure of the generators, aborting past the cap.
    pub fn generate(generators: Vec<Permutation>, cap: u64) -> Result<Self> {
        let g = PermGroup::new(generators)?;
        let limits = Limits {
            max_elements: cap,
            ..Limits::default()
        };
        g.enumerated(&limits)?;
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Enumerates the element set (cached). The breadth-first order from the
    /// identity over the sorted generator list is deterministic.
    pub fn enumerated(&self, limits: &Limits) -> Result<&Enumerated> {
        if let Some(e) = self.cache.get() {
            return Ok(e);
        }
        let e = self.enumerate_inner(limits)?;
        let _ = self.cache.set(Arc::new(e));
        Ok(self.cache.get().unwrap())
    }

    fn enumerate_inner(&self, limits: &Limits) -> Result<Enumerated> {
        let cap = limits.max_elements;
        let mut elements: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        let mut index: FxHashMap<Permutation, u32> = FxHashMap::default();
        index.insert(elements[0].clone(), 0);
        let mut head = 0usize;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &self.generators {
                let next = current.compose_unchecked(g);
                if !index.contains_key(&next) {
                    if elements.len() as u64 >= cap {
                        return Err(GroupError::cap("element", elements.len() as u64 + 1, cap));
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                }
            }
        }
        Ok(Enumerated {
            elements,
            index,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
        })
    }

    pub fn order(&self, limits: &Limits) -> Result<u64> {
        Ok(self.enumerated(limits)?.size() as u64)
    }

    pub fn contains(&self, p: &Permutation, limits: &Limits) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.enumerated(limits)?.index_of(p).is_some())
    }

    /// True when `other` is a subgroup: same degree, all elements members.
    pub fn has_subgroup(&self, other: &PermGroup, limits: &Limits) -> Result<bool> {
        if other.degree != self.degree {
            return Ok(false);
        }
        let mine = self.enumerated(limits)?;
        let theirs = other.enumerated(limits)?;
        if theirs.size() > mine.size() || mine.size() % theirs.size() != 0 {
            return Ok(false);
        }
        Ok(theirs.elements.iter().all(|p| mine.index_of(p).is_some()))
    }

    /// Orbit partition of the points, each orbit sorted, orbits ordered by
    /// minimum point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbits().len() == 1
    }

    /// Smallest nontrivial block system of a transitive group, or `None` when
    /// the group is primitive. Among minimal block sizes the system returned
    /// is the one generated by the first pair `(0, q)` whose closure is
    /// proper. Blocks are sorted by minimum point.
    pub fn minimal_block_system(&self) -> Result<Option<Vec<Vec<usize>>>> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        if self.degree < 2 {
            return Err(GroupError::InvalidParameter(
                "block systems need degree at least 2".into(),
            ));
        }
        let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
        for q in 1..self.degree {
            if let Some(blocks) = self.block_closure(0, q) {
                let size = blocks[0].len();
                if best.as_ref().map_or(true, |(s, _)| size < *s) {
                    best = Some((size, blocks));
                }
                if size == 2 {
                    break;
                }
            }
        }
        Ok(best.map(|(_, b)| b))
    }

    /// Union-find closure of the partition seeded with `{a, b}` under the
    /// generators; `None` when it collapses to a single block.
    fn block_closure(&self, a: usize, b: usize) -> Option<Vec<Vec<usize>>> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = vec![(a, b)];
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        parent[ra] = rb;
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let gx = g.apply(x);
                let gy = g.apply(y);
                let rx = find(&mut parent, gx);
                let ry = find(&mut parent, gy);
                if rx != ry {
                    parent[rx] = ry;
                    queue.push((gx, gy));
                }
            }
        }
        let mut blocks: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for x in 0..n {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().push(x);
        }
        let mut blocks: Vec<Vec<usize>> = blocks.into_values().collect();
        if blocks.len() <= 1 {
            return None;
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Some(blocks)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.minimal_block_system()?.is_none())
    }

    /// Action of the group on the right cosets of `h` by right translation.
    /// Returns the permutation image (degree `[G:H]`) and the map from
    /// element index (in this group's enumeration) to coset number. Coset 0
    /// is `H` itself; cosets are numbered in breadth-first order.
    pub fn coset_action(&self, h: &PermGroup, limits: &Limits) -> Result<(PermGroup, Vec<u32>)> {
        if !self.has_subgroup(h, limits)? {
            return Err(GroupError::NotSubgroup(
                "coset action requires a membership-checked subgroup".into(),
            ));
        }
        let big = self.enumerated(limits)?;
        let small = h.enumerated(limits)?;
        let n = big.size();
        let mut coset_of: Vec<u32> = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();

        let h_indices: Vec<u32> = small
            .elements
            .iter()
            .map(|p| big.index_of(p).unwrap())
            .collect();

        // Seed coset 0 = H, then close under right multiplication by
        // generators. Cosets are filled as {h * rep} for h in H.
        let gen_idx: Vec<u32> = self
            .generators
            .iter()
            .map(|g| big.index_of(g).unwrap())
            .collect();
        let assign_coset = |rep: u32, num: u32, coset_of: &mut Vec<u32>| {
            for &hi in &h_indices {
                let e = big.mul(hi, rep);
                debug_assert_eq!(coset_of[e as usize], u32::MAX);
                coset_of[e as usize] = num;
            }
        };
        assign_coset(0, 0, &mut coset_of);
        reps.push(0);
        let mut head = 0usize;
        while head < reps.len() {
            let rep = reps[head];
            head += 1;
            for &g in &gen_idx {
                let moved = big.mul(rep, g);
                if coset_of[moved as usize] == u32::MAX {
                    let num = reps.len() as u32;
                    assign_coset(moved, num, &mut coset_of);
                    reps.push(moved);
                }
            }
        }
        let deg = reps.len();
        let mut image_gens = Vec::with_capacity(self.generators.len());
        for &g in &gen_idx {
            let mut images = vec![0u16; deg];
            for (c, &rep) in reps.iter().enumerate() {
                images[c] = coset_of[big.mul(rep, g) as usize] as u16;
            }
            image_gens.push(Permutation::from_images(images)?);
        }
        Ok((PermGroup::new(image_gens)?, coset_of))
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, gens ", self.degree)?;
        for g in &self.generators {
            write!(f, "{} ", g.cycle_string())?;
        }
        write!(f, ")")
    }
}

impl Enumerated {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    /// Builds the dense multiplication table if the order is within the cap.
    fn cayley(&self, limits: &Limits) -> Option<&CayleyTable> {
        self.table
            .get_or_init(|| {
                let n = self.size();
                if n as u64 > limits.max_table_order || n > u16::MAX as usize {
                    return None;
                }
                let mut mul = vec![0u16; n * n];
                for a in 0..n {
                    let pa = &self.elements[a];
                    for b in 0..n {
                        let ab = pa.compose_unchecked(&self.elements[b]);
                        mul[a * n + b] = self.index[&ab] as u16;
                    }
                }
                Some(CayleyTable { n, mul })
            })
            .as_ref()
    }

    /// Makes sure the Cayley table exists when permitted; call once before
    /// heavy index computations.
    pub fn ensure_table(&self, limits: &Limits) {
        let _ = self.cayley(limits);
    }

    pub fn has_table(&self) -> bool {
        matches!(self.table.get(), Some(Some(_)))
    }

    /// Product of elements by index.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(Some(t)) = self.table.get() {
            t.mul[a as usize * t.n + b as usize] as u32
        } else {
            let p = self.elements[a as usize].compose_unchecked(&self.elements[b as usize]);
            self.index[&p]
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|p| self.index[&p.inverse()])
                .collect()
        })[a as usize]
    }

    /// Conjugate `a^g = g^{-1} a g` by index.
    #[inline]
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Index of the identity is always 0 by construction.
    pub const IDENTITY: u32 = 0;

    /// Order of the element with the given index.
    pub fn element_order(&self, a: u32) -> u64 {
        self.elements[a as usize].order()
    }

    /// Closure of `seed` under multiplication by `gens` (all as indices).
    /// `seed` must already be closed or small; the result is the subgroup
    /// generated by `seed ∪ gens` as a sorted index list.
    pub fn closure(&self, seed: &[u32], gens: &[u32]) -> Vec<u32> {
        let n = self.size();
        let mut member = vec![false; n];
        let mut list: Vec<u32> = Vec::with_capacity(seed.len().max(16));
        member[Self::IDENTITY as usize] = true;
        list.push(Self::IDENTITY);
        for &s in seed.iter().chain(gens.iter()) {
            if !member[s as usize] {
                member[s as usize] = true;
                list.push(s);
            }
        }
        let mut all_gens: Vec<u32> = gens.to_vec();
        // Seed elements beyond generators still need right-multiplication
        // coverage; treating the whole seed as generators keeps this correct
        // for arbitrary seeds at a small constant cost.
        for &s in seed {
            if !all_gens.contains(&s) {
                all_gens.push(s);
            }
        }
        let mut head = 0usize;
        while head < list.len() {
            let a = list[head];
            head += 1;
            for &g in &all_gens {
                let b = self.mul(a, g);
                if !member[b as usize] {
                    member[b as usize] = true;
                    list.push(b);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Closure starting from a known subgroup (sorted index list) extended by
    /// extra generators. Faster than `closure` when the seed is large.
    pub fn closure_extend(&self, subgroup: &[u32], extra: &[u32]) -> Vec<u32> {
        let n = self.size();
        let mut member = vec![false; n];
        for &s in subgroup {
            member[s as usize] = true;
        }
        let mut list: Vec<u32> = subgroup.to_vec();
        let mut new_from = list.len();
        for &e in extra {
            if !member[e as usize] {
                member[e as usize] = true;
                list.push(e);
            }
        }
        if list.len() == new_from {
            return list; // nothing new
        }
        // Every product of an old element with a new one (both sides) and of
        // new elements among themselves must be folded in; process the queue
        // of new elements against the full current list.
        while new_from < list.len() {
            let x = list[new_from];
            new_from += 1;
            let snapshot = list.len();
            for i in 0..snapshot {
                let a = list[i];
                for &(p, q) in &[(a, x), (x, a)] {
                    let b = self.mul(p, q);
                    if !member[b as usize] {
                        member[b as usize] = true;
                        list.push(b);
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// The subgroup generated by index list `gens`, as sorted indices.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure(&[], gens)
    }
}
