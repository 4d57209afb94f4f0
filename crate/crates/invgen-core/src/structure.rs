//! Conjugacy classes, normal and maximal subgroups, quotients, and
//! composition data for enumerated groups.
//!
//! The subgroup lattice uses cyclic extension: seed with the trivial group
//! and all perfect subgroups (found by a two-generator scan), then repeatedly
//! adjoin prime-order elements of normalizers. Every non-perfect subgroup has
//! a normal subgroup of prime index, so induction on order shows the layers
//! reach everything. Subgroups are deduplicated globally by element set and
//! classified up to conjugacy by the least sorted index vector of the
//! conjugation orbit.

use crate::error::{GroupError, Result};
use crate::fxhash::{FxHashMap, FxHashSet};
use crate::group::{Enumerated, PermGroup};
use crate::limits::Limits;

/// Conjugacy class data for an enumerated group.
#[derive(Debug, Clone)]
pub struct ClassTable {
    /// Classes ordered by their lexicographically least member, so the
    /// identity class is always first.
    pub classes: Vec<ConjClass>,
    /// Map element index -> class index.
    pub class_of: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    /// Index of the lexicographically least member.
    pub representative: u32,
    /// All member indices, sorted.
    pub members: Vec<u32>,
    pub element_order: u64,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Computes the exact class partition via conjugation orbits.
pub fn conjugacy_classes(g: &PermGroup, limits: &Limits) -> Result<ClassTable> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let n = e.size();
    let gen_idx: Vec<u32> = g
        .generators()
        .iter()
        .map(|p| e.index_of(p).unwrap())
        .collect();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<ConjClass> = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let cls = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = cls;
        let mut head = 0usize;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &gi in &gen_idx {
                let y = e.conj(x, gi);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = cls;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        let representative = *members
            .iter()
            .min_by(|&&a, &&b| e.element(a).cmp(e.element(b)))
            .unwrap();
        classes.push(ConjClass {
            representative,
            element_order: e.element_order(start),
            members,
        });
    }
    // Order classes by their least representative permutation (identity
    // first); rebuild the class_of map accordingly.
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        e.element(classes[a].representative).cmp(e.element(classes[b].representative))
    });
    let mut renumber = vec![0u32; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = renumber[*c as usize];
    }
    let mut reordered: Vec<ConjClass> = order.into_iter().map(|i| classes[i].clone()).collect();
    // keep members sorted (already) and classes now in canonical order
    debug_assert!(reordered[0].members == vec![Enumerated::IDENTITY]);
    for c in reordered.iter_mut() {
        debug_assert!(!c.members.is_empty());
    }
    Ok(ClassTable {
        classes: reordered,
        class_of,
    })
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Canonical representative: the conjugate with the least sorted element
    /// index vector.
    pub rep_elements: Vec<u32>,
    /// A generating sequence for the representative (element indices).
    pub rep_generators: Vec<u32>,
    pub order: u64,
    /// Number of conjugates.
    pub length: u64,
    pub is_maximal: bool,
}

/// All subgroups of a group up to conjugacy.
#[derive(Debug, Clone)]
pub struct SubgroupCatalog {
    /// Classes sorted by (order, representative element vector).
    pub all_classes: Vec<SubgroupClass>,
}

impl SubgroupCatalog {
    pub fn maximal_classes(&self) -> Vec<&SubgroupClass> {
        self.all_classes.iter().filter(|c| c.is_maximal).collect()
    }
}

struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset {
            words: vec![0; n.div_ceil(64)],
        }
    }
    fn from_sorted(n: usize, elems: &[u32]) -> Self {
        let mut b = Bitset::new(n);
        for &e in elems {
            b.set(e);
        }
        b
    }
    #[inline]
    fn set(&mut self, i: u32) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }
    #[inline]
    fn get(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }
    #[cfg(test)]
    fn contains_all(&self, elems: &[u32]) -> bool {
        elems.iter().all(|&e| self.get(e))
    }
}

/// Conjugation orbit of a subgroup (as sorted index vectors), together with
/// the canonical least member.
fn subgroup_orbit(e: &Enumerated, gen_idx: &[u32], sub: &[u32]) -> (Vec<Vec<u32>>, usize) {
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut orbit: Vec<Vec<u32>> = Vec::new();
    seen.insert(sub.to_vec());
    orbit.push(sub.to_vec());
    let mut head = 0usize;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        head += 1;
        for &g in gen_idx {
            let mut img: Vec<u32> = cur.iter().map(|&x| e.conj(x, g)).collect();
            img.sort_unstable();
            if !seen.contains(&img) {
                seen.insert(img.clone());
                orbit.push(img);
            }
        }
    }
    let canon = (0..orbit.len()).min_by(|&a, &b| orbit[a].cmp(&orbit[b])).unwrap();
    (orbit, canon)
}

/// Internal lattice state during cyclic extension.
struct LatticeBuilder<'a> {
    e: &'a Enumerated,
    gen_idx: Vec<u32>,
    limits: &'a Limits,
    /// every subgroup seen, mapped to its class id
    seen: FxHashMap<Vec<u32>, u32>,
    classes: Vec<(Vec<u32>, Vec<u32>, u64)>, // (canonical elements, generators, orbit length)
    queue: Vec<u32>,
    total_subgroups: u64,
}

impl<'a> LatticeBuilder<'a> {
    /// Registers a subgroup if unseen; returns its class id.
    fn add(&mut self, sub: Vec<u32>, gens: Vec<u32>) -> Result<u32> {
        if let Some(&c) = self.seen.get(&sub) {
            return Ok(c);
        }
        let (orbit, canon_pos) = subgroup_orbit(self.e, &self.gen_idx, &sub);
        self.total_subgroups += orbit.len() as u64;
        if self.total_subgroups > self.limits.max_subgroups {
            return Err(GroupError::cap(
                "subgroup",
                self.total_subgroups,
                self.limits.max_subgroups,
            ));
        }
        let id = self.classes.len() as u32;
        let length = orbit.len() as u64;
        let canonical = orbit[canon_pos].clone();
        // conjugate the generators along when the canonical member differs:
        // regenerate instead, which is simpler and still deterministic
        let canon_gens = if canon_pos == 0 {
            gens
        } else {
            minimal_generators(self.e, &canonical)
        };
        for member in orbit {
            self.seen.insert(member, id);
        }
        self.classes.push((canonical, canon_gens, length));
        self.queue.push(id);
        Ok(id)
    }
}

/// Greedy deterministic generating sequence for a subgroup given by sorted
/// element indices.
fn minimal_generators(e: &Enumerated, sub: &[u32]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut have: Vec<u32> = vec![Enumerated::IDENTITY];
    for &x in sub {
        if have.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        have = e.closure(&have, &gens);
        if have.len() == sub.len() {
            break;
        }
    }
    gens
}

/// All subgroups up to conjugacy via cyclic extension, with maximal classes
/// marked. Requires `|G| <= limits.max_lattice_order`.
pub fn subgroup_lattice(g: &PermGroup, limits: &Limits) -> Result<SubgroupCatalog> {
    let e = g.enumerated(limits)?;
    let order = e.size() as u64;
    if order > limits.max_lattice_order {
        return Err(GroupError::cap("lattice order", order, limits.max_lattice_order));
    }
    e.ensure_table(limits);
    let gen_idx: Vec<u32> = g
        .generators()
        .iter()
        .map(|p| e.index_of(p).unwrap())
        .collect();

    let mut b = LatticeBuilder {
        e,
        gen_idx: gen_idx.clone(),
        limits,
        seen: FxHashMap::default(),
        classes: Vec::new(),
        queue: Vec::new(),
        total_subgroups: 0,
    };

    // Seeds: trivial subgroup, then every perfect subgroup. Perfect
    // subgroups are exactly the ones the prime-step extension cannot reach,
    // and at this scale each is generated by two elements, one of which can
    // be taken to be a class representative.
    b.add(vec![Enumerated::IDENTITY], vec![])?;
    let radical = perfect_radical(e);
    if radical.len() > 1 {
        // Perfect subgroups lie inside the perfect radical and consist of
        // even permutations; both generators of the two-generator scan can
        // be restricted accordingly.
        let mut in_radical = vec![false; e.size()];
        for &x in &radical {
            in_radical[x as usize] = true;
        }
        let even: Vec<bool> = e.elements.iter().map(|p| p.is_even()).collect();
        let classes = conjugacy_classes(g, limits)?;
        for cls in &classes.classes {
            if cls.element_order == 1 {
                continue;
            }
            let x = cls.representative;
            if !even[x as usize] || !in_radical[x as usize] {
                continue;
            }
            for &y in &radical {
                if y == Enumerated::IDENTITY || !even[y as usize] {
                    continue;
                }
                // ⟨x,y⟩ is perfect iff it equals the normal closure of the
                // commutator [x,y] inside it (two-generator groups only).
                if let Some(sub) = two_generated_perfect(e, x, y) {
                    b.add(sub, vec![x, y])?;
                }
            }
        }
    }

    // Layered cyclic extension.
    while let Some(id) = b.queue.pop() {
        let (sub, gens, _) = b.classes[id as usize].clone();
        if sub.len() as u64 == order {
            continue;
        }
        let bits = Bitset::from_sorted(e.size(), &sub);
        // normalizer scan
        let mut normalizer: Vec<u32> = Vec::new();
        for gidx in 0..e.size() as u32 {
            if bits.get(gidx) {
                normalizer.push(gidx);
                continue;
            }
            if sub.iter().all(|&h| bits.get(e.conj(h, gidx))) {
                normalizer.push(gidx);
            }
        }
        // candidates in the same coset of the subgroup generate the same
        // extension, so process one element per coset
        let mut coset_done = Bitset::new(e.size());
        for &x in &normalizer {
            if bits.get(x) || coset_done.get(x) {
                continue;
            }
            for &h in &sub {
                coset_done.set(e.mul(h, x));
            }
            // order of x modulo the subgroup
            let mut k = 1u64;
            let mut pow = x;
            while !bits.get(pow) {
                pow = e.mul(pow, x);
                k += 1;
            }
            if !is_prime(k) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let ext = e.subgroup_closure(&new_gens);
            debug_assert_eq!(ext.len() as u64, sub.len() as u64 * k);
            b.add(ext, new_gens)?;
        }
    }

    // Sort classes by (order, canonical vector) and mark maximal ones.
    let mut classes = b.classes;
    classes.sort_by(|a, c| (a.0.len(), &a.0).cmp(&(c.0.len(), &c.0)));
    let full_order = order;
    let mut all: Vec<SubgroupClass> = classes
        .into_iter()
        .map(|(elems, gens, length)| SubgroupClass {
            order: elems.len() as u64,
            rep_elements: elems,
            rep_generators: gens,
            length,
            is_maximal: false,
        })
        .collect();

    // A proper class is maximal when no strictly larger proper subgroup in
    // the global pool contains its representative.
    let pool: Vec<(&Vec<u32>, u32)> = {
        let mut v: Vec<(&Vec<u32>, u32)> = b.seen.iter().map(|(k, &v)| (k, v)).collect();
        v.sort();
        v
    };
    for i in 0..all.len() {
        let ord = all[i].order;
        if ord == full_order {
            continue;
        }
        let rep = &all[i].rep_elements;
        let mut maximal = true;
        for &(cand, _) in &pool {
            let cord = cand.len() as u64;
            if cord <= ord || cord == full_order || cord % ord != 0 {
                continue;
            }
            if sorted_subset(rep, cand) {
                maximal = false;
                break;
            }
        }
        all[i].is_maximal = maximal;
    }
    Ok(SubgroupCatalog { all_classes: all })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// For `K = ⟨x,y⟩`, returns `Some(K)` when `K` is perfect; avoids the
/// quadratic commutator scan by using that the derived subgroup of a
/// two-generator group is the normal closure of the single commutator.
/// Bails out as soon as the closure is known to be all of `K`, which makes
/// the common perfect case linear in `|K|`.
fn two_generated_perfect(e: &Enumerated, x: u32, y: u32) -> Option<Vec<u32>> {
    let c = e.mul(e.mul(e.inv(x), e.inv(y)), e.mul(x, y));
    if c == Enumerated::IDENTITY {
        return None; // abelian
    }
    let k = e.subgroup_closure(&[x, y]);
    let target = k.len();
    // normal closure of c in K: close under two-sided multiplication within
    // the set and conjugation by the two generators
    let n = e.size();
    let mut member = vec![false; n];
    member[Enumerated::IDENTITY as usize] = true;
    member[c as usize] = true;
    let mut list = vec![Enumerated::IDENTITY, c];
    let mut head = 1usize;
    while head < list.len() && list.len() < target {
        let a = list[head];
        head += 1;
        for &b in &[e.conj(a, x), e.conj(a, y)] {
            if !member[b as usize] {
                member[b as usize] = true;
                list.push(b);
            }
        }
        let mut i = 0;
        while i < list.len() && list.len() < target {
            let v = list[i];
            for &b in &[e.mul(a, v), e.mul(v, a)] {
                if !member[b as usize] {
                    member[b as usize] = true;
                    list.push(b);
                }
            }
            i += 1;
        }
    }
    if list.len() == target {
        Some(k)
    } else {
        None
    }
}

/// Derived subgroup of an index-list subgroup.
fn derived_subgroup(e: &Enumerated, sub: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; e.size()];
    let mut gens: Vec<u32> = Vec::new();
    for &a in sub {
        let inv_a = e.inv(a);
        for &bx in sub {
            let c = e.mul(e.mul(inv_a, e.inv(bx)), e.mul(a, bx));
            if !seen[c as usize] {
                seen[c as usize] = true;
                gens.push(c);
            }
        }
    }
    e.subgroup_closure(&gens)
}

/// Limit of the derived series: the largest perfect subgroup. Every perfect
/// subgroup is contained in it.
fn perfect_radical(e: &Enumerated) -> Vec<u32> {
    let mut cur: Vec<u32> = (0..e.size() as u32).collect();
    loop {
        let next = derived_subgroup(e, &cur);
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

fn is_soluble_elements(e: &Enumerated) -> bool {
    let mut cur: Vec<u32> = (0..e.size() as u32).collect();
    loop {
        let next = derived_subgroup(e, &cur);
        if next.len() == cur.len() {
            return cur.len() == 1;
        }
        cur = next;
    }
}

pub fn is_soluble(g: &PermGroup, limits: &Limits) -> Result<bool> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    Ok(is_soluble_elements(e))
}

/// Centre element indices.
pub fn centre(g: &PermGroup, limits: &Limits) -> Result<Vec<u32>> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let gen_idx: Vec<u32> = g
        .generators()
        .iter()
        .map(|p| e.index_of(p).unwrap())
        .collect();
    Ok((0..e.size() as u32)
        .filter(|&x| gen_idx.iter().all(|&gi| e.mul(x, gi) == e.mul(gi, x)))
        .collect())
}

/// All normal subgroups as element index lists, sorted by (order, elements).
/// Computed as the join closure of normal closures of single elements.
pub fn normal_subgroup_sets(g: &PermGroup, limits: &Limits) -> Result<Vec<Vec<u32>>> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let classes = conjugacy_classes(g, limits)?;
    let mut found: FxHashSet<Vec<u32>> = FxHashSet::default();
    found.insert(vec![Enumerated::IDENTITY]);
    // normal closures of single elements = subgroups generated by classes
    let mut worklist: Vec<Vec<u32>> = Vec::new();
    for cls in &classes.classes {
        let sub = e.subgroup_closure(&cls.members);
        if found.insert(sub.clone()) {
            worklist.push(sub);
        }
    }
    // close under pairwise joins
    let mut stable = false;
    while !stable {
        stable = true;
        let snapshot: Vec<Vec<u32>> = found.iter().cloned().collect();
        let mut sorted_snapshot = snapshot;
        sorted_snapshot.sort();
        for i in 0..sorted_snapshot.len() {
            for j in (i + 1)..sorted_snapshot.len() {
                if sorted_snapshot[j].len() == e.size() {
                    continue;
                }
                let join = e.closure_extend(&sorted_snapshot[i], &sorted_snapshot[j]);
                if found.insert(join) {
                    stable = false;
                }
            }
        }
    }
    let mut out: Vec<Vec<u32>> = found.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// All normal subgroups realized as `PermGroup`s of the same degree.
pub fn normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let e = g.enumerated(limits)?;
    let sets = normal_subgroup_sets(g, limits)?;
    sets.iter().map(|s| subgroup_from_indices(g, e, s)).collect()
}

pub fn subgroup_from_indices(
    _g: &PermGroup,
    e: &Enumerated,
    indices: &[u32],
) -> Result<PermGroup> {
    let gens = minimal_generators(e, indices);
    if gens.is_empty() {
        return Ok(PermGroup::trivial(e.element(0).degree()));
    }
    PermGroup::new(gens.iter().map(|&i| e.element(i).clone()).collect())
}

/// Membership test: is `n` normal in `g`?
pub fn is_normal(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<bool> {
    if !g.has_subgroup(n, limits)? {
        return Ok(false);
    }
    let ge = g.enumerated(limits)?;
    let ne = n.enumerated(limits)?;
    let n_idx: Vec<u32> = ne
        .elements
        .iter()
        .map(|p| ge.index_of(p).unwrap())
        .collect();
    let bits = Bitset::from_sorted(ge.size(), &{
        let mut v = n_idx.clone();
        v.sort_unstable();
        v
    });
    let gen_idx: Vec<u32> = g
        .generators()
        .iter()
        .map(|p| ge.index_of(p).unwrap())
        .collect();
    Ok(n_idx
        .iter()
        .all(|&x| gen_idx.iter().all(|&gi| bits.get(ge.conj(x, gi)))))
}

/// Faithful permutation image of `G/N` via the action on cosets of `N`.
pub fn quotient(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if !is_normal(g, n, limits)? {
        return Err(GroupError::NotNormal);
    }
    let (image, _) = g.coset_action(n, limits)?;
    Ok(image)
}

/// Composition and chief data.
#[derive(Debug, Clone)]
pub struct CompositionData {
    /// Composition length.
    pub length: u64,
    /// Number of abelian composition factors.
    pub abelian_factors: u64,
    /// Number of nonabelian chief factors.
    pub nonabelian_chief_factors: u64,
    /// Composition factor fingerprints top-down.
    pub factors: Vec<FactorFingerprint>,
    /// Chief factor fingerprints bottom-up, with multiplicity data.
    pub chief_factors: Vec<ChiefFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorFingerprint {
    pub order: u64,
    pub abelian: bool,
    pub class_count: u64,
    /// Name from the built-in table of small simple orders, when available.
    pub name: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ChiefFactor {
    pub order: u64,
    pub abelian: bool,
}

/// Names simple groups by order, using class count to split the one
/// ambiguous desk-scale order.
fn simple_name(order: u64, class_count: u64) -> Option<String> {
    let name = match order {
        60 => "A5",
        168 => "L2(7)",
        360 => "A6",
        504 => "L2(8)",
        660 => "L2(11)",
        1092 => "L2(13)",
        2448 => "L2(17)",
        2520 => "A7",
        3420 => "L2(19)",
        4080 => "L2(16)",
        5616 => "L3(3)",
        6048 => "U3(3)",
        6072 => "L2(23)",
        7800 => "L2(25)",
        7920 => "M11",
        9828 => "L2(27)",
        12180 => "L2(29)",
        20160 => {
            // A8 has 14 conjugacy classes, L3(4) has 10
            if class_count == 14 {
                "A8"
            } else {
                "L3(4)"
            }
        }
        25920 => "U4(2)",
        _ => return None,
    };
    Some(name.to_string())
}

fn fingerprint(g: &PermGroup, limits: &Limits) -> Result<FactorFingerprint> {
    let order = g.order(limits)?;
    let classes = conjugacy_classes(g, limits)?;
    let abelian = classes.len() as u64 == order;
    let name = if abelian {
        if is_prime(order) {
            Some(format!("C{order}"))
        } else {
            None
        }
    } else {
        simple_name(order, classes.len() as u64)
    };
    Ok(FactorFingerprint {
        order,
        abelian,
        class_count: classes.len() as u64,
        name,
    })
}

/// Composition series by repeated descent through maximal normal subgroups,
/// and chief series by ascent through minimal normal subgroups.
pub fn composition_data(g: &PermGroup, limits: &Limits) -> Result<CompositionData> {
    let mut factors: Vec<FactorFingerprint> = Vec::new();
    // Composition series: descend from G, always into the largest proper
    // normal subgroup (ties broken by element vector), so each quotient step
    // is simple.
    let mut current = g.clone();
    loop {
        let order = current.order(limits)?;
        if order == 1 {
            break;
        }
        let normals = normal_subgroup_sets(&current, limits)?;
        let e = current.enumerated(limits)?;
        let biggest = normals
            .iter()
            .filter(|s| (s.len() as u64) < order)
            .map(|s| s.len())
            .max()
            .unwrap();
        let max_proper = normals
            .iter()
            .filter(|s| s.len() == biggest)
            .min()
            .cloned()
            .unwrap();
        let n_group = subgroup_from_indices(&current, e, &max_proper)?;
        let q = quotient(&current, &n_group, limits)?;
        factors.push(fingerprint(&q, limits)?);
        // Recurse into the subgroup as a group in its own right.
        current = n_group;
    }

    // Chief series: ascend by minimal normal subgroups of successive
    // quotients.
    let mut chief: Vec<ChiefFactor> = Vec::new();
    let mut stage = g.clone();
    loop {
        let order = stage.order(limits)?;
        if order == 1 {
            break;
        }
        let normals = normal_subgroup_sets(&stage, limits)?;
        let e = stage.enumerated(limits)?;
        let min_nontrivial = normals
            .iter()
            .filter(|s| s.len() > 1)
            .min_by(|a, b| (a.len(), &**a).cmp(&(b.len(), &**b)))
            .cloned()
            .unwrap();
        let n_group = subgroup_from_indices(&stage, e, &min_nontrivial)?;
        let n_order = n_group.order(limits)?;
        let abelian = {
            let ne = n_group.enumerated(limits)?;
            ne.ensure_table(limits);
            let idx: Vec<u32> = (0..ne.size() as u32).collect();
            idx.iter()
                .all(|&a| idx.iter().all(|&b| ne.mul(a, b) == ne.mul(b, a)))
        };
        chief.push(ChiefFactor {
            order: n_order,
            abelian,
        });
        stage = quotient(&stage, &n_group, limits)?;
    }

    let abelian_factors = factors.iter().filter(|f| f.abelian).count() as u64;
    let nonabelian_chief_factors = chief.iter().filter(|c| !c.abelian).count() as u64;
    Ok(CompositionData {
        length: factors.len() as u64,
        abelian_factors,
        nonabelian_chief_factors,
        factors,
        chief_factors: chief,
    })
}

/// True when sorted slice `sub` is contained in sorted slice `sup`.
pub(crate) fn sorted_subset(sub: &[u32], sup: &[u32]) -> bool {
    let mut i = 0;
    for &x in sub {
        while i < sup.len() && sup[i] < x {
            i += 1;
        }
        if i == sup.len() || sup[i] != x {
            return false;
        }
        i += 1;
    }
    true
}

/// Minimal normal subgroups (as index sets of `g`'s enumeration).
pub fn minimal_normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<Vec<u32>>> {
    let normals = normal_subgroup_sets(g, limits)?;
    let proper: Vec<&Vec<u32>> = normals.iter().filter(|s| s.len() > 1).collect();
    let mut minimal = Vec::new();
    'outer: for s in &proper {
        for t in &proper {
            if t.len() < s.len() && s.len() % t.len() == 0 && sorted_subset(t, s) {
                continue 'outer;
            }
        }
        minimal.push((*s).clone());
    }
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn sym(n: usize) -> PermGroup {
        let mut gens = vec![];
        if n >= 2 {
            gens.push(Permutation::parse_cycles("(1,2)", n).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            gens.push(Permutation::parse_cycles(&format!("({})", cycle.join(",")), n).unwrap());
        }
        PermGroup::new(gens).unwrap()
    }

    #[test]
    fn sym3_class_sizes() {
        let t = conjugacy_classes(&sym(3), &lim()).unwrap();
        let sizes: Vec<usize> = t.classes.iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn sym6_has_eleven_classes() {
        // classes of S_n correspond to cycle types; p(6) = 11
        let g = sym(6);
        let t = conjugacy_classes(&g, &lim()).unwrap();
        assert_eq!(t.len(), 11);
        // independent check: count distinct cycle types directly
        let e = g.enumerated(&lim()).unwrap();
        let mut types: FxHashSet<Vec<usize>> = FxHashSet::default();
        for p in &e.elements {
            types.insert(p.cycle_type());
        }
        assert_eq!(types.len(), 11);
        let total: usize = t.classes.iter().map(|c| c.size()).sum();
        assert_eq!(total, 720);
    }

    #[test]
    fn alt5_class_sizes_by_direct_enumeration() {
        let a5 = PermGroup::generate(vec![perm("(1,2,3)", 5), perm("(3,4,5)", 5)], 100).unwrap();
        assert_eq!(a5.order(&lim()).unwrap(), 60);
        let t = conjugacy_classes(&a5, &lim()).unwrap();
        let mut sizes: Vec<usize> = t.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        // independent oracle: conjugate one element by everything
        let e = a5.enumerated(&lim()).unwrap();
        let x = e.index_of(&perm("(1,2,3)", 5)).unwrap();
        let mut orbit: FxHashSet<u32> = FxHashSet::default();
        for g in 0..60u32 {
            orbit.insert(e.conj(x, g));
        }
        assert_eq!(orbit.len(), 20);
    }

    #[test]
    fn classes_share_order_and_cycle_type() {
        let g = sym(5);
        let t = conjugacy_classes(&g, &lim()).unwrap();
        let e = g.enumerated(&lim()).unwrap();
        for c in &t.classes {
            let rep_type = e.element(c.representative).cycle_type();
            for &m in &c.members {
                assert_eq!(e.element(m).order(), c.element_order);
                assert_eq!(e.element(m).cycle_type(), rep_type);
            }
        }
    }

    /// Independent subgroup oracle: every subgroup of these small groups is
    /// two-generated, so closing all pairs finds them all.
    fn brute_force_subgroups(g: &PermGroup) -> Vec<Vec<u32>> {
        let e = g.enumerated(&lim()).unwrap();
        e.ensure_table(&lim());
        let n = e.size() as u32;
        let mut subs: FxHashSet<Vec<u32>> = FxHashSet::default();
        subs.insert(vec![0]);
        for x in 0..n {
            for y in 0..n {
                subs.insert(e.subgroup_closure(&[x, y]));
            }
        }
        let mut v: Vec<Vec<u32>> = subs.into_iter().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    #[test]
    fn sym3_subgroup_classes() {
        let cat = subgroup_lattice(&sym(3), &lim()).unwrap();
        let orders: Vec<u64> = cat.all_classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let maximal: Vec<u64> = cat
            .maximal_classes()
            .iter()
            .map(|c| c.order)
            .collect();
        assert_eq!(maximal, vec![2, 3]);
    }

    #[test]
    fn sym4_lattice_matches_brute_force() {
        let s4 = sym(4);
        let cat = subgroup_lattice(&s4, &lim()).unwrap();
        let brute = brute_force_subgroups(&s4);
        // total subgroup count: sum of class lengths must equal brute count
        let total: u64 = cat.all_classes.iter().map(|c| c.length).sum();
        assert_eq!(total, brute.len() as u64);
        // S4 has 30 subgroups in 11 classes
        assert_eq!(brute.len(), 30);
        assert_eq!(cat.all_classes.len(), 11);
        // maximal classes: A4 (12), D8 (8), S3 (6)
        let mut maximal: Vec<u64> = cat.maximal_classes().iter().map(|c| c.order).collect();
        maximal.sort_unstable();
        assert_eq!(maximal, vec![6, 8, 12]);
    }

    #[test]
    fn q8_maximal_classes_are_three_c4s() {
        // quaternion group via its regular representation
        let q8 = crate::constructions::quaternion8();
        assert_eq!(q8.order(&lim()).unwrap(), 8);
        let cat = subgroup_lattice(&q8, &lim()).unwrap();
        let maximal: Vec<u64> = cat.maximal_classes().iter().map(|c| c.order).collect();
        assert_eq!(maximal, vec![4, 4, 4]);
        // each of the three maximal subgroups is cyclic
        for c in cat.maximal_classes() {
            let e = q8.enumerated(&lim()).unwrap();
            assert!(c
                .rep_elements
                .iter()
                .any(|&x| e.element_order(x) == 4));
            assert_eq!(c.length, 1);
        }
    }

    #[test]
    fn alt5_lattice_has_perfect_top() {
        let a5 = PermGroup::generate(vec![perm("(1,2,3)", 5), perm("(3,4,5)", 5)], 100).unwrap();
        let cat = subgroup_lattice(&a5, &lim()).unwrap();
        // A5 has 59 subgroups in 9 classes
        assert_eq!(cat.all_classes.len(), 9);
        let total: u64 = cat.all_classes.iter().map(|c| c.length).sum();
        assert_eq!(total, 59);
        let mut maximal: Vec<u64> = cat.maximal_classes().iter().map(|c| c.order).collect();
        maximal.sort_unstable();
        assert_eq!(maximal, vec![6, 10, 12]);
    }

    #[test]
    fn normal_subgroups_of_sym4() {
        let sets = normal_subgroup_sets(&sym(4), &lim()).unwrap();
        let orders: Vec<usize> = sets.iter().map(|s| s.len()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn normal_subgroups_of_alt5_and_c6() {
        let a5 = PermGroup::generate(vec![perm("(1,2,3)", 5), perm("(3,4,5)", 5)], 100).unwrap();
        let sets = normal_subgroup_sets(&a5, &lim()).unwrap();
        assert_eq!(sets.len(), 2);
        let c6 = PermGroup::generate(vec![perm("(1,2,3,4,5,6)", 6)], 100).unwrap();
        let sets = normal_subgroup_sets(&c6, &lim()).unwrap();
        assert_eq!(sets.len(), 4);
    }

    #[test]
    fn quotient_sym4_by_v4() {
        let s4 = sym(4);
        let v4 = PermGroup::generate(
            vec![perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)],
            100,
        )
        .unwrap();
        let q = quotient(&s4, &v4, &lim()).unwrap();
        assert_eq!(q.order(&lim()).unwrap(), 6);
        // isomorphic to S3: order 6, 3 classes, nonabelian
        let t = conjugacy_classes(&q, &lim()).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn quotient_by_self_and_trivial() {
        let s3 = sym(3);
        let q = quotient(&s3, &s3, &lim()).unwrap();
        assert_eq!(q.order(&lim()).unwrap(), 1);
        let t = PermGroup::trivial(3);
        let q = quotient(&s3, &t, &lim()).unwrap();
        assert_eq!(q.order(&lim()).unwrap(), 6);
        assert_eq!(q.degree(), 6);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = sym(3);
        let c2 = PermGroup::generate(vec![perm("(1,2)", 3)], 10).unwrap();
        assert!(matches!(quotient(&s3, &c2, &lim()), Err(GroupError::NotNormal)));
    }

    #[test]
    fn composition_data_sym4() {
        let d = composition_data(&sym(4), &lim()).unwrap();
        assert_eq!(d.length, 4);
        assert_eq!(d.abelian_factors, 4);
        assert_eq!(d.nonabelian_chief_factors, 0);
        let orders: Vec<u64> = d.factors.iter().map(|f| f.order).collect();
        let mut sorted = orders.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 2, 2, 3]);
    }

    #[test]
    fn composition_data_sym5() {
        let d = composition_data(&sym(5), &lim()).unwrap();
        assert_eq!(d.length, 2);
        assert_eq!(d.nonabelian_chief_factors, 1);
        let names: Vec<Option<String>> = d.factors.iter().map(|f| f.name.clone()).collect();
        assert!(names.contains(&Some("A5".to_string())));
        assert!(names.contains(&Some("C2".to_string())));
    }

    #[test]
    fn composition_length_additive_over_normal_subgroup() {
        let s4 = sym(4);
        let e = s4.enumerated(&lim()).unwrap();
        for n_set in normal_subgroup_sets(&s4, &lim()).unwrap() {
            if n_set.len() == 1 || n_set.len() == 24 {
                continue;
            }
            let n = subgroup_from_indices(&s4, e, &n_set).unwrap();
            let q = quotient(&s4, &n, &lim()).unwrap();
            let a_g = composition_data(&s4, &lim()).unwrap().length;
            let a_n = composition_data(&n, &lim()).unwrap().length;
            let a_q = composition_data(&q, &lim()).unwrap().length;
            assert_eq!(a_g, a_n + a_q);
        }
    }

    #[test]
    fn soluble_detection() {
        assert!(is_soluble(&sym(4), &lim()).unwrap());
        let a5 = PermGroup::generate(vec![perm("(1,2,3)", 5), perm("(3,4,5)", 5)], 100).unwrap();
        assert!(!is_soluble(&a5, &lim()).unwrap());
    }

    #[test]
    fn maximality_verified_against_global_pool() {
        // no subgroup strictly between a maximal representative and the group
        let s4 = sym(4);
        let cat = subgroup_lattice(&s4, &lim()).unwrap();
        let brute = brute_force_subgroups(&s4);
        for c in cat.maximal_classes() {
            for cand in &brute {
                if cand.len() > c.rep_elements.len() && cand.len() < 24 {
                    let bits = Bitset::from_sorted(24, cand);
                    assert!(!bits.contains_all(&c.rep_elements));
                }
            }
        }
    }
}
