//! Generation numbers of normal sections under the ambient group action:
//! the smallest number of section elements whose closure under both the
//! group operation and conjugation by the ambient group is the full section.
//!
//! Sections are quotients B/A of two normal subgroups A <= B of G. The
//! machinery works for arbitrary sections; elementary abelian ones
//! additionally get a vector space structure (prime, dimension, basis and
//! action matrices), which the module bound checks use.

use crate::bounds::{self, BoundValue};
use crate::constructions::WreathData;
use crate::error::{GroupError, Result};
use crate::group::{Enumerated, PermGroup};
use crate::limits::Limits;
use crate::matgroup::FpMatrix;
use crate::perm::Permutation;
use crate::structure;

/// A section B/A of normal subgroups of an ambient group, with the induced
/// conjugation action and, when elementary abelian, its linear structure.
#[derive(Debug, Clone)]
pub struct GSection {
    /// canonical coset representatives, as ambient element indices; entry 0
    /// is the identity coset
    pub reps: Vec<u32>,
    mul: Vec<u16>,
    /// action of each ambient generator on the section by conjugation
    pub gen_action: Vec<Vec<u16>>,
    pub abelian: bool,
    pub elementary: Option<ElementaryData>,
}

#[derive(Debug, Clone)]
pub struct ElementaryData {
    pub p: u8,
    pub dim: usize,
    /// basis cosets as section indices
    pub basis: Vec<u16>,
    /// one action matrix per ambient generator
    pub matrices: Vec<FpMatrix>,
}

impl GSection {
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    fn times(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.reps.len() + b as usize]
    }

    /// Builds the section B/A. Both element lists are ambient index sets
    /// that must be normal subgroups of the ambient group with A inside B.
    pub fn new(
        ambient: &PermGroup,
        a_set: &[u32],
        b_set: &[u32],
        limits: &Limits,
    ) -> Result<GSection> {
        let e = ambient.enumerated(limits)?;
        e.ensure_table(limits);
        if !structure::sorted_subset(a_set, b_set) {
            return Err(GroupError::NotSubgroup("section needs A inside B".into()));
        }
        let gen_idx: Vec<u32> = ambient
            .generators()
            .iter()
            .map(|p| e.index_of(p).unwrap())
            .collect();
        for set in [a_set, b_set] {
            let sorted = set;
            for &x in sorted.iter() {
                for &g in &gen_idx {
                    if sorted.binary_search(&e.conj(x, g)).is_err() {
                        return Err(GroupError::NotNormal);
                    }
                }
            }
        }
        let size = b_set.len() / a_set.len();
        if size as u64 > limits.max_section {
            return Err(GroupError::cap("section size", size as u64, limits.max_section));
        }
        // assign cosets: iterate b ascending, so each coset's first-seen
        // element is its least member
        let mut coset_of: std::collections::HashMap<u32, u16> = Default::default();
        let mut reps: Vec<u32> = Vec::with_capacity(size);
        for &x in b_set {
            if coset_of.contains_key(&x) {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(x);
            for &a in a_set {
                coset_of.insert(e.mul(a, x), id);
            }
        }
        debug_assert_eq!(reps.len(), size);
        let mut mul = vec![0u16; size * size];
        for i in 0..size {
            for j in 0..size {
                mul[i * size + j] = coset_of[&e.mul(reps[i], reps[j])];
            }
        }
        let gen_action: Vec<Vec<u16>> = gen_idx
            .iter()
            .map(|&g| reps.iter().map(|&r| coset_of[&e.conj(r, g)]).collect())
            .collect();
        let abelian =
            (0..size).all(|i| (0..size).all(|j| mul[i * size + j] == mul[j * size + i]));
        let mut section = GSection {
            reps,
            mul,
            gen_action,
            abelian,
            elementary: None,
        };
        section.elementary = section.detect_elementary();
        Ok(section)
    }

    fn coset_order(&self, x: u16) -> u64 {
        let mut k = 1u64;
        let mut acc = x;
        while acc != 0 {
            acc = self.times(acc, x);
            k += 1;
        }
        k
    }

    fn detect_elementary(&self) -> Option<ElementaryData> {
        let size = self.size();
        if !self.abelian || size == 1 {
            return None;
        }
        let p = bounds::factorize(size as u64);
        if p.len() != 1 {
            return None;
        }
        let (p, dim) = (p[0].0, p[0].1 as usize);
        if p > 251 {
            return None;
        }
        if (1..size as u16).any(|x| self.coset_order(x) != p) {
            return None;
        }
        let p8 = p as u8;
        // greedy basis
        let mut basis: Vec<u16> = Vec::new();
        let mut span: Vec<u16> = vec![0];
        for x in 1..size as u16 {
            if span.contains(&x) {
                continue;
            }
            basis.push(x);
            // span = all products of powers of basis elements
            let mut next = vec![0u16];
            for &b in &basis {
                let mut layered = Vec::new();
                for &s in &next {
                    let mut acc = s;
                    for _ in 0..p {
                        layered.push(acc);
                        acc = self.times(acc, b);
                    }
                }
                layered.sort_unstable();
                layered.dedup();
                next = layered;
            }
            span = next;
            if span.len() == size {
                break;
            }
        }
        debug_assert_eq!(basis.len(), dim);
        // coordinates of every section element
        let mut coords = vec![vec![0u8; dim]; size];
        let mut filled = vec![false; size];
        let mut stack = vec![(0u16, vec![0u8; dim])];
        filled[0] = true;
        while let Some((el, co)) = stack.pop() {
            coords[el as usize] = co.clone();
            for (bi, &b) in basis.iter().enumerate() {
                let next = self.times(el, b);
                if !filled[next as usize] {
                    filled[next as usize] = true;
                    let mut nco = co.clone();
                    nco[bi] = (nco[bi] + 1) % p8;
                    stack.push((next, nco));
                }
            }
        }
        // action matrices
        let matrices = self
            .gen_action
            .iter()
            .map(|act| {
                let mut entries = vec![0u8; dim * dim];
                for (i, &b) in basis.iter().enumerate() {
                    let img = act[b as usize];
                    entries[i * dim..(i + 1) * dim].copy_from_slice(&coords[img as usize]);
                }
                FpMatrix::new(dim, p8, entries).unwrap()
            })
            .collect();
        Some(ElementaryData {
            p: p8,
            dim,
            basis,
            matrices,
        })
    }

    /// Closure of a set of section elements under the group operation and
    /// the ambient action; returns the sorted member list.
    fn action_closure(&self, seed: &[u16]) -> Vec<u16> {
        let size = self.size();
        let mut member = vec![false; size];
        member[0] = true;
        let mut list: Vec<u16> = vec![0];
        for &s in seed {
            if !member[s as usize] {
                member[s as usize] = true;
                list.push(s);
            }
        }
        let mut head = 0;
        while head < list.len() {
            let a = list[head];
            head += 1;
            for act in &self.gen_action {
                let b = act[a as usize];
                if !member[b as usize] {
                    member[b as usize] = true;
                    list.push(b);
                }
            }
            let mut i = 0;
            while i < list.len() {
                let v = list[i];
                for &b in &[self.times(a, v), self.times(v, a)] {
                    if !member[b as usize] {
                        member[b as usize] = true;
                        list.push(b);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }

    /// Orbits of the ambient action on section elements.
    fn orbits(&self) -> Vec<Vec<u16>> {
        let size = self.size();
        let mut seen = vec![false; size];
        let mut orbits = Vec::new();
        for start in 0..size as u16 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for act in &self.gen_action {
                    let y = act[x as usize];
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Number of orbits of the ambient group on the non-identity elements.
    pub fn chi(&self) -> u64 {
        self.orbits().iter().filter(|o| o[0] != 0).count() as u64
    }

    /// Minimal number of section elements generating the section under the
    /// combined group operation and ambient conjugation. The first slot only
    /// ranges over orbit representatives, which loses nothing because the
    /// closure of a singleton is constant along its orbit.
    pub fn d_value(&self) -> u64 {
        let size = self.size();
        if size == 1 {
            return 0;
        }
        let orbit_reps: Vec<u16> = self
            .orbits()
            .into_iter()
            .filter(|o| o[0] != 0)
            .map(|o| o[0])
            .collect();
        for k in 1..=64u64 {
            for &first in &orbit_reps {
                let have = self.action_closure(&[first]);
                if self.rec_generate(&have, k - 1) {
                    return k;
                }
            }
        }
        unreachable!("section generation exceeded 64 elements");
    }

    fn rec_generate(&self, have: &[u16], slots: u64) -> bool {
        if have.len() == self.size() {
            return true;
        }
        if slots == 0 {
            return false;
        }
        for x in 1..self.size() as u16 {
            if have.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = have.to_vec();
            seed.push(x);
            let bigger = self.action_closure(&seed);
            if self.rec_generate(&bigger, slots - 1) {
                return true;
            }
        }
        false
    }
}

/// Convenience: d_G(N) for a normal subgroup N of G (the section N/1).
pub fn d_g_of_normal(g: &PermGroup, n_set: &[u32], limits: &Limits) -> Result<u64> {
    let trivial = vec![Enumerated::IDENTITY];
    let section = GSection::new(g, &trivial, n_set, limits)?;
    Ok(section.d_value())
}

/// One checked abelian chief-factor bound of a large wreath subgroup.
#[derive(Debug, Clone)]
pub struct SectionBoundCheck {
    /// index of the chief factor in the bottom group's series, from the top
    pub factor: usize,
    pub prime: u64,
    pub dim: usize,
    pub section_size: usize,
    pub d_g: u64,
    pub bound: BoundValue,
    /// whether the soluble-case bound applied
    pub soluble_route: bool,
    pub ok: bool,
}

/// Chief series of a group as ascending element-index sets (starting at the
/// trivial subgroup, ending at the full group).
pub fn chief_series_sets(g: &PermGroup, limits: &Limits) -> Result<Vec<Vec<u32>>> {
    let e = g.enumerated(limits)?;
    let normals = structure::normal_subgroup_sets(g, limits)?;
    let mut chain: Vec<Vec<u32>> = vec![vec![Enumerated::IDENTITY]];
    loop {
        let current = chain.last().unwrap();
        if current.len() == e.size() {
            break;
        }
        // smallest normal subgroup strictly containing the current one
        let next = normals
            .iter()
            .filter(|n| n.len() > current.len() && structure::sorted_subset(current, n))
            .min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)))
            .cloned()
            .expect("normal lattice has a top");
        chain.push(next);
    }
    Ok(chain)
}

/// Checks, for each abelian chief factor of the bottom group, that the
/// corresponding section of the large subgroup is generated by at most
/// dim * E'(s, p) elements, where E' is the soluble-case bound when the top
/// group contains a soluble transitive subgroup and the general bound
/// otherwise.
pub fn check_module_bounds(
    g: &PermGroup,
    w: &WreathData,
    limits: &Limits,
) -> Result<Vec<SectionBoundCheck>> {
    let (r, s) = (w.r, w.s);
    if g.degree() != r * s {
        return Err(GroupError::BlockMismatch(
            "group degree does not match the wreath coordinates".into(),
        ));
    }
    let soluble_route = top_has_soluble_transitive(&w.top, limits)?;
    let bottom_e = w.bottom.enumerated(limits)?;
    let chain = chief_series_sets(&w.bottom, limits)?;
    let ge = g.enumerated(limits)?;

    // membership of a g-element in the base subgroup over a bottom subgroup
    let in_base = |p: &Permutation, level: &[u32]| -> bool {
        for j in 0..s {
            let mut restricted = Vec::with_capacity(r);
            for i in 0..r {
                let t = p.apply(j * r + i);
                if t / r != j {
                    return false;
                }
                restricted.push((t - j * r) as u16);
            }
            let Ok(q) = Permutation::from_images(restricted) else {
                return false;
            };
            match bottom_e.index_of(&q) {
                Some(idx) => {
                    if level.binary_search(&idx).is_err() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    };

    let mut checks = Vec::new();
    for step in 1..chain.len() {
        let below = &chain[step - 1];
        let above = &chain[step];
        let factor_size = above.len() / below.len();
        let fact = bounds::factorize(factor_size as u64);
        // only elementary abelian chief factors carry a module bound
        if fact.len() != 1 {
            continue;
        }
        let (p, a) = (fact[0].0, fact[0].1 as usize);
        // is the factor actually abelian? chief factors of soluble steps
        // always are; a nonabelian chief factor has composite order anyway
        let mut lower_set: Vec<u32> = (0..ge.size() as u32)
            .filter(|&i| in_base(ge.element(i), below))
            .collect();
        let mut upper_set: Vec<u32> = (0..ge.size() as u32)
            .filter(|&i| in_base(ge.element(i), above))
            .collect();
        lower_set.sort_unstable();
        upper_set.sort_unstable();
        if lower_set.len() == upper_set.len() {
            // the section is trivial in this subgroup: vacuous pass
            checks.push(SectionBoundCheck {
                factor: step,
                prime: p,
                dim: a,
                section_size: 1,
                d_g: 0,
                bound: e_prime(s as u64, p, soluble_route),
                soluble_route,
                ok: true,
            });
            continue;
        }
        let section = GSection::new(g, &lower_set, &upper_set, limits)?;
        let d_g = section.d_value();
        let mut bound = e_prime(s as u64, p, soluble_route);
        // scale by the chief factor dimension
        bound = match bound {
            BoundValue::Finite(v) => BoundValue::Finite(
                v * num_rational::BigRational::from_integer(num_bigint::BigInt::from(a as u64)),
            ),
            BoundValue::Infinity => BoundValue::Infinity,
        };
        let ok = bound.cmp_int(d_g) != std::cmp::Ordering::Less;
        checks.push(SectionBoundCheck {
            factor: step,
            prime: p,
            dim: a,
            section_size: section.size(),
            d_g,
            bound,
            soluble_route,
            ok,
        });
    }
    Ok(checks)
}

fn e_prime(s: u64, p: u64, soluble_route: bool) -> BoundValue {
    if soluble_route {
        bounds::e_sol_bound(s, p)
    } else {
        bounds::e_bound(s, p)
    }
}

/// Whether the top group contains a soluble transitive subgroup; decided
/// exhaustively over the subgroup lattice when feasible, otherwise assumed
/// false so the always-valid general bound is used.
pub fn top_has_soluble_transitive(top: &PermGroup, limits: &Limits) -> Result<bool> {
    if structure::is_soluble(top, limits)? && top.is_transitive() {
        return Ok(true);
    }
    if top.order(limits)? > limits.max_lattice_order {
        return Ok(false);
    }
    let e = top.enumerated(limits)?;
    let cat = structure::subgroup_lattice(top, limits)?;
    for class in &cat.all_classes {
        let sub = structure::subgroup_from_indices(top, e, &class.rep_elements)?;
        if sub.is_transitive() && structure::is_soluble(&sub, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn v4_inside_sym4_is_one_generated() {
        let s4 = constructions::symmetric(4).unwrap();
        let e = s4.enumerated(&lim()).unwrap();
        let normals = structure::normal_subgroup_sets(&s4, &lim()).unwrap();
        let v4 = normals.iter().find(|n| n.len() == 4).unwrap();
        assert_eq!(d_g_of_normal(&s4, v4, &lim()).unwrap(), 1);
        let _ = e;
    }

    #[test]
    fn trivial_action_reduces_to_plain_generation() {
        // in an abelian group the ambient closure adds nothing
        let c6 = constructions::cyclic(6).unwrap();
        let e = c6.enumerated(&lim()).unwrap();
        let all: Vec<u32> = (0..e.size() as u32).collect();
        assert_eq!(d_g_of_normal(&c6, &all, &lim()).unwrap(), 1);
        let v4 = crate::group::PermGroup::new(vec![
            Permutation::parse_cycles("(1,2)", 4).unwrap(),
            Permutation::parse_cycles("(3,4)", 4).unwrap(),
        ])
        .unwrap();
        let e = v4.enumerated(&lim()).unwrap();
        let all: Vec<u32> = (0..e.size() as u32).collect();
        assert_eq!(d_g_of_normal(&v4, &all, &lim()).unwrap(), 2);
    }

    #[test]
    fn b4_bottom_section_needs_two() {
        // inversion preserves lines, so single cyclic closures stay
        // one-dimensional
        let b4 = constructions::b_group(4).unwrap();
        let normals = structure::normal_subgroup_sets(&b4, &lim()).unwrap();
        let nine = normals.iter().find(|n| n.len() == 9).unwrap();
        assert_eq!(d_g_of_normal(&b4, nine, &lim()).unwrap(), 2);
        // and the ambient orbit count on nonzero vectors is 4
        let trivial = vec![0u32];
        let section = GSection::new(&b4, &trivial, nine, &lim()).unwrap();
        assert_eq!(section.chi(), 4);
        let el = section.elementary.as_ref().unwrap();
        assert_eq!(el.p, 3);
        assert_eq!(el.dim, 2);
    }

    #[test]
    fn chi_trivial_action_counts_all_nonzero() {
        // C2 x C2 acted on by nothing: 3 orbits on nonzero vectors
        let v4 = crate::group::PermGroup::new(vec![
            Permutation::parse_cycles("(1,2)", 4).unwrap(),
            Permutation::parse_cycles("(3,4)", 4).unwrap(),
        ])
        .unwrap();
        let e = v4.enumerated(&lim()).unwrap();
        let all: Vec<u32> = (0..e.size() as u32).collect();
        let section = GSection::new(&v4, &[0], &all, &lim()).unwrap();
        assert_eq!(section.chi(), 3);
    }

    #[test]
    fn chi_gl22_on_its_module_is_one() {
        // realize F_2^2 with the full GL_2(2)-action: the wreath C2 wr ...
        // is overkill; use Sym(4) acting on V4 by conjugation, which is the
        // full GL_2(2) = S3 action up to kernel
        let s4 = constructions::symmetric(4).unwrap();
        let normals = structure::normal_subgroup_sets(&s4, &lim()).unwrap();
        let v4 = normals.iter().find(|n| n.len() == 4).unwrap();
        let section = GSection::new(&s4, &[0], v4, &lim()).unwrap();
        assert_eq!(section.chi(), 1);
    }

    #[test]
    fn wreath_c2_c2_module_bound() {
        let c2 = constructions::cyclic(2).unwrap();
        let w = constructions::wreath(&c2, &c2).unwrap();
        let checks = check_module_bounds(&w.whole, &w, &lim()).unwrap();
        assert_eq!(checks.len(), 1);
        let c = &checks[0];
        assert!(c.soluble_route);
        assert_eq!(c.d_g, 1);
        assert_eq!(c.bound, BoundValue::from_int(1));
        assert!(c.ok);
    }

    #[test]
    fn wreath_s3_c3_module_bounds_hold() {
        let s3 = constructions::symmetric(3).unwrap();
        let c3 = constructions::cyclic(3).unwrap();
        let w = constructions::wreath(&s3, &c3).unwrap();
        let checks = check_module_bounds(&w.whole, &w, &lim()).unwrap();
        assert_eq!(checks.len(), 2);
        for c in &checks {
            assert!(c.ok, "factor {} bound {} d_g {}", c.factor, c.bound, c.d_g);
            assert_eq!(c.d_g, 1);
        }
    }

    #[test]
    fn trivial_bottom_is_vacuous() {
        let t = crate::group::PermGroup::trivial(2);
        let c2 = constructions::cyclic(2).unwrap();
        let w = constructions::wreath(&t, &c2).unwrap();
        let checks = check_module_bounds(&w.whole, &w, &lim()).unwrap();
        assert!(checks.is_empty());
    }
}
