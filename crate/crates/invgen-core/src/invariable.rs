//! Deciding invariable generation and computing the exact invariable
//! generation number.
//!
//! Two independent deciders are provided. The cover criterion uses maximal
//! subgroup data: a tuple of classes invariably generates exactly when every
//! maximal subgroup class is avoided ("killed") by some member class, so the
//! minimal invariable generating number is a minimum set cover. The tuple
//! oracle brute-forces conjugate combinations and tests generation by
//! closure; it is the cross-validation path and the fallback when maximal
//! subgroup data is out of reach.

use crate::error::{GroupError, Result};
use crate::group::{Enumerated, PermGroup};
use crate::limits::Limits;
use crate::structure::{self, ClassTable};

/// Kill sets over at most 256 maximal classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KillSet {
    words: [u64; 4],
}

impl KillSet {
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn union(&self, other: &KillSet) -> KillSet {
        let mut out = *self;
        for k in 0..4 {
            out.words[k] |= other.words[k];
        }
        out
    }
    fn minus(&self, other: &KillSet) -> KillSet {
        let mut out = *self;
        for k in 0..4 {
            out.words[k] &= !other.words[k];
        }
        out
    }
    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }
    fn full(n: usize) -> KillSet {
        let mut out = KillSet::default();
        for i in 0..n {
            out.set(i);
        }
        out
    }
    fn iter_bits(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |&i| self.contains(i))
    }
}

/// The set-cover instance of a group: for every conjugacy class, the set of
/// maximal subgroup classes it kills (has empty intersection with).
#[derive(Debug, Clone)]
pub struct CoverInstance {
    /// number of maximal subgroup classes (the universe)
    pub maximal_count: usize,
    /// kill set per conjugacy class, indexed like the class table
    pub kills: Vec<KillSet>,
    /// class sizes, for the branch ordering
    pub class_sizes: Vec<u64>,
}

/// True when no conjugate of the class meets the maximal subgroup: the class
/// has empty intersection with the maximal subgroup's element set.
pub fn kills(table: &ClassTable, class_index: usize, maximal_elements: &[u32]) -> bool {
    !maximal_elements
        .iter()
        .any(|&m| table.class_of[m as usize] as usize == class_index)
}

/// Builds the cover instance from the class table and subgroup lattice.
pub fn build_cover(g: &PermGroup, limits: &Limits) -> Result<CoverInstance> {
    let table = structure::conjugacy_classes(g, limits)?;
    if table.len() as u64 > limits.max_classes {
        return Err(GroupError::cap(
            "conjugacy classes",
            table.len() as u64,
            limits.max_classes,
        ));
    }
    let lattice = structure::subgroup_lattice(g, limits)?;
    let maximal = lattice.maximal_classes();
    if maximal.len() as u64 > limits.max_maximal_classes {
        return Err(GroupError::cap(
            "maximal classes",
            maximal.len() as u64,
            limits.max_maximal_classes,
        ));
    }
    let mut kills_per_class = vec![KillSet::default(); table.len()];
    for (mi, m) in maximal.iter().enumerate() {
        // classes meeting this maximal subgroup
        let mut met = vec![false; table.len()];
        for &el in &m.rep_elements {
            met[table.class_of[el as usize] as usize] = true;
        }
        for (ci, kill) in kills_per_class.iter_mut().enumerate() {
            if !met[ci] {
                kill.set(mi);
            }
        }
    }
    Ok(CoverInstance {
        maximal_count: maximal.len(),
        kills: kills_per_class,
        class_sizes: table.classes.iter().map(|c| c.size() as u64).collect(),
    })
}

/// Cover criterion: the class multiset invariably generates exactly when the
/// union of its kill sets is the whole universe.
pub fn is_invgen_cover(instance: &CoverInstance, class_multiset: &[u32]) -> bool {
    let mut covered = KillSet::default();
    for &c in class_multiset {
        covered = covered.union(&instance.kills[c as usize]);
    }
    covered.count() as usize == instance.maximal_count
}

/// Brute-force oracle: with the first element fixed (conjugating a whole
/// tuple never changes whether it generates), iterates over all conjugate
/// combinations of the remaining elements and tests generation by closure.
/// Identity entries are dropped first, and the element of the largest class
/// is the one held fixed; neither changes the decided predicate.
pub fn is_invgen_oracle(
    g: &PermGroup,
    tuple: &[crate::perm::Permutation],
    limits: &Limits,
) -> Result<bool> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let table = structure::conjugacy_classes(g, limits)?;
    let mut indices = Vec::new();
    for p in tuple {
        let idx = e
            .index_of(p)
            .ok_or_else(|| GroupError::NotSubgroup("oracle tuple element outside group".into()))?;
        if idx != Enumerated::IDENTITY {
            indices.push(idx);
        }
    }
    if indices.is_empty() {
        return Ok(e.size() == 1);
    }
    is_invgen_oracle_indices(e, &table, &indices, limits)
}

fn is_invgen_oracle_indices(
    e: &Enumerated,
    table: &ClassTable,
    indices: &[u32],
    limits: &Limits,
) -> Result<bool> {
    // fix the member of the largest class, iterate the others
    let mut rest: Vec<u32> = indices.to_vec();
    let largest = (0..rest.len())
        .max_by_key(|&i| table.classes[table.class_of[rest[i] as usize] as usize].size())
        .unwrap();
    let fixed = rest.swap_remove(largest);
    // iterate smaller classes in outer loops
    rest.sort_by_key(|&x| table.classes[table.class_of[x as usize] as usize].size());

    let mut combos: u64 = 1;
    for &x in &rest {
        combos = combos
            .saturating_mul(table.classes[table.class_of[x as usize] as usize].size() as u64);
    }
    if combos > limits.max_oracle_combinations {
        return Err(GroupError::cap(
            "oracle combinations",
            combos,
            limits.max_oracle_combinations,
        ));
    }

    let start_size = e.subgroup_closure(&[fixed]).len();
    rec_oracle(e, table, &mut vec![fixed], start_size, &rest)
}

/// Depth-first over conjugate choices, carrying the generator list; a
/// partial subgroup equal to the whole group makes every deeper choice
/// succeed, and the first failing combination ends the search. Closures are
/// generator-based, hence linear in the subgroup size.
fn rec_oracle(
    e: &Enumerated,
    table: &ClassTable,
    gens: &mut Vec<u32>,
    size: usize,
    rest: &[u32],
) -> Result<bool> {
    if size == e.size() {
        return Ok(true);
    }
    let Some((&next, deeper)) = rest.split_first() else {
        return Ok(false);
    };
    let class = &table.classes[table.class_of[next as usize] as usize];
    for &conj in &class.members {
        gens.push(conj);
        let bigger = e.subgroup_closure(gens).len();
        let ok = rec_oracle(e, table, gens, bigger, deeper)?;
        gens.pop();
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How an exact invariable generation number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiMethod {
    /// minimum set cover over maximal subgroup classes
    Cover,
    /// increasing-size search decided by the tuple oracle
    Oracle,
}

#[derive(Debug, Clone)]
pub struct DiResult {
    pub value: u64,
    /// lexicographically least optimal class multiset (table indices)
    pub witness: Vec<u32>,
    pub method: DiMethod,
}

/// Exact invariable generation number. Uses the cover search whenever the
/// subgroup lattice is within reach, otherwise falls back to the oracle.
pub fn di(g: &PermGroup, limits: &Limits) -> Result<DiResult> {
    let order = g.order(limits)?;
    if order == 1 {
        return Ok(DiResult {
            value: 0,
            witness: vec![],
            method: DiMethod::Cover,
        });
    }
    if order <= limits.max_lattice_order {
        let instance = build_cover(g, limits)?;
        let (value, witness) = min_cover(&instance);
        return Ok(DiResult {
            value,
            witness,
            method: DiMethod::Cover,
        });
    }
    di_oracle(g, limits)
}

/// Exact minimum cover with branch and bound, then a lexicographic pass to
/// pin the least optimal witness.
pub fn min_cover(instance: &CoverInstance) -> (u64, Vec<u32>) {
    let m = instance.maximal_count;
    if m == 0 {
        // no maximal classes happens only for the trivial group
        return (0, vec![]);
    }
    let full = KillSet::full(m);
    let classes: Vec<u32> = (0..instance.kills.len() as u32).collect();
    // branch order: by class size, then class index
    let mut branch_order = classes.clone();
    branch_order.sort_by_key(|&c| (instance.class_sizes[c as usize], c));

    // greedy upper bound
    let mut covered = KillSet::default();
    let mut greedy = 0u64;
    while covered.count() as usize != m {
        let best = branch_order
            .iter()
            .max_by_key(|&&c| {
                (
                    instance.kills[c as usize].minus(&covered).count(),
                    std::cmp::Reverse(c),
                )
            })
            .copied()
            .unwrap();
        let gain = instance.kills[best as usize].minus(&covered).count();
        if gain == 0 {
            // universe cannot be covered: the group is not invariably
            // generated by any multiset, impossible for a finite group
            unreachable!("some maximal class is killed by no conjugacy class");
        }
        covered = covered.union(&instance.kills[best as usize]);
        greedy += 1;
    }

    let max_kill = instance
        .kills
        .iter()
        .map(|k| k.count())
        .max()
        .unwrap_or(0)
        .max(1);

    // greedy-dual lower bound on a partial state
    let dual_bound = |uncovered: &KillSet| -> u64 {
        let mut remaining = *uncovered;
        let mut picks = 0u64;
        while !remaining.is_empty() {
            // element with fewest killers
            let u = remaining
                .iter_bits(m)
                .min_by_key(|&u| {
                    instance
                        .kills
                        .iter()
                        .filter(|k| k.contains(u))
                        .count()
                })
                .unwrap();
            picks += 1;
            let mut hit = KillSet::default();
            for k in instance.kills.iter().filter(|k| k.contains(u)) {
                hit = hit.union(k);
            }
            remaining = remaining.minus(&hit);
        }
        picks
    };

    struct Search<'a> {
        instance: &'a CoverInstance,
        branch_order: &'a [u32],
        best: u64,
        m: usize,
    }

    impl Search<'_> {
        fn go(&mut self, uncovered: KillSet, chosen: u64, dual: &dyn Fn(&KillSet) -> u64) {
            if uncovered.is_empty() {
                self.best = self.best.min(chosen);
                return;
            }
            if chosen + dual(&uncovered) >= self.best {
                return;
            }
            // branch on the uncovered maximal class with fewest killers
            let u = uncovered
                .iter_bits(self.m)
                .min_by_key(|&u| {
                    self.instance
                        .kills
                        .iter()
                        .filter(|k| k.contains(u))
                        .count()
                })
                .unwrap();
            for &c in self.branch_order {
                if self.instance.kills[c as usize].contains(u) {
                    self.go(
                        uncovered.minus(&self.instance.kills[c as usize]),
                        chosen + 1,
                        dual,
                    );
                }
            }
        }
    }

    let mut search = Search {
        instance,
        branch_order: &branch_order,
        best: greedy,
        m,
    };
    search.go(full, 0, &dual_bound);
    let opt = search.best;

    // lexicographically least witness of the optimal size
    let mut witness = Vec::new();
    let found = lex_witness(instance, opt, 0, full, &mut witness, max_kill as u64);
    debug_assert!(found);
    (opt, witness)
}

fn lex_witness(
    instance: &CoverInstance,
    remaining: u64,
    from: u32,
    uncovered: KillSet,
    acc: &mut Vec<u32>,
    max_kill: u64,
) -> bool {
    if uncovered.is_empty() {
        // covering with fewer classes than the optimum is impossible, so a
        // clean cover at this depth means all slots were used
        return remaining == 0;
    }
    if remaining == 0 || remaining * max_kill < uncovered.count() as u64 {
        return false;
    }
    for c in from..instance.kills.len() as u32 {
        let after = uncovered.minus(&instance.kills[c as usize]);
        if after.count() == uncovered.count() {
            // a class contributing nothing never appears in an optimal cover
            continue;
        }
        acc.push(c);
        if lex_witness(instance, remaining - 1, c + 1, after, acc, max_kill) {
            return true;
        }
        acc.pop();
    }
    false
}

/// Oracle-driven exact search: increasing multiset size over strictly
/// increasing class tuples (a repeated class never helps, because the union
/// of conjugates depends only on the class set).
fn di_oracle(g: &PermGroup, limits: &Limits) -> Result<DiResult> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let table = structure::conjugacy_classes(g, limits)?;
    if table.len() as u64 > limits.max_classes {
        return Err(GroupError::cap(
            "conjugacy classes",
            table.len() as u64,
            limits.max_classes,
        ));
    }
    let nontrivial: Vec<u32> = (0..table.len() as u32)
        .filter(|&c| table.classes[c as usize].element_order > 1)
        .collect();
    let max_size = 64u64.min(nontrivial.len() as u64);
    for d in 1..=max_size {
        let mut tuple: Vec<u32> = Vec::new();
        let mut skipped = false;
        if let Some(witness) =
            oracle_size_search(e, &table, &nontrivial, d as usize, 0, &mut tuple, limits, &mut skipped)?
        {
            return Ok(DiResult {
                value: d,
                witness,
                method: DiMethod::Oracle,
            });
        }
        if skipped {
            return Err(GroupError::cap(
                "oracle combinations",
                limits.max_oracle_combinations + 1,
                limits.max_oracle_combinations,
            ));
        }
    }
    Err(GroupError::cap("oracle search size", max_size, max_size))
}

#[allow(clippy::too_many_arguments)]
fn oracle_size_search(
    e: &Enumerated,
    table: &ClassTable,
    classes: &[u32],
    size: usize,
    from: usize,
    acc: &mut Vec<u32>,
    limits: &Limits,
    skipped: &mut bool,
) -> Result<Option<Vec<u32>>> {
    if acc.len() == size {
        let reps: Vec<u32> = acc
            .iter()
            .map(|&c| table.classes[c as usize].representative)
            .collect();
        return match is_invgen_oracle_indices(e, table, &reps, limits) {
            Ok(true) => Ok(Some(acc.clone())),
            Ok(false) => Ok(None),
            Err(GroupError::CapExceeded { .. }) => {
                *skipped = true;
                Ok(None)
            }
            Err(other) => Err(other),
        };
    }
    for (pos, &c) in classes.iter().enumerate().skip(from) {
        acc.push(c);
        if let Some(w) =
            oracle_size_search(e, table, classes, size, pos + 1, acc, limits, skipped)?
        {
            return Ok(Some(w));
        }
        acc.pop();
    }
    Ok(None)
}

/// Exact minimal generating number by increasing-size tuple search, the
/// first slot restricted to class representatives.
pub fn d(g: &PermGroup, limits: &Limits) -> Result<u64> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    if e.size() == 1 {
        return Ok(0);
    }
    let table = structure::conjugacy_classes(g, limits)?;
    let reps: Vec<u32> = table
        .classes
        .iter()
        .filter(|c| c.element_order > 1)
        .map(|c| c.representative)
        .collect();
    let bound = 64 - (e.size() as u64).leading_zeros() as u64 + 1;
    for size in 1..=bound {
        for &first in &reps {
            let have = e.subgroup_closure(&[first]);
            if rec_generates(e, &mut vec![first], &have, size - 1) {
                return Ok(size);
            }
        }
    }
    Err(GroupError::InvalidParameter(
        "generating search exceeded the logarithmic bound".into(),
    ))
}

fn rec_generates(e: &Enumerated, gens: &mut Vec<u32>, have: &[u32], slots: u64) -> bool {
    if have.len() == e.size() {
        return true;
    }
    if slots == 0 {
        return false;
    }
    for y in 1..e.size() as u32 {
        // adding an element already present never grows the subgroup
        if have.binary_search(&y).is_ok() {
            continue;
        }
        gens.push(y);
        let bigger = e.subgroup_closure(gens);
        let ok = rec_generates(e, gens, &bigger, slots - 1);
        gens.pop();
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::perm::Permutation;

    fn lim() -> Limits {
        Limits::default()
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn kills_examples_sym4() {
        let s4 = constructions::symmetric(4).unwrap();
        let table = structure::conjugacy_classes(&s4, &lim()).unwrap();
        let lattice = structure::subgroup_lattice(&s4, &lim()).unwrap();
        let e = s4.enumerated(&lim()).unwrap();
        let class_of_perm = |s: &str| -> usize {
            let idx = e.index_of(&perm(s, 4)).unwrap();
            table.class_of[idx as usize] as usize
        };
        let four_cycle = class_of_perm("(1,2,3,4)");
        let three_cycle = class_of_perm("(1,2,3)");
        let identity = table.class_of[0] as usize;
        for m in lattice.maximal_classes() {
            // identity lies in every subgroup
            assert!(!kills(&table, identity, &m.rep_elements));
            match m.order {
                12 => {
                    // alternating group: 4-cycles are odd
                    assert!(kills(&table, four_cycle, &m.rep_elements));
                    assert!(!kills(&table, three_cycle, &m.rep_elements));
                }
                8 => {
                    // Sylow 2: no order-3 element
                    assert!(kills(&table, three_cycle, &m.rep_elements));
                    assert!(!kills(&table, four_cycle, &m.rep_elements));
                }
                6 => {
                    // point stabilizer: 4-cycles fix nothing
                    assert!(kills(&table, four_cycle, &m.rep_elements));
                }
                other => panic!("unexpected maximal order {other}"),
            }
        }
    }

    #[test]
    fn cover_sym4_four_cycle_plus_three_cycle() {
        let s4 = constructions::symmetric(4).unwrap();
        let inst = build_cover(&s4, &lim()).unwrap();
        let table = structure::conjugacy_classes(&s4, &lim()).unwrap();
        let e = s4.enumerated(&lim()).unwrap();
        let class_of_perm = |s: &str| -> u32 {
            let idx = e.index_of(&perm(s, 4)).unwrap();
            table.class_of[idx as usize]
        };
        let four = class_of_perm("(1,2,3,4)");
        let three = class_of_perm("(1,2,3)");
        assert!(is_invgen_cover(&inst, &[four, three]));
        let identity = table.class_of[0];
        assert!(!is_invgen_cover(&inst, &[identity]));
        assert!(!is_invgen_cover(&inst, &[identity, identity, identity]));
    }

    #[test]
    fn oracle_sym3_examples() {
        let s3 = constructions::symmetric(3).unwrap();
        assert!(is_invgen_oracle(
            &s3,
            &[perm("(1,2,3)", 3), perm("(1,2)", 3)],
            &lim()
        )
        .unwrap());
        // two 3-cycles can both land inside the alternating subgroup
        assert!(!is_invgen_oracle(
            &s3,
            &[perm("(1,2,3)", 3), perm("(1,3,2)", 3)],
            &lim()
        )
        .unwrap());
    }

    #[test]
    fn di_small_symmetric_groups() {
        for (n, expected) in [(3usize, 2u64), (4, 2), (5, 2)] {
            let g = constructions::symmetric(n).unwrap();
            let r = di(&g, &lim()).unwrap();
            assert_eq!(r.value, expected, "S{n}");
            assert_eq!(r.method, DiMethod::Cover);
            // the witness really covers
            let inst = build_cover(&g, &lim()).unwrap();
            assert!(is_invgen_cover(&inst, &r.witness));
        }
    }

    #[test]
    fn di_sym6_is_three() {
        let s6 = constructions::symmetric(6).unwrap();
        let r = di(&s6, &lim()).unwrap();
        assert_eq!(r.value, 3);
        // no pair of classes suffices
        let inst = build_cover(&s6, &lim()).unwrap();
        let k = inst.kills.len() as u32;
        for a in 0..k {
            for b in a..k {
                assert!(!is_invgen_cover(&inst, &[a, b]));
            }
        }
    }

    #[test]
    fn di_trivial_group_is_zero() {
        let t = PermGroup::trivial(1);
        let r = di(&t, &lim()).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
        assert_eq!(d(&t, &lim()).unwrap(), 0);
    }

    #[test]
    fn d_examples() {
        let s6 = constructions::symmetric(6).unwrap();
        assert_eq!(d(&s6, &lim()).unwrap(), 2);
        let v4 = PermGroup::new(vec![perm("(1,2)", 4), perm("(3,4)", 4)]).unwrap();
        assert_eq!(d(&v4, &lim()).unwrap(), 2);
        let c6 = constructions::cyclic(6).unwrap();
        assert_eq!(d(&c6, &lim()).unwrap(), 1);
    }

    #[test]
    fn di_at_least_d() {
        for g in [
            constructions::symmetric(4).unwrap(),
            constructions::quaternion8(),
            constructions::b_group(4).unwrap(),
            constructions::frob21().unwrap(),
        ] {
            let dv = d(&g, &lim()).unwrap();
            let div = di(&g, &lim()).unwrap().value;
            assert!(div >= dv);
        }
    }

    #[test]
    fn oracle_depends_only_on_class_multiset() {
        let s4 = constructions::symmetric(4).unwrap();
        let e = s4.enumerated(&lim()).unwrap();
        let table = structure::conjugacy_classes(&s4, &lim()).unwrap();
        // compare the oracle on different members of the same classes
        for cls in &table.classes {
            if cls.element_order == 1 {
                continue;
            }
            let results: Vec<bool> = cls
                .members
                .iter()
                .take(3)
                .map(|&m| {
                    is_invgen_oracle(
                        &s4,
                        &[e.element(m).clone(), perm("(1,2,3)", 4)],
                        &lim(),
                    )
                    .unwrap()
                })
                .collect();
            assert!(results.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn oracle_cap_respected() {
        let s6 = constructions::symmetric(6).unwrap();
        let tiny = Limits {
            max_oracle_combinations: 2,
            ..Limits::default()
        };
        let res = is_invgen_oracle(
            &s6,
            &[perm("(1,2,3,4,5,6)", 6), perm("(1,2,3,4,5)", 6), perm("(1,2,3)", 6)],
            &tiny,
        );
        assert!(matches!(res, Err(GroupError::CapExceeded { .. })));
    }
}
