//! Cross-module invariants checked over the whole group inventory, plus
//! property tests for the permutation algebra.

use invgen_core::constructions::{self, Tier};
use invgen_core::{invariable, structure, Limits, PermGroup, Permutation};
use proptest::prelude::*;

fn limits() -> Limits {
    Limits::default().with_classes_cap(128)
}

fn catalog_groups(max_order: u64) -> Vec<(&'static str, PermGroup)> {
    constructions::catalog()
        .into_iter()
        .filter(|e| e.expected_order <= max_order && e.tier == Tier::Full)
        .map(|e| {
            let g = constructions::build(&e.expr, &limits()).unwrap();
            (e.name, g)
        })
        .collect()
}

#[test]
fn group_order_divides_degree_factorial() {
    let lim = limits();
    for (name, g) in catalog_groups(5000) {
        let mut fact = 1u128;
        for i in 1..=g.degree() as u128 {
            fact = fact.saturating_mul(i);
        }
        let order = g.order(&lim).unwrap() as u128;
        assert_eq!(fact % order, 0, "Lagrange fails for {name}");
    }
}

#[test]
fn orbit_sizes_divide_order_and_sum_to_degree() {
    let lim = limits();
    for (name, g) in catalog_groups(5000) {
        let order = g.order(&lim).unwrap();
        let orbits = g.orbits();
        assert_eq!(
            orbits.iter().map(|o| o.len()).sum::<usize>(),
            g.degree(),
            "{name}"
        );
        for o in orbits {
            assert_eq!(order % o.len() as u64, 0, "{name}");
        }
    }
}

#[test]
fn blocks_divide_degree_and_are_permuted() {
    let lim = limits();
    for (name, g) in catalog_groups(5000) {
        if !g.is_transitive() || g.degree() < 2 {
            continue;
        }
        if let Some(blocks) = g.minimal_block_system().unwrap() {
            let size = blocks[0].len();
            assert_eq!(g.degree() % size, 0, "{name}");
            for b in &blocks {
                assert_eq!(b.len(), size, "{name}");
            }
            // every generator permutes the blocks
            for gen in g.generators() {
                for b in &blocks {
                    let mut image: Vec<usize> = b.iter().map(|&x| gen.apply(x)).collect();
                    image.sort_unstable();
                    assert!(blocks.contains(&image), "{name}");
                }
            }
        }
        let _ = lim;
    }
}

#[test]
fn class_sizes_sum_and_divide() {
    let lim = limits();
    for (name, g) in catalog_groups(5000) {
        let order = g.order(&lim).unwrap();
        let table = structure::conjugacy_classes(&g, &lim).unwrap();
        let total: u64 = table.classes.iter().map(|c| c.size() as u64).sum();
        assert_eq!(total, order, "{name}");
        for c in &table.classes {
            assert_eq!(order % c.size() as u64, 0, "{name}");
        }
    }
}

#[test]
fn di_at_least_d_across_catalog() {
    let lim = limits();
    for (name, g) in catalog_groups(5000) {
        let d = invariable::d(&g, &lim).unwrap();
        let mut di_lim = lim.clone();
        di_lim.max_lattice_order = di_lim.max_lattice_order.max(g.order(&lim).unwrap());
        let di = invariable::di(&g, &di_lim).unwrap().value;
        assert!(di >= d, "{name}: d_I = {di} < d = {d}");
    }
}

/// Whether a tuple invariably generates depends only on its class multiset:
/// resampling members within each class never changes the oracle's answer.
#[test]
fn oracle_depends_only_on_class_multiset() {
    let lim = limits();
    for (name, g) in catalog_groups(2000) {
        let order = g.order(&lim).unwrap();
        if order < 4 {
            continue;
        }
        let e = g.enumerated(&lim).unwrap();
        let table = structure::conjugacy_classes(&g, &lim).unwrap();
        // deterministic sample: class pairs, resampled at three offsets
        let k = table.len().min(8);
        for a in 0..k {
            for b in a..k {
                let mut answers = Vec::new();
                for offset in 0..3usize {
                    let ca = &table.classes[a];
                    let cb = &table.classes[b];
                    let x = e.element(ca.members[offset % ca.members.len()]).clone();
                    let y = e.element(cb.members[(offset * 7) % cb.members.len()]).clone();
                    answers.push(invariable::is_invgen_oracle(&g, &[x, y], &lim).unwrap());
                }
                assert!(
                    answers.windows(2).all(|w| w[0] == w[1]),
                    "{name}: class pair ({a},{b}) answers {answers:?}"
                );
            }
        }
    }
}

/// The cover criterion and the tuple oracle agree on all class multisets of
/// size at most 3, for every inventory group of order at most 2000.
#[test]
fn cover_equals_oracle_up_to_order_2000() {
    let lim = limits();
    for (name, g) in catalog_groups(2000) {
        let table = structure::conjugacy_classes(&g, &lim).unwrap();
        let inst = invariable::build_cover(&g, &lim).unwrap();
        let e = g.enumerated(&lim).unwrap();
        let k = table.len() as u32;
        let mut check = |ms: &[u32]| {
            let cover = invariable::is_invgen_cover(&inst, ms);
            let tuple: Vec<Permutation> = ms
                .iter()
                .map(|&ci| e.element(table.classes[ci as usize].representative).clone())
                .collect();
            let oracle = invariable::is_invgen_oracle(&g, &tuple, &lim).unwrap();
            assert_eq!(cover, oracle, "{name}: multiset {ms:?}");
        };
        for a in 0..k {
            check(&[a]);
            for b in a..k {
                check(&[a, b]);
                for c in b..k {
                    check(&[a, b, c]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random permutations compose associatively and invert correctly.
    #[test]
    fn perm_algebra(seed_a in proptest::collection::vec(0usize..720, 8),
                    seed_b in proptest::collection::vec(0usize..720, 8),
                    seed_c in proptest::collection::vec(0usize..720, 8)) {
        let make = |seed: &[usize]| {
            let mut images: Vec<u16> = (0..8).collect();
            for (i, &s) in seed.iter().enumerate() {
                images.swap(i, s % 8);
            }
            Permutation::from_images(images).unwrap()
        };
        let a = make(&seed_a);
        let b = make(&seed_b);
        let c = make(&seed_c);
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        // conjugation is an anti-fixed-point relation: a^g moves g(x) like g(a(x))
        let conj = a.conjugate(&b).unwrap();
        for x in 0..8 {
            prop_assert_eq!(conj.apply(b.apply(x)), b.apply(a.apply(x)));
        }
    }

    /// Cycle notation round-trips through parse and print.
    #[test]
    fn cycle_roundtrip(seed in proptest::collection::vec(0usize..10_000, 12)) {
        let mut images: Vec<u16> = (0..12).collect();
        for (i, &s) in seed.iter().enumerate() {
            images.swap(i, s % 12);
        }
        let p = Permutation::from_images(images).unwrap();
        let text = p.cycle_string();
        let q = Permutation::parse_cycles(&text, 12).unwrap();
        prop_assert_eq!(p, q);
    }
}
