use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use invgen_bench::{limits, sp4_2, sym};
use invgen_core::{bounds, invariable, structure};

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_sym6", |b| {
        b.iter_batched(
            || sym(6),
            |g| g.order(&limits()).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn classes(c: &mut Criterion) {
    let g = sym(6);
    g.order(&limits()).unwrap();
    c.bench_function("conjugacy_classes_sym6", |b| {
        b.iter(|| structure::conjugacy_classes(&g, &limits()).unwrap().len())
    });
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    group.sample_size(10);
    group.bench_function("subgroup_lattice_sym5", |b| {
        let g = sym(5);
        b.iter(|| structure::subgroup_lattice(&g, &limits()).unwrap().all_classes.len())
    });
    group.finish();
}

fn cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("di");
    group.sample_size(10);
    group.bench_function("di_sym6", |b| {
        let g = sym(6);
        b.iter(|| invariable::di(&g, &limits()).unwrap().value)
    });
    group.bench_function("di_sp4_2", |b| {
        let g = sp4_2();
        b.iter(|| invariable::di(&g, &limits()).unwrap().value)
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let g = sym(6);
    let e = g.enumerated(&limits()).unwrap();
    e.ensure_table(&limits());
    let table = structure::conjugacy_classes(&g, &limits()).unwrap();
    let tuple: Vec<_> = [1usize, 6, 7]
        .iter()
        .map(|&c| e.element(table.classes[c].representative).clone())
        .collect();
    c.bench_function("oracle_sym6_triple", |b| {
        b.iter(|| invariable::is_invgen_oracle(&g, &tuple, &limits()).unwrap())
    });
}

fn bound_functions(c: &mut Criterion) {
    c.bench_function("e_bound_sweep_1k", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for s in 2..=1000u64 {
                for p in [2u64, 3, 5, 7] {
                    if bounds::e_bound(s, p).is_finite() {
                        acc += 1;
                    }
                }
            }
            acc
        })
    });
}

criterion_group!(benches, enumeration, classes, lattice, cover, oracle, bound_functions);
criterion_main!(benches);
