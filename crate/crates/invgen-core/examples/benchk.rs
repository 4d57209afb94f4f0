use invgen_core::{constructions, invariable, structure, Limits};
use std::time::Instant;

fn main() {
    let lim = Limits::default();
    for name in ["S6", "Sp4(2)", "C4wrS3"] {
        let e = constructions::catalog().into_iter().find(|e| e.name == name).unwrap();
        let g = constructions::build(&e.expr, &lim).unwrap();
        let t = Instant::now();
        let table = structure::conjugacy_classes(&g, &lim).unwrap();
        let inst = invariable::build_cover(&g, &lim).unwrap();
        let en = g.enumerated(&lim).unwrap();
        let k = table.len() as u32;
        let mut multisets = 0u64;
        let mut disagreements = 0u64;
        for a in 0..k {
            for b in a..k {
                for c in b..k {
                    let ms = [a, b, c];
                    let cover = invariable::is_invgen_cover(&inst, &ms);
                    let tuple: Vec<_> = ms
                        .iter()
                        .map(|&ci| en.element(table.classes[ci as usize].representative).clone())
                        .collect();
                    let oracle = invariable::is_invgen_oracle(&g, &tuple, &lim).unwrap();
                    if cover != oracle {
                        disagreements += 1;
                    }
                    multisets += 1;
                }
            }
        }
        println!(
            "{name}: {} classes, {multisets} size-3 multisets, {disagreements} disagreements, {:.2?}",
            k,
            t.elapsed()
        );
    }
}
