use invgen_core::{constructions, invariable, Limits};
use std::time::Instant;

fn main() {
    let lim = Limits::default();
    let cases = [
        ("S6", constructions::GroupExpr::Symmetric(6)),
        ("B4", constructions::GroupExpr::B(4)),
        ("B6", constructions::GroupExpr::B(6)),
        ("GL(3,2)", constructions::GroupExpr::GL(3, 2)),
        ("F21", constructions::GroupExpr::FrobF21),
        ("D8oD8", constructions::GroupExpr::D8centralD8),
        ("Sp4(2)", constructions::GroupExpr::Sp4_2),
        (
            "A5xA5",
            constructions::GroupExpr::DirectProduct(
                Box::new(constructions::GroupExpr::Alternating(5)),
                Box::new(constructions::GroupExpr::Alternating(5)),
            ),
        ),
    ];
    for (name, expr) in cases {
        let t = Instant::now();
        let g = constructions::build(&expr, &lim).unwrap();
        let r = invariable::di(&g, &lim).unwrap();
        println!(
            "{name}: d_I = {} witness {:?} method {:?} in {:.2?}",
            r.value,
            r.witness,
            r.method,
            t.elapsed()
        );
    }
    // S7 with a raised lattice cap
    let lim7 = Limits::with_lattice_cap(6000);
    let t = Instant::now();
    let s7 = constructions::symmetric(7).unwrap();
    let r = invariable::di(&s7, &lim7).unwrap();
    println!(
        "S7: d_I = {} witness {:?} method {:?} in {:.2?}",
        r.value,
        r.witness,
        r.method,
        t.elapsed()
    );
}
