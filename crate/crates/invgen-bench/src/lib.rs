//! Shared helpers for the benchmark targets.

use invgen_core::{constructions, Limits, PermGroup};

pub fn limits() -> Limits {
    Limits::default()
}

pub fn sym(n: usize) -> PermGroup {
    constructions::symmetric(n).unwrap()
}

pub fn sp4_2() -> PermGroup {
    constructions::build(&constructions::GroupExpr::Sp4_2, &limits()).unwrap()
}
