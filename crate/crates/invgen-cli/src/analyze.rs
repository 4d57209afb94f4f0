//! The `analyze` subcommand: full report on a single group expression.

use anyhow::Result;
use invgen_core::{bounds, constructions, invariable, structure, GroupExpr, Limits};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub expression: String,
    pub degree: usize,
    pub order: u64,
    pub transitive: bool,
    /// "primitive", "imprimitive(block size b)", or "intransitive"
    pub primitivity: String,
    pub class_count: usize,
    pub d: u64,
    pub d_i: u64,
    pub d_i_method: String,
    /// witness classes described by representative cycle and class size
    pub witness: Vec<String>,
    pub maximal_class_count: Option<usize>,
    pub composition_length: u64,
    pub abelian_factors: u64,
    pub nonabelian_chief_factors: u64,
    pub factors: Vec<String>,
    pub applicable_bounds: Vec<AppliedBound>,
    /// d_i * sqrt(log2 n) / n for transitive groups of degree >= 2
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transitive_ratio: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct AppliedBound {
    pub name: String,
    pub bound: String,
    /// bound minus d_i as an exact rational, negative means violated
    pub slack: String,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception: Option<String>,
}

pub fn analyze(expr: &GroupExpr, limits: &Limits) -> Result<Analysis> {
    let g = constructions::build(expr, limits)?;
    let degree = g.degree();
    let order = g.order(limits)?;
    let transitive = g.is_transitive();
    let primitivity = if !transitive {
        "intransitive".to_string()
    } else if degree < 2 {
        "primitive".to_string()
    } else {
        match g.minimal_block_system()? {
            None => "primitive".to_string(),
            Some(blocks) => format!("imprimitive(block size {})", blocks[0].len()),
        }
    };
    let table = structure::conjugacy_classes(&g, limits)?;
    let di = invariable::di(&g, limits)?;
    let d = invariable::d(&g, limits)?;
    let e = g.enumerated(limits)?;
    let witness = di
        .witness
        .iter()
        .map(|&c| {
            let cls = &table.classes[c as usize];
            format!(
                "{}^G (size {})",
                e.element(cls.representative).cycle_string(),
                cls.size()
            )
        })
        .collect();
    let maximal_class_count = if order <= limits.max_lattice_order {
        Some(
            structure::subgroup_lattice(&g, limits)?
                .maximal_classes()
                .len(),
        )
    } else {
        None
    };
    let comp = structure::composition_data(&g, limits)?;
    let factors = comp
        .factors
        .iter()
        .map(|f| match &f.name {
            Some(n) => n.clone(),
            None => format!("order {}{}", f.order, if f.abelian { " abelian" } else { "" }),
        })
        .collect();

    let mut applicable_bounds = Vec::new();
    if transitive && degree >= 2 {
        let hb = bounds::half_n_bound(degree as u64);
        let exception = exception_for(&g, &hb, limits)?;
        let effective = exception
            .as_ref()
            .map(|e| e.1.clone())
            .unwrap_or(hb.value.clone());
        applicable_bounds.push(AppliedBound {
            name: "half-degree".into(),
            bound: effective.to_string(),
            slack: slack_string(&effective, di.value),
            satisfied: effective.cmp_int(di.value) != std::cmp::Ordering::Less,
            exception: exception.map(|e| e.0),
        });
    }
    if let GroupExpr::Matrix { dim, p, .. } = expr {
        let cb = bounds::comp_red_bound(*dim as u64, *p as u64);
        applicable_bounds.push(AppliedBound {
            name: format!("completely-reducible(F_{p})"),
            bound: cb.value.to_string(),
            slack: slack_string(&cb.value, di.value),
            satisfied: cb.value.cmp_int(di.value) != std::cmp::Ordering::Less,
            exception: None,
        });
    }
    // nilpotent groups have equal generation numbers; surface the check
    if structure::is_soluble(&g, limits)? && comp.nonabelian_chief_factors == 0 {
        let nilpotent = is_nilpotent(&g, limits)?;
        if nilpotent {
            applicable_bounds.push(AppliedBound {
                name: "nilpotent d_I = d".into(),
                bound: d.to_string(),
                slack: slack_string(&bounds::BoundValue::from_int(d), di.value),
                satisfied: di.value == d,
                exception: None,
            });
        }
    }

    let transitive_ratio = if transitive && degree >= 2 {
        Some(di.value as f64 * (degree as f64).log2().sqrt() / degree as f64)
    } else {
        None
    };

    Ok(Analysis {
        expression: expr.to_string(),
        degree,
        order,
        transitive,
        primitivity,
        class_count: table.len(),
        d,
        d_i: di.value,
        d_i_method: format!("{:?}", di.method),
        witness,
        maximal_class_count,
        composition_length: comp.length,
        abelian_factors: comp.abelian_factors,
        nonabelian_chief_factors: comp.nonabelian_chief_factors,
        factors,
        applicable_bounds,
        transitive_ratio,
    })
}

fn exception_for(
    g: &invgen_core::PermGroup,
    tb: &bounds::TheoremBound,
    limits: &Limits,
) -> Result<Option<(String, bounds::BoundValue)>> {
    for ex in &tb.exceptions {
        if ex.group == "Sym(3)" && g.order(limits)? == 6 && g.degree() == 3 {
            return Ok(Some((ex.group.clone(), ex.value.clone())));
        }
    }
    Ok(None)
}

fn slack_string(bound: &bounds::BoundValue, d_i: u64) -> String {
    match bound {
        bounds::BoundValue::Infinity => "inf".into(),
        bounds::BoundValue::Finite(v) => {
            let diff = v - num_rational::BigRational::from_integer(num_bigint::BigInt::from(d_i));
            if diff.is_integer() {
                format!("{}", diff.to_integer())
            } else {
                format!("{}/{}", diff.numer(), diff.denom())
            }
        }
    }
}

fn is_nilpotent(g: &invgen_core::PermGroup, limits: &Limits) -> Result<bool> {
    // lower central series via iterated commutators with the whole group
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let mut current: Vec<u32> = (0..e.size() as u32).collect();
    loop {
        let mut comms = Vec::new();
        for &a in &current {
            for b in 0..e.size() as u32 {
                comms.push(e.mul(e.mul(e.inv(a), e.inv(b)), e.mul(a, b)));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        let next = e.subgroup_closure(&comms);
        if next.len() == 1 {
            return Ok(true);
        }
        if next.len() == current.len() {
            return Ok(false);
        }
        current = next;
    }
}

pub fn render_text(a: &Analysis) -> String {
    let mut s = String::new();
    s.push_str(&format!("expression           {}\n", a.expression));
    s.push_str(&format!("degree               {}\n", a.degree));
    s.push_str(&format!("order                {}\n", a.order));
    s.push_str(&format!("transitive           {}\n", a.transitive));
    s.push_str(&format!("primitivity          {}\n", a.primitivity));
    s.push_str(&format!("conjugacy classes    {}\n", a.class_count));
    s.push_str(&format!("d (generators)       {}\n", a.d));
    s.push_str(&format!("d_I (invariable)     {}  [{}]\n", a.d_i, a.d_i_method));
    s.push_str(&format!("witness classes      {}\n", a.witness.join(", ")));
    match a.maximal_class_count {
        Some(m) => s.push_str(&format!("maximal classes      {m}\n")),
        None => s.push_str("maximal classes      (order above lattice cap)\n"),
    }
    s.push_str(&format!(
        "composition          length {}, abelian {}, nonabelian chief {}\n",
        a.composition_length, a.abelian_factors, a.nonabelian_chief_factors
    ));
    s.push_str(&format!("factors              [{}]\n", a.factors.join(", ")));
    for b in &a.applicable_bounds {
        s.push_str(&format!(
            "bound {:<18} {:>6}  slack {:>5}  {}{}\n",
            b.name,
            b.bound,
            b.slack,
            if b.satisfied { "ok" } else { "VIOLATED" },
            b.exception
                .as_ref()
                .map(|e| format!("  (exception: {e})"))
                .unwrap_or_default()
        ));
    }
    if let Some(r) = a.transitive_ratio {
        s.push_str(&format!("d_I sqrt(log n)/n    {r:.4}\n"));
    }
    s
}
