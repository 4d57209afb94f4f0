//! The `bounds` subcommand: tables of the combinatorial bound functions over
//! requested ranges, as text, CSV or JSON.

use invgen_core::bounds;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct BoundsRow {
    pub s: u64,
    pub p: u64,
    pub s_p: u64,
    pub lpp: u64,
    pub ws: String,
    pub e_sol: String,
    pub e: String,
}

pub fn table(s_from: u64, s_to: u64, primes: &[u64]) -> Vec<BoundsRow> {
    let mut rows = Vec::new();
    for s in s_from..=s_to {
        for &p in primes {
            rows.push(BoundsRow {
                s,
                p,
                s_p: bounds::s_part(s, p),
                lpp: bounds::lpp(s),
                ws: bounds::ws(s).to_string(),
                e_sol: bounds::e_sol_bound(s, p).to_string(),
                e: bounds::e_bound(s, p).to_string(),
            });
        }
    }
    rows
}

pub fn render_text(rows: &[BoundsRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>6} {:>4} {:>6} {:>6} {:>10} {:>10} {:>10}\n",
        "s", "p", "s_p", "lpp", "w_s", "E_sol", "E"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:>6} {:>4} {:>6} {:>6} {:>10} {:>10} {:>10}\n",
            r.s, r.p, r.s_p, r.lpp, r.ws, r.e_sol, r.e
        ));
    }
    out
}

pub fn render_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("s,p,s_p,lpp,ws,e_sol,e\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.s, r.p, r.s_p, r.lpp, r.ws, r.e_sol, r.e
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_expected_values() {
        let rows = table(12, 12, &[2, 3]);
        let csv = render_csv(&rows);
        assert!(csv.contains("12,2,4,4,9/2,4,4"));
        assert!(csv.contains("12,3,3,4,9/2,3,3"));
    }
}
