//! Machine-readable audit reports and their human-readable rendering.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "invgen-report/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    /// the precise statement being checked, with its source marker
    pub anchor: String,
    /// group expression or parameter range the claim ranges over
    pub scope: String,
    pub expected: String,
    pub provenance: Provenance,
    pub computed: String,
    pub pass: bool,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub cap_elements: u64,
    pub cap_lattice_order: u64,
    pub cap_oracle_combinations: u64,
    pub workers: usize,
    pub seed: u64,
    pub suite: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema: String,
    pub config: ConfigSnapshot,
    pub claims: Vec<ClaimRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl AuditReport {
    pub fn new(config: ConfigSnapshot, mut claims: Vec<ClaimRecord>) -> Self {
        claims.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = claims.iter().filter(|c| c.pass).count();
        let failed = claims.len() - passed;
        AuditReport {
            schema: SCHEMA.to_string(),
            config,
            claims,
            passed,
            failed,
        }
    }

    /// Canonical form for determinism comparisons: timings zeroed.
    pub fn canonical(&self) -> AuditReport {
        let mut out = self.clone();
        for c in out.claims.iter_mut() {
            c.millis = 0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let id_w = self
            .claims
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let scope_w = self
            .claims
            .iter()
            .map(|c| c.scope.len().min(28))
            .max()
            .unwrap_or(5)
            .max(5);
        out.push_str(&format!(
            "{:<id_w$}  {:<scope_w$}  {:<20}  {:<20}  {:<4}  {:>8}\n",
            "claim", "scope", "expected", "computed", "ok", "ms"
        ));
        for c in &self.claims {
            let scope: String = c.scope.chars().take(28).collect();
            out.push_str(&format!(
                "{:<id_w$}  {:<scope_w$}  {:<20}  {:<20}  {:<4}  {:>8}\n",
                c.id,
                scope,
                truncate(&c.expected, 20),
                truncate(&c.computed, 20),
                if c.pass { "ok" } else { "FAIL" },
                c.millis
            ));
            if let Some(n) = &c.note {
                out.push_str(&format!("{:id_w$}  note: {n}\n", ""));
            }
        }
        out.push_str(&format!(
            "\n{} claims: {} passed, {} failed\n",
            self.claims.len(),
            self.passed,
            self.failed
        ));
        out
    }
}

fn truncate(s: &str, n: usize) -> String {
    if s.len() <= n {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(n - 1).collect();
        t.push('~');
        t
    }
}
