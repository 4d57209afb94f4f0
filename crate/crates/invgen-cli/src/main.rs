use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use invgen_cli::{analyze, audit, bounds_table, expr};
use invgen_core::{constructions, Limits};
use std::process::ExitCode;

/// Exact invariable-generation analysis for finite permutation and linear
/// groups, with the accompanying bound tables and claim audits.
#[derive(Parser)]
#[command(name = "invgen", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    caps: CapArgs,

    /// Emit JSON instead of the human-readable table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct CapArgs {
    /// Cap on enumerated elements per group [env: INVGEN_CAP_ELEMENTS]
    #[arg(long, global = true)]
    cap_elements: Option<u64>,
    /// Cap on the group order for subgroup-lattice work
    /// [env: INVGEN_CAP_LATTICE_ORDER]
    #[arg(long, global = true)]
    cap_lattice_order: Option<u64>,
    /// Cap on conjugate combinations iterated by the tuple oracle
    /// [env: INVGEN_CAP_ORACLE_COMBINATIONS]
    #[arg(long, global = true)]
    cap_oracle_combinations: Option<u64>,
    /// Worker threads for audit claims [env: INVGEN_WORKERS]
    #[arg(long, global = true)]
    workers: Option<usize>,
}

impl CapArgs {
    fn limits(&self) -> Limits {
        let env_u64 = |name: &str| -> Option<u64> {
            std::env::var(name).ok().and_then(|v| v.parse().ok())
        };
        let mut limits = Limits::default();
        if let Some(v) = self.cap_elements.or_else(|| env_u64("INVGEN_CAP_ELEMENTS")) {
            limits.max_elements = v;
        }
        if let Some(v) = self
            .cap_lattice_order
            .or_else(|| env_u64("INVGEN_CAP_LATTICE_ORDER"))
        {
            limits.max_lattice_order = v;
        }
        if let Some(v) = self
            .cap_oracle_combinations
            .or_else(|| env_u64("INVGEN_CAP_ORACLE_COMBINATIONS"))
        {
            limits.max_oracle_combinations = v;
        }
        limits
    }

    fn workers(&self) -> usize {
        self.workers
            .or_else(|| {
                std::env::var("INVGEN_WORKERS")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(1)
            .max(1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single group expression.
    Analyze {
        /// Group expression, e.g. "wr(C(2),S(3))" or "GL(3,2)"
        expression: String,
    },
    /// Print tables of the bound functions.
    Bounds {
        /// Range of s values as "a..b" (inclusive)
        #[arg(long, default_value = "2..16")]
        s_range: String,
        /// Comma-separated list of primes
        #[arg(long, default_value = "2,3,5,7")]
        primes: String,
        /// Emit CSV instead of the aligned table
        #[arg(long)]
        csv: bool,
    },
    /// Run the claim audit and exit nonzero on any failure.
    Audit {
        /// Suite name or prefix; "all" runs everything
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List the built-in group inventory.
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Analyze { expression } => {
            let parsed = expr::parse_group_expr(expression).map_err(|e| anyhow::anyhow!("{e}"))?;
            let analysis = analyze::analyze(&parsed, &limits)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&analysis)?);
            } else {
                print!("{}", analyze::render_text(&analysis));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { s_range, primes, csv } => {
            let (from, to) = parse_range(s_range)?;
            let primes: Vec<u64> = primes
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(Into::into))
                .collect::<Result<_>>()?;
            for &p in &primes {
                if !is_prime(p) {
                    anyhow::bail!("{p} is not prime");
                }
            }
            let rows = bounds_table::table(from, to, &primes);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else if *csv {
                print!("{}", bounds_table::render_csv(&rows));
            } else {
                print!("{}", bounds_table::render_text(&rows));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { suite } => {
            let known = audit::suite_names();
            if suite != "all" && !known.iter().any(|s| suite.starts_with(s) || s.starts_with(suite.as_str())) {
                anyhow::bail!("unknown suite '{suite}'; known: all, {}", known.join(", "));
            }
            let (report, infra) = audit::run_audit(suite, limits, cli.caps.workers());
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_table());
            }
            if infra {
                Ok(ExitCode::from(2))
            } else if report.failed > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Catalog => {
            let entries = constructions::catalog();
            if cli.json {
                #[derive(serde::Serialize)]
                struct Row {
                    name: &'static str,
                    expression: String,
                    expected_order: u64,
                    expected_di: Option<u64>,
                }
                let rows: Vec<Row> = entries
                    .iter()
                    .map(|e| Row {
                        name: e.name,
                        expression: e.expr.to_string(),
                        expected_order: e.expected_order,
                        expected_di: e.expected_di,
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!(
                    "{:<12} {:>9} {:>5}  {}",
                    "name", "order", "d_I", "expression"
                );
                for e in entries {
                    println!(
                        "{:<12} {:>9} {:>5}  {}",
                        e.name,
                        e.expected_order,
                        e.expected_di.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                        e.expr
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let parts: Vec<&str> = text.split("..").collect();
    if parts.len() != 2 {
        anyhow::bail!("range must look like a..b");
    }
    let from: u64 = parts[0].trim().parse()?;
    let to: u64 = parts[1].trim().parse()?;
    if from > to || from == 0 {
        anyhow::bail!("range must satisfy 0 < a <= b");
    }
    Ok((from, to))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

