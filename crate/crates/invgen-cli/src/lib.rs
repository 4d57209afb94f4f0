//! Library surface of the command-line tool, exposed so the integration and
//! acceptance suites can drive the same code paths as the binary.

pub mod analyze;
pub mod audit;
pub mod bounds_table;
pub mod expr;
pub mod report;

pub use audit::{run_audit, suite_names};
pub use expr::{parse_group_expr, ParseError};
