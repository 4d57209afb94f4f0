//! Exact desk-scale computation of invariable generation numbers for finite
//! permutation and linear groups, together with the explicit combinatorial
//! bound functions that control them.
//!
//! The crate is organised around full element enumeration: groups small
//! enough to list are listed, and every derived object (conjugacy classes,
//! subgroup lattices, quotients, module sections) is computed exactly from
//! the element set. Nothing here is randomised; equal inputs give equal
//! outputs, including tie-breaks.

pub mod bounds;
pub mod certified;
pub mod constructions;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod invariable;
pub mod limits;
pub mod matgroup;
pub mod perm;
pub mod structure;

mod fxhash;

pub use bounds::BoundValue;
pub use constructions::{CatalogEntry, GroupExpr, WreathData};
pub use error::GroupError;
pub use group::PermGroup;
pub use invariable::{CoverInstance, DiResult};
pub use limits::Limits;
pub use matgroup::MatrixGroup;
pub use perm::Permutation;
pub use structure::{ClassTable, SubgroupCatalog};
