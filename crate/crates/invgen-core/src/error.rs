use thiserror::Error;

/// Errors shared by the whole engine. Every resource limit surfaces as an
/// explicit `CapExceeded`; nothing is ever silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("{what} cap exceeded: reached {reached}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        reached: u64,
        cap: u64,
    },

    #[error("group is not transitive")]
    NotTransitive,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("block structure mismatch: {0}")]
    BlockMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle notation error at byte {offset}: {message}")]
    CycleSyntax { offset: usize, message: String },
}

impl GroupError {
    pub fn cap(what: &'static str, reached: u64, cap: u64) -> Self {
        GroupError::CapExceeded { what, reached, cap }
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;
