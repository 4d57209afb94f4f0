/// Resource caps for the whole engine. Defaults are sized for desk-scale
/// groups; every search that could blow up checks one of these and reports
/// `CapExceeded` instead of truncating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Hard cap on the number of elements enumerated for a single group.
    pub max_elements: u64,
    /// Groups up to this order get a full multiplication table.
    pub max_table_order: u64,
    /// Subgroup-lattice computation refuses groups above this order.
    pub max_lattice_order: u64,
    /// Hard cap on distinct subgroups stored during lattice enumeration.
    pub max_subgroups: u64,
    /// Conjugacy-class count cap for the cover-based search.
    pub max_classes: u64,
    /// Maximal-subgroup-class count cap for the cover-based search.
    pub max_maximal_classes: u64,
    /// Cap on the product of class sizes iterated by the tuple oracle.
    pub max_oracle_combinations: u64,
    /// Cap on section size in module computations.
    pub max_section: u64,
    /// Cap on the number of invariant subspaces enumerated by spinning.
    pub max_subspaces: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 2_000_000,
            max_table_order: 8192,
            max_lattice_order: 5000,
            max_subgroups: 500_000,
            max_classes: 64,
            max_maximal_classes: 256,
            max_oracle_combinations: 20_000_000,
            max_section: 4096,
            max_subspaces: 20_000,
        }
    }
}

impl Limits {
    /// Default limits with a raised lattice cap, for the handful of audit
    /// claims that need subgroup data of groups slightly above 5000.
    pub fn with_lattice_cap(cap: u64) -> Self {
        Limits {
            max_lattice_order: cap,
            ..Limits::default()
        }
    }

    pub fn with_classes_cap(mut self, cap: u64) -> Self {
        self.max_classes = cap;
        self
    }
}
