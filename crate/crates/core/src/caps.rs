//! Documented default size caps.
//!
//! Library operations are total; these bounds are what the command-line
//! front end enforces (overridable with `--allow-large`). They mark the
//! point past which the exponential enumerations stop being interactive.

/// Set-partition enumeration: Bell(12) ≈ 4.2 million.
pub const SET_PARTITION_ENUM_MAX_N: usize = 12;

/// Set-composition enumeration: ordered Bell(9) ≈ 7.1 million.
pub const SET_COMPOSITION_ENUM_MAX_N: usize = 9;

/// Partition enumeration inside `chromatic_ncsym_enum`.
pub const PLURIGRAPH_ENUM_MAX_N: usize = 10;

/// Pluriedge subsets in the powersum expansion: 2^20 terms.
pub const PLURIGRAPH_SUBSET_MAX_EDGES: usize = 20;

/// Composition enumeration inside `scheduling_ncqsym`.
pub const SCHEDULING_ENUM_MAX_N: usize = 9;

/// Hyperedge subsets in the hypergraph CSF expansion: 2^24 terms.
pub const HYPERTREE_CSF_MAX_EDGES: usize = 24;

/// Hypertree enumeration up to isomorphism (for s = 3).
pub const HYPERTREE_ENUM_MAX_N: usize = 13;
