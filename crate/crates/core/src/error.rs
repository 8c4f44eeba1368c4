use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two objects indexed by different ground sets `[n]` were combined.
    #[error("ground-set mismatch: {0} vs {1}")]
    GroundSetMismatch(usize, usize),

    /// Blocks do not form a partition of `{1..n}`.
    #[error("invalid blocks: {0}")]
    InvalidBlocks(String),

    /// An induction sequence longer than the ground set.
    #[error("induction sequence too long: length {len} for degree {n}")]
    InductionTooLong { len: usize, n: usize },

    /// A map on `[n]` that is not a bijection.
    #[error("not a permutation of [{0}]")]
    NotBijection(usize),

    /// An operation received an expression in the wrong basis.
    #[error("wrong basis: expected {expected}, got {got}")]
    WrongBasis {
        expected: &'static str,
        got: &'static str,
    },

    /// Mixed degrees inside one expression or operation.
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    /// Syntax error in one of the textual formats.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// A coloring that does not assign a color to every vertex.
    #[error("partial coloring: expected {expected} entries, got {got}")]
    PartialColoring { expected: usize, got: usize },

    /// Invalid pluriedge handle.
    #[error("invalid pluriedge handle {handle} (plurigraph has {count})")]
    InvalidHandle { handle: usize, count: usize },

    /// Contraction requested on a pluriedge that is not contraction-ready.
    #[error("pluriedge {0} is not contraction-ready; relabel via make_contraction_ready first")]
    NotContractionReady(usize),

    /// A structurally invalid object (empty pluriedge, size-1 hyperedge, ...).
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    /// A formula that is not edge-like / graph-like / contractible where required.
    #[error("formula shape error: {0}")]
    FormulaShape(String),

    /// An invalid contraction sequence for a formula.
    #[error("invalid contraction sequence: {0}")]
    InvalidSequence(String),

    /// Input to degree-sequence recovery is not the CSF of a uniform hypertree.
    #[error("input is not a uniform-hypertree CSF: {0}")]
    NotHypertreeCsf(String),

    /// Divisibility or cap violations in hypertree enumeration.
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}
