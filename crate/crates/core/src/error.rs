use thiserror::Error;

pub use crate::boson::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The Whitney/Dowling families are normalized by `m^k`, which is not
    /// invertible at `m = 0`.
    #[error("shift parameter m must be at least 1")]
    ZeroShift,

    /// A Fock-space action would leave the truncated space.
    #[error("occupancy {needed} exceeds Fock cap {cap}; enlarge the cap")]
    CapOverflow { needed: usize, cap: usize },

    #[error("coherent-state check needs cap >= k (cap {cap}, k {k})")]
    CapBelowPower { cap: usize, k: usize },

    #[error("triangle row {row} has {len} entries")]
    TriangleShape { row: usize, len: usize },

    #[error("malformed triangle table: {0}")]
    Table(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
