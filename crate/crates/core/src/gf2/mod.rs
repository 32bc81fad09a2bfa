//! Linear algebra over GF(2): packed vectors, dense row-major matrices and
//! sparse column matrices with column reduction.

mod dense;
mod sparse;
mod vector;

pub mod coords;

pub use dense::{kernel_basis, quotient_basis, rank, solve, BitMatrix, XorBasis};
pub use sparse::{Reduction, SparseBitMatrix};
pub use vector::{BitVector, Ones};

/// Largest dense matrix accepted, in bits.
pub const CAPACITY_BITS: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("subspace is not contained in the span of the space")]
    SubspaceNotContained,
    #[error("dense {rows}x{cols} matrix exceeds the {CAPACITY_BITS}-bit capacity")]
    CapacityExceeded { rows: usize, cols: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
