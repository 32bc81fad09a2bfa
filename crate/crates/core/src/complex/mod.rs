//! Simplicial complexes with a global vertex order and GF(2) chain complexes.

mod chain;
pub mod io;
pub(crate) mod simplicial;

pub use chain::{point_complex, repetition_complex, tensor_chain_product, ChainComplex};
pub use simplicial::{SimplexList, SimplicialComplex};

use crate::gf2::{BitVector, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("size {got} too small, need at least {min}")]
    TooSmall { min: usize, got: usize },
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("boundary shapes disagree at degree {0}")]
    ShapeMismatch(usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A q-cochain: one coefficient per q-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub degree: usize,
    pub coeffs: BitVector,
}

impl Cochain {
    pub fn new(degree: usize, coeffs: BitVector) -> Self {
        Self { degree, coeffs }
    }

    pub fn zero(sc: &SimplicialComplex, degree: usize) -> Self {
        Self::new(degree, BitVector::zeros(sc.count(degree)))
    }

    /// Indicator of a single simplex given by its vertices.
    pub fn indicator(sc: &SimplicialComplex, simplex: &[u32]) -> Option<Self> {
        let i = sc.index_of(simplex)?;
        let q = simplex.len() - 1;
        Some(Self::new(q, BitVector::from_indices(sc.count(q), [i])))
    }

    pub fn is_compatible(&self, sc: &SimplicialComplex) -> bool {
        self.degree <= sc.dim() && self.coeffs.len() == sc.count(self.degree)
    }
}
