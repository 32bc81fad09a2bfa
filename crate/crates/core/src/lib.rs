//! CSS codes from simplicial complexes, triple cup product CCZ circuits,
//! Künneth product bookkeeping and bad-dimension search.

pub mod cli;
pub mod code;
pub mod complex;
pub mod cupgate;
pub mod gf2;
pub mod homology;
pub mod modelsearch;
pub mod product;
