//! Simplicial cup products, CCZ circuits built from triple cup products, their
//! logical action, interaction hypergraphs and fountain scheduling.

mod circuit;
mod fountain;

pub use circuit::{
    cup_sum_tensor, logical_action, phase_polynomial_check, synthesize_circuit, CczCircuit, LogicalCczTensor, PhaseReport,
};
pub use fountain::{
    fountain_schedule, induced_fountain_schedule, interaction_hypergraph, FountainSchedule, InteractionHypergraph,
};

use crate::complex::{Cochain, SimplicialComplex};
use crate::gf2::BitVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CupError {
    #[error("degree {degree} exceeds complex dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("degrees {degrees:?} do not sum to dimension {dim}")]
    DegreeMismatch { degrees: Vec<usize>, dim: usize },
    #[error("cochain of degree {degree} has length {found}, expected {expected}")]
    LengthMismatch { degree: usize, expected: usize, found: usize },
    #[error("basis does not match the circuit: {0}")]
    BasisMismatch(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// For every top simplex `[v_0..v_n]`, the indices of its consecutive faces
/// `[v_0..v_{d_0}]`, `[v_{d_0}..v_{d_0+d_1}]`, … for degrees `d_0, d_1, …`.
#[derive(Clone, Debug)]
pub struct FaceTable {
    degrees: Vec<usize>,
    lens: Vec<usize>,
    faces: Vec<Vec<u32>>,
}

impl FaceTable {
    pub fn new(sc: &SimplicialComplex, degrees: &[usize]) -> Result<Self, CupError> {
        let n = sc.dim();
        if degrees.iter().sum::<usize>() != n {
            return Err(CupError::DegreeMismatch {
                degrees: degrees.to_vec(),
                dim: n,
            });
        }
        let tops = sc.count(n);
        let mut faces = vec![Vec::with_capacity(tops); degrees.len()];
        for s in sc.top_simplices() {
            let mut start = 0;
            for (k, &d) in degrees.iter().enumerate() {
                let i = sc.index_of(&s[start..=start + d]).expect("faces of a simplex are present");
                faces[k].push(i as u32);
                start += d;
            }
        }
        Ok(Self {
            degrees: degrees.to_vec(),
            lens: degrees.iter().map(|&d| sc.count(d)).collect(),
            faces,
        })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.faces.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Face index of slot `k` on top simplex `t`.
    pub fn face(&self, k: usize, t: usize) -> usize {
        self.faces[k][t] as usize
    }

    /// Fixes cochains in every slot but the last and returns the resulting
    /// functional on last-slot faces: `w[last(t)] += Π_k fixed_k[face_k(t)]`.
    pub fn contract(&self, fixed: &[&BitVector]) -> BitVector {
        assert_eq!(fixed.len() + 1, self.degrees.len());
        let last = self.faces.last().expect("at least one slot");
        let mut w = BitVector::zeros(*self.lens.last().expect("at least one slot"));
        for t in 0..self.len() {
            if fixed.iter().enumerate().all(|(k, c)| c.get(self.faces[k][t] as usize)) {
                w.flip(last[t] as usize);
            }
        }
        w
    }

    /// Σ over top simplices of the product of all slot values, mod 2.
    pub fn evaluate(&self, cochains: &[&BitVector]) -> bool {
        assert_eq!(cochains.len(), self.degrees.len());
        (0..self.len())
            .filter(|&t| cochains.iter().enumerate().all(|(k, c)| c.get(self.faces[k][t] as usize)))
            .count()
            % 2
            == 1
    }
}

fn check_cochain(sc: &SimplicialComplex, c: &Cochain) -> Result<(), CupError> {
    if c.degree > sc.dim() {
        return Err(CupError::DegreeOverflow {
            degree: c.degree,
            dim: sc.dim(),
        });
    }
    if c.coeffs.len() != sc.count(c.degree) {
        return Err(CupError::LengthMismatch {
            degree: c.degree,
            expected: sc.count(c.degree),
            found: c.coeffs.len(),
        });
    }
    Ok(())
}

/// Cup product by the front-face/back-face rule:
/// `(a ∪ b)([v_0..v_{p+q}]) = a([v_0..v_p]) · b([v_p..v_{p+q}])`.
pub fn cup(sc: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain, CupError> {
    check_cochain(sc, a)?;
    check_cochain(sc, b)?;
    let (p, q) = (a.degree, b.degree);
    if p + q > sc.dim() {
        return Err(CupError::DegreeOverflow {
            degree: p + q,
            dim: sc.dim(),
        });
    }
    let list = sc.simplices(p + q);
    let mut out = BitVector::zeros(list.len());
    for (i, s) in list.iter().enumerate() {
        let front = sc.index_of(&s[..=p]).expect("face present");
        if !a.coeffs.get(front) {
            continue;
        }
        let back = sc.index_of(&s[p..]).expect("face present");
        if b.coeffs.get(back) {
            out.set(i, true);
        }
    }
    Ok(Cochain::new(p + q, out))
}

/// Σ over top simplices of `a ∪ b ∪ c`, mod 2. Closedness is not required.
pub fn triple_cup_sum(sc: &SimplicialComplex, a: &Cochain, b: &Cochain, c: &Cochain) -> Result<bool, CupError> {
    for x in [a, b, c] {
        check_cochain(sc, x)?;
    }
    let table = FaceTable::new(sc, &[a.degree, b.degree, c.degree])?;
    Ok(table.evaluate(&[&a.coeffs, &b.coeffs, &c.coeffs]))
}

/// Σ over top simplices of `a ∪ b`, mod 2.
pub fn cup_sum(sc: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<bool, CupError> {
    for x in [a, b] {
        check_cochain(sc, x)?;
    }
    let table = FaceTable::new(sc, &[a.degree, b.degree])?;
    Ok(table.evaluate(&[&a.coeffs, &b.coeffs]))
}

#[cfg(test)]
mod tests;
