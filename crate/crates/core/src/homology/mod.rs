//! Homology and cohomology bases over GF(2), dual-basis normalization and
//! the Poincaré pairing.

use crate::complex::{ChainComplex, Cochain, SimplicialComplex};
use crate::cupgate;
use crate::gf2::{BitMatrix, BitVector, Gf2Error, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("degree {q} outside 0..={n}")]
    DegreeOutOfRange { q: usize, n: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("pairing between cycles and cocycles is degenerate")]
    DegeneratePairing,
    #[error("complex is not a closed manifold")]
    NotClosedManifold,
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Cycle and cocycle representatives at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    pub degree: usize,
    pub cycles: Vec<BitVector>,
    pub cocycles: Vec<BitVector>,
    pub normalized: bool,
}

impl HomologyBasis {
    /// Number of classes, the Betti number.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cocycle(&self, i: usize) -> Cochain {
        Cochain::new(self.degree, self.cocycles[i].clone())
    }

    pub fn pairing(&self) -> Result<BitMatrix, HomologyError> {
        pairing_matrix(&self.cycles, &self.cocycles)
    }

    /// Restriction to the listed classes, in the given order.
    pub fn select(&self, keep: &[usize]) -> HomologyBasis {
        HomologyBasis {
            degree: self.degree,
            cycles: keep.iter().map(|&i| self.cycles[i].clone()).collect(),
            cocycles: keep.iter().map(|&i| self.cocycles[i].clone()).collect(),
            normalized: self.normalized,
        }
    }

    /// Text export: `cycle q i` / `cocycle q i` followed by the set coordinates.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (kind, reps) in [("cycle", &self.cycles), ("cocycle", &self.cocycles)] {
            for (i, r) in reps.iter().enumerate() {
                out.push_str(&format!("{kind} {} {i}", self.degree));
                for c in r.iter_ones() {
                    out.push_str(&format!(" {c}"));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parses [`HomologyBasis::export`] output; `len` is the chain-group dimension.
    pub fn import(text: &str, len: usize) -> Result<HomologyBasis, HomologyError> {
        let mut degree = None;
        let (mut cycles, mut cocycles) = (Vec::new(), Vec::new());
        for (lineno, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || {
                HomologyError::Gf2(Gf2Error::Parse {
                    line: lineno + 1,
                    message: "expected `cycle|cocycle q i coords...`".into(),
                })
            };
            let mut tok = line.split_whitespace();
            let kind = tok.next().ok_or_else(bad)?;
            let q: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let _i: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let coords = tok.map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
            if coords.iter().any(|&c| c >= len) || degree.is_some_and(|d| d != q) {
                return Err(bad());
            }
            degree = Some(q);
            let v = BitVector::from_indices(len, coords);
            match kind {
                "cycle" => cycles.push(v),
                "cocycle" => cocycles.push(v),
                _ => return Err(bad()),
            }
        }
        if cycles.len() != cocycles.len() {
            return Err(HomologyError::LengthMismatch {
                expected: cycles.len(),
                found: cocycles.len(),
            });
        }
        let mut b = HomologyBasis {
            degree: degree.unwrap_or(0),
            cycles,
            cocycles,
            normalized: false,
        };
        b.normalized = is_identity(&b.pairing()?);
        Ok(b)
    }
}

fn is_identity(m: &BitMatrix) -> bool {
    m.rows() == m.cols() && (0..m.rows()).all(|i| m.row_weight(i) == 1 && m.get(i, i))
}

/// Entry (i, j) is the mod-2 overlap of `cycles[i]` and `cocycles[j]`.
pub fn pairing_matrix(cycles: &[BitVector], cocycles: &[BitVector]) -> Result<BitMatrix, HomologyError> {
    let len = cycles.first().or(cocycles.first()).map_or(0, BitVector::len);
    for v in cycles.iter().chain(cocycles) {
        if v.len() != len {
            return Err(HomologyError::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let mut m = BitMatrix::zeros(cycles.len(), cocycles.len())?;
    for (i, c) in cycles.iter().enumerate() {
        for (j, z) in cocycles.iter().enumerate() {
            if c.dot(z) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn invert(m: &BitMatrix) -> Option<BitMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    if n == 0 {
        return BitMatrix::zeros(0, 0).ok();
    }
    let mut aug = BitMatrix::zeros(n, 2 * n).ok()?;
    for (r, c) in m.entries() {
        aug.set(r, c, true);
    }
    for i in 0..n {
        aug.set(i, n + i, true);
    }
    let pivots = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = BitMatrix::zeros(n, n).ok()?;
    for r in 0..n {
        for c in 0..n {
            if aug.get(r, n + c) {
                inv.set(r, c, true);
            }
        }
    }
    Some(inv)
}

/// Replaces the cocycles by combinations so the pairing with the cycles is the identity.
pub fn normalize_pairing(basis: &HomologyBasis) -> Result<HomologyBasis, HomologyError> {
    let p = basis.pairing()?;
    if p.rows() != p.cols() {
        return Err(HomologyError::DegeneratePairing);
    }
    if is_identity(&p) {
        return Ok(HomologyBasis {
            normalized: true,
            ..basis.clone()
        });
    }
    let inv = invert(&p).ok_or(HomologyError::DegeneratePairing)?;
    let len = basis.cocycles.first().map_or(0, BitVector::len);
    let cocycles = (0..inv.cols())
        .map(|j| {
            let mut z = BitVector::zeros(len);
            for k in 0..inv.rows() {
                if inv.get(k, j) {
                    z.xor_with(&basis.cocycles[k]);
                }
            }
            z
        })
        .collect();
    Ok(HomologyBasis {
        degree: basis.degree,
        cycles: basis.cycles.clone(),
        cocycles,
        normalized: true,
    })
}

fn essential_reps(r: &Reduction, len: usize) -> Vec<BitVector> {
    let v = r.v.as_ref().expect("reduction tracked");
    r.zero_columns()
        .map(|j| BitVector::from_indices(len, v[j].iter().map(|&i| i as usize)))
        .collect()
}

/// Unnormalized representatives at every degree, from one tracked reduction
/// of the complex and one of its dual.
pub fn raw_bases(cc: &ChainComplex) -> Vec<HomologyBasis> {
    let n = cc.top_dim();
    let hom = cc.reduce_all(true);
    let coh = cc.dual().reduce_all(true);
    (0..=n)
        .map(|q| HomologyBasis {
            degree: q,
            cycles: essential_reps(&hom[q], cc.dim(q)),
            cocycles: essential_reps(&coh[n - q], cc.dim(q)),
            normalized: false,
        })
        .collect()
}

/// Normalized bases at every degree.
pub fn all_bases(cc: &ChainComplex) -> Result<Vec<HomologyBasis>, HomologyError> {
    raw_bases(cc).iter().map(normalize_pairing).collect()
}

/// Normalized basis at degree `q`.
pub fn homology_basis(cc: &ChainComplex, q: usize) -> Result<HomologyBasis, HomologyError> {
    let n = cc.top_dim();
    if q > n {
        return Err(HomologyError::DegreeOutOfRange { q, n });
    }
    normalize_pairing(&raw_bases(cc).swap_remove(q))
}

/// Cup-product pairing between cocycle bases at complementary degrees:
/// entry (i, j) is the sum over top simplices of `low[i] ∪ high[j]`.
pub fn poincare_pairing_of(
    sc: &SimplicialComplex,
    low: &HomologyBasis,
    high: &HomologyBasis,
) -> Result<BitMatrix, HomologyError> {
    if !sc.is_closed_manifold() {
        return Err(HomologyError::NotClosedManifold);
    }
    if low.degree + high.degree != sc.dim() {
        return Err(HomologyError::DegreeOutOfRange {
            q: high.degree,
            n: sc.dim(),
        });
    }
    let faces = cupgate::FaceTable::new(sc, &[low.degree, high.degree]).expect("degrees sum to the dimension");
    let mut m = BitMatrix::zeros(low.len(), high.len())?;
    for (i, a) in low.cocycles.iter().enumerate() {
        let back = faces.contract(&[a]);
        for (j, b) in high.cocycles.iter().enumerate() {
            if back.dot(b) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Poincaré pairing at degree `p` against `n − p`, computing bases on the way.
pub fn poincare_pairing(sc: &SimplicialComplex, p: usize) -> Result<BitMatrix, HomologyError> {
    if !sc.is_closed_manifold() {
        return Err(HomologyError::NotClosedManifold);
    }
    let n = sc.dim();
    if p > n {
        return Err(HomologyError::DegreeOutOfRange { q: p, n });
    }
    let cc = sc.chain_complex().map_err(|_| HomologyError::NotClosedManifold)?;
    let bases = raw_bases(&cc);
    poincare_pairing_of(sc, &bases[p], &bases[n - p])
}

#[cfg(test)]
mod tests;
