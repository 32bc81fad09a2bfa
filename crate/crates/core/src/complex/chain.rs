use crate::gf2::{BitVector, Reduction, SparseBitMatrix};

use super::ComplexError;

/// GF(2) chain complex `C_n → … → C_0`.
///
/// `boundary(q)` maps `C_q → C_{q−1}`; it is a zero-width or zero-height
/// matrix outside `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    // index q holds ∂_q for q in 0..=n+1
    boundaries: Vec<SparseBitMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` is ∂_{k+1}: a `dims[k] × dims[k+1]` matrix.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseBitMatrix>) -> Result<Self, ComplexError> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(ComplexError::ShapeMismatch(boundaries.len()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] || b.cols() != dims[k + 1] {
                return Err(ComplexError::ShapeMismatch(k + 1));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(ComplexError::NotAComplex(k));
            }
        }
        let n = dims.len() - 1;
        let mut all = Vec::with_capacity(n + 2);
        all.push(SparseBitMatrix::zeros(0, dims[0]));
        all.extend(boundaries);
        all.push(SparseBitMatrix::zeros(dims[n], 0));
        Ok(Self { dims, boundaries: all })
    }

    pub fn top_dim(&self) -> usize {
        self.dims.len() - 1
    }

    /// dim C_q, zero outside `0..=n`.
    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// ∂_q for `q` in `0..=n+1`.
    pub fn boundary(&self, q: usize) -> &SparseBitMatrix {
        &self.boundaries[q]
    }

    /// d^q = ∂_{q+1}ᵀ, mapping q-cochains to (q+1)-cochains.
    pub fn coboundary(&self, q: usize) -> SparseBitMatrix {
        self.boundaries[q + 1].transpose()
    }

    /// The boundary maps ∂_1..∂_n.
    pub fn boundary_maps(&self) -> &[SparseBitMatrix] {
        &self.boundaries[1..self.boundaries.len() - 1]
    }

    /// Cochain complex written as a chain complex: degree k holds C^{n−k}.
    pub fn dual(&self) -> ChainComplex {
        let n = self.top_dim();
        let dims = (0..=n).map(|k| self.dims[n - k]).collect();
        let mut boundaries = vec![SparseBitMatrix::zeros(0, self.dims[n])];
        boundaries.extend((1..=n).map(|k| self.boundaries[n - k + 1].transpose()));
        boundaries.push(SparseBitMatrix::zeros(self.dims[0], 0));
        ChainComplex { dims, boundaries }
    }

    /// Reduces every boundary map from the top down, clearing columns already
    /// known to reduce to zero. `reductions[q]` belongs to ∂_q, q in 0..=n.
    pub fn reduce_all(&self, track: bool) -> Vec<Reduction> {
        let n = self.top_dim();
        let mut out: Vec<Option<Reduction>> = (0..=n).map(|_| None).collect();
        let mut clear: Option<Vec<bool>> = None;
        for q in (0..=n).rev() {
            let r = self.boundaries[q].reduce(clear.as_deref(), track);
            if q > 0 {
                clear = Some(r.pivot_rows(self.dims[q - 1]));
            }
            out[q] = Some(r);
        }
        out.into_iter().map(|r| r.expect("filled above")).collect()
    }

    /// rank ∂_q for q in 0..=n+1. Computed on the coboundary side, which
    /// reduces with far less fill-in on triangulated products.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.top_dim();
        let dual: Vec<usize> = self.dual().reduce_all(false).iter().map(Reduction::rank).collect();
        // dual degree k carries d^{n-k} = ∂_{n-k+1}ᵀ
        let mut r = vec![0; n + 2];
        for (k, rk) in dual.into_iter().enumerate().skip(1) {
            r[n - k + 1] = rk;
        }
        r
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..=self.top_dim()).map(|q| self.dims[q] - r[q] - r[q + 1]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn is_cycle(&self, q: usize, c: &BitVector) -> bool {
        self.boundaries[q].mul_vec(c).is_zero()
    }

    pub fn is_cocycle(&self, q: usize, c: &BitVector) -> bool {
        self.boundaries[q + 1].transpose_mul_vec(c).is_zero()
    }
}

/// Offsets of the blocks `C_i ⊗ C_j`, i ascending, inside the product degree `k`.
fn tensor_block_offsets(a: &ChainComplex, b: &ChainComplex, k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for i in 0..=k.min(a.top_dim()) {
        let j = k - i;
        if j > b.top_dim() {
            continue;
        }
        out.push((i, j, off));
        off += a.dim(i) * b.dim(j);
    }
    out
}

/// Tensor product complex: degree k is ⊕_{i+j=k} C_i ⊗ C_j with basis
/// element `x ⊗ y` at block offset + `x · dim C_j + y`.
pub fn tensor_chain_product(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex, ComplexError> {
    let n = a.top_dim() + b.top_dim();
    let blocks: Vec<_> = (0..=n).map(|k| tensor_block_offsets(a, b, k)).collect();
    let dims: Vec<usize> = blocks
        .iter()
        .map(|bl| bl.iter().map(|&(i, j, _)| a.dim(i) * b.dim(j)).sum())
        .collect();
    let total: usize = dims.iter().sum();
    if total > u32::MAX as usize {
        return Err(ComplexError::CapacityExceeded(format!("{total} chains")));
    }
    let offset_of = |k: usize, i: usize| blocks[k].iter().find(|&&(bi, _, _)| bi == i).map(|&(_, _, o)| o);
    let mut bounds = Vec::with_capacity(n);
    for k in 1..=n {
        let mut columns = Vec::with_capacity(dims[k]);
        for &(i, j, _) in &blocks[k] {
            let (bj, bj1) = (b.dim(j), if j >= 1 { b.dim(j - 1) } else { 0 });
            for x in 0..a.dim(i) {
                for y in 0..bj {
                    let mut col = Vec::new();
                    if i >= 1 {
                        let o = offset_of(k - 1, i - 1).expect("block exists");
                        for &r in a.boundary(i).column(x) {
                            col.push((o + r as usize * bj + y) as u32);
                        }
                    }
                    if j >= 1 {
                        let o = offset_of(k - 1, i).expect("block exists");
                        for &r in b.boundary(j).column(y) {
                            col.push((o + x * bj1 + r as usize) as u32);
                        }
                    }
                    columns.push(col);
                }
            }
        }
        bounds.push(SparseBitMatrix::from_columns(dims[k - 1], columns)?);
    }
    ChainComplex::new(dims, bounds)
}

/// Cyclic repetition complex `C_1 → C_0` of length `n`: edge i has boundary {i, i+1 mod n}.
pub fn repetition_complex(n: usize) -> Result<ChainComplex, ComplexError> {
    if n < 2 {
        return Err(ComplexError::TooSmall { min: 2, got: n });
    }
    let columns = (0..n as u32).map(|i| vec![i, (i + 1) % n as u32]).collect();
    ChainComplex::new(vec![n, n], vec![SparseBitMatrix::from_columns(n, columns)?])
}

/// A single chain in degree 0 and nothing else.
pub fn point_complex() -> ChainComplex {
    ChainComplex::new(vec![1], vec![]).expect("valid")
}
