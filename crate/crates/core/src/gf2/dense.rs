use super::vector::{words_for, BitVector};
use super::{Gf2Error, CAPACITY_BITS};

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

fn check_capacity(rows: usize, cols: usize) -> Result<(), Gf2Error> {
    let bits = (rows as u128) * (cols as u128);
    if bits > CAPACITY_BITS as u128 {
        return Err(Gf2Error::CapacityExceeded { rows, cols });
    }
    Ok(())
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, Gf2Error> {
        check_capacity(rows, cols)?;
        let stride = words_for(cols);
        Ok(Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Stacks the given vectors as rows. All must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, cols.len())?;
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::LengthMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Coordinate form: every listed `(row, col)` entry is toggled on.
    pub fn from_coords(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, cols)?;
        for &(r, c) in entries {
            if r >= rows || c >= cols {
                return Err(Gf2Error::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            m.toggle(r, c);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(&(0..self.rows).map(|r| self.get(r, c)).collect::<Vec<_>>())
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Set entries in row-major (lexicographic) order.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| self.row(r).iter_ones().map(move |c| (r, c)).collect::<Vec<_>>())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows).expect("transpose has the same number of bits");
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "matrix-vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in self.row(r).iter_ones() {
                let (dst, src) = (r * out.stride, k * other.stride);
                for w in 0..out.stride {
                    out.data[dst + w] ^= other.data[src + w];
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place. Pivots are taken at the lowest
    /// available row for each column, scanning columns left to right.
    /// Returns the pivot columns in row order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let (word, mask) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (next..self.rows).find(|&r| self.data[r * self.stride + word] & mask != 0) else {
                continue;
            };
            if p != next {
                for w in 0..self.stride {
                    self.data.swap(p * self.stride + w, next * self.stride + w);
                }
            }
            for r in 0..self.rows {
                if r != next && self.data[r * self.stride + word] & mask != 0 {
                    let (dst, src) = (r * self.stride, next * self.stride);
                    for w in word..self.stride {
                        self.data[dst + w] ^= self.data[src + w];
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Null-space basis, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.set(f, true);
                for (i, &c) in pivots.iter().enumerate() {
                    if m.get(i, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Any `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1).ok()?;
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                aug.set(r, c, true);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &c) in pivots.iter().enumerate() {
            if aug.get(i, self.cols) {
                x.set(c, true);
            }
        }
        Some(x)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    m.kernel_basis()
}

pub fn solve(m: &BitMatrix, b: &BitVector) -> Option<BitVector> {
    m.solve(b)
}

/// Incrementally built echelon basis keyed by lowest set coordinate.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    len: usize,
    vectors: Vec<BitVector>,
    by_pivot: std::collections::HashMap<usize, usize>,
}

impl XorBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        while let Some(p) = v.first_one() {
            match self.by_pivot.get(&p) {
                Some(&k) => v.xor_with(&self.vectors[k]),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` if it is independent of the current span. Returns whether it was added.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in basis insert");
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.by_pivot.insert(p, self.vectors.len());
                self.vectors.push(r);
                true
            }
            None => false,
        }
    }
}

/// Vectors from `space` extending a basis of span(`subspace`) to a basis of span(`space`).
pub fn quotient_basis(space: &[BitVector], subspace: &[BitVector]) -> Result<Vec<BitVector>, Gf2Error> {
    let len = space
        .first()
        .or(subspace.first())
        .map(BitVector::len)
        .unwrap_or(0);
    for v in space.iter().chain(subspace) {
        if v.len() != len {
            return Err(Gf2Error::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let mut span = XorBasis::new(len);
    for v in space {
        span.insert(v.clone());
    }
    if subspace.iter().any(|s| !span.contains(s)) {
        return Err(Gf2Error::SubspaceNotContained);
    }
    let mut sub = XorBasis::new(len);
    for s in subspace {
        sub.insert(s.clone());
    }
    Ok(space.iter().filter(|v| sub.insert((*v).clone())).cloned().collect())
}
