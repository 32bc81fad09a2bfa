use super::{BitMatrix, BitVector, Gf2Error};

/// Column-compressed GF(2) matrix. Row indices within a column are sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBitMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
}

/// Output of a left-to-right column reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Lowest (largest-index) row of each reduced column, `None` for zero columns.
    pub low: Vec<Option<u32>>,
    /// Reduced columns, empty for zero or skipped columns.
    pub reduced: Vec<Vec<u32>>,
    /// Column operations: `v[j]` lists the original columns summed into column `j`.
    /// Only present when tracking was requested.
    pub v: Option<Vec<Vec<u32>>>,
    pub skipped: Vec<bool>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.low.iter().filter(|l| l.is_some()).count()
    }

    /// Rows that ended up as the low entry of some column.
    pub fn pivot_rows(&self, rows: usize) -> Vec<bool> {
        let mut out = vec![false; rows];
        for l in self.low.iter().flatten() {
            out[*l as usize] = true;
        }
        out
    }

    /// Columns that reduced to zero without being skipped.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.low.len()).filter(|&j| self.low[j].is_none() && !self.skipped[j])
    }
}

/// Symmetric difference of two sorted, duplicate-free index lists.
pub(crate) fn xor_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

impl SparseBitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
        }
    }

    /// Builds from explicit columns. Entries repeated an even number of times cancel.
    pub fn from_columns(rows: usize, columns: Vec<Vec<u32>>) -> Result<Self, Gf2Error> {
        let mut col_ptr = Vec::with_capacity(columns.len() + 1);
        col_ptr.push(0);
        let mut row_idx = Vec::with_capacity(columns.iter().map(Vec::len).sum());
        for (j, mut c) in columns.into_iter().enumerate() {
            c.sort_unstable();
            let mut k = 0;
            while k < c.len() {
                let mut m = k;
                while m < c.len() && c[m] == c[k] {
                    m += 1;
                }
                if c[k] as usize >= rows {
                    return Err(Gf2Error::IndexOutOfRange {
                        row: c[k] as usize,
                        col: j,
                        rows,
                        cols: col_ptr.capacity() - 1,
                    });
                }
                if (m - k) % 2 == 1 {
                    row_idx.push(c[k]);
                }
                k = m;
            }
            col_ptr.push(row_idx.len());
        }
        Ok(Self { rows, col_ptr, row_idx })
    }

    /// Builds from already sorted, duplicate-free columns stored back to back.
    pub(crate) fn from_raw(rows: usize, col_ptr: Vec<usize>, row_idx: Vec<u32>) -> Self {
        debug_assert!(col_ptr.windows(2).all(|w| w[0] <= w[1]));
        Self { rows, col_ptr, row_idx }
    }

    pub fn from_coords(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Result<Self, Gf2Error> {
        let mut columns = vec![Vec::new(); cols];
        for &(r, c) in entries {
            if r >= rows || c >= cols {
                return Err(Gf2Error::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            columns[c].push(r as u32);
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(m: &BitMatrix) -> Self {
        let t = m.transpose();
        let columns = (0..t.rows()).map(|c| t.row(c).iter_ones().map(|r| r as u32).collect()).collect();
        Self::from_columns(m.rows(), columns).expect("dense entries are in range")
    }

    pub fn to_dense(&self) -> Result<BitMatrix, Gf2Error> {
        let mut m = BitMatrix::zeros(self.rows, self.cols())?;
        for j in 0..self.cols() {
            for &r in self.column(j) {
                m.set(r as usize, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[u32] {
        &self.row_idx[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    pub fn is_zero(&self) -> bool {
        self.row_idx.is_empty()
    }

    /// Set entries sorted by (row, column).
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = (0..self.cols())
            .flat_map(|j| self.column(j).iter().map(move |&r| (r as usize, j)))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.rows + 1];
        for &r in &self.row_idx {
            counts[r as usize + 1] += 1;
        }
        for i in 0..self.rows {
            counts[i + 1] += counts[i];
        }
        let col_ptr = counts.clone();
        let mut next = counts;
        let mut row_idx = vec![0u32; self.row_idx.len()];
        for j in 0..self.cols() {
            for &r in self.column(j) {
                row_idx[next[r as usize]] = j as u32;
                next[r as usize] += 1;
            }
        }
        Self {
            rows: self.cols(),
            col_ptr,
            row_idx,
        }
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols(), "matrix-vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for j in v.iter_ones() {
            for &r in self.column(j) {
                out.flip(r as usize);
            }
        }
        out
    }

    /// `selfᵀ · v`.
    pub fn transpose_mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows, "matrix-vector length mismatch");
        let mut out = BitVector::zeros(self.cols());
        for j in 0..self.cols() {
            if self.column(j).iter().filter(|&&r| v.get(r as usize)).count() % 2 == 1 {
                out.set(j, true);
            }
        }
        out
    }

    /// `self · other`, column by column.
    pub fn mul(&self, other: &SparseBitMatrix) -> Result<SparseBitMatrix, Gf2Error> {
        if self.cols() != other.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols(),
                found: other.rows,
            });
        }
        let mut acc = vec![false; self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(other.cols());
        for j in 0..other.cols() {
            for &k in other.column(j) {
                for &r in self.column(k as usize) {
                    if !acc[r as usize] {
                        touched.push(r);
                    }
                    acc[r as usize] ^= true;
                }
            }
            let mut col: Vec<u32> = touched.drain(..).filter(|&r| acc[r as usize]).collect();
            for &r in &col {
                acc[r as usize] = false;
            }
            col.sort_unstable();
            col.dedup();
            columns.push(col);
        }
        SparseBitMatrix::from_columns(self.rows, columns)
    }

    pub fn max_column_weight(&self) -> usize {
        (0..self.cols()).map(|j| self.column(j).len()).max().unwrap_or(0)
    }

    pub fn max_row_weight(&self) -> usize {
        let mut w = vec![0usize; self.rows];
        for &r in &self.row_idx {
            w[r as usize] += 1;
        }
        w.into_iter().max().unwrap_or(0)
    }

    /// Column reduction: each column is reduced by earlier columns until its
    /// lowest entry is unique. Columns flagged in `skip` are treated as zero
    /// (used for clearing). With `track`, the column operations are recorded.
    pub fn reduce(&self, skip: Option<&[bool]>, track: bool) -> Reduction {
        let cols = self.cols();
        let mut pivot_of_row: Vec<u32> = vec![u32::MAX; self.rows];
        let mut low = vec![None; cols];
        let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); cols];
        let mut v: Option<Vec<Vec<u32>>> = track.then(|| vec![Vec::new(); cols]);
        let mut skipped = vec![false; cols];
        let (mut buf, mut vbuf) = (Vec::new(), Vec::new());
        for j in 0..cols {
            if skip.is_some_and(|s| s[j]) {
                skipped[j] = true;
                continue;
            }
            let mut col = self.column(j).to_vec();
            let mut ops = vec![j as u32];
            while let Some(&l) = col.last() {
                let k = pivot_of_row[l as usize];
                if k == u32::MAX {
                    break;
                }
                xor_sorted(&col, &reduced[k as usize], &mut buf);
                std::mem::swap(&mut col, &mut buf);
                if let Some(v) = &v {
                    xor_sorted(&ops, &v[k as usize], &mut vbuf);
                    std::mem::swap(&mut ops, &mut vbuf);
                }
            }
            if let Some(&l) = col.last() {
                pivot_of_row[l as usize] = j as u32;
                low[j] = Some(l);
                col.shrink_to_fit();
                reduced[j] = col;
            }
            if let Some(v) = &mut v {
                v[j] = ops;
            }
        }
        Reduction {
            low,
            reduced,
            v,
            skipped,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduce(None, false).rank()
    }
}
