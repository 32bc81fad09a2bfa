use std::cmp::Ordering;

use crate::gf2::{BitVector, SparseBitMatrix};

use super::{ChainComplex, ComplexError};

/// Simplices of one dimension, stored back to back as sorted vertex tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexList {
    arity: usize,
    verts: Vec<u32>,
}

impl SimplexList {
    fn new(arity: usize) -> Self {
        Self {
            arity,
            verts: Vec::new(),
        }
    }

    /// Sorts lexicographically and removes duplicates.
    fn from_unsorted(arity: usize, verts: Vec<u32>) -> Self {
        if arity == 0 {
            return Self::new(0);
        }
        let count = verts.len() / arity;
        let mut order: Vec<u32> = (0..count as u32).collect();
        let key = |i: u32| &verts[i as usize * arity..(i as usize + 1) * arity];
        order.sort_unstable_by(|&a, &b| key(a).cmp(key(b)));
        order.dedup_by(|a, b| key(*a) == key(*b));
        let mut out = Vec::with_capacity(order.len() * arity);
        for i in order {
            out.extend_from_slice(key(i));
        }
        Self { arity, verts: out }
    }

    pub fn len(&self) -> usize {
        if self.arity == 0 {
            0
        } else {
            self.verts.len() / self.arity
        }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[u32] {
        &self.verts[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.verts.chunks_exact(self.arity.max(1))
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        if simplex.len() != self.arity {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(simplex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// All facets of all members, deduplicated and sorted.
    fn facets(&self) -> SimplexList {
        let a = self.arity;
        let mut out = Vec::with_capacity(self.len() * a * (a - 1));
        for s in self.iter() {
            for skip in 0..a {
                out.extend(s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
            }
        }
        SimplexList::from_unsorted(a - 1, out)
    }

    fn merge(&self, other: &SimplexList) -> SimplexList {
        let mut v = self.verts.clone();
        v.extend_from_slice(&other.verts);
        SimplexList::from_unsorted(self.arity, v)
    }
}

/// A finite simplicial complex with a global vertex order.
///
/// `simplices[q]` lists the q-simplices as strictly increasing vertex tuples,
/// sorted lexicographically; a simplex's index is its position in that list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    simplices: Vec<SimplexList>,
    closed_manifold: bool,
}

pub(crate) fn normalize_simplex(mut s: Vec<u32>, num_vertices: usize) -> Result<Vec<u32>, ComplexError> {
    s.sort_unstable();
    if s.is_empty() {
        return Err(ComplexError::InvalidSimplex("empty simplex".into()));
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(ComplexError::InvalidSimplex(format!("repeated vertex in {s:?}")));
    }
    if let Some(&v) = s.last() {
        if v as usize >= num_vertices {
            return Err(ComplexError::InvalidSimplex(format!(
                "vertex {v} out of range for {num_vertices} vertices"
            )));
        }
    }
    Ok(s)
}

impl SimplicialComplex {
    /// Closure of the given simplices. Vertex tuples may be given in any order.
    pub fn from_top_simplices(num_vertices: usize, tops: &[Vec<u32>]) -> Result<Self, ComplexError> {
        let dim = tops.iter().map(Vec::len).max().unwrap_or(1).max(1) - 1;
        let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); dim + 1];
        for t in tops {
            let s = normalize_simplex(t.clone(), num_vertices)?;
            by_dim[s.len() - 1].extend(s);
        }
        let lists = by_dim
            .into_iter()
            .enumerate()
            .map(|(q, v)| SimplexList::from_unsorted(q + 1, v))
            .collect();
        Ok(Self::close(num_vertices, lists))
    }

    fn close(num_vertices: usize, mut lists: Vec<SimplexList>) -> Self {
        for q in (1..lists.len()).rev() {
            let f = lists[q].facets();
            lists[q - 1] = lists[q - 1].merge(&f);
        }
        // isolated vertices still count as vertices of the complex
        let all: Vec<u32> = (0..num_vertices as u32).collect();
        if lists.is_empty() {
            lists.push(SimplexList::new(1));
        }
        lists[0] = lists[0].merge(&SimplexList::from_unsorted(1, all));
        while lists.len() > 1 && lists.last().is_some_and(SimplexList::is_empty) {
            lists.pop();
        }
        let mut sc = Self {
            num_vertices,
            simplices: lists,
            closed_manifold: false,
        };
        sc.closed_manifold = sc.compute_closed_manifold();
        sc
    }

    fn compute_closed_manifold(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return self.count(0) == 1;
        }
        let mut cofaces = vec![0u8; self.count(n - 1)];
        for s in self.simplices[n].iter() {
            for skip in 0..=n {
                let f: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                let i = self.simplices[n - 1].index_of(&f).expect("closure holds");
                cofaces[i] = cofaces[i].saturating_add(1);
            }
        }
        cofaces.iter().all(|&c| c == 2)
    }

    /// The one-vertex complex.
    pub fn point() -> Self {
        Self::close(1, vec![SimplexList::from_unsorted(1, vec![0])])
    }

    /// Triangulated circle with `l` vertices and `l` edges.
    pub fn circle(l: usize) -> Result<Self, ComplexError> {
        if l < 3 {
            return Err(ComplexError::TooSmall { min: 3, got: l });
        }
        let edges: Vec<Vec<u32>> = (0..l as u32).map(|i| vec![i, (i + 1) % l as u32]).collect();
        Self::from_top_simplices(l, &edges)
    }

    /// Staircase triangulation of `circle(l) × circle(l)`.
    pub fn torus(l: usize) -> Result<Self, ComplexError> {
        let c = Self::circle(l)?;
        c.ordered_product(&c)
    }

    /// Product of `n` copies of `circle(l)`; `n = 0` gives a point.
    pub fn circle_power(l: usize, n: usize) -> Result<Self, ComplexError> {
        let c = Self::circle(l)?;
        let mut out = Self::point();
        for _ in 0..n {
            out = out.ordered_product(&c)?;
        }
        Ok(out)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of q-simplices; zero outside `0..=dim`.
    #[inline]
    pub fn count(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, SimplexList::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|q| self.count(q)).collect()
    }

    pub fn simplices(&self, q: usize) -> &SimplexList {
        &self.simplices[q]
    }

    #[inline]
    pub fn simplex(&self, q: usize, i: usize) -> &[u32] {
        self.simplices[q].get(i)
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        self.simplices.get(q)?.index_of(simplex)
    }

    pub fn is_closed_manifold(&self) -> bool {
        self.closed_manifold
    }

    /// Top-dimensional simplices as vertex tuples.
    pub fn top_simplices(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.simplices[self.dim()].iter()
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.top_simplices().map(<[u32]>::to_vec).collect();
        for q in (0..self.dim()).rev() {
            let mut covered = vec![false; self.count(q)];
            for s in self.simplices[q + 1].iter() {
                for skip in 0..s.len() {
                    let f: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    covered[self.simplices[q].index_of(&f).expect("closure holds")] = true;
                }
            }
            out.extend((0..self.count(q)).filter(|&i| !covered[i]).map(|i| self.simplex(q, i).to_vec()));
        }
        out
    }

    /// Boundary map from q-simplices to (q−1)-simplices; empty for q = 0 or q > dim.
    pub fn boundary(&self, q: usize) -> SparseBitMatrix {
        if q == 0 || q > self.dim() {
            return SparseBitMatrix::zeros(if q == 0 { 0 } else { self.count(q - 1) }, self.count(q));
        }
        let (cols, rows) = (&self.simplices[q], &self.simplices[q - 1]);
        let mut col_ptr = Vec::with_capacity(cols.len() + 1);
        col_ptr.push(0);
        let mut row_idx = Vec::with_capacity(cols.len() * (q + 1));
        let mut face = vec![0u32; q];
        let mut col = Vec::with_capacity(q + 1);
        for s in cols.iter() {
            col.clear();
            for skip in 0..=q {
                let mut k = 0;
                for (m, &v) in s.iter().enumerate() {
                    if m != skip {
                        face[k] = v;
                        k += 1;
                    }
                }
                col.push(rows.index_of(&face).expect("closure holds") as u32);
            }
            col.sort_unstable();
            row_idx.extend_from_slice(&col);
            col_ptr.push(row_idx.len());
        }
        SparseBitMatrix::from_raw(rows.len(), col_ptr, row_idx)
    }

    /// Chain complex of this simplicial complex, checked for ∂∘∂ = 0.
    pub fn chain_complex(&self) -> Result<ChainComplex, ComplexError> {
        let dims = self.f_vector();
        let boundaries = (1..=self.dim()).map(|q| self.boundary(q)).collect();
        ChainComplex::new(dims, boundaries)
    }

    /// Staircase triangulation of `self × other`.
    ///
    /// Vertex `(u, w)` becomes `u · |V(other)| + w`, so the global order is
    /// lexicographic. Each pair of maximal simplices contributes one simplex
    /// per monotone lattice path through their vertex grid.
    pub fn ordered_product(&self, other: &SimplicialComplex) -> Result<Self, ComplexError> {
        let nb = other.num_vertices as u64;
        let nv = self.num_vertices as u64 * nb;
        if nv > u32::MAX as u64 {
            return Err(ComplexError::CapacityExceeded(format!("{nv} vertices")));
        }
        let (ma, mb) = (self.maximal_simplices(), other.maximal_simplices());
        let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); self.dim() + other.dim() + 1];
        let mut path = Vec::new();
        for a in &ma {
            for b in &mb {
                let (p, r) = (a.len() - 1, b.len() - 1);
                let bucket = &mut by_dim[p + r];
                staircase_paths(p, r, &mut path, &mut |steps: &[bool]| {
                    let (mut i, mut j) = (0, 0);
                    bucket.push(a[0] * nb as u32 + b[0]);
                    for &right in steps {
                        if right {
                            i += 1
                        } else {
                            j += 1
                        }
                        bucket.push(a[i] * nb as u32 + b[j]);
                    }
                });
            }
        }
        let lists = by_dim
            .into_iter()
            .enumerate()
            .map(|(q, v)| SimplexList::from_unsorted(q + 1, v))
            .collect();
        Ok(Self::close(nv as usize, lists))
    }

    /// Copy with the `index`-th top simplex removed and every lower simplex kept,
    /// so all lower-dimensional indices are unchanged.
    pub fn without_top_simplex(&self, index: usize) -> Result<Self, ComplexError> {
        let n = self.dim();
        if index >= self.count(n) {
            return Err(ComplexError::InvalidSimplex(format!("no top simplex {index}")));
        }
        let mut simplices = self.simplices.clone();
        let a = simplices[n].arity;
        simplices[n].verts.drain(index * a..(index + 1) * a);
        let mut sc = Self {
            num_vertices: self.num_vertices,
            simplices,
            closed_manifold: false,
        };
        sc.closed_manifold = sc.compute_closed_manifold();
        Ok(sc)
    }

    /// Connected sum: removes top simplex `ta` of `self` and `tb` of `other`,
    /// then glues along their boundaries, vertex `k` of `tb` onto vertex `k` of `ta`.
    /// Vertices of `other` not on `tb` are appended after those of `self`.
    pub fn connected_sum(&self, ta: usize, other: &SimplicialComplex, tb: usize) -> Result<Self, ComplexError> {
        let n = self.dim();
        if other.dim() != n || n == 0 {
            return Err(ComplexError::InvalidSimplex("connected sum needs equal positive dimensions".into()));
        }
        if ta >= self.count(n) || tb >= other.count(n) {
            return Err(ComplexError::InvalidSimplex("top simplex index out of range".into()));
        }
        let (sa, sb) = (self.simplex(n, ta).to_vec(), other.simplex(n, tb).to_vec());
        let mut map = vec![u32::MAX; other.num_vertices];
        for (k, &v) in sb.iter().enumerate() {
            map[v as usize] = sa[k];
        }
        let mut next = self.num_vertices as u32;
        for m in map.iter_mut().filter(|m| **m == u32::MAX) {
            *m = next;
            next += 1;
        }
        let mut tops: Vec<Vec<u32>> = self.maximal_simplices().into_iter().filter(|s| *s != sa).collect();
        tops.extend(
            other
                .maximal_simplices()
                .into_iter()
                .filter(|s| *s != sb)
                .map(|s| s.iter().map(|&v| map[v as usize]).collect()),
        );
        Self::from_top_simplices(next as usize, &tops)
    }

    /// Indicator vector of all top simplices.
    pub fn fundamental_chain(&self) -> BitVector {
        BitVector::ones(self.count(self.dim()))
    }
}

/// Calls `f` with every sequence of `p` right-steps and `r` up-steps.
pub(crate) fn staircase_paths(p: usize, r: usize, path: &mut Vec<bool>, f: &mut dyn FnMut(&[bool])) {
    fn go(right: usize, up: usize, path: &mut Vec<bool>, f: &mut dyn FnMut(&[bool])) {
        if right == 0 && up == 0 {
            f(path);
            return;
        }
        if right > 0 {
            path.push(true);
            go(right - 1, up, path, f);
            path.pop();
        }
        if up > 0 {
            path.push(false);
            go(right, up - 1, path, f);
            path.pop();
        }
    }
    path.clear();
    go(p, r, path, f);
}
