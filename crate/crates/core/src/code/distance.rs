use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::{BitMatrix, BitVector, SparseBitMatrix};

/// Which vectors count as logical: those whose detector mask, restricted to
/// `interest`, is nonzero (`required == None`) or equals `required`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Target {
    pub interest: u128,
    pub required: Option<u128>,
}

impl Target {
    pub fn any_of(interest: u128) -> Self {
        Self {
            interest,
            required: None,
        }
    }

    pub fn exactly(interest: u128, required: u128) -> Self {
        Self {
            interest,
            required: Some(required),
        }
    }

    #[inline]
    fn accepts(&self, mask: u128) -> bool {
        let m = mask & self.interest;
        match self.required {
            None => m != 0,
            Some(r) => m == r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ExhaustiveKernel,
    ExhaustiveWeight,
    Randomized,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ExhaustiveKernel => "exhaustive-kernel",
            Method::ExhaustiveWeight => "exhaustive-weight",
            Method::Randomized => "randomized",
        }
    }
}

/// Minimum weight of an accepted vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Exact(usize),
    /// Certified `lower ≤ d`; `upper` is the lightest vector found, if any.
    Bounds { lower: usize, upper: Option<usize> },
    /// No vector is accepted at all.
    NoLogicals,
}

impl Weight {
    pub fn is_exact(&self) -> bool {
        matches!(self, Weight::Exact(_))
    }

    pub fn lower(&self) -> usize {
        match *self {
            Weight::Exact(d) => d,
            Weight::Bounds { lower, .. } => lower,
            Weight::NoLogicals => usize::MAX,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match *self {
            Weight::Exact(d) => Some(d),
            Weight::Bounds { upper, .. } => upper,
            Weight::NoLogicals => None,
        }
    }

    /// Minimum of two independent minima.
    pub fn min(self, other: Weight) -> Weight {
        match (self, other) {
            (Weight::NoLogicals, w) | (w, Weight::NoLogicals) => w,
            (a, b) => {
                let lower = a.lower().min(b.lower());
                let upper = match (a.upper(), b.upper()) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                if upper == Some(lower) {
                    Weight::Exact(lower)
                } else {
                    Weight::Bounds { lower, upper }
                }
            }
        }
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Weight::Exact(d) => write!(f, "{d}"),
            Weight::Bounds { lower, upper: Some(u) } => write!(f, "[{lower},{u}]"),
            Weight::Bounds { lower, upper: None } => write!(f, "[{lower},?]"),
            Weight::NoLogicals => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Kernels up to this dimension are enumerated completely.
    pub exhaustive_threshold: usize,
    /// Maximum number of partial supports visited by the weight-ordered search.
    pub weight_budget: u64,
    /// Random information-set draws when exhaustive methods do not finish.
    pub random_draws: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            exhaustive_threshold: 26,
            weight_budget: 50_000_000,
            random_draws: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub weights: Vec<Weight>,
    pub method: Method,
    pub kernel_dim: usize,
}

/// Packs `<x, detector_k>` for all k, given per-coordinate masks.
fn coordinate_masks(n: usize, detectors: &[BitVector]) -> Vec<u128> {
    assert!(detectors.len() <= 128, "at most 128 detectors are supported");
    let mut masks = vec![0u128; n];
    for (k, d) in detectors.iter().enumerate() {
        for i in d.iter_ones() {
            masks[i] |= 1 << k;
        }
    }
    masks
}

fn mask_of(v: &BitVector, coord_masks: &[u128]) -> u128 {
    v.iter_ones().fold(0, |m, i| m ^ coord_masks[i])
}

/// Basis of the null space of a sparse check matrix, via column reduction.
pub fn sparse_kernel(check: &SparseBitMatrix) -> Vec<BitVector> {
    let r = check.reduce(None, true);
    let v = r.v.as_ref().expect("tracked");
    r.zero_columns()
        .map(|j| BitVector::from_indices(check.cols(), v[j].iter().map(|&i| i as usize)))
        .collect()
}

/// Minimum weights over `ker(check)` for each target. Chooses complete
/// kernel enumeration, then weight-ordered search, then random draws.
pub fn min_weights(
    check: &SparseBitMatrix,
    detectors: &[BitVector],
    targets: &[Target],
    opts: &SearchOptions,
) -> SearchResult {
    let n = check.cols();
    let masks = coordinate_masks(n, detectors);
    let kernel = sparse_kernel(check);
    let kernel_dim = kernel.len();
    let possible: Vec<bool> = targets.iter().map(|t| target_reachable(t, &kernel, &masks)).collect();
    let finish = |mut w: Vec<Weight>| {
        for (x, &p) in w.iter_mut().zip(&possible) {
            if !p {
                *x = Weight::NoLogicals;
            }
        }
        w
    };
    if kernel_dim <= opts.exhaustive_threshold {
        return SearchResult {
            weights: finish(gray_enumeration(&kernel, &masks, targets)),
            method: Method::ExhaustiveKernel,
            kernel_dim,
        };
    }
    let (weights, complete) = weight_search(check, &masks, targets, &possible, opts.weight_budget);
    if complete {
        return SearchResult {
            weights: finish(weights),
            method: Method::ExhaustiveWeight,
            kernel_dim,
        };
    }
    let uppers = random_information_sets(&kernel, &masks, targets, opts.random_draws, opts.seed);
    let weights = weights
        .into_iter()
        .zip(uppers)
        .map(|(w, u)| match w {
            Weight::Bounds { lower, upper } => {
                let upper = match (upper, u) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                if upper == Some(lower) {
                    Weight::Exact(lower)
                } else {
                    Weight::Bounds { lower, upper }
                }
            }
            w => w,
        })
        .collect();
    SearchResult {
        weights: finish(weights),
        method: Method::Randomized,
        kernel_dim,
    }
}

/// Whether any kernel vector satisfies the target, decided on the mask span.
fn target_reachable(t: &Target, kernel: &[BitVector], masks: &[u128]) -> bool {
    // the image of the kernel in mask space is a subspace; enumerate its basis
    let mut basis: Vec<u128> = Vec::new();
    for v in kernel {
        let mut m = mask_of(v, masks) & t.interest;
        for &b in &basis {
            m = m.min(m ^ b);
        }
        if m != 0 {
            basis.push(m);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    match t.required {
        None => !basis.is_empty(),
        Some(r) => {
            let mut m = r & t.interest;
            for &b in &basis {
                m = m.min(m ^ b);
            }
            m == 0
        }
    }
}

/// Walks all 2^k kernel elements in Gray-code order.
pub fn gray_enumeration(kernel: &[BitVector], masks: &[u128], targets: &[Target]) -> Vec<Weight> {
    let k = kernel.len();
    let mut best = vec![usize::MAX; targets.len()];
    let Some(first) = kernel.first() else {
        return vec![Weight::NoLogicals; targets.len()];
    };
    let words = first.words().len();
    let basis_masks: Vec<u128> = kernel.iter().map(|v| mask_of(v, masks)).collect();
    let mut cur = vec![0u64; words];
    let mut cur_mask = 0u128;
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        for (c, w) in cur.iter_mut().zip(kernel[bit].words()) {
            *c ^= w;
        }
        cur_mask ^= basis_masks[bit];
        let mut weight = usize::MAX;
        for (t, b) in targets.iter().zip(best.iter_mut()) {
            if t.accepts(cur_mask) {
                if weight == usize::MAX {
                    weight = cur.iter().map(|w| w.count_ones() as usize).sum();
                }
                *b = (*b).min(weight);
            }
        }
    }
    best.into_iter()
        .map(|b| if b == usize::MAX { Weight::NoLogicals } else { Weight::Exact(b) })
        .collect()
}

/// Straight binary-counting enumeration of the kernel span; an independent
/// order used to cross-check [`gray_enumeration`].
pub fn binary_enumeration(kernel: &[BitVector], masks: &[u128], targets: &[Target]) -> Vec<Weight> {
    let mut best = vec![usize::MAX; targets.len()];
    let Some(first) = kernel.first() else {
        return vec![Weight::NoLogicals; targets.len()];
    };
    for combo in 1u64..(1u64 << kernel.len()) {
        let mut v = BitVector::zeros(first.len());
        for (i, b) in kernel.iter().enumerate() {
            if combo >> i & 1 == 1 {
                v.xor_with(b);
            }
        }
        let m = mask_of(&v, masks);
        for (t, b) in targets.iter().zip(best.iter_mut()) {
            if t.accepts(m) {
                *b = (*b).min(v.weight());
            }
        }
    }
    best.into_iter()
        .map(|b| if b == usize::MAX { Weight::NoLogicals } else { Weight::Exact(b) })
        .collect()
}

struct WeightSearch<'a> {
    columns: Vec<Vec<u64>>,
    masks: &'a [u128],
    by_syndrome: HashMap<Vec<u64>, Vec<usize>>,
    targets: &'a [Target],
    open: Vec<bool>,
    found: Vec<bool>,
    visited: u64,
    budget: u64,
}

impl WeightSearch<'_> {
    /// Chooses `left` more coordinates after `start`; the final coordinate is
    /// looked up by syndrome instead of enumerated.
    fn go(&mut self, start: usize, left: usize, syn: &mut Vec<u64>, mask: u128) -> bool {
        self.visited += 1;
        if self.visited > self.budget {
            return false;
        }
        if left == 1 {
            if let Some(cands) = self.by_syndrome.get(syn.as_slice()) {
                for &c in cands.iter().filter(|&&c| c >= start) {
                    let m = mask ^ self.masks[c];
                    for (i, t) in self.targets.iter().enumerate() {
                        if self.open[i] && t.accepts(m) {
                            self.found[i] = true;
                        }
                    }
                }
            }
            return true;
        }
        let n = self.columns.len();
        for c in start..n + 1 - left {
            for (s, w) in syn.iter_mut().zip(&self.columns[c]) {
                *s ^= w;
            }
            let ok = self.go(c + 1, left - 1, syn, mask ^ self.masks[c]);
            for (s, w) in syn.iter_mut().zip(&self.columns[c]) {
                *s ^= w;
            }
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Tries supports of weight 1, 2, … in order. Returns exact weights for the
/// targets found and, when the budget runs out, certified lower bounds.
fn weight_search(
    check: &SparseBitMatrix,
    masks: &[u128],
    targets: &[Target],
    possible: &[bool],
    budget: u64,
) -> (Vec<Weight>, bool) {
    let n = check.cols();
    let words = check.rows().div_ceil(64).max(1);
    let columns: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut w = vec![0u64; words];
            for &r in check.column(j) {
                w[r as usize / 64] ^= 1 << (r % 64);
            }
            w
        })
        .collect();
    let mut by_syndrome: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for (j, c) in columns.iter().enumerate() {
        by_syndrome.entry(c.clone()).or_default().push(j);
    }
    let mut result: Vec<Option<Weight>> = possible.iter().map(|&p| (!p).then_some(Weight::NoLogicals)).collect();
    let mut search = WeightSearch {
        columns,
        masks,
        by_syndrome,
        targets,
        open: result.iter().map(Option::is_none).collect(),
        found: vec![false; targets.len()],
        visited: 0,
        budget,
    };
    for w in 1..=n {
        if search.open.iter().all(|o| !o) {
            break;
        }
        let mut syn = vec![0u64; words];
        let complete = search.go(0, w, &mut syn, 0);
        for i in 0..targets.len() {
            // a hit at w is exact even in an unfinished pass: all lighter supports were covered
            if search.open[i] && search.found[i] {
                result[i] = Some(Weight::Exact(w));
                search.open[i] = false;
            }
        }
        if !complete {
            let settled = search.open.iter().all(|o| !o);
            let out = result
                .into_iter()
                .map(|r| r.unwrap_or(Weight::Bounds { lower: w, upper: None }))
                .collect();
            return (out, settled);
        }
    }
    let out = result.into_iter().map(|r| r.unwrap_or(Weight::NoLogicals)).collect();
    (out, true)
}

/// Upper bounds from random information sets: the kernel basis is brought to
/// reduced echelon form under a random column order, and every basis row and
/// pairwise row sum is tested.
fn random_information_sets(
    kernel: &[BitVector],
    masks: &[u128],
    targets: &[Target],
    draws: usize,
    seed: u64,
) -> Vec<Option<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; targets.len()];
    let Some(first) = kernel.first() else {
        return best;
    };
    let n = first.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let record = |v: &BitVector, best: &mut Vec<Option<usize>>| {
        let m = mask_of(v, masks);
        let w = v.weight();
        for (t, b) in targets.iter().zip(best.iter_mut()) {
            if t.accepts(m) && b.is_none_or(|x| w < x) {
                *b = Some(w);
            }
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..draws {
        perm.shuffle(&mut rng);
        let rows: Vec<BitVector> = kernel
            .iter()
            .map(|v| BitVector::from_indices(n, v.iter_ones().map(|i| perm[i])))
            .collect();
        let Ok(mut m) = BitMatrix::from_rows(n, &rows) else {
            break;
        };
        m.rref();
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let reduced: Vec<BitVector> = (0..m.rows())
            .map(|r| BitVector::from_indices(n, m.row(r).iter_ones().map(|i| inverse[i])))
            .collect();
        for (i, a) in reduced.iter().enumerate() {
            record(a, &mut best);
            for b in &reduced[i + 1..] {
                record(&(a ^ b), &mut best);
            }
        }
    }
    best
}
