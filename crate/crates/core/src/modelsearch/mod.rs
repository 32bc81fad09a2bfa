//! Dimension bookkeeping for triple products of manifolds with two large
//! Betti degrees `p < s`, and the search for parameter sets whose degrees
//! `q` and `2q` avoid every combination that may carry a short (co)cycle.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid parameter set: {0}")]
    InvalidParameterSet(String),
}

/// Which reading of the single-large-term set is used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Small terms from factors `i+1` and `i+2`, and `s ≥ p + 3`.
    Displayed,
    /// Small terms from factors `i` and `i+2`, and `s ≥ p + 4`. Reproduces the
    /// tabulated gap list and minimal dimensions.
    #[default]
    Tabulated,
}

impl Convention {
    pub fn min_gap(self) -> usize {
        match self {
            Convention::Displayed => 3,
            Convention::Tabulated => 4,
        }
    }

    /// Factor offsets supplying `x` and `y` for the large term of factor `i`.
    fn offsets(self) -> [usize; 2] {
        match self {
            Convention::Displayed => [1, 2],
            Convention::Tabulated => [0, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Displayed => "displayed",
            Convention::Tabulated => "tabulated",
        }
    }
}

/// Betti profile of one factor: nonzero only at `0, 1, 2, p, s, r−2, r−1, r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FhModel {
    pub p: usize,
    pub s: usize,
}

impl FhModel {
    pub fn new(p: usize, s: usize) -> Result<Self, ModelError> {
        if p < 4 {
            return Err(ModelError::InvalidParameterSet(format!("p = {p} < 4")));
        }
        if s < p + 3 {
            return Err(ModelError::InvalidParameterSet(format!("s = {s} < p + 3 = {}", p + 3)));
        }
        Ok(Self { p, s })
    }

    pub fn r(&self) -> usize {
        self.p + self.s
    }

    /// Degrees whose classes may be short: `0, 1, 2, r−2, r−1, r`.
    pub fn small_degrees(&self) -> [usize; 6] {
        let r = self.r();
        [0, 1, 2, r - 2, r - 1, r]
    }

    /// Degrees where the Betti number may be nonzero.
    pub fn betti_support(&self) -> BTreeSet<usize> {
        let mut d: BTreeSet<usize> = self.small_degrees().into_iter().collect();
        d.insert(self.p);
        d.insert(self.s);
        d
    }
}

/// Three factors linked by `p_i + s_{i+1} = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterSet {
    pub factors: [FhModel; 3],
}

impl ParameterSet {
    pub fn new(pairs: [(usize, usize); 3]) -> Result<Self, ModelError> {
        let factors = [
            FhModel::new(pairs[0].0, pairs[0].1)?,
            FhModel::new(pairs[1].0, pairs[1].1)?,
            FhModel::new(pairs[2].0, pairs[2].1)?,
        ];
        let q = factors[0].p + factors[1].s;
        for i in 0..3 {
            let got = factors[i].p + factors[(i + 1) % 3].s;
            if got != q {
                return Err(ModelError::InvalidParameterSet(format!(
                    "p{i} + s{} = {got}, expected {q}",
                    (i + 1) % 3
                )));
            }
        }
        Ok(Self { factors })
    }

    pub fn q(&self) -> usize {
        self.factors[0].p + self.factors[1].s
    }

    /// Total dimension `Σ r_i = 3q`.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(FhModel::r).sum()
    }

    pub fn pairs(&self) -> [(usize, usize); 3] {
        self.factors.map(|f| (f.p, f.s))
    }

    /// Rotation starting at the factor with the lexicographically smallest pairs.
    pub fn canonical(&self) -> ParameterSet {
        (0..3)
            .map(|k| ParameterSet {
                factors: std::array::from_fn(|i| self.factors[(i + k) % 3]),
            })
            .min()
            .expect("three rotations")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.pairs();
        write!(f, "{} {} {} {} {} {} {}", self.q(), a.0, a.1, b.0, b.1, c.0, c.1)
    }
}

/// `B₁ ∪ B₂`: one large term plus two small ones, or three small ones.
pub fn bad_dimensions(set: &ParameterSet, conv: Convention) -> BTreeSet<usize> {
    let small = set.factors.map(|f| f.small_degrees());
    let mut out = BTreeSet::new();
    for &x in &small[0] {
        for &y in &small[1] {
            for &z in &small[2] {
                out.insert(x + y + z);
            }
        }
    }
    let [ox, oy] = conv.offsets();
    for (i, f) in set.factors.iter().enumerate() {
        for large in [f.p, f.s] {
            for &x in &small[(i + ox) % 3] {
                for &y in &small[(i + oy) % 3] {
                    out.insert(large + x + y);
                }
            }
        }
    }
    out
}

/// Degrees in `0..=dim` missing from the bad set.
pub fn gaps(set: &ParameterSet, conv: Convention) -> Vec<usize> {
    let bad = bad_dimensions(set, conv);
    (0..=set.dim()).filter(|d| !bad.contains(d)).collect()
}

/// Membership in `B₁ ∪ B₂` by solving for the last summand.
pub fn is_bad(set: &ParameterSet, conv: Convention, d: usize) -> bool {
    let in_small = |f: &FhModel, v: isize| {
        let r = f.r() as isize;
        (0..=2).contains(&v) || (r - 2..=r).contains(&v)
    };
    let [f0, f1, f2] = &set.factors;
    let d = d as isize;
    let smalls = |f: &FhModel| f.small_degrees().map(|v| v as isize);
    if smalls(f0)
        .iter()
        .any(|&x| smalls(f1).iter().any(|&y| in_small(f2, d - x - y)))
    {
        return true;
    }
    let [ox, oy] = conv.offsets();
    (0..3).any(|i| {
        let f = &set.factors[i];
        let (fx, fy) = (&set.factors[(i + ox) % 3], &set.factors[(i + oy) % 3]);
        [f.p, f.s]
            .iter()
            .any(|&large| smalls(fx).iter().any(|&x| in_small(fy, d - large as isize - x)))
    })
}

/// Invariants hold under the convention's gap and `q, 2q` are not bad.
pub fn valid(set: &ParameterSet, conv: Convention) -> bool {
    if set.factors.iter().any(|f| f.s < f.p + conv.min_gap()) {
        return false;
    }
    let bad = bad_dimensions(set, conv);
    !bad.contains(&set.q()) && !bad.contains(&(2 * set.q()))
}

/// All valid parameter sets of dimension `q`, every rotation included, in
/// lexicographic order of `(p0, p1, p2)`.
pub fn valid_sets(q: usize, conv: Convention) -> Vec<ParameterSet> {
    let mut out = Vec::new();
    if q < 11 {
        return out;
    }
    let range = 4..=q - 7;
    for p0 in range.clone() {
        for p1 in range.clone() {
            for p2 in range.clone() {
                let pairs = [(p0, q - p2), (p1, q - p0), (p2, q - p1)];
                let Ok(set) = ParameterSet::new(pairs) else {
                    continue;
                };
                if valid(&set, conv) {
                    out.push(set);
                }
            }
        }
    }
    out
}

/// `(q, valid sets)` for every `q` in `11..=q_max`.
pub fn search_min_q(q_max: usize, conv: Convention) -> Vec<(usize, Vec<ParameterSet>)> {
    (11..=q_max).map(|q| (q, valid_sets(q, conv))).collect()
}

/// Smallest `q ≤ q_max` with a valid set.
pub fn min_valid_q(q_max: usize, conv: Convention) -> Option<usize> {
    search_min_q(q_max, conv)
        .into_iter()
        .find(|(_, v)| !v.is_empty())
        .map(|(q, _)| q)
}

/// Growth exponents in the size parameter `n`: systoles at `q` and `2q` grow
/// as `n²`, the volume as `n³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystolicRatioModel {
    pub n: u64,
    pub systole_exponent: u32,
    pub volume_exponent: u32,
    /// Exponent of `n` in `sys_q · sys_2q / vol`.
    pub ratio_exponent: i64,
    /// The same growth measured against the volume.
    pub volume_ratio_exponent: Ratio<i64>,
    pub ratio_at_n: Ratio<u128>,
}

pub fn systolic_ratio_model(set: &ParameterSet, conv: Convention, n: u64) -> Result<SystolicRatioModel, ModelError> {
    if !valid(set, conv) {
        return Err(ModelError::InvalidParameterSet(format!("{set} is not valid")));
    }
    if n == 0 {
        return Err(ModelError::InvalidParameterSet("n must be positive".into()));
    }
    let (sys, vol) = (2u32, 3u32);
    let ratio_exponent = 2 * sys as i64 - vol as i64;
    let nn = n as u128;
    Ok(SystolicRatioModel {
        n,
        systole_exponent: sys,
        volume_exponent: vol,
        ratio_exponent,
        volume_ratio_exponent: Ratio::new(ratio_exponent, vol as i64),
        ratio_at_n: Ratio::new(nn.pow(sys) * nn.pow(sys), nn.pow(vol)),
    })
}
