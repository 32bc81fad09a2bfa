//! CSS codes from chain complexes, distances and subsystem encodings.

pub mod distance;

use std::fmt::Write as _;

use crate::complex::ChainComplex;
use crate::gf2::{coords, BitVector, Gf2Error, SparseBitMatrix};
use crate::homology::{homology_basis, normalize_pairing, HomologyBasis, HomologyError};

pub use distance::{Method, SearchOptions, Target, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("degree {q} outside 0..={n}")]
    DegreeOutOfRange { q: usize, n: usize },
    #[error("logical index {index} out of range for {k} logical qubits")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("invalid logical basis: {0}")]
    InvalidBasis(String),
    #[error("{0} logical qubits exceed the 128 supported by distance search")]
    TooManyLogicals(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Qubits on q-cells; X checks are the rows of ∂_q, Z checks the rows of ∂_{q+1}ᵀ.
///
/// Z-type logicals are cycles (`ker H_X`) and X-type logicals are cocycles
/// (`ker H_Z`). `logical` holds one representative pair per logical qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub degree: usize,
    pub hx: SparseBitMatrix,
    /// Stored as ∂_{q+1} (one column per Z check).
    z_checks_t: SparseBitMatrix,
    pub logical: HomologyBasis,
    pub subsystem_mask: Option<Vec<usize>>,
}

/// Chooses and normalizes a homology basis, then wires the parity checks.
pub fn css_from_complex(cc: &ChainComplex, q: usize) -> Result<CssCode, CodeError> {
    let n = cc.top_dim();
    if q > n {
        return Err(CodeError::DegreeOutOfRange { q, n });
    }
    let logical = homology_basis(cc, q)?;
    Ok(CssCode {
        degree: q,
        hx: cc.boundary(q).clone(),
        z_checks_t: cc.boundary(q + 1).clone(),
        logical,
        subsystem_mask: None,
    })
}

impl CssCode {
    /// Same checks with a caller-supplied basis, validated and normalized.
    pub fn with_logical_basis(mut self, basis: HomologyBasis) -> Result<CssCode, CodeError> {
        let n = self.n_qubits();
        if basis.cycles.len() != self.logical.len() {
            return Err(CodeError::InvalidBasis(format!(
                "{} classes given, the code has {}",
                basis.cycles.len(),
                self.logical.len()
            )));
        }
        for c in &basis.cycles {
            if c.len() != n || !self.hx.mul_vec(c).is_zero() {
                return Err(CodeError::InvalidBasis("cycle not in ker H_X".into()));
            }
        }
        for z in &basis.cocycles {
            if z.len() != n || !self.z_checks_t.transpose_mul_vec(z).is_zero() {
                return Err(CodeError::InvalidBasis("cocycle not in ker H_Z".into()));
            }
        }
        self.logical = normalize_pairing(&basis)?;
        self.subsystem_mask = None;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.logical.len()
    }

    /// Z checks as a sparse matrix (rows are checks).
    pub fn hz(&self) -> SparseBitMatrix {
        self.z_checks_t.transpose()
    }

    /// Z check matrix transposed, i.e. ∂_{q+1}.
    pub fn hz_transpose(&self) -> &SparseBitMatrix {
        &self.z_checks_t
    }

    /// Largest check weight over both check types.
    pub fn max_stabilizer_weight(&self) -> usize {
        self.hx.max_row_weight().max(self.z_checks_t.max_column_weight())
    }

    /// H_X · H_Zᵀ = 0.
    pub fn commutes(&self) -> bool {
        self.hx.mul(&self.z_checks_t).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Logical indices that count toward the distance.
    pub fn kept(&self) -> Vec<usize> {
        self.subsystem_mask.clone().unwrap_or_else(|| (0..self.k()).collect())
    }

    fn kept_mask(&self) -> u128 {
        self.kept().iter().fold(0, |m, &i| m | 1 << i)
    }
}

/// Marks the listed logical qubits as kept; the rest become gauge qubits.
pub fn subsystem_select(code: &CssCode, keep: &[usize]) -> Result<CssCode, CodeError> {
    if let Some(&index) = keep.iter().find(|&&i| i >= code.k()) {
        return Err(CodeError::IndexOutOfRange { index, k: code.k() });
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut out = code.clone();
    if !out.logical.normalized {
        out.logical = normalize_pairing(&out.logical)?;
    }
    out.subsystem_mask = Some(keep);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideReport {
    pub weight: Weight,
    pub method: Method,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub dz: SideReport,
    pub dx: SideReport,
    pub seed: u64,
    /// Per kept logical qubit: minimum Z-type and X-type weight in its class,
    /// with the other kept classes fixed to zero and gauge classes free.
    pub per_class: Vec<(usize, Weight, Weight)>,
}

impl DistanceReport {
    pub fn d(&self) -> Weight {
        self.dz.weight.min(self.dx.weight)
    }

    /// Weakest method used on either side.
    pub fn method(&self) -> Method {
        let rank = |m: Method| match m {
            Method::ExhaustiveKernel => 0,
            Method::ExhaustiveWeight => 1,
            Method::Randomized => 2,
        };
        if rank(self.dz.method) >= rank(self.dx.method) {
            self.dz.method
        } else {
            self.dx.method
        }
    }
}

fn check_logicals(code: &CssCode) -> Result<(), CodeError> {
    if code.k() > 128 {
        return Err(CodeError::TooManyLogicals(code.k()));
    }
    Ok(())
}

fn side_targets(code: &CssCode, with_table: bool) -> Vec<Target> {
    let kept = code.kept_mask();
    let mut t = vec![Target::any_of(kept)];
    if with_table {
        t.extend(code.kept().iter().map(|&i| Target::exactly(kept, 1 << i)));
    }
    t
}

fn run(code: &CssCode, opts: &SearchOptions, with_table: bool) -> Result<DistanceReport, CodeError> {
    check_logicals(code)?;
    let targets = side_targets(code, with_table);
    // Z-type: cycles, detected by pairing with cocycles
    let z = distance::min_weights(&code.hx, &code.logical.cocycles, &targets, opts);
    // X-type: cocycles in ker ∂_{q+1}ᵀ, detected by pairing with cycles
    let hz = code.hz();
    let x = distance::min_weights(&hz, &code.logical.cycles, &targets, opts);
    let per_class = if with_table {
        code.kept()
            .iter()
            .enumerate()
            .map(|(n, &i)| (i, z.weights[n + 1], x.weights[n + 1]))
            .collect()
    } else {
        Vec::new()
    };
    Ok(DistanceReport {
        dz: SideReport {
            weight: z.weights[0],
            method: z.method,
            kernel_dim: z.kernel_dim,
        },
        dx: SideReport {
            weight: x.weights[0],
            method: x.method,
            kernel_dim: x.kernel_dim,
        },
        seed: opts.seed,
        per_class,
    })
}

/// d_Z, d_X and the minimum, honouring the subsystem mask.
pub fn distance(code: &CssCode, opts: &SearchOptions) -> Result<DistanceReport, CodeError> {
    run(code, opts, false)
}

/// Distance plus the per-class table.
pub fn distance_with_table(code: &CssCode, opts: &SearchOptions) -> Result<DistanceReport, CodeError> {
    run(code, opts, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametersReport {
    pub n: usize,
    pub k: usize,
    pub w: usize,
    pub kept: usize,
    pub distance: DistanceReport,
}

pub fn parameters_report(code: &CssCode, opts: &SearchOptions) -> Result<ParametersReport, CodeError> {
    Ok(ParametersReport {
        n: code.n_qubits(),
        k: code.k(),
        w: code.max_stabilizer_weight(),
        kept: code.kept().len(),
        distance: distance_with_table(code, opts)?,
    })
}

impl ParametersReport {
    /// `key=value` lines followed by the per-class table.
    pub fn render(&self) -> String {
        let d = &self.distance;
        let mut out = String::new();
        let _ = writeln!(out, "N={}", self.n);
        let _ = writeln!(out, "K={}", self.k);
        if self.kept != self.k {
            let _ = writeln!(out, "kept={}", self.kept);
        }
        let _ = writeln!(out, "dZ={}", d.dz.weight);
        let _ = writeln!(out, "dX={}", d.dx.weight);
        let _ = writeln!(out, "d={}", d.d());
        let _ = writeln!(out, "w={}", self.w);
        let _ = writeln!(out, "method={}", d.method().tag());
        let _ = writeln!(out, "methodZ={}", d.dz.method.tag());
        let _ = writeln!(out, "methodX={}", d.dx.method.tag());
        let _ = writeln!(out, "seed={}", d.seed);
        for (i, z, x) in &d.per_class {
            let _ = writeln!(out, "class {i} dZ={z} dX={x}");
        }
        out
    }
}

/// Code export: both check matrices in coordinate form plus the basis.
pub fn write_code(code: &CssCode) -> String {
    let mut out = format!("code degree {}\nhx\n{}", code.degree, coords::write(&code.hx));
    out.push_str(&format!("hz\n{}", coords::write(&code.hz())));
    out.push_str("basis\n");
    out.push_str(&code.logical.export());
    if let Some(m) = &code.subsystem_mask {
        let keep: Vec<String> = m.iter().map(usize::to_string).collect();
        out.push_str(&format!("keep {}\n", keep.join(" ")));
    }
    out
}

pub fn read_code(text: &str) -> Result<CssCode, CodeError> {
    let bad = |m: &str| CodeError::Parse(m.to_string());
    let mut section = "";
    let (mut degree, mut hx, mut hz, mut basis) = (None, String::new(), String::new(), String::new());
    let mut keep = None;
    for line in text.lines() {
        let t = line.trim();
        if let Some(d) = t.strip_prefix("code degree ") {
            degree = Some(d.parse::<usize>().map_err(|_| bad("bad degree"))?);
            continue;
        }
        if let Some(k) = t.strip_prefix("keep") {
            keep = Some(
                k.split_whitespace()
                    .map(str::parse::<usize>)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad keep list"))?,
            );
            continue;
        }
        match t {
            "hx" | "hz" | "basis" => section = t,
            _ => {
                let target = match section {
                    "hx" => &mut hx,
                    "hz" => &mut hz,
                    "basis" => &mut basis,
                    _ => return Err(bad("content before the first section")),
                };
                target.push_str(line);
                target.push('\n');
            }
        }
    }
    let hx = coords::read(&hx)?;
    let hz_t = coords::read(&hz)?.transpose();
    let logical = HomologyBasis::import(&basis, hx.cols())?;
    let code = CssCode {
        degree: degree.ok_or_else(|| bad("missing degree"))?,
        hx,
        z_checks_t: hz_t,
        logical,
        subsystem_mask: None,
    };
    if !code.commutes() {
        return Err(bad("checks do not commute"));
    }
    match keep {
        Some(k) => subsystem_select(&code, &k),
        None => Ok(code),
    }
}

/// Z-type vector detected as logical by the kept cocycles.
pub fn is_nontrivial_z(code: &CssCode, x: &BitVector) -> bool {
    code.hx.mul_vec(x).is_zero() && code.kept().iter().any(|&i| x.dot(&code.logical.cocycles[i]))
}
