//! Triple products of simplicial complexes with Künneth-labelled bases,
//! class families and logical CCZ counting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::complex::simplicial::staircase_paths;
use crate::complex::{ComplexError, SimplicialComplex};
use crate::cupgate::{CupError, FaceTable, LogicalCczTensor};
use crate::gf2::BitVector;
use crate::homology::{normalize_pairing, HomologyBasis, HomologyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("degree {q} outside 0..={n}")]
    DegreeOutOfRange { q: usize, n: usize },
    #[error("tensor dimensions {found:?} do not match {expected} labels")]
    LabelMismatch { expected: usize, found: [usize; 3] },
    #[error("need one basis per degree for factor {0}")]
    MissingDegrees(usize),
    #[error("product basis invalid: {0}")]
    InvalidBasis(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Cup(#[from] CupError),
}

/// `a × b × c` by two staircase products.
pub fn triple_product(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    c: &SimplicialComplex,
) -> Result<SimplicialComplex, ComplexError> {
    a.ordered_product(b)?.ordered_product(c)
}

/// One factor class per constituent: `degrees[f]` and basis index `indices[f]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KunnethLabel {
    pub degrees: Vec<usize>,
    pub indices: Vec<usize>,
}

impl KunnethLabel {
    fn extend(&self, degree: usize, index: usize) -> KunnethLabel {
        let mut l = self.clone();
        l.degrees.push(degree);
        l.indices.push(index);
        l
    }
}

/// Labels of the product classes at degree `q`, in basis order.
///
/// `betti[f][d]` is the Betti number of factor `f` at degree `d`.
pub fn labels_at(betti: &[Vec<usize>], q: usize) -> Vec<KunnethLabel> {
    let Some((last, rest)) = betti.split_last() else {
        return if q == 0 {
            vec![KunnethLabel {
                degrees: vec![],
                indices: vec![],
            }]
        } else {
            vec![]
        };
    };
    let mut out = Vec::new();
    for l in 0..=q {
        let m = q - l;
        let count = last.get(m).copied().unwrap_or(0);
        if count == 0 {
            continue;
        }
        for left in labels_at(rest, l) {
            for j in 0..count {
                out.push(left.extend(m, j));
            }
        }
    }
    out
}

/// Product basis at one degree with the label of every class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledBasis {
    pub basis: HomologyBasis,
    pub labels: Vec<KunnethLabel>,
}

/// Projection data for `left × right`, where product vertex `u·|V(right)| + w`
/// lies over `u` and `w`.
struct Projection<'a> {
    left: &'a SimplicialComplex,
    right: &'a SimplicialComplex,
    product: &'a SimplicialComplex,
}

impl Projection<'_> {
    fn nb(&self) -> u32 {
        self.right.num_vertices() as u32
    }

    /// Index of the image of `verts` in `target`, `None` if the image is degenerate.
    fn image(target: &SimplicialComplex, verts: impl Iterator<Item = u32>, len: usize) -> Option<usize> {
        let mut img = Vec::with_capacity(len);
        for v in verts {
            if img.last() == Some(&v) {
                return None;
            }
            img.push(v);
        }
        target.index_of(&img)
    }

    /// `π_left^* a ∪ π_right^* b` on the product.
    fn cross_cocycle(&self, l: usize, a: &BitVector, m: usize, b: &BitVector, front: &[Option<u32>], back: &[Option<u32>]) -> BitVector {
        debug_assert_eq!(a.len(), self.left.count(l));
        debug_assert_eq!(b.len(), self.right.count(m));
        let len = self.product.count(l + m);
        let mut out = BitVector::zeros(len);
        for s in 0..len {
            if let (Some(f), Some(k)) = (front[s], back[s]) {
                if a.get(f as usize) && b.get(k as usize) {
                    out.set(s, true);
                }
            }
        }
        out
    }

    /// For every product simplex of degree `l + m`: the left image of its
    /// front `l`-face and the right image of its back `m`-face.
    fn split_faces(&self, l: usize, m: usize) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
        let nb = self.nb();
        let list = self.product.simplices(l + m);
        let mut front = Vec::with_capacity(list.len());
        let mut back = Vec::with_capacity(list.len());
        for s in list.iter() {
            front.push(Self::image(self.left, s[..=l].iter().map(|v| v / nb), l + 1).map(|i| i as u32));
            back.push(Self::image(self.right, s[l..].iter().map(|v| v % nb), m + 1).map(|i| i as u32));
        }
        (front, back)
    }

    /// Shuffle product `x × y`: every staircase simplex of every pair of
    /// simplices in the two supports.
    fn cross_cycle(&self, l: usize, x: &BitVector, m: usize, y: &BitVector) -> BitVector {
        let nb = self.nb();
        let mut out = BitVector::zeros(self.product.count(l + m));
        let mut path = Vec::new();
        let mut verts = Vec::with_capacity(l + m + 1);
        for i in x.iter_ones() {
            let a = self.left.simplex(l, i);
            for j in y.iter_ones() {
                let b = self.right.simplex(m, j);
                staircase_paths(l, m, &mut path, &mut |steps: &[bool]| {
                    let (mut p, mut r) = (0, 0);
                    verts.clear();
                    verts.push(a[0] * nb + b[0]);
                    for &right in steps {
                        if right {
                            p += 1
                        } else {
                            r += 1
                        }
                        verts.push(a[p] * nb + b[r]);
                    }
                    let k = self.product.index_of(&verts).expect("staircase simplex present");
                    out.flip(k);
                });
            }
        }
        out
    }
}

fn check_bases(f: usize, sc: &SimplicialComplex, bases: &[HomologyBasis], top: usize) -> Result<(), ProductError> {
    if bases.len() < top.min(sc.dim()) + 1 || bases.iter().enumerate().any(|(d, b)| b.degree != d) {
        return Err(ProductError::MissingDegrees(f));
    }
    Ok(())
}

/// Product complex of the factors (left to right) and its Künneth bases at
/// degrees `0..=max_degree`.
///
/// Cocycles are cross products of pulled-back factor cocycles, cycles are
/// shuffle products of factor cycles. With normalized factor bases the
/// pairing comes out as the identity.
pub fn kunneth_bases(
    factors: &[&SimplicialComplex],
    factor_bases: &[&[HomologyBasis]],
    max_degree: usize,
) -> Result<(SimplicialComplex, Vec<LabelledBasis>), ProductError> {
    let Some((first, rest)) = factors.split_first() else {
        return Ok((SimplicialComplex::point(), Vec::new()));
    };
    let mut product = (*first).clone();
    for f in rest {
        product = product.ordered_product(f)?;
    }
    let bases = kunneth_bases_on(&product, factors, factor_bases, max_degree)?;
    Ok((product, bases))
}

/// As [`kunneth_bases`] on an already built product of the factors.
pub fn kunneth_bases_on(
    product: &SimplicialComplex,
    factors: &[&SimplicialComplex],
    factor_bases: &[&[HomologyBasis]],
    max_degree: usize,
) -> Result<Vec<LabelledBasis>, ProductError> {
    let Some((first, rest)) = factors.split_first() else {
        return Ok(Vec::new());
    };
    if factor_bases.len() != factors.len() {
        return Err(ProductError::MissingDegrees(factor_bases.len()));
    }
    for (f, (sc, b)) in factors.iter().zip(factor_bases).enumerate() {
        check_bases(f, sc, b, max_degree)?;
    }
    let vertices: usize = factors.iter().map(|f| f.num_vertices()).product();
    let dim: usize = factors.iter().map(|f| f.dim()).sum();
    if product.num_vertices() != vertices || product.dim() != dim {
        return Err(ProductError::InvalidBasis("complex is not the product of the factors".into()));
    }
    let mut current = (*first).clone();
    let mut bases: Vec<LabelledBasis> = factor_bases[0]
        .iter()
        .take(max_degree + 1)
        .map(|b| LabelledBasis {
            basis: b.clone(),
            labels: (0..b.len())
                .map(|i| KunnethLabel {
                    degrees: vec![b.degree],
                    indices: vec![i],
                })
                .collect(),
        })
        .collect();
    for (step, (right, right_bases)) in rest.iter().zip(&factor_bases[1..]).enumerate() {
        if step + 1 == rest.len() {
            bases = extend_bases(&current, &bases, right, right_bases, product, max_degree)?;
        } else {
            let built = current.ordered_product(right)?;
            bases = extend_bases(&current, &bases, right, right_bases, &built, max_degree)?;
            current = built;
        }
    }
    Ok(bases)
}

fn extend_bases(
    left: &SimplicialComplex,
    left_bases: &[LabelledBasis],
    right: &SimplicialComplex,
    right_bases: &[HomologyBasis],
    product: &SimplicialComplex,
    max_degree: usize,
) -> Result<Vec<LabelledBasis>, ProductError> {
    let proj = Projection { left, right, product };
    let top = product.dim().min(max_degree);
    let mut next = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut out = LabelledBasis {
            basis: HomologyBasis {
                degree: d,
                cycles: Vec::new(),
                cocycles: Vec::new(),
                normalized: false,
            },
            labels: Vec::new(),
        };
        for l in 0..=d.min(left.dim()) {
            let m = d - l;
            if m > right.dim() || left_bases[l].labels.is_empty() || right_bases[m].is_empty() {
                continue;
            }
            let (front, back) = proj.split_faces(l, m);
            let (lb, rb) = (&left_bases[l], &right_bases[m]);
            for (i, label) in lb.labels.iter().enumerate() {
                for j in 0..rb.len() {
                    out.basis.cocycles.push(proj.cross_cocycle(l, &lb.basis.cocycles[i], m, &rb.cocycles[j], &front, &back));
                    out.basis.cycles.push(proj.cross_cycle(l, &lb.basis.cycles[i], m, &rb.cycles[j]));
                    out.labels.push(label.extend(m, j));
                }
            }
        }
        out.basis = normalize_pairing(&out.basis)?;
        next.push(out);
    }
    Ok(next)
}

/// Checks a product basis against the product complex: cycles and cocycles
/// are closed, the pairing is the identity and the count is the Betti number
/// `betti`.
pub fn validate_basis(sc: &SimplicialComplex, b: &HomologyBasis, betti: usize) -> Result<(), ProductError> {
    let q = b.degree;
    let bad = |m: String| Err(ProductError::InvalidBasis(m));
    if b.len() != betti {
        return bad(format!("{} classes at degree {q}, Betti number {betti}", b.len()));
    }
    if q > 0 {
        let d = sc.boundary(q);
        if b.cycles.iter().any(|c| !d.mul_vec(c).is_zero()) {
            return bad("cycle with nonzero boundary".into());
        }
    }
    if q < sc.dim() {
        let d = sc.boundary(q + 1);
        if b.cocycles.iter().any(|z| !d.transpose_mul_vec(z).is_zero()) {
            return bad("cocycle with nonzero coboundary".into());
        }
    }
    let p = b.pairing()?;
    if (0..p.rows()).any(|i| p.row_weight(i) != 1 || !p.get(i, i)) {
        return bad("pairing is not the identity".into());
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
    Residual,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Alpha, Family::Beta, Family::Gamma, Family::Residual];

    pub fn name(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Gamma => "gamma",
            Family::Residual => "residual",
        }
    }

    /// Alpha: degrees `(>0, >0, 0)`; beta and gamma are the cyclic shifts
    /// `(0, >0, >0)` and `(>0, 0, >0)`. Everything else is residual.
    pub fn of(label: &KunnethLabel) -> Family {
        match *label.degrees.as_slice() {
            [a, b, 0] if a > 0 && b > 0 => Family::Alpha,
            [0, b, c] if b > 0 && c > 0 => Family::Beta,
            [a, 0, c] if a > 0 && c > 0 => Family::Gamma,
            _ => Family::Residual,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTable {
    pub degree: usize,
    pub labels: Vec<KunnethLabel>,
    pub families: Vec<Family>,
}

impl FamilyTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn members(&self, f: Family) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.families[i] == f).collect()
    }

    /// One line per class: `family degrees indices class-index`.
    pub fn write(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        for (i, (l, f)) in self.labels.iter().zip(&self.families).enumerate() {
            out.push_str(&format!("{f} {} {} {i}\n", join(&l.degrees), join(&l.indices)));
        }
        out
    }
}

/// Labels of the degree-`q` classes of a triple product grouped into families.
/// `betti[f]` lists the Betti numbers of factor `f` by degree.
pub fn kunneth_families(betti: [&[usize]; 3], q: usize) -> Result<FamilyTable, ProductError> {
    let n: usize = betti.iter().map(|b| b.len().saturating_sub(1)).sum();
    if q > n {
        return Err(ProductError::DegreeOutOfRange { q, n });
    }
    let owned: Vec<Vec<usize>> = betti.iter().map(|b| b.to_vec()).collect();
    let labels = labels_at(&owned, q);
    let families = labels.iter().map(Family::of).collect();
    Ok(FamilyTable {
        degree: q,
        labels,
        families,
    })
}

/// Per-factor evaluation of the triple cup sum on factor class representatives.
pub struct FactorEvaluator<'a> {
    factors: [&'a SimplicialComplex; 3],
    bases: [&'a [HomologyBasis]; 3],
    tables: HashMap<(usize, [usize; 3]), FaceTable>,
}

impl<'a> FactorEvaluator<'a> {
    pub fn new(factors: [&'a SimplicialComplex; 3], bases: [&'a [HomologyBasis]; 3]) -> Self {
        Self {
            factors,
            bases,
            tables: HashMap::new(),
        }
    }

    /// Product over factors of `∫ a_f ∪ b_f ∪ c_f`; a factor whose three degrees
    /// do not add up to its dimension contributes 0.
    pub fn evaluate(&mut self, a: &KunnethLabel, b: &KunnethLabel, c: &KunnethLabel) -> Result<bool, ProductError> {
        for f in 0..3 {
            let degrees = [a.degrees[f], b.degrees[f], c.degrees[f]];
            if degrees.iter().sum::<usize>() != self.factors[f].dim() {
                return Ok(false);
            }
            if !self.tables.contains_key(&(f, degrees)) {
                let t = FaceTable::new(self.factors[f], &degrees)?;
                self.tables.insert((f, degrees), t);
            }
            let t = &self.tables[&(f, degrees)];
            let z = |l: &KunnethLabel| &self.bases[f][l.degrees[f]].cocycles[l.indices[f]];
            if !t.evaluate(&[z(a), z(b), z(c)]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CczCount {
    pub family_sizes: BTreeMap<Family, usize>,
    /// Nonzero entries by the families of their three labels.
    pub by_families: BTreeMap<(Family, Family, Family), usize>,
    /// Entries with labels from alpha, beta and gamma respectively.
    pub aligned: usize,
    pub total: usize,
    /// Triples checked against the factorized evaluation.
    pub checked: usize,
    /// Triples where tensor and factorized evaluation disagree.
    pub mismatches: Vec<(usize, usize, usize)>,
}

impl CczCount {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (f, n) in &self.family_sizes {
            out.push_str(&format!("family {f} size={n}\n"));
        }
        for ((a, b, c), n) in &self.by_families {
            out.push_str(&format!("count {a} {b} {c} {n}\n"));
        }
        out.push_str(&format!(
            "aligned={}\ntotal={}\nchecked={}\nmismatches={}\n",
            self.aligned,
            self.total,
            self.checked,
            self.mismatches.len()
        ));
        out
    }
}

/// Which label triples to compare with the factorized evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossCheck {
    /// Only alpha × beta × gamma.
    Aligned,
    /// Every label triple.
    All,
}

/// Counts tensor entries by label family and compares entries with the
/// factorized evaluation.
pub fn ccz_count(
    t: &LogicalCczTensor,
    table: &FamilyTable,
    eval: &mut FactorEvaluator<'_>,
    check: CrossCheck,
) -> Result<CczCount, ProductError> {
    if t.dims.iter().any(|&d| d != table.len()) {
        return Err(ProductError::LabelMismatch {
            expected: table.len(),
            found: t.dims,
        });
    }
    let family_sizes = Family::ALL.iter().map(|&f| (f, table.members(f).len())).collect();
    let mut by_families = BTreeMap::new();
    for &(a, b, c) in &t.entries {
        *by_families
            .entry((table.families[a], table.families[b], table.families[c]))
            .or_insert(0) += 1;
    }
    let aligned = by_families
        .get(&(Family::Alpha, Family::Beta, Family::Gamma))
        .copied()
        .unwrap_or(0);
    let slots: [Vec<usize>; 3] = match check {
        CrossCheck::Aligned => [Family::Alpha, Family::Beta, Family::Gamma].map(|f| table.members(f)),
        CrossCheck::All => std::array::from_fn(|_| (0..table.len()).collect()),
    };
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for &a in &slots[0] {
        for &b in &slots[1] {
            for &c in &slots[2] {
                checked += 1;
                let f = eval.evaluate(&table.labels[a], &table.labels[b], &table.labels[c])?;
                if f != t.get(a, b, c) {
                    mismatches.push((a, b, c));
                }
            }
        }
    }
    Ok(CczCount {
        family_sizes,
        by_families,
        aligned,
        total: t.support(),
        checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests;
