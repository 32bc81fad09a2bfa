//! Complex descriptions (`torus:3*circle:4`), Betti lists and parameter sets.

use std::path::Path;

use crate::code::{css_from_complex, CssCode};
use crate::complex::io::read_complex;
use crate::complex::SimplicialComplex;
use crate::homology::{all_bases, HomologyBasis};
use crate::modelsearch::ParameterSet;
use crate::product::kunneth_bases_on;

use super::{failed, usage, CliError};

/// A complex together with the factors it was built from.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub complex: SimplicialComplex,
    /// One entry per `*`-separated term.
    pub factors: Vec<SimplicialComplex>,
}

impl Loaded {
    /// Normalized bases at degrees `0..=max_degree`: Künneth bases for
    /// products of two or more factors, reduction bases otherwise.
    pub fn bases(&self, max_degree: usize) -> Result<Vec<HomologyBasis>, CliError> {
        let max_degree = max_degree.min(self.complex.dim());
        if self.factors.len() < 2 {
            let cc = self.complex.chain_complex().map_err(failed)?;
            let mut b = all_bases(&cc).map_err(failed)?;
            b.truncate(max_degree + 1);
            return Ok(b);
        }
        let fb: Vec<Vec<HomologyBasis>> = self
            .factors
            .iter()
            .map(|f| f.chain_complex().map_err(failed).and_then(|cc| all_bases(&cc).map_err(failed)))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&SimplicialComplex> = self.factors.iter().collect();
        let brefs: Vec<&[HomologyBasis]> = fb.iter().map(Vec::as_slice).collect();
        let labelled = kunneth_bases_on(&self.complex, &refs, &brefs, max_degree).map_err(failed)?;
        Ok(labelled.into_iter().map(|l| l.basis).collect())
    }

    /// CSS code at degree `q` using [`Loaded::bases`].
    pub fn code(&self, q: usize) -> Result<CssCode, CliError> {
        let cc = self.complex.chain_complex().map_err(failed)?;
        let code = css_from_complex(&cc, q).map_err(usage)?;
        if self.factors.len() < 2 {
            return Ok(code);
        }
        let basis = self.bases(q)?.swap_remove(q);
        code.with_logical_basis(basis).map_err(failed)
    }
}

fn number(text: &str, what: &str) -> Result<usize, CliError> {
    text.parse().map_err(|_| usage(format!("bad {what} `{text}`")))
}

fn factor(term: &str) -> Result<SimplicialComplex, CliError> {
    let parts: Vec<&str> = term.split(':').collect();
    let sc = match parts.as_slice() {
        ["point"] => SimplicialComplex::point(),
        ["circle", l] => SimplicialComplex::circle(number(l, "size")?).map_err(usage)?,
        ["torus", l] => SimplicialComplex::torus(number(l, "size")?).map_err(usage)?,
        ["power", l, n] => SimplicialComplex::circle_power(number(l, "size")?, number(n, "power")?).map_err(usage)?,
        ["csum", l, m] => {
            let a = SimplicialComplex::torus(number(l, "size")?).map_err(usage)?;
            let b = SimplicialComplex::torus(number(m, "size")?).map_err(usage)?;
            a.connected_sum(0, &b, 0).map_err(usage)?
        }
        ["file", ..] => read_path(&term["file:".len()..])?,
        _ if Path::new(term).exists() => read_path(term)?,
        _ => return Err(usage(format!("unknown complex `{term}`"))),
    };
    Ok(sc)
}

fn read_path(path: &str) -> Result<SimplicialComplex, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    read_complex(&text).map_err(|e| usage(format!("{path}: {e}")))
}

/// The `*`-separated terms of a complex description.
pub fn parse_factors(text: &str) -> Result<Vec<SimplicialComplex>, CliError> {
    text.split('*').map(|t| factor(t.trim())).collect()
}

pub fn parse_complex(text: &str) -> Result<Loaded, CliError> {
    let factors = parse_factors(text)?;
    let mut complex = factors[0].clone();
    for f in &factors[1..] {
        complex = complex.ordered_product(f).map_err(usage)?;
    }
    Ok(Loaded { complex, factors })
}

/// `1,2,1;1,1` → one Betti list per factor.
pub fn parse_betti(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';')
        .map(|f| f.split(',').map(|b| number(b.trim(), "Betti number")).collect())
        .collect()
}

/// `p0,s0;p1,s1;p2,s2`.
pub fn parse_parameter_set(text: &str) -> Result<ParameterSet, CliError> {
    let pairs: Vec<Vec<usize>> = parse_betti(text)?;
    if pairs.len() != 3 || pairs.iter().any(|p| p.len() != 2) {
        return Err(usage("expected `p0,s0;p1,s1;p2,s2`"));
    }
    ParameterSet::new([(pairs[0][0], pairs[0][1]), (pairs[1][0], pairs[1][1]), (pairs[2][0], pairs[2][1])])
        .map_err(usage)
}
