//! Text formats. Complex files: a `dim n vertices V` header, then one line of
//! vertex indices per maximal simplex. Chain complexes: a `chain dims ...`
//! header followed by coordinate-format boundary matrices.

use crate::gf2::coords;

use super::{ChainComplex, ComplexError, SimplicialComplex};

pub fn write_complex(sc: &SimplicialComplex) -> String {
    let mut tops = sc.maximal_simplices();
    tops.sort();
    let mut out = format!("dim {} vertices {}\n", sc.dim(), sc.num_vertices());
    for s in tops {
        let line: Vec<String> = s.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: &str| ComplexError::Parse {
        line,
        message: message.to_string(),
    };
    let (lineno, header) = lines.next().ok_or_else(|| err(0, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (dim, nv) = match tokens.as_slice() {
        ["dim", d, "vertices", v] => (
            d.parse::<usize>().map_err(|_| err(lineno, "bad dimension"))?,
            v.parse::<usize>().map_err(|_| err(lineno, "bad vertex count"))?,
        ),
        _ => return Err(err(lineno, "expected `dim <n> vertices <V>`")),
    };
    let mut tops = Vec::new();
    for (lineno, l) in lines {
        let s = l
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err(lineno, "bad vertex index"))?;
        if s.is_empty() || s.len() > dim + 1 {
            return Err(err(lineno, "simplex size does not fit the declared dimension"));
        }
        tops.push(s);
    }
    let sc = SimplicialComplex::from_top_simplices(nv, &tops)?;
    if sc.dim() != dim && !tops.is_empty() {
        return Err(err(1, "declared dimension differs from the simplices"));
    }
    Ok(sc)
}

pub fn write_chain_complex(cc: &ChainComplex) -> String {
    let dims: Vec<String> = cc.dims().iter().map(usize::to_string).collect();
    format!("chain dims {}\n{}", dims.join(" "), coords::write_many(cc.boundary_maps()))
}

pub fn read_chain_complex(text: &str) -> Result<ChainComplex, ComplexError> {
    let (header, rest) = text.split_once('\n').unwrap_or((text, ""));
    let dims = header
        .trim()
        .strip_prefix("chain dims")
        .ok_or(ComplexError::Parse {
            line: 1,
            message: "expected `chain dims ...`".into(),
        })?
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ComplexError::Parse {
            line: 1,
            message: "bad dimension".into(),
        })?;
    ChainComplex::new(dims, coords::read_many(rest)?)
}
