//! Coordinate text format: a `rows cols` header, then one `r c` line per set entry.

use super::{Gf2Error, SparseBitMatrix};

pub fn write(m: &SparseBitMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for (r, c) in m.entries() {
        out.push_str(&format!("{r} {c}\n"));
    }
    out
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), Gf2Error> {
    let err = |message: &str| Gf2Error::Parse {
        line: lineno,
        message: message.to_string(),
    };
    let mut it = line.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not an integer"))?;
    let b = b.parse().map_err(|_| err("not an integer"))?;
    Ok((a, b))
}

/// Parses one matrix.
/// Blank lines and lines starting with `#` are ignored.
pub fn read(text: &str) -> Result<SparseBitMatrix, Gf2Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines.next().ok_or(Gf2Error::Parse {
        line: 0,
        message: "missing header".into(),
    })?;
    let (rows, cols) = parse_pair(header, lineno)?;
    let mut entries = Vec::new();
    for (lineno, l) in lines {
        entries.push(parse_pair(l, lineno)?);
    }
    SparseBitMatrix::from_coords(rows, cols, &entries)
}

/// Several matrices in one stream, each preceded by a `matrix` line.
pub fn write_many(ms: &[SparseBitMatrix]) -> String {
    ms.iter().map(|m| format!("matrix\n{}", write(m))).collect()
}

pub fn read_many(text: &str) -> Result<Vec<SparseBitMatrix>, Gf2Error> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim() == "matrix" {
            blocks.push(String::new());
        } else if let Some(b) = blocks.last_mut() {
            b.push_str(line);
            b.push('\n');
        } else if !line.trim().is_empty() {
            return Err(Gf2Error::Parse {
                line: 1,
                message: "expected `matrix`".into(),
            });
        }
    }
    blocks.iter().map(|b| read(b)).collect()
}
