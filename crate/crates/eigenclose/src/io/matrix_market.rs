//! Matrix Market reader and writer for Hermitian operators.
//!
//! Accepts coordinate and array formats with real or complex fields and
//! general/symmetric/hermitian symmetry. Values are taken bit-exactly as
//! parsed. Symmetric/hermitian files store one triangle and are mirrored;
//! general input with entries on both triangles must already be exactly
//! conjugate-symmetric — near-misses are rejected rather than repaired.

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use num_complex::Complex64;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_value(tok: Option<&str>, line: usize, what: &str) -> Result<f64> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("cannot parse {what} `{tok}`")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite {what}")));
    }
    Ok(v)
}

/// Load a Hermitian operator from a Matrix Market file.
pub fn load_matrix_market<P: AsRef<Path>>(path: P) -> Result<HermitianOperator> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    // header
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))
        .and_then(|(i, l)| l.map(|s| (i, s)).map_err(Error::Io))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("%%MatrixMarket") || toks.next() != Some("matrix") {
        return Err(parse_err(1, "header must start with `%%MatrixMarket matrix`"));
    }
    let format = match toks.next() {
        Some("coordinate") => Format::Coordinate,
        Some("array") => Format::Array,
        other => return Err(parse_err(1, format!("unsupported format {other:?}"))),
    };
    let field = match toks.next() {
        Some("real") => Field::Real,
        Some("complex") => Field::Complex,
        other => return Err(parse_err(1, format!("unsupported field {other:?}"))),
    };
    let symmetry = match toks.next() {
        Some("general") => Symmetry::General,
        Some("symmetric") => Symmetry::Symmetric,
        Some("hermitian") => Symmetry::Hermitian,
        other => return Err(parse_err(1, format!("unsupported symmetry {other:?}"))),
    };

    // size line (skipping comments)
    let mut size_line = None;
    let mut size_lineno = 0;
    for (i, line) in lines.by_ref() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size_line = Some(t.to_string());
        size_lineno = i + 1;
        break;
    }
    let size_line = size_line.ok_or_else(|| parse_err(size_lineno, "missing size line"))?;
    let mut st = size_line.split_whitespace();
    let rows: usize = st
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(size_lineno, "cannot parse row count"))?;
    let cols: usize = st
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(size_lineno, "cannot parse column count"))?;
    if rows != cols {
        return Err(Error::InvalidMatrix(format!(
            "matrix is {rows}x{cols}, not square"
        )));
    }
    let n = rows;
    let nnz_declared = if format == Format::Coordinate {
        Some(
            st.next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| parse_err(size_lineno, "cannot parse entry count"))?,
        )
    } else {
        None
    };

    // raw entries as stored in the file
    let mut raw: Vec<(usize, usize, Complex64)> = Vec::new();
    match format {
        Format::Coordinate => {
            for (i, line) in lines {
                let lineno = i + 1;
                let line = line?;
                let t = line.trim();
                if t.is_empty() || t.starts_with('%') {
                    continue;
                }
                let mut toks = t.split_whitespace();
                let r: usize = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "cannot parse row index"))?;
                let c: usize = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "cannot parse column index"))?;
                if r == 0 || c == 0 || r > n || c > n {
                    return Err(parse_err(lineno, format!("index ({r},{c}) out of range")));
                }
                let re = parse_value(toks.next(), lineno, "value")?;
                let im = if field == Field::Complex {
                    parse_value(toks.next(), lineno, "imaginary part")?
                } else {
                    0.0
                };
                raw.push((r - 1, c - 1, Complex64::new(re, im)));
            }
            if let Some(nnz) = nnz_declared {
                if raw.len() != nnz {
                    return Err(Error::InvalidMatrix(format!(
                        "file declares {nnz} entries but contains {}",
                        raw.len()
                    )));
                }
            }
        }
        Format::Array => {
            // column-major dense; symmetric/hermitian store the lower triangle
            let mut values = Vec::new();
            for (i, line) in lines {
                let lineno = i + 1;
                let line = line?;
                let t = line.trim();
                if t.is_empty() || t.starts_with('%') {
                    continue;
                }
                let mut toks = t.split_whitespace();
                let re = parse_value(toks.next(), lineno, "value")?;
                let im = if field == Field::Complex {
                    parse_value(toks.next(), lineno, "imaginary part")?
                } else {
                    0.0
                };
                values.push(Complex64::new(re, im));
            }
            let expected = if symmetry == Symmetry::General {
                n * n
            } else {
                n * (n + 1) / 2
            };
            if values.len() != expected {
                return Err(Error::InvalidMatrix(format!(
                    "array data has {} values, expected {expected}",
                    values.len()
                )));
            }
            let mut it = values.into_iter();
            for j in 0..n {
                let start = if symmetry == Symmetry::General { 0 } else { j };
                for i in start..n {
                    let v = it.next().unwrap();
                    if v.re != 0.0 || v.im != 0.0 {
                        raw.push((i, j, v));
                    }
                }
            }
        }
    }

    expand_to_hermitian(n, symmetry, field, raw)
}

/// Mirror one-triangle input and validate exact conjugate symmetry.
fn expand_to_hermitian(
    n: usize,
    symmetry: Symmetry,
    field: Field,
    raw: Vec<(usize, usize, Complex64)>,
) -> Result<HermitianOperator> {
    use std::collections::BTreeMap;
    let mut map: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for (i, j, v) in &raw {
        if map.insert((*i, *j), *v).is_some() {
            return Err(Error::InvalidMatrix(format!(
                "duplicate entry at ({}, {})",
                i + 1,
                j + 1
            )));
        }
    }
    match symmetry {
        Symmetry::Symmetric | Symmetry::Hermitian => {
            // one-triangle storage: mirror it
            let mut triplets = Vec::with_capacity(2 * raw.len());
            for ((i, j), v) in &map {
                if i != j && map.contains_key(&(*j, *i)) {
                    return Err(Error::InvalidMatrix(format!(
                        "symmetric/hermitian file stores both ({},{}) and ({},{})",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                triplets.push((*i, *j, *v));
                if i != j {
                    let mirror = if symmetry == Symmetry::Hermitian {
                        v.conj()
                    } else {
                        *v
                    };
                    triplets.push((*j, *i, mirror));
                }
            }
            HermitianOperator::from_triplets(n, &triplets)
        }
        Symmetry::General => {
            // both-triangle entries must match exactly; single-triangle
            // entries are mirrored
            let mut triplets = Vec::with_capacity(2 * raw.len());
            for ((i, j), v) in &map {
                match map.get(&(*j, *i)) {
                    Some(w) if i != j => {
                        if *w != v.conj() {
                            return Err(Error::InvalidMatrix(format!(
                                "entries ({},{}) and ({},{}) are not exact conjugates",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1
                            )));
                        }
                        triplets.push((*i, *j, *v));
                    }
                    Some(_) => triplets.push((*i, *j, *v)), // diagonal
                    None => {
                        triplets.push((*i, *j, *v));
                        if i != j {
                            triplets.push((*j, *i, v.conj()));
                        }
                    }
                }
            }
            let _ = field;
            HermitianOperator::from_triplets(n, &triplets)
        }
    }
}

/// Write an operator as a Matrix Market coordinate file (lower triangle,
/// symmetric for real data, hermitian otherwise). Values print with
/// shortest-round-trip digits, so a reload is bit-identical.
pub fn write_matrix_market<P: AsRef<Path>>(op: &HermitianOperator, path: P) -> Result<()> {
    let complex = op.triplets().any(|(_, _, v)| v.im != 0.0);
    let mut lower: Vec<(usize, usize, Complex64)> = op
        .triplets()
        .filter(|&(i, j, _)| i >= j)
        .collect();
    lower.sort_by_key(|&(i, j, _)| (i, j));

    let mut out = std::io::BufWriter::new(File::create(path.as_ref())?);
    writeln!(
        out,
        "%%MatrixMarket matrix coordinate {} {}",
        if complex { "complex" } else { "real" },
        if complex { "hermitian" } else { "symmetric" }
    )?;
    writeln!(out, "{} {} {}", op.n(), op.n(), lower.len())?;
    for (i, j, v) in lower {
        if complex {
            writeln!(out, "{} {} {:?} {:?}", i + 1, j + 1, v.re, v.im)?;
        } else {
            writeln!(out, "{} {} {:?}", i + 1, j + 1, v.re)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::gen_mass_spring;

    fn write_tmp(content: &str) -> std::path::PathBuf {
        use std::io::Write;
        let dir = std::env::temp_dir();
        let path = dir.join(format!(
            "eigenclose_mm_test_{}_{}.mtx",
            std::process::id(),
            content.len()
        ));
        let mut f = File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn coordinate_symmetric_tridiagonal() {
        let path = write_tmp(
            "%%MatrixMarket matrix coordinate real symmetric\n\
             % 2x2 tridiagonal block\n\
             2 2 3\n\
             1 1 2.0\n\
             2 2 2.0\n\
             2 1 -1.0\n",
        );
        let op = load_matrix_market(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(op.n(), 2);
        assert_eq!(op.get(0, 0).re, 2.0);
        assert_eq!(op.get(0, 1).re, -1.0);
        assert_eq!(op.get(1, 0).re, -1.0);
    }

    #[test]
    fn array_scalar() {
        let path = write_tmp(
            "%%MatrixMarket matrix array real general\n\
             1 1\n\
             5.0\n",
        );
        let op = load_matrix_market(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(op.n(), 1);
        assert_eq!(op.get(0, 0).re, 5.0);
    }

    #[test]
    fn general_requires_exact_conjugates() {
        let path = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             2 2 4\n\
             1 1 1.0\n\
             2 2 1.0\n\
             1 2 0.5\n\
             2 1 0.5000000001\n",
        );
        let err = load_matrix_market(&path);
        std::fs::remove_file(&path).ok();
        assert!(err.is_err());
    }

    #[test]
    fn general_one_triangle_mirrors() {
        let path = write_tmp(
            "%%MatrixMarket matrix coordinate complex general\n\
             2 2 3\n\
             1 1 1.0 0.0\n\
             2 2 1.0 0.0\n\
             1 2 0.25 -0.5\n",
        );
        let op = load_matrix_market(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(op.get(1, 0), Complex64::new(0.25, 0.5));
    }

    #[test]
    fn rejects_nan_and_nonsquare() {
        let p1 = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             1 1 1\n\
             1 1 nan\n",
        );
        assert!(load_matrix_market(&p1).is_err());
        std::fs::remove_file(&p1).ok();

        let p2 = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             2 3 1\n\
             1 1 1.0\n",
        );
        assert!(load_matrix_market(&p2).is_err());
        std::fs::remove_file(&p2).ok();
    }

    #[test]
    fn roundtrip_bit_identical() {
        let (a, b) = gen_mass_spring(17, 1e-7, 12345).unwrap();
        for (idx, op) in [a, b].iter().enumerate() {
            let path = std::env::temp_dir().join(format!(
                "eigenclose_rt_{}_{}.mtx",
                std::process::id(),
                idx
            ));
            write_matrix_market(op, &path).unwrap();
            let back = load_matrix_market(&path).unwrap();
            std::fs::remove_file(&path).ok();
            assert_eq!(back.n(), op.n());
            let orig: Vec<_> = op.triplets().collect();
            let reload: Vec<_> = back.triplets().collect();
            assert_eq!(orig, reload);
        }
    }
}
