//! Plain-text file formats.
//!
//! ```text
//! GTM1 <rows> <cols>          matrix header
//! <k> <i1> ... <ik>           one line per row, sorted column indices
//!
//! GTV1 <universe>             support header
//! <i1> ... <ik>               sorted indices (empty line for the empty set)
//! ```
//!
//! Observations are a single line of `0`/`1` characters. Every file is ASCII
//! and newline-terminated with no trailing spaces.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::{BitMatrix, BitVec, SupportSet};
use crate::error::{Error, Result};

fn join_indices(out: &mut String, idx: &[usize]) {
    for (n, i) in idx.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        write!(out, "{i}").unwrap();
    }
}

pub fn matrix_to_string(m: &BitMatrix) -> String {
    let mut out = format!("GTM1 {} {}\n", m.rows(), m.cols());
    for row in m.row_supports() {
        write!(out, "{}", row.len()).unwrap();
        if !row.is_empty() {
            out.push(' ');
            join_indices(&mut out, row);
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 || fields[0] != "GTM1" {
        return Err(Error::parse(1, "expected `GTM1 <rows> <cols>`"));
    }
    let rows: usize = parse_num(fields[1], 1)?;
    let cols: usize = parse_num(fields[2], 1)?;
    let mut supports = Vec::with_capacity(rows);
    for r in 0..rows {
        let line_no = r + 2;
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing row"))?;
        let mut nums = line.split(' ');
        let k: usize = parse_num(nums.next().unwrap_or(""), line_no)?;
        let idx = nums
            .map(|s| parse_num(s, line_no))
            .collect::<Result<Vec<usize>>>()?;
        if idx.len() != k {
            return Err(Error::parse(
                line_no,
                format!("row declares {k} entries but lists {}", idx.len()),
            ));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(line_no, "row indices not strictly increasing"));
        }
        supports.push(idx);
    }
    if lines.any(|l| !l.is_empty()) {
        return Err(Error::parse(rows + 2, "trailing content after last row"));
    }
    BitMatrix::new(rows, cols, supports)
}

pub fn support_to_string(s: &SupportSet) -> String {
    let mut out = format!("GTV1 {}\n", s.universe());
    join_indices(&mut out, s.indices());
    out.push('\n');
    out
}

pub fn parse_support(text: &str) -> Result<SupportSet> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let universe = match header.split_once(' ') {
        Some(("GTV1", n)) => parse_num(n, 1)?,
        _ => return Err(Error::parse(1, "expected `GTV1 <universe>`")),
    };
    let body = lines.next().unwrap_or("");
    let idx = if body.is_empty() {
        Vec::new()
    } else {
        body.split(' ')
            .map(|s| parse_num(s, 2))
            .collect::<Result<Vec<usize>>>()?
    };
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(2, "indices not strictly increasing"));
    }
    SupportSet::new(universe, idx)
}

pub fn observation_to_string(y: &BitVec) -> String {
    format!("{y}\n")
}

pub fn parse_observation(text: &str) -> Result<BitVec> {
    let line = text.lines().next().unwrap_or("");
    BitVec::from_bit_str(line)
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {s:?}")))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<BitMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn read_support(path: impl AsRef<Path>) -> Result<SupportSet> {
    parse_support(&fs::read_to_string(path)?)
}

pub fn read_observation(path: impl AsRef<Path>) -> Result<BitVec> {
    parse_observation(&fs::read_to_string(path)?)
}

fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

pub fn write_matrix(path: impl AsRef<Path>, m: &BitMatrix) -> Result<()> {
    write_text(path, &matrix_to_string(m))
}

pub fn write_support(path: impl AsRef<Path>, s: &SupportSet) -> Result<()> {
    write_text(path, &support_to_string(s))
}

pub fn write_observation(path: impl AsRef<Path>, y: &BitVec) -> Result<()> {
    write_text(path, &observation_to_string(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_text_layout() {
        let m = BitMatrix::new(3, 4, vec![vec![0, 1], vec![], vec![3]]).unwrap();
        let s = matrix_to_string(&m);
        assert_eq!(s, "GTM1 3 4\n2 0 1\n0\n1 3\n");
        assert_eq!(parse_matrix(&s).unwrap(), m);
    }

    #[test]
    fn support_text_layout() {
        let s = SupportSet::new(10, vec![2, 5]).unwrap();
        assert_eq!(support_to_string(&s), "GTV1 10\n2 5\n");
        assert_eq!(parse_support("GTV1 10\n2 5\n").unwrap(), s);
        let e = SupportSet::empty(4);
        assert_eq!(parse_support(&support_to_string(&e)).unwrap(), e);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_matrix("GTM2 1 1\n0\n").is_err());
        assert!(parse_matrix("GTM1 2 3\n1 0\n").is_err());
        assert!(parse_matrix("GTM1 1 3\n2 0\n").is_err());
        assert!(parse_matrix("GTM1 1 3\n2 1 0\n").is_err());
        assert!(parse_matrix("GTM1 1 3\n1 4\n").is_err());
        assert!(parse_matrix("GTM1 1 3\n1 0 \n").is_err());
        assert!(parse_support("GTV1 3\n1 1\n").is_err());
        assert!(parse_support("GTV1 3\n3\n").is_err());
        assert!(parse_observation("01a\n").is_err());
    }

    #[test]
    fn observation_round_trip() {
        let y = BitVec::from_bit_str("0110").unwrap();
        assert_eq!(observation_to_string(&y), "0110\n");
        assert_eq!(parse_observation("0110\n").unwrap(), y);
    }
}
