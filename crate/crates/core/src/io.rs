//! Text formats for matrices and concept lists.
//!
//! * Dense: one line per row, cells `0`/`1`, optionally separated by single
//!   spaces or commas.
//! * Sparse (FIMI style): one line per row holding the whitespace-separated,
//!   0-based column indices of that row's 1s; a blank line is an empty row.
//!   The column count comes from a leading `#cols=m` line or from the caller.
//! * Concepts: one per line, `extent: 0 4 5 | intent: 0 1`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::error::{BmfError, Result};
use crate::galois::FormalConcept;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Dense,
    Sparse,
}

impl FromStr for MatrixFormat {
    type Err = BmfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(MatrixFormat::Dense),
            "sparse" => Ok(MatrixFormat::Sparse),
            other => Err(BmfError::InvalidParameter(format!(
                "unknown matrix format {other:?} (expected dense or sparse)"
            ))),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> BmfError {
    BmfError::Parse {
        line,
        message: message.into(),
    }
}

/// Splits text into lines; a single trailing newline does not start a new row.
fn lines(text: &str) -> Vec<&str> {
    let mut out: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    if out.last() == Some(&"") {
        out.pop();
    }
    out
}

pub fn parse_dense(text: &str) -> Result<BooleanMatrix> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (idx, line) in lines(text).into_iter().enumerate() {
        let lineno = idx + 1;
        let mut cells = Vec::with_capacity(line.len());
        let mut prev_sep = true;
        for c in line.chars() {
            match c {
                '0' | '1' => {
                    cells.push(c == '1');
                    prev_sep = false;
                }
                ' ' | ',' if !prev_sep => prev_sep = true,
                _ => return Err(parse_err(lineno, format!("unexpected character {c:?}"))),
            }
        }
        if let Some(first) = rows.first() {
            if first.len() != cells.len() {
                return Err(parse_err(
                    lineno,
                    format!("row has {} cells, expected {}", cells.len(), first.len()),
                ));
            }
        }
        rows.push(cells);
    }
    let n_cols = rows.first().map_or(0, Vec::len);
    Ok(BooleanMatrix::from_fn(rows.len(), n_cols, |i, j| rows[i][j]))
}

/// Parses the sparse format. `n_cols` overrides a `#cols=` header when given.
pub fn parse_sparse(text: &str, n_cols: Option<usize>) -> Result<BooleanMatrix> {
    let all = lines(text);
    let mut header_cols = None;
    let mut body_start = 0;
    if let Some(first) = all.first() {
        if let Some(rest) = first.trim().strip_prefix("#cols=") {
            header_cols = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(1, format!("bad column count {rest:?}")))?,
            );
            body_start = 1;
        }
    }
    let n_cols = n_cols.or(header_cols).ok_or_else(|| {
        parse_err(1, "sparse input needs a #cols=m header or an explicit column count")
    })?;
    let mut rows = Vec::new();
    for (idx, line) in all.iter().enumerate().skip(body_start) {
        let lineno = idx + 1;
        let mut row = BitSet::new(n_cols);
        for tok in line.split_whitespace() {
            let j: usize = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad column index {tok:?}")))?;
            if j >= n_cols {
                return Err(parse_err(
                    lineno,
                    format!("column index {j} out of range (n_cols = {n_cols})"),
                ));
            }
            row.insert(j);
        }
        rows.push(row);
    }
    Ok(BooleanMatrix::from_row_sets(n_cols, rows))
}

pub fn to_dense_string(m: &BooleanMatrix) -> String {
    let mut s = String::with_capacity(m.n_rows() * (m.n_cols() + 1));
    for i in 0..m.n_rows() {
        for j in 0..m.n_cols() {
            s.push(if m.get(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

/// Sparse text with a `#cols=m` header line.
pub fn to_sparse_string(m: &BooleanMatrix) -> String {
    let mut s = format!("#cols={}\n", m.n_cols());
    for r in m.row_sets() {
        let line: Vec<String> = r.iter().map(|j| j.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_matrix(text: &str, format: MatrixFormat, n_cols: Option<usize>) -> Result<BooleanMatrix> {
    match format {
        MatrixFormat::Dense => parse_dense(text),
        MatrixFormat::Sparse => parse_sparse(text, n_cols),
    }
}

pub fn format_matrix(m: &BooleanMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Dense => to_dense_string(m),
        MatrixFormat::Sparse => to_sparse_string(m),
    }
}

pub fn load_matrix(path: impl AsRef<Path>, format: MatrixFormat, n_cols: Option<usize>) -> Result<BooleanMatrix> {
    parse_matrix(&fs::read_to_string(path)?, format, n_cols)
}

pub fn save_matrix(m: &BooleanMatrix, path: impl AsRef<Path>, format: MatrixFormat) -> Result<()> {
    fs::write(path, format_matrix(m, format))?;
    Ok(())
}

fn join(set: &BitSet) -> String {
    let mut s = String::new();
    for (n, i) in set.iter().enumerate() {
        if n > 0 {
            s.push(' ');
        }
        write!(s, "{i}").unwrap();
    }
    s
}

/// `extent: i1 i2 … | intent: j1 j2 …`
pub fn format_concept(c: &FormalConcept) -> String {
    format!("extent: {} | intent: {}", join(&c.extent), join(&c.intent))
}

pub fn format_concepts<'a>(concepts: impl IntoIterator<Item = &'a FormalConcept>) -> String {
    let mut s = String::new();
    for c in concepts {
        s.push_str(&format_concept(c));
        s.push('\n');
    }
    s
}

fn parse_index_list(part: &str, universe: usize, lineno: usize) -> Result<BitSet> {
    let mut set = BitSet::new(universe);
    for tok in part.split_whitespace() {
        let i: usize = tok
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad index {tok:?}")))?;
        if i >= universe {
            return Err(parse_err(lineno, format!("index {i} out of range ({universe})")));
        }
        set.insert(i);
    }
    Ok(set)
}

/// Parses a concept list for a host matrix of shape `n_rows × n_cols`.
/// Blank lines are skipped.
pub fn parse_concepts(text: &str, n_rows: usize, n_cols: usize) -> Result<FactorSet> {
    let mut fs = FactorSet::new(n_rows, n_cols);
    for (idx, line) in lines(text).into_iter().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (ext, int) = line
            .split_once('|')
            .ok_or_else(|| parse_err(lineno, "missing '|' separator"))?;
        let ext = ext
            .trim()
            .strip_prefix("extent:")
            .ok_or_else(|| parse_err(lineno, "missing 'extent:' prefix"))?;
        let int = int
            .trim()
            .strip_prefix("intent:")
            .ok_or_else(|| parse_err(lineno, "missing 'intent:' prefix"))?;
        fs.push(FormalConcept::new(
            parse_index_list(ext, n_rows, lineno)?,
            parse_index_list(int, n_cols, lineno)?,
        ));
    }
    Ok(fs)
}
