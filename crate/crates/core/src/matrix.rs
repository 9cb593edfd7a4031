//! Integer matrices and rational parameter vectors, with the shared text and
//! JSON file formats.
//!
//! Text format: the first line is `d n`, followed by `d` lines of `n`
//! whitespace-separated decimal integers. JSON format:
//! `{"rows": d, "cols": n, "entries": [[...], ...]}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense `rows × cols` matrix of arbitrary-precision integers, stored
/// row-major. Columns are the points `a_1, ..., a_n` of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// General constructor: any shape with `rows ≥ 1`, no rank requirement.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let ncols = rows[0].len();
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} entries, expected {}",
                bad + 1,
                rows[bad].len(),
                ncols
            )));
        }
        Ok(IntegerMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Configuration constructor: requires `cols ≥ rows ≥ 1` and full row rank.
    pub fn configuration(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let m = Self::new(rows)?;
        m.require_full_rank()?;
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntegerMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        };
        let d = first.len();
        if columns.iter().any(|c| c.len() != d) {
            return Err(Error::InvalidMatrix("columns have different lengths".into()));
        }
        Ok(Self::from_fn(d, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` (0-based).
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        crate::lattice::rank_of_rows(self.to_rows())
    }

    pub fn is_full_rank(&self) -> bool {
        self.cols >= self.rows && self.rank() == self.rows
    }

    pub fn require_full_rank(&self) -> Result<()> {
        let rank = self.rank();
        if rank < self.rows {
            return Err(Error::NotFullRank {
                rank,
                rows: self.rows,
            });
        }
        Ok(())
    }

    /// Keeps the listed columns (0-based) in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        self.select_columns(perm)
    }

    /// Multiplies row `i` by `k`.
    pub fn scale_row(&self, i: usize, k: &BigInt) -> Self {
        let mut m = self.clone();
        for j in 0..m.cols {
            let v = m.get(i, j) * k;
            m.set(i, j, v);
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [d, n] = dims[..] else {
            return Err(Error::Parse(format!("header must be `d n`, got {header:?}")));
        };
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| {
                    BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content {extra:?}")));
        }
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        }
        Self::new(rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = MatrixDocument::from(self);
        serde_json::to_value(doc).expect("matrix document serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }

    /// Accepts either file format, sniffing for a leading `{`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Structured form of the matrix file format. Entries are JSON integers when
/// they fit in an `i64` and decimal strings otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<serde_json::Value>>,
}

impl From<&IntegerMatrix> for MatrixDocument {
    fn from(m: &IntegerMatrix) -> Self {
        MatrixDocument {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(bigint_to_json).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixDocument> for IntegerMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        if doc.entries.len() != doc.rows {
            return Err(Error::Parse(format!(
                "`rows` is {} but {} rows given",
                doc.rows,
                doc.entries.len()
            )));
        }
        let rows = doc
            .entries
            .iter()
            .map(|r| {
                if r.len() != doc.cols {
                    return Err(Error::Parse(format!(
                        "`cols` is {} but a row has {} entries",
                        doc.cols,
                        r.len()
                    )));
                }
                r.iter().map(json_to_bigint).collect()
            })
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        if doc.cols == 0 {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        }
        IntegerMatrix::new(rows)
    }
}

pub(crate) fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn json_to_bigint(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer entry {n}"))),
        serde_json::Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        }
        other => Err(Error::Parse(format!("bad entry {other}"))),
    }
}

/// The parameter β: a vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterVector(pub Vec<BigRational>);

impl ParameterVector {
    pub fn from_i64(values: &[i64]) -> Self {
        ParameterVector(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[ParameterVector]) -> Self {
        ParameterVector(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    /// The entries as integers, if all are integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// Parses comma-separated rationals such as `3,2` or `1/2,-1`.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Parse("empty parameter vector".into()));
        }
        Ok(ParameterVector(values))
    }
}

impl fmt::Display for ParameterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Decimal rendering of a rational with `digits` digits after the point,
/// rounded half away from zero.
pub fn rational_to_decimal(q: &BigRational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits as usize
    )
}
