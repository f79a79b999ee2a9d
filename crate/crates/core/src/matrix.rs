//! Dense integer matrices, the row-lex order and the column normal form used
//! by every canonicalization routine.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::SignedPerm;

/// Dense row-major matrix of signed integers.
///
/// Equality and hashing are structural. The derived `Ord` is the row-lex order
/// for matrices of equal shape (shape is compared first otherwise).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    /// `k` times the identity.
    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, k);
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn negated(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(l, j);
                }
            }
        }
        Ok(out)
    }

    /// `A·Aᵀ`.
    pub fn gram(&self) -> IntMatrix {
        let mut g = IntMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = dot(self.row(i), self.row(j));
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        g
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Rows picked in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// First `p` rows.
    pub fn prefix(&self, p: usize) -> IntMatrix {
        IntMatrix { rows: p, cols: self.cols, data: self.data[..p * self.cols].to_vec() }
    }

    /// Appends a row below the matrix.
    pub fn with_row(&self, row: &[i64]) -> Result<IntMatrix> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!("row of length {} for {} columns", row.len(), self.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        Ok(IntMatrix { rows: self.rows + 1, cols: self.cols, data })
    }

    /// Block diagonal sum of square or rectangular blocks.
    pub fn block_sum(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// True iff `A·Aᵀ = k·I`.
    pub fn is_piw(&self, k: i64) -> bool {
        gram_check(self, k)
    }

    /// Parses the plain text format: one row per line, whitespace separated.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_text(s: &str) -> Result<IntMatrix> {
        let mut rows = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("line {}: {t:?}: {e}", ln + 1))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("no rows".into()));
        }
        IntMatrix::from_rows(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntMatrix::parse_text(s)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[inline]
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-lex comparison: rows lexicographically, matrices as sequences of rows.
pub fn row_lex_compare(a: &IntMatrix, b: &IntMatrix) -> Result<Ordering> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Dimension(format!(
            "cannot compare {}x{} with {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    // Row-major storage makes this a plain slice comparison.
    Ok(a.data.cmp(&b.data))
}

pub fn gram_check(a: &IntMatrix, k: i64) -> bool {
    (0..a.rows).all(|i| {
        (i..a.rows).all(|j| {
            let v = dot(a.row(i), a.row(j));
            if i == j {
                v == k
            } else {
                v == 0
            }
        })
    })
}

/// `Ord(Neg(a))`: negate every column whose first nonzero entry is positive,
/// then sort the columns in increasing lexicographic order.
pub fn neg_ord(a: &IntMatrix) -> IntMatrix {
    neg_ord_with_transform(a).0
}

/// `neg_ord` together with the signed column permutation `R` satisfying
/// `neg_ord(a) = a·Rᵀ`.
pub fn neg_ord_with_transform(a: &IntMatrix) -> (IntMatrix, SignedPerm) {
    let (m, n) = (a.rows, a.cols);
    let mut signs = vec![1i8; n];
    for (j, s) in signs.iter_mut().enumerate() {
        if let Some(i) = (0..m).find(|&i| a.get(i, j) != 0) {
            if a.get(i, j) > 0 {
                *s = -1;
            }
        }
    }
    let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j) * signs[j] as i64).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| cols[x].cmp(&cols[y]));
    let mut out = IntMatrix::zeros(m, n);
    // source column order[t] lands at target t
    let mut perm = vec![0usize; n];
    let mut tsigns = vec![1i8; n];
    for (t, &src) in order.iter().enumerate() {
        perm[src] = t;
        tsigns[t] = signs[src];
        for i in 0..m {
            out.set(i, t, a.get(i, src) * signs[src] as i64);
        }
    }
    (out, SignedPerm::from_parts_unchecked(perm, tsigns))
}
