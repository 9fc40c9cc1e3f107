//! Dense matrices over GF(q) and the elimination routines built on them.
//!
//! Text format (used by every CLI export):
//!
//! ```text
//! rows cols q
//! a00 a01 ...
//! ...
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};

/// Row-major matrix over a small finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: &'static FieldTable,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixGF {}x{} over GF({})", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of reduction to row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixGF {
    pub fn zeros(field: &'static FieldTable, rows: usize, cols: usize) -> Self {
        MatrixGF { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &'static FieldTable, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Wraps row-major data, validating the entries.
    pub fn from_vec(field: &'static FieldTable, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v as u32)) {
            return Err(Error::InvalidElement { value: bad as u32, q: field.q() });
        }
        Ok(MatrixGF { field, rows, cols, data })
    }

    pub fn from_rows(field: &'static FieldTable, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &'static FieldTable {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!(self.field.contains(v as u32));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(dst, self.get(r, k), other.row(k));
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![0; self.cols];
        for (r, &s) in v.iter().enumerate() {
            self.field.axpy(&mut out, s, self.row(r));
        }
        Ok(out)
    }

    /// `self * x` for a column vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), x)).collect())
    }

    /// Reduced row echelon form. The pivot row for each column is the first
    /// remaining row with a nonzero entry there.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c));
            for v in m.row_mut(lead) {
                *v = f.mul(*v, inv);
            }
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        f.axpy(m.row_mut(r), f.neg(factor), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Whether the matrix is already in reduced row echelon form (zero rows last).
    pub fn is_rref(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for r in 0..self.rows {
            match self.row(r).iter().position(|&v| v != 0) {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row || last_pivot.is_some_and(|p| c <= p) || self.get(r, c) != 1 {
                        return false;
                    }
                    if (0..self.rows).any(|o| o != r && self.get(o, c) != 0) {
                        return false;
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per row.
    pub fn kernel(&self) -> MatrixGF {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(matrix.get(r, fc)));
            }
        }
        basis
    }

    /// Solves `self * x = b`. Returns `Ok(None)` when the system is inconsistent;
    /// free variables are set to zero.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for (r, &v) in b.iter().enumerate() {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, v);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Keeps only the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> MatrixGF {
        let data = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        MatrixGF { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Writes the matrix in the `rows cols q` text format.
    pub fn write_text<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("ascii")
    }

    /// Parses one matrix in the text format. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<MatrixGF> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims = parse_ints(header)?;
        let [rows, cols, q] = dims[..] else {
            return Err(Error::Parse(format!("header must be 'rows cols q', got '{header}'")));
        };
        let field = FieldTable::of_order(q)?;
        let mut data = Vec::with_capacity(rows as usize * cols as usize);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r} of {rows}")))?;
            let vals = parse_ints(line)?;
            if vals.len() != cols as usize {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", vals.len())));
            }
            for v in vals {
                if !field.contains(v) {
                    return Err(Error::InvalidElement { value: v, q });
                }
                data.push(v as Elem);
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing data after matrix: '{extra}'")));
        }
        MatrixGF::from_vec(field, rows as usize, cols as usize, data)
    }
}

/// Parses a whitespace-separated list of nonnegative integers.
pub fn parse_ints(line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("not an integer: '{t}'"))))
        .collect()
}
