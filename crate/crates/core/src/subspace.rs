//! Subspaces of GF(q)^d in canonical reduced row echelon form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::matrix::MatrixGF;

/// A k-dimensional subspace, stored by its unique RREF basis.
///
/// Two subspaces are equal iff their basis matrices are entry-identical, and
/// they are ordered lexicographically by the concatenated basis entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: MatrixGF,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.basis.row_vecs())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.data().cmp(other.basis.data())
    }
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.rows().hash(state);
        self.basis.data().hash(state);
    }
}

impl Subspace {
    /// Span of the given rows. Fails if the rows are dependent.
    pub fn from_rows(field: &'static FieldTable, rows: &[Vec<Elem>]) -> Result<Self> {
        let m = MatrixGF::from_rows(field, rows)?;
        Self::from_matrix(&m)
    }

    /// Row space of `m`, which must have full row rank.
    pub fn from_matrix(m: &MatrixGF) -> Result<Self> {
        let r = m.rref();
        if r.rank != m.rows() {
            return Err(Error::RankDeficient { expected: m.rows(), got: r.rank });
        }
        Ok(Subspace { basis: r.matrix })
    }

    /// Row space of `m`, dropping dependent rows.
    pub fn span(m: &MatrixGF) -> Self {
        let r = m.rref();
        Subspace { basis: r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>()) }
    }

    /// Wraps a matrix that the caller guarantees is in RREF with full row rank.
    pub(crate) fn from_rref_unchecked(basis: MatrixGF) -> Self {
        debug_assert!(basis.is_rref() && basis.rank() == basis.rows());
        Subspace { basis }
    }

    pub fn field(&self) -> &'static FieldTable {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        self.basis.row(i)
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).map(|r| self.row(r).iter().position(|&v| v != 0).expect("nonzero RREF row")).collect()
    }

    /// Whether `v` lies in the subspace.
    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        let f = self.field();
        let mut rem = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            let c = rem[p];
            f.axpy(&mut rem, f.neg(c), self.row(r));
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains_vector(other.row(r)))
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::span(&MatrixGF::from_rows(self.field(), &rows).expect("equal widths"))
    }

    /// Intersection of two subspaces of the same ambient space.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        // x in U ∩ W  <=>  x = a·U = b·W  <=>  (a, -b) in left kernel of [U; W]
        let f = self.field();
        let k1 = self.dim();
        let mut stacked = self.basis.row_vecs();
        stacked.extend(other.basis.row_vecs());
        let m = MatrixGF::from_rows(f, &stacked).expect("equal widths");
        let ker = m.transpose().kernel();
        let mut rows = Vec::new();
        for i in 0..ker.rows() {
            let coeffs = &ker.row(i)[..k1];
            let mut v = vec![0; self.ambient_dim()];
            for (r, &c) in coeffs.iter().enumerate() {
                f.axpy(&mut v, c, self.row(r));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Subspace { basis: MatrixGF::zeros(f, 0, self.ambient_dim()) };
        }
        Subspace::span(&MatrixGF::from_rows(f, &rows).expect("equal widths"))
    }

    /// Every vector in the subspace (q^k of them), in coefficient order.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = self.field();
        let q = f.q() as usize;
        let k = self.dim();
        let total = q.pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0; self.ambient_dim()];
                for r in 0..k {
                    f.axpy(&mut v, (idx % q) as Elem, self.row(r));
                    idx /= q;
                }
                v
            })
            .collect()
    }
}

/// Projective representative: scales `v` so its first nonzero entry is 1.
/// Returns the scalar `s` with `v = s * normalized`, or `None` for the zero vector.
pub fn normalize(field: &FieldTable, v: &mut [Elem]) -> Option<Elem> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv(lead);
    for x in v.iter_mut() {
        *x = field.mul(*x, inv);
    }
    Some(lead)
}

/// Depth-first enumeration of all k-dimensional subspaces of GF(q)^dim in RREF.
///
/// Rows are filled one at a time; `accept_row(rows_so_far, new_row)` is called
/// once each row is complete and may reject it, pruning the whole subtree.
/// The output is sorted lexicographically.
pub fn enumerate_rref<F>(field: &'static FieldTable, dim: usize, k: usize, mut accept_row: F) -> Vec<Subspace>
where
    F: FnMut(&[Vec<Elem>], &[Elem]) -> bool,
{
    let mut out = Vec::new();
    if k > dim {
        return out;
    }
    let q = field.q() as Elem;
    for pivots in k_subsets(dim, k) {
        let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(k);
        fill_rows(field, dim, q, &pivots, &mut rows, &mut accept_row, &mut out);
    }
    out.sort();
    out
}

fn fill_rows<F>(
    field: &'static FieldTable,
    dim: usize,
    q: Elem,
    pivots: &[usize],
    rows: &mut Vec<Vec<Elem>>,
    accept_row: &mut F,
    out: &mut Vec<Subspace>,
) where
    F: FnMut(&[Vec<Elem>], &[Elem]) -> bool,
{
    let r = rows.len();
    if r == pivots.len() {
        let m = MatrixGF::from_vec(field, r, dim, rows.concat()).expect("rows are well formed");
        out.push(Subspace::from_rref_unchecked(m));
        return;
    }
    let p = pivots[r];
    let free: Vec<usize> = (p + 1..dim).filter(|c| !pivots.contains(c)).collect();
    let mut row = vec![0; dim];
    row[p] = 1;
    let total = (q as usize).pow(free.len() as u32);
    for mut idx in 0..total {
        for &c in &free {
            row[c] = (idx % q as usize) as Elem;
            idx /= q as usize;
        }
        if accept_row(rows, &row) {
            rows.push(row.clone());
            fill_rows(field, dim, q, pivots, rows, accept_row, out);
            rows.pop();
        }
    }
}

/// All k-element subsets of `0..n` as increasing vectors, lexicographic.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Number of k-subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    num / den
}
