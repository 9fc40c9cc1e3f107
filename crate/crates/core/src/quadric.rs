//! The parabolic quadric Q(2n, q) and its totally singular subspaces.
//!
//! The quadratic form on V = GF(q)^(2n+1) is fixed as
//!
//! ```text
//! η(x) = x0² + x1·x2 + x3·x4 + ... + x(2n-1)·x(2n)
//! ```
//!
//! with polar form `B(x, y) = η(x + y) - η(x) - η(y) = 2·x0·y0 + Σ (x(2i-1)·y(2i) + x(2i)·y(2i-1))`.
//! In even characteristic `B` is alternating with radical `⟨e0⟩` (the nucleus),
//! so total singularity must always be tested on `η` as well as on `B`.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::matrix::MatrixGF;
use crate::subspace::{enumerate_rref, normalize, Subspace};

/// `(V(2n+1, q), η)` with the standard parabolic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    field: &'static FieldTable,
    n: usize,
    polar: MatrixGF,
}

impl QuadraticSpace {
    /// Supported Witt indices are 1..=4.
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidParameters(format!("Witt index n={n} outside 1..=4")));
        }
        let field = FieldTable::of_order(q)?;
        let dim = 2 * n + 1;
        let mut polar = MatrixGF::zeros(field, dim, dim);
        polar.set(0, 0, field.add(1, 1));
        for i in 1..=n {
            polar.set(2 * i - 1, 2 * i, 1);
            polar.set(2 * i, 2 * i - 1, 1);
        }
        Ok(QuadraticSpace { field, n, polar })
    }

    pub fn field(&self) -> &'static FieldTable {
        self.field
    }

    /// Witt index.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Ambient dimension `2n + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Gram matrix of the polar form.
    pub fn polar_matrix(&self) -> &MatrixGF {
        &self.polar
    }

    pub fn eval(&self, v: &[Elem]) -> Result<Elem> {
        self.check_len(v)?;
        Ok(self.eval_unchecked(v))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, v: &[Elem]) -> Elem {
        let f = self.field;
        let mut acc = f.mul(v[0], v[0]);
        for i in 1..=self.n {
            acc = f.add(acc, f.mul(v[2 * i - 1], v[2 * i]));
        }
        acc
    }

    pub fn polar(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.polar_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn polar_unchecked(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = self.field;
        let x0y0 = f.mul(x[0], y[0]);
        let mut acc = f.add(x0y0, x0y0);
        for i in 1..=self.n {
            acc = f.add(acc, f.mul(x[2 * i - 1], y[2 * i]));
            acc = f.add(acc, f.mul(x[2 * i], y[2 * i - 1]));
        }
        acc
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// η vanishes on every basis vector and B on every pair of basis vectors.
    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        if s.ambient_dim() != self.dim() {
            return false;
        }
        let rows = s.basis().row_vecs();
        rows.iter().enumerate().all(|(i, r)| {
            self.eval_unchecked(r) == 0 && rows[..i].iter().all(|prev| self.polar_unchecked(prev, r) == 0)
        })
    }

    /// All totally singular k-subspaces in lexicographic RREF order.
    pub fn enumerate_totally_singular(&self, k: usize) -> Result<PolarGrassmannian> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidParameters(format!("subspace dimension k={k} outside 1..={}", self.n)));
        }
        let points = self.singular_subspaces(k);
        debug_assert_eq!(points.len() as u128, count_formula(self.n, k, self.q()));
        Ok(PolarGrassmannian { space: self.clone(), k, points })
    }

    /// Totally singular subspaces of any dimension (no range check; empty above n).
    pub(crate) fn singular_subspaces(&self, k: usize) -> Vec<Subspace> {
        enumerate_rref(self.field, self.dim(), k, |prev, row| {
            self.eval_unchecked(row) == 0 && prev.iter().all(|p| self.polar_unchecked(p, row) == 0)
        })
    }

    /// `{v : B(v, x) = 0 for all x in s}`.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let f = self.field;
        if s.dim() == 0 {
            return Subspace::span(&MatrixGF::identity(f, self.dim()));
        }
        let constraints = s.basis().mul(&self.polar).expect("ambient dimension matches");
        let ker = constraints.kernel();
        if ker.rows() == 0 {
            return Subspace::span(&MatrixGF::zeros(f, 0, self.dim()));
        }
        Subspace::span(&ker)
    }

    /// Radical of the polar form: zero for odd q, the nucleus `⟨e0⟩` for even q.
    pub fn radical(&self) -> Subspace {
        self.perp(&Subspace::span(&MatrixGF::identity(self.field, self.dim())))
    }

    /// All totally singular planes containing the totally singular line `line`.
    ///
    /// They correspond to the singular points of `line^⊥ / line`; the result is
    /// sorted and empty when `n < 3`.
    pub fn planes_through_line(&self, line: &Subspace) -> Result<Vec<Subspace>> {
        if line.dim() != 2 || !self.is_totally_singular(line) {
            return Err(Error::NotTotallySingular);
        }
        if self.n < 3 {
            return Ok(Vec::new());
        }
        let f = self.field;
        let lperp = self.perp(line);
        let pivots = line.pivots();
        // complement of `line` inside line^⊥: reduce against the line's pivots
        let mut comp_rows: Vec<Vec<Elem>> = Vec::new();
        for r in 0..lperp.dim() {
            let mut v = lperp.row(r).to_vec();
            for (i, &p) in pivots.iter().enumerate() {
                let c = v[p];
                f.axpy(&mut v, f.neg(c), line.row(i));
            }
            if v.iter().any(|&x| x != 0) {
                comp_rows.push(v);
            }
        }
        let comp = Subspace::span(&MatrixGF::from_rows(f, &comp_rows)?);
        debug_assert_eq!(comp.dim(), lperp.dim() - 2);

        let mut planes = Vec::new();
        for mut v in comp.vectors() {
            if normalize(f, &mut v) != Some(1) {
                continue;
            }
            // η is constant on cosets of the line inside line^⊥
            if self.eval_unchecked(&v) == 0 {
                let mut rows = line.basis().row_vecs();
                rows.push(v);
                planes.push(Subspace::from_rows(f, &rows)?);
            }
        }
        planes.sort();
        Ok(planes)
    }
}

/// Δ(n, k): the ordered list of totally singular k-subspaces. A subspace's
/// position in this list is its codeword coordinate everywhere downstream.
#[derive(Debug, Clone)]
pub struct PolarGrassmannian {
    space: QuadraticSpace,
    k: usize,
    points: Vec<Subspace>,
}

impl PolarGrassmannian {
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Subspace> {
        self.points.get(i)
    }

    /// Position of `s` in the list.
    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.points.binary_search(s).ok()
    }
}

/// Number of totally singular k-subspaces of Q(2n, q):
/// `Π_{i<k} (q^{2(n-i)} - 1) / (q^{i+1} - 1)`.
pub fn count_formula(n: usize, k: usize, q: u32) -> u128 {
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k as u32 {
        num *= q.pow(2 * (n as u32 - i)) - 1;
        den *= q.pow(i + 1) - 1;
    }
    assert_eq!(num % den, 0, "count formula division must be exact");
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, q: u32) -> QuadraticSpace {
        QuadraticSpace::new(n, q).unwrap()
    }

    fn unit(dim: usize, i: usize) -> Vec<Elem> {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    }

    #[test]
    fn eval_examples() {
        let s = space(3, 3);
        assert_eq!(s.eval(&unit(7, 0)).unwrap(), 1);
        assert_eq!(s.eval(&unit(7, 1)).unwrap(), 0);
        assert_eq!(s.eval(&[0, 1, 1, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(s.eval(&[1, 1, 1, 0, 0, 0, 0]).unwrap(), 2);
        assert!(matches!(s.eval(&[0; 5]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn singularity_examples() {
        let s = space(3, 3);
        let f = s.field();
        let sub = |rows: &[Vec<Elem>]| Subspace::from_rows(f, rows).unwrap();
        assert!(s.is_totally_singular(&sub(&[unit(7, 1), unit(7, 3)])));
        assert!(!s.is_totally_singular(&sub(&[unit(7, 0)])));
        assert!(!s.is_totally_singular(&sub(&[unit(7, 1), unit(7, 2)])));
    }

    #[test]
    fn polarization_identity_on_basis() {
        for q in [2, 3, 4, 5, 9] {
            let s = space(3, q);
            let f = s.field();
            for i in 0..7 {
                for j in 0..7 {
                    let (x, y) = (unit(7, i), unit(7, j));
                    let sum: Vec<Elem> = x.iter().zip(&y).map(|(a, b)| f.add(*a, *b)).collect();
                    let expect = f.sub(f.sub(s.eval_unchecked(&sum), s.eval_unchecked(&x)), s.eval_unchecked(&y));
                    assert_eq!(s.polar_unchecked(&x, &y), expect);
                    assert_eq!(s.polar_matrix().get(i, j), expect);
                }
            }
        }
    }

    #[test]
    fn count_formula_values() {
        assert_eq!(count_formula(3, 2, 3), 3640);
        assert_eq!(count_formula(2, 2, 2), 15);
        assert_eq!(count_formula(2, 0, 7), 1);
        assert_eq!(count_formula(2, 1, 2), 15);
        assert_eq!(count_formula(3, 3, 2), 135);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(space(2, 2).enumerate_totally_singular(1).unwrap().len(), 15);
        assert_eq!(space(2, 3).enumerate_totally_singular(2).unwrap().len(), 40);
        assert_eq!(space(3, 2).enumerate_totally_singular(3).unwrap().len(), 135);
        assert!(space(2, 3).enumerate_totally_singular(3).is_err());
        assert!(space(2, 3).enumerate_totally_singular(0).is_err());
    }

    #[test]
    fn witt_index_is_n() {
        for (n, q) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
            let s = space(n, q);
            assert!(!s.singular_subspaces(n).is_empty());
            assert!(s.singular_subspaces(n + 1).is_empty());
        }
    }

    #[test]
    fn complement_check_small() {
        // every RREF k-subspace outside the list must fail the singularity test,
        // judged by evaluating η on all of its vectors
        for q in [2, 3] {
            let s = space(2, q);
            for k in 1..=2 {
                let listed = s.enumerate_totally_singular(k).unwrap();
                let all = enumerate_rref(s.field(), 5, k, |_, _| true);
                let brute: Vec<Subspace> =
                    all.into_iter().filter(|sub| sub.vectors().iter().all(|v| s.eval_unchecked(v) == 0)).collect();
                assert_eq!(listed.points(), &brute[..], "q={q} k={k}");
            }
        }
    }

    #[test]
    fn perp_examples() {
        let s3 = space(3, 3);
        assert_eq!(s3.radical().dim(), 0);
        let s2 = space(3, 4);
        let rad = s2.radical();
        assert_eq!(rad.dim(), 1);
        assert_eq!(rad.row(0), &unit(7, 0)[..]);

        let e1 = Subspace::from_rows(s3.field(), &[unit(7, 1)]).unwrap();
        let p = s3.perp(&e1);
        assert_eq!(p.dim(), 6);
        assert!(p.vectors().iter().all(|v| v[2] == 0));

        let line = Subspace::from_rows(s3.field(), &[vec![1, 1, 1, 0, 0, 0, 0], unit(7, 3)]).unwrap();
        assert_eq!(s3.perp(&line).dim(), 5);
    }

    fn planes_oracle(s: &QuadraticSpace, line: &Subspace) -> Vec<Subspace> {
        let f = s.field();
        let mut out: Vec<Subspace> = Vec::new();
        for v in Subspace::span(&MatrixGF::identity(f, s.dim())).vectors() {
            let mut rows = line.basis().row_vecs();
            rows.push(v);
            if let Ok(p) = Subspace::from_rows(f, &rows) {
                if p.vectors().iter().all(|x| s.eval_unchecked(x) == 0) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn planes_through_line_matches_brute_force() {
        for (q, expect) in [(2, 3), (3, 4)] {
            let s = space(3, q);
            let lines = s.enumerate_totally_singular(2).unwrap();
            let step = (lines.len() / 25).max(1);
            for line in lines.points().iter().step_by(step) {
                let planes = s.planes_through_line(line).unwrap();
                assert_eq!(planes.len(), expect);
                assert_eq!(planes, planes_oracle(&s, line));
                for (i, a) in planes.iter().enumerate() {
                    for b in &planes[i + 1..] {
                        assert_eq!(&a.meet(b), line);
                    }
                }
            }
        }
    }

    #[test]
    fn planes_through_line_low_rank_is_empty() {
        let s = space(2, 5);
        let lines = s.enumerate_totally_singular(2).unwrap();
        assert!(s.planes_through_line(&lines.points()[0]).unwrap().is_empty());
        let bad = Subspace::from_rows(s.field(), &[unit(5, 1), unit(5, 2)]).unwrap();
        assert!(s.planes_through_line(&bad).is_err());
    }

    #[test]
    fn lines_meet_plane_union_in_at_most_one_plane() {
        let s = space(3, 2);
        let lines = s.enumerate_totally_singular(2).unwrap();
        for line in lines.points().iter().step_by(7) {
            let planes = s.planes_through_line(line).unwrap();
            for other in lines.points() {
                if other == line {
                    continue;
                }
                let holders = planes.iter().filter(|p| p.contains(other)).count();
                assert!(holders <= 1);
            }
        }
    }
}
