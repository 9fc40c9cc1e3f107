//! The projective code P(n, k, q) of the Plücker-embedded polar Grassmannian.

use std::collections::HashSet;

use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::matrix::MatrixGF;
use crate::pluecker::{binomial, pluecker_with_scale};
use crate::quadric::{PolarGrassmannian, QuadraticSpace};

/// What is known about the minimum distance, and where each number came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceBounds {
    pub exact: Option<u64>,
    pub lower: u64,
    pub lower_source: String,
    pub upper: Option<u64>,
    pub upper_source: String,
}

/// Linear code whose generator columns are the normalized Plücker points of
/// the totally singular k-subspaces, in enumeration order.
#[derive(Debug, Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    points: PolarGrassmannian,
    generator: MatrixGF,
    column_scales: Vec<Elem>,
    basis: MatrixGF,
    info_set: Vec<usize>,
    distance: DistanceBounds,
}

impl LinearCode {
    /// Builds P(n, k, q) for `1 <= k <= n`.
    pub fn build(n: usize, k: usize, q: u32) -> Result<Self> {
        let space = QuadraticSpace::new(n, q)?;
        let points = space.enumerate_totally_singular(k)?;
        let f = space.field();
        let rows = binomial(space.dim(), k);
        let len = points.len();

        let mut generator = MatrixGF::zeros(f, rows, len);
        let mut column_scales = Vec::with_capacity(len);
        let mut seen = HashSet::with_capacity(len);
        for (j, s) in points.points().iter().enumerate() {
            let (pv, scale) = pluecker_with_scale(s)?;
            if !seen.insert(pv.coords.clone()) {
                return Err(Error::DegenerateColumns(format!("duplicate column at position {j}")));
            }
            for (r, &c) in pv.coords.iter().enumerate() {
                generator.set(r, j, c);
            }
            column_scales.push(scale);
        }
        Self::from_generator(points, generator, column_scales)
    }

    /// Assembles a code from an explicit generator, e.g. one read back from a file.
    /// The generator must have `C(2n+1, k)` rows, one column per point and no
    /// zero or repeated projective columns.
    pub fn from_generator(points: PolarGrassmannian, generator: MatrixGF, column_scales: Vec<Elem>) -> Result<Self> {
        let space = points.space();
        let (n, k) = (space.n(), points.k());
        let rows = binomial(space.dim(), k);
        if generator.rows() != rows {
            return Err(Error::DimensionMismatch { expected: rows, got: generator.rows() });
        }
        if generator.cols() != points.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: generator.cols() });
        }
        if generator.field().q() != space.q() {
            return Err(Error::InvalidParameters("generator field differs from the code field".into()));
        }
        check_projective_columns(&generator)?;
        let r = generator.rref();
        let basis = r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>());
        let distance = default_bounds(n, k, space.q());
        Ok(LinearCode { n, k, points, generator, column_scales, basis, info_set: r.pivots, distance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn field(&self) -> &'static FieldTable {
        self.generator.field()
    }

    pub fn space(&self) -> &QuadraticSpace {
        self.points.space()
    }

    pub fn points(&self) -> &PolarGrassmannian {
        &self.points
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.generator
    }

    /// Code length N.
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// Code dimension K (rank of the generator).
    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    /// Number of message coordinates accepted by [`encode`](Self::encode): `C(2n+1, k)`.
    pub fn message_len(&self) -> usize {
        self.generator.rows()
    }

    /// Per-column scalar `c_j`: the wedge of the RREF basis of point `j` equals
    /// `c_j` times generator column `j`.
    pub fn column_scales(&self) -> &[Elem] {
        &self.column_scales
    }

    /// K independent generator rows spanning the code (the RREF of the generator).
    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    /// Information set: K columns on which the basis is the identity.
    pub fn information_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn distance(&self) -> &DistanceBounds {
        &self.distance
    }

    pub(crate) fn distance_mut(&mut self) -> &mut DistanceBounds {
        &mut self.distance
    }

    /// `msg · G` for a message of length `C(2n+1, k)`.
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.message_len() {
            return Err(Error::DimensionMismatch { expected: self.message_len(), got: msg.len() });
        }
        Ok(combine_rows(&self.generator, msg))
    }

    /// Codeword for coordinates relative to [`basis`](Self::basis).
    pub fn encode_basis(&self, coeffs: &[Elem]) -> Result<Vec<Elem>> {
        if coeffs.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: coeffs.len() });
        }
        Ok(combine_rows(&self.basis, coeffs))
    }

    /// Number of points outside the hyperplane `ker f`, i.e. the weight of `f · G`.
    pub fn weight_of_functional(&self, f: &[Elem]) -> Result<usize> {
        Ok(weight(&self.encode(f)?))
    }

    /// Number of points on the hyperplane `ker f`.
    pub fn hyperplane_section(&self, f: &[Elem]) -> Result<usize> {
        Ok(self.length() - self.weight_of_functional(f)?)
    }

    /// Left kernel of the generator: messages that encode to the zero word.
    pub fn message_kernel(&self) -> MatrixGF {
        self.generator.transpose().kernel()
    }

    /// Replaces the generator (keeping the points), for mutation testing and
    /// for checking externally supplied matrices.
    pub fn with_generator(&self, generator: MatrixGF) -> Result<Self> {
        Self::from_generator(self.points.clone(), generator, self.column_scales.clone())
    }
}

/// Hamming weight.
pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// `Σ coeffs[r] · rows[r]`; prime fields accumulate in integers and reduce once.
pub(crate) fn combine_rows(m: &MatrixGF, coeffs: &[Elem]) -> Vec<Elem> {
    let f = m.field();
    if f.is_prime_field() {
        let p = f.p();
        let mut acc = vec![0u32; m.cols()];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as u32;
            for (a, &x) in acc.iter_mut().zip(m.row(r)) {
                *a += c * x as u32;
            }
        }
        acc.into_iter().map(|a| (a % p) as Elem).collect()
    } else {
        let mut out = vec![0; m.cols()];
        for (r, &c) in coeffs.iter().enumerate() {
            f.axpy(&mut out, c, m.row(r));
        }
        out
    }
}

fn check_projective_columns(g: &MatrixGF) -> Result<()> {
    let f = g.field();
    let mut seen = HashSet::with_capacity(g.cols());
    for j in 0..g.cols() {
        let mut col = g.column(j);
        if crate::subspace::normalize(f, &mut col).is_none() {
            return Err(Error::DegenerateColumns(format!("zero column at position {j}")));
        }
        if !seen.insert(col) {
            return Err(Error::DegenerateColumns(format!(
                "column at position {j} is a scalar multiple of an earlier column"
            )));
        }
    }
    Ok(())
}

fn default_bounds(n: usize, k: usize, q: u32) -> DistanceBounds {
    match bounds::mt1_distance_bound(n, k, q) {
        Ok(b) => DistanceBounds {
            exact: None,
            lower: b as u64,
            lower_source: "spread bound with guaranteed psi".into(),
            upper: None,
            upper_source: String::new(),
        },
        Err(_) => DistanceBounds {
            exact: None,
            lower: 1,
            lower_source: "trivial".into(),
            upper: None,
            upper_source: String::new(),
        },
    }
}
