//! Plücker coordinates of k-subspaces in ∧^k V.
//!
//! Coordinates are indexed by strictly increasing k-tuples of column indices
//! in lexicographic order; the coordinate at tuple `T` is the minor of the basis
//! matrix on the columns `T`. Points are normalized so that the first nonzero
//! coordinate is 1.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::subspace::{normalize, Subspace};

/// Normalized Plücker vector of a k-subspace of GF(q)^dim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlueckerVector {
    pub k: usize,
    pub dim: usize,
    pub coords: Vec<Elem>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Lexicographic rank of an increasing tuple among k-subsets of `0..dim`.
pub fn tuple_index(tuple: &[usize], dim: usize) -> Result<usize> {
    let k = tuple.len();
    if tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.last().is_some_and(|&t| t >= dim) {
        return Err(Error::InvalidParameters(format!("{tuple:?} is not an increasing tuple in 0..{dim}")));
    }
    let mut idx = 0;
    let mut start = 0;
    for (i, &t) in tuple.iter().enumerate() {
        for v in start..t {
            idx += binomial(dim - 1 - v, k - 1 - i);
        }
        start = t + 1;
    }
    Ok(idx)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(mut index: usize, k: usize, dim: usize) -> Result<Vec<usize>> {
    let total = binomial(dim, k);
    if index >= total {
        return Err(Error::IndexOutOfRange { index: index as u64, len: total as u64 });
    }
    let mut out = Vec::with_capacity(k);
    let mut v = 0;
    for i in 0..k {
        loop {
            let block = binomial(dim - 1 - v, k - 1 - i);
            if index < block {
                break;
            }
            index -= block;
            v += 1;
        }
        out.push(v);
        v += 1;
    }
    Ok(out)
}

/// All increasing k-tuples of `0..dim`, in coordinate order.
pub fn tuples(k: usize, dim: usize) -> Vec<Vec<usize>> {
    crate::subspace::k_subsets(dim, k)
}

/// Determinant of a square matrix given as rows.
pub fn determinant(field: &FieldTable, m: &[Vec<Elem>]) -> Elem {
    let f = field;
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0])),
        3 => {
            let minor = |a: usize, b: usize| f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][b], m[2][a]));
            let t0 = f.mul(m[0][0], minor(1, 2));
            let t1 = f.mul(m[0][1], minor(0, 2));
            let t2 = f.mul(m[0][2], minor(0, 1));
            f.add(f.sub(t0, t1), t2)
        }
        n => {
            let mut a: Vec<Vec<Elem>> = m.to_vec();
            let mut det = 1;
            for c in 0..n {
                let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
                    return 0;
                };
                if p != c {
                    a.swap(p, c);
                    det = f.neg(det);
                }
                det = f.mul(det, a[c][c]);
                let inv = f.inv(a[c][c]);
                for r in c + 1..n {
                    let factor = f.mul(a[r][c], inv);
                    if factor != 0 {
                        let pivot = a[c].clone();
                        f.axpy(&mut a[r], f.neg(factor), &pivot);
                    }
                }
            }
            det
        }
    }
}

/// Un-normalized coordinates `v1 ∧ ... ∧ vk` of the given rows.
pub fn wedge(field: &FieldTable, rows: &[Vec<Elem>]) -> Vec<Elem> {
    let k = rows.len();
    let dim = rows.first().map_or(0, Vec::len);
    tuples(k, dim)
        .iter()
        .map(|t| {
            let sub: Vec<Vec<Elem>> = rows.iter().map(|r| t.iter().map(|&c| r[c]).collect()).collect();
            determinant(field, &sub)
        })
        .collect()
}

/// Normalized Plücker point of a subspace.
pub fn pluecker(s: &Subspace) -> Result<PlueckerVector> {
    let (coords, _) = pluecker_with_scale(s)?;
    Ok(coords)
}

/// Normalized Plücker point together with the scalar `c` such that the raw
/// wedge of the stored basis equals `c` times the normalized vector.
pub fn pluecker_with_scale(s: &Subspace) -> Result<(PlueckerVector, Elem)> {
    let f = s.field();
    let mut coords = wedge(f, &s.basis().row_vecs());
    let scale = normalize(f, &mut coords).ok_or(Error::RankDeficient { expected: s.dim(), got: 0 })?;
    Ok((PlueckerVector { k: s.dim(), dim: s.ambient_dim(), coords }, scale))
}

/// Plücker point of the span of arbitrary rows; rank-deficient input is rejected.
pub fn pluecker_of_rows(field: &FieldTable, rows: &[Vec<Elem>]) -> Result<PlueckerVector> {
    let k = rows.len();
    let dim = rows.first().map_or(0, Vec::len);
    let mut coords = wedge(field, rows);
    if normalize(field, &mut coords).is_none() {
        return Err(Error::RankDeficient { expected: k, got: k.saturating_sub(1) });
    }
    Ok(PlueckerVector { k, dim, coords })
}
