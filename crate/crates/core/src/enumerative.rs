//! Enumerative coding of the totally singular lines of Q(2n, q).
//!
//! Lines are ordered lexicographically by the 2(2n+1) entries of their RREF
//! basis read row-major, the same order as
//! [`QuadraticSpace::enumerate_totally_singular`]. `rank` and `unrank` walk the
//! prefix tree of that order using [`PrefixCounter`], which counts the lines
//! extending a given prefix without listing them.
//!
//! Counting: write the basis as rows `A`, `B`. A line is totally singular iff
//! `η(A) = η(B) = B(A, B) = 0`, and each of the three values is a sum of
//! contributions from the coordinate blocks `{0}, {1,2}, {3,4}, …`. A dynamic
//! program over the blocks tracks the partial sums in GF(q)^3 together with the
//! RREF shape (whether each row has passed its pivot yet), so one count costs
//! `O(n · q^3 · q^4)` table operations at worst, and far less once the prefix
//! fixes most entries.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::matrix::MatrixGF;
use crate::quadric::{count_formula, QuadraticSpace};
use crate::subspace::Subspace;

/// A partial RREF description: optionally the pivot columns `(a, b)` of the
/// two rows, and a leading run of entries in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Prefix {
    pub pivots: Option<(usize, usize)>,
    pub entries: Vec<Elem>,
}

impl Prefix {
    pub fn entries(entries: &[Elem]) -> Self {
        Prefix { pivots: None, entries: entries.to_vec() }
    }
}

/// Memoized counter of totally singular lines extending a prefix.
#[derive(Debug)]
pub struct PrefixCounter {
    space: QuadraticSpace,
    memo: RwLock<HashMap<Prefix, u64>>,
}

// RREF shape while scanning coordinates left to right
const BOTH_BEFORE_PIVOT: usize = 0;
const FIRST_PAST_PIVOT: usize = 1;
const BOTH_PAST_PIVOT: usize = 2;

impl PrefixCounter {
    pub fn new(space: QuadraticSpace) -> Result<Self> {
        if space.n() < 2 {
            return Err(Error::InvalidParameters("lines need Witt index n >= 2".into()));
        }
        Ok(PrefixCounter { space, memo: RwLock::new(HashMap::new()) })
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// Number of lines N.
    pub fn total(&self) -> u64 {
        count_formula(self.space.n(), 2, self.space.q()) as u64
    }

    fn validate(&self, prefix: &Prefix) -> Result<()> {
        let d = self.space.dim();
        if prefix.entries.len() > 2 * d {
            return Err(Error::MalformedPrefix(format!(
                "{} entries given, a line has {}",
                prefix.entries.len(),
                2 * d
            )));
        }
        let q = self.space.q();
        if let Some(&bad) = prefix.entries.iter().find(|&&v| v as u32 >= q) {
            return Err(Error::MalformedPrefix(format!("entry {bad} is not in GF({q})")));
        }
        if let Some((a, b)) = prefix.pivots {
            if a >= b || b >= d {
                return Err(Error::MalformedPrefix(format!("pivot columns ({a}, {b}) invalid for dimension {d}")));
            }
        }
        Ok(())
    }

    /// Number of totally singular lines whose RREF basis extends `prefix`.
    pub fn count_prefix(&self, prefix: &Prefix) -> Result<u64> {
        self.validate(prefix)?;
        Ok(self.count_valid(prefix))
    }

    fn count_valid(&self, prefix: &Prefix) -> u64 {
        if prefix.pivots.is_none() && prefix.entries.is_empty() {
            return self.total();
        }
        if let Some(&c) = self.memo.read().expect("memo lock").get(prefix) {
            return c;
        }
        let c = self.count_dp(prefix);
        self.memo.write().expect("memo lock").insert(prefix.clone(), c);
        c
    }

    /// Copy of every memoized `(prefix, count)` pair.
    pub fn memo_snapshot(&self) -> Vec<(Prefix, u64)> {
        let memo = self.memo.read().expect("memo lock");
        memo.iter().map(|(p, &c)| (p.clone(), c)).collect()
    }

    fn count_dp(&self, prefix: &Prefix) -> u64 {
        let f = self.space.field();
        let q = f.q() as usize;
        let d = self.space.dim();
        let q3 = q * q * q;
        let allowed = |row: usize, col: usize| -> Option<Elem> { prefix.entries.get(row * d + col).copied() };

        let mut cur = vec![0u64; 3 * q3];
        cur[BOTH_BEFORE_PIVOT * q3] = 1;
        let mut next = vec![0u64; 3 * q3];

        let blocks: Vec<Vec<usize>> =
            std::iter::once(vec![0]).chain((1..=self.space.n()).map(|i| vec![2 * i - 1, 2 * i])).collect();

        for block in &blocks {
            next.iter_mut().for_each(|x| *x = 0);
            // enumerate (shape, values) paths through the block for each start shape
            for shape in 0..3 {
                let mut paths: Vec<(usize, Vec<(Elem, Elem)>)> = vec![(shape, Vec::new())];
                for &col in block {
                    let mut extended = Vec::new();
                    for (sh, vals) in &paths {
                        for x in candidates(allowed(0, col), q) {
                            for y in candidates(allowed(1, col), q) {
                                if let Some(nsh) = step_shape(*sh, col, x, y, prefix.pivots) {
                                    let mut v = vals.clone();
                                    v.push((x, y));
                                    extended.push((nsh, v));
                                }
                            }
                        }
                    }
                    paths = extended;
                }
                if paths.is_empty() {
                    continue;
                }
                // aggregate paths by (end shape, contribution)
                let mut contrib: HashMap<(usize, usize), u64> = HashMap::new();
                for (sh, vals) in &paths {
                    let (ea, eb, eab) = block_contribution(f, vals);
                    *contrib.entry((*sh, (ea as usize * q + eb as usize) * q + eab as usize)).or_default() += 1;
                }
                for s in 0..q3 {
                    let cnt = cur[shape * q3 + s];
                    if cnt == 0 {
                        continue;
                    }
                    let (sa, sb, sab) = ((s / (q * q)) as Elem, ((s / q) % q) as Elem, (s % q) as Elem);
                    for (&(nsh, c), &mult) in &contrib {
                        let (ca, cb, cab) = ((c / (q * q)) as Elem, ((c / q) % q) as Elem, (c % q) as Elem);
                        let ns = (f.add(sa, ca) as usize * q + f.add(sb, cb) as usize) * q + f.add(sab, cab) as usize;
                        next[nsh * q3 + ns] += cnt * mult;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        cur[BOTH_PAST_PIVOT * q3]
    }

    /// The line at position `index` of the lexicographic order.
    pub fn unrank(&self, index: u64) -> Result<Subspace> {
        let total = self.total();
        if index >= total {
            return Err(Error::IndexOutOfRange { index, len: total });
        }
        let d = self.space.dim();
        let q = self.space.q() as Elem;
        let mut rest = index;
        let mut prefix = Prefix::default();
        for _ in 0..2 * d {
            let mut chosen = false;
            for v in 0..q {
                prefix.entries.push(v);
                let c = self.count_valid(&prefix);
                if rest < c {
                    chosen = true;
                    break;
                }
                rest -= c;
                prefix.entries.pop();
            }
            assert!(chosen, "prefix counts must cover the index");
        }
        let basis = MatrixGF::from_vec(self.space.field(), 2, d, prefix.entries).expect("valid entries");
        Ok(Subspace::from_rref_unchecked(basis))
    }

    /// Position of a totally singular line in the lexicographic order.
    pub fn rank(&self, line: &Subspace) -> Result<u64> {
        let d = self.space.dim();
        if line.dim() != 2 || line.ambient_dim() != d {
            return Err(Error::DimensionMismatch { expected: 2 * d, got: line.dim() * line.ambient_dim() });
        }
        if line.field().q() != self.space.q() {
            return Err(Error::InvalidParameters("line is over a different field".into()));
        }
        if !self.space.is_totally_singular(line) {
            return Err(Error::NotTotallySingular);
        }
        let entries = line.basis().data();
        let mut index = 0;
        let mut prefix = Prefix::default();
        for &e in entries {
            for v in 0..e {
                prefix.entries.push(v);
                index += self.count_valid(&prefix);
                prefix.entries.pop();
            }
            prefix.entries.push(e);
        }
        Ok(index)
    }
}

fn candidates(fixed: Option<Elem>, q: usize) -> std::ops::Range<Elem> {
    match fixed {
        Some(v) => v..v + 1,
        None => 0..q as Elem,
    }
}

/// Advances the RREF shape by one coordinate holding `x` in the first row and
/// `y` in the second; `None` if the values break the echelon shape.
fn step_shape(shape: usize, col: usize, x: Elem, y: Elem, pivots: Option<(usize, usize)>) -> Option<usize> {
    let (pa, pb) = match pivots {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    match shape {
        BOTH_BEFORE_PIVOT => {
            if y != 0 {
                return None;
            }
            match x {
                0 if pa != Some(col) => Some(BOTH_BEFORE_PIVOT),
                1 if pa.is_none_or(|a| a == col) => Some(FIRST_PAST_PIVOT),
                _ => None,
            }
        }
        FIRST_PAST_PIVOT => match y {
            0 if pb != Some(col) => Some(FIRST_PAST_PIVOT),
            1 if x == 0 && pb.is_none_or(|b| b == col) => Some(BOTH_PAST_PIVOT),
            _ => None,
        },
        _ => Some(BOTH_PAST_PIVOT),
    }
}

/// Contribution of one coordinate block to `(η(A), η(B), B(A, B))`.
fn block_contribution(f: &FieldTable, vals: &[(Elem, Elem)]) -> (Elem, Elem, Elem) {
    match vals {
        [(x, y)] => {
            let xy = f.mul(*x, *y);
            (f.mul(*x, *x), f.mul(*y, *y), f.add(xy, xy))
        }
        [(x1, y1), (x2, y2)] => (f.mul(*x1, *x2), f.mul(*y1, *y2), f.add(f.mul(*x1, *y2), f.mul(*x2, *y1))),
        _ => unreachable!("blocks have one or two coordinates"),
    }
}
