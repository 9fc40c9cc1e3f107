//! Position-local encoding and plane-vote local correction for line codes.
//!
//! A message of length `C(2n+1, 2)` is read as an alternating form
//! `m(x, y) = Σ_{i<j} m_ij (x_i y_j - x_j y_i)`. The codeword entry at
//! position `i` is `m(A, B)` for the RREF basis `A, B` of the `i`-th line, so
//! one position is encoded from one unrank and no generator matrix.
//!
//! For correction, each totally singular plane `P = ⟨A, B, C⟩` through the
//! line gives one vote. With `A + C, B` and `C, B` spanning two other lines of
//! `P`, bilinearity gives `m(A, B) = m(A + C, B) - m(C, B)`. Those two values
//! are the received entries at the lines' positions, up to the determinant
//! taking the listed pair to the RREF basis, which the vote stores.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::enumerative::PrefixCounter;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::pluecker::{binomial, tuples, wedge};
use crate::quadric::{count_formula, QuadraticSpace};
use crate::subspace::{normalize, Subspace};

/// Alternating bilinear form on GF(q)^dim given by its coefficients `m_ij`,
/// `i < j`, in lexicographic pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    field: &'static FieldTable,
    dim: usize,
    coeffs: Vec<Elem>,
}

impl AlternatingForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `m(x, y)`.
    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        let f = self.field;
        let mut acc = 0;
        let mut t = 0;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let c = self.coeffs[t];
                t += 1;
                if c != 0 {
                    let minor = f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
                    acc = f.add(acc, f.mul(c, minor));
                }
            }
        }
        Ok(acc)
    }
}

/// A received line-code word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    n: usize,
    q: u32,
    values: Vec<Elem>,
}

impl ReceivedWord {
    pub fn new(n: usize, q: u32, values: Vec<Elem>) -> Result<Self> {
        let len = count_formula(n, 2, q) as usize;
        if values.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v as u32 >= q) {
            return Err(Error::InvalidElement { value: v as u32, q });
        }
        Ok(ReceivedWord { n, q, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }
}

/// One plane vote for a position: `c_i = s1 · r[j1] - s2 · r[j2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vote {
    pub plane: Subspace,
    pub positions: [u64; 2],
    pub scales: [Elem; 2],
}

impl Vote {
    pub fn estimate(&self, field: &FieldTable, values: &[Elem]) -> Elem {
        let [j1, j2] = self.positions;
        let [s1, s2] = self.scales;
        field.sub(field.mul(s1, values[j1 as usize]), field.mul(s2, values[j2 as usize]))
    }
}

/// Outcome of correcting one position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Recovery {
    /// A unique plurality value.
    Value { value: Elem, votes_for: usize, votes_against: usize },
    /// Several values share the top vote count.
    Tie { candidates: Vec<Elem>, votes_each: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Change {
    pub position: u64,
    pub old: Elem,
    pub new: Elem,
    pub votes_for: usize,
    pub votes_against: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tie {
    pub position: u64,
    pub value: Elem,
}

/// Changed and tied positions from [`LineCodec::correct_all`]; tied
/// positions keep their received value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorrectionReport {
    pub changes: Vec<Change>,
    pub ties: Vec<Tie>,
}

/// Encoder and local corrector for the line code P(n, 2, q).
#[derive(Debug)]
pub struct LineCodec {
    counter: PrefixCounter,
    votes: OnceLock<Vec<Vec<Vote>>>,
}

impl LineCodec {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let counter = PrefixCounter::new(QuadraticSpace::new(n, q)?)?;
        Ok(LineCodec { counter, votes: OnceLock::new() })
    }

    pub fn space(&self) -> &QuadraticSpace {
        self.counter.space()
    }

    pub fn counter(&self) -> &PrefixCounter {
        &self.counter
    }

    pub fn field(&self) -> &'static FieldTable {
        self.space().field()
    }

    /// Code length N.
    pub fn length(&self) -> u64 {
        self.counter.total()
    }

    /// Message length `C(2n+1, 2)`.
    pub fn message_len(&self) -> usize {
        binomial(self.space().dim(), 2)
    }

    /// Number of plane votes per position, `(q^{2(n-2)} - 1)/(q - 1)`; 0 below rank 3.
    pub fn votes_per_position(&self) -> u64 {
        let (n, q) = (self.space().n() as u32, self.space().q() as u64);
        if n < 3 {
            0
        } else {
            (q.pow(2 * (n - 2)) - 1) / (q - 1)
        }
    }

    pub fn message_to_form(&self, msg: &[Elem]) -> Result<AlternatingForm> {
        if msg.len() != self.message_len() {
            return Err(Error::DimensionMismatch { expected: self.message_len(), got: msg.len() });
        }
        let q = self.space().q();
        if let Some(&v) = msg.iter().find(|&&v| v as u32 >= q) {
            return Err(Error::InvalidElement { value: v as u32, q });
        }
        Ok(AlternatingForm { field: self.field(), dim: self.space().dim(), coeffs: msg.to_vec() })
    }

    /// Codeword entry at `position`: `m(A, B)` on the RREF basis of that line.
    pub fn local_encode_position(&self, form: &AlternatingForm, position: u64) -> Result<Elem> {
        if form.dim != self.space().dim() || form.field.q() != self.space().q() {
            return Err(Error::DimensionMismatch { expected: self.space().dim(), got: form.dim });
        }
        let line = self.counter.unrank(position)?;
        form.eval(line.row(0), line.row(1))
    }

    /// Every codeword entry, by position-local encoding.
    pub fn encode(&self, form: &AlternatingForm) -> Result<Vec<Elem>> {
        (0..self.length()).map(|i| self.local_encode_position(form, i)).collect()
    }

    /// Plane votes for `position`; empty when the rank is below 3.
    pub fn recovery_sets(&self, position: u64) -> Result<Vec<Vote>> {
        let line = self.counter.unrank(position)?;
        let space = self.space();
        let f = self.field();
        let (a, b) = (line.row(0).to_vec(), line.row(1).to_vec());
        let pivots = line.pivots();
        let mut votes = Vec::new();
        for plane in space.planes_through_line(&line)? {
            let c = completion(f, &line, &pivots, &plane);
            let a_plus_c: Vec<Elem> = a.iter().zip(&c).map(|(&x, &y)| f.add(x, y)).collect();
            let (j1, s1) = self.rank_with_scale(&[a_plus_c, b.clone()])?;
            let (j2, s2) = self.rank_with_scale(&[c, b.clone()])?;
            votes.push(Vote { plane, positions: [j1, j2], scales: [s1, s2] });
        }
        Ok(votes)
    }

    /// Position of the span of two rows, with the determinant taking the
    /// span's RREF basis to the given rows.
    fn rank_with_scale(&self, rows: &[Vec<Elem>]) -> Result<(u64, Elem)> {
        let f = self.field();
        let mut w = wedge(f, rows);
        let scale = normalize(f, &mut w).ok_or(Error::RankDeficient { expected: 2, got: 1 })?;
        let line = Subspace::from_rows(f, rows)?;
        Ok((self.counter.rank(&line)?, scale))
    }

    fn all_votes(&self) -> Result<&Vec<Vec<Vote>>> {
        if let Some(v) = self.votes.get() {
            return Ok(v);
        }
        let built = (0..self.length()).map(|i| self.recovery_sets(i)).collect::<Result<Vec<_>>>()?;
        Ok(self.votes.get_or_init(|| built))
    }

    fn check_received(&self, received: &ReceivedWord) -> Result<()> {
        if self.space().n() < 3 {
            return Err(Error::LocalCorrectionUnavailable(self.space().n()));
        }
        if received.n != self.space().n() || received.q != self.space().q() {
            return Err(Error::InvalidParameters(format!(
                "received word is for ({}, {}), codec is for ({}, {})",
                received.n,
                received.q,
                self.space().n(),
                self.space().q()
            )));
        }
        Ok(())
    }

    fn recover(&self, votes: &[Vote], values: &[Elem]) -> Recovery {
        let f = self.field();
        let mut tally: BTreeMap<Elem, usize> = BTreeMap::new();
        for v in votes {
            *tally.entry(v.estimate(f, values)).or_default() += 1;
        }
        let top = tally.values().copied().max().unwrap_or(0);
        let candidates: Vec<Elem> = tally.iter().filter(|(_, &c)| c == top).map(|(&v, _)| v).collect();
        if candidates.len() == 1 {
            Recovery::Value { value: candidates[0], votes_for: top, votes_against: votes.len() - top }
        } else {
            Recovery::Tie { candidates, votes_each: top }
        }
    }

    /// Plurality of the plane votes at `position`; the received value there
    /// does not vote.
    pub fn local_correct_position(&self, received: &ReceivedWord, position: u64) -> Result<Recovery> {
        self.check_received(received)?;
        let votes = match self.votes.get() {
            Some(all) => {
                let len = self.length();
                let v = all.get(position as usize).ok_or(Error::IndexOutOfRange { index: position, len })?;
                std::borrow::Cow::Borrowed(v)
            }
            None => std::borrow::Cow::Owned(self.recovery_sets(position)?),
        };
        Ok(self.recover(&votes, &received.values))
    }

    /// Corrects every position in one pass over the original received values.
    pub fn correct_all(&self, received: &ReceivedWord) -> Result<(Vec<Elem>, CorrectionReport)> {
        self.check_received(received)?;
        let all = self.all_votes()?;
        let mut out = received.values.clone();
        let mut report = CorrectionReport::default();
        for (i, votes) in all.iter().enumerate() {
            let old = received.values[i];
            match self.recover(votes, &received.values) {
                Recovery::Value { value, votes_for, votes_against } => {
                    if value != old {
                        out[i] = value;
                        report.changes.push(Change { position: i as u64, old, new: value, votes_for, votes_against });
                    }
                }
                Recovery::Tie { .. } => report.ties.push(Tie { position: i as u64, value: old }),
            }
        }
        Ok((out, report))
    }
}

/// The vector of `plane` with zeros on the line's pivot columns and leading 1.
fn completion(f: &FieldTable, line: &Subspace, pivots: &[usize], plane: &Subspace) -> Vec<Elem> {
    for r in 0..plane.dim() {
        let mut v = plane.row(r).to_vec();
        for (i, &p) in pivots.iter().enumerate() {
            let c = v[p];
            f.axpy(&mut v, f.neg(c), line.row(i));
        }
        if normalize(f, &mut v).is_some() {
            return v;
        }
    }
    unreachable!("a plane through the line has a vector outside it")
}

/// Coefficient index of the pair `(i, j)`, `i < j`, in a message of dimension `dim`.
pub fn pair_index(i: usize, j: usize, dim: usize) -> Option<usize> {
    tuples(2, dim).iter().position(|t| t[0] == i && t[1] == j)
}
