//! Minimum distance and weight distribution by exhaustive Gray-code traversal,
//! plus witness searches that give upper bounds when exhaustion is infeasible.
//!
//! Exhaustion runs over the q^K messages of an information set: consecutive
//! messages in the base-q reflected Gray order differ in one digit, so each
//! step adds one scaled basis row to the running codeword and updates the
//! weight incrementally. Binary codes are bit-packed.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{combine_rows, weight, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::pluecker::{binomial, tuple_index};
use crate::subspace::enumerate_rref;

/// Default cap on Gray-code steps (`q^K`).
pub const DEFAULT_BUDGET: u64 = 1 << 30;

/// Visits the base-`radix` reflected Gray sequence of length `digits`.
/// `step(j, old, new)` is called for each of the `radix^digits - 1` moves,
/// where digit `j` changes from `old` to `new` (always by ±1).
pub fn gray_walk<F: FnMut(usize, u32, u32)>(radix: u32, digits: usize, mut step: F) {
    if digits == 0 || radix < 2 {
        return;
    }
    let mut a = vec![0u32; digits];
    let mut up = vec![true; digits];
    let mut focus: Vec<usize> = (0..=digits).collect();
    loop {
        let j = focus[0];
        focus[0] = 0;
        if j == digits {
            break;
        }
        let old = a[j];
        a[j] = if up[j] { old + 1 } else { old - 1 };
        step(j, old, a[j]);
        if a[j] == 0 || a[j] == radix - 1 {
            up[j] = !up[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
    }
}

/// Number of Gray steps needed for a code, saturating.
pub fn required_steps(code: &LinearCode) -> u128 {
    (code.q() as u128).checked_pow(code.dimension() as u32).unwrap_or(u128::MAX)
}

fn check_budget(code: &LinearCode, budget: u64) -> Result<()> {
    let required = required_steps(code);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Runs the Gray traversal over the code basis, calling `visit(weight)` for every
/// codeword (the zero word first).
fn traverse<V: FnMut(usize)>(code: &LinearCode, mut visit: V) {
    let basis = code.basis();
    let f = code.field();
    let kdim = basis.rows();
    let len = basis.cols();
    visit(0);
    if kdim == 0 {
        return;
    }
    if f.q() == 2 {
        let words = len.div_ceil(64);
        let packed: Vec<Vec<u64>> = (0..kdim)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &x) in basis.row(r).iter().enumerate() {
                    if x != 0 {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect();
        let mut cw = vec![0u64; words];
        gray_walk(2, kdim, |j, _, _| {
            let mut wt = 0u32;
            for (x, r) in cw.iter_mut().zip(&packed[j]) {
                *x ^= r;
                wt += x.count_ones();
            }
            visit(wt as usize);
        });
        return;
    }

    let q = f.q() as usize;
    // scaled[r][s] = s · basis row r
    let scaled: Vec<Vec<Vec<Elem>>> = (0..kdim)
        .map(|r| (0..q).map(|s| basis.row(r).iter().map(|&x| f.mul(s as Elem, x)).collect()).collect())
        .collect();
    let add = f.add_table();
    let mut cw = vec![0 as Elem; len];
    let mut wt = 0usize;
    gray_walk(q as u32, kdim, |j, old, new| {
        let delta = f.sub(new as Elem, old as Elem);
        let row = &scaled[j][delta as usize];
        let mut gained = 0usize;
        let mut lost = 0usize;
        for (x, &s) in cw.iter_mut().zip(row) {
            let before = *x;
            let after = add[before as usize * q + s as usize];
            gained += (before == 0 && after != 0) as usize;
            lost += (before != 0 && after == 0) as usize;
            *x = after;
        }
        wt = wt + gained - lost;
        visit(wt);
    });
}

/// Exact minimum distance by exhaustive enumeration of the q^K messages.
pub fn min_distance_exhaustive(code: &LinearCode, budget: u64) -> Result<u64> {
    check_budget(code, budget)?;
    let mut best = usize::MAX;
    let mut first = true;
    traverse(code, |w| {
        if first {
            first = false;
            return;
        }
        best = best.min(w);
    });
    Ok(if best == usize::MAX { 0 } else { best as u64 })
}

/// Full weight distribution: `spectrum[w]` codewords of weight `w`.
pub fn weight_spectrum(code: &LinearCode, budget: u64) -> Result<Vec<u64>> {
    check_budget(code, budget)?;
    let mut counts = vec![0u64; code.length() + 1];
    traverse(code, |w| counts[w] += 1);
    Ok(counts)
}

/// Nonzero entries of a spectrum as `(weight, count)` pairs.
pub fn spectrum_pairs(spectrum: &[u64]) -> Vec<(usize, u64)> {
    spectrum.iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, &c)| (w, c)).collect()
}

/// Weight distribution of the dual code by the MacWilliams transform.
/// Fails if the transform does not produce nonnegative integers.
pub fn macwilliams_dual(spectrum: &[u64], q: u32) -> Result<Vec<BigInt>> {
    let len = spectrum.len() - 1;
    let size: BigInt = spectrum.iter().map(|&c| BigInt::from(c)).sum();
    let binom = |n: usize, k: usize| -> BigInt {
        if k > n {
            return BigInt::from(0);
        }
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    };
    let qm1 = BigInt::from(q - 1);
    let mut out = Vec::with_capacity(len + 1);
    for j in 0..=len {
        let mut total = BigInt::from(0);
        for (i, &a) in spectrum.iter().enumerate() {
            if a == 0 {
                continue;
            }
            // Krawtchouk K_j(i)
            let mut kraw = BigInt::from(0);
            for s in 0..=j.min(i) {
                let term = binom(i, s) * binom(len - i, j - s) * qm1.pow((j - s) as u32);
                if s % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            total += BigInt::from(a) * kraw;
        }
        if &total % &size != BigInt::from(0) || total < BigInt::from(0) {
            return Err(Error::InvalidParameters(format!(
                "MacWilliams transform is not a valid distribution at weight {j}"
            )));
        }
        out.push(total / &size);
    }
    Ok(out)
}

/// A functional on ∧²V found by a witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub weight: u64,
    /// Coefficients on the ∧²V coordinates.
    pub functional: Vec<Elem>,
    /// How many scanned forms attained `weight`.
    pub multiplicity: u64,
    pub scanned: u64,
}

/// Number of rank-2 alternating forms `f ∧ g` on V (two-dimensional subspaces of V*).
pub fn rank2_form_count(code: &LinearCode) -> u128 {
    crate::subspace::gaussian_binomial(code.space().dim() as u32, 2, code.q() as u64)
}

/// Scans every rank-2 alternating form `m(x, y) = f(x)g(y) - f(y)g(x)` on a line
/// code and returns the lightest nonzero codeword found. `budget` caps the
/// number of position evaluations (forms × N).
pub fn rank2_form_scan(code: &LinearCode, budget: u64) -> Result<Witness> {
    if code.k() != 2 {
        return Err(Error::InvalidParameters("rank-2 form scan is for line codes (k = 2)".into()));
    }
    let forms = rank2_form_count(code);
    let required = forms.saturating_mul(code.length() as u128);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let f = code.field();
    let dim = code.space().dim();
    let q = f.q() as usize;
    let lines = code.points().points();
    let len = lines.len();

    // evaluations of every normalized functional on both basis rows of every line
    let encode = |v: &[Elem]| v.iter().fold(0usize, |acc, &x| acc * q + x as usize);
    let mut slot = vec![usize::MAX; q.pow(dim as u32)];
    let mut evals: Vec<Vec<(Elem, Elem)>> = Vec::new();
    for point in enumerate_rref(f, dim, 1, |_, _| true) {
        let u = point.row(0);
        slot[encode(u)] = evals.len();
        evals.push(lines.iter().map(|l| (f.dot(u, l.row(0)), f.dot(u, l.row(1)))).collect());
    }

    let mut best: Option<Witness> = None;
    let mut scanned = 0u64;
    for plane in enumerate_rref(f, dim, 2, |_, _| true) {
        scanned += 1;
        let (ef, eg) = (&evals[slot[encode(plane.row(0))]], &evals[slot[encode(plane.row(1))]]);
        let mut w = 0u64;
        for j in 0..len {
            let (fa, fb) = ef[j];
            let (ga, gb) = eg[j];
            w += (f.mul(fa, gb) != f.mul(fb, ga)) as u64;
        }
        if w == 0 {
            // only possible in even characteristic, where one form lies in the kernel
            continue;
        }
        match &mut best {
            Some(b) if w > b.weight => {}
            Some(b) if w == b.weight => b.multiplicity += 1,
            _ => {
                best = Some(Witness {
                    weight: w,
                    functional: wedge_functional(f, plane.row(0), plane.row(1)),
                    multiplicity: 1,
                    scanned: 0,
                })
            }
        }
    }
    let mut best = best.ok_or_else(|| Error::InvalidParameters("no nonzero rank-2 form".into()))?;
    best.scanned = scanned;
    debug_assert_eq!(len, code.length());
    Ok(best)
}

/// Coefficients `c_ij = f_i g_j - f_j g_i` of `f ∧ g` on the ∧²V coordinates.
pub fn wedge_functional(field: &FieldTable, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let d = f.len();
    let mut out = vec![0; binomial(d, 2)];
    for i in 0..d {
        for j in i + 1..d {
            let idx = tuple_index(&[i, j], d).expect("valid tuple");
            out[idx] = field.sub(field.mul(f[i], g[j]), field.mul(f[j], g[i]));
        }
    }
    out
}

/// Lightest codeword among the coordinate functionals (one per ∧^k V coordinate).
pub fn coordinate_functional_scan(code: &LinearCode) -> Option<Witness> {
    let mut best: Option<Witness> = None;
    let rows = code.message_len();
    for r in 0..rows {
        let w = weight(code.generator().row(r)) as u64;
        if w == 0 {
            continue;
        }
        match &mut best {
            Some(b) if w > b.weight => {}
            Some(b) if w == b.weight => b.multiplicity += 1,
            _ => {
                let mut functional = vec![0; rows];
                functional[r] = 1;
                best = Some(Witness { weight: w, functional, multiplicity: 1, scanned: 0 })
            }
        }
    }
    if let Some(b) = &mut best {
        b.scanned = rows as u64;
    }
    best
}

/// Minimum weight over `samples` seeded random nonzero codewords.
pub fn random_sweep(code: &LinearCode, samples: u64, seed: u64) -> Option<u64> {
    let kdim = code.dimension();
    if kdim == 0 {
        return None;
    }
    let q = code.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<u64> = None;
    let mut coeffs = vec![0 as Elem; kdim];
    for _ in 0..samples {
        loop {
            for c in coeffs.iter_mut() {
                *c = rng.gen_range(0..q) as Elem;
            }
            if coeffs.iter().any(|&c| c != 0) {
                break;
            }
        }
        let w = weight(&combine_rows(code.basis(), &coeffs)) as u64;
        best = Some(best.map_or(w, |b| b.min(w)));
    }
    best
}

/// Budgets for [`resolve_distance`].
#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// Max Gray-code steps for exhaustion.
    pub exhaustive: u64,
    /// Max position evaluations for the rank-2 form scan.
    pub scan: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { exhaustive: DEFAULT_BUDGET, scan: DEFAULT_BUDGET }
    }
}

/// Fills in the code's distance data: exact when exhaustion fits the budget,
/// otherwise the lightest witness found as an upper bound.
pub fn resolve_distance(code: &mut LinearCode, budgets: Budgets) {
    let exact = min_distance_exhaustive(code, budgets.exhaustive).ok();
    let mut upper: Option<(u64, String)> =
        coordinate_functional_scan(code).map(|w| (w.weight, "coordinate functionals".into()));
    if exact.is_none() && code.k() == 2 {
        if let Ok(w) = rank2_form_scan(code, budgets.scan) {
            if upper.as_ref().is_none_or(|(u, _)| w.weight <= *u) {
                upper = Some((w.weight, "rank-2 alternating forms".into()));
            }
        }
    }
    let bounds = code.distance_mut();
    if let Some(d) = exact {
        bounds.exact = Some(d);
        bounds.lower = d;
        bounds.lower_source = "exhaustive".into();
        bounds.upper = Some(d);
        bounds.upper_source = "exhaustive".into();
    } else if let Some((u, src)) = upper {
        bounds.upper = Some(u);
        bounds.upper_source = src;
    }
}
