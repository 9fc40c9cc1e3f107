//! Parameter summaries and consistency checks for built codes.

use serde::Serialize;

use crate::bounds::{expected_dimension, expected_length, known_distance, mt1_distance_bound, mt2_distance};
use crate::code::{DistanceBounds, LinearCode};
use crate::distance::{random_sweep, resolve_distance, Budgets};
use crate::error::Error;
use crate::field::Elem;
use crate::pluecker::pluecker;

/// `n k q N K d_low d_high`, plus whether the distance is exact and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub length: u64,
    pub dimension: usize,
    pub distance: DistanceBounds,
}

impl Parameters {
    /// `"n k q N K dlow dhigh exact|bounds"`; an unknown upper bound prints `-`.
    pub fn line(&self) -> String {
        let d = &self.distance;
        let (lo, hi) = match d.exact {
            Some(x) => (x, Some(x)),
            None => (d.lower, d.upper),
        };
        format!(
            "{} {} {} {} {} {} {} {}",
            self.n,
            self.k,
            self.q,
            self.length,
            self.dimension,
            lo,
            hi.map_or("-".to_string(), |h| h.to_string()),
            if d.exact.is_some() { "exact" } else { "bounds" }
        )
    }
}

/// Resolves the distance within `budgets`, falling back to the closed form
/// when one is known for these parameters.
pub fn parameters(code: &mut LinearCode, budgets: Budgets) -> Parameters {
    resolve_distance(code, budgets);
    let (n, k, q) = (code.n(), code.k(), code.q());
    if code.distance().exact.is_none() {
        if let Some(d) = known_distance(n, k, q) {
            let d = d as u64;
            let bounds = code.distance_mut();
            bounds.exact = Some(d);
            bounds.lower = d;
            bounds.lower_source = "closed form".into();
            bounds.upper = Some(d);
            bounds.upper_source = "closed form".into();
        }
    }
    Parameters { n, k, q, length: code.length() as u64, dimension: code.dimension(), distance: code.distance().clone() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString, pass: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), pass }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub checks: Vec<Check>,
    pub distance: Option<DistanceBounds>,
    /// Messages encoding to zero, for even q (rows of a kernel basis).
    pub kernel: Vec<Vec<Elem>>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("check {} expected={} actual={} {}\n", c.name, c.expected, c.actual, verdict));
        }
        if let Some(d) = &self.distance {
            match d.exact {
                Some(x) => out.push_str(&format!("distance exact {x} ({})\n", d.lower_source)),
                None => out.push_str(&format!(
                    "distance bounds {} {} ({}; {})\n",
                    d.lower,
                    d.upper.map_or("-".into(), |u| u.to_string()),
                    d.lower_source,
                    d.upper_source
                )),
            }
        }
        for row in &self.kernel {
            let coeffs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("kernel {}\n", coeffs.join(" ")));
        }
        out.push_str(if self.pass() { "verify pass\n" } else { "verify FAIL\n" });
        out
    }
}

/// Random codeword sampling used when the distance is not computed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub samples: u64,
    pub seed: u64,
}

/// Checks a code's length, dimension, columns and distance against the
/// closed forms. `code` may carry an externally supplied generator.
pub fn verify(code: &mut LinearCode, budgets: Budgets, sweep: Option<Sweep>) -> VerifyReport {
    let (n, k, q) = (code.n(), code.k(), code.q());
    let mut checks = Vec::new();

    let want_len = expected_length(n, k, q);
    checks.push(Check::new("length", want_len, code.length(), want_len == code.length() as u128));

    if let Some(want_dim) = expected_dimension(n, k, q) {
        checks.push(Check::new("dimension", want_dim, code.dimension(), want_dim == code.dimension()));
    }

    let g = code.generator();
    let bad_columns = code
        .points()
        .points()
        .iter()
        .enumerate()
        .filter(|(j, s)| pluecker(s).map_or(true, |pv| pv.coords != g.column(*j)))
        .count();
    checks.push(Check::new("columns", 0, bad_columns, bad_columns == 0));

    resolve_distance(code, budgets);
    let d = code.distance().clone();
    if let Some(exact) = d.exact {
        if k < n {
            if let Ok(b) = mt1_distance_bound(n, k, q) {
                checks.push(Check::new("distance_lower_bound", format!(">={b}"), exact, exact as u128 >= b));
            }
        }
        if let Some(want) = known_distance(n, k, q) {
            checks.push(Check::new("distance", want, exact, exact as u128 == want));
        }
    } else if let Some(upper) = d.upper {
        // a witness weight can never undercut the true distance
        if let Some(want) = known_distance(n, k, q) {
            checks.push(Check::new("witness", format!(">={want}"), upper, upper as u128 >= want));
        }
        if k < n {
            if let Ok(b) = mt1_distance_bound(n, k, q) {
                checks.push(Check::new("witness_lower_bound", format!(">={b}"), upper, upper as u128 >= b));
            }
        }
        if k == 2 && q % 2 == 1 {
            if let Ok(want) = mt2_distance(n, q) {
                checks.push(Check::new("witness_weight", want, upper, upper as u128 == want));
            }
        }
    }
    if let (None, Some(sw)) = (d.exact, sweep) {
        let floor = known_distance(n, k, q).map_or(d.lower, |x| x as u64).max(d.lower);
        if let Some(min) = random_sweep(code, sw.samples, sw.seed) {
            checks.push(Check::new("sweep", format!(">={floor}"), min, min >= floor));
        }
    }

    let kernel = if q % 2 == 0 { code.message_kernel().row_vecs() } else { Vec::new() };
    VerifyReport { n, k, q, checks, distance: Some(d), kernel }
}

/// Report for a generator that could not even be loaded as a code.
pub fn rejected(n: usize, k: usize, q: u32, err: &Error) -> VerifyReport {
    VerifyReport {
        n,
        k,
        q,
        checks: vec![Check::new("generator", "valid projective system", err, false)],
        distance: None,
        kernel: Vec::new(),
    }
}
