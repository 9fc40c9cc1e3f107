//! Closed-form parameters and distance bounds for polar Grassmann codes.

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::pluecker::binomial;
use crate::quadric::count_formula;

fn is_even(q: u32) -> bool {
    q.is_multiple_of(2)
}

fn check_q(q: u32) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::UnsupportedOrder(q))
}

/// Guaranteed lower bound on the maximum partial spread size ψ_r(q) of Q(2r, q):
/// `q^(r+1) + 1` for even q, `q + 1` for odd q.
pub fn spread_bound(r: u32, q: u32) -> u128 {
    if is_even(q) {
        (q as u128).pow(r + 1) + 1
    } else {
        q as u128 + 1
    }
}

/// `ψ_{n-k}(q) · (q^{k(n-k)} - 1) + 1` with the guaranteed ψ; only for `1 <= k < n`.
pub fn mt1_distance_bound(n: usize, k: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!("distance bound needs 1 <= k < n (got n={n}, k={k})")));
    }
    let r = (n - k) as u32;
    Ok(spread_bound(r, q) * ((q as u128).pow((k * (n - k)) as u32) - 1) + 1)
}

/// Exact minimum distance of the line code P(n, 2, q), q odd: `q^(4n-5) - q^(3n-4)`.
pub fn mt2_distance(n: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    if is_even(q) {
        return Err(Error::InvalidParameters("line-code distance formula needs odd q".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameters(format!("line-code distance formula needs n >= 2 (got {n})")));
    }
    let q = q as u128;
    Ok(q.pow(4 * n as u32 - 5) - q.pow(3 * n as u32 - 4))
}

/// Known parameters `(N, K, d)` of the dual polar codes P(2, 2, q) and P(3, 3, q).
pub fn dual_polar_parameters(n: usize, q: u32) -> Option<(u128, usize, u128)> {
    let qq = q as u128;
    match n {
        2 => Some(((qq * qq + 1) * (qq + 1), if is_even(q) { 9 } else { 10 }, qq * qq * (qq - 1))),
        3 => {
            let len = (qq.pow(3) + 1) * (qq * qq + 1) * (qq + 1);
            if is_even(q) {
                Some((len, 28, qq.pow(5) * (qq - 1)))
            } else {
                Some((len, 35, qq * qq * (qq - 1) * (qq.pow(3) - 1)))
            }
        }
        _ => None,
    }
}

/// Expected dimension K: `C(2n+1, k)` for odd q, `C(2n+1, k) - C(2n+1, k-2)`
/// for even q when `k < n`; the dual polar table when `k = n ∈ {2, 3}`.
pub fn expected_dimension(n: usize, k: usize, q: u32) -> Option<usize> {
    let d = 2 * n + 1;
    if k >= 1 && k < n {
        let lost = if is_even(q) && k >= 2 { binomial(d, k - 2) } else { 0 };
        Some(binomial(d, k) - lost)
    } else if k == n {
        dual_polar_parameters(n, q).map(|(_, dim, _)| dim)
    } else {
        None
    }
}

/// Expected length N (product formula).
pub fn expected_length(n: usize, k: usize, q: u32) -> u128 {
    count_formula(n, k, q)
}

/// The exact minimum distance when a closed form is known for these parameters.
pub fn known_distance(n: usize, k: usize, q: u32) -> Option<u128> {
    if k == n {
        if let Some((_, _, d)) = dual_polar_parameters(n, q) {
            return Some(d);
        }
    }
    if k == 2 && !is_even(q) {
        return mt2_distance(n, q).ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_bound_values() {
        assert_eq!(spread_bound(1, 4), 17);
        assert_eq!(spread_bound(1, 3), 4);
        assert_eq!(spread_bound(2, 2), 9);
    }

    #[test]
    fn mt1_values() {
        assert_eq!(mt1_distance_bound(3, 2, 2).unwrap(), 16);
        assert_eq!(mt1_distance_bound(2, 1, 2).unwrap(), 6);
        assert_eq!(mt1_distance_bound(3, 2, 3).unwrap(), 33);
        assert_eq!(mt1_distance_bound(2, 1, 3).unwrap(), 9);
        assert!(mt1_distance_bound(3, 3, 2).is_err());
    }

    #[test]
    fn mt2_values() {
        assert_eq!(mt2_distance(3, 3).unwrap(), 1944);
        assert_eq!(mt2_distance(2, 3).unwrap(), 18);
        assert_eq!(mt2_distance(2, 5).unwrap(), 100);
        assert!(mt2_distance(3, 4).is_err());
    }

    #[test]
    fn line_and_dual_polar_formulas_agree_at_rank_two() {
        for q in [3, 5, 7, 9, 11, 13] {
            let (len, _, d) = dual_polar_parameters(2, q).unwrap();
            assert_eq!(d, mt2_distance(2, q).unwrap());
            assert_eq!(len, count_formula(2, 2, q));
        }
        for q in [2, 3, 4, 5] {
            assert_eq!(dual_polar_parameters(3, q).unwrap().0, count_formula(3, 3, q));
        }
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(expected_dimension(3, 2, 3), Some(21));
        assert_eq!(expected_dimension(3, 2, 2), Some(20));
        assert_eq!(expected_dimension(3, 1, 4), Some(7));
        assert_eq!(expected_dimension(2, 2, 2), Some(9));
        assert_eq!(expected_dimension(3, 3, 3), Some(35));
        assert_eq!(expected_dimension(4, 4, 3), None);
    }
}
