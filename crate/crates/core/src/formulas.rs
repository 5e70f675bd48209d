//! Closed-form counts and bounds used as census referees. All terms are
//! exact rationals; the final counts are asserted to be integers.

use num_rational::Ratio;

use crate::algebra::{is_prime, Modulus};
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Kronecker-style symbol `(a / p)` for an odd prime `p`.
fn symbol(a: i64, p: u64) -> i128 {
    i128::from(Modulus::new(p).legendre(Modulus::new(p).from_i64(a)))
}

fn to_int(x: Q, what: &str, p: u64) -> Result<u64> {
    if !x.is_integer() || x < Q::from_integer(0) {
        return Err(Error::Internal(format!("{what}({p}) = {x} is not a natural number")));
    }
    Ok(x.to_integer() as u64)
}

/// Number of supersingular j-invariants in characteristic `p`.
pub fn eichler_h(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if p <= 3 {
        return Ok(1);
    }
    let p_ = i128::from(p);
    let h = Q::new(p_ - 1, 12) + Q::new(1 - symbol(-1, p), 4) + Q::new(1 - symbol(-3, p), 3);
    to_int(h, "eichler_h", p)
}

/// Number of superspecial genus-2 curves over the algebraic closure.
pub fn genus2_count(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    match p {
        2 | 3 => return Ok(0),
        5 => return Ok(1),
        _ => {}
    }
    let p_ = i128::from(p);
    let eps = if p % 5 == 4 { Q::new(4, 5) } else { Q::from_integer(0) };
    let n = Q::new(p_ * p_ * p_ + 24 * p_ * p_ + 141 * p_ - 166, 2880) - Q::new(1 - symbol(-1, p), 32)
        + Q::new(1 - symbol(-2, p), 8)
        + Q::new(1 - symbol(-3, p), 18)
        + eps;
    to_int(n, "genus2_count", p)
}

/// Heuristic number of superspecial Howe curves, `p^3 / 1152`.
pub fn howe_heuristic(p: u64) -> Ratio<i128> {
    let p_ = i128::from(p);
    Q::new(p_ * p_ * p_, 1152)
}

/// `n / (p^3 / 1152)` rendered with three decimals (half-up rounding).
pub fn howe_ratio_string(n: u64, p: u64) -> String {
    let r = Q::from_integer(i128::from(n)) / howe_heuristic(p);
    let scaled = (r * Q::from_integer(1000) + Q::new(1, 2)).floor().to_integer();
    format!("{}.{:03}", scaled / 1000, scaled % 1000)
}

/// Hasse-Weil interval `(q + 1 - 2g sqrt q, q + 1 + 2g sqrt q)` for square `q`.
pub fn hasse_weil(g: u64, q: u64) -> Result<(i64, i64)> {
    let r = (q as f64).sqrt().round() as u64;
    let r = (r.saturating_sub(1)..=r + 1).find(|&s| s * s == q).ok_or_else(|| {
        Error::Argument(format!("{q} is not a square; the exact bound needs sqrt(q)"))
    })?;
    let (q, g, r) = (q as i64, g as i64, r as i64);
    Ok((q + 1 - 2 * g * r, q + 1 + 2 * g * r))
}
