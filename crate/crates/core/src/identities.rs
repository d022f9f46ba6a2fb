//! Floor and ceiling identities for quotients of the form `x / (k m + r/n)`.
//!
//! Every quotient is cleared of its inner fraction before rounding:
//! `floor(x / (k m + r/n)) = floor(n x / (k m n + r))`, and likewise for the
//! ceiling, so the predicates only ever divide integers.

use crate::numtheory::{ceil_div, floor_div};
use crate::{Error, Result};

/// Parameters shared by the identity predicates. Which fields are read, and
/// which ranges are demanded, depends on the predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FloorIdentityParams {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub i: u64,
    pub delta: u64,
}

/// `floor(x / (k m + r/n))` and `ceil(x / (k m + r/n))`.
fn floor_ceil(x: u64, k: u64, m: u64, r: u64, n: u64) -> (i128, i128) {
    let num = i128::from(n) * i128::from(x);
    let den = i128::from(k) * i128::from(m) * i128::from(n) + i128::from(r);
    (floor_div(num, den), ceil_div(num, den))
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::OutOfRange(what()))
    }
}

fn require_positive(k: u64, m: u64, n: u64) -> Result<()> {
    require(k >= 1 && m >= 1 && n >= 1, || {
        format!("k, m, n must be positive (got k={k}, m={m}, n={n})")
    })
}

/// Shifting the numerator `k i + 1` by `delta < k` leaves both roundings of
/// `(k i + delta + 1) / (k m + 1/n)` unchanged.
pub fn floor_identity_prop41(p: &FloorIdentityParams) -> Result<bool> {
    let FloorIdentityParams { k, m, n, i, delta, .. } = *p;
    require_positive(k, m, n)?;
    require(i < m * n, || format!("i = {i} must be below mn = {}", m * n))?;
    require(delta < k, || format!("delta = {delta} must be below k = {k}"))?;
    let base = floor_ceil(k * i + 1, k, m, 1, n);
    let shifted = floor_ceil(k * i + delta + 1, k, m, 1, n);
    Ok(base == shifted)
}

/// `(k q + 1) / (k m + 1/n)` and `(q + 1) / (m + 1/n)` round the same way.
pub fn floor_identity_cor44(k: u64, m: u64, n: u64, q: u64) -> Result<bool> {
    require_positive(k, m, n)?;
    require(q < m * n, || format!("q = {q} must be below mn = {}", m * n))?;
    let scaled = floor_ceil(k * q + 1, k, m, 1, n);
    let unscaled = floor_ceil(q + 1, 1, m, 1, n);
    Ok(scaled == unscaled)
}

/// `floor(X) (1 + 1/k) < X` for `X = (k i + delta + 1) / (k m + 1/n)`,
/// under `delta >= (n-1) m + 1` and `k >= n`.
pub fn floor_identity_lem45(k: u64, m: u64, n: u64, i: u64, delta: u64) -> Result<bool> {
    require_positive(k, m, n)?;
    require(i < m * n, || format!("i = {i} must be below mn = {}", m * n))?;
    require(delta < k, || format!("delta = {delta} must be below k = {k}"))?;
    require(delta > (n - 1) * m, || {
        format!("delta = {delta} must be at least (n-1)m+1 = {}", (n - 1) * m + 1)
    })?;
    require(k >= n, || format!("k = {k} must be at least n = {n}"))?;

    // X = n(ki+delta+1) / (kmn+1); compare floor(X)(k+1)(kmn+1) < k n (ki+delta+1).
    let x_num = i128::from(n) * i128::from(k * i + delta + 1);
    let x_den = i128::from(k * m * n + 1);
    let fl = floor_div(x_num, x_den);
    let k = i128::from(k);
    Ok(fl * (k + 1) * x_den < k * x_num)
}

/// For `k >= mn` and `mn <= delta <= k-1`, replacing `1/n` by `r/n` in the
/// denominator of `(k i + delta + 1) / (k m + 1/n)` changes neither rounding.
pub fn floor_identity_thm46(p: &FloorIdentityParams) -> Result<bool> {
    let FloorIdentityParams { k, m, n, r, i, delta } = *p;
    require_positive(k, m, n)?;
    let mn = m * n;
    require((1..=mn).contains(&r), || format!("r = {r} must lie in [1, mn = {mn}]"))?;
    require(k >= mn, || format!("k = {k} must be at least mn = {mn}"))?;
    require(delta >= mn && delta < k, || {
        format!("delta = {delta} must lie in [mn = {mn}, k-1 = {}]", k.saturating_sub(1))
    })?;
    require(i < mn, || format!("i = {i} must be below mn = {mn}"))?;
    let x = k * i + delta + 1;
    Ok(floor_ceil(x, k, m, r, n) == floor_ceil(x, k, m, 1, n))
}

/// Every admissible `(r, i, delta)` for fixed `k, m, n` satisfies
/// [`floor_identity_thm46`]; vacuously true when `k = mn` leaves no `delta`.
pub fn thm46_holds_for_all(k: u64, m: u64, n: u64) -> Result<bool> {
    require_positive(k, m, n)?;
    let mn = m * n;
    for r in 1..=mn {
        for i in 0..mn {
            for delta in mn..k {
                let p = FloorIdentityParams { k, m, n, r, i, delta };
                if !floor_identity_thm46(&p)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
