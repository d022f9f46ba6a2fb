//! Small exact-integer helpers shared by the other modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `lcm` of a list of positive integers, exact.
pub fn lcm_all<I: IntoIterator<Item = BigUint>>(values: I) -> BigUint {
    values
        .into_iter()
        .fold(BigUint::one(), |acc, v| if v.is_zero() { acc } else { acc.lcm(&v) })
}

/// `floor(num / den)` for `den > 0`.
pub fn floor_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    Integer::div_floor(&num, &den)
}

/// `ceil(num / den)` for `den > 0`.
pub fn ceil_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    -Integer::div_floor(&-num, &den)
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn to_u64(value: &BigUint, what: &str) -> Result<u64> {
    value
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("{what} = {value}")))
}
