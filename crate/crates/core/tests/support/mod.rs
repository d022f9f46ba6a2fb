//! Oracles that avoid the parallelepiped group: lattice points are found by
//! scanning dilates directly, and ages are recomputed with exact rationals.
#![allow(dead_code)]

use boxpoly::numtheory::binomial;
use boxpoly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Every row of length `len` with entries in `0..n`.
pub fn all_rows(len: usize, n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|row| {
                (0..n).map(move |v| {
                    let mut r = row.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    out
}

/// Rows of length `len` with entries in `lo..=hi`.
pub fn rows_in_range(len: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    all_rows(len, hi - lo + 1)
        .into_iter()
        .map(|r| r.into_iter().map(|v| v + lo).collect())
        .collect()
}

/// Lattice points of `h S` (or of its interior) for the row `a` over `N`.
///
/// With `y = x_d`, the scaled barycentric coordinates are
/// `N lambda_j = N x_j - a_j y` and `N lambda_d = y`, and
/// `N lambda_0 = N h - sum_j N lambda_j - y`.
pub fn count_dilate_points(a: &[u64], n: u64, h: u64, interior: bool) -> u64 {
    let n = i128::from(n);
    let h = i128::from(h);
    let ok = |v: i128| if interior { v > 0 } else { v >= 0 };
    let mut count = 0u64;
    for y in 0..=h * n {
        if !ok(y) {
            continue;
        }
        // remaining budget for N*lambda_0 + sum_j N*lambda_j
        let budget = n * h - y;
        count += count_coords(a, n, y, budget, interior);
    }
    count
}

fn count_coords(a: &[u64], n: i128, y: i128, budget: i128, interior: bool) -> u64 {
    let Some((&first, rest)) = a.split_first() else {
        return u64::from(if interior { budget > 0 } else { budget >= 0 });
    };
    let ay = i128::from(first) * y;
    // smallest x with N x - a y >= 0 (> 0 for the interior)
    let mut x = if interior { Integer::div_floor(&ay, &n) + 1 } else { Integer::div_ceil(&ay, &n) };
    let mut total = 0;
    loop {
        let lambda = n * x - ay;
        if lambda > budget {
            break;
        }
        total += count_coords(rest, n, y, budget - lambda, interior);
        x += 1;
    }
    total
}

/// Recover `h*` (or the interior h*) from dilate counts: the generating
/// series of `L(h)` is `h*(t) / (1 - t)^(d+1)`.
pub fn hstar_from_counts(a: &[u64], n: u64, interior: bool) -> IntPolynomial {
    let d = a.len() as u64 + 1;
    let counts: Vec<i128> = (0..=d + 1)
        .map(|h| {
            if h == 0 {
                i128::from(!interior)
            } else {
                i128::from(count_dilate_points(a, n, h, interior))
            }
        })
        .collect();
    // h*_i = sum_j (-1)^j C(d+1, j) L(i - j)
    let coeffs: Vec<u64> = (0..=d + 1)
        .map(|i| {
            let mut acc: i128 = 0;
            for j in 0..=i.min(d + 1) {
                let term = binomial(d + 1, j) as i128 * counts[(i - j) as usize];
                acc += if j % 2 == 0 { term } else { -term };
            }
            u64::try_from(acc).expect("h* coefficients are nonnegative")
        })
        .collect();
    IntPolynomial::from_u64s(&coeffs)
}

/// Smallest `h` whose dilate has an interior lattice point.
pub fn first_interior_dilate(a: &[u64], n: u64) -> u64 {
    (1..).find(|&h| count_dilate_points(a, n, h, true) > 0).unwrap()
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Local h* and h* by evaluating the fractional parts of `l * v0` with
/// rationals, `v0 = ((sum a - 1)/N, -a_1/N, ..., -a_{d-1}/N, 1/N)`.
pub fn box_and_hstar_rational(a: &[u64], n: u64) -> (IntPolynomial, IntPolynomial) {
    let d = a.len() + 1;
    let nn = BigInt::from(n);
    let a0: i64 = a.iter().map(|&v| v as i64).sum::<i64>() - 1;
    let mut v0 = vec![BigRational::new(BigInt::from(a0), nn.clone())];
    v0.extend(a.iter().map(|&v| BigRational::new(-BigInt::from(v), nn.clone())));
    v0.push(BigRational::new(BigInt::from(1), nn.clone()));
    let mut b = vec![0u64; d + 2];
    let mut h = vec![0u64; d + 2];
    for l in 0..n {
        let lr = BigRational::from_integer(BigInt::from(l));
        let fr: Vec<BigRational> = v0.iter().map(|c| frac(&(c * &lr))).collect();
        let sum = fr.iter().fold(BigRational::zero(), |acc, x| acc + x);
        assert!(sum.is_integer());
        let age = sum.to_integer().to_usize().unwrap();
        h[age] += 1;
        if fr.iter().all(|x| !x.is_zero()) {
            b[age] += 1;
        }
    }
    (IntPolynomial::from_u64s(&b), IntPolynomial::from_u64s(&h))
}

/// Partition numbers by Euler's pentagonal recurrence.
pub fn partition_number(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p[n] as u64
}

/// Floor and ceiling of `x / (k m + r/n)` with every quantity a rational.
pub fn rational_floor_ceil(x: u64, k: u64, m: u64, r: u64, n: u64) -> (BigInt, BigInt) {
    let q = |v: u64| BigRational::from_integer(BigInt::from(v));
    let den = q(k) * q(m) + BigRational::new(BigInt::from(r), BigInt::from(n));
    let val = q(x) / den;
    (val.floor().to_integer(), val.ceil().to_integer())
}
