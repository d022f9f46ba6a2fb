//! Large-volume behaviour of a fixed row.
//!
//! For `M = lcm(a_1, ..., a_{d-1}, sum(a) - 1)` the family `S_N` with row
//! `a` satisfies `B(S_{kM+1}) = k B(S_{M+1})`, and for any fixed `r` the
//! distribution of `B(S_{kM+r})` tends to that of `B(S_{M+1})`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::distribution::{to_distribution, tv_distance, CoefficientDistribution};
use crate::invariants::{age_histogram, local_hstar};
use crate::numtheory::{lcm_all, to_u64};
use crate::poly::{is_strictly_unimodal, IntPolynomial};
use crate::simplex::OneRowSimplex;
use crate::{Error, Result};

/// `lcm(a_1, ..., a_{d-1}, sum(a) - 1)`. Undefined when some `a_i = 0` or
/// `sum(a) <= 1`.
pub fn modulus_m(a: &[u64]) -> Result<BigUint> {
    let sum: u128 = a.iter().map(|&v| u128::from(v)).sum();
    if a.contains(&0) || sum <= 1 {
        return Err(Error::DegenerateRow);
    }
    let entries = a.iter().map(|&v| BigUint::from(v));
    Ok(lcm_all(entries.chain(std::iter::once(BigUint::from(sum - 1)))))
}

fn modulus_u64(a: &[u64]) -> Result<u64> {
    to_u64(&modulus_m(a)?, "M")
}

fn volume(k: u64, m: u64, r: u64) -> Result<u64> {
    k.checked_mul(m)
        .and_then(|km| km.checked_add(r))
        .ok_or_else(|| Error::Overflow(format!("{k}*{m}+{r} exceeds 64 bits")))
}

fn simplex_at(a: &[u64], n: u64) -> Result<OneRowSimplex> {
    OneRowSimplex::new(a.to_vec(), n)
}

fn row_sum(a: &[u64]) -> u128 {
    a.iter().map(|&v| u128::from(v)).sum()
}

/// `B(S_{kM+1}) == k B(S_{M+1})`, both sides enumerated.
pub fn scaling_identity_check(a: &[u64], k: u64) -> Result<bool> {
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let m = modulus_u64(a)?;
    let base = local_hstar(&simplex_at(a, volume(1, m, 1)?)?);
    let scaled = local_hstar(&simplex_at(a, volume(k, m, 1)?)?);
    Ok(scaled == base.scale(&BigUint::from(k)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticProfile {
    pub a: Vec<u64>,
    pub m: BigUint,
    /// `B(S_{M+1})`.
    pub limit_box: IntPolynomial,
    pub limit_dist: CoefficientDistribution,
}

pub fn limit_profile(a: &[u64]) -> Result<AsymptoticProfile> {
    let m = modulus_m(a)?;
    let n = to_u64(&(&m + 1u32), "M + 1")?;
    let limit_box = local_hstar(&simplex_at(a, n)?);
    let limit_dist = to_distribution(&limit_box)?;
    Ok(AsymptoticProfile { a: a.to_vec(), m, limit_box, limit_dist })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub k: u64,
    pub n: u64,
    /// `None` on degenerate rows.
    pub tv: Option<BigRational>,
    /// `(M^2 + r + sum(a)) / (kM + r - 1)`; `None` when the denominator vanishes.
    pub envelope: Option<BigRational>,
    pub strictly_unimodal: bool,
    /// `S_{kM+r}` is not a valid simplex, or its local h*-polynomial is zero.
    pub degenerate: bool,
}

impl ConvergenceRow {
    /// Degenerate rows are vacuously within the envelope.
    pub fn within_envelope(&self) -> bool {
        match (&self.tv, &self.envelope) {
            (Some(tv), Some(env)) => tv <= env,
            _ => self.degenerate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub profile: AsymptoticProfile,
    pub r: u64,
    pub rows: Vec<ConvergenceRow>,
    pub limit_strictly_unimodal: bool,
    /// Empirical: the least `k` from which every nondegenerate row up to
    /// `k_max` is strictly unimodal. Only reported when the limit is.
    pub empirical_threshold: Option<u64>,
}

impl ConvergenceReport {
    pub fn all_within_envelope(&self) -> bool {
        self.rows.iter().all(ConvergenceRow::within_envelope)
    }
}

pub fn convergence_report(a: &[u64], r: u64, k_max: u64) -> Result<ConvergenceReport> {
    let profile = limit_profile(a)?;
    let m = to_u64(&profile.m, "M")?;
    if r >= m {
        return Err(Error::OutOfRange(format!("r = {r} must lie in [0, M-1 = {}]", m - 1)));
    }
    if k_max < 1 {
        return Err(Error::OutOfRange("k_max must be at least 1".into()));
    }
    let bound_num = BigInt::from(m) * BigInt::from(m) + BigInt::from(r) + BigInt::from(row_sum(a));
    let rows = (1..=k_max)
        .into_par_iter()
        .map(|k| -> Result<ConvergenceRow> {
            let n = volume(k, m, r)?;
            let den = n.checked_sub(1).filter(|&v| v > 0);
            let envelope =
                den.map(|v| BigRational::new(bound_num.clone(), BigInt::from(v)));
            let degenerate_row = ConvergenceRow {
                k,
                n,
                tv: None,
                envelope: envelope.clone(),
                strictly_unimodal: false,
                degenerate: true,
            };
            let Ok(s) = simplex_at(a, n) else {
                return Ok(degenerate_row);
            };
            let b = local_hstar(&s);
            if b.is_zero() {
                return Ok(degenerate_row);
            }
            let tv = tv_distance(&to_distribution(&b)?, &profile.limit_dist);
            Ok(ConvergenceRow {
                k,
                n,
                tv: Some(tv),
                envelope,
                strictly_unimodal: is_strictly_unimodal(&b),
                degenerate: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let limit_strictly_unimodal = is_strictly_unimodal(&profile.limit_box);
    let empirical_threshold = if limit_strictly_unimodal {
        let last_bad = rows
            .iter()
            .filter(|row| !row.degenerate && !row.strictly_unimodal)
            .map(|row| row.k)
            .max();
        match last_bad {
            Some(k) if k == k_max => None,
            Some(k) => Some(k + 1),
            None => Some(1),
        }
    } else {
        None
    };
    Ok(ConvergenceReport { profile, r, rows, limit_strictly_unimodal, empirical_threshold })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HstarLimitCheck {
    pub n: u64,
    /// `h*(S_{kM+r}) = 1 + B(S_{kM+r})`.
    pub holds: bool,
    /// Distance from the h* distribution to the limiting box distribution.
    pub tv: BigRational,
}

/// For `gcd(M, r) = 1` every `S_{kM+r}` satisfies the gcd criterion, so its
/// h*-polynomial is `1 + B`.
pub fn hstar_limit_check(a: &[u64], r: u64, k: u64) -> Result<HstarLimitCheck> {
    let profile = limit_profile(a)?;
    let m = to_u64(&profile.m, "M")?;
    if m.gcd(&r) != 1 {
        return Err(Error::HypothesisUnmet(format!("gcd(M = {m}, r = {r}) is not 1")));
    }
    let n = volume(k, m, r)?;
    let hist = age_histogram(&simplex_at(a, n)?);
    let h = hist.hstar();
    let holds = h == &IntPolynomial::one() + &hist.local_hstar();
    let tv = tv_distance(&to_distribution(&h)?, &profile.limit_dist);
    Ok(HstarLimitCheck { n, holds, tv })
}

/// At `N = kM + 1`, the closed-form age of `(kq + delta + 1)` equals that of
/// `(kq + 1)` for every `q < M` and `delta < k`.
pub fn age_shift_lemma_holds(a: &[u64], k: u64) -> Result<bool> {
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let m = modulus_u64(a)?;
    let s = simplex_at(a, volume(k, m, 1)?)?;
    for q in 0..m {
        let base = s.closed_form_age(k * q + 1)?;
        for delta in 1..k {
            if s.closed_form_age(k * q + delta + 1)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `M^2 + r + sum(a)`.
pub fn differing_count_bound(a: &[u64], r: u64) -> Result<BigUint> {
    let m = modulus_m(a)?;
    Ok(&m * &m + BigUint::from(r) + BigUint::from(row_sum(a)))
}

/// Number of `l in 1..kM+r` whose closed-form age or open-box status at
/// `N = kM + r` differs from that at `N = kM + 1`; indices with no
/// counterpart count as differing.
pub fn differing_age_count(a: &[u64], k: u64, r: u64) -> Result<u64> {
    let m = modulus_u64(a)?;
    let n_r = volume(k, m, r)?;
    let n_1 = volume(k, m, 1)?;
    let s_r = simplex_at(a, n_r)?;
    let s_1 = simplex_at(a, n_1)?;
    let mut count = 0u64;
    for ell in 1..n_r {
        if ell >= n_1 {
            count += 1;
            continue;
        }
        // closed-form age of l is the residue age of N - l
        let g_r = s_r.group_element(n_r - ell)?;
        let g_1 = s_1.group_element(n_1 - ell)?;
        if g_r.age != g_1.age || g_r.in_open_box() != g_1.in_open_box() {
            count += 1;
        }
    }
    Ok(count)
}

/// `tv` as a decimal, for reports.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
