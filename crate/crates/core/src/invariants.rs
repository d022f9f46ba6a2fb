//! h*- and local h*-polynomials, reciprocity, Stapledon decompositions and
//! integer-decomposition witnesses for one-row simplices.
//!
//! Everything here is read off the age of each group element, so the cost
//! of the polynomial invariants is one pass over `0..N`.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::asymptotics::modulus_m;
use crate::numtheory::binomial;
use crate::poly::{is_palindromic, IntPolynomial};
use crate::simplex::{LatticePoint, OneRowSimplex};
use crate::{Error, Result};

/// Default budget on the number of lattice points materialised by
/// [`height_points`] and the witness searches.
pub const DEFAULT_POINT_CAP: u64 = 2_000_000;

const CHUNK: u64 = 1 << 15;

/// Age histograms over the whole group and over the open box, both indexed
/// `0..=d+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgeHistogram {
    pub all: Vec<u64>,
    pub open_box: Vec<u64>,
}

impl AgeHistogram {
    fn empty(d: usize) -> Self {
        Self { all: vec![0; d + 2], open_box: vec![0; d + 2] }
    }

    fn merge(mut self, other: Self) -> Self {
        for (x, y) in self.all.iter_mut().zip(other.all) {
            *x += y;
        }
        for (x, y) in self.open_box.iter_mut().zip(other.open_box) {
            *x += y;
        }
        self
    }

    pub fn hstar(&self) -> IntPolynomial {
        IntPolynomial::from_u64s(&self.all)
    }

    pub fn local_hstar(&self) -> IntPolynomial {
        IntPolynomial::from_u64s(&self.open_box)
    }
}

fn histogram_range(s: &OneRowSimplex, lo: u64, hi: u64) -> AgeHistogram {
    let mut h = AgeHistogram::empty(s.dim());
    s.scan_ages(lo..hi, |_, age, zeros| {
        let age = age as usize;
        h.all[age] += 1;
        if zeros == 0 {
            h.open_box[age] += 1;
        }
    });
    h
}

/// One pass over the group; large groups are split into chunks whose
/// histograms are summed, so the result is independent of scheduling.
pub fn age_histogram(s: &OneRowSimplex) -> AgeHistogram {
    let n = s.n();
    if n <= CHUNK {
        return histogram_range(s, 0, n);
    }
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| histogram_range(s, c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .reduce(|| AgeHistogram::empty(s.dim()), AgeHistogram::merge)
}

/// `B(S; z)`: ages of the group elements with no integral coordinate.
pub fn local_hstar(s: &OneRowSimplex) -> IntPolynomial {
    age_histogram(s).local_hstar()
}

/// `h*(S; z)`: ages of all `N` group elements.
pub fn hstar(s: &OneRowSimplex) -> IntPolynomial {
    age_histogram(s).hstar()
}

/// `gcd(M, N) = 1` with `M = lcm(a_1, ..., a_{d-1}, sum(a) - 1)`. When this
/// holds, `h* = 1 + B`.
pub fn gcd_criterion(s: &OneRowSimplex) -> Result<bool> {
    let m = modulus_m(s.a())?;
    Ok(m.gcd(&BigUint::from(s.n())) == BigUint::from(1u8))
}

/// Exact `|hS ∩ Z^d|`: each parallelepiped point of age `i` spawns
/// `C(h - i + d, d)` points at height `h`.
pub fn height_point_count(s: &OneRowSimplex, h: u64) -> u128 {
    let d = s.dim() as u64;
    hstar(s)
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| (*i as u64) <= h)
        .map(|(i, c)| {
            let c = u128::try_from(c).unwrap_or(u128::MAX);
            c.saturating_mul(binomial(h - i as u64 + d, d))
        })
        .fold(0u128, u128::saturating_add)
}

fn check_cap(estimate: u128, cap: u64) -> Result<()> {
    if estimate > u128::from(cap) {
        Err(Error::CapExceeded { estimate, cap })
    } else {
        Ok(())
    }
}

/// All lattice points of `hS`, sorted. Each is a parallelepiped point of age
/// at most `h` plus a nonnegative integer combination of vertices with total
/// weight `h - age`; that representation is unique, so nothing is deduplicated.
pub fn height_points(s: &OneRowSimplex, h: u64, cap: u64) -> Result<Vec<LatticePoint>> {
    if h == 0 {
        return Err(Error::OutOfRange("height must be at least 1".into()));
    }
    check_cap(height_point_count(s, h), cap)?;
    let verts = s.vertices();
    let mut out = Vec::new();
    for g in s.iter_group().filter(|g| g.age <= h) {
        let base = s.parallelepiped_point(&g);
        let budget = h - g.age;
        // weights on v_1..v_d; v_0 = 0 takes up the slack
        let mut weights = vec![0u64; s.dim()];
        loop {
            let mut p = base.clone();
            for (w, v) in weights.iter().zip(&verts[1..]) {
                if *w > 0 {
                    let w = i128::from(*w);
                    for (x, vx) in p.iter_mut().zip(v) {
                        *x += w * vx;
                    }
                }
            }
            out.push(p);
            if !next_weights(&mut weights, budget) {
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Advance to the next vector with coordinate sum at most `budget`, in
/// odometer order. Returns false after the last one.
fn next_weights(w: &mut [u64], budget: u64) -> bool {
    let mut used: u64 = w.iter().sum();
    for x in w.iter_mut() {
        if used < budget {
            *x += 1;
            return true;
        }
        used -= *x;
        *x = 0;
    }
    false
}

/// Integer test for `x ∈ hS` via scaled barycentric coordinates.
pub fn in_dilate(s: &OneRowSimplex, h: i128, x: &[i128]) -> bool {
    let d = s.dim();
    let n = i128::from(s.n());
    let last = x[d - 1];
    if last < 0 || h < 0 {
        return false;
    }
    let mut scaled_sum = last;
    for (t, &a) in s.a().iter().enumerate() {
        let lambda = n * x[t] - i128::from(a) * last;
        if lambda < 0 {
            return false;
        }
        scaled_sum += lambda;
    }
    n * h >= scaled_sum
}

/// `min(age + zero count)` over the group: the smallest dilate of `S` with
/// an interior lattice point.
pub fn smallest_interior_dilate(s: &OneRowSimplex) -> u64 {
    let mut best = u64::MAX;
    s.scan_ages(0..s.n(), |_, age, zeros| best = best.min(age + zeros as u64));
    best
}

/// `h*` of the interior: coefficient `i` is `h*_{d+1-i}` for `i = 1..=d+1`.
pub fn interior_hstar(s: &OneRowSimplex) -> IntPolynomial {
    interior_from_hstar(&hstar(s), s.dim())
}

fn interior_from_hstar(h: &IntPolynomial, d: usize) -> IntPolynomial {
    let mut coeffs = vec![BigUint::zero(); d + 2];
    for (i, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = h.coeff(d + 1 - i);
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// `(h* - h*_interior) / (1 - z)`, the h*-polynomial of the boundary.
pub fn boundary_hstar(s: &OneRowSimplex) -> Result<IntPolynomial> {
    boundary_from_hstar(&hstar(s), s.dim())
}

fn boundary_from_hstar(h: &IntPolynomial, d: usize) -> Result<IntPolynomial> {
    let interior = interior_from_hstar(h, d);
    let mut running = BigInt::zero();
    let mut quotient = Vec::with_capacity(d + 1);
    for i in 0..=d + 1 {
        running += BigInt::from(h.coeff(i)) - BigInt::from(interior.coeff(i));
        if i <= d {
            let c = running.to_biguint().ok_or_else(|| {
                Error::Internal(format!("boundary h* coefficient {i} is negative"))
            })?;
            quotient.push(c);
        }
    }
    if !running.is_zero() {
        return Err(Error::Internal(format!(
            "h* minus interior h* is not divisible by 1 - z (remainder {running})"
        )));
    }
    Ok(IntPolynomial::from_coeffs(quotient))
}

/// `(1 + z + ... + z^(l-1)) h* = a + z^l b` with `a` palindromic on `[0, d]`
/// and `b` palindromic on `[0, d - l]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StapledonDecomposition {
    pub ell_min: u64,
    pub a_poly: IntPolynomial,
    pub b_poly: IntPolynomial,
}

pub fn stapledon_decompose(s: &OneRowSimplex) -> Result<StapledonDecomposition> {
    let d = s.dim();
    let h = hstar(s);
    let ell = smallest_interior_dilate(s);
    let ell_us = usize::try_from(ell).map_err(|_| Error::Internal("l overflows".into()))?;
    let a_poly = boundary_from_hstar(&h, d)?;
    let lhs = &IntPolynomial::geometric_series(ell_us) * &h;

    let mut b = Vec::new();
    for i in 0..lhs.len().max(a_poly.len()) {
        let diff = BigInt::from(lhs.coeff(i)) - BigInt::from(a_poly.coeff(i));
        if diff.is_negative() || (i < ell_us && !diff.is_zero()) {
            return Err(Error::Internal(format!(
                "a-polynomial exceeds (1+...+z^(l-1))h* at degree {i}"
            )));
        }
        if i >= ell_us {
            b.push(diff.to_biguint().unwrap_or_default());
        }
    }
    let b_poly = IntPolynomial::from_coeffs(b);

    if !is_palindromic(&a_poly, 0, d) {
        return Err(Error::Internal(format!("a-polynomial {a_poly} is not palindromic")));
    }
    let b_ok = match d.checked_sub(ell_us) {
        Some(top) => is_palindromic(&b_poly, 0, top),
        None => b_poly.is_zero(),
    };
    if !b_ok {
        return Err(Error::Internal(format!("b-polynomial {b_poly} is not palindromic")));
    }
    Ok(StapledonDecomposition { ell_min: ell, a_poly, b_poly })
}

/// `z b ≤ B` coefficientwise, for simplices with an interior lattice point.
pub fn check_zb_bounded_by_b(s: &OneRowSimplex) -> Result<bool> {
    let dec = stapledon_decompose(s)?;
    if dec.ell_min != 1 {
        return Err(Error::HypothesisUnmet(format!(
            "S has no interior lattice point (smallest interior dilate is {})",
            dec.ell_min
        )));
    }
    Ok(dec.b_poly.shift(1).le_coefficientwise(&local_hstar(s)))
}

/// `h*_i = h*_{d+1-i}` for `i = 1..=d`.
pub fn is_shifted_symmetric(p: &IntPolynomial, d: usize) -> bool {
    (1..=d).all(|i| p.coeff(i) == p.coeff(d + 1 - i))
}

/// A lattice point of `height * S`, with whether it splits into `height`
/// lattice points of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdpWitness {
    pub point: LatticePoint,
    pub height: u64,
    pub decomposable: bool,
}

/// Decides decomposability of points of `hS` into `h` points of `S`.
struct Decomposer<'a> {
    s: &'a OneRowSimplex,
    level_one: Vec<LatticePoint>,
    memo: HashMap<(u64, LatticePoint), bool>,
}

impl<'a> Decomposer<'a> {
    fn new(s: &'a OneRowSimplex, cap: u64) -> Result<Self> {
        Ok(Self { s, level_one: height_points(s, 1, cap)?, memo: HashMap::new() })
    }

    fn pair_sums(&self) -> HashSet<LatticePoint> {
        let p = &self.level_one;
        let mut sums = HashSet::with_capacity(p.len() * (p.len() + 1) / 2);
        for i in 0..p.len() {
            for j in i..p.len() {
                sums.insert(p[i].iter().zip(&p[j]).map(|(x, y)| x + y).collect());
            }
        }
        sums
    }

    fn decomposable(&mut self, x: &LatticePoint, h: u64) -> bool {
        if h <= 1 {
            return true;
        }
        if let Some(&known) = self.memo.get(&(h, x.clone())) {
            return known;
        }
        let mut found = false;
        for idx in 0..self.level_one.len() {
            let rest: LatticePoint =
                x.iter().zip(&self.level_one[idx]).map(|(a, b)| a - b).collect();
            if in_dilate(self.s, i128::from(h - 1), &rest) && self.decomposable(&rest, h - 1) {
                found = true;
                break;
            }
        }
        self.memo.insert((h, x.clone()), found);
        found
    }
}

/// Search `hS` for a lattice point that is not a sum of `h` lattice points
/// of `S`. Returns the smallest such point in lexicographic order.
pub fn find_non_idp_witness(s: &OneRowSimplex, h: u64, cap: u64) -> Result<Option<IdpWitness>> {
    if h < 2 {
        return Err(Error::OutOfRange(format!("witness height must be at least 2 (got {h})")));
    }
    let mut dec = Decomposer::new(s, cap)?;
    let candidates = height_points(s, h, cap)?;
    if h == 2 {
        let sums = dec.pair_sums();
        return Ok(candidates
            .into_iter()
            .find(|x| !sums.contains(x))
            .map(|point| IdpWitness { point, height: 2, decomposable: false }));
    }
    Ok(candidates
        .into_iter()
        .find(|x| !dec.decomposable(x, h))
        .map(|point| IdpWitness { point, height: h, decomposable: false }))
}

/// Whether a given point of `hS` splits into `h` lattice points of `S`.
pub fn is_decomposable(s: &OneRowSimplex, point: &[i128], h: u64, cap: u64) -> Result<bool> {
    if point.len() != s.dim() {
        return Err(Error::OutOfRange(format!(
            "point has {} coordinates, simplex dimension is {}",
            point.len(),
            s.dim()
        )));
    }
    if !in_dilate(s, i128::from(h), point) {
        return Err(Error::OutOfRange(format!("point {point:?} is not in {h}S")));
    }
    let mut dec = Decomposer::new(s, cap)?;
    Ok(dec.decomposable(&point.to_vec(), h))
}

/// Full IDP check: a simplex has the property iff every height from 2 to
/// `d - 1` is free of witnesses. `None` means IDP.
pub fn certify_idp(s: &OneRowSimplex, cap: u64) -> Result<Option<IdpWitness>> {
    for h in 2..s.dim() as u64 {
        if let Some(w) = find_non_idp_witness(s, h, cap)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: &[u64], n: u64) -> OneRowSimplex {
        OneRowSimplex::new(a.to_vec(), n).unwrap()
    }

    fn p(c: &[u64]) -> IntPolynomial {
        IntPolynomial::from_u64s(c)
    }

    #[test]
    fn box_and_hstar_examples() {
        assert_eq!(local_hstar(&s(&[1, 1, 1, 1], 6)), p(&[0, 0, 1, 1, 1]));
        assert_eq!(hstar(&s(&[1, 1, 1, 1], 6)), p(&[1, 0, 2, 2, 1]));
        assert_eq!(hstar(&s(&[1, 1, 1, 1], 7)), p(&[1, 0, 2, 2, 2]));
        assert_eq!(hstar(&s(&[0], 1)), p(&[1]));
        let mut fig1 = vec![0, 0];
        fig1.extend([22; 15]);
        assert_eq!(local_hstar(&s(&[1; 16], 331)), p(&fig1));
        assert_eq!(
            local_hstar(&s(&[1, 4, 2, 2, 2, 1, 2, 1, 2, 1], 69)),
            p(&[0, 0, 4, 6, 8, 11, 10, 11, 8, 6, 4])
        );
    }

    #[test]
    fn chunked_histogram_matches_serial() {
        let big = s(&[3, 7, 11, 2], 100_003);
        assert_eq!(age_histogram(&big), histogram_range(&big, 0, big.n()));
    }

    #[test]
    fn gcd_criterion_examples() {
        assert!(!gcd_criterion(&s(&[1, 1, 1, 1], 6)).unwrap());
        assert!(gcd_criterion(&s(&[1, 1, 1, 1], 7)).unwrap());
        assert!(gcd_criterion(&s(&[1; 16], 331)).unwrap());
        assert_eq!(gcd_criterion(&s(&[1], 3)), Err(Error::DegenerateRow));
        assert_eq!(gcd_criterion(&s(&[0, 2], 3)), Err(Error::DegenerateRow));
    }

    #[test]
    fn height_points_examples() {
        let tri = s(&[1, 1], 4);
        let pts = height_points(&tri, 1, 1000).unwrap();
        assert_eq!(pts, vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 4]]);
        let five = s(&[1, 1, 1, 1], 6);
        assert_eq!(height_points(&five, 2, 10_000).unwrap().len() as u128, height_point_count(&five, 2));
        assert!(matches!(height_points(&five, 3, 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn dilate_and_reciprocity_examples() {
        assert_eq!(smallest_interior_dilate(&s(&[1, 1], 4)), 2);
        assert_eq!(smallest_interior_dilate(&s(&[1, 1, 1, 1], 6)), 2);
        assert_eq!(smallest_interior_dilate(&s(&[0], 1)), 3);
        assert_eq!(interior_hstar(&s(&[1, 1], 4)), p(&[0, 0, 3, 0, 1]));
        assert_eq!(interior_hstar(&s(&[0], 1)), p(&[0, 0, 0, 1]));
        assert_eq!(interior_hstar(&s(&[1, 1, 1, 1], 6)), p(&[0, 0, 1, 2, 2, 0, 1]));
        assert_eq!(boundary_hstar(&s(&[1, 1], 4)).unwrap(), p(&[1, 1, 1, 1]));
        assert_eq!(boundary_hstar(&s(&[0], 1)).unwrap(), p(&[1, 1, 1]));
        assert_eq!(boundary_hstar(&s(&[1, 1, 1, 1], 6)).unwrap(), p(&[1, 1, 2, 2, 1, 1]));
    }

    #[test]
    fn stapledon_examples() {
        let dec = stapledon_decompose(&s(&[1, 1], 4)).unwrap();
        assert_eq!(dec.ell_min, 2);
        assert_eq!(dec.b_poly, p(&[2, 2]));
        assert_eq!(dec.a_poly, p(&[1, 1, 1, 1]));

        let unimodular = stapledon_decompose(&s(&[0], 1)).unwrap();
        assert_eq!(unimodular.ell_min, 3);
        assert!(unimodular.b_poly.is_zero());
        assert_eq!(unimodular.a_poly, p(&[1, 1, 1]));

        let five = stapledon_decompose(&s(&[1, 1, 1, 1], 6)).unwrap();
        assert_eq!(five.b_poly, p(&[0, 2, 2]));
    }

    #[test]
    fn zb_hypothesis() {
        assert!(matches!(check_zb_bounded_by_b(&s(&[1, 1], 4)), Err(Error::HypothesisUnmet(_))));
        assert!(matches!(check_zb_bounded_by_b(&s(&[0], 1)), Err(Error::HypothesisUnmet(_))));
        // (2,3) over 7 has age-1 open-box elements, so l = 1
        let interior = s(&[2, 3], 7);
        assert_eq!(smallest_interior_dilate(&interior), 1);
        assert!(check_zb_bounded_by_b(&interior).unwrap());
    }

    #[test]
    fn shifted_symmetry_examples() {
        assert!(!is_shifted_symmetric(&p(&[1, 0, 2, 2, 1]), 5));
        assert!(is_shifted_symmetric(&p(&[1, 0, 2, 2, 2]), 5));
        assert!(is_shifted_symmetric(&p(&[1]), 1));
    }

    #[test]
    fn idp_examples() {
        let w = find_non_idp_witness(&s(&[2, 1], 4), 2, 10_000).unwrap().unwrap();
        assert!(!w.decomposable);
        assert!(!is_decomposable(&s(&[2, 1], 4), &[2, 1, 3], 2, 10_000).unwrap());
        assert!(certify_idp(&s(&[0, 0], 1), 10_000).unwrap().is_none());
        assert!(find_non_idp_witness(&s(&[0, 0, 0], 1), 3, 10_000).unwrap().is_none());
        // h*_1 = 0: the six vertices cannot produce the age-2 box points
        let five = s(&[1, 1, 1, 1], 6);
        let w = find_non_idp_witness(&five, 2, 100_000).unwrap().unwrap();
        assert!(five.iter_group().any(|g| g.age == 2 && five.parallelepiped_point(&g) == w.point));
    }
}
