//! Closed forms for two structured rows.
//!
//! * All ones: `(1, ..., 1, N)` in dimension `d`. With `a = d - 2` its local
//!   h*-polynomial is `sum_i alpha_i z^(i+1)` where `alpha` counts
//!   `k in 1..N` by `ceil(a k / N)`, skipping `N | a k`.
//! * Geometric: `(q^(k-1), ..., q, 1, q^k)` in dimension `k + 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::invariants::{is_decomposable, local_hstar, IdpWitness};
use crate::poly::{is_unimodal, IntPolynomial};
use crate::simplex::OneRowSimplex;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVector {
    pub a: u64,
    pub n: u64,
    /// `entries[i - 1] = #{k in 1..N : ceil(a k / N) = i, N ∤ a k}`.
    pub entries: Vec<u64>,
}

impl AlphaVector {
    /// `(q, r)` with `N = a q + r`.
    pub fn quotient_remainder(&self) -> (u64, u64) {
        self.n.div_rem(&self.a)
    }
}

pub fn alpha_vector(a: u64, n: u64) -> Result<AlphaVector> {
    if a < 1 || n < 2 {
        return Err(Error::OutOfRange(format!("need a >= 1 and N >= 2 (got a={a}, N={n})")));
    }
    let len = usize::try_from(a).map_err(|_| Error::Overflow(format!("a = {a}")))?;
    let mut entries = vec![0u64; len];
    let (a128, n128) = (u128::from(a), u128::from(n));
    for k in 1..n {
        let ak = a128 * u128::from(k);
        if ak % n128 != 0 {
            entries[(ak.div_ceil(n128) - 1) as usize] += 1;
        }
    }
    Ok(AlphaVector { a, n, entries })
}

/// Entry `i + 1` of the alpha vector for coprime `a, N`: `q + 1` when
/// `1 <= a - (i r mod a) <= r - 1`, else `q`.
///
/// `a = 1` is rejected: the only entry is `N - 1`, not `q = N`.
pub fn allones_residue_rule(a: u64, n: u64, i: u64) -> Result<u64> {
    if a < 2 || n < 2 {
        return Err(Error::OutOfRange(format!("need a >= 2 and N >= 2 (got a={a}, N={n})")));
    }
    if a.gcd(&n) != 1 {
        return Err(Error::HypothesisUnmet(format!("gcd({a}, {n}) = {} is not 1", a.gcd(&n))));
    }
    if i >= a {
        return Err(Error::OutOfRange(format!("i = {i} must be below a = {a}")));
    }
    let (q, r) = n.div_rem(&a);
    let t = a - ((u128::from(i) * u128::from(r)) % u128::from(a)) as u64;
    Ok(if r >= 1 && (1..r).contains(&t) { q + 1 } else { q })
}

/// Shape of the local h*-polynomial of the all-ones row. "Constant" means
/// every coefficient in degrees `2..=d-1` is equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AllOnesClass {
    Constant,
    UnimodalNonConstant,
    NonUnimodal,
}

impl AllOnesClass {
    pub fn is_unimodal(self) -> bool {
        self != Self::NonUnimodal
    }
}

/// Rule-based classification from `a = d - 2`, `r = N mod a` and
/// `b = gcd(a, N)`.
pub fn allones_classify(d: u64, n: u64) -> Result<AllOnesClass> {
    if d < 3 || n < 2 {
        return Err(Error::OutOfRange(format!("need d >= 3 and N >= 2 (got d={d}, N={n})")));
    }
    let a = d - 2;
    let r = n % a;
    let b = a.gcd(&n);
    Ok(if b == 1 {
        if r <= 1 {
            AllOnesClass::Constant
        } else if r == 2 || r == a - 1 {
            AllOnesClass::UnimodalNonConstant
        } else {
            AllOnesClass::NonUnimodal
        }
    } else if r == 0 || r == b {
        AllOnesClass::Constant
    } else {
        AllOnesClass::NonUnimodal
    })
}

pub fn allones_simplex(d: u64, n: u64) -> Result<OneRowSimplex> {
    if d < 2 {
        return Err(Error::InvalidSimplex(format!("dimension {d} is below 2")));
    }
    let len = usize::try_from(d - 1).map_err(|_| Error::Overflow(format!("d = {d}")))?;
    OneRowSimplex::new(vec![1; len], n)
}

/// Classification read off the enumerated local h*-polynomial.
pub fn allones_classify_brute(d: u64, n: u64) -> Result<AllOnesClass> {
    let s = allones_simplex(d, n)?;
    let b = local_hstar(&s);
    let window: Vec<BigUint> = (2..d as usize).map(|i| b.coeff(i)).collect();
    Ok(if window.windows(2).all(|w| w[0] == w[1]) {
        AllOnesClass::Constant
    } else if is_unimodal(&b) {
        AllOnesClass::UnimodalNonConstant
    } else {
        AllOnesClass::NonUnimodal
    })
}

/// [`allones_classify`] cross-checked against enumeration.
pub fn allones_classify_checked(d: u64, n: u64) -> Result<AllOnesClass> {
    let rule = allones_classify(d, n)?;
    let brute = allones_classify_brute(d, n)?;
    if rule != brute {
        return Err(Error::Internal(format!(
            "all-ones classification for d={d}, N={n}: rule says {rule:?}, enumeration says {brute:?}"
        )));
    }
    Ok(rule)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeometricFamily {
    q: u64,
    k: u32,
}

impl GeometricFamily {
    pub fn new(q: u64, k: u32) -> Result<Self> {
        if q < 2 || k < 2 {
            return Err(Error::OutOfRange(format!("need q >= 2 and k >= 2 (got q={q}, k={k})")));
        }
        q.checked_pow(k)
            .ok_or_else(|| Error::Overflow(format!("{q}^{k} exceeds 64 bits")))?;
        Ok(Self { q, k })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `N = q^k`.
    pub fn volume(&self) -> u64 {
        self.q.pow(self.k)
    }

    /// Row `(q^(k-1), ..., q, 1)`.
    pub fn row(&self) -> Vec<u64> {
        (0..self.k).rev().map(|e| self.q.pow(e)).collect()
    }

    pub fn simplex(&self) -> OneRowSimplex {
        OneRowSimplex::new(self.row(), self.volume()).expect("powers of q are below q^k")
    }
}

/// `(t + ... + t^(q-1)) (1 + t + ... + t^(q-1))^(k-2)`.
pub fn digit_poly_f(q: u64, k: u32) -> Result<IntPolynomial> {
    GeometricFamily::new(q, k)?;
    let len = usize::try_from(q).map_err(|_| Error::Overflow(format!("q = {q}")))?;
    let full = IntPolynomial::geometric_series(len);
    let mut f = IntPolynomial::from_coeffs(
        std::iter::once(BigUint::zero()).chain(std::iter::repeat_n(BigUint::one(), len - 1)).collect(),
    );
    for _ in 2..k {
        f = &f * &full;
    }
    Ok(f)
}

/// `delta_i = sum of f's coefficients in degrees (i-1)(q-1)+1 ..= i(q-1)`,
/// for `i = 1..=k-1`.
pub fn geometric_delta(q: u64, k: u32) -> Result<Vec<BigUint>> {
    let f = digit_poly_f(q, k)?;
    let w = (q - 1) as usize;
    Ok((1..k as usize)
        .map(|i| ((i - 1) * w + 1..=i * w).map(|j| f.coeff(j)).sum())
        .collect())
}

/// Local h*-polynomial of the geometric simplex: `q delta_i z^(i+1)`.
pub fn geometric_local_hstar_fast(q: u64, k: u32) -> Result<IntPolynomial> {
    let delta = geometric_delta(q, k)?;
    let qb = BigUint::from(q);
    let mut coeffs = vec![BigUint::zero(); 2];
    coeffs.extend(delta.iter().map(|d| d * &qb));
    Ok(IntPolynomial::from_coeffs(coeffs))
}

fn check_ell(fam: &GeometricFamily, ell: u64) -> Result<u64> {
    let top = fam.q.pow(fam.k - 1);
    if ell < 1 || ell > top {
        return Err(Error::OutOfRange(format!("l = {ell} must lie in [1, {top}]")));
    }
    Ok(top)
}

/// `ceil((c_0 + ... + c_{k-2}) / (q - 1))` over the base-`q` digits of
/// `l mod q^(k-1)`.
pub fn geometric_age_base_q(q: u64, k: u32, ell: u64) -> Result<u64> {
    let fam = GeometricFamily::new(q, k)?;
    let top = check_ell(&fam, ell)?;
    let mut rest = ell % top;
    let mut digits = 0u64;
    while rest > 0 {
        digits += rest % q;
        rest /= q;
    }
    Ok(digits.div_ceil(q - 1))
}

/// `ceil(sum_{i=1}^{k-1} {l / q^i})`, evaluated over the common denominator
/// `q^(k-1)`.
pub fn geometric_age_fractional(q: u64, k: u32, ell: u64) -> Result<u64> {
    let fam = GeometricFamily::new(q, k)?;
    let top = check_ell(&fam, ell)?;
    let mut num: u128 = 0;
    for i in 1..k {
        let qi = q.pow(i);
        num += u128::from(ell % qi) * u128::from(top / qi);
    }
    Ok(num.div_ceil(u128::from(top)) as u64)
}

/// The point `(q^(k-1), ..., q, 1, q^k - 1)` of `2S`, certified to lie in
/// `2S` and to admit no split into two lattice points of `S`.
pub fn geometric_non_idp_witness(q: u64, k: u32, cap: u64) -> Result<IdpWitness> {
    let fam = GeometricFamily::new(q, k)?;
    let s = fam.simplex();
    let mut point: Vec<i128> = fam.row().into_iter().map(i128::from).collect();
    point.push(i128::from(fam.volume()) - 1);
    if !s.contains_dilate(2, &point)? {
        return Err(Error::Internal(format!("{point:?} is not in 2S")));
    }
    if is_decomposable(&s, &point, 2, cap)? {
        return Err(Error::Internal(format!("{point:?} splits into two points of S")));
    }
    Ok(IdpWitness { point, height: 2, decomposable: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u64]) -> IntPolynomial {
        IntPolynomial::from_u64s(c)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_vector(5, 12).unwrap().entries, vec![2, 2, 3, 2, 2]);
        assert_eq!(alpha_vector(1, 9).unwrap().entries, vec![8]);
        assert_eq!(alpha_vector(4, 6).unwrap().entries, vec![1, 1, 1, 1]);
        assert!(alpha_vector(0, 5).is_err());
    }

    #[test]
    fn residue_rule_examples() {
        let rule: Vec<u64> = (0..5).map(|i| allones_residue_rule(5, 12, i).unwrap()).collect();
        assert_eq!(rule, vec![2, 2, 3, 2, 2]);
        assert!((0..6).all(|i| allones_residue_rule(6, 13, i).unwrap() == 2));
        let seven: Vec<u64> = (0..7).map(|i| allones_residue_rule(7, 16, i).unwrap()).collect();
        assert_eq!(seven.iter().filter(|&&v| v == 3).count(), 1);
        assert_eq!(seven, alpha_vector(7, 16).unwrap().entries);
        assert!(allones_residue_rule(4, 6, 0).is_err());
        assert!(allones_residue_rule(1, 9, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(allones_classify_checked(17, 331).unwrap(), AllOnesClass::Constant);
        assert_eq!(allones_classify_checked(7, 12).unwrap(), AllOnesClass::UnimodalNonConstant);
        assert!(allones_classify_checked(6, 6).unwrap().is_unimodal());
        assert_eq!(allones_classify_checked(9, 11).unwrap(), AllOnesClass::NonUnimodal);
    }

    #[test]
    fn digit_polynomial_and_delta() {
        assert_eq!(digit_poly_f(2, 3).unwrap(), p(&[0, 1, 1]));
        assert_eq!(digit_poly_f(3, 3).unwrap(), p(&[0, 1, 2, 2, 1]));
        assert_eq!(digit_poly_f(2, 2).unwrap(), p(&[0, 1]));
        let u = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        assert_eq!(geometric_delta(2, 3).unwrap(), u(&[1, 1]));
        assert_eq!(geometric_delta(3, 3).unwrap(), u(&[3, 3]));
        assert_eq!(geometric_delta(2, 2).unwrap(), u(&[1]));
    }

    #[test]
    fn fast_local_hstar_examples() {
        assert_eq!(geometric_local_hstar_fast(2, 2).unwrap(), p(&[0, 0, 2]));
        assert_eq!(geometric_local_hstar_fast(2, 3).unwrap(), p(&[0, 0, 2, 2]));
        assert_eq!(geometric_local_hstar_fast(3, 3).unwrap(), p(&[0, 0, 9, 9]));
        let fam = GeometricFamily::new(3, 3).unwrap();
        assert_eq!(local_hstar(&fam.simplex()), p(&[0, 0, 9, 9]));
    }

    #[test]
    fn base_q_age_examples() {
        assert_eq!(geometric_age_base_q(2, 3, 3).unwrap(), 2);
        assert_eq!(geometric_age_base_q(2, 3, 1).unwrap(), 1);
        assert_eq!(geometric_age_base_q(3, 4, 26).unwrap(), 3);
        assert_eq!(geometric_age_fractional(3, 4, 26).unwrap(), 3);
        assert_eq!(geometric_age_base_q(2, 3, 4).unwrap(), 0);
        assert!(geometric_age_base_q(2, 3, 5).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(geometric_non_idp_witness(2, 2, 100_000).unwrap().point, vec![2, 1, 3]);
        assert_eq!(geometric_non_idp_witness(3, 2, 100_000).unwrap().point, vec![3, 1, 8]);
        assert_eq!(
            geometric_non_idp_witness(2, 4, 100_000).unwrap().point,
            vec![8, 4, 2, 1, 15]
        );
    }
}
