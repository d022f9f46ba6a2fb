//! Dense polynomials with nonnegative integer coefficients and the
//! shape predicates used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A polynomial `sum c_i z^i` with `c_i >= 0`, stored densely by degree.
///
/// The representation is canonical: trailing zero coefficients are dropped,
/// so the zero polynomial has an empty coefficient vector and derived
/// equality is polynomial equality. Use [`IntPolynomial::padded`] when a
/// fixed-length vector (e.g. indexed `0..=d`) is wanted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigUint>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigUint::one())
    }

    pub fn monomial(degree: usize, coeff: BigUint) -> Self {
        let mut coeffs = vec![BigUint::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `1 + z + ... + z^(len-1)`.
    pub fn geometric_series(len: usize) -> Self {
        Self::from_coeffs(vec![BigUint::one(); len])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero outside the stored range.
    pub fn coeff(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `z = 1`.
    pub fn eval_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Coefficient vector zero-padded to at least `len` entries.
    pub fn padded(&self, len: usize) -> Vec<BigUint> {
        let mut out = self.coeffs.clone();
        if out.len() < len {
            out.resize(len, BigUint::zero());
        }
        out
    }

    /// Coefficients as `u64`, or `None` if any does not fit.
    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn scale(&self, factor: &BigUint) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// True iff every coefficient of `self` is at most the matching one of `other`.
    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| *c <= other.coeff(i))
    }
}

impl From<Vec<u64>> for IntPolynomial {
    fn from(coeffs: Vec<u64>) -> Self {
        Self::from_u64s(&coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.len().max(rhs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigUint::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{c}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{c}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Weakly rises to a peak, then weakly falls. Empty and singleton sequences
/// are unimodal.
pub fn is_unimodal_seq<T: Ord>(seq: &[T]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] <= seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] >= seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

/// Strict rise, a peak plateau of length at most two, strict fall; leading
/// and trailing zeros are ignored.
pub fn is_strictly_unimodal_seq<T: Ord + Zero>(seq: &[T]) -> bool {
    let Some(start) = seq.iter().position(|c| !c.is_zero()) else {
        return true;
    };
    let end = seq.iter().rposition(|c| !c.is_zero()).unwrap_or(start);
    let s = &seq[start..=end];

    let mut i = 0;
    while i + 1 < s.len() && s[i] < s[i + 1] {
        i += 1;
    }
    let mut j = i;
    while j + 1 < s.len() && s[j] == s[j + 1] {
        j += 1;
    }
    if j - i > 1 {
        return false;
    }
    while j + 1 < s.len() && s[j] > s[j + 1] {
        j += 1;
    }
    j + 1 == s.len()
}

/// Unimodality over the full coefficient vector. The zero polynomial is
/// unimodal.
pub fn is_unimodal(p: &IntPolynomial) -> bool {
    is_unimodal_seq(p.coeffs())
}

pub fn is_strictly_unimodal(p: &IntPolynomial) -> bool {
    is_strictly_unimodal_seq(p.coeffs())
}

/// `coeffs[lo + j] == coeffs[hi - j]` for `j` in `0..=hi-lo`; coefficients
/// beyond the stored range read as zero.
pub fn is_palindromic(p: &IntPolynomial, lo: usize, hi: usize) -> bool {
    if lo > hi {
        return false;
    }
    let n = hi - lo;
    (0..=n / 2).all(|j| p.coeff(lo + j) == p.coeff(hi - j))
}
