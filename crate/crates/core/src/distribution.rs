//! Probability distributions read off polynomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly::IntPolynomial;
use crate::{Error, Result};

/// The coefficients of `f(z) / f(1)` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientDistribution {
    probs: Vec<BigRational>,
}

impl CoefficientDistribution {
    /// Build from explicit probabilities; trailing zeros are dropped and the
    /// entries must lie in `[0, 1]` and sum to one.
    pub fn from_probs(mut probs: Vec<BigRational>) -> Result<Self> {
        while probs.last().is_some_and(Zero::is_zero) {
            probs.pop();
        }
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let one = BigRational::from_integer(BigInt::from(1));
        if probs.iter().any(|p| p.is_negative() || *p > one) {
            return Err(Error::OutOfRange("probability outside [0, 1]".into()));
        }
        let total = probs.iter().fold(BigRational::zero(), |acc, p| acc + p);
        if total != one {
            return Err(Error::OutOfRange(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probability of index `i`, zero past the end.
    pub fn prob(&self, i: usize) -> BigRational {
        self.probs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |acc, p| acc + p)
    }

    /// Entries zero-padded to `len`.
    pub fn padded(&self, len: usize) -> Vec<BigRational> {
        (0..len.max(self.len())).map(|i| self.prob(i)).collect()
    }

    /// Lossy decimal view for plotting.
    pub fn to_f64(&self) -> Vec<f64> {
        self.probs
            .iter()
            .map(|p| p.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// Normalise the coefficients of a nonzero polynomial to sum to one.
pub fn to_distribution(p: &IntPolynomial) -> Result<CoefficientDistribution> {
    if p.is_zero() {
        return Err(Error::EmptyDistribution);
    }
    let total = BigInt::from(p.eval_one());
    let probs = p
        .coeffs()
        .iter()
        .map(|c| BigRational::new(BigInt::from(c.clone()), total.clone()))
        .collect();
    Ok(CoefficientDistribution { probs })
}

/// Total variation distance `(1/2) sum |d1_i - d2_i|`, shorter input padded with zeros.
pub fn tv_distance(d1: &CoefficientDistribution, d2: &CoefficientDistribution) -> BigRational {
    let len = d1.len().max(d2.len());
    let l1 = (0..len).fold(BigRational::zero(), |acc, i| {
        acc + (d1.prob(i) - d2.prob(i)).abs()
    });
    l1 / BigRational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn distribution_examples() {
        let b = to_distribution(&IntPolynomial::from_u64s(&[0, 0, 1, 1, 1])).unwrap();
        assert_eq!(b.probs(), &[r(0, 1), r(0, 1), r(1, 3), r(1, 3), r(1, 3)]);
        let h = to_distribution(&IntPolynomial::from_u64s(&[1, 0, 2, 2, 1])).unwrap();
        assert_eq!(h.probs(), &[r(1, 6), r(0, 1), r(1, 3), r(1, 3), r(1, 6)]);
        let single = to_distribution(&IntPolynomial::from_u64s(&[0, 5])).unwrap();
        assert_eq!(single.probs(), &[r(0, 1), r(1, 1)]);
        assert!(h.total().is_one());
    }

    #[test]
    fn zero_polynomial_has_no_distribution() {
        assert_eq!(
            to_distribution(&IntPolynomial::zero()),
            Err(Error::EmptyDistribution)
        );
    }

    #[test]
    fn tv_examples() {
        let b = to_distribution(&IntPolynomial::from_u64s(&[0, 0, 1, 1, 1])).unwrap();
        let h = to_distribution(&IntPolynomial::from_u64s(&[1, 0, 2, 2, 1])).unwrap();
        assert!(tv_distance(&b, &b).is_zero());
        assert_eq!(tv_distance(&b, &h), r(1, 6));
        let e0 = to_distribution(&IntPolynomial::from_u64s(&[1])).unwrap();
        let e1 = to_distribution(&IntPolynomial::from_u64s(&[0, 1])).unwrap();
        assert!(tv_distance(&e0, &e1).is_one());
    }
}
