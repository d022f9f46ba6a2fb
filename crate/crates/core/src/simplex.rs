//! Hermite normal form simplices and the parallelepiped group of a one-row
//! simplex.
//!
//! For the row `(a_1, ..., a_{d-1}, N)` the group is cyclic of order `N`.
//! Its element `l` is stored by the numerators of its fractional coordinates
//! over the common denominator `N`:
//!
//! ```text
//! ( l*a_0 mod N, -l*a_1 mod N, ..., -l*a_{d-1} mod N, l mod N ),  a_0 = sum(a_i) - 1
//! ```
//!
//! and its age is the sum of those numerators divided by `N`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numtheory::{ceil_div, floor_div};
use crate::{Error, Result};

/// An integer point of a dilate `h S`, in the ambient coordinates of `S`.
pub type LatticePoint = Vec<i128>;

pub trait NormalizedVolume {
    /// `d!` times the Euclidean volume: the product of the HNF diagonal.
    fn normalized_volume(&self) -> BigUint;
}

/// A simplex in one-row Hermite normal form, i.e. the convex hull of
/// `0, e_1, ..., e_{d-1}` and `(a_1, ..., a_{d-1}, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneRowSimplex {
    a: Vec<u64>,
    n: u64,
}

/// Validate a row against the HNF bounds `0 <= a_i < N`, `N >= 1`, `d >= 2`.
pub fn validate(a: Vec<u64>, n: u64) -> Result<OneRowSimplex> {
    OneRowSimplex::new(a, n)
}

impl OneRowSimplex {
    pub fn new(a: Vec<u64>, n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSimplex("N must be at least 1".into()));
        }
        if a.is_empty() {
            return Err(Error::InvalidSimplex(
                "dimension must be at least 2 (row needs one off-diagonal entry)".into(),
            ));
        }
        if let Some((index, &value)) = a.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::EntryTooLarge { index: index + 1, value, n });
        }
        Ok(Self { a, n })
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.a.len() + 1
    }

    /// `sum(a_i)`, exact.
    pub fn row_sum(&self) -> u128 {
        self.a.iter().map(|&v| u128::from(v)).sum()
    }

    /// Per-coordinate increments of the group generator, reduced mod `N`.
    fn generator(&self) -> Vec<u64> {
        let n = u128::from(self.n);
        let mut steps = Vec::with_capacity(self.dim() + 1);
        steps.push(((self.row_sum() % n + n - 1) % n) as u64);
        steps.extend(self.a.iter().map(|&v| ((n - u128::from(v) % n) % n) as u64));
        steps.push((1 % n) as u64);
        steps
    }

    fn residues_at(&self, steps: &[u64], ell: u64) -> Vec<u64> {
        let n = u128::from(self.n);
        steps
            .iter()
            .map(|&c| ((u128::from(c) * u128::from(ell)) % n) as u64)
            .collect()
    }

    /// The group element `l` with its residues and age.
    pub fn group_element(&self, ell: u64) -> Result<GroupElementView> {
        if ell >= self.n {
            return Err(Error::OutOfRange(format!(
                "group index {ell} must be below N = {}",
                self.n
            )));
        }
        let residues = self.residues_at(&self.generator(), ell);
        Ok(GroupElementView::from_residues(ell, residues, self.n))
    }

    /// All `N` group elements in order of `l`.
    pub fn iter_group(&self) -> GroupIter<'_> {
        self.iter_group_range(0..self.n)
    }

    /// Group elements for `l` in `range` (clamped to `0..N`), for chunked or
    /// parallel consumption.
    pub fn iter_group_range(&self, range: Range<u64>) -> GroupIter<'_> {
        let end = range.end.min(self.n);
        let start = range.start.min(end);
        let steps = self.generator();
        let current = self.residues_at(&steps, start);
        GroupIter { simplex: self, steps, current, next: start, end }
    }

    /// Visit `(l, age, zero_residue_count)` for every `l` in `range` without
    /// allocating per element. Residues are advanced incrementally.
    pub(crate) fn scan_ages(&self, range: Range<u64>, mut visit: impl FnMut(u64, u64, usize)) {
        let end = range.end.min(self.n);
        if range.start >= end {
            return;
        }
        let n = self.n;
        let steps = self.generator();
        let mut residues = self.residues_at(&steps, range.start);
        for ell in range.start..end {
            let mut sum: u128 = 0;
            let mut zeros = 0usize;
            for &r in &residues {
                sum += u128::from(r);
                zeros += usize::from(r == 0);
            }
            visit(ell, (sum / u128::from(n)) as u64, zeros);
            for (r, &c) in residues.iter_mut().zip(&steps) {
                *r = if *r >= n - c { *r - (n - c) } else { *r + c };
            }
        }
    }

    /// `1 + ceil(l a_0 / N) - sum floor(l a_i / N)`.
    ///
    /// This is the age of `l` times the negated generator
    /// `(-a_0/N, a_1/N, ..., a_{d-1}/N, -1/N)`, which equals the residue age of
    /// the element `N - l`. Valid for `1 <= l <= N - 1`.
    pub fn closed_form_age(&self, ell: u64) -> Result<i128> {
        if ell == 0 || ell >= self.n {
            return Err(Error::OutOfRange(format!(
                "closed-form age needs 1 <= l < N = {} (got {ell})",
                self.n
            )));
        }
        let l = i128::from(ell);
        let n = i128::from(self.n);
        let small = (|| {
            let a0 = i128::try_from(self.row_sum()).ok()? - 1;
            let mut age = 1 + ceil_div(l.checked_mul(a0)?, n);
            for &v in &self.a {
                age -= floor_div(l.checked_mul(i128::from(v))?, n);
            }
            Some(age)
        })();
        if let Some(age) = small {
            return Ok(age);
        }
        // Products beyond 128 bits.
        use num_integer::Integer;
        let l = BigInt::from(ell);
        let n = BigInt::from(self.n);
        let a0 = BigInt::from(self.row_sum()) - 1;
        let prod: BigInt = &l * a0;
        let mut age = BigInt::one() - Integer::div_floor(&-prod, &n);
        for &v in &self.a {
            age -= Integer::div_floor(&(&l * BigInt::from(v)), &n);
        }
        i128::try_from(age).map_err(|e| Error::Internal(format!("age overflow: {e}")))
    }

    /// The `d + 1` vertices `0, e_1, ..., e_{d-1}, (a, N)`.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        let d = self.dim();
        let mut out = vec![vec![0i128; d]];
        for t in 0..d - 1 {
            let mut v = vec![0i128; d];
            v[t] = 1;
            out.push(v);
        }
        let mut last: LatticePoint = self.a.iter().map(|&v| i128::from(v)).collect();
        last.push(i128::from(self.n));
        out.push(last);
        out
    }

    /// The lattice point of the fundamental parallelepiped for a group
    /// element, without its height coordinate (which is the age).
    pub fn parallelepiped_point(&self, g: &GroupElementView) -> LatticePoint {
        let n = i128::from(self.n);
        let last = i128::from(g.residues[self.dim()]);
        let mut out: LatticePoint = self
            .a
            .iter()
            .enumerate()
            .map(|(t, &a)| (i128::from(g.residues[t + 1]) + last * i128::from(a)) / n)
            .collect();
        out.push(last);
        out
    }

    /// Barycentric coordinates of `point` with respect to the vertices of
    /// `S`, scaled so they sum to `height`. Nonnegative iff `point` lies in
    /// `height * S`.
    pub fn barycentric(&self, height: u64, point: &[i128]) -> Result<Vec<BigRational>> {
        let d = self.dim();
        if point.len() != d {
            return Err(Error::OutOfRange(format!(
                "point has {} coordinates, simplex dimension is {d}",
                point.len()
            )));
        }
        let n = BigInt::from(self.n);
        let last = BigRational::new(BigInt::from(point[d - 1]), n);
        let mut lambda = Vec::with_capacity(d + 1);
        lambda.push(BigRational::zero());
        for (t, &a) in self.a.iter().enumerate() {
            let x = BigRational::from_integer(BigInt::from(point[t]));
            lambda.push(x - &last * BigInt::from(a));
        }
        lambda.push(last);
        let rest = lambda[1..].iter().fold(BigRational::zero(), |acc, v| acc + v);
        lambda[0] = BigRational::from_integer(BigInt::from(height)) - rest;
        Ok(lambda)
    }

    pub fn contains_dilate(&self, height: u64, point: &[i128]) -> Result<bool> {
        Ok(self
            .barycentric(height, point)?
            .iter()
            .all(|l| *l >= BigRational::zero()))
    }

    /// The general HNF matrix of this simplex.
    pub fn to_general(&self) -> GeneralHnfSimplex {
        GeneralHnfSimplex { rows: self.vertices() }
    }
}

impl NormalizedVolume for OneRowSimplex {
    fn normalized_volume(&self) -> BigUint {
        BigUint::from(self.n)
    }
}

impl fmt::Display for OneRowSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";{}", self.n)
    }
}

/// Parses `"a1,a2,...,ak;N"`. Whitespace around numbers is ignored.
impl FromStr for OneRowSimplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(semi) = s.find(';') else {
            return Err(Error::Parse { pos: s.len(), msg: "expected ';' before N".into() });
        };
        let parse_num = |text: &str, pos: usize| -> Result<u64> {
            let trimmed = text.trim();
            let lead = text.len() - text.trim_start().len();
            trimmed.parse::<u64>().map_err(|e| Error::Parse {
                pos: pos + lead,
                msg: format!("{trimmed:?} is not a nonnegative integer ({e})"),
            })
        };
        let (row, n_text) = (&s[..semi], &s[semi + 1..]);
        let mut a = Vec::new();
        if !row.trim().is_empty() {
            let mut pos = 0;
            for part in row.split(',') {
                a.push(parse_num(part, pos)?);
                pos += part.len() + 1;
            }
        }
        let n = parse_num(n_text, semi + 1)?;
        Self::new(a, n)
    }
}

/// An element of the parallelepiped group of a one-row simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElementView {
    pub ell: u64,
    /// Numerators over `N` of the `d + 1` fractional coordinates.
    pub residues: Vec<u64>,
    pub age: u64,
}

impl GroupElementView {
    fn from_residues(ell: u64, residues: Vec<u64>, n: u64) -> Self {
        let sum: u128 = residues.iter().map(|&r| u128::from(r)).sum();
        debug_assert_eq!(sum % u128::from(n), 0);
        let age = (sum / u128::from(n)) as u64;
        Self { ell, residues, age }
    }

    /// In the open cube: no coordinate is integral.
    pub fn in_open_box(&self) -> bool {
        self.residues.iter().all(|&r| r != 0)
    }

    pub fn zero_count(&self) -> usize {
        self.residues.iter().filter(|&&r| r == 0).count()
    }
}

pub struct GroupIter<'a> {
    simplex: &'a OneRowSimplex,
    steps: Vec<u64>,
    current: Vec<u64>,
    next: u64,
    end: u64,
}

impl Iterator for GroupIter<'_> {
    type Item = GroupElementView;

    fn next(&mut self) -> Option<GroupElementView> {
        if self.next >= self.end {
            return None;
        }
        let n = self.simplex.n;
        let g = GroupElementView::from_residues(self.next, self.current.clone(), n);
        for (r, &c) in self.current.iter_mut().zip(&self.steps) {
            *r = if *r >= n - c { *r - (n - c) } else { *r + c };
        }
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

impl ExactSizeIterator for GroupIter<'_> {}

/// A simplex in general Hermite normal form: `d + 1` rows of a lower
/// triangular `(d+1) x d` matrix whose first row is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralHnfSimplex {
    rows: Vec<LatticePoint>,
}

impl GeneralHnfSimplex {
    pub fn new(rows: Vec<LatticePoint>) -> Result<Self> {
        let d = rows.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
            Error::InvalidSimplex("need at least two rows".into())
        })?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidSimplex(format!(
                    "row {i} has {} entries, expected {d}",
                    row.len()
                )));
            }
        }
        if rows[0].iter().any(|&v| v != 0) {
            return Err(Error::InvalidSimplex("first row must be zero".into()));
        }
        for i in 1..=d {
            let diag = rows[i][i - 1];
            if diag < 1 {
                return Err(Error::InvalidSimplex(format!(
                    "diagonal entry ({i},{i}) = {diag} must be positive"
                )));
            }
            for (j, &v) in rows[i].iter().enumerate() {
                let col = j + 1;
                if col < i && !(0..diag).contains(&v) {
                    return Err(Error::InvalidSimplex(format!(
                        "entry ({i},{col}) = {v} must lie in [0, {diag})"
                    )));
                }
                if col > i && v != 0 {
                    return Err(Error::InvalidSimplex(format!(
                        "entry ({i},{col}) = {v} above the diagonal must be zero"
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.rows
    }

    /// Rows lifted to height one: a leading column of ones.
    pub fn extended_matrix(&self) -> Vec<LatticePoint> {
        self.rows
            .iter()
            .map(|r| std::iter::once(1).chain(r.iter().copied()).collect())
            .collect()
    }

    /// One-row form, if every diagonal entry but the last is one.
    pub fn as_one_row(&self) -> Option<OneRowSimplex> {
        let d = self.dim();
        if (1..d).any(|i| self.rows[i][i - 1] != 1) {
            return None;
        }
        let last = &self.rows[d];
        let a = last[..d - 1]
            .iter()
            .map(|&v| u64::try_from(v).ok())
            .collect::<Option<Vec<_>>>()?;
        let n = u64::try_from(last[d - 1]).ok()?;
        OneRowSimplex::new(a, n).ok()
    }
}

impl NormalizedVolume for GeneralHnfSimplex {
    fn normalized_volume(&self) -> BigUint {
        (1..=self.dim())
            .map(|i| BigUint::try_from(self.rows[i][i - 1]).unwrap_or_default())
            .product()
    }
}
