use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::distribution::{to_distribution, CoefficientDistribution};
use crate::invariants::{age_histogram, find_non_idp_witness, gcd_criterion};
use crate::poly::{is_palindromic, is_strictly_unimodal, is_unimodal, IntPolynomial};
use crate::simplex::OneRowSimplex;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of the height-2 witness search: `Yes` means a witness to the
/// failure of IDP was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdpStatus {
    Yes,
    No,
    Skipped,
}

impl IdpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Yes => "yes",
            Self::No => "no",
            Self::Skipped => "skipped",
        }
    }
}

impl FromStr for IdpStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Self::Yes),
            "no" => Ok(Self::No),
            "skipped" => Ok(Self::Skipped),
            other => Err(Error::Parse { pos: 0, msg: format!("unknown idp_witness {other:?}") }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecordOptions {
    /// Run the height-2 witness search with this point cap.
    pub idp_cap: Option<u64>,
    /// Store wall time; off by default so output is reproducible byte for byte.
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub simplex: OneRowSimplex,
    pub box_poly: IntPolynomial,
    pub hstar: IntPolynomial,
    /// `None` when `B` is zero.
    pub box_distribution: Option<CoefficientDistribution>,
    pub unimodal: bool,
    pub strictly_unimodal: bool,
    /// False when the criterion is undefined for the row.
    pub gcd_criterion: bool,
    pub idp_witness: IdpStatus,
    pub wall_time: Option<Duration>,
}

impl ExperimentRecord {
    pub fn compute(simplex: OneRowSimplex, opts: RecordOptions) -> Result<Self> {
        let start = Instant::now();
        let hist = age_histogram(&simplex);
        let box_poly = hist.local_hstar();
        let hstar = hist.hstar();
        let box_distribution = if box_poly.is_zero() {
            None
        } else {
            Some(to_distribution(&box_poly)?)
        };
        let gcd = match gcd_criterion(&simplex) {
            Ok(v) => v,
            Err(Error::DegenerateRow) => false,
            Err(e) => return Err(e),
        };
        let idp_witness = match opts.idp_cap {
            None => IdpStatus::Skipped,
            Some(cap) => match find_non_idp_witness(&simplex, 2, cap)? {
                Some(_) => IdpStatus::Yes,
                None => IdpStatus::No,
            },
        };
        let record = Self {
            unimodal: is_unimodal(&box_poly),
            strictly_unimodal: is_strictly_unimodal(&box_poly),
            gcd_criterion: gcd,
            simplex,
            box_poly,
            hstar,
            box_distribution,
            idp_witness,
            wall_time: opts.timings.then(|| start.elapsed()),
        };
        Ok(record)
    }

    pub fn spec(&self) -> String {
        self.simplex.to_string()
    }

    /// Cross-module invariants every emitted record must satisfy.
    pub fn check_consistency(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("{}: {what}", self.spec())));
        let d = self.simplex.dim();
        if !self.box_poly.le_coefficientwise(&self.hstar) {
            return fail("B exceeds h* coefficientwise");
        }
        if self.hstar.eval_one() != BigUint::from(self.simplex.n()) || self.hstar.coeff(0) != BigUint::one() {
            return fail("h*(1) != N or h*_0 != 1");
        }
        if !self.box_poly.coeff(0).is_zero() || !is_palindromic(&self.box_poly, 1, d) {
            return fail("B/z is not palindromic");
        }
        match &self.box_distribution {
            None if !self.box_poly.is_zero() => return fail("missing distribution"),
            Some(dist)
                if !dist.total().is_one() || to_distribution(&self.box_poly).as_ref() != Ok(dist) =>
            {
                return fail("distribution does not match B")
            }
            _ => {}
        }
        if self.unimodal != is_unimodal(&self.box_poly)
            || self.strictly_unimodal != is_strictly_unimodal(&self.box_poly)
        {
            return fail("unimodality flags do not match B");
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&RecordJson::from(self)).expect("record serialises")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let raw: RecordJson = serde_json::from_str(line)
            .map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        raw.try_into()
    }
}

/// Parse, validate and compute one simplex given as `"a1,...,ak;N"`.
pub fn run_compute(spec: &str, opts: RecordOptions) -> Result<ExperimentRecord> {
    ExperimentRecord::compute(spec.parse()?, opts)
}

/// Wire form. Field order is the serialised order.
#[derive(Debug, Serialize, Deserialize)]
struct RecordJson {
    schema: u32,
    a: Vec<String>,
    #[serde(rename = "N")]
    n: String,
    d: usize,
    #[serde(rename = "box")]
    box_poly: Vec<String>,
    hstar: Vec<String>,
    box_dist: Vec<[String; 2]>,
    unimodal: bool,
    strictly_unimodal: bool,
    gcd_criterion: bool,
    idp_witness: String,
    ms: Option<f64>,
}

fn decimal_strings(p: &IntPolynomial, len: usize) -> Vec<String> {
    p.padded(len).iter().map(ToString::to_string).collect()
}

impl From<&ExperimentRecord> for RecordJson {
    fn from(r: &ExperimentRecord) -> Self {
        let d = r.simplex.dim();
        let box_dist = match &r.box_distribution {
            None => Vec::new(),
            Some(dist) => dist
                .padded(d + 1)
                .iter()
                .map(|p| [p.numer().to_string(), p.denom().to_string()])
                .collect(),
        };
        Self {
            schema: SCHEMA_VERSION,
            a: r.simplex.a().iter().map(ToString::to_string).collect(),
            n: r.simplex.n().to_string(),
            d,
            box_poly: decimal_strings(&r.box_poly, d + 1),
            hstar: decimal_strings(&r.hstar, d + 1),
            box_dist,
            unimodal: r.unimodal,
            strictly_unimodal: r.strictly_unimodal,
            gcd_criterion: r.gcd_criterion,
            idp_witness: r.idp_witness.as_str().to_string(),
            ms: r.wall_time.map(|t| t.as_secs_f64() * 1e3),
        }
    }
}

fn parse_field<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse { pos: 0, msg: format!("{what}: {s:?} is not a nonnegative integer") })
}

impl TryFrom<RecordJson> for ExperimentRecord {
    type Error = Error;

    fn try_from(raw: RecordJson) -> Result<Self> {
        if raw.schema != SCHEMA_VERSION {
            return Err(Error::Parse { pos: 0, msg: format!("unsupported schema {}", raw.schema) });
        }
        let a = raw.a.iter().map(|v| parse_field(v, "a")).collect::<Result<Vec<u64>>>()?;
        let simplex = OneRowSimplex::new(a, parse_field(&raw.n, "N")?)?;
        if simplex.dim() != raw.d {
            return Err(Error::Parse { pos: 0, msg: format!("d = {} disagrees with a", raw.d) });
        }
        let poly = |v: &[String], what: &str| -> Result<IntPolynomial> {
            Ok(IntPolynomial::from_coeffs(
                v.iter().map(|c| parse_field::<BigUint>(c, what)).collect::<Result<_>>()?,
            ))
        };
        let box_distribution = if raw.box_dist.is_empty() {
            None
        } else {
            let probs = raw
                .box_dist
                .iter()
                .map(|[num, den]| {
                    let num: BigInt = parse_field(num, "box_dist")?;
                    let den: BigInt = parse_field(den, "box_dist")?;
                    if den.is_zero() {
                        return Err(Error::Parse { pos: 0, msg: "zero denominator".into() });
                    }
                    Ok(BigRational::new(num, den))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(CoefficientDistribution::from_probs(probs)?)
        };
        Ok(Self {
            simplex,
            box_poly: poly(&raw.box_poly, "box")?,
            hstar: poly(&raw.hstar, "hstar")?,
            box_distribution,
            unimodal: raw.unimodal,
            strictly_unimodal: raw.strictly_unimodal,
            gcd_criterion: raw.gcd_criterion,
            idp_witness: raw.idp_witness.parse()?,
            wall_time: raw.ms.map(|ms| Duration::from_secs_f64(ms.max(0.0) / 1e3)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_examples() {
        let r = run_compute("1,1,1,1;6", RecordOptions::default()).unwrap();
        assert_eq!(r.box_poly, IntPolynomial::from_u64s(&[0, 0, 1, 1, 1]));
        assert_eq!(r.hstar, IntPolynomial::from_u64s(&[1, 0, 2, 2, 1]));
        r.check_consistency().unwrap();
        let table = run_compute("1,4,2,2,2,1,2,1,2,1;69", RecordOptions::default()).unwrap();
        assert!(!table.unimodal);
        assert!(run_compute("1;1", RecordOptions::default()).is_err());
    }

    #[test]
    fn json_line_schema() {
        let r = run_compute("1,1,1,1;6", RecordOptions::default()).unwrap();
        let line = r.to_json_line();
        assert_eq!(
            line,
            r#"{"schema":1,"a":["1","1","1","1"],"N":"6","d":5,"box":["0","0","1","1","1","0"],"hstar":["1","0","2","2","1","0"],"box_dist":[["0","1"],["0","1"],["1","3"],["1","3"],["1","3"],["0","1"]],"unimodal":true,"strictly_unimodal":false,"gcd_criterion":false,"idp_witness":"skipped","ms":null}"#
        );
        assert_eq!(ExperimentRecord::from_json_line(&line).unwrap(), r);
    }

    #[test]
    fn thin_simplex_has_empty_distribution() {
        let r = run_compute("0,0;1", RecordOptions::default()).unwrap();
        assert!(r.box_distribution.is_none());
        r.check_consistency().unwrap();
        assert!(r.to_json_line().contains(r#""box_dist":[]"#));
    }
}
