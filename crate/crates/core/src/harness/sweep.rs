use rayon::prelude::*;

use super::record::{ExperimentRecord, RecordOptions};
use crate::asymptotics::modulus_m;
use crate::numtheory::to_u64;
use crate::simplex::OneRowSimplex;
use crate::{Error, Result};

/// How the volume of each swept simplex is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumePolicy {
    /// `N = M + 1` with `M = lcm(a, sum(a) - 1)`.
    MPlusOne,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Partition target.
    pub n: u64,
    pub policy: VolumePolicy,
    pub distinct_parts: bool,
    /// Stop after this many partitions; the outcome is then marked truncated.
    pub budget: Option<u64>,
    pub record: RecordOptions,
}

impl SweepConfig {
    pub fn new(n: u64) -> Self {
        Self {
            n,
            policy: VolumePolicy::MPlusOne,
            distinct_parts: false,
            budget: None,
            record: RecordOptions::default(),
        }
    }
}

/// A partition that yields no simplex under the policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedRow {
    pub a: Vec<u64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub n: u64,
    /// Partitions visited, after the distinct-parts filter.
    pub visited: u64,
    pub records: Vec<ExperimentRecord>,
    pub skipped: Vec<SkippedRow>,
    pub truncated: bool,
}

impl SweepOutcome {
    pub fn unimodal_count(&self) -> usize {
        self.records.iter().filter(|r| r.unimodal).count()
    }

    /// Fraction of computed records with unimodal `B`; `None` if there are none.
    pub fn unimodal_fraction(&self) -> Option<f64> {
        (!self.records.is_empty())
            .then(|| self.unimodal_count() as f64 / self.records.len() as f64)
    }
}

/// Partitions of `n` as nonincreasing part lists, in reverse lexicographic
/// order starting from `[n]`.
pub fn partitions(n: u64) -> Partitions {
    Partitions { current: if n == 0 { Some(Vec::new()) } else { Some(vec![n]) } }
}

pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Iterator for Partitions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut p = out.clone();
        // drop trailing ones, then decrement the last part > 1 and refill
        let mut ones = 0u64;
        while p.last() == Some(&1) {
            p.pop();
            ones += 1;
        }
        if let Some(last) = p.pop() {
            let part = last - 1;
            let mut rest = ones + 1;
            p.push(part);
            while rest > 0 {
                let take = rest.min(part);
                p.push(take);
                rest -= take;
            }
            self.current = Some(p);
        }
        Some(out)
    }
}

pub fn has_distinct_parts(p: &[u64]) -> bool {
    p.windows(2).all(|w| w[0] != w[1])
}

fn simplex_for(a: &[u64], policy: VolumePolicy) -> Result<OneRowSimplex> {
    let n = match policy {
        VolumePolicy::Fixed(n) => n,
        VolumePolicy::MPlusOne => to_u64(&(modulus_m(a)? + 1u32), "M + 1")?,
    };
    OneRowSimplex::new(a.to_vec(), n)
}

pub fn sweep_partitions(cfg: &SweepConfig) -> Result<SweepOutcome> {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut truncated = false;
    for p in partitions(cfg.n).filter(|p| !cfg.distinct_parts || has_distinct_parts(p)) {
        if cfg.budget.is_some_and(|b| rows.len() as u64 >= b) {
            truncated = true;
            break;
        }
        rows.push(p);
    }

    let results: Vec<Result<std::result::Result<ExperimentRecord, SkippedRow>>> = rows
        .par_iter()
        .map(|a| match simplex_for(a, cfg.policy) {
            Ok(s) => ExperimentRecord::compute(s, cfg.record).map(Ok),
            Err(e @ (Error::DegenerateRow | Error::InvalidSimplex(_) | Error::EntryTooLarge { .. })) => {
                Ok(Err(SkippedRow { a: a.clone(), reason: e.to_string() }))
            }
            Err(e) => Err(e),
        })
        .collect();

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r? {
            Ok(rec) => records.push(rec),
            Err(skip) => skipped.push(skip),
        }
    }
    Ok(SweepOutcome { n: cfg.n, visited: rows.len() as u64, records, skipped, truncated })
}
