use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::record::{ExperimentRecord, IdpStatus, RecordOptions};
use crate::asymptotics::modulus_m;
use crate::invariants::DEFAULT_POINT_CAP;
use crate::numtheory::to_u64;
use crate::simplex::OneRowSimplex;
use crate::{Error, Result};

/// Identity of the generator behind every seeded command.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub d: usize,
    pub n: u64,
    pub count: usize,
    pub seed: u64,
    /// Cap for the height-2 witness search; `None` skips it.
    pub idp_cap: Option<u64>,
}

impl SampleConfig {
    pub fn new(d: usize, n: u64, count: usize, seed: u64) -> Self {
        Self { d, n, count, seed, idp_cap: Some(DEFAULT_POINT_CAP) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub rng: &'static str,
    pub seed: u64,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub count: usize,
    pub unimodal: usize,
    pub non_idp_witness: usize,
    pub unimodal_fraction: f64,
    pub non_idp_witness_fraction: f64,
}

/// Uniform rows from `[0, N-1]^(d-1)`, redrawing any with `sum(a) <= 1`.
/// Rows are drawn sequentially so the stream depends only on the seed.
pub fn sample_rows(d: usize, n: u64, count: usize, seed: u64) -> Result<Vec<Vec<u64>>> {
    if d < 2 || n < 2 {
        return Err(Error::OutOfRange(format!("need d >= 2 and N >= 2 (got d={d}, N={n})")));
    }
    if d == 2 && n == 2 {
        return Err(Error::OutOfRange("no row with sum(a) >= 2 exists for d=2, N=2".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let a: Vec<u64> = (0..d - 1).map(|_| rng.gen_range(0..n)).collect();
        if a.iter().map(|&v| u128::from(v)).sum::<u128>() > 1 {
            rows.push(a);
        }
    }
    Ok(rows)
}

pub fn sample_random(cfg: &SampleConfig) -> Result<(Vec<ExperimentRecord>, SampleSummary)> {
    let rows = sample_rows(cfg.d, cfg.n, cfg.count, cfg.seed)?;
    let opts = RecordOptions { idp_cap: cfg.idp_cap, timings: false };
    let records = rows
        .into_par_iter()
        .map(|a| ExperimentRecord::compute(OneRowSimplex::new(a, cfg.n)?, opts))
        .collect::<Result<Vec<_>>>()?;
    let unimodal = records.iter().filter(|r| r.unimodal).count();
    let non_idp = records.iter().filter(|r| r.idp_witness == IdpStatus::Yes).count();
    let frac = |x: usize| if records.is_empty() { 0.0 } else { x as f64 / records.len() as f64 };
    let summary = SampleSummary {
        rng: RNG_NAME,
        seed: cfg.seed,
        d: cfg.d,
        n: cfg.n,
        count: records.len(),
        unimodal,
        non_idp_witness: non_idp,
        unimodal_fraction: frac(unimodal),
        non_idp_witness_fraction: frac(non_idp),
    };
    Ok((records, summary))
}

/// The `(d, k)` pairs of the perturbation protocol.
pub const PERTURBATION_PAIRS: [(usize, u64); 11] = [
    (8, 1),
    (8, 4),
    (8, 7),
    (8, 10),
    (11, 1),
    (11, 4),
    (11, 7),
    (11, 10),
    (14, 1),
    (14, 4),
    (14, 7),
];

pub const PERTURBATIONS_PER_PAIR: usize = 10;

/// Largest offset added to an entry; offsets are i.i.d. uniform on `0..=4`.
pub const MAX_OFFSET: u64 = 4;

/// Record for the row `k + offsets[i]` with `N = M + 1`.
pub fn perturbed_record(k: u64, offsets: &[u64], opts: RecordOptions) -> Result<ExperimentRecord> {
    let a: Vec<u64> = offsets.iter().map(|&o| k + o).collect();
    let n = to_u64(&(modulus_m(&a)? + 1u32), "M + 1")?;
    ExperimentRecord::compute(OneRowSimplex::new(a, n)?, opts)
}

/// The constant row followed by ten seeded perturbations.
pub fn perturbation_experiment(d: usize, k: u64, seed: u64) -> Result<Vec<ExperimentRecord>> {
    if d < 2 || k < 1 {
        return Err(Error::OutOfRange(format!("need d >= 2 and k >= 1 (got d={d}, k={k})")));
    }
    let mut rng = rng_from_seed(seed);
    let mut offsets = vec![vec![0u64; d - 1]];
    for _ in 0..PERTURBATIONS_PER_PAIR {
        offsets.push((0..d - 1).map(|_| rng.gen_range(0..=MAX_OFFSET)).collect());
    }
    offsets
        .par_iter()
        .map(|o| perturbed_record(k, o, RecordOptions::default()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sample() {
        let (records, summary) = sample_random(&SampleConfig::new(4, 11, 0, 7)).unwrap();
        assert!(records.is_empty());
        assert_eq!(summary.unimodal_fraction, 0.0);
        assert_eq!(summary.count, 0);
    }

    #[test]
    fn rows_depend_only_on_seed() {
        let a = sample_rows(6, 50, 20, 42).unwrap();
        assert_eq!(a, sample_rows(6, 50, 20, 42).unwrap());
        assert_ne!(a, sample_rows(6, 50, 20, 43).unwrap());
        assert!(a.iter().flatten().all(|&v| v < 50));
        assert!(a.iter().all(|r| r.iter().sum::<u64>() > 1));
    }

    #[test]
    fn table_row_reached_by_offsets() {
        let r = perturbed_record(1, &[0, 3, 1, 1, 1, 0, 1, 0, 1, 0], RecordOptions::default()).unwrap();
        assert_eq!(r.simplex.n(), 69);
        assert!(!r.unimodal);
    }

    #[test]
    fn perturbation_protocol_shape() {
        let recs = perturbation_experiment(8, 10, 1).unwrap();
        assert_eq!(recs.len(), 11);
        assert!(recs[0].simplex.a().iter().all(|&v| v == 10));
        assert!(recs[1..].iter().flat_map(|r| r.simplex.a()).all(|&v| (10..=14).contains(&v)));
    }
}
