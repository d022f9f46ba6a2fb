//! Experiment drivers: single computations, partition sweeps, seeded
//! sampling, the perturbation protocol and output in json-lines, csv,
//! plot-tsv or svg.
//!
//! Every driver collects results in input order, so output does not depend
//! on the number of worker threads. Wall times are recorded only on request.

pub mod emit;
pub mod record;
pub mod sample;
pub mod sweep;

pub use emit::{append_jsonl, emit, emit_to_path, existing_specs, render, Format};
pub use record::{run_compute, ExperimentRecord, IdpStatus, RecordOptions, SCHEMA_VERSION};
pub use sample::{
    perturbation_experiment, perturbed_record, sample_random, SampleConfig, SampleSummary,
    PERTURBATION_PAIRS, RNG_NAME,
};
pub use sweep::{partitions, sweep_partitions, SweepConfig, SweepOutcome, VolumePolicy};
