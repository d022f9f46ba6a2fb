use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use boxpoly::asymptotics::{
    age_shift_lemma_holds, convergence_report, hstar_limit_check, rational_to_f64,
    scaling_identity_check,
};
use boxpoly::families::{
    allones_classify_checked, allones_residue_rule, alpha_vector, geometric_local_hstar_fast,
    geometric_non_idp_witness, GeometricFamily,
};
use boxpoly::harness::{
    existing_specs, perturbation_experiment, render, run_compute, sample_random, sweep_partitions,
    ExperimentRecord, Format, RecordOptions, SampleConfig, SweepConfig, VolumePolicy,
    PERTURBATION_PAIRS,
};
use boxpoly::invariants::{
    certify_idp, find_non_idp_witness, interior_hstar, stapledon_decompose, DEFAULT_POINT_CAP,
};
use boxpoly::{hstar, local_hstar, IntPolynomial, OneRowSimplex};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "boxpoly", version, about = "h*- and local h*-polynomials of one-row HNF simplices")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: json, csv, tsv or svg.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Lattice-point budget for IDP searches.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    cap: u64,
    /// Record wall times (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Simplex as "a1,...,ak;N".
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum Command {
    /// Full record for one simplex.
    Compute {
        #[command(flatten)]
        spec: SpecArg,
        /// Also run the height-2 IDP witness search.
        #[arg(long)]
        idp: bool,
    },
    /// h*, local h* and interior h* as coefficient lists.
    Hstar {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Smallest interior dilate and the a/b decomposition.
    Stapledon {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Search for a point of hS that is not a sum of h points of S.
    IdpWitness {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2)]
        height: u64,
        /// Check every height from 2 to d-1.
        #[arg(long)]
        exhaustive_idp: bool,
    },
    /// Alpha vector, residue rule and classification of the all-ones row.
    Alpha {
        #[arg(long)]
        a: u64,
        #[arg(long = "volume", short = 'N')]
        n: u64,
    },
    /// Geometric row (q^(k-1), ..., q, 1; q^k).
    Geometric {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        /// Also certify the height-2 non-IDP witness.
        #[arg(long)]
        witness: bool,
    },
    /// Scaling identity, age-shift lemma and h* limit for a row.
    AsymptoticCheck {
        /// Row "a1,...,ak".
        #[arg(long)]
        row: String,
        #[arg(long, default_value_t = 2)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Distance of B(S_{kM+r}) to the limiting distribution for k = 1..k_max.
    Limit {
        #[arg(long)]
        row: String,
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
    },
    /// Every partition of n as a row.
    SweepPartitions {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        distinct: bool,
        /// Fixed volume instead of N = M + 1.
        #[arg(long = "volume", short = 'N')]
        fixed_volume: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Uniform random rows with fixed d and N.
    SampleRandom {
        #[arg(long)]
        d: usize,
        #[arg(long = "volume", short = 'N')]
        n: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the height-2 IDP witness search.
        #[arg(long)]
        no_idp: bool,
        /// Append to --out, skipping rows already present there.
        #[arg(long)]
        resume: bool,
    },
    /// Constant rows plus seeded perturbations, with N = M + 1.
    Perturb {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-render a json-lines file in another format.
    Emit {
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse_row(row: &str) -> Result<Vec<u64>> {
    row.split(',')
        .map(|v| v.trim().parse::<u64>().with_context(|| format!("bad row entry {v:?}")))
        .collect()
}

fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn write_out(out: Option<&Path>, text: &str, append: bool) -> Result<()> {
    match out {
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
        Some(path) if append => {
            let mut f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            f.write_all(text.as_bytes()).with_context(|| format!("writing {}", path.display()))
        }
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serialises") + "\n"
}

fn emit_records(cli: &Cli, records: &[ExperimentRecord]) -> Result<()> {
    let format: Format = cli.format.parse()?;
    write_out(cli.out.as_deref(), &render(records, format)?, false)
}

fn run(cli: &Cli) -> Result<()> {
    let record_opts = |idp: bool| RecordOptions { idp_cap: idp.then_some(cli.cap), timings: cli.timings };
    match &cli.command {
        Command::Compute { spec, idp } => {
            let record = run_compute(&spec.spec, record_opts(*idp))?;
            record.check_consistency()?;
            emit_records(cli, &[record])
        }
        Command::Hstar { spec } => {
            let s: OneRowSimplex = spec.spec.parse()?;
            let v = json!({
                "spec": s.to_string(),
                "hstar": poly_json(&hstar(&s)),
                "box": poly_json(&local_hstar(&s)),
                "interior_hstar": poly_json(&interior_hstar(&s)),
            });
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::Stapledon { spec } => {
            let s: OneRowSimplex = spec.spec.parse()?;
            let dec = stapledon_decompose(&s)?;
            let v = json!({
                "spec": s.to_string(),
                "ell": dec.ell_min,
                "a": poly_json(&dec.a_poly),
                "b": poly_json(&dec.b_poly),
                "a_text": dec.a_poly.to_string(),
                "b_text": dec.b_poly.to_string(),
            });
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::IdpWitness { spec, height, exhaustive_idp } => {
            let s: OneRowSimplex = spec.spec.parse()?;
            let w = if *exhaustive_idp {
                certify_idp(&s, cli.cap)?
            } else {
                find_non_idp_witness(&s, *height, cli.cap)?
            };
            let v = match w {
                Some(w) => json!({
                    "spec": s.to_string(),
                    "witness": w.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "height": w.height,
                    "decomposable": w.decomposable,
                }),
                None => json!({ "spec": s.to_string(), "witness": Value::Null }),
            };
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::Alpha { a, n } => {
            let alpha = alpha_vector(*a, *n)?;
            let rule = (0..*a)
                .map(|i| allones_residue_rule(*a, *n, i))
                .collect::<boxpoly::Result<Vec<u64>>>()
                .ok();
            let class = allones_classify_checked(a + 2, *n)?;
            let v = json!({
                "a": a,
                "N": n,
                "alpha": alpha.entries,
                "residue_rule": rule,
                "class": format!("{class:?}"),
            });
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::Geometric { q, k, witness } => {
            let fam = GeometricFamily::new(*q, *k)?;
            let fast = geometric_local_hstar_fast(*q, *k)?;
            let record = ExperimentRecord::compute(fam.simplex(), record_opts(false))?;
            if record.box_poly != fast {
                bail!("closed form {fast} disagrees with enumeration {}", record.box_poly);
            }
            if *witness {
                let w = geometric_non_idp_witness(*q, *k, cli.cap)?;
                eprintln!("non-IDP witness in 2S: {:?}", w.point);
            }
            emit_records(cli, &[record])
        }
        Command::AsymptoticCheck { row, k, r } => {
            let a = parse_row(row)?;
            let limit = hstar_limit_check(&a, *r, *k);
            let v = json!({
                "a": a,
                "k": k,
                "scaling_identity": scaling_identity_check(&a, *k)?,
                "age_shift_lemma": age_shift_lemma_holds(&a, *k)?,
                "hstar_limit": match limit {
                    Ok(c) => json!({ "N": c.n, "holds": c.holds, "tv": c.tv.to_string() }),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            });
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::Limit { row, r, k_max } => {
            let a = parse_row(row)?;
            let report = convergence_report(&a, *r, *k_max)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "k": row.k,
                        "N": row.n,
                        "tv": row.tv.as_ref().map(|t| t.to_string()),
                        "tv_decimal": row.tv.as_ref().map(rational_to_f64),
                        "envelope": row.envelope.as_ref().map(|e| e.to_string()),
                        "within_envelope": row.within_envelope(),
                        "strictly_unimodal": row.strictly_unimodal,
                        "degenerate": row.degenerate,
                    })
                })
                .collect();
            let v = json!({
                "a": a,
                "M": report.profile.m.to_string(),
                "r": r,
                "limit_box": poly_json(&report.profile.limit_box),
                "limit_strictly_unimodal": report.limit_strictly_unimodal,
                "empirical_threshold": report.empirical_threshold,
                "rows": rows,
            });
            write_out(cli.out.as_deref(), &json_text(&v), false)
        }
        Command::SweepPartitions { n, distinct, fixed_volume, budget } => {
            let cfg = SweepConfig {
                n: *n,
                policy: fixed_volume.map_or(VolumePolicy::MPlusOne, VolumePolicy::Fixed),
                distinct_parts: *distinct,
                budget: *budget,
                record: record_opts(false),
            };
            let outcome = sweep_partitions(&cfg)?;
            let summary = json!({
                "n": n,
                "visited": outcome.visited,
                "records": outcome.records.len(),
                "skipped": outcome.skipped.iter().map(|s| json!({"a": s.a, "reason": s.reason})).collect::<Vec<_>>(),
                "unimodal": outcome.unimodal_count(),
                "unimodal_fraction": outcome.unimodal_fraction(),
                "truncated": outcome.truncated,
            });
            eprintln!("{}", serde_json::to_string(&summary)?);
            emit_records(cli, &outcome.records)
        }
        Command::SampleRandom { d, n, count, seed, no_idp, resume } => {
            let cfg = SampleConfig {
                d: *d,
                n: *n,
                count: *count,
                seed: *seed,
                idp_cap: (!no_idp).then_some(cli.cap),
            };
            let (mut records, summary) = sample_random(&cfg)?;
            let summary = serde_json::to_string(&summary)?;
            if *resume {
                let Some(path) = cli.out.as_deref() else {
                    bail!("--resume needs --out");
                };
                let seen = existing_specs(path)?;
                records.retain(|r| !seen.contains(&r.spec()));
                eprintln!("{summary}");
                return write_out(Some(path), &render(&records, Format::JsonLines)?, true);
            }
            eprintln!("{summary}");
            emit_records(cli, &records)
        }
        Command::Perturb { d, k, seed } => {
            let pairs: Vec<(usize, u64)> = match (d, k) {
                (Some(d), Some(k)) => vec![(*d, *k)],
                (None, None) => PERTURBATION_PAIRS.to_vec(),
                _ => bail!("give both --d and --k, or neither for the full protocol"),
            };
            let mut records = Vec::new();
            for (i, (d, k)) in pairs.into_iter().enumerate() {
                records.extend(perturbation_experiment(d, k, seed.wrapping_add(i as u64))?);
            }
            let unimodal = records.iter().filter(|r| r.unimodal).count();
            eprintln!("{}", json!({ "records": records.len(), "unimodal": unimodal }));
            emit_records(cli, &records)
        }
        Command::Emit { input } => {
            let text = fs::read_to_string(input)
                .with_context(|| format!("reading {}", input.display()))?;
            let records = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(ExperimentRecord::from_json_line)
                .collect::<boxpoly::Result<Vec<_>>>()?;
            emit_records(cli, &records)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs.max(1));
    }
    let result = pool
        .build()
        .context("building thread pool")
        .and_then(|pool| pool.install(|| run(&cli)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
