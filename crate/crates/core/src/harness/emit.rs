use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use num_traits::ToPrimitive;

use super::record::ExperimentRecord;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    JsonLines,
    Csv,
    PlotTsv,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "jsonl" | "json-lines" => Ok(Self::JsonLines),
            "csv" => Ok(Self::Csv),
            "tsv" | "plot-tsv" => Ok(Self::PlotTsv),
            "svg" => Ok(Self::Svg),
            other => Err(Error::Parse { pos: 0, msg: format!("unknown format {other:?}") }),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("I/O: {e}"))
}

/// Render records in `format`. An empty stream renders as an empty file for
/// json-lines and tsv, a header-only csv, and an svg with no bars.
pub fn render(records: &[ExperimentRecord], format: Format) -> Result<String> {
    match format {
        Format::JsonLines => Ok(records.iter().map(|r| r.to_json_line() + "\n").collect()),
        Format::Csv => render_csv(records),
        Format::PlotTsv => Ok(render_tsv(records)),
        Format::Svg => Ok(render_svg(records.first())),
    }
}

pub fn emit(records: &[ExperimentRecord], format: Format, out: &mut impl Write) -> Result<()> {
    out.write_all(render(records, format)?.as_bytes()).map_err(io_err)
}

pub fn emit_to_path(records: &[ExperimentRecord], format: Format, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    emit(records, format, &mut w)?;
    w.flush().map_err(io_err)
}

fn join(v: &[String]) -> String {
    v.join(" ")
}

fn render_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "spec", "d", "N", "box", "hstar", "box_total", "unimodal", "strictly_unimodal",
        "gcd_criterion", "idp_witness", "ms",
    ])
    .map_err(io_err)?;
    for r in records {
        let d = r.simplex.dim();
        let strings = |p: &crate::IntPolynomial| {
            join(&p.padded(d + 1).iter().map(ToString::to_string).collect::<Vec<_>>())
        };
        w.write_record([
            r.spec(),
            d.to_string(),
            r.simplex.n().to_string(),
            strings(&r.box_poly),
            strings(&r.hstar),
            r.box_poly.eval_one().to_string(),
            r.unimodal.to_string(),
            r.strictly_unimodal.to_string(),
            r.gcd_criterion.to_string(),
            r.idp_witness.as_str().to_string(),
            r.wall_time.map(|t| format!("{:.3}", t.as_secs_f64() * 1e3)).unwrap_or_default(),
        ])
        .map_err(io_err)?;
    }
    String::from_utf8(w.into_inner().map_err(io_err)?).map_err(io_err)
}

/// One block per record: a `#` header with the spec, then
/// `age <TAB> num/den <TAB> decimal` for ages `0..=d`. Blocks are separated
/// by a blank line. Thin simplices get a header only.
fn render_tsv(records: &[ExperimentRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# {}", r.spec());
        if let Some(dist) = &r.box_distribution {
            for (age, p) in dist.padded(r.simplex.dim() + 1).iter().enumerate() {
                let dec = p.to_f64().unwrap_or(f64::NAN);
                let _ = writeln!(out, "{age}\t{}/{}\t{dec:.12}", p.numer(), p.denom());
            }
        }
    }
    out
}

fn render_svg(record: Option<&ExperimentRecord>) -> String {
    const W: f64 = 640.0;
    const H: f64 = 360.0;
    const PAD: f64 = 40.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    if let Some(r) = record {
        let _ = writeln!(out, "  <title>{}</title>", r.spec());
        if let Some(dist) = &r.box_distribution {
            let probs = dist.padded(r.simplex.dim() + 1);
            let vals: Vec<f64> = probs.iter().map(|p| p.to_f64().unwrap_or(0.0)).collect();
            let max = vals.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let slot = (W - 2.0 * PAD) / vals.len() as f64;
            let _ = writeln!(
                out,
                r#"  <line x1="{PAD}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>"#,
                y = H - PAD,
                x2 = W - PAD
            );
            for (age, v) in vals.iter().enumerate() {
                let h = v / max * (H - 2.0 * PAD);
                let x = PAD + slot * age as f64 + slot * 0.1;
                let _ = writeln!(
                    out,
                    r#"  <rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="steelblue"><title>{age}: {p}</title></rect>"#,
                    y = H - PAD - h,
                    w = slot * 0.8,
                    p = probs[age]
                );
                let _ = writeln!(
                    out,
                    r#"  <text x="{tx:.2}" y="{ty}" font-size="10" text-anchor="middle">{age}</text>"#,
                    tx = x + slot * 0.4,
                    ty = H - PAD + 14.0
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Specs of records already present in a json-lines file; a missing file
/// is empty. Used to resume interrupted runs.
pub fn existing_specs(path: &Path) -> Result<HashSet<String>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashSet::new()),
        Err(e) => return Err(io_err(e)),
    };
    let mut specs = HashSet::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        specs.insert(ExperimentRecord::from_json_line(&line)?.spec());
    }
    Ok(specs)
}

/// Append records to a json-lines file, creating it if needed.
pub fn append_jsonl(records: &[ExperimentRecord], path: &Path) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    emit(records, Format::JsonLines, &mut w)?;
    w.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::record::{run_compute, RecordOptions};

    #[test]
    fn empty_streams() {
        assert_eq!(render(&[], Format::JsonLines).unwrap(), "");
        assert_eq!(render(&[], Format::PlotTsv).unwrap(), "");
        assert_eq!(render(&[], Format::Csv).unwrap().lines().count(), 1);
        assert!(render(&[], Format::Svg).unwrap().ends_with("</svg>\n"));
    }

    #[test]
    fn fig1_tsv() {
        let spec = format!("{};331", vec!["1"; 16].join(","));
        let r = run_compute(&spec, RecordOptions::default()).unwrap();
        let tsv = render(&[r], Format::PlotTsv).unwrap();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 19);
        assert_eq!(lines[3], "2\t1/15\t0.066666666667");
        assert_eq!(lines[17], "16\t1/15\t0.066666666667");
        assert_eq!(lines[18], "17\t0/1\t0.000000000000");
        assert_eq!(lines[1], "0\t0/1\t0.000000000000");
    }

    #[test]
    fn csv_has_one_row_per_record() {
        let r = run_compute("1,1,1,1;6", RecordOptions::default()).unwrap();
        let csv = render(&[r.clone(), r], Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("\"1,1,1,1;6\",5,6,0 0 1 1 1 0"));
    }
}
