//! Command-line front end: `count`, `map`, `verify` and `series`.
//!
//! Exit status: 0 when everything requested succeeded, 1 when a verification
//! failed, 2 for usage or input errors, 3 when a map's precondition fails.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bijection::{phi1, phi3, psi1, psi3, BijectionError, MappedPartition};
use crate::partition::{count_class, Partition, PartitionClass};
use crate::qseries::SeriesExpr;
use crate::report::{IdentityId, IdentityReport, Method};
use crate::verify::{default_methods, Fault, Verifier, DEFAULT_ENUM_BOUND, DEFAULT_SERIES_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Phi1,
    Psi1,
    Phi3,
    Psi3,
}

#[derive(Debug, Parser)]
#[command(name = "ped-verify", version, about = "Check partition identities for distinct even parts and 4-regular partitions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count members of a partition class for n = 0..=max by enumeration.
    Count {
        /// ped, 4regular, de1, de2, de3 or ped-gt1.
        class: PartitionClass,
        #[arg(long = "max")]
        max: u32,
    },
    /// Apply one of the maps to a partition given as comma-separated parts.
    Map {
        #[arg(value_enum)]
        bijection: MapName,
        partition: String,
        /// Target weight n; required for psi1 and psi3.
        #[arg(long)]
        target: Option<u64>,
    },
    /// Run identity checks; IDENTITY is an identity id or "all".
    Verify {
        identity: String,
        #[arg(long, default_value_t = DEFAULT_ENUM_BOUND)]
        enum_bound: u64,
        #[arg(long, default_value_t = DEFAULT_SERIES_BOUND)]
        series_bound: u64,
        /// Run only this method (ENUMERATION, SERIES, BIJECTION or CROSS).
        #[arg(long)]
        method: Option<Method>,
        /// Perturb a series coefficient or bijection case before checking.
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: Vec<Fault>,
    },
    /// Print coefficients 0..=order of a named series.
    Series {
        /// ped, 4regular, de1, de2, de3, t1-lhs, t1-rhs, t2-lhs, t2-rhs, t3-lhs or t3-rhs.
        expr: SeriesExpr,
        #[arg(long)]
        order: usize,
    },
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_json<T: Serialize, W: Write>(out: &mut W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute<O: Write, E: Write>(cli: Cli, out: &mut O, err: &mut E) -> std::io::Result<i32> {
    let format = cli.format;
    match cli.command {
        Command::Count { class, max } => cmd_count(class, max, format, out),
        Command::Map { bijection, partition, target } => cmd_map(bijection, &partition, target, format, out, err),
        Command::Verify { identity, enum_bound, series_bound, method, inject_fault } => {
            cmd_verify(&identity, enum_bound, series_bound, method, inject_fault, format, out, err)
        }
        Command::Series { expr, order } => cmd_series(expr, order, format, out, err),
    }
}

fn cmd_count<O: Write>(class: PartitionClass, max: u32, format: OutputFormat, out: &mut O) -> std::io::Result<i32> {
    let rows: Vec<(u32, u64)> = (0..=max).map(|n| (n, count_class(n, class))).collect();
    match format {
        OutputFormat::Text => {
            for (n, count) in &rows {
                writeln!(out, "{class}({n}) = {count}")?;
            }
        }
        OutputFormat::Json => {
            let doc: Vec<_> = rows.iter().map(|(n, count)| json!({ "n": n, "count": count })).collect();
            write_json(out, &doc)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "n,count")?;
            for (n, count) in &rows {
                writeln!(out, "{n},{count}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_map<O: Write, E: Write>(
    which: MapName,
    input: &str,
    target: Option<u64>,
    format: OutputFormat,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    let preimage: Partition = match input.parse() {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let result: Result<MappedPartition, BijectionError> = match (which, target) {
        (MapName::Phi1, _) => phi1(&preimage),
        (MapName::Phi3, _) => phi3(&preimage),
        (MapName::Psi1, Some(n)) => psi1(&preimage, n),
        (MapName::Psi3, Some(n)) => psi3(&preimage, n),
        (MapName::Psi1 | MapName::Psi3, None) => {
            writeln!(err, "error: --target is required for psi1 and psi3")?;
            return Ok(EXIT_USAGE);
        }
    };
    let mapped = match result {
        Ok(m) => m,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_PRECONDITION);
        }
    };
    let name = which.to_possible_value().expect("no skipped variants").get_name().to_string();
    match format {
        OutputFormat::Text => {
            writeln!(out, "{name}{preimage} = {}", mapped.image)?;
            writeln!(out, "image: {}", mapped.image.to_csv_parts())?;
            writeln!(out, "case: {} ({})", mapped.case_tag.label(), mapped.case_tag)?;
            writeln!(out, "weight: {}", mapped.target_weight)?;
        }
        OutputFormat::Json => {
            let doc = json!({
                "bijection": name,
                "preimage": preimage.parts(),
                "image": mapped.image.parts(),
                "case": mapped.case_tag.name(),
                "target_weight": mapped.target_weight,
            });
            write_json(out, &doc)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "bijection,preimage,image,case,target_weight")?;
            writeln!(
                out,
                "{name},{},{},{},{}",
                csv_field(&preimage.to_csv_parts()),
                csv_field(&mapped.image.to_csv_parts()),
                mapped.case_tag,
                mapped.target_weight
            )?;
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify<O: Write, E: Write>(
    identity: &str,
    enum_bound: u64,
    series_bound: u64,
    method: Option<Method>,
    faults: Vec<Fault>,
    format: OutputFormat,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    if enum_bound < 1 || series_bound < 1 {
        writeln!(err, "error: bounds must be at least 1")?;
        return Ok(EXIT_USAGE);
    }
    let verifier = faults.into_iter().fold(Verifier::new(), Verifier::with_fault);
    let bound_for = |m: Method| if m == Method::Series { series_bound } else { enum_bound };

    let outcome = if identity.eq_ignore_ascii_case("all") {
        match method {
            None => verifier.verify_all(enum_bound, series_bound),
            Some(m) => IdentityId::ALL
                .into_iter()
                .filter(|id| default_methods(*id).contains(&m))
                .map(|id| verifier.verify_identity(id, bound_for(m), m))
                .collect(),
        }
    } else {
        let id: IdentityId = match identity.parse() {
            Ok(id) => id,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        };
        let methods = method.map_or_else(|| default_methods(id), |m| vec![m]);
        methods.into_iter().map(|m| verifier.verify_identity(id, bound_for(m), m)).collect()
    };
    let reports: Vec<IdentityReport> = match outcome {
        Ok(r) => r,
        Err(crate::verify::VerifyError::Series(e)) => {
            writeln!(err, "error: series arithmetic failed: {e}")?;
            return Ok(EXIT_VERIFY_FAILED);
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };

    match format {
        OutputFormat::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} passed", reports.len())?;
        }
        OutputFormat::Json => write_json(out, &reports)?,
        OutputFormat::Csv => {
            writeln!(out, "identity,method,range_start,range_end,verdict,witness")?;
            for r in &reports {
                let witness = r.witness().map(|w| w.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.identity(),
                    r.method(),
                    r.range().start,
                    r.range().end,
                    r.verdict(),
                    csv_field(&witness)
                )?;
            }
        }
    }
    Ok(if reports.iter().all(IdentityReport::passed) { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_series<O: Write, E: Write>(
    expr: SeriesExpr,
    order: usize,
    format: OutputFormat,
    out: &mut O,
    err: &mut E,
) -> std::io::Result<i32> {
    let series = match expr.build(order) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_VERIFY_FAILED);
        }
    };
    match format {
        OutputFormat::Text => writeln!(out, "{series}")?,
        OutputFormat::Json => {
            let doc: Vec<_> =
                series.coeffs().iter().enumerate().map(|(k, c)| json!({ "k": k, "coeff": c })).collect();
            write_json(out, &doc)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "k,coeff")?;
            for (k, c) in series.coeffs().iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ped-verify"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("5,4,1"), "\"5,4,1\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a\"b"), "\"a\"\"b\"");
    }

    #[test]
    fn psi_needs_target() {
        let (code, _, err) = run_capture(&["map", "psi1", "3,3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--target"));
    }

    #[test]
    fn restricting_method() {
        let (code, out, _) = run_capture(&["verify", "LEMMA_2_1", "--enum-bound", "5", "--method", "BIJECTION"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 2);
        let (code, _, _) = run_capture(&["verify", "T1", "--method", "BIJECTION"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
