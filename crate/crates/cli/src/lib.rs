//! Command-line driver for `lmcrt`.
//!
//! Every subcommand prints one JSON document on stdout (`explain` prints
//! text). Integers are always decimal strings. Exit codes: 0 on success,
//! 1 on a domain error (with an `{"error": {"kind", "message"}}` document
//! on stdout), 2 on a usage error.

mod explain;
pub mod record;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lmcrt::lift::recover_index_mod_p2;
use lmcrt::numtheory::gen_safe_prime;
use lmcrt::quotients::{fermat_quotient_p, lift_profile};
use lmcrt::reduction::{solve_small, transform, verify_instance};
use lmcrt::sample::InstanceSampler;
use lmcrt::{serde_dec, DlogInstance, Natural, SafePrimeParams};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use record::ExperimentRecord;

#[derive(Parser)]
#[command(
    name = "lmcrt",
    version,
    about = "Quotient-lift reduction of safe-prime discrete logs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a safe prime p = 2q + 1 of the given bit length.
    Gen {
        #[arg(long)]
        bits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generalized quotient and lift digits of x.
    Quotient {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_natural)]
        x: Natural,
    },
    /// Transform an instance into its linear congruence system.
    Reduce(InstanceArgs),
    /// Check every identity for an instance with known index.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_parser = parse_natural)]
        n: Natural,
    },
    /// Solve a desk-scale instance for n mod p - 1.
    Solve(InstanceArgs),
    /// Recover n mod p from X = a0^n mod p^2.
    #[command(name = "recover-p2")]
    RecoverP2 {
        #[arg(long, value_parser = parse_natural)]
        p: Natural,
        #[arg(long, value_parser = parse_natural)]
        a0: Natural,
        #[arg(long = "X", value_parser = parse_natural)]
        x: Natural,
    },
    /// Seeded batch of instances, one JSON record per line.
    Experiment {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        qmin: u64,
        #[arg(long, default_value_t = 499)]
        qmax: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the flag columns as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-derive every record of an experiment file and report mismatches.
    Recheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Human-readable trace of every intermediate quantity.
    Explain {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Known index; solved for when omitted.
        #[arg(long, value_parser = parse_natural)]
        n: Option<Natural>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, value_parser = parse_natural)]
    p: Natural,
    /// Defaults to (p - 1) / 2.
    #[arg(long, value_parser = parse_natural)]
    q: Option<Natural>,
}

impl ParamArgs {
    fn build(&self) -> lmcrt::Result<SafePrimeParams> {
        match &self.q {
            Some(q) => SafePrimeParams::new(self.p.clone(), q.clone()),
            None => SafePrimeParams::from_p(self.p.clone()),
        }
    }
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_parser = parse_natural)]
    a0: Natural,
    #[arg(long, value_parser = parse_natural)]
    b0: Natural,
}

impl InstanceArgs {
    fn build(&self, n: Option<Natural>) -> lmcrt::Result<DlogInstance> {
        DlogInstance::new(self.params.build()?, self.a0.clone(), self.b0.clone(), n)
    }
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    serde_dec::parse(s)
}

#[derive(Debug)]
enum CliError {
    Domain(lmcrt::Error),
    Io(String),
    Format(String),
    Mismatch(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Format(_) => "invalid-input",
            CliError::Mismatch(_) => "inconsistent-inputs",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Io(m) | CliError::Format(m) | CliError::Mismatch(m) => m.clone(),
        }
    }
}

impl From<lmcrt::Error> for CliError {
    fn from(e: lmcrt::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs the tool on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let doc = json!({ "error": { "kind": e.kind(), "message": e.message() } });
            let _ = writeln!(out, "{doc}");
            1
        }
    }
}

fn emit(out: &mut dyn Write, doc: &Value) -> Result<(), CliError> {
    writeln!(out, "{doc}")?;
    Ok(())
}

fn dec(x: &Natural) -> Value {
    Value::String(x.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Gen { bits, seed } => {
            let params = gen_safe_prime(bits, seed)?;
            emit(
                out,
                &json!({
                    "p": dec(params.p()),
                    "q": dec(params.q()),
                    "m1": dec(params.m1()),
                    "m2": dec(params.m2()),
                    "m3": dec(params.m3()),
                    "exponent": dec(params.exponent()),
                    "generator": dec(&params.generator()?),
                }),
            )
        }
        Command::Quotient { params, x } => {
            let params = params.build()?;
            let profile = lift_profile(&params, &x)?;
            emit(
                out,
                &json!({
                    "p": dec(params.p()),
                    "q": dec(params.q()),
                    "x": dec(&x),
                    "lerch": dec(profile.lerch.value()),
                    "fermat_p": dec(fermat_quotient_p(params.p(), &x)?.value()),
                    "A": dec(profile.power.value()),
                    "k": dec(profile.carry.value()),
                    "digit": dec(profile.digit.value()),
                    "digit_literal": dec(profile.digit_literal.value()),
                }),
            )
        }
        Command::Reduce(args) => {
            let inst = args.build(None)?;
            let system = transform(&inst)?;
            let a = lift_profile(&inst.params, &inst.a0)?;
            let b = lift_profile(&inst.params, &inst.b0)?;
            emit(
                out,
                &json!({
                    "p": dec(inst.params.p()),
                    "q": dec(inst.params.q()),
                    "a0": dec(&inst.a0),
                    "b0": dec(&inst.b0),
                    "A": dec(a.power.value()),
                    "B": dec(b.power.value()),
                    "q_a0": dec(a.lerch.value()),
                    "q_b0": dec(b.lerch.value()),
                    "a1": dec(a.digit.value()),
                    "b1": dec(b.digit.value()),
                    "master": serde_json::to_value(&system.master).expect("serializable"),
                    "parts": serde_json::to_value(&system.parts).expect("serializable"),
                }),
            )
        }
        Command::Verify { instance, n } => {
            let inst = instance.build(Some(n))?;
            let report = verify_instance(&inst)?;
            let record = ExperimentRecord::from_report(0, &report);
            let mut doc = serde_json::to_value(&record).expect("serializable");
            let map = doc.as_object_mut().expect("record is an object");
            map.remove("id");
            map.insert(
                "b1_literal".into(),
                dec(report.profile_b.digit_literal.value()),
            );
            map.insert(
                "all_corrected_ok".into(),
                Value::Bool(record.all_corrected_ok()),
            );
            map.insert(
                "checks".into(),
                serde_json::to_value(&report.checks).expect("serializable"),
            );
            emit(out, &doc)
        }
        Command::Solve(args) => {
            let n = solve_small(&args.build(None)?)?;
            emit(out, &json!({ "n": dec(n.value()) }))
        }
        Command::RecoverP2 { p, a0, x } => {
            let n = recover_index_mod_p2(&p, &a0, &x)?;
            emit(out, &json!({ "n": dec(n.value()) }))
        }
        Command::Experiment {
            count,
            qmin,
            qmax,
            seed,
            out: path,
            csv,
        } => {
            let records = experiment(count, qmin, qmax, seed)?;
            write_records(&path, &records)?;
            if let Some(csv_path) = &csv {
                let mut w = csv::Writer::from_path(csv_path)?;
                for r in &records {
                    w.serialize(r.flags())?;
                }
                w.flush()?;
            }
            let tally = |f: fn(&ExperimentRecord) -> bool| records.iter().filter(|r| f(r)).count();
            emit(
                out,
                &json!({
                    "count": records.len(),
                    "seed": seed.to_string(),
                    "out": path.display().to_string(),
                    "all_corrected_ok": tally(ExperimentRecord::all_corrected_ok),
                    "lemma2_literal_ok": tally(|r| r.lemma2_literal_ok),
                }),
            )
        }
        Command::Recheck { input } => {
            let (total, mismatched) = recheck(&input)?;
            if !mismatched.is_empty() {
                return Err(CliError::Mismatch(format!(
                    "{} of {total} records do not re-derive: ids {mismatched:?}",
                    mismatched.len()
                )));
            }
            emit(out, &json!({ "records": total, "mismatches": 0 }))
        }
        Command::Explain { instance, n } => {
            let n = match n {
                Some(n) => n,
                None => solve_small(&instance.build(None)?)?.into_value(),
            };
            let report = verify_instance(&instance.build(Some(n))?)?;
            out.write_all(explain::render(&report).as_bytes())?;
            Ok(())
        }
    }
}

/// Samples instances sequentially, then verifies them in parallel; the
/// result is in id order whatever the thread count.
pub fn experiment(
    count: usize,
    qmin: u64,
    qmax: u64,
    seed: u64,
) -> lmcrt::Result<Vec<ExperimentRecord>> {
    let instances: Vec<DlogInstance> = InstanceSampler::from_u64(seed, qmin, qmax)?
        .take(count)
        .collect::<lmcrt::Result<_>>()?;
    instances
        .par_iter()
        .enumerate()
        .map(|(id, inst)| ExperimentRecord::compute(id as u64, inst))
        .collect()
}

fn write_records(path: &Path, records: &[ExperimentRecord]) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| CliError::Io(e.to_string()))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

fn recheck(path: &Path) -> Result<(usize, Vec<u64>), CliError> {
    let mut records = Vec::new();
    for (lineno, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: ExperimentRecord = serde_json::from_str(&line)
            .map_err(|e| CliError::Format(format!("line {}: {e}", lineno + 1)))?;
        records.push(r);
    }
    let mismatched = records
        .par_iter()
        .filter(|r| {
            r.instance()
                .and_then(|inst| ExperimentRecord::compute(r.id, &inst))
                .map_or(true, |fresh| &fresh != *r)
        })
        .map(|r| r.id)
        .collect();
    Ok((records.len(), mismatched))
}
