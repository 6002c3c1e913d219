use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gf4n::field::parse_hex_u64;
use gf4n::solver::{s2_trace_bit, verify_solution};
use gf4n::spectrum::{
    bruteforce_histogram, formula_histogram, verify_conjecture, SpectrumHistogram,
    DEFAULT_MAX_BRUTEFORCE_BITS,
};
use gf4n::{classify, solve, Case, Element, Error, Field, SolutionSet, SweepConfig};

const MAX_BITS_VAR: &str = "GF2_MAX_BRUTEFORCE_BITS";

#[derive(Parser)]
#[command(name = "gf4n", version, about = "Solve x^d + (x+1)^d = b over GF(2^(4n))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the solution-count class of b.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every x with x^d + (x+1)^d = b.
    Solve {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        b: String,
        /// List all of GF(q^2) when b = 1.
        #[arg(long)]
        enumerate_subfield: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Histogram of solution counts over all b.
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Check classification and solver against exhaustive search.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    n: u32,
    /// Defining polynomial in hex; defaults to the smallest irreducible.
    #[arg(long)]
    modulus: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Bruteforce,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn input(e: Error) -> Self {
        let code = match e {
            Error::FieldTooLarge { .. } => 5,
            Error::UnsupportedN { .. }
            | Error::MalformedHex(_)
            | Error::OutOfRange { .. }
            | Error::PreconditionViolated(_) => 2,
            _ => 4,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify { field, b, format } => cmd_classify(&field, &b, format),
        Command::Solve {
            field,
            b,
            enumerate_subfield,
            format,
        } => cmd_solve(&field, &b, enumerate_subfield, format),
        Command::Spectrum {
            field,
            method,
            format,
            sweep,
        } => cmd_spectrum(&field, method, format, &sweep),
        Command::Verify { field, sweep } => cmd_verify(&field, &sweep),
    }
}

fn build_field(args: &FieldArgs) -> Result<Field, Failure> {
    let modulus = match &args.modulus {
        Some(s) => Some(parse_hex_u64(s, 64).map_err(|e| Failure::new(3, e.to_string()))?),
        None => None,
    };
    Field::make(args.n, modulus).map_err(|e| match e {
        Error::UnsupportedN { .. } => Failure::input(e),
        other => Failure::new(3, other.to_string()),
    })
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, Failure> {
    let max_bits = match std::env::var(MAX_BITS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(2, format!("{MAX_BITS_VAR}={v:?} is not a bit count")))?,
        Err(_) => DEFAULT_MAX_BRUTEFORCE_BITS,
    };
    let cfg = SweepConfig::default().with_max_bits(max_bits);
    Ok(match args.workers {
        Some(w) => cfg.with_workers(w as usize),
        None => cfg,
    })
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::new(4, format!("stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

#[derive(Serialize)]
struct ClassifyReport {
    b: String,
    case: Case,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    s2_trace: Option<u8>,
}

fn cmd_classify(args: &FieldArgs, b_hex: &str, format: Format) -> Outcome {
    let field = build_field(args)?;
    let b = field.decode_hex(b_hex).map_err(Failure::input)?;
    let class = classify(&field, b);
    let report = ClassifyReport {
        b: b.to_hex(),
        case: class.case,
        count: class.predicted_count,
        s2_trace: s2_trace_bit(&field, b).map(u8::from),
    };
    let body = match format {
        Format::Text => {
            let mut s = format!("case={} count={}", report.case, report.count);
            if let Some(bit) = report.s2_trace {
                write!(s, " s2_trace={bit}").unwrap();
            }
            s + "\n"
        }
        Format::Json => to_json(&report),
        Format::Csv => to_csv(
            &["b", "case", "count", "s2_trace"],
            &[vec![
                report.b.clone(),
                report.case.to_string(),
                report.count.to_string(),
                report.s2_trace.map(|v| v.to_string()).unwrap_or_default(),
            ]],
        ),
    };
    emit(&args.out, &body)?;
    Ok(0)
}

#[derive(Serialize)]
struct SolveReport {
    b: String,
    case: Case,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    subfield: Option<String>,
    solutions: Option<Vec<String>>,
}

fn cmd_solve(args: &FieldArgs, b_hex: &str, enumerate_subfield: bool, format: Format) -> Outcome {
    let field = build_field(args)?;
    let b = field.decode_hex(b_hex).map_err(Failure::input)?;
    let (class, set) = solve(&field, b).map_err(|e| Failure::new(4, e.to_string()))?;
    let whole_subfield = matches!(set, SolutionSet::SubfieldQ2(_));
    let listed: Option<Vec<Element>> = if whole_subfield && !enumerate_subfield {
        None
    } else {
        Some(set.to_sorted_vec())
    };
    if let Some(xs) = &listed {
        if let Some(x) = xs.iter().find(|&&x| !verify_solution(&field, x, b)) {
            return Err(Failure::new(4, format!("{x} does not satisfy the equation for b = {b}")));
        }
    }
    let q2 = field.q() * field.q();
    let report = SolveReport {
        b: b.to_hex(),
        case: class.case,
        count: set.len(),
        subfield: whole_subfield.then(|| format!("GF({q2})")),
        solutions: listed.map(|xs| xs.iter().map(|x| x.to_hex()).collect()),
    };
    let body = match format {
        Format::Text => {
            let mut s = format!("count={}", report.count);
            if let Some(sub) = &report.subfield {
                write!(s, " (all of {sub})").unwrap();
            }
            s.push('\n');
            for x in report.solutions.iter().flatten() {
                s.push_str(x);
                s.push('\n');
            }
            s
        }
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .solutions
                .iter()
                .flatten()
                .map(|x| vec![x.clone()])
                .collect();
            to_csv(&["x"], &rows)
        }
    };
    emit(&args.out, &body)?;
    Ok(0)
}

fn render_histogram(hist: &SpectrumHistogram, format: Format) -> String {
    match format {
        Format::Text => {
            let rows: Vec<String> = hist.rows().map(|(c, m)| format!("{c}:{m}")).collect();
            format!("{{{}}}\n", rows.join(","))
        }
        Format::Json => to_json(hist),
        Format::Csv => {
            let rows: Vec<Vec<String>> = hist
                .rows()
                .map(|(c, m)| vec![c.to_string(), m.to_string()])
                .collect();
            to_csv(&["count", "multiplicity"], &rows)
        }
    }
}

fn cmd_spectrum(args: &FieldArgs, method: MethodArg, format: Format, sweep: &SweepArgs) -> Outcome {
    let field = build_field(args)?;
    let hist = match method {
        MethodArg::Formula => formula_histogram(field.n()).map_err(Failure::input)?,
        MethodArg::Bruteforce => {
            let cfg = sweep_config(sweep)?;
            bruteforce_histogram(&field, &cfg).map_err(Failure::input)?
        }
    };
    emit(&args.out, &render_histogram(&hist, format))?;
    Ok(0)
}

fn cmd_verify(args: &FieldArgs, sweep: &SweepArgs) -> Outcome {
    let field = build_field(args)?;
    let cfg = sweep_config(sweep)?;
    let mut report = verify_conjecture(&field, &cfg).map_err(Failure::input)?;
    if let Some(t) = report.timings.take() {
        eprintln!(
            "timings: bruteforce {:.1} ms, formula {:.1} ms, per-b {:.1} ms, s2 {:.1} ms",
            t.bruteforce_ms, t.formula_ms, t.per_b_ms, t.s2_ms
        );
    }
    emit(&args.out, &to_json(&report))?;
    Ok(if report.pass { 0 } else { 1 })
}
