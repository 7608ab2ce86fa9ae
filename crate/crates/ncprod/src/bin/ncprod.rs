//! Command-line entry point: `ncprod verify` runs check suites against a
//! family description file; `ncprod families` prints the built-in
//! catalog of family templates with their parameter constraints.
//!
//! Exit codes: 0 when every selected check passes, 1 when some check
//! fails, 2 on input errors (unreadable file, parse failure, violated
//! family constraint, bad flags).  The environment variable
//! `NCPROD_THREADS` bounds worker parallelism.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ncprod::cli::{
    run, CheckKind, CheckReport, OutputFormat, RunConfig, DEFAULT_MAX_DEGREE, DEFAULT_MAX_WEIGHT,
};
use ncprod::families::{family_catalog, Mode};

#[derive(Parser)]
#[command(
    name = "ncprod",
    version,
    about = "Exact verification of R-matrix families and their quadratic algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites against a family description file.
    Verify {
        /// Path to the family JSON file.
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated suite names; default is all of
        /// axioms,dims,center,koszul,clifford,pbw,quotients,symmetry,confluence.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Degree cap for the graded-dimension table.
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Internal-weight cap for the homology table.
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: usize,
        /// Arithmetic override: exact | float.
        #[arg(long)]
        mode: Option<String>,
        /// Stdout format: text | json.
        #[arg(long, default_value = "text")]
        output: String,
        /// Also write the JSON report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the catalog of built-in family templates.
    Families {
        /// Emit the catalog as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("NCPROD_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => {
                eprintln!("error: NCPROD_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match Cli::parse().command {
        Command::Verify {
            spec,
            checks,
            max_degree,
            max_weight,
            mode,
            output,
            json,
        } => verify(spec, checks, max_degree, max_weight, mode, output, json),
        Command::Families { json } => families(json),
    }
}

fn verify(
    spec: PathBuf,
    checks: Vec<String>,
    max_degree: usize,
    max_weight: usize,
    mode: Option<String>,
    output: String,
    json: Option<PathBuf>,
) -> ExitCode {
    let mut config = RunConfig::new(spec);
    if !checks.is_empty() {
        let mut parsed = Vec::new();
        for name in &checks {
            match name.trim().parse::<CheckKind>() {
                Ok(kind) => parsed.push(kind),
                Err(err) => {
                    eprintln!("error: {err}");
                    return ExitCode::from(2);
                }
            }
        }
        config.checks = parsed;
    }
    config.max_degree = max_degree;
    config.max_weight = max_weight;
    config.mode_override = match mode.as_deref() {
        None => None,
        Some("exact") => Some(Mode::Exact),
        Some("float") => Some(Mode::Float),
        Some(other) => {
            eprintln!("error: unknown mode `{other}` (expected exact or float)");
            return ExitCode::from(2);
        }
    };
    config.output = match output.as_str() {
        "text" => OutputFormat::Text,
        "json" => OutputFormat::Json,
        other => {
            eprintln!("error: unknown output format `{other}` (expected text or json)");
            return ExitCode::from(2);
        }
    };
    config.out_path = json;
    match run(&config) {
        Ok(report) => {
            emit(&report, config.output);
            if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Print to stdout, ignoring a closed pipe downstream (e.g. `| head`):
/// the exit code, not the ability to finish printing, carries the result.
fn emit_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn emit(report: &CheckReport, format: OutputFormat) {
    match format {
        OutputFormat::Text => emit_stdout(&report.render_text()),
        OutputFormat::Json => emit_stdout(&format!(
            "{}\n",
            serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
        )),
    }
}

fn families(as_json: bool) -> ExitCode {
    let catalog = family_catalog();
    let mut text = String::new();
    if as_json {
        text.push_str(&serde_json::to_string_pretty(&catalog).expect("catalog serializes"));
        text.push('\n');
    } else {
        for t in &catalog {
            text.push_str(&format!("{}\n", t.kind));
            text.push_str(&format!("  {}\n", t.description));
            text.push_str(&format!("  constraint: {}\n", t.constraint));
            text.push_str(&format!(
                "  example:    {}\n",
                serde_json::to_string(&t.example).expect("example serializes")
            ));
        }
    }
    emit_stdout(&text);
    ExitCode::SUCCESS
}
