use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacobi_core::report::Status;
use jacobi_core::sampling::CheckConfig;
use jacobi_core::structure::{run, RunOptions};
use jacobi_core::symalg::parse::parse_point;
use jacobi_core::symalg::Rational;
use jacobi_core::{gallery, identities, structure, Error};

/// Exact verifier for Jacobi algebroids, Jacobi quasi-Nijenhuis structures
/// and generalized complex and contact structures.
#[derive(Parser)]
#[command(name = "jqn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a structure file (a path, or a gallery name).
    Check {
        file: String,
        /// Maximal coefficient degree for exhaustive and random checks.
        #[arg(long)]
        degree: Option<u32>,
        /// Sample points replacing the file's own, e.g. "(0,0,0);(1,-2,3)".
        #[arg(long)]
        samples: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report wall-clock time per check (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// List the bundled fixtures, or print one.
    Gallery { name: Option<String> },
    /// Run the engine self-test on random inputs.
    Identities {
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((out, code)) => {
            // a closed pipe downstream is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_samples(src: &str) -> Result<Vec<Vec<Rational>>, String> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|p| parse_point(p).map_err(|e| format!("--samples `{}`: {e}", p.trim())))
        .collect()
}

fn load(file: &str) -> Result<(String, String), String> {
    let path = Path::new(file);
    if !path.exists() {
        if let Some(src) = gallery::source(file) {
            return Ok((format!("gallery:{file}"), src.to_string()));
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", PathBuf::from(file).display()))?;
    Ok((file.to_string(), text))
}

fn execute(cmd: Command) -> Result<(String, u8), String> {
    match cmd {
        Command::Check { file, degree, samples, seed, format, timing } => {
            let (origin, text) = load(&file)?;
            let parsed = structure::parse(&text).map_err(|e| match e {
                Error::Parse { .. } => format!("{origin}:{e}"),
                other => format!("{origin}: {other}"),
            })?;
            let samples = samples.as_deref().map(parse_samples).transpose()?;
            let opts = RunOptions { degree, seed, samples, timing };
            let report = run(&parsed, &opts).map_err(|e| format!("{origin}: {e}"))?;
            let out = match format {
                Format::Text => report.render_text(),
                Format::Json => report.render_json(),
            };
            Ok((out, report.exit_code() as u8))
        }
        Command::Gallery { name: None } => {
            let out = gallery::names().map(|n| format!("{n}\n")).collect();
            Ok((out, 0))
        }
        Command::Gallery { name: Some(n) } => {
            let src = gallery::source(&n).ok_or_else(|| format!("no gallery fixture named `{n}`"))?;
            Ok((src.to_string(), 0))
        }
        Command::Identities { degree, seed, format } => {
            let mut cfg = CheckConfig::default();
            if let Some(d) = degree {
                cfg.degree = d;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let reports = identities::identity_suite(&cfg);
            let mut out = String::new();
            match format {
                Format::Text => {
                    for r in &reports {
                        out.push_str(&r.render_text());
                    }
                }
                Format::Json => {
                    let json = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
                    writeln!(out, "{json}").expect("writing to a String");
                }
            }
            Ok((out, u8::from(reports.iter().any(|r| r.verdict() == Status::Fail))))
        }
    }
}
