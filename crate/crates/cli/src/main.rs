use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motionforge_cli::documents::MotionDocument;
use motionforge_cli::ops::{self, Grid};
use motionforge_cli::service;
use motionforge_cli::ServiceError;
use motionforge_core::Param;

/// Rational motion design: interpolation, factorization and linkage synthesis.
#[derive(Parser)]
#[command(name = "motionforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interpolate a task document and write a motion document.
    Interpolate {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List all factorizations of a motion into revolute factors.
    Factorize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Like `factorize`, but fails unless a closed loop exists.
    Mechanism {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample poses and origins of a motion.
    Sample {
        input: PathBuf,
        /// Number of equally spaced parameters (at least 2).
        #[arg(long)]
        count: Option<usize>,
        /// Explicit parameters; `inf` selects the leading coefficient.
        #[arg(long, num_args = 1.., value_parser = parse_param, allow_negative_numbers = true)]
        at: Option<Vec<Param>>,
        /// Sweep range, 0 1 by default.
        #[arg(long, num_args = 2, value_names = ["START", "END"], allow_negative_numbers = true)]
        range: Option<Vec<f64>>,
        /// Point whose trajectory is reported next to the origin.
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
        point: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the HTTP/JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_param(s: &str) -> Result<Param, String> {
    match s.parse::<f64>() {
        Ok(t) if t == f64::INFINITY => Ok(Param::Infinity),
        Ok(t) if t.is_finite() => Ok(Param::Finite(t)),
        _ => Err(format!("expected a number or inf, got {s:?}")),
    }
}

fn read(path: &Path) -> Result<String, ServiceError> {
    fs::read_to_string(path).map_err(|e| ServiceError::input("IO_ERROR", format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), ServiceError> {
    let io = |e: std::io::Error| ServiceError::input("IO_ERROR", e.to_string());
    match path {
        Some(p) => fs::write(p, text).map_err(io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents serialize") + "\n"
}

fn run(command: Command) -> Result<(), ServiceError> {
    match command {
        Command::Interpolate { input, output } => {
            let tolerance = ops::tolerance_from_env()?;
            let result = ops::interpolate(&read(&input)?, tolerance)?;
            write(output.as_deref(), &(result.motion.to_json() + "\n"))?;
            let summary = json(&result.report);
            if output.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            Ok(())
        }
        Command::Factorize { input, output } => {
            let doc = MotionDocument::parse(&read(&input)?)?;
            write(output.as_deref(), &json(&ops::factorize(&doc, false)?))
        }
        Command::Mechanism { input, output } => {
            let doc = MotionDocument::parse(&read(&input)?)?;
            write(output.as_deref(), &json(&ops::factorize(&doc, true)?))
        }
        Command::Sample { input, count, at, range, point, format, output } => {
            let doc = MotionDocument::parse(&read(&input)?)?;
            let grid = Grid::from_parts(count, at, range.map(|r| (r[0], r[1])), "BAD_FLAGS")?;
            let point = point.map_or([0.0; 3], |p| [p[0], p[1], p[2]]);
            let samples = ops::sample(&doc, &grid, point)?;
            let text = match format {
                Format::Csv => ops::samples_to_csv(&samples),
                Format::Json => json(&samples),
            };
            write(output.as_deref(), &text)
        }
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| ServiceError::input("IO_ERROR", e.to_string()))?;
            runtime
                .block_on(service::serve(&host, port))
                .map_err(|e| ServiceError::input("IO_ERROR", e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = ServiceError::input("BAD_FLAGS", e.render().to_string().trim());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
