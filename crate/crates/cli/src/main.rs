use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

/// Batch verification and reports for 4/n = 1/x + 1/y + 1/z.
#[derive(Debug, Parser)]
#[command(name = "es-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads, 0 = one per core.
    #[arg(long, global = true, env = "ES_LAB_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued fraction, convergents and error terms of num/den.
    Cf { num: u64, den: u64 },
    /// Search every prime in range for coprime solutions with xy < sqrt(z/2).
    Verify {
        #[arg(long = "from", default_value_t = 5)]
        from: u64,
        #[arg(long = "to", default_value_t = 1000)]
        to: u64,
        #[arg(long = "xy-cap", default_value_t = 1000)]
        xy_cap: u64,
    },
    /// Solution counts by type for every prime in range.
    Census {
        #[arg(long = "from", default_value_t = 5)]
        from: u64,
        #[arg(long = "to", default_value_t = 1000)]
        to: u64,
    },
    /// Count coprime (x, y, z) in [1, N]^3 with xy < sqrt(z/2).
    Lattice {
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = LatticeMethod::Sliced)]
        method: LatticeMethod,
    },
    /// Solvability of a/p and continued-fraction shapes of a/p by p mod a.
    Sierpinski {
        #[arg(long)]
        a: u64,
        #[arg(long = "from", default_value_t = 2)]
        from: u64,
        #[arg(long = "to", default_value_t = 1000)]
        to: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LatticeMethod {
    Brute,
    Sliced,
    Both,
}

/// How a run ended, mapped onto the process exit code.
pub enum Outcome {
    Clean,
    /// A mathematical violation or a cross-method mismatch was found.
    Violation,
}

pub enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<es_lab::Error> for Failure {
    fn from(e: es_lab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let format = cli.format;
    let outcome = match cli.command {
        Command::Cf { num, den } => commands::cf(&mut sink, format, num, den),
        Command::Verify { from, to, xy_cap } => {
            commands::verify(&mut sink, format, from, to, xy_cap)
        }
        Command::Census { from, to } => commands::census(&mut sink, format, from, to),
        Command::Lattice { n, method } => {
            let method = match method {
                LatticeMethod::Brute => es_lab::Method::Brute,
                LatticeMethod::Sliced => es_lab::Method::Sliced,
                LatticeMethod::Both => es_lab::Method::Both,
            };
            commands::lattice(&mut sink, format, &n, method)
        }
        Command::Sierpinski { a, from, to } => commands::sierpinski(&mut sink, format, a, from, to),
    }?;
    sink.flush()?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
