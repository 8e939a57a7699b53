use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use spectra_cli::output::sink_for;
use spectra_cli::spec::{DEFAULT_SIZES, LARGE_SIZE};
use spectra_cli::{run, IndexRange, OutputFormat, TableId, TableSpec};
use spectra_core::numerics::DEFAULT_DIGITS;
use spectra_core::Execution;

/// Eigenvalue tables for banded Toeplitz matrices with symbol (2 sin(x/2))^(2m).
#[derive(Debug, Parser)]
#[command(name = "spectra", version)]
struct Args {
    /// Table to compute.
    #[arg(value_enum, ignore_case = true)]
    table: TableId,

    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,

    /// Expansion order (defaults: E4 4, DELTA 3, OMEGA 4).
    #[arg(long)]
    p: Option<usize>,

    /// Index filter such as `1..10` or `3`.
    #[arg(long, value_parser = IndexRange::parse)]
    j: Option<IndexRange>,

    /// Symbol power for CONJECTURE.
    #[arg(long, default_value_t = 3)]
    m: u32,

    /// Significant decimal digits.
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: u32,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Append n = 16384 to the default sizes (needs --digits 60 or more).
    #[arg(long)]
    with_16384: bool,

    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Args {
    fn spec(&self) -> TableSpec {
        let mut spec = TableSpec::new(self.table);
        spec.n_list = self.n.clone().unwrap_or_else(|| DEFAULT_SIZES.to_vec());
        if self.with_16384 && !spec.n_list.contains(&LARGE_SIZE) {
            spec.n_list.push(LARGE_SIZE);
        }
        if !self.table.uses_sizes() && self.n.is_none() {
            spec.n_list.clear();
        }
        if let Some(p) = self.p {
            spec.p = p;
        }
        spec.j_range = self.j;
        spec.m = self.m;
        spec.precision_digits = self.digits;
        spec.output_format = self.format;
        spec
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(args: &Args) -> Result<bool> {
    let spec = args.spec();
    let out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = sink_for(spec.output_format, out);
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let summary = run(&spec, sink.as_mut(), exec)?;
    for failure in &summary.failures {
        eprintln!("row failed: {failure}");
    }
    Ok(summary.ok())
}
