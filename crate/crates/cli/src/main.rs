//! `rngbound`: exact distance from uniform and spectral bounds for linear
//! conditioners, from the command line.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rngbound", version, about = "Statistical distance bounds for linear-code conditioners over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the parameters, minimum distance and weight enumerators of a code.
    CodeInfo {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        /// List every composition of the complete weight enumerator.
        #[arg(long)]
        full_cwe: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact output distance and every applicable bound for a code and source.
    Analyze {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        #[command(flatten)]
        source: SourceArgs,
        /// Largest p^n for the brute-force cross-check.
        #[arg(long, value_name = "INT")]
        max_brute: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact distance and bounds over a grid of source parameters.
    ///
    /// The source at parameter t is uniform + t·(shape − uniform), so every
    /// non-trivial eigenvalue scales by t. The default shape is the point mass
    /// at 0, which for p = 2 makes t the bias.
    Sweep {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        /// Grid `A:B:STEP` with 0 <= A, B <= 1 and STEP > 0.
        #[arg(long, value_name = "A:B:STEP")]
        grid: String,
        /// Single-symbol .pmf giving the shape of the family.
        #[arg(long, value_name = "PATH")]
        source: Option<PathBuf>,
        #[arg(long, value_name = "INT")]
        max_brute: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Distance of S_n = Z_1 + ... + Z_n from uniform, with its spectral bound.
    SumChain {
        #[command(flatten)]
        source: SourceArgs,
        /// Largest n in the table.
        #[arg(long, value_name = "INT", default_value_t = 10)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fourier spectrum of a mass function and its λ*.
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// A .pmf file (one symbol, used i.i.d.) or a per-symbol source file.
    #[arg(long, value_name = "PATH")]
    source: Option<PathBuf>,
    /// I.i.d. bits with P(0) = (1 + ε)/2.
    #[arg(long, value_name = "FLOAT", allow_negative_numbers = true)]
    bias: Option<f64>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Csv,
}

fn run(cli: Cli) -> Result<(), commands::Failure> {
    let (text, out) = match cli.command {
        Command::CodeInfo { code, full_cwe, out } => {
            let format = out.format.unwrap_or(Format::Table);
            (commands::code_info(&code, full_cwe, format)?, out.out)
        }
        Command::Analyze {
            code,
            source,
            max_brute,
            out,
        } => {
            let format = out.format.unwrap_or(Format::Table);
            (commands::analyze(&code, &source, max_brute, format)?, out.out)
        }
        Command::Sweep {
            code,
            grid,
            source,
            max_brute,
            out,
        } => {
            let format = out.format.unwrap_or(Format::Csv);
            (
                commands::sweep(&code, &grid, source.as_deref(), max_brute, format)?,
                out.out,
            )
        }
        Command::SumChain { source, n, out } => {
            let format = out.format.unwrap_or(Format::Table);
            (commands::sum_chain(&source, n, format)?, out.out)
        }
        Command::Spectrum { source, out } => {
            let format = out.format.unwrap_or(Format::Table);
            (commands::spectrum(&source, format)?, out.out)
        }
    };
    output::emit(&text, out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("rngbound: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
