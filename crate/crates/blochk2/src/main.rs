use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use blochk2::cli::{self, exit_code, Command, CycloCheck, OutputFormat, RunConfig};

/// Bloch-group boundary certificates, dilogarithm regulators, Dedekind zeta
/// special values and tame-kernel order predictions.
#[derive(Parser)]
#[command(name = "blochk2", version, about)]
struct Args {
    /// Decimal working precision (env: BLOCHK2_DIGITS)
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Dirichlet-series truncation for zeta sieves
    #[arg(long, global = true, default_value_t = 10_000_000)]
    terms: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Json)]
    output_format: OutputArg,

    /// Write the report to a file as well as standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Cli,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cli {
    /// Evaluate Li2 and the Bloch-Wigner function at a complex point
    Dilog {
        /// complex literal, e.g. "0.5+0.5i"
        #[arg(long)]
        z: String,
    },
    /// Signature, discriminant, embeddings and w2 of a field
    FieldInfo {
        #[arg(long)]
        field: PathBuf,
    },
    /// Boundary-kernel certificates for formal sums
    VerifyBloch {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        elements: PathBuf,
    },
    /// Dedekind zeta at s = 2 with a rigorous tail bound
    Zeta2 {
        #[arg(long)]
        field: PathBuf,
    },
    /// Tame-kernel order prediction from certified Bloch elements
    K2Predict {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        elements: PathBuf,
    },
    /// Cyclotomic regulator and special-value checks
    Cyclo {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        check: CycloArg,
        /// #K2 of the maximal real subfield's integers (theorem33 only)
        #[arg(long)]
        k2_plus: Option<u64>,
    },
    /// Run the bundled example corpus
    PaperSuite {
        /// include per-case wall-clock timings (breaks byte-determinism)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CycloArg {
    Regulator,
    Theorem33,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let digits = args
        .digits
        .or_else(|| {
            std::env::var("BLOCHK2_DIGITS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(38);
    let command = match args.command {
        Cli::Dilog { z } => Command::Dilog { z },
        Cli::FieldInfo { field } => Command::FieldInfo { field_path: field },
        Cli::VerifyBloch { field, elements } => {
            Command::VerifyBloch { field_path: field, elements_path: elements }
        }
        Cli::Zeta2 { field } => Command::Zeta2 { field_path: field },
        Cli::K2Predict { field, elements } => {
            Command::K2Predict { field_path: field, elements_path: elements }
        }
        Cli::Cyclo { p, check, k2_plus } => Command::Cyclo {
            p,
            check: match check {
                CycloArg::Regulator => CycloCheck::Regulator,
                CycloArg::Theorem33 => CycloCheck::Theorem33,
            },
            k2_plus,
        },
        Cli::PaperSuite { timings } => Command::PaperSuite { timings },
    };
    let config = RunConfig {
        digits,
        terms: args.terms,
        command,
        output_format: match args.output_format {
            OutputArg::Json => OutputFormat::Json,
            OutputArg::Text => OutputFormat::Text,
        },
    };
    match cli::run(&config) {
        Ok(outcome) => {
            let rendered = match config.output_format {
                OutputFormat::Json => blochk2::report::to_json_string(&outcome.report),
                OutputFormat::Text => cli::render_text(&outcome.report),
            };
            print!("{rendered}");
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(exit_code::INPUT_ERROR as u8);
                }
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for_error(&e) as u8)
        }
    }
}
