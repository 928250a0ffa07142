//! Command-line driver: compute and cross-verify cohomology rings of Seifert
//! fibered spaces, inspect pavement words, export complexes, and sweep the
//! built-in verification corpus.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use seifert_core::invariants::{self, SeifertInvariants};
use seifert_core::report::{
    self, groups_report, render_corpus_text, render_text, run_fixture, RunOptions,
};
use seifert_core::simplicial::build_delta_complex;
use seifert_core::transfer::BasisVariant;
use seifert_core::words::build_word;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "seifert",
    about = "Cohomology rings of Seifert fibered spaces over Z_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Theorem,
    Table,
}

impl From<VariantArg> for BasisVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Theorem => BasisVariant::Theorem,
            VariantArg::Table => BasisVariant::Table,
        }
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
    /// Generator convention where the published ones differ
    #[arg(long = "basis-variant", value_enum, default_value = "theorem")]
    basis_variant: VariantArg,
    /// Also evaluate products that are provably zero and check them
    #[arg(long)]
    paranoid: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the ring two ways for one manifold and compare
    Ring {
        /// Invariant list, e.g. "e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)"
        #[arg(long)]
        invariants: String,
        /// Coefficient prime
        #[arg(long)]
        prime: u64,
        /// Print every product, not only mismatches
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Cohomology dimensions and generators only
    Groups {
        #[arg(long)]
        invariants: String,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sweep the built-in fixture corpus
    VerifyCorpus {
        /// Comma-separated primes
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dump the Δ-complex in the line-oriented exchange format
    ExportComplex {
        #[arg(long)]
        invariants: String,
        /// Write to this path instead of stdout
        #[arg(long)]
        export: Option<std::path::PathBuf>,
    },
    /// Inspect the pavement word w_{alpha,beta}
    Word {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
}

fn parse_invariants(text: &str) -> Result<SeifertInvariants, String> {
    invariants::parse(text).map_err(|e| e.to_string())
}

fn check_prime(p: u64) -> Result<(), String> {
    if !(2..(1 << 31)).contains(&p) {
        return Err(format!("prime must be in [2, 2^31), got {p}"));
    }
    let composite = (2..)
        .take_while(|d| d * d <= p)
        .any(|d| p.is_multiple_of(d));
    if composite {
        return Err(format!("{p} is not prime"));
    }
    Ok(())
}

fn run() -> Result<ExitCode, String> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(e.to_string()),
    };

    match cli.command {
        Command::Ring {
            invariants,
            prime,
            full,
            common,
        } => {
            check_prime(prime)?;
            let inv = parse_invariants(&invariants)?;
            let opts = RunOptions {
                variant: common.basis_variant.into(),
                paranoid: common.paranoid,
            };
            let r = run_fixture(&inv, prime, opts);
            match common.output {
                OutputFormat::Text => print!("{}", render_text(&r, full)),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?
                    )
                }
            }
            Ok(if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Groups {
            invariants,
            prime,
            common,
        } => {
            check_prime(prime)?;
            let inv = parse_invariants(&invariants)?;
            let r = groups_report(&inv, prime, common.basis_variant.into());
            match common.output {
                OutputFormat::Text => print!("{}", render_text(&r, false)),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?
                    )
                }
            }
            Ok(if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::VerifyCorpus { primes, common } => {
            let primes: Vec<u64> = primes
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            for &p in &primes {
                check_prime(p)?;
            }
            let opts = RunOptions {
                variant: common.basis_variant.into(),
                paranoid: common.paranoid,
            };
            let c = report::verify_corpus(&primes, opts);
            match common.output {
                OutputFormat::Text => print!("{}", render_corpus_text(&c)),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&c).map_err(|e| e.to_string())?
                    )
                }
            }
            Ok(if c.verdict == "PASS" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::ExportComplex { invariants, export } => {
            let inv = parse_invariants(&invariants)?;
            let dump = build_delta_complex(&inv).export();
            match export {
                Some(path) => std::fs::write(&path, dump).map_err(|e| e.to_string())?,
                None => print!("{dump}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Word {
            alpha,
            beta,
            output,
        } => {
            let w = build_word(alpha, beta).map_err(|e| e.to_string())?;
            match output {
                OutputFormat::Text => println!("{w}"),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&w).map_err(|e| e.to_string())?
                    )
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
