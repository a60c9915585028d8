use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lagrangian_cli::*;
use lagrangian_core::contraction::Convention;

#[derive(Parser)]
#[command(name = "lagrangian", version, about = "Linear sections of the Lagrangian-Grassmannian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    #[value(name = "B")]
    B,
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
    #[value(name = "A")]
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Sms,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Unsigned,
    Signed,
}

#[derive(Subcommand)]
enum Command {
    /// Export B (--n), L_k (--k), M_m (--m) or A_k^l (--k, --level).
    Build {
        #[arg(value_enum)]
        kind: MatrixKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_enum, default_value = "sms")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose B, check every block and write a JSON report.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,2,3,5,7")]
        chars: Vec<u64>,
        /// Random Lagrangian samples per characteristic.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        force_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ranks of B and L_2..L_r as CSV.
    RankTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,2,3,5,7")]
        chars: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        force_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a sparse Plücker vector satisfies every linear condition.
    CheckPoint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "unsigned")]
        convention: ConventionArg,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize> {
    match value {
        Some(v) => Ok(v),
        None => bail!("missing --{flag}"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build {
            kind,
            n,
            k,
            m,
            level,
            format,
            out,
        } => {
            let kind = match kind {
                MatrixKind::B => Kind::B { n: need(n, "n")? },
                MatrixKind::L => Kind::L { k: need(k, "k")? },
                MatrixKind::M => Kind::M { m: need(m, "m")? },
                MatrixKind::A => Kind::A {
                    k: need(k, "k")?,
                    level: need(level, "level")?,
                },
            };
            let matrix = build_matrix(kind)?;
            let text = match format {
                Format::Sms => to_sms(&matrix),
                Format::Csv => to_csv(&matrix),
            };
            emit(out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Verify {
            n,
            seed,
            chars,
            samples,
            force_large,
            out,
        } => {
            check_n(n, force_large)?;
            let report = verify(n, &parse_fields(&chars)?, seed, samples)?;
            emit(out.as_ref(), &report_json(&report)?)?;
            for (name, ok) in &report.checks {
                if !ok {
                    eprintln!("check failed: {name}");
                }
            }
            Ok(report.passed())
        }
        Command::RankTable {
            n,
            chars,
            seed,
            force_large,
            out,
        } => {
            check_n(n, force_large)?;
            let (csv, notes) = rank_table(n, &parse_fields(&chars)?, seed)?;
            for note in notes {
                eprintln!("note: {note}");
            }
            emit(out.as_ref(), &csv)?;
            Ok(true)
        }
        Command::CheckPoint {
            n,
            file,
            convention,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let convention = match convention {
                ConventionArg::Unsigned => Convention::Unsigned,
                ConventionArg::Signed => Convention::Signed,
            };
            let (out, member) = check_point(n, &text, convention)?;
            print!("{out}");
            Ok(member)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
