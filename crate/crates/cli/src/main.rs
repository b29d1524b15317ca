//! `thetarm`: generate and verify the theta relations of abelian surfaces
//! with real multiplication by √3, and run the curve pipeline.
//!
//! Exit codes: 0 success or positive, 1 failed check, negative decision or
//! empty result, 2 usage or input error.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "thetarm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field file: `prime <p>` and optionally `ext <name> <c0> ... <cn>`.
    #[arg(long, value_name = "FILE")]
    field: PathBuf,
    /// Test the extension modulus for irreducibility.
    #[arg(long)]
    check_irreducible: bool,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Write the result here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated relation set.
    Relations {
        /// mumford, rm, rm-bilinear, split-product or split-square.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate a relation set at a level-4 theta null point.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Level-4 point file (`a <i> <j> <element>` lines).
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        /// Relation set to check; a relation file path is also accepted.
        #[arg(long, default_value = "mumford")]
        set: String,
    },
    /// Thomae values r1..r4 of a curve.
    Thomae {
        #[command(flatten)]
        field: FieldArgs,
        /// Curve file (`rosenhain` or `branch` line).
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Level-2 data of a level-4 theta null point.
    Down {
        #[command(flatten)]
        field: FieldArgs,
        /// Level-4 point file.
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Level-4 theta null points above a level-2 point or level-2 data.
    Up {
        #[command(flatten)]
        field: FieldArgs,
        /// Level-2 file (`b` lines, or `sq` and `prod` lines).
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rosenhain models matching a level-2 point or level-2 data.
    Rosenhain {
        #[command(flatten)]
        field: FieldArgs,
        /// Level-2 file.
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide whether a Rosenhain curve has a theta structure satisfying the
    /// Mumford and RM relations.
    RmTest {
        #[command(flatten)]
        field: FieldArgs,
        /// Curve file.
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
        #[arg(long, default_value_t = 120)]
        max_orderings: usize,
        #[arg(long, default_value_t = 100_000)]
        max_candidates: usize,
        /// Over a prime field, retry over a quadratic extension when the
        /// field lacks the needed square roots.
        #[arg(long)]
        auto_extend: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check the bundled example end to end.
    SelftestExample {
        /// Directory holding the example data files.
        #[arg(long, value_name = "DIR", default_value_os_t = selftest::default_data_dir())]
        data_dir: PathBuf,
    },
}

/// How a command finished when it did not hit an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Success,
    Negative,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    use commands::*;
    match cli.command {
        Command::Relations { set, out } => cmd_relations(&set, out.out.as_deref()),
        Command::Verify { field, point, set } => cmd_verify(&field, &point, &set),
        Command::Thomae { field, curve, out } => cmd_thomae(&field, &curve, out.out.as_deref()),
        Command::Down { field, point, out } => cmd_down(&field, &point, out.out.as_deref()),
        Command::Up { field, point, out } => cmd_up(&field, &point, out.out.as_deref()),
        Command::Rosenhain { field, point, out } => {
            cmd_rosenhain(&field, &point, out.out.as_deref())
        }
        Command::RmTest {
            field,
            curve,
            max_orderings,
            max_candidates,
            auto_extend,
            out,
        } => cmd_rm_test(
            &field,
            &curve,
            thetarm_core::pipeline::SearchConfig {
                max_orderings,
                max_candidates,
                auto_extend,
            },
            out.out.as_deref(),
        ),
        Command::SelftestExample { data_dir } => selftest::run(&data_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
