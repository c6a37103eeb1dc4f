use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod selftest;

#[derive(Parser, Debug)]
#[command(name = "splitmerge", version, about = "Regular vines, MAT-labeled graphs and maximal single-peaked domains")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Expected kind of the input file.
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// Run cross-representation checks as well.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Direct,
    Transport,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    Formula,
    Recursive,
    Generate,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a structure file against the axioms of its kind.
    Verify { path: PathBuf },
    /// Convert a structure into another representation.
    Convert {
        path: PathBuf,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Via::Direct)]
        via: Via,
    },
    /// Report richness, first-rank counts, bottoms and symmetry.
    Analyze { path: PathBuf },
    /// Count labeled vines and isomorphism classes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CountMode::Formula)]
        mode: CountMode,
    },
    /// Write the class catalog for one size.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in worked examples.
    Selftest,
}

/// Process exit status: success, a structure that fails its checks, or an
/// input/usage problem.
pub enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
