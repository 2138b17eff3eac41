//! `graphcode`: encode, erase, decode, verify, audit and simulate codes over
//! complete graphs.
//!
//! Exit status: 0 on success, 1 when a decode, verification or audit fails,
//! 2 on usage or input errors.

mod code;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use code::CodeKind;

#[derive(Parser, Debug)]
#[command(name = "graphcode", version, about = "Node-erasure codes over complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[arg(long, value_enum)]
    pub code: CodeKind,
    /// Number of nodes; read from the input file when omitted there.
    #[arg(long)]
    pub n: Option<usize>,
    /// Failures to correct (c1, c2); the double codes fix it to 2.
    #[arg(long)]
    pub rho: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode an information block (random from --seed when --in is omitted).
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mark the neighborhoods of the given nodes unknown.
    Erase {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        nodes: Vec<usize>,
    },
    /// Recover an erased graph; the failed nodes must be named.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        nodes: Vec<usize>,
    },
    /// Check every constraint of the code.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rank, dimension and optimality report, with the structural checks.
    Audit {
        #[command(flatten)]
        code: CodeArgs,
        /// Decode every failure set of full size.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random codewords, random failures, decode and count.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode { code, input, out, seed } => commands::encode(&code, input.as_deref(), out.as_deref(), seed),
        Command::Erase { input, out, nodes } => commands::erase(&input, out.as_deref(), &nodes),
        Command::Decode { code, input, out, nodes } => commands::decode(&code, &input, out.as_deref(), &nodes),
        Command::Verify { code, input } => commands::verify(&code, &input),
        Command::Audit { code, exhaustive, seed } => commands::audit(&code, exhaustive, seed),
        Command::Simulate { code, trials, seed } => commands::simulate(&code, trials, seed),
    };
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
