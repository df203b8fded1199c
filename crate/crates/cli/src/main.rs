// SPDX-License-Identifier: Apache-2.0

//! `qmap`: synthesize, inspect and verify reversible circuits.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qmap",
    version,
    about = "Reversible logic synthesis over NOT/CNOT/Toffoli"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a circuit, write it as OpenQASM and print its census and cost.
    Synth(SynthArgs),
    /// Check an OpenQASM circuit against a truth table on every input.
    Verify(VerifyArgs),
    /// Print one stage's map, optionally with the chosen groups.
    Show(ShowArgs),
    /// Synthesize and write only the OpenQASM text.
    Export(SynthArgs),
    /// Print the cost of a circuit (given as QASM or synthesized from a table).
    Cost(CostArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Disjoint,
    Esop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Natural,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LowerArg {
    None,
    Toffoli2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostArg {
    Count,
    Weighted,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Truth table file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Esop)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Natural)]
    order: OrderArg,
    /// Largest map width minimized exactly in esop mode.
    #[arg(long = "exact-limit", default_value_t = qmap_core::qmap::DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value_t = LowerArg::None)]
    lower: LowerArg,
    #[arg(long, value_enum, default_value_t = CostArg::Count)]
    cost: CostArg,
    /// Output path for the QASM text (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print a text diagram of the circuit.
    #[arg(long)]
    diagram: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Truth table file.
    #[arg(long)]
    input: PathBuf,
    /// OpenQASM file.
    #[arg(long)]
    circuit: PathBuf,
}

#[derive(Debug, Args)]
pub struct ShowArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Target qubit whose toggle map is shown.
    #[arg(long)]
    stage: usize,
    /// Mark the cells of each chosen group.
    #[arg(long)]
    groups: bool,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    /// Truth table file; synthesized when no circuit is given, and supplies
    /// the data width otherwise.
    #[arg(long)]
    input: Option<PathBuf>,
    /// OpenQASM file.
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Esop)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Natural)]
    order: OrderArg,
    #[arg(long, value_enum, default_value_t = LowerArg::None)]
    lower: LowerArg,
    #[arg(long = "exact-limit", default_value_t = qmap_core::qmap::DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    #[arg(long, value_enum, default_value_t = CostArg::Count)]
    cost: CostArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(commands::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Synth(args) => commands::synth(&args, true),
        Command::Export(args) => commands::synth(&args, false),
        Command::Verify(args) => commands::verify(&args),
        Command::Show(args) => commands::show(&args),
        Command::Cost(args) => commands::cost(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
