//! `rankred`: build, solve and check instances of the reduction chain
//! 3-SAT → polynomial systems → rank-3 completion → tensor rank →
//! symmetric rank.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankred::sigma::DEFAULT_GUARD;

#[derive(Parser)]
#[command(name = "rankred", version, about)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a positive 3-CNF (with `neq` lines) as a polynomial system.
    #[command(name = "encode-3sat")]
    Encode3Sat {
        cnf: PathBuf,
        /// Ring of the output system (Z, Q or gf:p).
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the completion, tensor or symmetric instance for an input.
    Reduce {
        stage: Stage,
        input: PathBuf,
        /// Largest index set allowed at any stage.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        /// Read the input system over this ring instead.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a verified witness for an instance.
    Witness {
        instance: PathBuf,
        /// Comma-separated solution of the instance's polynomial system.
        #[arg(long)]
        solution: Option<String>,
        /// Decomposition of the payload tensor (symmetric instances).
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive reference computations over GF(p).
    Oracle {
        task: OracleTask,
        input: PathBuf,
        /// For example `max_rank=4,max_candidates=100000`.
        #[arg(long, default_value = "")]
        budget: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness against an instance by exact re-summation.
    Verify { instance: PathBuf, witness: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Completion,
    Tensor,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleTask {
    Solve,
    Minrank,
    Rank,
    Srank,
}

/// Exit status for an error: 2 unreadable input, 3 size guard,
/// 4 failed verification, 5 search budget, 1 anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    use rankred::Error::*;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<rankred::Error>() {
            return match e {
                Syntax { .. } | ParseScalar { .. } | Format(_) | Json(_) | Dimension(_)
                | VariableOutOfRange { .. } | ConstantPolynomial(_) | NotPrime(_) | RingMismatch(..) => 2,
                Guard { .. } => 3,
                NotASolution { .. } | CompletionMismatch { .. } | Verification(_) | Extraction(_)
                | NotTwin { .. } => 4,
                Budget(_) => 5,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Encode3Sat { cnf, ring, out } => commands::encode(&cnf, &ring, out.as_deref()),
        Command::Reduce {
            stage,
            input,
            guard,
            ring,
            out,
        } => commands::reduce(stage, &input, guard, ring.as_deref(), out.as_deref()),
        Command::Witness {
            instance,
            solution,
            decomposition,
            out,
        } => commands::witness(&instance, solution.as_deref(), decomposition.as_deref(), out.as_deref()),
        Command::Oracle {
            task,
            input,
            budget,
            out,
        } => commands::oracle(task, &input, &budget, out.as_deref()),
        Command::Verify { instance, witness } => commands::verify(&instance, &witness),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
