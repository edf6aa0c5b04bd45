//! `tokslide`: solve, verify and explore token-sliding reconfiguration
//! instances from the command line.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when an instance is
//! infeasible or unreachable, or a move sequence fails verification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use log::debug;

use tokslide_core::format::{self, FormatError, Instance, Structure, StructureKind};
use tokslide_core::interval_reconfig::reconf_interval;
use tokslide_core::matching::{fast_match_intervals, min_cost_matching};
use tokslide_core::oracle::{
    certify_optimality, reconfig_distance_bfs, reconfiguration_dot, verify_sequence, BfsOutcome,
    FeasibilityPredicate, DEFAULT_STATE_CAP,
};
use tokslide_core::tree::reconf_tree_dominating;
use tokslide_core::{gen, Error, Graph, MatchCost, MoveSequence, Reachability, RootedTree};

#[derive(Parser)]
#[command(
    name = "tokslide",
    version,
    about = "Shortest token-sliding reconfiguration of dominating sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a shortest move sequence for a tree or interval instance.
    Solve {
        file: PathBuf,
        /// Root used by the tree solver.
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Check that a move sequence turns the sources into the targets.
    Verify {
        file: PathBuf,
        moves: PathBuf,
        /// Also require the sequence to be shortest.
        #[arg(long)]
        optimal: bool,
    },
    /// Reconfiguration distance by breadth-first search over configurations.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Predicate::Dominating)]
        pred: Predicate,
        /// Maximum number of configurations to visit.
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
        /// Print the source's component of the reconfiguration graph as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Print a random instance with two dominating configurations.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the solver over a ladder of sizes; prints CSV.
    Bench {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a minimum-cost matching between sources and targets.
    Match {
        file: PathBuf,
        /// Use the interval-graph sweep instead of the general solver.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    Dominating,
    Independent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Interval,
}

impl From<Kind> for StructureKind {
    fn from(kind: Kind) -> Self {
        match kind {
            Kind::Tree => StructureKind::Tree,
            Kind::Interval => StructureKind::Intervals,
        }
    }
}

/// Why a command stopped, and with which exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Rejected(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Rejected(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Feasibility(_) | Error::Unreachable { .. } => Failure::Rejected(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Semantic(inner) => inner.into(),
            syntax => Failure::Invalid(syntax.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("REC_LOG"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { file, root } => solve(&file, root),
        Command::Verify {
            file,
            moves,
            optimal,
        } => verify(&file, &moves, optimal),
        Command::Oracle {
            file,
            pred,
            cap,
            dot,
        } => oracle(&file, pred, cap, dot),
        Command::Gen { kind, n, k, seed } => generate(kind, n, k, seed),
        Command::Bench { kind, sizes, seed } => bench(kind, &sizes, seed),
        Command::Match { file, fast } => matching(&file, fast),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<Instance, Failure> {
    Ok(format::parse_instance(&read(path)?)?)
}

/// Runs the structure's solver; `None` when the targets are unreachable.
fn solve_instance(
    inst: &Instance,
    root: usize,
) -> std::result::Result<Option<MoveSequence>, Failure> {
    match &inst.structure {
        Structure::Tree { .. } => {
            let tree = inst.rooted_tree(root)?;
            Ok(Some(reconf_tree_dominating(
                &tree,
                &inst.sources,
                &inst.targets,
            )?))
        }
        Structure::Graph { .. } => {
            let g = inst.graph()?;
            if !g.is_tree() {
                return Err(Failure::Invalid(
                    "solve handles trees and interval instances; this graph is not a tree".into(),
                ));
            }
            let tree = RootedTree::new(g, root)?;
            Ok(Some(reconf_tree_dominating(
                &tree,
                &inst.sources,
                &inst.targets,
            )?))
        }
        Structure::Intervals(_) => {
            let rep = inst.representation()?;
            Ok(match reconf_interval(&rep, &inst.sources, &inst.targets)? {
                Reachability::Reachable(seq) => Some(seq),
                Reachability::Unreachable => None,
            })
        }
    }
}

fn solve(file: &Path, root: usize) -> Outcome {
    let inst = load_instance(file)?;
    let start = Instant::now();
    let seq = solve_instance(&inst, root)?;
    debug!("solved in {:?}", start.elapsed());
    match seq {
        Some(seq) => {
            print!("{}", format::emit_moves(&seq));
            Ok(())
        }
        None => {
            println!("unreachable");
            Err(Failure::Rejected(
                "target configuration is unreachable".into(),
            ))
        }
    }
}

fn verify(file: &Path, moves: &Path, optimal: bool) -> Outcome {
    let inst = load_instance(file)?;
    let seq = format::parse_moves(&read(moves)?)?;
    let g = inst.graph()?;
    let pred = FeasibilityPredicate::Dominating(&g);
    let check = verify_sequence(&g, pred, &inst.sources, &seq);
    if let Some(why) = check.failure {
        return Err(Failure::Rejected(format!("invalid sequence: {why}")));
    }
    if !check.last.same_tokens(&inst.targets) {
        return Err(Failure::Rejected(
            "sequence does not end at the target configuration".into(),
        ));
    }
    let len = seq.total_length();
    if optimal && !is_optimal(&g, &inst, &seq)? {
        return Err(Failure::Rejected(format!(
            "sequence of length {len} is not shortest"
        )));
    }
    println!("ok {len}");
    Ok(())
}

/// A sequence as long as the matching lower bound is shortest outright;
/// otherwise the breadth-first oracle decides.
fn is_optimal(
    g: &Graph,
    inst: &Instance,
    seq: &MoveSequence,
) -> std::result::Result<bool, Failure> {
    let (_, lower) = min_cost_matching(g, &inst.sources, &inst.targets)?;
    if lower == MatchCost::Finite(seq.total_length()) {
        return Ok(true);
    }
    let pred = FeasibilityPredicate::Dominating(g);
    Ok(certify_optimality(
        g,
        pred,
        &inst.sources,
        &inst.targets,
        seq,
    )?)
}

fn oracle(file: &Path, pred: Predicate, cap: usize, dot: bool) -> Outcome {
    let inst = load_instance(file)?;
    let g = inst.graph()?;
    let pred = match pred {
        Predicate::Dominating => FeasibilityPredicate::Dominating(&g),
        Predicate::Independent => FeasibilityPredicate::IndependentSet(&g),
    };
    if dot {
        print!("{}", reconfiguration_dot(&g, pred, &inst.sources, cap)?);
        return Ok(());
    }
    match reconfig_distance_bfs(&g, pred, &inst.sources, &inst.targets, cap)? {
        BfsOutcome::Distance(d) => {
            println!("{d}");
            Ok(())
        }
        BfsOutcome::Unreachable => {
            println!("unreachable");
            Err(Failure::Rejected(
                "target configuration is unreachable".into(),
            ))
        }
        BfsOutcome::CapExceeded => Err(Failure::Invalid(format!(
            "more than {cap} configurations; raise --cap or use solve"
        ))),
    }
}

fn generate(kind: Kind, n: usize, k: usize, seed: u64) -> Outcome {
    let inst = gen::generate_instance(kind.into(), n, k, seed)?;
    print!("{}", format::emit_instance(&inst));
    Ok(())
}

fn bench(kind: Kind, sizes: &[usize], seed: u64) -> Outcome {
    println!("n,total_moves,wall_ms");
    for &n in sizes {
        if n == 0 {
            return Err(Failure::Invalid("sizes must be positive".into()));
        }
        let inst = gen::scaling_instance(kind.into(), n, seed)?;
        let start = Instant::now();
        let seq = solve_instance(&inst, 0)?.ok_or_else(|| {
            Failure::Rejected(format!("generated instance of size {n} is unreachable"))
        })?;
        let wall = start.elapsed();
        println!("{n},{},{:.3}", seq.total_length(), wall.as_secs_f64() * 1e3);
    }
    Ok(())
}

fn matching(file: &Path, fast: bool) -> Outcome {
    let inst = load_instance(file)?;
    let (m, cost) = if fast {
        fast_match_intervals(&inst.representation()?, &inst.sources, &inst.targets)?
    } else {
        min_cost_matching(&inst.graph()?, &inst.sources, &inst.targets)?
    };
    println!("cost {cost}");
    for ((u, v), count) in m.pairs() {
        println!("{u} {v} {count}");
    }
    Ok(())
}
