use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use zxdb_core::bench::{run_bench, to_csv, BenchConfig};
use zxdb_core::circuit::{circuit_to_diagram, gen_random_circuit, gen_rule_instance, parse_qasm};
use zxdb_core::scheduler::{budget_exhausted, run_pipeline, PassReport, DEFAULT_MAX_ROUNDS, DEFAULT_SCHEDULE};
use zxdb_core::verify::{verify, TensorCaps, VerifyBudget, DEFAULT_TOL};
use zxdb_core::{Diagram, EdgeKind, NodeKind, RuleId};

const EXIT_NOT_EQUAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "zxdb", version, about = "ZX-diagram rewriting, verification and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplify a diagram (JSON or .qasm); pass reports go to stdout as CSV.
    Simplify {
        input: PathBuf,
        /// Comma-separated rule names, run in order each round.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<RuleId>>,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        /// Where to write the simplified diagram JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that AFTER is equivalent to BEFORE; prints a JSON verdict.
    Verify {
        before: PathBuf,
        after: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Reference rewrite for the structural fallbacks.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Time one rule to fixpoint on generated instances; writes CSV.
    Bench {
        #[arg(long)]
        rule: RuleId,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random circuit (QASM) or a rule instance (diagram JSON).
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Node, edge, phase and degree statistics of a diagram as JSON.
    Stats { input: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    Circuit {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Instance {
        #[arg(long)]
        rule: RuleId,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.to_string(),
    }
}

fn load(path: &Path) -> Result<Diagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let is_qasm = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("qasm"));
    if is_qasm {
        let c = parse_qasm(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Ok(circuit_to_diagram(&c))
    } else {
        Diagram::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn cmd_simplify(input: &Path, schedule: &[RuleId], max_rounds: usize, out: &Path) -> Result<u8, Failure> {
    let mut d = load(input)?;
    let reports = run_pipeline(&mut d, schedule, max_rounds).map_err(|e| Failure {
        code: 1,
        msg: e.to_string(),
    })?;
    emit(Some(out), &with_newline(d.to_json()))?;
    println!("{}", PassReport::CSV_HEADER);
    for r in &reports {
        println!("{}", r.csv_row());
    }
    Ok(if budget_exhausted(&reports) { EXIT_BUDGET } else { 0 })
}

fn cmd_verify(before: &Path, after: &Path, tol: f64, reference: Option<&Path>) -> Result<u8, Failure> {
    let (a, b) = (load(before)?, load(after)?);
    let r = reference.map(load).transpose()?;
    let budget = VerifyBudget {
        caps: TensorCaps::from_env().map_err(usage)?,
        tol,
        reference: r.as_ref(),
        ..Default::default()
    };
    let v = verify(&a, &b, &budget).map_err(usage)?;
    println!("{}", v.to_json());
    Ok(if v.equal { 0 } else { EXIT_NOT_EQUAL })
}

fn cmd_bench(rule: RuleId, sizes: Vec<usize>, reps: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let cfg = BenchConfig::new(rule, sizes, reps, seed).map_err(usage)?;
    let rows = run_bench(&cfg).map_err(usage)?;
    emit(out, &to_csv(&rows))?;
    Ok(if rows.iter().any(|r| r.budget_exhausted) { EXIT_BUDGET } else { 0 })
}

fn cmd_gen(kind: GenKind) -> Result<u8, Failure> {
    match kind {
        GenKind::Circuit {
            qubits,
            gates,
            seed,
            out,
        } => {
            let c = gen_random_circuit(qubits, gates, seed).map_err(usage)?;
            emit(out.as_deref(), &c.to_qasm())?;
        }
        GenKind::Instance { rule, size, seed, out } => {
            let d = gen_rule_instance(rule, size, seed).map_err(usage)?;
            emit(out.as_deref(), &with_newline(d.to_json()))?;
        }
    }
    Ok(0)
}

fn stats(d: &Diagram) -> Value {
    let mut nodes: BTreeMap<&str, usize> = [("B", 0), ("X", 0), ("Z", 0)].into();
    let mut phases: BTreeMap<String, usize> = BTreeMap::new();
    for v in d.node_ids() {
        let kind = d.kind(v).expect("live node");
        *nodes.entry(kind.letter()).or_default() += 1;
        if kind != NodeKind::B {
            let p = d.phase(v).expect("live node");
            let key = p.fraction_string().unwrap_or_else(|| "inexact".to_string());
            *phases.entry(key).or_default() += 1;
        }
    }
    let mut edges: BTreeMap<&str, usize> = [("H", 0), ("S", 0)].into();
    for (_, _, k) in d.edges() {
        *edges.entry(if k == EdgeKind::Simple { "S" } else { "H" }).or_default() += 1;
    }
    json!({
        "nodes": nodes,
        "edges": edges,
        "phases": phases,
        "degree_sequence": d.degree_sequence(),
        "boundaries": {"inputs": d.inputs().len(), "outputs": d.outputs().len()},
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Simplify {
            input,
            schedule,
            max_rounds,
            out,
        } => {
            let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
            cmd_simplify(&input, &schedule, max_rounds, &out)
        }
        Command::Verify {
            before,
            after,
            tol,
            reference,
        } => cmd_verify(&before, &after, tol, reference.as_deref()),
        Command::Bench {
            rule,
            sizes,
            reps,
            seed,
            out,
        } => cmd_bench(rule, sizes, reps, seed, out.as_deref()),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Stats { input } => {
            let d = load(&input)?;
            println!("{}", stats(&d));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("zxdb: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
