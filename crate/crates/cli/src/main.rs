use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use cli::{build_scenario, run_eqcheck, run_verification, VerifyOptions, SCENARIO_FAMILIES};
use lsta_core::DEFAULT_INCLUSION_BUDGET;
use qasm_frontend::{parse_pqasm, parse_qasm, serialize_pqasm, serialize_qasm, Circuit};
use spec_kit::{inject_bug, parse_lsta, serialize_lsta, BugScenario};

/// Symbolic verifier for quantum circuits over level-synchronized tree
/// automata.
#[derive(Parser)]
#[command(name = "lstav", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Hoare triple {pre} circuit {post}
    Verify {
        /// Precondition automaton (.lsta)
        #[arg(long)]
        pre: PathBuf,
        /// Circuit file (.qasm, or a directive file with --param)
        #[arg(long)]
        circuit: PathBuf,
        /// Post-condition automaton (.lsta)
        #[arg(long)]
        post: PathBuf,
        /// Treat the circuit as a parameterized directive file
        #[arg(long)]
        param: bool,
        /// Skip the reduction pass after each gate
        #[arg(long)]
        no_reduce: bool,
        /// Inclusion-search budget in visited vertices
        #[arg(long, default_value_t = DEFAULT_INCLUSION_BUDGET)]
        budget: usize,
    },
    /// Check two .qasm circuits for equivalence
    Eqcheck {
        a: PathBuf,
        b: PathBuf,
        /// Inclusion-search budget in visited vertices
        #[arg(long, default_value_t = DEFAULT_INCLUSION_BUDGET)]
        budget: usize,
    },
    /// Generate a benchmark instance: pre/post .lsta plus the circuit file
    Gen {
        /// Family: bell, ghz-sing, ghz-all, bv, mctoffoli, h2, hxh,
        /// ghz-param, hamiltonian, single-excitation
        family: String,
        /// Size parameter for the fixed-width families
        #[arg(short)]
        n: Option<u32>,
        /// Initial target bit for mctoffoli
        #[arg(short)]
        k: Option<u8>,
        /// Output directory
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Inject a deterministic bug into a .qasm circuit
    Inject {
        /// miss-gate (delete a random gate) or flip-cx (swap a random
        /// control/target pair)
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        seed: u64,
        /// Input circuit (.qasm)
        #[arg(long)]
        circuit: PathBuf,
        /// Output circuit path
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_lsta(path: &Path) -> anyhow::Result<lsta_core::Lsta> {
    parse_lsta(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Verify { pre, circuit, post, param, no_reduce, budget } => {
            let pre = load_lsta(&pre)?;
            let post = load_lsta(&post)?;
            let text = read(&circuit)?;
            let circuit = if param {
                Circuit::Param(
                    parse_pqasm(&text).with_context(|| format!("parsing {}", circuit.display()))?,
                )
            } else {
                Circuit::Fixed(
                    parse_qasm(&text).with_context(|| format!("parsing {}", circuit.display()))?,
                )
            };
            let opts = VerifyOptions { reduce: !no_reduce, budget };
            let report = run_verification(&pre, &circuit, &post, &opts);
            print!("{}", report.render());
            Ok(report.verdict.exit_code())
        }
        Cmd::Eqcheck { a, b, budget } => {
            let c1 = parse_qasm(&read(&a)?).with_context(|| format!("parsing {}", a.display()))?;
            let c2 = parse_qasm(&read(&b)?).with_context(|| format!("parsing {}", b.display()))?;
            let opts = VerifyOptions { budget, ..VerifyOptions::default() };
            let report = run_eqcheck(&c1, &c2, &opts);
            print!("{}", report.render());
            Ok(report.verdict.exit_code())
        }
        Cmd::Gen { family, n, k, out } => {
            let scenario = build_scenario(&family, n, k).with_context(|| {
                format!("building family `{family}` (known: {})", SCENARIO_FAMILIES.join(", "))
            })?;
            fs::create_dir_all(&out)
                .with_context(|| format!("creating {}", out.display()))?;
            let pre_path = out.join("pre.lsta");
            let post_path = out.join("post.lsta");
            fs::write(&pre_path, serialize_lsta(&scenario.pre))?;
            fs::write(&post_path, serialize_lsta(&scenario.post))?;
            let circuit_path = match &scenario.circuit {
                Circuit::Fixed(c) => {
                    let p = out.join("circuit.qasm");
                    fs::write(&p, serialize_qasm(c))?;
                    p
                }
                Circuit::Param(c) => {
                    let p = out.join("circuit.pqasm");
                    fs::write(&p, serialize_pqasm(c))?;
                    p
                }
            };
            println!("pre: {}", pre_path.display());
            println!("circuit: {}", circuit_path.display());
            println!("post: {}", post_path.display());
            Ok(0)
        }
        Cmd::Inject { scenario, seed, circuit, out } => {
            let scenario: BugScenario = scenario.parse().map_err(anyhow::Error::msg)?;
            let c = parse_qasm(&read(&circuit)?)
                .with_context(|| format!("parsing {}", circuit.display()))?;
            let mutated = inject_bug(&c, scenario, seed)?;
            fs::write(&out, serialize_qasm(&mutated))
                .with_context(|| format!("writing {}", out.display()))?;
            println!("circuit: {}", out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
