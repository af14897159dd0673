//! Driver logic behind the `lstav` binary: the verification and
//! equivalence-check pipelines, benchmark scenario construction, and report
//! rendering.  Lives in a library so the integration tests can call the
//! pipelines in-process.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use lsta_core::{includes, InclusionOutcome, Lsta, StateTree, TreeNode, DEFAULT_INCLUSION_BUDGET};
use qasm_frontend::{compose, dagger, Circuit, FixedCircuit};
use spec_kit::benchmarks;
use spec_kit::{build_predicate, PredicateFamily};
use thiserror::Error;

/// Witnesses whose fully expanded term has at least this many nodes are
/// printed as a shared-node listing instead of a term.
pub const WITNESS_PRINT_CAP: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        })
    }
}

/// Automaton size after one gate of the pipeline.
#[derive(Debug, Clone)]
pub struct GateSize {
    pub index: usize,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `fail`: a tree accepted by the
    /// circuit's output automaton but rejected by the post-condition.
    pub witness: Option<StateTree>,
    pub gate_sizes: Vec<GateSize>,
    /// Wall time spent pushing the precondition through the circuit.
    pub apply_time: Duration,
    /// Wall time spent on the language-inclusion check(s).
    pub inclusion_time: Duration,
    pub error: Option<String>,
    /// Extra key-value pairs included in the rendered report.
    pub notes: Vec<(String, String)>,
}

impl VerificationReport {
    fn error(msg: String, gate_sizes: Vec<GateSize>, apply_time: Duration) -> Self {
        VerificationReport {
            verdict: Verdict::Error,
            witness: None,
            gate_sizes,
            apply_time,
            inclusion_time: Duration::ZERO,
            error: Some(msg),
            notes: Vec::new(),
        }
    }

    /// Machine-readable key-value rendering, one `key: value` pair per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "gates: {}", self.gate_sizes.len());
        for g in &self.gate_sizes {
            let _ = writeln!(out, "gate_{}_states: {}", g.index, g.states);
            let _ = writeln!(out, "gate_{}_transitions: {}", g.index, g.transitions);
        }
        let _ = writeln!(out, "apply_ms: {:.3}", self.apply_time.as_secs_f64() * 1e3);
        let _ = writeln!(out, "inclusion_ms: {:.3}", self.inclusion_time.as_secs_f64() * 1e3);
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(w) = &self.witness {
            let (key, value) = format_witness(w);
            let _ = writeln!(out, "{key}: {value}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Reduce the automaton after every gate.
    pub reduce: bool,
    /// Bound on inclusion-search vertices; exceeding it is an error verdict.
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { reduce: true, budget: DEFAULT_INCLUSION_BUDGET }
    }
}

/// Pushes `pre` through the circuit gate by gate, recording sizes.
fn apply_pipeline(
    cur: &mut Lsta,
    circuit: &Circuit,
    opts: &VerifyOptions,
    sizes: &mut Vec<GateSize>,
) -> Result<(), String> {
    let record = |i: usize, a: &Lsta, sizes: &mut Vec<GateSize>| {
        sizes.push(GateSize {
            index: i + 1,
            states: a.num_states(),
            transitions: a.num_transitions(),
        });
    };
    match circuit {
        Circuit::Fixed(c) => {
            for (i, op) in c.lower().iter().enumerate() {
                *cur = gates::apply_gate(cur, op, opts.reduce)
                    .map_err(|e| format!("gate {}: {e}", i + 1))?;
                record(i, cur, sizes);
            }
        }
        Circuit::Param(c) => {
            for (i, op) in c.ops.iter().enumerate() {
                *cur = qasm_frontend::apply_param_gate(cur, op)
                    .map_err(|e| format!("directive {}: {e}", i + 1))?;
                if opts.reduce {
                    *cur = cur.reduce();
                }
                record(i, cur, sizes);
            }
        }
    }
    Ok(())
}

/// Decides the triple `{pre} circuit {post}`: computes the image of the
/// precondition under the circuit and checks its language is included in the
/// post-condition.  A `fail` verdict always carries a witness that has been
/// re-checked against both automata.
pub fn run_verification(
    pre: &Lsta,
    circuit: &Circuit,
    post: &Lsta,
    opts: &VerifyOptions,
) -> VerificationReport {
    let start = Instant::now();
    let mut image = pre.clone();
    let mut gate_sizes = Vec::new();
    if let Err(msg) = apply_pipeline(&mut image, circuit, opts, &mut gate_sizes) {
        return VerificationReport::error(msg, gate_sizes, start.elapsed());
    }
    let apply_time = start.elapsed();

    let t = Instant::now();
    let outcome = includes(&image, post, opts.budget);
    let inclusion_time = t.elapsed();

    let mut report = VerificationReport {
        verdict: Verdict::Pass,
        witness: None,
        gate_sizes,
        apply_time,
        inclusion_time,
        error: None,
        notes: Vec::new(),
    };
    match outcome {
        Ok(InclusionOutcome::Included) => {}
        Ok(InclusionOutcome::NotIncluded(w)) => {
            if !image.accepts(&w) || post.accepts(&w) {
                report.verdict = Verdict::Error;
                report.error =
                    Some("internal error: counterexample failed re-verification".to_string());
            } else {
                report.verdict = Verdict::Fail;
                report.witness = Some(w);
            }
        }
        Err(e) => {
            report.verdict = Verdict::Error;
            report.error = Some(e.to_string());
        }
    }
    report
}

/// Checks two fixed circuits for equivalence by verifying that `c1`
/// composed with the inverse of `c2` maps a basis of `2^n` linearly
/// independent vectors (the monotone 0..01..1 family) onto itself, in both
/// inclusion directions.
pub fn run_eqcheck(c1: &FixedCircuit, c2: &FixedCircuit, opts: &VerifyOptions) -> VerificationReport {
    if c1.qubit_count != c2.qubit_count {
        return VerificationReport::error(
            format!(
                "circuits act on different widths: {} vs {} qubits",
                c1.qubit_count, c2.qubit_count
            ),
            Vec::new(),
            Duration::ZERO,
        );
    }
    let spec = match build_predicate(&PredicateFamily::EqVectors(c1.qubit_count)) {
        Ok(a) => a,
        Err(e) => return VerificationReport::error(e.to_string(), Vec::new(), Duration::ZERO),
    };
    let composed = Circuit::Fixed(compose(c1, &dagger(c2)));

    let start = Instant::now();
    let mut image = spec.clone();
    let mut gate_sizes = Vec::new();
    if let Err(msg) = apply_pipeline(&mut image, &composed, opts, &mut gate_sizes) {
        return VerificationReport::error(msg, gate_sizes, start.elapsed());
    }
    let apply_time = start.elapsed();

    let t = Instant::now();
    let forward = includes(&image, &spec, opts.budget);
    let backward = match &forward {
        Ok(InclusionOutcome::Included) => includes(&spec, &image, opts.budget),
        _ => Ok(InclusionOutcome::Included),
    };
    let inclusion_time = t.elapsed();

    let mut report = VerificationReport {
        verdict: Verdict::Pass,
        witness: None,
        gate_sizes,
        apply_time,
        inclusion_time,
        error: None,
        notes: Vec::new(),
    };
    let fail = |report: &mut VerificationReport,
                    w: StateTree,
                    accepted_by: &Lsta,
                    rejected_by: &Lsta,
                    direction: &str| {
        if !accepted_by.accepts(&w) || rejected_by.accepts(&w) {
            report.verdict = Verdict::Error;
            report.error =
                Some("internal error: counterexample failed re-verification".to_string());
        } else {
            report.verdict = Verdict::Fail;
            report.witness = Some(w);
            report.notes.push(("failed_direction".to_string(), direction.to_string()));
        }
    };
    match (forward, backward) {
        (Ok(InclusionOutcome::Included), Ok(InclusionOutcome::Included)) => {}
        (Ok(InclusionOutcome::NotIncluded(w)), _) => {
            fail(&mut report, w, &image, &spec, "image-into-spec");
        }
        (Ok(InclusionOutcome::Included), Ok(InclusionOutcome::NotIncluded(w))) => {
            fail(&mut report, w, &spec, &image, "spec-into-image");
        }
        (Err(e), _) | (_, Err(e)) => {
            report.verdict = Verdict::Error;
            report.error = Some(e.to_string());
        }
    }
    report
}

/// Renders a witness as a report entry.  Small trees are printed as a full
/// term, `x1(x2(0, 1/s2), x2(1/s2, 0))`; larger ones as a listing of shared
/// nodes, `root=nK; n0=...; ...`.
pub fn format_witness(t: &StateTree) -> (&'static str, String) {
    if t.expanded_size(WITNESS_PRINT_CAP) < WITNESS_PRINT_CAP {
        ("witness", expand_term(t, 1))
    } else {
        ("witness_dag", dag_listing(t))
    }
}

fn expand_term(t: &StateTree, level: u32) -> String {
    match t.node() {
        TreeNode::Leaf(v) => v.to_string(),
        TreeNode::Branch(l, r) => {
            format!("x{level}({}, {})", expand_term(l, level + 1), expand_term(r, level + 1))
        }
    }
}

fn dag_listing(t: &StateTree) -> String {
    fn go(
        t: &StateTree,
        level: u32,
        ids: &mut HashMap<*const TreeNode, usize>,
        defs: &mut Vec<String>,
    ) -> usize {
        if let Some(&i) = ids.get(&t.ptr()) {
            return i;
        }
        let def = match t.node() {
            TreeNode::Leaf(v) => v.to_string(),
            TreeNode::Branch(l, r) => {
                let a = go(l, level + 1, ids, defs);
                let b = go(r, level + 1, ids, defs);
                format!("x{level}(n{a}, n{b})")
            }
        };
        let i = defs.len();
        defs.push(format!("n{i}={def}"));
        ids.insert(t.ptr(), i);
        i
    }
    let mut ids = HashMap::new();
    let mut defs = Vec::new();
    let root = go(t, 1, &mut ids, &mut defs);
    format!("root=n{root}; {}", defs.join("; "))
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` requires {what}")]
    MissingParameter { family: String, what: String },
    #[error(transparent)]
    Predicate(#[from] spec_kit::SpecKitError),
    #[error(transparent)]
    Circuit(#[from] qasm_frontend::QasmError),
}

/// A ready-to-verify benchmark instance.
pub struct Scenario {
    pub pre: Lsta,
    pub circuit: Circuit,
    pub post: Lsta,
}

impl Scenario {
    fn fixed(
        pre: PredicateFamily,
        circuit: FixedCircuit,
        post: PredicateFamily,
    ) -> Result<Scenario, ScenarioError> {
        Ok(Scenario {
            pre: build_predicate(&pre)?,
            circuit: Circuit::Fixed(circuit),
            post: build_predicate(&post)?,
        })
    }

    fn param(
        pre: PredicateFamily,
        pqasm: &str,
        post: PredicateFamily,
    ) -> Result<Scenario, ScenarioError> {
        Ok(Scenario {
            pre: build_predicate(&pre)?,
            circuit: Circuit::Param(qasm_frontend::parse_pqasm(pqasm)?),
            post: build_predicate(&post)?,
        })
    }
}

/// Names of the generatable benchmark families.
pub const SCENARIO_FAMILIES: &[&str] = &[
    "bell",
    "ghz-sing",
    "ghz-all",
    "bv",
    "mctoffoli",
    "h2",
    "hxh",
    "ghz-param",
    "hamiltonian",
    "single-excitation",
];

/// Builds the precondition, circuit, and post-condition of a named
/// benchmark family.  `n` scales the fixed-width families; `k` selects the
/// initial target bit of the `mctoffoli` family (default 0).
pub fn build_scenario(family: &str, n: Option<u32>, k: Option<u8>) -> Result<Scenario, ScenarioError> {
    use PredicateFamily as P;
    let need_n = || -> Result<u32, ScenarioError> {
        n.ok_or_else(|| ScenarioError::MissingParameter {
            family: family.to_string(),
            what: "-n".to_string(),
        })
    };
    match family {
        "bell" => Scenario::fixed(P::BasisAll(2), benchmarks::bell_circuit(), P::Bell),
        "ghz-sing" => {
            let n = need_n()?;
            Scenario::fixed(
                P::BasisSingle(vec![0; n as usize]),
                benchmarks::ghz_circuit(n)?,
                P::GhzFixed(n),
            )
        }
        "ghz-all" => {
            let n = need_n()?;
            Scenario::fixed(P::BasisAll(n), benchmarks::ghz_circuit(n)?, P::GhzAllFixed(n))
        }
        "bv" => {
            let n = need_n()?;
            Scenario::fixed(P::BvPre(n), benchmarks::bv_circuit(n)?, P::BvPost(n))
        }
        "mctoffoli" => {
            let n = need_n()?;
            let k = k.unwrap_or(0);
            Scenario::fixed(
                P::McToffoliPre(n, k),
                benchmarks::mctoffoli_circuit(n)?,
                P::McToffoliPost(n, k),
            )
        }
        "h2" => {
            let n = need_n()?;
            Scenario::fixed(P::BasisAll(n), benchmarks::h2_circuit(n)?, P::BasisAll(n))
        }
        "hxh" => {
            let n = need_n()?;
            Scenario::fixed(P::BasisAll(n), benchmarks::hxh_circuit(n)?, P::ParityPhase(n))
        }
        "ghz-param" => Scenario::param(P::ZerosParam, benchmarks::GHZ_PARAM_PQASM, P::GhzParam),
        "hamiltonian" => {
            Scenario::param(P::EvenParityParam, benchmarks::HAMILTONIAN_PQASM, P::EvenParityParam)
        }
        "single-excitation" => {
            Scenario::param(P::ZerosParam, benchmarks::SINGLE_EXCITATION_PQASM, P::ZerosParam)
        }
        other => Err(ScenarioError::UnknownFamily(other.to_string())),
    }
}
