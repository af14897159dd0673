//! Circuit front end: a deterministic OpenQASM 2.0 subset for fixed-width
//! circuits, a small line-based dialect for parameterized (arbitrary-width)
//! circuits, circuit inversion, and lowering onto the symbolic gate engines.
//!
//! Qubit `q[i]` in a source file (0-based) is qubit `i + 1` internally
//! (1-based, qubit 1 is the top tree level).

use amplitude::{angle_steps, consts, AlgebraicComplex, Mat2};
use gates::{GateKind, GateOp};
use lsta_core::Lsta;
use param_gates::AltCnotLayer;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QasmError {
    #[error("line {line}: expected `OPENQASM 2.0;` header")]
    MissingHeader { line: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, name: String },
    #[error("line {line}: angle `{text}` is not a multiple of pi/4")]
    UnsupportedAngle { line: usize, text: String },
    #[error("line {line}: measurements and classical operations are not supported")]
    ClassicalOp { line: usize },
    #[error("line {line}: qubit index {index} out of range for register of size {size}")]
    IndexOutOfRange { line: usize, index: u32, size: u32 },
    #[error("line {line}: exactly one qreg declaration is allowed")]
    DuplicateQreg { line: usize },
    #[error("no qreg declaration found")]
    MissingQreg,
    #[error("line {line}: unknown register `{name}`")]
    UnknownRegister { line: usize, name: String },
    #[error("line {line}: gate `{name}` takes {want} operand(s), got {got}")]
    OperandCount { line: usize, name: String, want: String, got: usize },
    #[error("line {line}: operands must be distinct qubits")]
    RepeatedOperand { line: usize },
    #[error("line {line}: unknown directive `{name}`")]
    UnknownDirective { line: usize, name: String },
    #[error("line {line}: phase divisor {n} does not divide 16")]
    BadPhaseDivisor { line: usize, n: u32 },
}

/// Errors raised while running a parsed circuit on an automaton.
#[derive(Debug, Error)]
pub enum ApplyError {
    #[error(transparent)]
    Gate(#[from] gates::GateError),
    #[error(transparent)]
    Param(#[from] param_gates::ParamGateError),
}

/// Single-qubit gate vocabulary of the fixed-width subset.  Rotation angles
/// are stored as quarter-turn step counts (`Rx(n)` rotates by `n*pi/4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx(i64),
    Rz(i64),
}

impl Gate {
    pub fn matrix(&self) -> Mat2 {
        match *self {
            Gate::X => consts::x(),
            Gate::Y => consts::y(),
            Gate::Z => consts::z(),
            Gate::H => consts::h(),
            Gate::S => consts::s(),
            Gate::Sdg => consts::sdg(),
            Gate::T => consts::t(),
            Gate::Tdg => consts::tdg(),
            Gate::Rx(n) => consts::rx(n),
            Gate::Rz(n) => consts::rz(n),
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::X | Gate::Y | Gate::Z | Gate::H => *self,
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::T => Gate::Tdg,
            Gate::Tdg => Gate::T,
            Gate::Rx(n) => Gate::Rx(-n),
            Gate::Rz(n) => Gate::Rz(-n),
        }
    }

    /// Picks the cheapest symbolic construction: the dedicated swap for X,
    /// the copy-and-scale construction for diagonal gates, and the general
    /// product construction otherwise.
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X => GateKind::PauliX,
            Gate::Z | Gate::S | Gate::Sdg | Gate::T | Gate::Tdg | Gate::Rz(_) => {
                let m = self.matrix();
                GateKind::Diagonal { r0: m.u1, r1: m.u4 }
            }
            Gate::Y | Gate::H | Gate::Rx(_) => GateKind::Unitary(self.matrix()),
        }
    }

    fn qasm_name(&self) -> &'static str {
        match self {
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
            Gate::H => "h",
            Gate::S => "s",
            Gate::Sdg => "sdg",
            Gate::T => "t",
            Gate::Tdg => "tdg",
            Gate::Rx(_) => "rx",
            Gate::Rz(_) => "rz",
        }
    }
}

/// One gate of a fixed-width circuit; `controls` and `target` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QasmGate {
    pub controls: Vec<u32>,
    pub target: u32,
    pub gate: Gate,
}

impl QasmGate {
    pub fn single(target: u32, gate: Gate) -> Self {
        QasmGate { controls: Vec::new(), target, gate }
    }

    pub fn controlled(controls: Vec<u32>, target: u32, gate: Gate) -> Self {
        QasmGate { controls, target, gate }
    }

    pub fn lower(&self) -> GateOp {
        GateOp { target: self.target, controls: self.controls.clone(), kind: self.gate.kind() }
    }

    pub fn inverse(&self) -> QasmGate {
        QasmGate { controls: self.controls.clone(), target: self.target, gate: self.gate.inverse() }
    }
}

/// A fixed-width circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCircuit {
    pub qubit_count: u32,
    pub gates: Vec<QasmGate>,
}

impl FixedCircuit {
    pub fn lower(&self) -> Vec<GateOp> {
        self.gates.iter().map(QasmGate::lower).collect()
    }

    pub fn apply(&self, a: &Lsta, reduce: bool) -> Result<Lsta, ApplyError> {
        Ok(gates::apply_circuit(a, &self.lower(), reduce)?)
    }
}

/// One directive of a parameterized circuit, acting on trees of every height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamGateOp {
    /// A named single-qubit gate at a fixed index from the top, applied by
    /// unfolding the first `index` levels.
    Top { gate: Gate, index: u32 },
    /// The staircase `CX(1->2); CX(2->3); ...` down the whole tree.
    CxStaircase,
    /// The staircase applied in reverse order (its inverse).
    CxStaircaseInv,
    /// X on every qubit.
    XAll,
    /// A layer of disjoint adjacent CNOTs.
    AltCnot(AltCnotLayer),
    /// `diag(1, w^{16m/n})` on every qubit, `w = e^{i pi/8}`.
    PhaseAll { n: u32, m: i64 },
    /// Global phase `w^{2n}` (a phase gate on the top qubit).
    PhaseFirst(i64),
    /// `Rx(n*pi/4)` on the top qubit.
    RxFirst(i64),
    /// `Rz(n*pi/4)` on the bottom qubit.
    RzLast(i64),
    /// `Rx(n*pi/4)` on the bottom qubit.
    RxLast(i64),
    /// Hadamard on the bottom qubit.
    HLast,
}

/// A parameterized circuit: a directive sequence with no fixed qubit count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamCircuit {
    pub ops: Vec<ParamGateOp>,
}

impl ParamCircuit {
    pub fn apply(&self, a: &Lsta, reduce: bool) -> Result<Lsta, ApplyError> {
        let mut cur = a.clone();
        for op in &self.ops {
            cur = apply_param_gate(&cur, op)?;
            if reduce {
                cur = cur.reduce();
            }
        }
        Ok(cur)
    }
}

/// Either flavour of circuit, as selected by the input format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Circuit {
    Fixed(FixedCircuit),
    Param(ParamCircuit),
}

pub fn apply_param_gate(a: &Lsta, op: &ParamGateOp) -> Result<Lsta, ApplyError> {
    Ok(match op {
        ParamGateOp::Top { gate, index } => {
            let unfolded = param_gates::unfold_top(a, *index)?;
            let applied = gates::apply_unitary(&unfolded, *index, &gate.matrix())?;
            param_gates::fold(&applied)?
        }
        ParamGateOp::CxStaircase => param_gates::cx_n(a)?,
        ParamGateOp::CxStaircaseInv => param_gates::cx_n_inv(a)?,
        ParamGateOp::XAll => param_gates::x_all(a)?,
        ParamGateOp::AltCnot(layer) => param_gates::alt_cnot(a, *layer)?,
        ParamGateOp::PhaseAll { n, m } => param_gates::phase_all(a, *n, *m)?,
        ParamGateOp::PhaseFirst(n) => {
            param_gates::scale_leaves(a, &AlgebraicComplex::omega(2 * n))?
        }
        ParamGateOp::RxFirst(n) => param_gates::apply_first(a, &consts::rx(*n))?,
        ParamGateOp::RzLast(n) => param_gates::apply_last(a, &consts::rz(*n))?,
        ParamGateOp::RxLast(n) => param_gates::apply_last(a, &consts::rx(*n))?,
        ParamGateOp::HLast => param_gates::apply_last(a, &consts::h())?,
    })
}

/// Reverses a circuit and inverts every gate, so that `c` followed by
/// `dagger(c)` is the identity.
pub fn dagger(c: &FixedCircuit) -> FixedCircuit {
    FixedCircuit {
        qubit_count: c.qubit_count,
        gates: c.gates.iter().rev().map(QasmGate::inverse).collect(),
    }
}

/// Concatenates two circuits of equal width.
pub fn compose(a: &FixedCircuit, b: &FixedCircuit) -> FixedCircuit {
    assert_eq!(a.qubit_count, b.qubit_count, "composed circuits must have equal width");
    let mut gates = a.gates.clone();
    gates.extend(b.gates.iter().cloned());
    FixedCircuit { qubit_count: a.qubit_count, gates }
}

struct Stmt {
    line: usize,
    text: String,
}

/// Splits source text into `;`-terminated statements, stripping `//` and
/// `#` comments and remembering source lines for error reporting.
fn statements(text: &str, comment: &str) -> Result<Vec<Stmt>, QasmError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find(comment) {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut parts = body.split(';');
        let last = parts.next_back().unwrap_or("");
        for part in parts {
            let t = part.trim();
            if !t.is_empty() {
                out.push(Stmt { line, text: t.to_string() });
            }
        }
        if !last.trim().is_empty() {
            return Err(QasmError::Syntax {
                line,
                msg: format!("missing `;` after `{}`", last.trim()),
            });
        }
    }
    Ok(out)
}

/// Parses `name` / `name(arg)` / operands into (name, arg, operands).
fn split_gate_stmt(stmt: &Stmt) -> Result<(String, Option<String>, Vec<String>), QasmError> {
    let text = stmt.text.trim();
    let name_end = text
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(text.len());
    let name = text[..name_end].to_string();
    if name.is_empty() {
        return Err(QasmError::Syntax { line: stmt.line, msg: format!("cannot parse `{text}`") });
    }
    let mut rest = text[name_end..].trim_start();
    let mut arg = None;
    if let Some(stripped) = rest.strip_prefix('(') {
        let close = stripped.find(')').ok_or_else(|| QasmError::Syntax {
            line: stmt.line,
            msg: "unclosed `(`".to_string(),
        })?;
        arg = Some(stripped[..close].trim().to_string());
        rest = stripped[close + 1..].trim_start();
    }
    let operands = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(|s| s.trim().to_string()).collect()
    };
    Ok((name, arg, operands))
}

/// Parses a literal angle of the form `[-] [k*] pi [/d]` (or `0`) into
/// quarter-turn steps.
fn parse_angle(text: &str, line: usize) -> Result<i64, QasmError> {
    let err = || QasmError::UnsupportedAngle { line, text: text.to_string() };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(0);
    }
    let (sign, body) = match compact.strip_prefix('-') {
        Some(b) => (-1i64, b),
        None => (1, compact.as_str()),
    };
    let pi = body.find("pi").ok_or_else(err)?;
    let num: i64 = match &body[..pi] {
        "" => 1,
        s => s.strip_suffix('*').ok_or_else(err)?.parse().map_err(|_| err())?,
    };
    let den: i64 = match &body[pi + 2..] {
        "" => 1,
        s => s.strip_prefix('/').ok_or_else(err)?.parse().map_err(|_| err())?,
    };
    angle_steps(sign * num, den).map_err(|_| err())
}

struct QregInfo {
    name: String,
    size: u32,
}

fn parse_operand(op: &str, qreg: &QregInfo, line: usize) -> Result<u32, QasmError> {
    let (name, rest) = match op.find('[') {
        Some(p) => (&op[..p], &op[p..]),
        None => (op, ""),
    };
    if name != qreg.name {
        return Err(QasmError::UnknownRegister { line, name: name.to_string() });
    }
    let idx: u32 = rest
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| QasmError::Syntax { line, msg: format!("cannot parse operand `{op}`") })?;
    if idx >= qreg.size {
        return Err(QasmError::IndexOutOfRange { line, index: idx, size: qreg.size });
    }
    Ok(idx + 1)
}

fn expect_operands(
    ops: &[u32],
    want: usize,
    name: &str,
    line: usize,
) -> Result<(), QasmError> {
    if ops.len() != want {
        return Err(QasmError::OperandCount {
            line,
            name: name.to_string(),
            want: want.to_string(),
            got: ops.len(),
        });
    }
    Ok(())
}

fn check_distinct(ops: &[u32], line: usize) -> Result<(), QasmError> {
    let mut seen = std::collections::BTreeSet::new();
    for &q in ops {
        if !seen.insert(q) {
            return Err(QasmError::RepeatedOperand { line });
        }
    }
    Ok(())
}

/// Parses the OpenQASM 2.0 subset: `OPENQASM 2.0;` header, optional
/// `include "qelib1.inc";`, a single `qreg`, and the gates
/// x, y, z, h, s, sdg, t, tdg, rx, rz, cx, cz, ccx, swap, cnx.
pub fn parse_qasm(text: &str) -> Result<FixedCircuit, QasmError> {
    let stmts = statements(text, "//")?;
    let mut it = stmts.iter();
    match it.next() {
        Some(s) if s.text.split_whitespace().collect::<Vec<_>>() == ["OPENQASM", "2.0"] => {}
        Some(s) => return Err(QasmError::MissingHeader { line: s.line }),
        None => return Err(QasmError::MissingHeader { line: 1 }),
    }

    let mut qreg: Option<QregInfo> = None;
    let mut gates = Vec::new();
    for stmt in it {
        let (name, arg, raw_ops) = split_gate_stmt(stmt)?;
        let line = stmt.line;
        match name.as_str() {
            "include" => {
                if raw_ops != ["\"qelib1.inc\""] {
                    return Err(QasmError::Syntax {
                        line,
                        msg: "only `include \"qelib1.inc\";` is supported".to_string(),
                    });
                }
                continue;
            }
            "qreg" => {
                if qreg.is_some() {
                    return Err(QasmError::DuplicateQreg { line });
                }
                if raw_ops.len() != 1 {
                    return Err(QasmError::Syntax {
                        line,
                        msg: "qreg takes one declaration".to_string(),
                    });
                }
                let decl = &raw_ops[0];
                let open = decl.find('[').ok_or_else(|| QasmError::Syntax {
                    line,
                    msg: format!("cannot parse qreg declaration `{decl}`"),
                })?;
                let size: u32 = decl[open..]
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .and_then(|s| s.trim().parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| QasmError::Syntax {
                        line,
                        msg: format!("cannot parse qreg declaration `{decl}`"),
                    })?;
                qreg = Some(QregInfo { name: decl[..open].to_string(), size });
                continue;
            }
            "creg" | "measure" | "barrier" | "reset" | "if" => {
                return Err(QasmError::ClassicalOp { line });
            }
            _ => {}
        }

        let reg = qreg.as_ref().ok_or(QasmError::MissingQreg)?;
        let ops: Vec<u32> = raw_ops
            .iter()
            .map(|o| parse_operand(o, reg, line))
            .collect::<Result<_, _>>()?;
        check_distinct(&ops, line)?;

        let plain = |g: Gate| -> Result<QasmGate, QasmError> {
            expect_operands(&ops, 1, &name, line)?;
            Ok(QasmGate::single(ops[0], g))
        };
        match name.as_str() {
            "x" => gates.push(plain(Gate::X)?),
            "y" => gates.push(plain(Gate::Y)?),
            "z" => gates.push(plain(Gate::Z)?),
            "h" => gates.push(plain(Gate::H)?),
            "s" => gates.push(plain(Gate::S)?),
            "sdg" => gates.push(plain(Gate::Sdg)?),
            "t" => gates.push(plain(Gate::T)?),
            "tdg" => gates.push(plain(Gate::Tdg)?),
            "rx" | "rz" => {
                expect_operands(&ops, 1, &name, line)?;
                let text = arg.ok_or_else(|| QasmError::Syntax {
                    line,
                    msg: format!("`{name}` needs an angle argument"),
                })?;
                let steps = parse_angle(&text, line)?;
                let g = if name == "rx" { Gate::Rx(steps) } else { Gate::Rz(steps) };
                gates.push(QasmGate::single(ops[0], g));
            }
            "cx" => {
                expect_operands(&ops, 2, &name, line)?;
                gates.push(QasmGate::controlled(vec![ops[0]], ops[1], Gate::X));
            }
            "cz" => {
                expect_operands(&ops, 2, &name, line)?;
                gates.push(QasmGate::controlled(vec![ops[0]], ops[1], Gate::Z));
            }
            "ccx" => {
                expect_operands(&ops, 3, &name, line)?;
                gates.push(QasmGate::controlled(vec![ops[0], ops[1]], ops[2], Gate::X));
            }
            "swap" => {
                expect_operands(&ops, 2, &name, line)?;
                let (a, b) = (ops[0], ops[1]);
                gates.push(QasmGate::controlled(vec![a], b, Gate::X));
                gates.push(QasmGate::controlled(vec![b], a, Gate::X));
                gates.push(QasmGate::controlled(vec![a], b, Gate::X));
            }
            "cnx" => {
                if ops.len() < 2 {
                    return Err(QasmError::OperandCount {
                        line,
                        name,
                        want: "at least 2".to_string(),
                        got: ops.len(),
                    });
                }
                let target = *ops.last().unwrap();
                gates.push(QasmGate::controlled(
                    ops[..ops.len() - 1].to_vec(),
                    target,
                    Gate::X,
                ));
            }
            other => {
                return Err(QasmError::UnsupportedGate { line, name: other.to_string() })
            }
        }
    }
    let reg = qreg.ok_or(QasmError::MissingQreg)?;
    Ok(FixedCircuit { qubit_count: reg.size, gates })
}

/// Formats quarter-turn steps as a literal angle (inverse of `parse_angle`).
fn format_angle(steps: i64) -> String {
    if steps == 0 {
        return "0".to_string();
    }
    let sign = if steps < 0 { "-" } else { "" };
    let g = gcd(steps.unsigned_abs(), 4);
    let num = steps.unsigned_abs() / g;
    let den = 4 / g;
    let head = if num == 1 { "pi".to_string() } else { format!("{num}*pi") };
    if den == 1 {
        format!("{sign}{head}")
    } else {
        format!("{sign}{head}/{den}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn serialize_qasm(c: &FixedCircuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", c.qubit_count));
    for g in &c.gates {
        let fmt = |q: u32| format!("q[{}]", q - 1);
        let line = match (g.controls.as_slice(), g.gate) {
            ([], Gate::Rx(n)) => format!("rx({}) {};", format_angle(n), fmt(g.target)),
            ([], Gate::Rz(n)) => format!("rz({}) {};", format_angle(n), fmt(g.target)),
            ([], gate) => format!("{} {};", gate.qasm_name(), fmt(g.target)),
            ([c], Gate::X) => format!("cx {},{};", fmt(*c), fmt(g.target)),
            ([c], Gate::Z) => format!("cz {},{};", fmt(*c), fmt(g.target)),
            ([c1, c2], Gate::X) => {
                format!("ccx {},{},{};", fmt(*c1), fmt(*c2), fmt(g.target))
            }
            (cs, Gate::X) => {
                let mut parts: Vec<String> = cs.iter().map(|&c| fmt(c)).collect();
                parts.push(fmt(g.target));
                format!("cnx {};", parts.join(","))
            }
            (_, gate) => panic!("no textual form for controlled {gate:?}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

const TOP_GATE_NAMES: [(&str, Gate); 8] = [
    ("H", Gate::H),
    ("X", Gate::X),
    ("Y", Gate::Y),
    ("Z", Gate::Z),
    ("S", Gate::S),
    ("SDG", Gate::Sdg),
    ("T", Gate::T),
    ("TDG", Gate::Tdg),
];

/// Parses the parameterized dialect: one directive per line, `#` comments.
pub fn parse_pqasm(text: &str) -> Result<ParamCircuit, QasmError> {
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, args)) = tokens.split_first() else { continue };
        let bad = || QasmError::Syntax {
            line,
            msg: format!("cannot parse arguments of `{}`", body.trim()),
        };
        let int = |s: &str| -> Result<i64, QasmError> { s.parse().map_err(|_| bad()) };
        let one_int = || -> Result<i64, QasmError> {
            match args {
                [a] => int(a),
                _ => Err(bad()),
            }
        };
        let no_args = |op: ParamGateOp| -> Result<ParamGateOp, QasmError> {
            if args.is_empty() {
                Ok(op)
            } else {
                Err(bad())
            }
        };
        let op = match head {
            "CXN" => no_args(ParamGateOp::CxStaircase)?,
            "CXNINV" => no_args(ParamGateOp::CxStaircaseInv)?,
            "XALL" => no_args(ParamGateOp::XAll)?,
            "ALTCNOT" => match args {
                ["odd"] => ParamGateOp::AltCnot(AltCnotLayer::ControlsOnOdd),
                ["even"] => ParamGateOp::AltCnot(AltCnotLayer::ControlsOnEven),
                _ => return Err(bad()),
            },
            "PHALL" => match args {
                [n, m] => {
                    let n: u32 = n.parse().map_err(|_| bad())?;
                    if n == 0 || 16 % n != 0 {
                        return Err(QasmError::BadPhaseDivisor { line, n });
                    }
                    ParamGateOp::PhaseAll { n, m: int(m)? }
                }
                _ => return Err(bad()),
            },
            "PH_FIRST" => ParamGateOp::PhaseFirst(one_int()?),
            "RX_FIRST" => ParamGateOp::RxFirst(one_int()?),
            "RZ_LAST" => ParamGateOp::RzLast(one_int()?),
            "RX_LAST" => ParamGateOp::RxLast(one_int()?),
            "H_LAST" => no_args(ParamGateOp::HLast)?,
            name => match TOP_GATE_NAMES.iter().find(|(n, _)| *n == name) {
                Some(&(_, gate)) => {
                    let index = one_int()?;
                    if index < 1 {
                        return Err(bad());
                    }
                    ParamGateOp::Top { gate, index: index as u32 }
                }
                None => {
                    return Err(QasmError::UnknownDirective { line, name: name.to_string() })
                }
            },
        };
        ops.push(op);
    }
    Ok(ParamCircuit { ops })
}

pub fn serialize_pqasm(c: &ParamCircuit) -> String {
    let mut out = String::new();
    for op in &c.ops {
        let line = match op {
            ParamGateOp::Top { gate, index } => {
                let name = TOP_GATE_NAMES
                    .iter()
                    .find(|(_, g)| g == gate)
                    .map(|(n, _)| *n)
                    .expect("top-index directives only carry named gates");
                format!("{name} {index}")
            }
            ParamGateOp::CxStaircase => "CXN".to_string(),
            ParamGateOp::CxStaircaseInv => "CXNINV".to_string(),
            ParamGateOp::XAll => "XALL".to_string(),
            ParamGateOp::AltCnot(AltCnotLayer::ControlsOnOdd) => "ALTCNOT odd".to_string(),
            ParamGateOp::AltCnot(AltCnotLayer::ControlsOnEven) => "ALTCNOT even".to_string(),
            ParamGateOp::PhaseAll { n, m } => format!("PHALL {n} {m}"),
            ParamGateOp::PhaseFirst(n) => format!("PH_FIRST {n}"),
            ParamGateOp::RxFirst(n) => format!("RX_FIRST {n}"),
            ParamGateOp::RzLast(n) => format!("RZ_LAST {n}"),
            ParamGateOp::RxLast(n) => format!("RX_LAST {n}"),
            ParamGateOp::HLast => "H_LAST".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
