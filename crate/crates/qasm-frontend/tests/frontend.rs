use amplitude::{consts, AlgebraicComplex};
use dense_oracle::{apply_controlled_dense, apply_single_dense, basis_vector, language_vectors};
use lsta_core::{InternalSymbol, Lsta, LstaBuilder};
use param_gates::AltCnotLayer;
use qasm_frontend::{
    dagger, parse_pqasm, parse_qasm, serialize_pqasm, serialize_qasm, Gate, ParamGateOp, QasmError,
    QasmGate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn amp(s: &str) -> AlgebraicComplex {
    AlgebraicComplex::parse(s).unwrap()
}

#[test]
fn bell_circuit_parses() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n";
    let c = parse_qasm(src).unwrap();
    assert_eq!(c.qubit_count, 2);
    assert_eq!(
        c.gates,
        vec![QasmGate::single(1, Gate::H), QasmGate::controlled(vec![1], 2, Gate::X)]
    );
}

#[test]
fn swap_and_multi_controlled_gates() {
    let src = "OPENQASM 2.0;\nqreg r[4];\nswap r[0],r[2];\nccx r[0],r[1],r[2];\ncz r[3],r[0];\ncnx r[0],r[1],r[2],r[3];\n";
    let c = parse_qasm(src).unwrap();
    assert_eq!(
        c.gates,
        vec![
            QasmGate::controlled(vec![1], 3, Gate::X),
            QasmGate::controlled(vec![3], 1, Gate::X),
            QasmGate::controlled(vec![1], 3, Gate::X),
            QasmGate::controlled(vec![1, 2], 3, Gate::X),
            QasmGate::controlled(vec![4], 1, Gate::Z),
            QasmGate::controlled(vec![1, 2, 3], 4, Gate::X),
        ]
    );
}

#[test]
fn rotation_angles_are_quarter_turn_steps() {
    let src = "OPENQASM 2.0;\nqreg q[1];\nrx(-pi/2) q[0];\nrz(3*pi/4) q[0];\nrz(0) q[0];\nrx(pi) q[0];\nrz(2*pi) q[0];\nrx(pi / 4) q[0];\n";
    let c = parse_qasm(src).unwrap();
    let angles: Vec<Gate> = c.gates.iter().map(|g| g.gate).collect();
    assert_eq!(
        angles,
        vec![Gate::Rx(-2), Gate::Rz(3), Gate::Rz(0), Gate::Rx(4), Gate::Rz(8), Gate::Rx(1)]
    );
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[1];\nrz(pi/3) q[0];\n"),
        Err(QasmError::UnsupportedAngle { line: 3, .. })
    ));
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert!(matches!(
        parse_qasm("qreg q[1];\n"),
        Err(QasmError::MissingHeader { line: 1 })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nmeasure q[0];\n"),
        Err(QasmError::ClassicalOp { line: 3 })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncu1 q[0],q[1];\n"),
        Err(QasmError::UnsupportedGate { line: 3, .. })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nx q[2];\n"),
        Err(QasmError::IndexOutOfRange { line: 3, index: 2, size: 2 })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n"),
        Err(QasmError::DuplicateQreg { line: 3 })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nx r[0];\n"),
        Err(QasmError::UnknownRegister { line: 3, .. })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0]\n"),
        Err(QasmError::Syntax { line: 3, .. })
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nh q[0];\nqreg q[2];\n"),
        Err(QasmError::MissingQreg)
    ));
    assert!(matches!(
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n"),
        Err(QasmError::RepeatedOperand { line: 3 })
    ));
}

#[test]
fn qasm_round_trip() {
    let src = "OPENQASM 2.0;\nqreg q[3];\nx q[0]; y q[1]; z q[2];\nh q[0];\ns q[1]; sdg q[1]; t q[2]; tdg q[2];\nrx(pi/2) q[0];\nrz(-3*pi/4) q[1];\ncx q[0],q[1];\ncz q[1],q[2];\nccx q[0],q[1],q[2];\ncnx q[0],q[1],q[2]; // comment\n";
    let c = parse_qasm(src).unwrap();
    let printed = serialize_qasm(&c);
    assert_eq!(parse_qasm(&printed).unwrap(), c);
    assert_eq!(serialize_qasm(&parse_qasm(&printed).unwrap()), printed);
}

fn dense_run(c: &qasm_frontend::FixedCircuit, v: &mut [AlgebraicComplex]) {
    let n = c.qubit_count;
    for op in c.lower() {
        if op.controls.is_empty() {
            apply_single_dense(v, n, op.target, &op.kind.matrix());
        } else {
            apply_controlled_dense(v, n, &op.controls, op.target, &op.kind.matrix());
        }
    }
}

#[test]
fn dagger_inverts_on_dense_states() {
    let src = "OPENQASM 2.0;\nqreg q[3];\nh q[0];\nt q[1];\ncx q[0],q[1];\nrx(pi/4) q[2];\ns q[2];\nccx q[0],q[2],q[1];\nrz(-pi/2) q[0];\nswap q[1],q[2];\n";
    let c = parse_qasm(src).unwrap();
    let inv = dagger(&c);
    assert_eq!(dagger(&inv), c);

    let mut rng = ChaCha8Rng::seed_from_u64(0xDA66);
    for _ in 0..20 {
        let bits: Vec<u8> = (0..3).map(|_| rng.gen_range(0..2)).collect();
        let start = basis_vector(&bits);
        let mut v = start.clone();
        dense_run(&c, &mut v);
        dense_run(&inv, &mut v);
        assert_eq!(v, start);
    }
}

#[test]
fn dagger_swaps_s_and_sdg() {
    let src = "OPENQASM 2.0;\nqreg q[1];\ns q[0];\n";
    let c = parse_qasm(src).unwrap();
    assert_eq!(dagger(&c).gates, vec![QasmGate::single(1, Gate::Sdg)]);
}

#[test]
fn pqasm_parses_directives() {
    let src = "# GHZ preparation\nH 1\nCXN\n";
    let c = parse_pqasm(src).unwrap();
    assert_eq!(
        c.ops,
        vec![ParamGateOp::Top { gate: Gate::H, index: 1 }, ParamGateOp::CxStaircase]
    );

    let src = "PH_FIRST -2\nCXN\nRZ_LAST -4\nCXNINV\n";
    let c = parse_pqasm(src).unwrap();
    assert_eq!(
        c.ops,
        vec![
            ParamGateOp::PhaseFirst(-2),
            ParamGateOp::CxStaircase,
            ParamGateOp::RzLast(-4),
            ParamGateOp::CxStaircaseInv,
        ]
    );

    let src = "XALL # flip\nALTCNOT odd\nALTCNOT even\nPHALL 4 -3\nRX_FIRST 2\nRX_LAST -2\nH_LAST\n\n";
    let c = parse_pqasm(src).unwrap();
    assert_eq!(
        c.ops,
        vec![
            ParamGateOp::XAll,
            ParamGateOp::AltCnot(AltCnotLayer::ControlsOnOdd),
            ParamGateOp::AltCnot(AltCnotLayer::ControlsOnEven),
            ParamGateOp::PhaseAll { n: 4, m: -3 },
            ParamGateOp::RxFirst(2),
            ParamGateOp::RxLast(-2),
            ParamGateOp::HLast,
        ]
    );

    assert!(matches!(
        parse_pqasm("CXN\nFROB 1\n"),
        Err(QasmError::UnknownDirective { line: 2, .. })
    ));
    assert!(matches!(
        parse_pqasm("PHALL 3 1\n"),
        Err(QasmError::BadPhaseDivisor { line: 1, n: 3 })
    ));
    assert!(parse_pqasm("# only comments\n\n").unwrap().ops.is_empty());
}

#[test]
fn pqasm_round_trip() {
    let src = "H 1\nCXN\nCXNINV\nXALL\nALTCNOT odd\nALTCNOT even\nPHALL 8 5\nPH_FIRST -2\nRX_FIRST 2\nRZ_LAST -4\nRX_LAST -2\nH_LAST\n";
    let c = parse_pqasm(src).unwrap();
    assert_eq!(serialize_pqasm(&c), src);
    assert_eq!(parse_pqasm(&serialize_pqasm(&c)).unwrap(), c);
}

/// `{|0^n> : n >= 1}` with leaf states kept separate from internal states.
fn zeros_param() -> Lsta {
    let mut b = LstaBuilder::new();
    let q = b.add_state("q");
    let z = b.add_state("z");
    let one = b.add_state("one");
    let zl = b.add_state("zl");
    let x = InternalSymbol::Any;
    b.add_internal(q, x, q, z, [1]);
    b.add_internal(q, x, one, zl, [2]);
    b.add_internal(z, x, z, z, [1]);
    b.add_internal(z, x, zl, zl, [2]);
    b.add_leaf(one, amp("1"), [1]);
    b.add_leaf(zl, amp("0"), [1]);
    b.set_root(q);
    b.finish().unwrap()
}

fn vector_set(a: &Lsta, n: u32) -> Vec<Vec<AlgebraicComplex>> {
    let mut v = language_vectors(a, n);
    v.sort();
    v.dedup();
    v
}

#[test]
fn param_ghz_circuit_prepares_ghz() {
    let c = parse_pqasm("H 1\nCXN\n").unwrap();
    let out = c.apply(&zeros_param(), true).unwrap();
    for n in 1..=5u32 {
        let mut want = vec![amp("0"); 1 << n];
        want[0] = amp("1/s2");
        *want.last_mut().unwrap() = amp("1/s2");
        assert_eq!(vector_set(&out, n), vec![want], "height {n}");
    }
}

#[test]
fn phase_and_rotation_directives_cancel_on_all_zeros() {
    // diag(e^{-i pi/4}) twist: a global phase, the staircase, an Rz on the
    // parity qubit, and the inverse staircase act as the identity on |0^n>.
    let c = parse_pqasm("PH_FIRST -2\nCXN\nRZ_LAST -4\nCXNINV\n").unwrap();
    let pre = zeros_param();
    let out = c.apply(&pre, true).unwrap();
    for n in 1..=5u32 {
        assert_eq!(vector_set(&out, n), vector_set(&pre, n), "height {n}");
    }
}

#[test]
fn top_index_directive_matches_dense() {
    let c = parse_pqasm("H 1\n").unwrap();
    let pre = zeros_param();
    let out = c.apply(&pre, true).unwrap();
    for n in 1..=4u32 {
        let want: Vec<_> = language_vectors(&pre, n)
            .into_iter()
            .map(|mut v| {
                apply_single_dense(&mut v, n, 1, &consts::h());
                v
            })
            .collect();
        assert_eq!(vector_set(&out, n), want, "height {n}");
    }
}
