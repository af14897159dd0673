//! End-to-end acceptance suite.  Each test prints exactly one
//! `ACCEPTANCE <k> (<name>): PASS|FAIL` line (visible with `--nocapture`)
//! and enforces the pinned wall-clock limits and tolerances.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use amplitude::{consts, float_dist, AlgebraicComplex, Mat2};
use cli::{build_scenario, run_eqcheck, run_verification, Scenario, Verdict, VerifyOptions};
use dense_oracle::{
    apply_controlled_dense, apply_single_dense, language_vectors, random_leveled_lsta,
    state_vector, RandomLstaConfig,
};
use gates::{apply_controlled, apply_diag, apply_gate, apply_unitary, apply_x, GateKind};
use lsta_core::{includes, InclusionOutcome, Lsta, DEFAULT_INCLUSION_BUDGET};
use qasm_frontend::{Circuit, FixedCircuit, Gate, QasmGate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spec_kit::{build_predicate, fbtree, inject_bug, BugScenario, PredicateFamily};

fn criterion(k: u32, name: &str, f: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(f);
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {k} ({name}): {verdict}");
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

fn within(limit_secs: f64, took: Duration, what: &str) {
    assert!(
        took.as_secs_f64() <= limit_secs,
        "{what} took {took:?}, limit {limit_secs}s"
    );
}

fn apply_circuit(c: &Circuit, pre: &Lsta) -> Lsta {
    match c {
        Circuit::Fixed(f) => f.apply(pre, true).expect("circuit applies"),
        Circuit::Param(p) => p.apply(pre, true).expect("circuit applies"),
    }
}

/// Runs the verifier, asserts a pass, and returns the wall time.
fn assert_pass(s: &Scenario, what: &str) -> Duration {
    let start = Instant::now();
    let r = run_verification(&s.pre, &s.circuit, &s.post, &VerifyOptions::default());
    let took = start.elapsed();
    assert_eq!(r.verdict, Verdict::Pass, "{what}: expected pass, got {:?} {:?}", r.verdict, r.error);
    took
}

/// Runs the verifier, asserts a fail, and independently re-verifies the
/// witness against a freshly computed output automaton.
fn assert_fail(s: &Scenario, what: &str) -> Duration {
    let start = Instant::now();
    let r = run_verification(&s.pre, &s.circuit, &s.post, &VerifyOptions::default());
    let took = start.elapsed();
    assert_eq!(r.verdict, Verdict::Fail, "{what}: expected fail, got {:?} {:?}", r.verdict, r.error);
    let w = r.witness.expect("fail verdict carries a witness");
    let image = apply_circuit(&s.circuit, &s.pre);
    assert!(image.accepts(&w), "{what}: witness rejected by the output automaton");
    assert!(!s.post.accepts(&w), "{what}: witness accepted by the post-condition");
    took
}

/// The same scenario with a bug injected into its (fixed) circuit.
fn with_bug(s: &Scenario, bug: BugScenario, seed: u64) -> Scenario {
    let Circuit::Fixed(c) = &s.circuit else {
        panic!("bug injection applies to fixed circuits")
    };
    Scenario {
        pre: s.pre.clone(),
        circuit: Circuit::Fixed(inject_bug(c, bug, seed).expect("injectable")),
        post: s.post.clone(),
    }
}

#[test]
fn acceptance_01_bell_round_trip() {
    criterion(1, "bell end-to-end with language equality", || {
        let start = Instant::now();
        let s = build_scenario("bell", None, None).unwrap();
        assert_pass(&s, "bell");
        // Reverse inclusion: the Bell predicate is exactly the image.
        let image = apply_circuit(&s.circuit, &s.pre);
        let rev = includes(&s.post, &image, DEFAULT_INCLUSION_BUDGET).unwrap();
        assert!(matches!(rev, InclusionOutcome::Included), "bell: post not included in image");
        within(0.1, start.elapsed(), "bell round trip");
    });
}

#[test]
fn acceptance_02_ghz_fixed_n() {
    criterion(2, "GHZ-Sing/GHZ-All with bug scenarios, n up to 64", || {
        for n in [8u32, 16, 32, 64] {
            for family in ["ghz-sing", "ghz-all"] {
                let s = build_scenario(family, Some(n), None).unwrap();
                let took = assert_pass(&s, &format!("{family} n={n}"));
                within(10.0, took, &format!("{family} n={n} correct"));
                for bug in [BugScenario::MissGate, BugScenario::FlipCx] {
                    let bad = with_bug(&s, bug, 7);
                    let took = assert_fail(&bad, &format!("{family} n={n} {bug:?}"));
                    within(10.0, took, &format!("{family} n={n} {bug:?}"));
                }
            }
        }
    });
}

#[test]
fn acceptance_03_bernstein_vazirani() {
    criterion(3, "Bernstein-Vazirani on 2n+1 qubits, n up to 9", || {
        for n in 3u32..=9 {
            let s = build_scenario("bv", Some(n), None).unwrap();
            let took = assert_pass(&s, &format!("bv n={n}"));
            within(30.0, took, &format!("bv n={n} correct"));
            let bad = with_bug(&s, BugScenario::MissGate, 3);
            let took = assert_fail(&bad, &format!("bv n={n} miss-gate"));
            within(30.0, took, &format!("bv n={n} miss-gate"));
        }
    });
}

#[test]
fn acceptance_04_multi_control_toffoli() {
    criterion(4, "multi-control Toffoli decomposition, both target bits", || {
        for n in [4u32, 8] {
            for k in [0u8, 1] {
                let s = build_scenario("mctoffoli", Some(n), Some(k)).unwrap();
                let took = assert_pass(&s, &format!("mctoffoli n={n} k={k}"));
                within(5.0, took, &format!("mctoffoli n={n} k={k} correct"));
                let bad = with_bug(&s, BugScenario::FlipCx, 11);
                let took = assert_fail(&bad, &format!("mctoffoli n={n} k={k} flip-cx"));
                within(5.0, took, &format!("mctoffoli n={n} k={k} flip-cx"));
            }
        }
    });
}

#[test]
fn acceptance_05_h2_and_hxh_layers() {
    criterion(5, "H;H and H;X;H layer circuits on all basis states", || {
        for n in [8u32, 12] {
            for family in ["h2", "hxh"] {
                let s = build_scenario(family, Some(n), None).unwrap();
                let took = assert_pass(&s, &format!("{family} n={n}"));
                within(10.0, took, &format!("{family} n={n} correct"));
                let bad = with_bug(&s, BugScenario::MissGate, 5);
                let took = assert_fail(&bad, &format!("{family} n={n} miss-gate"));
                within(10.0, took, &format!("{family} n={n} miss-gate"));
            }
        }
    });
}

#[test]
fn acceptance_06_parameterized_suite() {
    criterion(6, "parameterized GHZ, parity Hamiltonian, single excitation", || {
        for family in ["ghz-param", "hamiltonian", "single-excitation"] {
            let s = build_scenario(family, None, None).unwrap();
            let took = assert_pass(&s, family);
            within(120.0, took, family);
        }
    });
}

#[test]
fn acceptance_07_gate_size_bounds() {
    criterion(7, "pre-reduction size bounds on 200 random automata", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x517E);
        for _ in 0..200 {
            let cfg = RandomLstaConfig { height: rng.gen_range(2..=4), ..Default::default() };
            let a = random_leveled_lsta(&mut rng, &cfg).trim();
            let size = a.num_states();
            let t = rng.gen_range(1..=cfg.height);

            let x = apply_x(&a, t).unwrap();
            assert_eq!(x.num_states(), size, "X must keep the state count");

            let d = apply_diag(&a, t, &AlgebraicComplex::one(), &AlgebraicComplex::i()).unwrap();
            assert_eq!(d.num_states(), 2 * size, "diagonal gate must exactly double");

            let u = apply_unitary(&a, t, &consts::h()).unwrap();
            assert!(
                u.num_states() <= size + 2 * size * size,
                "unitary exceeded |A| + 2|A|^2: {} vs {}",
                u.num_states(),
                size + 2 * size * size
            );

            if cfg.height >= 2 {
                let c = if t == 1 { 2 } else { t - 1 };
                let cu = apply_controlled(&a, &[c], t, &GateKind::Unitary(consts::h())).unwrap();
                assert!(
                    cu.num_states() <= size + u.num_states(),
                    "controlled gate exceeded |A| + |U_t(A)|"
                );
            }

            let stair = param_gates::cx_n(&a).unwrap();
            assert_eq!(stair.num_states(), 2 * size, "CX staircase must exactly double");
        }
    });
}

fn random_gate(rng: &mut ChaCha8Rng, n: u32) -> QasmGate {
    let target = rng.gen_range(1..=n);
    match rng.gen_range(0..4) {
        0 => {
            let g = [
                Gate::X,
                Gate::Y,
                Gate::Z,
                Gate::H,
                Gate::S,
                Gate::Sdg,
                Gate::T,
                Gate::Tdg,
            ][rng.gen_range(0..8)];
            QasmGate::single(target, g)
        }
        1 => QasmGate::single(target, Gate::Rz(rng.gen_range(-8..=8))),
        2 => QasmGate::single(target, Gate::Rx(rng.gen_range(-8..=8))),
        _ if n >= 2 => {
            let mut control = rng.gen_range(1..=n);
            while control == target {
                control = rng.gen_range(1..=n);
            }
            let g = if rng.gen_bool(0.5) { Gate::X } else { Gate::Z };
            QasmGate::controlled(vec![control], target, g)
        }
        _ => QasmGate::single(target, Gate::H),
    }
}

fn sorted_vectors(mut v: Vec<Vec<AlgebraicComplex>>) -> Vec<Vec<AlgebraicComplex>> {
    v.sort();
    v.dedup();
    v
}

#[test]
fn acceptance_08_gate_application_vs_dense_oracle() {
    criterion(8, "500 random gates agree with the dense-vector oracle", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0A8);
        for case in 0..500 {
            let n = rng.gen_range(1..=3);
            let cfg = RandomLstaConfig { height: n, ..Default::default() };
            let a = random_leveled_lsta(&mut rng, &cfg);
            let gate = random_gate(&mut rng, n);
            let op = gate.lower();

            let image = apply_gate(&a, &op, true).unwrap();
            let got = sorted_vectors(language_vectors(&image, n));

            let want = sorted_vectors(
                language_vectors(&a, n)
                    .into_iter()
                    .map(|mut v| {
                        if op.controls.is_empty() {
                            apply_single_dense(&mut v, n, op.target, &op.kind.matrix());
                        } else {
                            apply_controlled_dense(&mut v, n, &op.controls, op.target, &op.kind.matrix());
                        }
                        v
                    })
                    .collect(),
            );
            assert_eq!(got, want, "case {case}: gate {gate:?} on {n} qubits");
        }
    });
}

#[test]
fn acceptance_09_inclusion_vs_enumeration_oracle() {
    criterion(9, "500 random inclusion checks agree with enumeration", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1C9);
        for case in 0..500 {
            let n = rng.gen_range(1..=3);
            let cfg = RandomLstaConfig { height: n, ..Default::default() };
            let a = random_leveled_lsta(&mut rng, &cfg);
            let b = random_leveled_lsta(&mut rng, &cfg);

            let va = sorted_vectors(language_vectors(&a, n));
            let vb = sorted_vectors(language_vectors(&b, n));
            let subset = va.iter().all(|v| vb.binary_search(v).is_ok());

            match includes(&a, &b, DEFAULT_INCLUSION_BUDGET).unwrap() {
                InclusionOutcome::Included => {
                    assert!(subset, "case {case}: included but enumeration disagrees");
                }
                InclusionOutcome::NotIncluded(w) => {
                    assert!(!subset, "case {case}: not included but enumeration disagrees");
                    assert!(a.accepts(&w), "case {case}: witness rejected by the left side");
                    assert!(!b.accepts(&w), "case {case}: witness accepted by the right side");
                    let wv = state_vector(&w).expect("witness is perfect");
                    assert!(vb.binary_search(&wv).is_err(), "case {case}: witness vector in right language");
                }
            }
        }
    });
}

#[test]
fn acceptance_10_expressiveness_fixtures() {
    criterion(10, "full-binary-tree fixture and GHZ-All transition counts", || {
        let fb = fbtree();
        assert!(fb.trees_of_height(0).is_empty());
        for h in 1..=5u32 {
            let trees = fb.trees_of_height(h);
            assert_eq!(trees.len(), 1, "height {h}: expected a single tree");
            let t = &trees[0];
            assert!(t.is_perfect(), "height {h}: tree must be perfect");
            assert_eq!(t.height(), h);
            assert!(
                t.leaves().iter().all(|v| *v == AlgebraicComplex::one()),
                "height {h}: all leaves must be 1"
            );
        }
        for n in 2..=10u32 {
            let a = build_predicate(&PredicateFamily::GhzAllFixed(n)).unwrap();
            assert_eq!(a.num_transitions(), (5 * n - 1) as usize, "GHZ-All n={n}");
        }
    });
}

fn random_clifford_t(n: u32, gate_count: usize, seed: u64) -> FixedCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gates = Vec::with_capacity(gate_count);
    for _ in 0..gate_count {
        let target = rng.gen_range(1..=n);
        match rng.gen_range(0..4) {
            0 => gates.push(QasmGate::single(target, Gate::H)),
            1 => gates.push(QasmGate::single(target, Gate::S)),
            2 => gates.push(QasmGate::single(target, Gate::T)),
            _ => {
                let mut control = rng.gen_range(1..=n);
                while control == target {
                    control = rng.gen_range(1..=n);
                }
                gates.push(QasmGate::controlled(vec![control], target, Gate::X));
            }
        }
    }
    FixedCircuit { qubit_count: n, gates }
}

#[test]
fn acceptance_11_equivalence_checking() {
    criterion(11, "6-qubit Clifford+T equivalence and near-miss", || {
        let c = random_clifford_t(6, 24, 0xEC);
        let opts = VerifyOptions::default();

        let start = Instant::now();
        let same = run_eqcheck(&c, &c, &opts);
        assert_eq!(same.verdict, Verdict::Pass, "self-equivalence: {:?}", same.error);
        within(30.0, start.elapsed(), "self-equivalence");

        let flipped = inject_bug(&c, BugScenario::FlipCx, 2).unwrap();
        assert_ne!(flipped, c);
        let start = Instant::now();
        let diff = run_eqcheck(&c, &flipped, &opts);
        assert_eq!(diff.verdict, Verdict::Fail, "flipped variant: {:?}", diff.error);
        assert!(diff.witness.is_some());
        within(30.0, start.elapsed(), "flipped-variant eqcheck");
    });
}

fn random_amplitude(rng: &mut ChaCha8Rng) -> AlgebraicComplex {
    let mut c = [0i64; 8];
    for x in &mut c {
        *x = rng.gen_range(-50..=50);
    }
    AlgebraicComplex::from_parts(c, rng.gen_range(0..6))
}

fn cplx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

#[test]
fn acceptance_12_amplitude_ring_and_floats() {
    criterion(12, "ring laws, gate unitarity, float homomorphism at 1e-9", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA12);
        for _ in 0..10_000 {
            let a = random_amplitude(&mut rng);
            let b = random_amplitude(&mut rng);
            let c = random_amplitude(&mut rng);

            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&AlgebraicComplex::zero()), a);
            assert_eq!(a.mul(&AlgebraicComplex::one()), a);
            assert_eq!(a.add(&a.neg()), AlgebraicComplex::zero());
            assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));

            let (fa, fb) = (a.to_float(), b.to_float());
            let sum = a.add(&b).to_float();
            assert!(float_dist(sum, (fa.0 + fb.0, fa.1 + fb.1)) <= 1e-9);
            let prod = a.mul(&b).to_float();
            assert!(float_dist(prod, cplx_mul(fa, fb)) <= 1e-9);
        }

        let named: Vec<Mat2> = amplitude::consts::NAMES
            .iter()
            .map(|name| consts::by_name(name).expect("named gate"))
            .collect();
        for m in named {
            assert!(m.is_unitary());
        }
        for n in -8i64..=8 {
            assert!(consts::rz(n).is_unitary(), "rz({n})");
            assert!(consts::rx(n).is_unitary(), "rx({n})");
            assert!(consts::ph(n).is_unitary(), "ph({n})");
        }
    });
}
