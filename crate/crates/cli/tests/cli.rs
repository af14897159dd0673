//! Behavior of the `lstav` binary itself: exit codes, the key-value report
//! format, and the gen/inject round trips.  Library-level checks of the
//! equivalence pipeline live here too.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cli::{run_eqcheck, Verdict, VerifyOptions};
use qasm_frontend::{parse_qasm, FixedCircuit, Gate, QasmGate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lstav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lstav"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = lstav(&["gen", "bell", "-o", path_str(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let pre = dir.path().join("pre.lsta");
    let circuit = dir.path().join("circuit.qasm");
    let post = dir.path().join("post.lsta");
    let run = |circuit: &Path| {
        lstav(&[
            "verify",
            "--pre",
            path_str(&pre),
            "--circuit",
            path_str(circuit),
            "--post",
            path_str(&post),
        ])
    };

    let ok = run(&circuit);
    assert_eq!(ok.status.code(), Some(0));
    let report = String::from_utf8(ok.stdout).unwrap();
    assert!(report.contains("verdict: pass"));
    assert!(report.contains("gate_2_states: "));
    assert!(report.contains("inclusion_ms: "));

    // A broken circuit fails with a witness and exit code 1.
    let bad = dir.path().join("bad.qasm");
    let inject = lstav(&[
        "inject",
        "--scenario",
        "flip-cx",
        "--seed",
        "0",
        "--circuit",
        path_str(&circuit),
        "-o",
        path_str(&bad),
    ]);
    assert!(inject.status.success());
    let fail = run(&bad);
    assert_eq!(fail.status.code(), Some(1));
    let report = String::from_utf8(fail.stdout).unwrap();
    assert!(report.contains("verdict: fail"));
    assert!(report.contains("witness: x1("));

    // Unreadable inputs exit with 2 and a diagnostic on stderr.
    let err = run(Path::new("/nonexistent.qasm"));
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("error"));
}

#[test]
fn gen_emits_parseable_files_for_every_family() {
    for family in cli::SCENARIO_FAMILIES {
        let dir = tempfile::tempdir().unwrap();
        let mut args = vec!["gen", family, "-o", path_str(dir.path())];
        if matches!(*family, "ghz-sing" | "ghz-all" | "bv" | "mctoffoli" | "h2" | "hxh") {
            args.extend(["-n", "3"]);
        }
        let out = lstav(&args);
        assert!(out.status.success(), "{family}: {}", String::from_utf8_lossy(&out.stderr));
        for f in ["pre.lsta", "post.lsta"] {
            let text = fs::read_to_string(dir.path().join(f)).unwrap();
            spec_kit::parse_lsta(&text).unwrap_or_else(|e| panic!("{family}/{f}: {e}"));
        }
        let qasm = dir.path().join("circuit.qasm");
        if qasm.exists() {
            parse_qasm(&fs::read_to_string(qasm).unwrap()).unwrap();
        } else {
            let text = fs::read_to_string(dir.path().join("circuit.pqasm")).unwrap();
            qasm_frontend::parse_pqasm(&text).unwrap();
        }
    }
}

#[test]
fn inject_is_deterministic_across_invocations() {
    let dir = tempfile::tempdir().unwrap();
    lstav(&["gen", "ghz-all", "-n", "5", "-o", path_str(dir.path())]);
    let circuit = dir.path().join("circuit.qasm");
    let a = dir.path().join("a.qasm");
    let b = dir.path().join("b.qasm");
    for out in [&a, &b] {
        let r = lstav(&[
            "inject",
            "--scenario",
            "miss-gate",
            "--seed",
            "42",
            "--circuit",
            path_str(&circuit),
            "-o",
            path_str(out),
        ]);
        assert!(r.status.success());
    }
    assert_eq!(fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    let r = lstav(&["inject", "--scenario", "drop-table", "--seed", "1", "--circuit", path_str(&circuit), "-o", path_str(&b)]);
    assert_eq!(r.status.code(), Some(2));
}

fn circuit(n: u32, gates: Vec<QasmGate>) -> FixedCircuit {
    FixedCircuit { qubit_count: n, gates }
}

#[test]
fn eqcheck_identities_and_separations() {
    let opts = VerifyOptions::default();

    // H;H is the identity.
    let hh = circuit(1, vec![QasmGate::single(1, Gate::H), QasmGate::single(1, Gate::H)]);
    let id = circuit(1, vec![]);
    assert_eq!(run_eqcheck(&hh, &id, &opts).verdict, Verdict::Pass);

    // S and T differ, and the check separates them.
    let s = circuit(1, vec![QasmGate::single(1, Gate::S)]);
    let t = circuit(1, vec![QasmGate::single(1, Gate::T)]);
    let r = run_eqcheck(&s, &t, &opts);
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.witness.is_some());

    // Mismatched widths are an error, not a verdict.
    let wide = circuit(2, vec![QasmGate::single(1, Gate::X)]);
    let r = run_eqcheck(&s, &wide, &opts);
    assert_eq!(r.verdict, Verdict::Error);
    assert!(r.error.unwrap().contains("width"));
}

#[test]
fn eqcheck_self_equivalence_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3E0);
    let opts = VerifyOptions::default();
    for _ in 0..5 {
        let gates = (0..6)
            .map(|_| {
                let target = rng.gen_range(1..=3);
                match rng.gen_range(0..5) {
                    0 => QasmGate::single(target, Gate::H),
                    1 => QasmGate::single(target, Gate::S),
                    2 => QasmGate::single(target, Gate::T),
                    3 => QasmGate::single(target, Gate::Rx(rng.gen_range(-8..=8))),
                    _ => {
                        let mut control = rng.gen_range(1..=3);
                        while control == target {
                            control = rng.gen_range(1..=3);
                        }
                        QasmGate::controlled(vec![control], target, Gate::X)
                    }
                }
            })
            .collect();
        let c = circuit(3, gates);
        assert_eq!(run_eqcheck(&c, &c, &opts).verdict, Verdict::Pass, "{c:?}");
    }
}
