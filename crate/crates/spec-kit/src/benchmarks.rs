//! Benchmark circuit generators.  Fixed-width circuits are returned as
//! `FixedCircuit` values (serializable to the `.qasm` subset); parameterized
//! circuits are returned as directive-file text.

use qasm_frontend::{FixedCircuit, Gate, QasmGate};

use crate::{SpecKitError, invalid};

/// `H(1); CX(1->2)`: prepares a Bell state from `|00>`.
pub fn bell_circuit() -> FixedCircuit {
    ghz_circuit(2).expect("two qubits are valid")
}

/// `H(1); CX(1->2); ..; CX(n-1 -> n)`: the GHZ preparation staircase.
pub fn ghz_circuit(n: u32) -> Result<FixedCircuit, SpecKitError> {
    if n == 0 {
        return Err(invalid("ghz circuit", "qubit count must be positive"));
    }
    let mut gates = vec![QasmGate::single(1, Gate::H)];
    for i in 1..n {
        gates.push(QasmGate::controlled(vec![i], i + 1, Gate::X));
    }
    Ok(FixedCircuit { qubit_count: n, gates })
}

/// Bernstein-Vazirani with a parameterized oracle on `2n+1` qubits.
///
/// Qubit `2i-1` holds the secret bit `s_i`, qubit `2i` is the working qubit
/// `x_i`, and qubit `2n+1` the ancilla.  H on working and ancilla qubits, a
/// Toffoli `ccx(s_i, x_i, ancilla)` per secret bit (the oracle), then H
/// again, which copies each secret bit onto its working qubit.
pub fn bv_circuit(n: u32) -> Result<FixedCircuit, SpecKitError> {
    if n == 0 {
        return Err(invalid("bv circuit", "secret length must be positive"));
    }
    let ancilla = 2 * n + 1;
    let mut gates = Vec::new();
    for i in 1..=n {
        gates.push(QasmGate::single(2 * i, Gate::H));
    }
    gates.push(QasmGate::single(ancilla, Gate::H));
    for i in 1..=n {
        gates.push(QasmGate::controlled(vec![2 * i - 1, 2 * i], ancilla, Gate::X));
    }
    for i in 1..=n {
        gates.push(QasmGate::single(2 * i, Gate::H));
    }
    gates.push(QasmGate::single(ancilla, Gate::H));
    Ok(FixedCircuit { qubit_count: ancilla, gates })
}

/// Multi-control Toffoli with `n` controls decomposed into `2n-1` plain
/// Toffolis plus one cx, using `n-1` ancilla qubits interleaved with the
/// controls (`2n` qubits total: `c1 c2 0 c3 0 .. cn 0 t`).
pub fn mctoffoli_circuit(n: u32) -> Result<FixedCircuit, SpecKitError> {
    if n < 2 {
        return Err(invalid("mctoffoli circuit", "need at least two control qubits"));
    }
    let mut compute = vec![QasmGate::controlled(vec![1, 2], 3, Gate::X)];
    for i in 2..n {
        compute.push(QasmGate::controlled(vec![2 * i - 1, 2 * i], 2 * i + 1, Gate::X));
    }
    let mut gates = compute.clone();
    gates.push(QasmGate::controlled(vec![2 * n - 1], 2 * n, Gate::X));
    gates.extend(compute.into_iter().rev());
    Ok(FixedCircuit { qubit_count: 2 * n, gates })
}

/// Two layers of Hadamards (the identity circuit `H;H` per qubit).
pub fn h2_circuit(n: u32) -> Result<FixedCircuit, SpecKitError> {
    layered(n, &[Gate::H, Gate::H], "h2 circuit")
}

/// `H; X; H` per qubit, i.e. `Z` on every qubit.
pub fn hxh_circuit(n: u32) -> Result<FixedCircuit, SpecKitError> {
    layered(n, &[Gate::H, Gate::X, Gate::H], "hxh circuit")
}

fn layered(n: u32, layers: &[Gate], what: &str) -> Result<FixedCircuit, SpecKitError> {
    if n == 0 {
        return Err(invalid(what, "qubit count must be positive"));
    }
    let mut gates = Vec::new();
    for &g in layers {
        for q in 1..=n {
            gates.push(QasmGate::single(q, g));
        }
    }
    Ok(FixedCircuit { qubit_count: n, gates })
}

/// GHZ preparation for any number of qubits: H on the top qubit, then the
/// CNOT staircase.
pub const GHZ_PARAM_PQASM: &str = "H 1\nCXN\n";

/// Time evolution of the diagonal parity Hamiltonian at the instance where
/// it acts as the identity on even-parity basis states: a global phase of
/// `-i`, an `Rz(-pi)` on the parity qubit between the staircase and its
/// inverse.
pub const HAMILTONIAN_PQASM: &str = "PH_FIRST -2\nCXN\nRZ_LAST -4\nCXNINV\n";

/// A single-excitation evolution (theta = pi/2): two basis-rotated,
/// staircase-conjugated Rz rotations with opposite angles.  On the all-zero
/// states this circuit acts as the exact identity (the two rotations
/// cancel), so the zeros predicate serves as both pre- and post-condition.
pub const SINGLE_EXCITATION_PQASM: &str = "RX_FIRST 2\nH_LAST\nCXN\nRZ_LAST 2\nCXNINV\nRX_FIRST -2\nH_LAST\nH 1\nRX_LAST 2\nCXN\nRZ_LAST -2\nCXNINV\nH 1\nRX_LAST -2\n";
