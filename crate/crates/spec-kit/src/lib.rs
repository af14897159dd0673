//! Ready-made predicate automata (pre/post-conditions over quantum states),
//! the `.lsta` text format, benchmark circuit generators, and seeded bug
//! injection for negative test scenarios.

use amplitude::AlgebraicComplex;
use lsta_core::{InternalSymbol, Lsta, LstaBuilder, StateId};
use qasm_frontend::{FixedCircuit, Gate, QasmGate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub mod benchmarks;

#[derive(Debug, Error)]
pub enum SpecKitError {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("automaton failed validation: {0}")]
    Invalid(#[from] lsta_core::LstaError),
    #[error("bad amplitude literal: {0}")]
    Amplitude(#[from] amplitude::AmplitudeError),
    #[error("flip-cx requires at least one two-qubit cx gate")]
    NoCxGate,
}

/// The predicate languages used as pre- and post-conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateFamily {
    /// All `2^n` computational basis states of `n` qubits.
    BasisAll(u32),
    /// The single basis state given by the bit string.
    BasisSingle(Vec<u8>),
    /// The four Bell states.
    Bell,
    /// The single state `(|0^n> + |1^n>)/sqrt(2)`.
    GhzFixed(u32),
    /// `(|0 b_2..b_n> +- |1 ~b_2..~b_n>)/sqrt(2)` over all `b`, both signs.
    GhzAllFixed(u32),
    /// `{|0^n> : n >= 1}`, any number of qubits.
    ZerosParam,
    /// `{(|0^n> + |1^n>)/sqrt(2) : n >= 1}`, any number of qubits.
    GhzParam,
    /// `{|s_1 0 s_2 0 .. s_n 0 1>}` on `2n+1` qubits.
    BvPre(u32),
    /// `{|s_1 s_1 s_2 s_2 .. s_n s_n 1>}` on `2n+1` qubits.
    BvPost(u32),
    /// `{|c_1 c_2 0 c_3 0 .. c_n 0 k>}` on `2n` qubits.
    McToffoliPre(u32, u8),
    /// Same but the target is `(c_1 & .. & c_n) xor k`.
    McToffoliPost(u32, u8),
    /// The `2^n` monotone 0..01..1 vectors (each with a distinct norm),
    /// used as both pre- and post-condition for equivalence checking.
    EqVectors(u32),
    /// `{(-1)^popcount(x) |x>}` over all basis states `x` of `n` qubits.
    ParityPhase(u32),
    /// `{|x> : popcount(x) even}`, any number of qubits.
    EvenParityParam,
}

pub(crate) fn invalid(family: &str, reason: &str) -> SpecKitError {
    SpecKitError::InvalidParameter { family: family.to_string(), reason: reason.to_string() }
}

fn one() -> AlgebraicComplex {
    AlgebraicComplex::one()
}

fn zero() -> AlgebraicComplex {
    AlgebraicComplex::zero()
}

fn inv_sqrt2() -> AlgebraicComplex {
    AlgebraicComplex::inv_sqrt2()
}

fn lvl(i: u32) -> InternalSymbol {
    InternalSymbol::Level(i)
}

/// A per-level chain of "all leaves below here are 0" states, covering
/// levels `from..=n` plus the 0-leaf.  `state(i)` is the level-`i` state.
struct ZeroChain {
    states: Vec<StateId>,
    from: u32,
    leaf: StateId,
}

impl ZeroChain {
    fn new(b: &mut LstaBuilder, from: u32, n: u32, choices: impl IntoIterator<Item = u32> + Clone) -> Self {
        let leaf = b.add_state("zero_leaf");
        b.add_leaf(leaf, zero(), choices.clone());
        let states: Vec<StateId> =
            (from..=n).map(|i| b.add_state(format!("zero_{i}"))).collect();
        let chain = ZeroChain { states, from, leaf };
        for i in from..=n {
            let below = chain.child(i, n);
            b.add_internal(chain.state(i), lvl(i), below, below, choices.clone());
        }
        chain
    }

    fn state(&self, i: u32) -> StateId {
        self.states[(i - self.from) as usize]
    }

    /// The state one level below level `i` (the 0-leaf below level `n`).
    fn child(&self, i: u32, n: u32) -> StateId {
        if i == n {
            self.leaf
        } else {
            self.state(i + 1)
        }
    }
}

fn basis_all(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("BasisAll", "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let path: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("q{i}"))).collect();
    let one_leaf = b.add_state("one_leaf");
    b.add_leaf(one_leaf, one(), [1]);
    let zeros = ZeroChain::new(&mut b, 2, n, [1, 2]);
    for i in 1..=n {
        let on = if i == n { one_leaf } else { path[i as usize] };
        let off = zeros.child(i, n);
        b.add_internal(path[(i - 1) as usize], lvl(i), on, off, [1]);
        b.add_internal(path[(i - 1) as usize], lvl(i), off, on, [2]);
    }
    b.set_root(path[0]);
    Ok(b.finish()?)
}

fn basis_single(bits: &[u8]) -> Result<Lsta, SpecKitError> {
    let n = bits.len() as u32;
    if n == 0 {
        return Err(invalid("BasisSingle", "bit string must be non-empty"));
    }
    if bits.iter().any(|&x| x > 1) {
        return Err(invalid("BasisSingle", "bits must be 0 or 1"));
    }
    let mut b = LstaBuilder::new();
    let path: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("q{i}"))).collect();
    let one_leaf = b.add_state("one_leaf");
    b.add_leaf(one_leaf, one(), [1]);
    let zeros = ZeroChain::new(&mut b, 2, n, [1]);
    for i in 1..=n {
        let on = if i == n { one_leaf } else { path[i as usize] };
        let off = zeros.child(i, n);
        let (l, r) = if bits[(i - 1) as usize] == 0 { (on, off) } else { (off, on) };
        b.add_internal(path[(i - 1) as usize], lvl(i), l, r, [1]);
    }
    b.set_root(path[0]);
    Ok(b.finish()?)
}

fn ghz_fixed(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("GhzFixed", "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let root = b.add_state("root");
    let h_leaf = b.add_state("h_leaf");
    b.add_leaf(h_leaf, inv_sqrt2(), [1]);
    if n == 1 {
        b.add_internal(root, lvl(1), h_leaf, h_leaf, [1]);
        b.set_root(root);
        return Ok(b.finish()?);
    }
    let zeros = ZeroChain::new(&mut b, 3, n, [1]);
    let plus: Vec<StateId> = (2..=n).map(|i| b.add_state(format!("p{i}"))).collect();
    let minus: Vec<StateId> = (2..=n).map(|i| b.add_state(format!("m{i}"))).collect();
    b.add_internal(root, lvl(1), plus[0], minus[0], [1]);
    for i in 2..=n {
        let (pn, mn) = if i == n {
            (h_leaf, h_leaf)
        } else {
            (plus[(i - 1) as usize], minus[(i - 1) as usize])
        };
        let off = zeros.child(i, n);
        b.add_internal(plus[(i - 2) as usize], lvl(i), pn, off, [1]);
        b.add_internal(minus[(i - 2) as usize], lvl(i), off, mn, [1]);
    }
    b.set_root(root);
    Ok(b.finish()?)
}

/// The GHZ-circuit image of all basis states: two mirrored paths of
/// distinguished leaves, synchronized by the level choice, with the sign
/// picked by the choice at the leaf level.
fn ghz_all_fixed(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("GhzAllFixed", "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let root = b.add_state("root");
    let p_leaf = b.add_state("p_leaf");
    let pm_leaf = b.add_state("pm_leaf");
    b.add_leaf(p_leaf, inv_sqrt2(), [1, 2]);
    b.add_leaf(pm_leaf, inv_sqrt2(), [1]);
    b.add_leaf(pm_leaf, inv_sqrt2().neg(), [2]);
    if n == 1 {
        b.add_internal(root, lvl(1), p_leaf, pm_leaf, [1, 2]);
        b.set_root(root);
        return Ok(b.finish()?);
    }
    let zeros = ZeroChain::new(&mut b, 3, n, [1, 2]);
    let plus: Vec<StateId> = (2..=n).map(|i| b.add_state(format!("p{i}"))).collect();
    let mirror: Vec<StateId> = (2..=n).map(|i| b.add_state(format!("pm{i}"))).collect();
    b.add_internal(root, lvl(1), plus[0], mirror[0], [1, 2]);
    for i in 2..=n {
        let (pn, mn) = if i == n {
            (p_leaf, pm_leaf)
        } else {
            (plus[(i - 1) as usize], mirror[(i - 1) as usize])
        };
        let off = zeros.child(i, n);
        // The 0-subtree path goes left on choice 1; the 1-subtree path goes
        // left on choice 2, so the two paths mirror each other.
        b.add_internal(plus[(i - 2) as usize], lvl(i), pn, off, [1]);
        b.add_internal(plus[(i - 2) as usize], lvl(i), off, pn, [2]);
        b.add_internal(mirror[(i - 2) as usize], lvl(i), mn, off, [2]);
        b.add_internal(mirror[(i - 2) as usize], lvl(i), off, mn, [1]);
    }
    b.set_root(root);
    Ok(b.finish()?)
}

fn zeros_param() -> Lsta {
    let mut b = LstaBuilder::new();
    let q = b.add_state("q");
    let z = b.add_state("z");
    let one_leaf = b.add_state("one_leaf");
    let zero_leaf = b.add_state("zero_leaf");
    let x = InternalSymbol::Any;
    b.add_internal(q, x, q, z, [1]);
    b.add_internal(q, x, one_leaf, zero_leaf, [2]);
    b.add_internal(z, x, z, z, [1]);
    b.add_internal(z, x, zero_leaf, zero_leaf, [2]);
    b.add_leaf(one_leaf, one(), [1]);
    b.add_leaf(zero_leaf, zero(), [1]);
    b.set_root(q);
    b.finish().expect("fixed predicate construction")
}

fn ghz_param() -> Lsta {
    let mut b = LstaBuilder::new();
    let root = b.add_state("root");
    let p = b.add_state("p");
    let m = b.add_state("m");
    let z = b.add_state("z");
    let h_leaf = b.add_state("h_leaf");
    let zero_leaf = b.add_state("zero_leaf");
    let x = InternalSymbol::Any;
    b.add_internal(root, x, p, m, [1]);
    b.add_internal(root, x, h_leaf, h_leaf, [2]);
    b.add_internal(p, x, p, z, [1]);
    b.add_internal(p, x, h_leaf, zero_leaf, [2]);
    b.add_internal(m, x, z, m, [1]);
    b.add_internal(m, x, zero_leaf, h_leaf, [2]);
    b.add_internal(z, x, z, z, [1]);
    b.add_internal(z, x, zero_leaf, zero_leaf, [2]);
    b.add_leaf(h_leaf, inv_sqrt2(), [1]);
    b.add_leaf(zero_leaf, zero(), [1]);
    b.set_root(root);
    b.finish().expect("fixed predicate construction")
}

/// Basis-set automaton over `total` levels where each level is either a
/// free bit, a forced bit, or a repeat of the previous free bit.
enum LevelRole {
    Free,
    Forced(u8),
    /// Repeats the bit chosen at the previous level.
    RepeatPrevious,
}

fn interleaved_basis(name: &str, roles: &[LevelRole]) -> Result<Lsta, SpecKitError> {
    let n = roles.len() as u32;
    if n == 0 {
        return Err(invalid(name, "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let path: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("q{i}"))).collect();
    // Carrier states used after a free level to repeat the chosen bit.
    let low: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("low{i}"))).collect();
    let high: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("high{i}"))).collect();
    let one_leaf = b.add_state("one_leaf");
    b.add_leaf(one_leaf, one(), [1, 2]);
    let zeros = ZeroChain::new(&mut b, 2, n, [1, 2]);
    for (idx, role) in roles.iter().enumerate() {
        let i = idx as u32 + 1;
        let next = |which: usize| -> StateId {
            if i == n {
                one_leaf
            } else {
                [&path, &low, &high][which][i as usize]
            }
        };
        let off = zeros.child(i, n);
        let top = path[idx];
        match role {
            LevelRole::Free => {
                let needs_repeat =
                    matches!(roles.get(idx + 1), Some(LevelRole::RepeatPrevious));
                let (l, r) = if needs_repeat { (next(1), next(2)) } else { (next(0), next(0)) };
                b.add_internal(top, lvl(i), l, off, [1]);
                b.add_internal(top, lvl(i), off, r, [2]);
            }
            LevelRole::Forced(bit) => {
                let on = next(0);
                let (l, r) = if *bit == 0 { (on, off) } else { (off, on) };
                b.add_internal(top, lvl(i), l, r, [1, 2]);
            }
            LevelRole::RepeatPrevious => {
                let on = next(0);
                b.add_internal(low[idx], lvl(i), on, off, [1, 2]);
                b.add_internal(high[idx], lvl(i), off, on, [1, 2]);
            }
        }
    }
    b.set_root(path[0]);
    Ok(b.finish()?)
}

fn bv_pre(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("BvPre", "secret length must be positive"));
    }
    let mut roles = Vec::new();
    for _ in 0..n {
        roles.push(LevelRole::Free);
        roles.push(LevelRole::Forced(0));
    }
    roles.push(LevelRole::Forced(1));
    interleaved_basis("BvPre", &roles)
}

fn bv_post(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("BvPost", "secret length must be positive"));
    }
    let mut roles = Vec::new();
    for _ in 0..n {
        roles.push(LevelRole::Free);
        roles.push(LevelRole::RepeatPrevious);
    }
    roles.push(LevelRole::Forced(1));
    interleaved_basis("BvPost", &roles)
}

fn mctoffoli_pre(n: u32, k: u8) -> Result<Lsta, SpecKitError> {
    if n < 2 {
        return Err(invalid("McToffoliPre", "need at least two control qubits"));
    }
    if k > 1 {
        return Err(invalid("McToffoliPre", "target bit must be 0 or 1"));
    }
    let mut roles = vec![LevelRole::Free, LevelRole::Free];
    for _ in 2..n {
        roles.push(LevelRole::Forced(0));
        roles.push(LevelRole::Free);
    }
    roles.push(LevelRole::Forced(0));
    roles.push(LevelRole::Forced(k));
    interleaved_basis("McToffoliPre", &roles)
}

/// Tracks the conjunction of control bits on the way down; the target leaf
/// is flipped exactly when every control was 1.
fn mctoffoli_post(n: u32, k: u8) -> Result<Lsta, SpecKitError> {
    if n < 2 {
        return Err(invalid("McToffoliPost", "need at least two control qubits"));
    }
    if k > 1 {
        return Err(invalid("McToffoliPost", "target bit must be 0 or 1"));
    }
    let total = 2 * n;
    let mut b = LstaBuilder::new();
    // all[i]: every control so far is 1; broken[i]: some control was 0.
    let all: Vec<StateId> = (1..=total).map(|i| b.add_state(format!("all{i}"))).collect();
    let broken: Vec<StateId> =
        (1..=total).map(|i| b.add_state(format!("brk{i}"))).collect();
    let one_leaf = b.add_state("one_leaf");
    b.add_leaf(one_leaf, one(), [1, 2]);
    let zeros = ZeroChain::new(&mut b, 2, total, [1, 2]);
    let is_control = |i: u32| i == 1 || (i.is_multiple_of(2) && i < total);
    for i in 1..=total {
        let off = zeros.child(i, total);
        let idx = (i - 1) as usize;
        if i == total {
            // Last level: the target bit, flipped only on the all-ones path.
            let place = |b: &mut LstaBuilder, top: StateId, bit: u8| {
                let (l, r) = if bit == 0 { (one_leaf, off) } else { (off, one_leaf) };
                b.add_internal(top, lvl(i), l, r, [1, 2]);
            };
            place(&mut b, all[idx], 1 - k);
            place(&mut b, broken[idx], k);
        } else if is_control(i) {
            b.add_internal(all[idx], lvl(i), broken[idx + 1], off, [1]);
            b.add_internal(all[idx], lvl(i), off, all[idx + 1], [2]);
            b.add_internal(broken[idx], lvl(i), broken[idx + 1], off, [1]);
            b.add_internal(broken[idx], lvl(i), off, broken[idx + 1], [2]);
        } else {
            // Ancilla level, forced to 0.
            b.add_internal(all[idx], lvl(i), all[idx + 1], off, [1, 2]);
            b.add_internal(broken[idx], lvl(i), broken[idx + 1], off, [1, 2]);
        }
    }
    b.set_root(all[0]);
    Ok(b.finish()?)
}

/// The monotone vectors 0^a 1^b (b >= 1): a boundary path with all-zero
/// subtrees to its left and all-one subtrees to its right.
fn eq_vectors(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("EqVectors", "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let path: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("q{i}"))).collect();
    let ones: Vec<StateId> = (2..=n).map(|i| b.add_state(format!("one_{i}"))).collect();
    let boundary_leaf = b.add_state("boundary_leaf");
    let one_leaf = b.add_state("one_leaf");
    b.add_leaf(boundary_leaf, one(), [1, 2]);
    b.add_leaf(one_leaf, one(), [1, 2]);
    let zeros = ZeroChain::new(&mut b, 2, n, [1, 2]);
    let one_at = |i: u32| -> StateId {
        if i == n + 1 {
            one_leaf
        } else {
            ones[(i - 2) as usize]
        }
    };
    for i in 2..=n {
        let below = one_at(i + 1);
        b.add_internal(one_at(i), lvl(i), below, below, [1, 2]);
    }
    for i in 1..=n {
        let next = if i == n { boundary_leaf } else { path[i as usize] };
        b.add_internal(path[(i - 1) as usize], lvl(i), zeros.child(i, n), next, [1]);
        b.add_internal(path[(i - 1) as usize], lvl(i), next, one_at(i + 1), [2]);
    }
    b.set_root(path[0]);
    Ok(b.finish()?)
}

fn parity_phase(n: u32) -> Result<Lsta, SpecKitError> {
    if n == 0 {
        return Err(invalid("ParityPhase", "qubit count must be positive"));
    }
    let mut b = LstaBuilder::new();
    let even: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("even{i}"))).collect();
    let odd: Vec<StateId> = (1..=n).map(|i| b.add_state(format!("odd{i}"))).collect();
    let plus_leaf = b.add_state("plus_leaf");
    let minus_leaf = b.add_state("minus_leaf");
    b.add_leaf(plus_leaf, one(), [1, 2]);
    b.add_leaf(minus_leaf, one().neg(), [1, 2]);
    let zeros = ZeroChain::new(&mut b, 2, n, [1, 2]);
    for i in 1..=n {
        let idx = (i - 1) as usize;
        let (same_e, flip_e) =
            if i == n { (plus_leaf, minus_leaf) } else { (even[idx + 1], odd[idx + 1]) };
        let (same_o, flip_o) =
            if i == n { (minus_leaf, plus_leaf) } else { (odd[idx + 1], even[idx + 1]) };
        let off = zeros.child(i, n);
        b.add_internal(even[idx], lvl(i), same_e, off, [1]);
        b.add_internal(even[idx], lvl(i), off, flip_e, [2]);
        if i > 1 {
            b.add_internal(odd[idx], lvl(i), same_o, off, [1]);
            b.add_internal(odd[idx], lvl(i), off, flip_o, [2]);
        }
    }
    b.set_root(even[0]);
    Ok(b.finish()?)
}

/// Choice convention: 1 = continue with bit 0, 2 = continue with bit 1,
/// 3 = end with bit 0, 4 = end with bit 1.
fn even_parity_param() -> Lsta {
    let mut b = LstaBuilder::new();
    let even = b.add_state("even");
    let odd = b.add_state("odd");
    let z = b.add_state("z");
    let one_leaf = b.add_state("one_leaf");
    let zero_leaf = b.add_state("zero_leaf");
    let x = InternalSymbol::Any;
    b.add_internal(even, x, even, z, [1]);
    b.add_internal(even, x, z, odd, [2]);
    b.add_internal(even, x, one_leaf, zero_leaf, [3]);
    b.add_internal(odd, x, odd, z, [1]);
    b.add_internal(odd, x, z, even, [2]);
    b.add_internal(odd, x, zero_leaf, one_leaf, [4]);
    b.add_internal(z, x, z, z, [1, 2]);
    b.add_internal(z, x, zero_leaf, zero_leaf, [3, 4]);
    b.add_leaf(one_leaf, one(), [1]);
    b.add_leaf(zero_leaf, zero(), [1]);
    b.set_root(even);
    b.finish().expect("fixed predicate construction")
}

pub fn build_predicate(f: &PredicateFamily) -> Result<Lsta, SpecKitError> {
    match f {
        PredicateFamily::BasisAll(n) => basis_all(*n),
        PredicateFamily::BasisSingle(bits) => basis_single(bits),
        PredicateFamily::Bell => ghz_all_fixed(2),
        PredicateFamily::GhzFixed(n) => ghz_fixed(*n),
        PredicateFamily::GhzAllFixed(n) => ghz_all_fixed(*n),
        PredicateFamily::ZerosParam => Ok(zeros_param()),
        PredicateFamily::GhzParam => Ok(ghz_param()),
        PredicateFamily::BvPre(n) => bv_pre(*n),
        PredicateFamily::BvPost(n) => bv_post(*n),
        PredicateFamily::McToffoliPre(n, k) => mctoffoli_pre(*n, *k),
        PredicateFamily::McToffoliPost(n, k) => mctoffoli_post(*n, *k),
        PredicateFamily::EqVectors(n) => eq_vectors(*n),
        PredicateFamily::ParityPhase(n) => parity_phase(*n),
        PredicateFamily::EvenParityParam => Ok(even_parity_param()),
    }
}

/// Two states, three transitions: all perfect trees (of height >= 1) whose
/// leaves carry 1.  At each level the common choice decides whether every
/// branch continues (choice 1) or every branch terminates (choice 2).
pub fn fbtree() -> Lsta {
    let mut b = LstaBuilder::new();
    let p = b.add_state("p");
    let q = b.add_state("q");
    b.add_internal(p, InternalSymbol::Any, p, p, [1]);
    b.add_internal(p, InternalSymbol::Any, q, q, [2]);
    b.add_leaf(q, one(), [2]);
    b.set_root(p);
    b.finish().expect("fixed construction")
}

/// Parses the `.lsta` text format:
///
/// ```text
/// # comment
/// root q0 q1
/// q0 -> x1 (q1, q1) {1,2}     # level-indexed internal transition
/// q0 -> x (q1, q1) {1}        # level-independent internal transition
/// q1 -> 1/s2 {1}              # leaf transition with an amplitude literal
/// ```
pub fn parse_lsta(text: &str) -> Result<Lsta, SpecKitError> {
    let mut b = LstaBuilder::new();
    let mut ids: std::collections::HashMap<String, StateId> = std::collections::HashMap::new();
    let mut roots: Vec<StateId> = Vec::new();
    let mut any_line = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        any_line = true;
        let mut state = |b: &mut LstaBuilder, name: &str| -> StateId {
            *ids.entry(name.to_string()).or_insert_with(|| b.add_state(name))
        };
        if body.split_whitespace().next() == Some("root") && !body.contains("->") {
            let mut names = body.split_whitespace().skip(1).peekable();
            if names.peek().is_none() {
                return Err(SpecKitError::Parse {
                    line,
                    msg: "expected `root s1 s2 ...`".to_string(),
                });
            }
            for name in names {
                let s = state(&mut b, name);
                roots.push(s);
            }
            continue;
        }
        let (top_name, rhs) = body.split_once("->").ok_or_else(|| SpecKitError::Parse {
            line,
            msg: format!("expected `->` in `{body}`"),
        })?;
        let top = state(&mut b, top_name.trim());
        let rhs = rhs.trim();
        let brace = rhs.rfind('{').ok_or_else(|| SpecKitError::Parse {
            line,
            msg: "missing choice set `{..}`".to_string(),
        })?;
        let choice_text = rhs[brace..]
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| SpecKitError::Parse {
                line,
                msg: "malformed choice set".to_string(),
            })?;
        let mut choices = Vec::new();
        for c in choice_text.split(',') {
            choices.push(c.trim().parse::<u32>().map_err(|_| SpecKitError::Parse {
                line,
                msg: format!("bad choice value `{}`", c.trim()),
            })?);
        }
        let head = rhs[..brace].trim();
        let is_internal = head
            .split('(')
            .next()
            .map(|sym| {
                let sym = sym.trim();
                sym == "x" || (sym.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit())))
            })
            .unwrap_or(false);
        if is_internal {
            let (sym_text, rest) = head.split_once('(').ok_or_else(|| SpecKitError::Parse {
                line,
                msg: "internal transition needs `(left, right)`".to_string(),
            })?;
            let symbol = match sym_text.trim() {
                "x" => InternalSymbol::Any,
                s => InternalSymbol::Level(s[1..].parse().map_err(|_| SpecKitError::Parse {
                    line,
                    msg: format!("bad symbol `{s}`"),
                })?),
            };
            let inner = rest.trim_end().strip_suffix(')').ok_or_else(|| SpecKitError::Parse {
                line,
                msg: "unclosed `(`".to_string(),
            })?;
            let (l, r) = inner.split_once(',').ok_or_else(|| SpecKitError::Parse {
                line,
                msg: "expected two child states".to_string(),
            })?;
            let left = state(&mut b, l.trim());
            let right = state(&mut b, r.trim());
            b.add_internal(top, symbol, left, right, choices);
        } else {
            let value = AlgebraicComplex::parse(head)?;
            b.add_leaf(top, value, choices);
        }
    }
    if !any_line {
        return Err(SpecKitError::Parse { line: 1, msg: "empty automaton file".to_string() });
    }
    for r in roots {
        b.set_root(r);
    }
    Ok(b.finish()?)
}

pub fn serialize_lsta(a: &Lsta) -> String {
    let mut out = String::from("root");
    for &r in a.roots() {
        out.push(' ');
        out.push_str(a.state_name(r));
    }
    out.push('\n');
    for t in a.transitions() {
        let choices: Vec<String> = t.choices.iter().map(|c| c.to_string()).collect();
        let choices = choices.join(",");
        let line = match &t.kind {
            lsta_core::TransitionKind::Internal { symbol, left, right } => format!(
                "{} -> {} ({}, {}) {{{}}}",
                a.state_name(t.top),
                symbol,
                a.state_name(*left),
                a.state_name(*right),
                choices
            ),
            lsta_core::TransitionKind::Leaf { value } => {
                format!("{} -> {} {{{}}}", a.state_name(t.top), value, choices)
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Benchmark bug-injection scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BugScenario {
    /// Remove one uniformly chosen gate.
    MissGate,
    /// Swap control and target of one uniformly chosen two-qubit cx.
    FlipCx,
}

impl std::str::FromStr for BugScenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "miss-gate" => Ok(BugScenario::MissGate),
            "flip-cx" => Ok(BugScenario::FlipCx),
            other => Err(format!("unknown scenario `{other}` (use miss-gate or flip-cx)")),
        }
    }
}

/// Deterministically injects a bug into a circuit; the same seed always
/// yields the same mutation.
pub fn inject_bug(
    c: &FixedCircuit,
    scenario: BugScenario,
    seed: u64,
) -> Result<FixedCircuit, SpecKitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = c.clone();
    match scenario {
        BugScenario::MissGate => {
            if out.gates.is_empty() {
                return Err(SpecKitError::InvalidParameter {
                    family: "miss-gate".to_string(),
                    reason: "circuit has no gates".to_string(),
                });
            }
            let i = rng.gen_range(0..out.gates.len());
            out.gates.remove(i);
        }
        BugScenario::FlipCx => {
            let cx_positions: Vec<usize> = out
                .gates
                .iter()
                .enumerate()
                .filter(|(_, g)| g.gate == Gate::X && g.controls.len() == 1)
                .map(|(i, _)| i)
                .collect();
            if cx_positions.is_empty() {
                return Err(SpecKitError::NoCxGate);
            }
            let i = cx_positions[rng.gen_range(0..cx_positions.len())];
            let g = &mut out.gates[i];
            let control = g.controls[0];
            *g = QasmGate::controlled(vec![g.target], control, Gate::X);
        }
    }
    Ok(out)
}
