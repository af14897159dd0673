//! Gate constructions that act uniformly on all `n` qubits at once, for
//! automata describing families of states with unbounded qubit counts
//! (internal symbol `x` at every level).
//!
//! These cover the staircase CNOT cascades, their inverses, `X` and
//! phase rotations applied to every qubit, alternating CNOT layers, and
//! single-qubit gates addressed from the ends of the register (first or
//! last qubit).  Together with `unfold_top`/`fold` they let fixed-index
//! gates from the `gates` crate run on parameterized automata.

use amplitude::{AlgebraicComplex, Mat2};
use gates::GateError;
use lsta_core::{
    InternalSymbol, Lsta, LstaBuilder, LstaError, StateId, Transition, TransitionKind,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamGateError {
    #[error("automaton accepts a tree of height below {required}; cannot unfold {required} levels")]
    TooShallow { required: u32 },
    #[error("state {state} mixes leaf and non-leaf transitions; the last layer is ambiguous")]
    AmbiguousLastLayer { state: u32 },
    #[error("transition from state {state} has exactly one leaf-state child; the last layer is ambiguous")]
    HalfLeafTransition { state: u32 },
    #[error("a root accepts a bare leaf; there is no last qubit to act on")]
    NoLastQubit,
    #[error("{n} does not divide 16; only phase roots w_N with N | 16 are representable")]
    BadPhaseRoot { n: u32 },
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Automaton(#[from] LstaError),
}

/// Which qubits carry the controls in an alternating CNOT layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltCnotLayer {
    /// `CX(1->2), CX(3->4), ...`: controls on odd qubit indices.
    ControlsOnOdd,
    /// `CX(2->3), CX(4->5), ...`: controls on even qubit indices.
    ControlsOnEven,
}

fn copy_states(a: &Lsta, b: &mut LstaBuilder, suffix: &str) -> u32 {
    let offset = b.num_states() as u32;
    for s in a.states() {
        b.add_derived_state(format!("{}{}", a.state_name(s), suffix));
    }
    offset
}

/// Staircase CNOT cascade `CX(n-1 -> n) ... CX(2 -> 3) CX(1 -> 2)` (the
/// `CX(1 -> 2)` acts first).  A barred copy of the automaton encodes
/// "every following qubit is flipped"; entering a 1-branch switches to the
/// barred copy and a barred 0-branch (which holds the flipped value's
/// 1-position) switches back.  Exactly doubles the automaton.
pub fn cx_n(a: &Lsta) -> Result<Lsta, ParamGateError> {
    staircase(a, false)
}

/// Inverse cascade `CX(1 -> 2) ... CX(n-1 -> n)` (the `CX(n-1 -> n)` acts
/// first); undoes [`cx_n`].
pub fn cx_n_inv(a: &Lsta) -> Result<Lsta, ParamGateError> {
    staircase(a, true)
}

fn staircase(a: &Lsta, inverse: bool) -> Result<Lsta, ParamGateError> {
    let mut b = LstaBuilder::new();
    copy_states(a, &mut b, "");
    let offset = copy_states(a, &mut b, "~");
    let bar = |s: StateId| StateId(s.0 + offset);
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } => {
                b.add_internal(t.top, *symbol, *left, bar(*right), t.choices.iter().copied());
                if inverse {
                    b.add_internal(bar(t.top), *symbol, bar(*right), *left, t.choices.iter().copied());
                } else {
                    b.add_internal(bar(t.top), *symbol, *right, bar(*left), t.choices.iter().copied());
                }
            }
            TransitionKind::Leaf { value } => {
                b.add_leaf(t.top, value.clone(), t.choices.iter().copied());
                b.add_leaf(bar(t.top), value.clone(), t.choices.iter().copied());
            }
        }
    }
    Ok(b.finish()?)
}

/// `X` on every qubit: reverses the amplitude vector by swapping the
/// children of every non-leaf transition.
pub fn x_all(a: &Lsta) -> Result<Lsta, ParamGateError> {
    let mut b = LstaBuilder::new();
    copy_states(a, &mut b, "");
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } => {
                b.add_internal(t.top, *symbol, *right, *left, t.choices.iter().copied());
            }
            _ => b.add_transition(t.clone()),
        }
    }
    Ok(b.finish()?)
}

/// One layer of alternating CNOTs.  Three copies of the automaton track the
/// role of the current level: control level (left child continues
/// unflipped, right child continues flipped), target level without flip,
/// and target level with flip (children swapped).
pub fn alt_cnot(a: &Lsta, layer: AltCnotLayer) -> Result<Lsta, ParamGateError> {
    let mut b = LstaBuilder::new();
    let ctl = copy_states(a, &mut b, "@c");
    let pass = copy_states(a, &mut b, "@t0");
    let flip = copy_states(a, &mut b, "@t1");
    let at = |s: StateId, c: u32| StateId(s.0 + c);
    for &r in a.roots() {
        b.set_root(match layer {
            AltCnotLayer::ControlsOnOdd => at(r, ctl),
            AltCnotLayer::ControlsOnEven => at(r, pass),
        });
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } => {
                let ch = t.choices.iter().copied();
                b.add_internal(at(t.top, ctl), *symbol, at(*left, pass), at(*right, flip), ch.clone());
                b.add_internal(at(t.top, pass), *symbol, at(*left, ctl), at(*right, ctl), ch.clone());
                b.add_internal(at(t.top, flip), *symbol, at(*right, ctl), at(*left, ctl), ch);
            }
            TransitionKind::Leaf { value } => {
                for c in [ctl, pass, flip] {
                    b.add_leaf(at(t.top, c), value.clone(), t.choices.iter().copied());
                }
            }
        }
    }
    Ok(b.finish()?)
}

/// `diag(1, w_N^m)` on every qubit, where `w_N = e^{2 pi i / N}` and
/// `N | 16`.  Copy `i` of the automaton means "i ones seen so far (mod N)";
/// each right branch advances the copy, and a leaf in copy `i` is scaled by
/// `w_N^{i*m}`.
pub fn phase_all(a: &Lsta, n: u32, m: i64) -> Result<Lsta, ParamGateError> {
    if n == 0 || 16 % n != 0 {
        return Err(ParamGateError::BadPhaseRoot { n });
    }
    let step = (16 / n) as i64; // w_N = w^(16/N)
    let mut b = LstaBuilder::new();
    let offsets: Vec<u32> = (0..n).map(|i| copy_states(a, &mut b, &format!("@{i}"))).collect();
    let at = |s: StateId, i: u32| StateId(s.0 + offsets[i as usize]);
    for &r in a.roots() {
        b.set_root(at(r, 0));
    }
    for i in 0..n {
        let next = (i + 1) % n;
        for t in a.transitions() {
            match &t.kind {
                TransitionKind::Internal { symbol, left, right } => {
                    b.add_internal(
                        at(t.top, i),
                        *symbol,
                        at(*left, i),
                        at(*right, next),
                        t.choices.iter().copied(),
                    );
                }
                TransitionKind::Leaf { value } => {
                    let phase = AlgebraicComplex::omega(step * i as i64 * m);
                    b.add_leaf(at(t.top, i), phase.mul(value), t.choices.iter().copied());
                }
            }
        }
    }
    Ok(b.finish()?)
}

/// Multiplies every leaf by a constant: a global phase on all states.
pub fn scale_leaves(a: &Lsta, c: &AlgebraicComplex) -> Result<Lsta, ParamGateError> {
    let mut b = LstaBuilder::new();
    copy_states(a, &mut b, "");
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Leaf { value } => {
                b.add_leaf(t.top, c.mul(value), t.choices.iter().copied())
            }
            _ => b.add_transition(t.clone()),
        }
    }
    Ok(b.finish()?)
}

/// Replaces the top `t` levels by explicitly indexed copies (`x1..xt`), so
/// fixed-index gate constructions can address them.  Rejects automata that
/// accept any tree shorter than `t` levels — such trees have no qubit `t`
/// and would be silently lost otherwise.
pub fn unfold_top(a: &Lsta, t: u32) -> Result<Lsta, ParamGateError> {
    if t > 0 && a.accepts_tree_of_height_at_most(t - 1) {
        return Err(ParamGateError::TooShallow { required: t });
    }
    let mut b = LstaBuilder::new();
    let offsets: Vec<u32> = (0..t).map(|i| copy_states(a, &mut b, &format!("@l{}", i + 1))).collect();
    let orig = copy_states(a, &mut b, "");
    let at = |s: StateId, i: u32| {
        if i < t {
            StateId(s.0 + offsets[i as usize])
        } else {
            StateId(s.0 + orig)
        }
    };
    for &r in a.roots() {
        b.set_root(at(r, 0));
    }
    for i in 0..t {
        for tr in a.transitions() {
            if let TransitionKind::Internal { left, right, .. } = &tr.kind {
                b.add_internal(
                    at(tr.top, i),
                    InternalSymbol::Level(i + 1),
                    at(*left, i + 1),
                    at(*right, i + 1),
                    tr.choices.iter().copied(),
                );
            }
            // Leaf transitions inside the unfolded range would end the tree
            // above level t; the precondition rules such trees out, so they
            // are dropped rather than copied.
        }
    }
    for tr in a.transitions() {
        let kind = match &tr.kind {
            TransitionKind::Internal { symbol, left, right } => TransitionKind::Internal {
                symbol: *symbol,
                left: at(*left, t),
                right: at(*right, t),
            },
            leaf => leaf.clone(),
        };
        b.add_transition(Transition { top: at(tr.top, t), kind, choices: tr.choices.clone() });
    }
    Ok(b.finish()?.trim())
}

/// Erases level indices from internal symbols and reduces.
pub fn fold(a: &Lsta) -> Result<Lsta, ParamGateError> {
    let mut b = LstaBuilder::new();
    copy_states(a, &mut b, "");
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        let kind = match &t.kind {
            TransitionKind::Internal { left, right, .. } => TransitionKind::Internal {
                symbol: InternalSymbol::Any,
                left: *left,
                right: *right,
            },
            leaf => leaf.clone(),
        };
        b.add_transition(Transition { top: t.top, kind, choices: t.choices.clone() });
    }
    Ok(b.finish()?.reduce())
}

/// Applies a single-qubit unitary to the *first* qubit of every state in a
/// parameterized family: unfold one level, run the fixed-index
/// construction, fold back.
pub fn apply_first(a: &Lsta, u: &Mat2) -> Result<Lsta, ParamGateError> {
    let unfolded = unfold_top(a, 1)?;
    let out = gates::apply_unitary(&unfolded, 1, u)?;
    fold(&out)
}

/// Applies a single-qubit unitary to the *last* qubit of every state.
///
/// The last tree level is identified structurally: leaf-only states are the
/// states below it, and the transitions whose children are both leaf-only
/// are exactly the last-level transitions.  States mixing leaf and non-leaf
/// transitions, or transitions with exactly one leaf-only child, make the
/// last layer ambiguous and are rejected.
pub fn apply_last(a: &Lsta, u: &Mat2) -> Result<Lsta, ParamGateError> {
    let a = a.trim();
    let mut is_leaf_state = vec![false; a.num_states()];
    for s in a.states() {
        let mut any_leaf = false;
        let mut any_internal = false;
        for t in a.transitions_of(s) {
            if t.kind.is_leaf() {
                any_leaf = true;
            } else {
                any_internal = true;
            }
        }
        if any_leaf && any_internal {
            return Err(ParamGateError::AmbiguousLastLayer { state: s.0 });
        }
        is_leaf_state[s.index()] = any_leaf;
    }
    for &r in a.roots() {
        if is_leaf_state[r.index()] {
            return Err(ParamGateError::NoLastQubit);
        }
    }

    let mut b = LstaBuilder::new();
    copy_states(&a, &mut b, "");
    for &r in a.roots() {
        b.set_root(r);
    }
    // Combination leaf states per (left, right) child pair of a last-level
    // transition.
    let mut pairs: BTreeMap<(StateId, StateId), (StateId, StateId)> = BTreeMap::new();
    let mut result: Result<(), ParamGateError> = Ok(());
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } => {
                let leaves = (is_leaf_state[left.index()], is_leaf_state[right.index()]);
                match leaves {
                    (false, false) => b.add_transition(t.clone()),
                    (true, true) => {
                        let (p0, p1) = *pairs.entry((*left, *right)).or_insert_with(|| {
                            let p0 = b.add_derived_state(format!(
                                "({},{},0)",
                                a.state_name(*left),
                                a.state_name(*right)
                            ));
                            let p1 = b.add_derived_state(format!(
                                "({},{},1)",
                                a.state_name(*left),
                                a.state_name(*right)
                            ));
                            for t1 in a.transitions_of(*left) {
                                for t2 in a.transitions_of(*right) {
                                    let choices: Vec<u32> =
                                        t1.choices.intersection(&t2.choices).copied().collect();
                                    if choices.is_empty() {
                                        continue;
                                    }
                                    let (TransitionKind::Leaf { value: v1 },
                                         TransitionKind::Leaf { value: v2 }) =
                                        (&t1.kind, &t2.kind)
                                    else {
                                        continue;
                                    };
                                    b.add_leaf(
                                        p0,
                                        u.u1.mul(v1).add(&u.u2.mul(v2)),
                                        choices.iter().copied(),
                                    );
                                    b.add_leaf(
                                        p1,
                                        u.u3.mul(v1).add(&u.u4.mul(v2)),
                                        choices.iter().copied(),
                                    );
                                }
                            }
                            (p0, p1)
                        });
                        b.add_internal(t.top, *symbol, p0, p1, t.choices.iter().copied());
                    }
                    _ => {
                        result = Err(ParamGateError::HalfLeafTransition { state: t.top.0 });
                    }
                }
            }
            TransitionKind::Leaf { .. } => b.add_transition(t.clone()),
        }
    }
    result?;
    Ok(b.finish()?.trim())
}
