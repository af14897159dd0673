//! Symbolic application of quantum gates to tree automata.
//!
//! A state on `n` qubits is a perfect binary tree of depth `n` whose leaves
//! are amplitudes; level `t` of the tree corresponds to qubit `t` (1-based,
//! left subtree = qubit value 0).  Applying a gate on qubit `t` rewrites an
//! automaton over such trees into one accepting exactly the trees of the
//! transformed states.
//!
//! The constructions require every automaton state to sit at a single,
//! well-defined tree level.  Automata with level-ambiguous states (as
//! produced by parameterized predicates with looping transitions) must have
//! their top levels unfolded first; attempting a gate on them reports
//! [`GateError::AmbiguousLevel`] rather than guessing.

use amplitude::{AlgebraicComplex, Mat2};
use lsta_core::{
    ChoiceSet, InternalSymbol, Lsta, LstaBuilder, LstaError, StateId, Transition, TransitionKind,
};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("state {state} is reachable at tree levels {level_a} and {level_b}; unfold the top levels before applying gates")]
    AmbiguousLevel { state: u32, level_a: u32, level_b: u32 },
    #[error("automaton accepts trees ending at level {level}, but the gate acts on qubit {qubit}")]
    ShortTree { level: u32, qubit: u32 },
    #[error("control qubit {qubit} duplicates the target or another control")]
    BadControl { qubit: u32 },
    #[error("gate acts on qubit {qubit}, which is not a positive index")]
    BadQubit { qubit: u32 },
    #[error(transparent)]
    Automaton(#[from] LstaError),
}

/// Single-qubit gate payload.  `PauliX` and `Diagonal` have dedicated
/// linear-size constructions; `Unitary` is the general quadratic one.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    PauliX,
    Diagonal { r0: AlgebraicComplex, r1: AlgebraicComplex },
    Unitary(Mat2),
}

impl GateKind {
    pub fn matrix(&self) -> Mat2 {
        match self {
            GateKind::PauliX => amplitude::consts::x(),
            GateKind::Diagonal { r0, r1 } => Mat2::diag(r0.clone(), r1.clone()),
            GateKind::Unitary(m) => m.clone(),
        }
    }
}

/// A gate application: `kind` on qubit `target`, conditioned on every qubit
/// in `controls` being 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub target: u32,
    pub controls: Vec<u32>,
    pub kind: GateKind,
}

impl GateOp {
    pub fn single(target: u32, kind: GateKind) -> Self {
        GateOp { target, controls: Vec::new(), kind }
    }

    pub fn controlled(controls: Vec<u32>, target: u32, kind: GateKind) -> Self {
        GateOp { target, controls, kind }
    }
}

/// Tree levels of the states occurring on the first `depth` levels (roots at
/// level 1); `None` for states that only occur deeper.  A state must not be
/// reachable at two different levels within the analyzed range, and no state
/// of the analyzed range may also be reachable below it — parameterized
/// automata with looping transitions near the top must be unfolded first.
fn levels_up_to(a: &Lsta, depth: u32) -> Result<Vec<Option<u32>>, GateError> {
    let mut level: Vec<Option<u32>> = vec![None; a.num_states()];
    let mut frontier: Vec<StateId> = Vec::new();
    for &r in a.roots() {
        if level[r.index()].is_none() {
            level[r.index()] = Some(1);
            frontier.push(r);
        }
    }
    for d in 1..=depth {
        let mut next: Vec<StateId> = Vec::new();
        for &s in &frontier {
            for t in a.transitions_of(s) {
                if let TransitionKind::Internal { left, right, .. } = t.kind {
                    for c in [left, right] {
                        match level[c.index()] {
                            None => {
                                if d < depth {
                                    level[c.index()] = Some(d + 1);
                                }
                                next.push(c);
                            }
                            Some(x) if x == d + 1 => {}
                            Some(x) => {
                                return Err(GateError::AmbiguousLevel {
                                    state: c.0,
                                    level_a: x,
                                    level_b: d + 1,
                                })
                            }
                        }
                    }
                }
            }
        }
        next.sort_unstable_by_key(|s| s.0);
        next.dedup();
        frontier = next;
    }
    // `frontier` now holds the states entering level depth+1.  Nothing in
    // its downward closure may carry a level from the analyzed range.
    let mut stack = frontier;
    let mut seen = vec![false; a.num_states()];
    while let Some(s) = stack.pop() {
        if seen[s.index()] {
            continue;
        }
        seen[s.index()] = true;
        if let Some(l) = level[s.index()] {
            return Err(GateError::AmbiguousLevel {
                state: s.0,
                level_a: l,
                level_b: depth + 1,
            });
        }
        for t in a.transitions_of(s) {
            if let TransitionKind::Internal { left, right, .. } = t.kind {
                stack.push(left);
                stack.push(right);
            }
        }
    }
    Ok(level)
}

/// Rejects automata that can accept a tree with fewer than `qubit` levels.
fn check_depth(a: &Lsta, levels: &[Option<u32>], qubit: u32) -> Result<(), GateError> {
    for t in a.transitions() {
        if let Some(l) = levels[t.top.index()] {
            if t.kind.is_leaf() && l <= qubit {
                return Err(GateError::ShortTree { level: l, qubit });
            }
        }
    }
    Ok(())
}

/// Where an output state came from, used by the controlled construction to
/// rewire 0-branches of control levels into the untouched copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    /// Same state as in the input automaton.
    Original(StateId),
    /// Product state: left/right combination slot over an input state pair.
    Product { first: StateId, second: StateId, right_slot: bool },
}

struct Applied {
    lsta: Lsta,
    origin: Vec<Origin>,
    /// Tree level of each output state.
    level: Vec<u32>,
}

fn intersect(a: &ChoiceSet, b: &ChoiceSet) -> ChoiceSet {
    a.intersection(b).copied().collect()
}

/// On-demand allocation of combination state pairs for the product part of
/// the single-qubit construction.
struct PairAlloc {
    ids: BTreeMap<(StateId, StateId), (StateId, StateId)>,
    worklist: VecDeque<(StateId, StateId)>,
}

impl PairAlloc {
    #[allow(clippy::too_many_arguments)]
    fn pair(
        &mut self,
        a: &Lsta,
        b: &mut LstaBuilder,
        origin: &mut Vec<Origin>,
        out_level: &mut Vec<u32>,
        q1: StateId,
        q2: StateId,
        level: u32,
    ) -> (StateId, StateId) {
        if let Some(&p) = self.ids.get(&(q1, q2)) {
            return p;
        }
        let l = b.add_derived_state(format!("({},{},0)", a.state_name(q1), a.state_name(q2)));
        let r = b.add_derived_state(format!("({},{},1)", a.state_name(q1), a.state_name(q2)));
        origin.push(Origin::Product { first: q1, second: q2, right_slot: false });
        origin.push(Origin::Product { first: q1, second: q2, right_slot: true });
        out_level.push(level);
        out_level.push(level);
        self.worklist.push_back((q1, q2));
        self.ids.insert((q1, q2), (l, r));
        (l, r)
    }
}

/// Core single-qubit construction.  States above the target level are kept;
/// each level-`t` transition is re-rooted over a fresh pair of combination
/// states; below the target, pairs of same-symbol transitions are combined
/// lazily, and paired leaves become the matrix combination of their values.
fn apply_unitary_inner(a: &Lsta, target: u32, u: &Mat2) -> Result<Applied, GateError> {
    if target == 0 {
        return Err(GateError::BadQubit { qubit: target });
    }
    let a = a.trim();
    let levels = levels_up_to(&a, target)?;
    check_depth(&a, &levels, target)?;

    let mut b = LstaBuilder::new();
    let mut origin: Vec<Origin> = Vec::new();
    let mut out_level: Vec<u32> = Vec::new();
    // Original states keep their ids: add them first in order.
    for s in a.states() {
        b.add_state(a.state_name(s).to_string());
        origin.push(Origin::Original(s));
        out_level.push(levels[s.index()].unwrap_or(0));
    }
    for &r in a.roots() {
        b.set_root(r);
    }

    // Combination states, created on demand per input state pair.
    let mut alloc = PairAlloc {
        ids: BTreeMap::new(),
        worklist: VecDeque::new(),
    };

    for t in a.transitions() {
        let lvl = levels[t.top.index()].unwrap_or(0);
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } if lvl == target => {
                let (pl, pr) = alloc.pair(
                    &a,
                    &mut b,
                    &mut origin,
                    &mut out_level,
                    *left,
                    *right,
                    target + 1,
                );
                b.add_internal(t.top, *symbol, pl, pr, t.choices.iter().copied());
            }
            _ => b.add_transition(t.clone()),
        }
    }

    while let Some((q1, q2)) = alloc.worklist.pop_front() {
        let (top_l, top_r) = alloc.ids[&(q1, q2)];
        let level = out_level[top_l.index()];
        for t1 in a.transitions_of(q1) {
            for t2 in a.transitions_of(q2) {
                let choices = intersect(&t1.choices, &t2.choices);
                if choices.is_empty() {
                    continue;
                }
                match (&t1.kind, &t2.kind) {
                    (
                        TransitionKind::Internal { symbol: y1, left: l1, right: r1 },
                        TransitionKind::Internal { symbol: y2, left: l2, right: r2 },
                    ) if y1 == y2 => {
                        let (ll, lr) = alloc.pair(
                            &a,
                            &mut b,
                            &mut origin,
                            &mut out_level,
                            *l1,
                            *l2,
                            level + 1,
                        );
                        let (rl, rr) = alloc.pair(
                            &a,
                            &mut b,
                            &mut origin,
                            &mut out_level,
                            *r1,
                            *r2,
                            level + 1,
                        );
                        b.add_internal(top_l, *y1, ll, rl, choices.iter().copied());
                        b.add_internal(top_r, *y1, lr, rr, choices.iter().copied());
                    }
                    (
                        TransitionKind::Leaf { value: v1 },
                        TransitionKind::Leaf { value: v2 },
                    ) => {
                        let out0 = u.u1.mul(v1).add(&u.u2.mul(v2));
                        let out1 = u.u3.mul(v1).add(&u.u4.mul(v2));
                        b.add_leaf(top_l, out0, choices.iter().copied());
                        b.add_leaf(top_r, out1, choices);
                    }
                    _ => {}
                }
            }
        }
    }

    let lsta = b.finish()?;
    Ok(Applied { lsta, origin, level: out_level })
}

/// Applies a general single-qubit unitary on qubit `target`.
pub fn apply_unitary(a: &Lsta, target: u32, u: &Mat2) -> Result<Lsta, GateError> {
    apply_unitary_inner(a, target, u).map(|r| r.lsta)
}

/// Applies X on qubit `target` by swapping the children of every level-`target`
/// transition.  Linear time, no new states.
pub fn apply_x(a: &Lsta, target: u32) -> Result<Lsta, GateError> {
    if target == 0 {
        return Err(GateError::BadQubit { qubit: target });
    }
    let a = a.trim();
    let levels = levels_up_to(&a, target)?;
    check_depth(&a, &levels, target)?;
    let mut b = LstaBuilder::new();
    for s in a.states() {
        b.add_state(a.state_name(s).to_string());
    }
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right }
                if levels[t.top.index()] == Some(target) =>
            {
                b.add_internal(t.top, *symbol, *right, *left, t.choices.iter().copied());
            }
            _ => b.add_transition(t.clone()),
        }
    }
    Ok(b.finish()?)
}

/// Applies `diag(r0, r1)` on qubit `target`.  The 1-subtrees of the target
/// level are redirected to a fresh copy; leaves of the 0-side are scaled by
/// `r0` and leaves of the copy by `r1`.  Exactly doubles the size before
/// trimming.
pub fn apply_diag(
    a: &Lsta,
    target: u32,
    r0: &AlgebraicComplex,
    r1: &AlgebraicComplex,
) -> Result<Lsta, GateError> {
    if target == 0 {
        return Err(GateError::BadQubit { qubit: target });
    }
    let a = a.trim();
    let levels = levels_up_to(&a, target)?;
    check_depth(&a, &levels, target)?;
    let mut b = LstaBuilder::new();
    for s in a.states() {
        b.add_state(a.state_name(s).to_string());
    }
    let offset = a.num_states() as u32;
    for s in a.states() {
        b.add_derived_state(format!("{}'", a.state_name(s)));
    }
    let prime = |s: StateId| StateId(s.0 + offset);
    for &r in a.roots() {
        b.set_root(r);
    }
    for t in a.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right } => {
                if levels[t.top.index()] == Some(target) {
                    b.add_internal(t.top, *symbol, *left, prime(*right), t.choices.iter().copied());
                } else {
                    b.add_transition(t.clone());
                }
                b.add_internal(
                    prime(t.top),
                    *symbol,
                    prime(*left),
                    prime(*right),
                    t.choices.iter().copied(),
                );
            }
            TransitionKind::Leaf { value } => {
                b.add_leaf(t.top, r0.mul(value), t.choices.iter().copied());
                b.add_leaf(prime(t.top), r1.mul(value), t.choices.iter().copied());
            }
        }
    }
    Ok(b.finish()?)
}

/// Applies a controlled gate: `kind` on `target` where all `controls` are 1.
///
/// Built as the plain gate application plus an untouched primed copy of the
/// input; at every control level the 0-branch is rewired into the primed
/// copy, so the gate only takes effect along the all-ones control path.
pub fn apply_controlled(
    a: &Lsta,
    controls: &[u32],
    target: u32,
    kind: &GateKind,
) -> Result<Lsta, GateError> {
    if controls.is_empty() {
        return apply_single(a, target, kind);
    }
    let mut seen: Vec<u32> = Vec::new();
    for &c in controls {
        if c == 0 {
            return Err(GateError::BadQubit { qubit: c });
        }
        if c == target || seen.contains(&c) {
            return Err(GateError::BadControl { qubit: c });
        }
        seen.push(c);
    }
    let deepest = controls.iter().copied().max().unwrap().max(target);

    let applied = apply_unitary_inner(a, target, &kind.matrix())?;
    // The depth checks must also cover control levels.
    let a = a.trim();
    let levels = levels_up_to(&a, deepest)?;
    check_depth(&a, &levels, deepest)?;

    let gated = &applied.lsta;
    let mut b = LstaBuilder::new();
    for s in gated.states() {
        b.add_state(gated.state_name(s).to_string());
    }
    let offset = gated.num_states() as u32;
    for s in a.states() {
        b.add_derived_state(format!("{}'", a.state_name(s)));
    }
    let prime = |s: StateId| StateId(s.0 + offset);
    for &r in gated.roots() {
        b.set_root(r);
    }

    // The untouched state corresponding to an output state of the gate
    // construction: originals map to their primed copy, combination states
    // map to the member their slot mirrors.
    let untouched = |s: StateId| -> StateId {
        match applied.origin[s.index()] {
            Origin::Original(q) => prime(q),
            Origin::Product { first, second, right_slot } => {
                prime(if right_slot { second } else { first })
            }
        }
    };

    let mut ctl_sorted = controls.to_vec();
    ctl_sorted.sort_unstable_by(|x, y| y.cmp(x));
    for t in gated.transitions() {
        match &t.kind {
            TransitionKind::Internal { symbol, left, right }
                if ctl_sorted.contains(&applied.level[t.top.index()]) =>
            {
                b.add_internal(t.top, *symbol, untouched(*left), *right, t.choices.iter().copied());
            }
            _ => b.add_transition(t.clone()),
        }
    }
    for t in a.transitions() {
        let kind = match &t.kind {
            TransitionKind::Internal { symbol, left, right } => TransitionKind::Internal {
                symbol: *symbol,
                left: prime(*left),
                right: prime(*right),
            },
            leaf => leaf.clone(),
        };
        b.add_transition(Transition { top: prime(t.top), kind, choices: t.choices.clone() });
    }
    Ok(b.finish()?)
}

/// Uncontrolled dispatch to the cheapest construction for the gate kind.
pub fn apply_single(a: &Lsta, target: u32, kind: &GateKind) -> Result<Lsta, GateError> {
    match kind {
        GateKind::PauliX => apply_x(a, target),
        GateKind::Diagonal { r0, r1 } => apply_diag(a, target, r0, r1),
        GateKind::Unitary(u) => apply_unitary(a, target, u),
    }
}

/// Applies one gate operation; reduces the result when `reduce` is set.
pub fn apply_gate(a: &Lsta, op: &GateOp, reduce: bool) -> Result<Lsta, GateError> {
    let out = if op.controls.is_empty() {
        apply_single(a, op.target, &op.kind)?
    } else {
        apply_controlled(a, &op.controls, op.target, &op.kind)?
    };
    Ok(if reduce { out.reduce() } else { out })
}

/// Applies a whole circuit left to right.
pub fn apply_circuit(a: &Lsta, ops: &[GateOp], reduce: bool) -> Result<Lsta, GateError> {
    let mut cur = a.clone();
    for op in ops {
        cur = apply_gate(&cur, op, reduce)?;
    }
    Ok(cur)
}

// Internal symbol helper re-exported for tests building leveled automata.
pub fn level_symbol(k: u32) -> InternalSymbol {
    InternalSymbol::Level(k)
}
