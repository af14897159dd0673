//! Level-synchronized tree automata over perfect binary trees whose leaves
//! carry exact complex amplitudes.
//!
//! An automaton has states `0..n`, a set of root states, and transitions
//! that are either internal (`q -> x(q_l, q_r)`) or leaf (`q -> value`).
//! Every transition carries a non-empty finite set of *choice* values; a run
//! over a tree is accepting when the root state is a root of the automaton
//! and, at every level of the tree, the choice sets of all transitions used
//! on that level share at least one common value.
//!
//! Transitions with the same top state are required to have pairwise
//! disjoint choice sets.  Fixing a common choice value therefore determines
//! at most one transition per state, which all the decision procedures here
//! (emptiness, membership, inclusion) exploit: they branch on the candidate
//! choice value of the state with the fewest transitions and follow the
//! unique induced assignment.

use amplitude::AlgebraicComplex;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

mod emptiness;
mod inclusion;
mod ops;
mod reduce;
mod tree;

pub use inclusion::{includes, InclusionOutcome, DEFAULT_INCLUSION_BUDGET};
pub use ops::{intersection, union};
pub use tree::{StateTree, TreeNode};

/// Index of an automaton state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Internal node symbol: either pinned to a tree level (`x3`) or usable at
/// any level (`x`), as in the parameterized predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InternalSymbol {
    Level(u32),
    Any,
}

impl fmt::Display for InternalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InternalSymbol::Level(k) => write!(f, "x{k}"),
            InternalSymbol::Any => write!(f, "x"),
        }
    }
}

pub type ChoiceSet = BTreeSet<u32>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransitionKind {
    Internal {
        symbol: InternalSymbol,
        left: StateId,
        right: StateId,
    },
    Leaf {
        value: AlgebraicComplex,
    },
}

impl TransitionKind {
    pub fn is_leaf(&self) -> bool {
        matches!(self, TransitionKind::Leaf { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub top: StateId,
    pub kind: TransitionKind,
    pub choices: ChoiceSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LstaError {
    #[error("transition from state {state} has an empty choice set")]
    EmptyChoiceSet { state: u32 },
    #[error("state {state} has transitions with overlapping choice sets (choice {choice})")]
    OverlappingChoices { state: u32, choice: u32 },
    #[error("transition references state {state} but the automaton has {num_states} states")]
    DanglingState { state: u32, num_states: usize },
    #[error("inclusion search exceeded its budget of {budget} vertices")]
    BudgetExceeded { budget: usize },
}

/// A level-synchronized tree automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lsta {
    names: Vec<String>,
    roots: BTreeSet<StateId>,
    transitions: Vec<Transition>,
    by_top: Vec<Vec<usize>>,
}

impl Lsta {
    pub fn new(
        names: Vec<String>,
        roots: BTreeSet<StateId>,
        transitions: Vec<Transition>,
    ) -> Result<Self, LstaError> {
        let num_states = names.len();
        let check = |s: StateId| {
            if s.index() >= num_states {
                Err(LstaError::DanglingState { state: s.0, num_states })
            } else {
                Ok(())
            }
        };
        for &r in &roots {
            check(r)?;
        }
        let mut by_top = vec![Vec::new(); num_states];
        for (i, t) in transitions.iter().enumerate() {
            check(t.top)?;
            if let TransitionKind::Internal { left, right, .. } = t.kind {
                check(left)?;
                check(right)?;
            }
            if t.choices.is_empty() {
                return Err(LstaError::EmptyChoiceSet { state: t.top.0 });
            }
            by_top[t.top.index()].push(i);
        }
        for (state, idxs) in by_top.iter().enumerate() {
            let mut seen: ChoiceSet = BTreeSet::new();
            for &i in idxs {
                for &c in &transitions[i].choices {
                    if !seen.insert(c) {
                        return Err(LstaError::OverlappingChoices { state: state as u32, choice: c });
                    }
                }
            }
        }
        Ok(Lsta { names, roots, transitions, by_top })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn roots(&self) -> &BTreeSet<StateId> {
        &self.roots
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s.index()]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len() as u32).map(StateId)
    }

    /// Indices into `transitions()` of the transitions with top state `s`.
    pub fn transitions_of(&self, s: StateId) -> impl Iterator<Item = &Transition> {
        self.by_top[s.index()].iter().map(|&i| &self.transitions[i])
    }

    pub(crate) fn transition_indices_of(&self, s: StateId) -> &[usize] {
        &self.by_top[s.index()]
    }

    /// The unique transition from `s` whose choice set contains `c`, if any.
    pub fn transition_for_choice(&self, s: StateId, c: u32) -> Option<&Transition> {
        self.transitions_of(s).find(|t| t.choices.contains(&c))
    }

    /// Among the given states, the one with the fewest transitions (ties by
    /// smallest id).  Branching on this state's choice values is complete:
    /// any level-wide common choice must occur in one of its sets.
    pub(crate) fn pivot(&self, states: &BTreeSet<StateId>) -> StateId {
        *states
            .iter()
            .min_by_key(|s| (self.by_top[s.index()].len(), s.0))
            .expect("pivot of empty state set")
    }

    /// Candidate common choice values seen from `states` (the pivot's values).
    pub(crate) fn candidate_choices(&self, states: &BTreeSet<StateId>) -> Vec<u32> {
        let p = self.pivot(states);
        let mut out: Vec<u32> = self
            .transitions_of(p)
            .flat_map(|t| t.choices.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Incremental construction of an automaton.
#[derive(Debug, Default, Clone)]
pub struct LstaBuilder {
    names: Vec<String>,
    roots: BTreeSet<StateId>,
    transitions: Vec<Transition>,
}

impl LstaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        let id = StateId(self.names.len() as u32);
        self.names.push(name.into());
        id
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    /// Adds a state under a name derived from existing ones.  Long derived
    /// names compound across gate pipelines (pair names contain both member
    /// names), so anything unwieldy collapses to a short fresh name.
    pub fn add_derived_state(&mut self, name: String) -> StateId {
        if name.len() <= 48 {
            self.add_state(name)
        } else {
            let fresh = format!("p{}", self.num_states());
            self.add_state(fresh)
        }
    }

    pub fn set_root(&mut self, s: StateId) {
        self.roots.insert(s);
    }

    pub fn add_internal(
        &mut self,
        top: StateId,
        symbol: InternalSymbol,
        left: StateId,
        right: StateId,
        choices: impl IntoIterator<Item = u32>,
    ) {
        self.transitions.push(Transition {
            top,
            kind: TransitionKind::Internal { symbol, left, right },
            choices: choices.into_iter().collect(),
        });
    }

    pub fn add_leaf(
        &mut self,
        top: StateId,
        value: AlgebraicComplex,
        choices: impl IntoIterator<Item = u32>,
    ) {
        self.transitions.push(Transition {
            top,
            kind: TransitionKind::Leaf { value },
            choices: choices.into_iter().collect(),
        });
    }

    pub fn add_transition(&mut self, t: Transition) {
        self.transitions.push(t);
    }

    pub fn finish(self) -> Result<Lsta, LstaError> {
        Lsta::new(self.names, self.roots, self.transitions)
    }
}
