//! Language inclusion between automata, with counterexample extraction.
//!
//! The check explores a graph of verdict vertices `(D, Fs)`: `D` is the set
//! of states the left automaton can occupy at the current level along some
//! partial run, and `Fs` is a set of *cover maps*, each recording one way
//! the right automaton could still simulate that partial run (a map from
//! every state in `D` to the right-hand states covering it).  Inclusion
//! fails exactly when a vertex is reachable where the left run finishes
//! (`D` becomes empty) while no cover map finishes with it (`Fs` empty at
//! that point).  Visited vertices are memoized; the search aborts with an
//! error when the number of visited vertices exceeds the budget.

use crate::{Lsta, LstaError, StateId, StateTree, TransitionKind};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// Ceiling on visited vertices used when the caller does not pick one.
pub const DEFAULT_INCLUSION_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InclusionOutcome {
    /// Every tree accepted by the left automaton is accepted by the right.
    Included,
    /// A tree accepted by the left automaton but not the right.
    NotIncluded(StateTree),
}

type CoverMap = BTreeMap<StateId, BTreeSet<StateId>>;
type LevelMap = BTreeMap<StateId, usize>;

/// Is `L(a)` a subset of `L(b)`?  `budget` bounds the number of visited
/// search vertices; exceeding it is an error, never a verdict.
pub fn includes(a: &Lsta, b: &Lsta, budget: usize) -> Result<InclusionOutcome, LstaError> {
    let mut search = Search {
        a,
        b,
        budget,
        visited: HashSet::new(),
        path: Vec::new(),
    };
    for &ra in a.roots() {
        let d: BTreeSet<StateId> = [ra].into();
        let covers: BTreeSet<CoverMap> = b
            .roots()
            .iter()
            .map(|&rb| {
                let mut m = CoverMap::new();
                m.insert(ra, [rb].into());
                m
            })
            .collect();
        if search.dfs(&d, &covers)? {
            let tree = rebuild(a, ra, &search.path);
            debug_assert!(a.accepts(&tree));
            debug_assert!(!b.accepts(&tree));
            return Ok(InclusionOutcome::NotIncluded(tree));
        }
        search.path.clear();
    }
    Ok(InclusionOutcome::Included)
}

struct Search<'x> {
    a: &'x Lsta,
    b: &'x Lsta,
    budget: usize,
    visited: HashSet<(Vec<u32>, BTreeSet<CoverMap>)>,
    /// Left-automaton level maps leading to the vertex under exploration;
    /// left in place when a failure vertex is found.
    path: Vec<LevelMap>,
}

impl Search<'_> {
    /// Returns `Ok(true)` when a failing vertex is reachable from `(d, covers)`.
    fn dfs(&mut self, d: &BTreeSet<StateId>, covers: &BTreeSet<CoverMap>) -> Result<bool, LstaError> {
        let key = (d.iter().map(|s| s.0).collect::<Vec<_>>(), covers.clone());
        if !self.visited.insert(key) {
            return Ok(false);
        }
        if self.visited.len() > self.budget {
            return Err(LstaError::BudgetExceeded { budget: self.budget });
        }
        'choices: for c in self.a.candidate_choices(d) {
            let mut level: LevelMap = BTreeMap::new();
            let mut next_d: BTreeSet<StateId> = BTreeSet::new();
            let mut all_leaf = true;
            let mut any_leaf = false;
            for &s in d {
                let Some(&i) = self
                    .a
                    .transition_indices_of(s)
                    .iter()
                    .find(|&&i| self.a.transitions()[i].choices.contains(&c))
                else {
                    continue 'choices;
                };
                match self.a.transitions()[i].kind {
                    TransitionKind::Leaf { .. } => any_leaf = true,
                    TransitionKind::Internal { left, right, .. } => {
                        all_leaf = false;
                        next_d.insert(left);
                        next_d.insert(right);
                    }
                }
                level.insert(s, i);
            }
            if any_leaf && !all_leaf {
                continue; // cannot be a level of a perfect tree
            }
            let next_covers = self.advance_covers(covers, &level);
            self.path.push(level);
            if all_leaf {
                // Left run finished; the right side keeps up iff some cover
                // map finished too (an empty successor map).
                if !next_covers.iter().any(|g| g.is_empty()) {
                    return Ok(true);
                }
            } else if self.dfs(&next_d, &next_covers)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }

    /// All ways the right automaton can extend any current cover map across
    /// the level the left automaton just took.
    fn advance_covers(&self, covers: &BTreeSet<CoverMap>, level: &LevelMap) -> BTreeSet<CoverMap> {
        let mut out: BTreeSet<CoverMap> = BTreeSet::new();
        for f in covers {
            let image: BTreeSet<StateId> = f.values().flatten().copied().collect();
            'bc: for cb in self.b.candidate_choices(&image) {
                let mut gamma_b: HashMap<StateId, usize> = HashMap::new();
                for &s in &image {
                    let Some(&i) = self
                        .b
                        .transition_indices_of(s)
                        .iter()
                        .find(|&&i| self.b.transitions()[i].choices.contains(&cb))
                    else {
                        continue 'bc;
                    };
                    gamma_b.insert(s, i);
                }
                let mut g = CoverMap::new();
                for (qa, &ia) in level {
                    for &s in &f[qa] {
                        let tb = &self.b.transitions()[gamma_b[&s]];
                        match (&self.a.transitions()[ia].kind, &tb.kind) {
                            (
                                TransitionKind::Leaf { value: va },
                                TransitionKind::Leaf { value: vb },
                            ) if va == vb => {}
                            (
                                TransitionKind::Internal { symbol: ya, left: la, right: ra },
                                TransitionKind::Internal { symbol: yb, left: lb, right: rb },
                            ) if ya == yb => {
                                g.entry(*la).or_default().insert(*lb);
                                g.entry(*ra).or_default().insert(*rb);
                            }
                            _ => continue 'bc,
                        }
                    }
                }
                out.insert(g);
            }
        }
        out
    }
}

fn rebuild(a: &Lsta, root: StateId, path: &[LevelMap]) -> StateTree {
    let mut below: HashMap<StateId, StateTree> = HashMap::new();
    for level in path.iter().rev() {
        let mut cur: HashMap<StateId, StateTree> = HashMap::new();
        for (&s, &i) in level {
            let t = match &a.transitions()[i].kind {
                TransitionKind::Leaf { value } => StateTree::leaf(value.clone()),
                TransitionKind::Internal { left, right, .. } => {
                    StateTree::branch(below[left].clone(), below[right].clone())
                }
            };
            cur.insert(s, t);
        }
        below = cur;
    }
    below.remove(&root).expect("root missing from counterexample path")
}
