//! Size reduction: trimming unreachable/unproductive states and merging
//! duplicate transitions and interchangeable states.

use crate::{ChoiceSet, Lsta, StateId, Transition, TransitionKind};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

impl Lsta {
    /// Removes states that are not reachable from a root or that can never
    /// derive a finished (all-leaf) subtree, together with their transitions.
    /// Both conditions are computed on the choice-free over-approximation,
    /// so trimming never changes the accepted language.
    pub fn trim(&self) -> Lsta {
        // Productive: least fixpoint from leaf transitions upward.
        let mut productive = vec![false; self.num_states()];
        let mut changed = true;
        while changed {
            changed = false;
            for t in self.transitions() {
                if productive[t.top.index()] {
                    continue;
                }
                let ok = match &t.kind {
                    TransitionKind::Leaf { .. } => true,
                    TransitionKind::Internal { left, right, .. } => {
                        productive[left.index()] && productive[right.index()]
                    }
                };
                if ok {
                    productive[t.top.index()] = true;
                    changed = true;
                }
            }
        }
        // Reachable: breadth-first from the roots through productive states.
        let mut reachable = vec![false; self.num_states()];
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for &r in self.roots() {
            if productive[r.index()] && !reachable[r.index()] {
                reachable[r.index()] = true;
                queue.push_back(r);
            }
        }
        while let Some(s) = queue.pop_front() {
            for t in self.transitions_of(s) {
                if let TransitionKind::Internal { left, right, .. } = t.kind {
                    for c in [left, right] {
                        if productive[c.index()] && !reachable[c.index()] {
                            reachable[c.index()] = true;
                            queue.push_back(c);
                        }
                    }
                }
            }
        }
        let keep: Vec<bool> = (0..self.num_states())
            .map(|i| reachable[i] && productive[i])
            .collect();
        let mut remap: Vec<Option<StateId>> = vec![None; self.num_states()];
        let mut names = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                remap[i] = Some(StateId(names.len() as u32));
                names.push(self.state_names()[i].clone());
            }
        }
        let mut transitions = Vec::new();
        for t in self.transitions() {
            let Some(top) = remap[t.top.index()] else { continue };
            let kind = match &t.kind {
                TransitionKind::Internal { symbol, left, right } => {
                    let (Some(l), Some(r)) = (remap[left.index()], remap[right.index()]) else {
                        continue;
                    };
                    TransitionKind::Internal { symbol: *symbol, left: l, right: r }
                }
                leaf => leaf.clone(),
            };
            transitions.push(Transition { top, kind, choices: t.choices.clone() });
        }
        let roots = self
            .roots()
            .iter()
            .filter_map(|r| remap[r.index()])
            .collect();
        Lsta::new(names, roots, transitions).expect("trim preserves validity")
    }

    /// Merges transitions that differ only in their choice sets (the sets
    /// are unioned) and then states whose transition sets are identical.
    /// Repeats to a fixpoint and finishes with a trim.
    pub fn reduce(&self) -> Lsta {
        let mut cur = self.trim();
        loop {
            let step = cur.merge_duplicate_transitions().merge_identical_states();
            if step.num_states() == cur.num_states()
                && step.num_transitions() == cur.num_transitions()
            {
                return step.trim();
            }
            cur = step;
        }
    }

    fn merge_duplicate_transitions(&self) -> Lsta {
        let mut grouped: BTreeMap<(StateId, TransitionKind), ChoiceSet> = BTreeMap::new();
        let mut order: Vec<(StateId, TransitionKind)> = Vec::new();
        for t in self.transitions() {
            let key = (t.top, t.kind.clone());
            grouped
                .entry(key.clone())
                .and_modify(|c| c.extend(t.choices.iter().copied()))
                .or_insert_with(|| {
                    order.push(key.clone());
                    t.choices.clone()
                });
        }
        let transitions = order
            .into_iter()
            .map(|key| {
                let choices = grouped[&key].clone();
                Transition { top: key.0, kind: key.1, choices }
            })
            .collect();
        Lsta::new(self.state_names().to_vec(), self.roots().clone(), transitions)
            .expect("merging duplicate transitions preserves validity")
    }

    fn merge_identical_states(&self) -> Lsta {
        // Signature of a state: its outgoing transitions without the top.
        let signature = |s: StateId| -> Vec<(TransitionKind, ChoiceSet)> {
            let mut v: Vec<_> = self
                .transitions_of(s)
                .map(|t| (t.kind.clone(), t.choices.clone()))
                .collect();
            v.sort();
            v
        };
        let mut by_sig: BTreeMap<Vec<(TransitionKind, ChoiceSet)>, StateId> = BTreeMap::new();
        let mut target: Vec<StateId> = Vec::with_capacity(self.num_states());
        for s in self.states() {
            let rep = *by_sig.entry(signature(s)).or_insert(s);
            target.push(rep);
        }
        let map = |s: StateId| target[s.index()];
        let mut transitions: Vec<Transition> = Vec::new();
        let mut seen: BTreeSet<(StateId, TransitionKind, ChoiceSet)> = BTreeSet::new();
        for t in self.transitions() {
            if map(t.top) != t.top {
                // This state's transitions are duplicated at its representative.
                continue;
            }
            let kind = match &t.kind {
                TransitionKind::Internal { symbol, left, right } => TransitionKind::Internal {
                    symbol: *symbol,
                    left: map(*left),
                    right: map(*right),
                },
                leaf => leaf.clone(),
            };
            if seen.insert((t.top, kind.clone(), t.choices.clone())) {
                transitions.push(Transition { top: t.top, kind, choices: t.choices.clone() });
            }
        }
        let roots = self.roots().iter().map(|&r| map(r)).collect();
        Lsta::new(self.state_names().to_vec(), roots, transitions)
            .expect("merging identical states preserves validity")
            .trim()
    }
}
