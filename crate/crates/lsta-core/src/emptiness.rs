//! Emptiness checking and bounded language enumeration.

use crate::{Lsta, StateId, StateTree, TransitionKind};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// One level of a run: the transition picked for each frontier state.
type LevelMap = BTreeMap<StateId, usize>;

impl Lsta {
    /// Finds some accepted tree, or `None` when the language is empty.
    pub fn check_nonempty(&self) -> Option<StateTree> {
        self.find_tree(None)
    }

    /// Does the automaton accept any tree of height at most `h`?
    pub fn accepts_tree_of_height_at_most(&self, h: u32) -> bool {
        self.find_tree(Some(h)).is_some()
    }

    fn find_tree(&self, max_height: Option<u32>) -> Option<StateTree> {
        for &r in &self.roots {
            let mut visited: HashSet<(Vec<u32>, Option<u32>)> = HashSet::new();
            let mut path: Vec<LevelMap> = Vec::new();
            let start: BTreeSet<StateId> = [r].into();
            if self.search(&start, max_height, &mut visited, &mut path) {
                return Some(self.rebuild(r, &path));
            }
        }
        None
    }

    /// Depth-first search over frontier state sets.  A set is marked visited
    /// on entry; whether it can finish depends only on the set (and the
    /// remaining height budget), so revisits are skipped.
    fn search(
        &self,
        frontier: &BTreeSet<StateId>,
        remaining: Option<u32>,
        visited: &mut HashSet<(Vec<u32>, Option<u32>)>,
        path: &mut Vec<LevelMap>,
    ) -> bool {
        let key = (frontier.iter().map(|s| s.0).collect::<Vec<_>>(), remaining);
        if !visited.insert(key) {
            return false;
        }
        for c in self.candidate_choices(frontier) {
            let mut level: LevelMap = BTreeMap::new();
            let mut next: BTreeSet<StateId> = BTreeSet::new();
            let mut all_leaf = true;
            let mut total = true;
            for &s in frontier {
                match self.transition_indices_of(s).iter().find(|&&i| {
                    self.transitions()[i].choices.contains(&c)
                }) {
                    Some(&i) => {
                        level.insert(s, i);
                        match self.transitions()[i].kind {
                            TransitionKind::Leaf { .. } => {}
                            TransitionKind::Internal { left, right, .. } => {
                                all_leaf = false;
                                next.insert(left);
                                next.insert(right);
                            }
                        }
                    }
                    None => {
                        total = false;
                        break;
                    }
                }
            }
            if !total {
                continue;
            }
            // A perfect tree ends with a level where every state takes a
            // leaf transition; a mix of leaf and internal picks is dead.
            let mixed = !all_leaf
                && level
                    .values()
                    .any(|&i| self.transitions()[i].kind.is_leaf());
            if mixed {
                continue;
            }
            path.push(level);
            if all_leaf {
                return true;
            }
            if remaining != Some(0) {
                let rem = remaining.map(|h| h - 1);
                if self.search(&next, rem, visited, path) {
                    return true;
                }
            }
            path.pop();
        }
        false
    }

    /// Builds the witness bottom-up from the recorded levels, sharing one
    /// subtree per state per level.
    fn rebuild(&self, root: StateId, path: &[LevelMap]) -> StateTree {
        let mut below: HashMap<StateId, StateTree> = HashMap::new();
        for level in path.iter().rev() {
            let mut cur: HashMap<StateId, StateTree> = HashMap::new();
            for (&s, &i) in level {
                let t = match &self.transitions()[i].kind {
                    TransitionKind::Leaf { value } => StateTree::leaf(value.clone()),
                    TransitionKind::Internal { left, right, .. } => {
                        StateTree::branch(below[left].clone(), below[right].clone())
                    }
                };
                cur.insert(s, t);
            }
            below = cur;
        }
        below.remove(&root).expect("root missing from top level")
    }

    /// All distinct accepted trees with exactly `h` internal levels.
    /// Exponential in general; intended for small test predicates.
    pub fn trees_of_height(&self, h: u32) -> Vec<StateTree> {
        let mut memo = HashMap::new();
        let mut out: Vec<StateTree> = Vec::new();
        for &r in &self.roots {
            let start: BTreeSet<StateId> = [r].into();
            for m in self.enumerate(&start, h, &mut memo) {
                let t = m[&r].clone();
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    fn enumerate(
        &self,
        frontier: &BTreeSet<StateId>,
        h: u32,
        memo: &mut HashMap<(Vec<u32>, u32), Vec<BTreeMap<StateId, StateTree>>>,
    ) -> Vec<BTreeMap<StateId, StateTree>> {
        let key = (frontier.iter().map(|s| s.0).collect::<Vec<_>>(), h);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut results: Vec<BTreeMap<StateId, StateTree>> = Vec::new();
        'choices: for c in self.candidate_choices(frontier) {
            let mut picks: BTreeMap<StateId, usize> = BTreeMap::new();
            let mut next: BTreeSet<StateId> = BTreeSet::new();
            for &s in frontier {
                let Some(pos) = self
                    .transition_indices_of(s)
                    .iter()
                    .find(|&&i| self.transitions()[i].choices.contains(&c))
                else {
                    continue 'choices;
                };
                let i = *pos;
                let is_leaf = self.transitions()[i].kind.is_leaf();
                if is_leaf != (h == 0) {
                    continue 'choices;
                }
                if let TransitionKind::Internal { left, right, .. } = self.transitions()[i].kind {
                    next.insert(left);
                    next.insert(right);
                }
                picks.insert(s, i);
            }
            if h == 0 {
                let m: BTreeMap<StateId, StateTree> = picks
                    .iter()
                    .map(|(&s, &i)| match &self.transitions()[i].kind {
                        TransitionKind::Leaf { value } => (s, StateTree::leaf(value.clone())),
                        _ => unreachable!(),
                    })
                    .collect();
                if !results.contains(&m) {
                    results.push(m);
                }
            } else {
                for sub in self.enumerate(&next, h - 1, memo) {
                    let m: BTreeMap<StateId, StateTree> = picks
                        .iter()
                        .map(|(&s, &i)| match &self.transitions()[i].kind {
                            TransitionKind::Internal { left, right, .. } => {
                                (s, StateTree::branch(sub[left].clone(), sub[right].clone()))
                            }
                            _ => unreachable!(),
                        })
                        .collect();
                    if !results.contains(&m) {
                        results.push(m);
                    }
                }
            }
        }
        memo.insert(key, results.clone());
        results
    }
}
