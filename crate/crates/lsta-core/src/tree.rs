//! Perfect binary trees with amplitude leaves, shared as immutable DAGs.

use crate::{Lsta, StateId, TransitionKind};
use amplitude::AlgebraicComplex;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

#[derive(Debug, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(AlgebraicComplex),
    Branch(StateTree, StateTree),
}

/// A reference-counted tree handle.  Equal subtrees are typically shared
/// (one node per automaton state per level), so a tree over 2^64 leaves is
/// still a small in-memory object.
#[derive(Debug, Clone)]
pub struct StateTree(Rc<TreeNode>);

impl StateTree {
    pub fn leaf(value: AlgebraicComplex) -> Self {
        StateTree(Rc::new(TreeNode::Leaf(value)))
    }

    pub fn branch(left: StateTree, right: StateTree) -> Self {
        StateTree(Rc::new(TreeNode::Branch(left, right)))
    }

    pub fn node(&self) -> &TreeNode {
        &self.0
    }

    /// Pointer identity of the shared node, usable as a DAG-traversal key.
    pub fn ptr(&self) -> *const TreeNode {
        Rc::as_ptr(&self.0)
    }

    /// Number of internal levels (a bare leaf has height 0).
    pub fn height(&self) -> u32 {
        let mut h = 0;
        let mut cur = self.clone();
        loop {
            match cur.node() {
                TreeNode::Leaf(_) => return h,
                TreeNode::Branch(l, _) => {
                    h += 1;
                    cur = l.clone();
                }
            }
        }
    }

    /// Checks that every leaf sits at the same depth.
    pub fn is_perfect(&self) -> bool {
        fn depth(t: &StateTree, memo: &mut HashMap<*const TreeNode, Option<u32>>) -> Option<u32> {
            if let Some(d) = memo.get(&t.ptr()) {
                return *d;
            }
            let d = match t.node() {
                TreeNode::Leaf(_) => Some(0),
                TreeNode::Branch(l, r) => {
                    let dl = depth(l, memo)?;
                    let dr = depth(r, memo)?;
                    if dl == dr {
                        Some(dl + 1)
                    } else {
                        None
                    }
                }
            };
            memo.insert(t.ptr(), d);
            d
        }
        depth(self, &mut HashMap::new()).is_some()
    }

    /// Number of nodes of the fully expanded term, saturating at `cap`.
    pub fn expanded_size(&self, cap: u64) -> u64 {
        fn go(t: &StateTree, cap: u64, memo: &mut HashMap<*const TreeNode, u64>) -> u64 {
            if let Some(&n) = memo.get(&t.ptr()) {
                return n;
            }
            let n = match t.node() {
                TreeNode::Leaf(_) => 1,
                TreeNode::Branch(l, r) => {
                    let a = go(l, cap, memo);
                    let b = go(r, cap, memo);
                    a.saturating_add(b).saturating_add(1).min(cap)
                }
            };
            memo.insert(t.ptr(), n);
            n
        }
        go(self, cap, &mut HashMap::new())
    }

    /// Leaf amplitudes in left-to-right order.  The leftmost leaf is the
    /// amplitude of the all-zeros basis state.
    pub fn leaves(&self) -> Vec<AlgebraicComplex> {
        let mut out = Vec::new();
        fn go(t: &StateTree, out: &mut Vec<AlgebraicComplex>) {
            match t.node() {
                TreeNode::Leaf(v) => out.push(v.clone()),
                TreeNode::Branch(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl PartialEq for StateTree {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr() == other.ptr() {
            return true;
        }
        match (self.node(), other.node()) {
            (TreeNode::Leaf(a), TreeNode::Leaf(b)) => a == b,
            (TreeNode::Branch(al, ar), TreeNode::Branch(bl, br)) => al == bl && ar == br,
            _ => false,
        }
    }
}

impl Eq for StateTree {}

impl fmt::Display for StateTree {
    /// Fully expanded term syntax: `x(x(a, b), x(c, d))`.  Callers should
    /// gate this on `expanded_size` for large trees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TreeNode::Leaf(v) => write!(f, "{v}"),
            TreeNode::Branch(l, r) => write!(f, "x({l}, {r})"),
        }
    }
}

impl Lsta {
    /// Membership test: does the automaton accept this tree?
    pub fn accepts(&self, tree: &StateTree) -> bool {
        let mut failed: HashSet<Vec<(u32, usize)>> = HashSet::new();
        self.roots
            .iter()
            .any(|&r| self.accepts_from(vec![(r, tree.clone())], &mut failed))
    }

    fn accepts_from(
        &self,
        frontier: Vec<(StateId, StateTree)>,
        failed: &mut HashSet<Vec<(u32, usize)>>,
    ) -> bool {
        if frontier.is_empty() {
            return true;
        }
        let key: Vec<(u32, usize)> = frontier
            .iter()
            .map(|(s, t)| (s.0, Rc::as_ptr(&t.0) as usize))
            .collect();
        if failed.contains(&key) {
            return false;
        }
        let states: BTreeSet<StateId> = frontier.iter().map(|&(s, _)| s).collect();
        'choices: for c in self.candidate_choices(&states) {
            let mut next: Vec<(StateId, StateTree)> = Vec::new();
            let mut seen: HashSet<(u32, usize)> = HashSet::new();
            for (s, t) in &frontier {
                let Some(tr) = self.transition_for_choice(*s, c) else {
                    continue 'choices;
                };
                match (&tr.kind, t.node()) {
                    (TransitionKind::Leaf { value }, TreeNode::Leaf(v)) if value == v => {}
                    (TransitionKind::Internal { left, right, .. }, TreeNode::Branch(tl, tr2)) => {
                        for (s2, t2) in [(*left, tl.clone()), (*right, tr2.clone())] {
                            if seen.insert((s2.0, Rc::as_ptr(&t2.0) as usize)) {
                                next.push((s2, t2));
                            }
                        }
                    }
                    _ => continue 'choices,
                }
            }
            if self.accepts_from(next, failed) {
                return true;
            }
        }
        failed.insert(key);
        false
    }
}
