//! Brute-force reference implementations used to cross-check the symbolic
//! pipeline in tests: exact dense state vectors, dense gate application,
//! and seeded random instance generators.
//!
//! Everything here is deliberately naive (O(2^n) vectors, full language
//! enumeration) and is only meant for small qubit counts.

use amplitude::{AlgebraicComplex, Mat2};
use lsta_core::{InternalSymbol, Lsta, LstaBuilder, StateTree, TreeNode};
use rand::Rng;

/// Leaf amplitudes of a perfect tree, i.e. the state vector in basis order
/// (`|00..0>` first).  `None` when the tree is not perfect.
pub fn state_vector(tree: &StateTree) -> Option<Vec<AlgebraicComplex>> {
    if !tree.is_perfect() {
        return None;
    }
    Some(tree.leaves())
}

/// Perfect tree over the given state vector (length must be a power of two).
pub fn vector_to_tree(vec: &[AlgebraicComplex]) -> StateTree {
    assert!(vec.len().is_power_of_two(), "state vector length must be 2^n");
    if vec.len() == 1 {
        return StateTree::leaf(vec[0].clone());
    }
    let mid = vec.len() / 2;
    StateTree::branch(vector_to_tree(&vec[..mid]), vector_to_tree(&vec[mid..]))
}

/// The basis-state vector |b_1 b_2 .. b_n> (qubit 1 is the leftmost bit).
pub fn basis_vector(bits: &[u8]) -> Vec<AlgebraicComplex> {
    let n = bits.len();
    let mut idx = 0usize;
    for &b in bits {
        idx = (idx << 1) | (b as usize);
    }
    let mut v = vec![AlgebraicComplex::zero(); 1 << n];
    v[idx] = AlgebraicComplex::one();
    v
}

/// All state vectors of trees accepted at height `n`, deduplicated.
pub fn language_vectors(a: &Lsta, n: u32) -> Vec<Vec<AlgebraicComplex>> {
    a.trees_of_height(n)
        .iter()
        .map(|t| state_vector(t).expect("enumerated trees are perfect"))
        .collect()
}

fn bit_of(index: usize, target: u32, n: u32) -> usize {
    (index >> (n - target)) & 1
}

/// Applies a single-qubit gate to qubit `target` (1-based, qubit 1 is the
/// top tree level / most significant bit) of an `n`-qubit dense vector.
pub fn apply_single_dense(vec: &mut [AlgebraicComplex], n: u32, target: u32, u: &Mat2) {
    assert_eq!(vec.len(), 1usize << n);
    assert!((1..=n).contains(&target));
    let stride = 1usize << (n - target);
    for i in 0..vec.len() {
        if bit_of(i, target, n) == 0 {
            let a = vec[i].clone();
            let b = vec[i + stride].clone();
            vec[i] = u.u1.mul(&a).add(&u.u2.mul(&b));
            vec[i + stride] = u.u3.mul(&a).add(&u.u4.mul(&b));
        }
    }
}

/// Applies `u` to `target` on the amplitudes where every control qubit is 1.
pub fn apply_controlled_dense(
    vec: &mut [AlgebraicComplex],
    n: u32,
    controls: &[u32],
    target: u32,
    u: &Mat2,
) {
    assert_eq!(vec.len(), 1usize << n);
    assert!((1..=n).contains(&target));
    assert!(!controls.contains(&target));
    let stride = 1usize << (n - target);
    for i in 0..vec.len() {
        if bit_of(i, target, n) == 0 && controls.iter().all(|&c| bit_of(i, c, n) == 1) {
            let a = vec[i].clone();
            let b = vec[i + stride].clone();
            vec[i] = u.u1.mul(&a).add(&u.u2.mul(&b));
            vec[i + stride] = u.u3.mul(&a).add(&u.u4.mul(&b));
        }
    }
}

/// Squared norm of a dense vector, exact.
pub fn norm_sqr(vec: &[AlgebraicComplex]) -> AlgebraicComplex {
    let mut acc = AlgebraicComplex::zero();
    for v in vec {
        acc = acc.add(&v.norm_sqr());
    }
    acc
}

/// Configuration for `random_leveled_lsta`.
#[derive(Debug, Clone)]
pub struct RandomLstaConfig {
    /// Number of tree levels (qubits).
    pub height: u32,
    /// Maximum states per level.
    pub max_states_per_level: usize,
    /// Maximum transitions per state.
    pub max_transitions_per_state: usize,
    /// Choice values are drawn from `1..=max_choice`.
    pub max_choice: u32,
}

impl Default for RandomLstaConfig {
    fn default() -> Self {
        RandomLstaConfig {
            height: 3,
            max_states_per_level: 3,
            max_transitions_per_state: 2,
            max_choice: 3,
        }
    }
}

/// Random non-empty automaton with level-indexed symbols and a finite
/// language of perfect trees at exactly `cfg.height` levels.  Retries
/// internally until the language is non-empty.
pub fn random_leveled_lsta(rng: &mut impl Rng, cfg: &RandomLstaConfig) -> Lsta {
    loop {
        let a = random_leveled_attempt(rng, cfg);
        if a.check_nonempty().is_some() {
            return a;
        }
    }
}

fn random_amplitude(rng: &mut impl Rng) -> AlgebraicComplex {
    // Small mix of basis-friendly and irregular values.
    match rng.gen_range(0..6) {
        0 => AlgebraicComplex::zero(),
        1 => AlgebraicComplex::one(),
        2 => AlgebraicComplex::from_i64(-1),
        3 => AlgebraicComplex::inv_sqrt2(),
        4 => AlgebraicComplex::i(),
        _ => {
            let mut c = [0i64; 8];
            for x in &mut c {
                *x = rng.gen_range(-1..=1);
            }
            AlgebraicComplex::from_parts(c, rng.gen_range(0..3))
        }
    }
}

fn random_leveled_attempt(rng: &mut impl Rng, cfg: &RandomLstaConfig) -> Lsta {
    let mut b = LstaBuilder::new();
    // states[l] holds the states of level l+1; one extra layer of leaves.
    let mut levels: Vec<Vec<lsta_core::StateId>> = Vec::new();
    for l in 0..=cfg.height {
        let count = if l == 0 { 1 } else { rng.gen_range(1..=cfg.max_states_per_level) };
        let layer = (0..count).map(|i| b.add_state(format!("s{l}_{i}"))).collect();
        levels.push(layer);
    }
    for l in 0..cfg.height as usize {
        for &s in &levels[l] {
            let num_t = rng.gen_range(1..=cfg.max_transitions_per_state);
            let mut available: Vec<u32> = (1..=cfg.max_choice).collect();
            for _ in 0..num_t {
                if available.is_empty() {
                    break;
                }
                let mut choices = Vec::new();
                let take = rng.gen_range(1..=available.len().min(2));
                for _ in 0..take {
                    let i = rng.gen_range(0..available.len());
                    choices.push(available.swap_remove(i));
                }
                let next = &levels[l + 1];
                let left = next[rng.gen_range(0..next.len())];
                let right = next[rng.gen_range(0..next.len())];
                b.add_internal(s, InternalSymbol::Level(l as u32 + 1), left, right, choices);
            }
        }
    }
    for &s in levels.last().unwrap() {
        let num_t = rng.gen_range(1..=cfg.max_transitions_per_state);
        let mut available: Vec<u32> = (1..=cfg.max_choice).collect();
        for _ in 0..num_t {
            if available.is_empty() {
                break;
            }
            let mut choices = Vec::new();
            let take = rng.gen_range(1..=available.len().min(2));
            for _ in 0..take {
                let i = rng.gen_range(0..available.len());
                choices.push(available.swap_remove(i));
            }
            b.add_leaf(s, random_amplitude(rng), choices);
        }
    }
    b.set_root(levels[0][0]);
    b.finish().expect("generated automaton is structurally valid")
}

/// Automaton accepting exactly the given perfect tree, with level-indexed
/// symbols and one shared state per distinct subtree per level.
pub fn singleton_lsta(tree: &StateTree) -> Lsta {
    use std::collections::HashMap;
    fn go(
        t: &StateTree,
        depth: u32,
        b: &mut LstaBuilder,
        memo: &mut HashMap<(*const TreeNode, u32), lsta_core::StateId>,
    ) -> lsta_core::StateId {
        let key = (t.node() as *const TreeNode, depth);
        if let Some(&s) = memo.get(&key) {
            return s;
        }
        let s = match t.node() {
            TreeNode::Leaf(v) => {
                let s = b.add_state(format!("leaf_{}", memo.len()));
                b.add_leaf(s, v.clone(), [1]);
                s
            }
            TreeNode::Branch(l, r) => {
                let sl = go(l, depth + 1, b, memo);
                let sr = go(r, depth + 1, b, memo);
                let s = b.add_state(format!("n{}_{}", depth, memo.len()));
                b.add_internal(s, InternalSymbol::Level(depth), sl, sr, [1]);
                s
            }
        };
        memo.insert(key, s);
        s
    }
    let mut b = LstaBuilder::new();
    let root = go(tree, 1, &mut b, &mut std::collections::HashMap::new());
    b.set_root(root);
    b.finish().expect("singleton automaton is valid")
}

/// Automaton accepting exactly the given set of state vectors.
pub fn lsta_from_vectors(vecs: &[Vec<AlgebraicComplex>]) -> Lsta {
    let mut it = vecs.iter();
    let first = it.next().expect("at least one vector");
    let mut acc = singleton_lsta(&vector_to_tree(first));
    for v in it {
        acc = lsta_core::union(&acc, &singleton_lsta(&vector_to_tree(v)))
            .expect("union of valid automata");
    }
    acc
}

/// Convenience: a random tree drawn from the automaton's language.
pub fn sample_tree(a: &Lsta, n: u32, rng: &mut impl Rng) -> Option<StateTree> {
    let trees = a.trees_of_height(n);
    if trees.is_empty() {
        None
    } else {
        Some(trees[rng.gen_range(0..trees.len())].clone())
    }
}

/// Structural node count of the shared representation (diagnostic).
pub fn dag_size(tree: &StateTree) -> usize {
    use std::collections::HashSet;
    fn go(t: &StateTree, seen: &mut HashSet<*const TreeNode>) {
        let p = t.node() as *const TreeNode;
        if !seen.insert(p) {
            return;
        }
        if let TreeNode::Branch(l, r) = t.node() {
            go(l, seen);
            go(r, seen);
        }
    }
    let mut seen = HashSet::new();
    go(tree, &mut seen);
    seen.len()
}
