use amplitude::AlgebraicComplex;
use lsta_core::{
    includes, intersection, union, InclusionOutcome, InternalSymbol, Lsta, LstaBuilder,
    LstaError, StateTree,
};

fn amp(s: &str) -> AlgebraicComplex {
    AlgebraicComplex::parse(s).unwrap()
}

fn lvl(k: u32) -> InternalSymbol {
    InternalSymbol::Level(k)
}

/// Automaton accepting exactly the single tree x1(x2(1/s2, 0), x2(0, 1/s2)),
/// i.e. the two-qubit state (|00> + |11>)/sqrt(2).
fn phi_plus() -> Lsta {
    let mut b = LstaBuilder::new();
    let a = b.add_state("a");
    let p = b.add_state("p");
    let q = b.add_state("q");
    let l1 = b.add_state("l1");
    let l0 = b.add_state("l0");
    b.add_internal(a, lvl(1), p, q, [1]);
    b.add_internal(p, lvl(2), l1, l0, [1]);
    b.add_internal(q, lvl(2), l0, l1, [1]);
    b.add_leaf(l1, amp("1/s2"), [1]);
    b.add_leaf(l0, amp("0"), [1]);
    b.set_root(a);
    b.finish().unwrap()
}

/// Automaton accepting the four Bell-basis trees.  The two choice values on
/// the middle level place the nonzero branch left or right; the two on the
/// leaf level pick the relative sign.
fn bell_basis() -> Lsta {
    let mut b = LstaBuilder::new();
    let p = b.add_state("p");
    let qp = b.add_state("q_plus");
    let qs = b.add_state("q_sign");
    let rp = b.add_state("r_plus");
    let r0 = b.add_state("r_zero");
    let rs = b.add_state("r_sign");
    b.add_internal(p, lvl(1), qp, qs, [1]);
    b.add_internal(qp, lvl(2), rp, r0, [1]);
    b.add_internal(qp, lvl(2), r0, rp, [2]);
    b.add_internal(qs, lvl(2), r0, rs, [1]);
    b.add_internal(qs, lvl(2), rs, r0, [2]);
    b.add_leaf(rp, amp("1/s2"), [1, 2]);
    b.add_leaf(r0, amp("0"), [1, 2]);
    b.add_leaf(rs, amp("1/s2"), [1]);
    b.add_leaf(rs, amp("-1/s2"), [2]);
    b.set_root(p);
    b.finish().unwrap()
}

fn tree2(a: &str, b: &str, c: &str, d: &str) -> StateTree {
    StateTree::branch(
        StateTree::branch(StateTree::leaf(amp(a)), StateTree::leaf(amp(b))),
        StateTree::branch(StateTree::leaf(amp(c)), StateTree::leaf(amp(d))),
    )
}

#[test]
fn membership_distinguishes_bell_states() {
    let single = phi_plus();
    let phi_plus_tree = tree2("1/s2", "0", "0", "1/s2");
    let phi_minus_tree = tree2("1/s2", "0", "0", "-1/s2");
    let psi_plus_tree = tree2("0", "1/s2", "1/s2", "0");
    assert!(single.accepts(&phi_plus_tree));
    assert!(!single.accepts(&phi_minus_tree));
    assert!(!single.accepts(&psi_plus_tree));

    let basis = bell_basis();
    assert!(basis.accepts(&phi_plus_tree));
    assert!(basis.accepts(&phi_minus_tree));
    assert!(basis.accepts(&psi_plus_tree));
    assert!(basis.accepts(&tree2("0", "1/s2", "-1/s2", "0")));
    assert!(!basis.accepts(&tree2("1/s2", "0", "0", "i")));
    assert!(!basis.accepts(&tree2("1", "0", "0", "0")));
    // The level synchronization matters: left branch choosing "plus-left"
    // while the right branch chooses "plus-right" must not be accepted.
    assert!(!basis.accepts(&tree2("1/s2", "0", "1/s2", "0")));
}

#[test]
fn language_enumeration_counts_bell_basis() {
    let basis = bell_basis();
    assert_eq!(basis.trees_of_height(2).len(), 4);
    assert!(basis.trees_of_height(1).is_empty());
    assert!(basis.trees_of_height(0).is_empty());
    assert!(basis.trees_of_height(3).is_empty());

    let single = phi_plus();
    let trees = single.trees_of_height(2);
    assert_eq!(trees.len(), 1);
    assert_eq!(trees[0], tree2("1/s2", "0", "0", "1/s2"));
}

#[test]
fn nonemptiness_returns_accepted_witness() {
    let basis = bell_basis();
    let w = basis.check_nonempty().expect("bell basis is non-empty");
    assert!(basis.accepts(&w));
    assert!(w.is_perfect());
    assert_eq!(w.height(), 2);

    // Empty language: the two leaf states can only fire on disjoint choice
    // values but sit on the same level, so no level-wide common choice exists.
    let mut b = LstaBuilder::new();
    let r = b.add_state("r");
    let l = b.add_state("l");
    let z = b.add_state("z");
    b.add_internal(r, lvl(1), l, z, [1]);
    b.add_leaf(l, amp("1"), [2]);
    b.add_leaf(z, amp("0"), [3]);
    b.set_root(r);
    let dead = b.finish().unwrap();
    assert!(dead.check_nonempty().is_none());

    // But choices do not propagate across levels: a level picking choice 1
    // above a level picking choice 2 is fine.
    let mut b = LstaBuilder::new();
    let r = b.add_state("r");
    let l = b.add_state("l");
    b.add_internal(r, lvl(1), l, l, [1]);
    b.add_leaf(l, amp("1"), [2]);
    b.set_root(r);
    let alive = b.finish().unwrap();
    let w = alive.check_nonempty().expect("per-level choices are independent");
    assert!(alive.accepts(&w));
}

#[test]
fn height_bounded_search() {
    let basis = bell_basis();
    assert!(!basis.accepts_tree_of_height_at_most(1));
    assert!(basis.accepts_tree_of_height_at_most(2));
    assert!(basis.accepts_tree_of_height_at_most(7));
}

#[test]
fn inclusion_and_counterexamples() {
    let single = phi_plus();
    let basis = bell_basis();
    let budget = 100_000;

    assert_eq!(includes(&single, &basis, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&single, &single, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&basis, &basis, budget).unwrap(), InclusionOutcome::Included);

    match includes(&basis, &single, budget).unwrap() {
        InclusionOutcome::NotIncluded(w) => {
            assert!(basis.accepts(&w));
            assert!(!single.accepts(&w));
        }
        InclusionOutcome::Included => panic!("basis should not be included in a single state"),
    }
}

#[test]
fn inclusion_budget_is_an_error_not_a_verdict() {
    let basis = bell_basis();
    let err = includes(&basis, &basis, 1).unwrap_err();
    assert!(matches!(err, LstaError::BudgetExceeded { budget: 1 }));
}

#[test]
fn union_and_intersection_behave_like_set_ops() {
    let single = phi_plus();
    let basis = bell_basis();
    let budget = 100_000;

    let u = union(&single, &basis).unwrap();
    assert_eq!(includes(&basis, &u, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&single, &u, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&u, &basis, budget).unwrap(), InclusionOutcome::Included);

    let i = intersection(&basis, &single).unwrap();
    assert_eq!(includes(&i, &single, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&single, &i, budget).unwrap(), InclusionOutcome::Included);

    // Intersecting with a disjoint singleton empties the language.
    let mut b = LstaBuilder::new();
    let r = b.add_state("r");
    let sl = b.add_state("sl");
    let sr = b.add_state("sr");
    let one = b.add_state("one");
    let zero = b.add_state("zero");
    b.add_internal(r, lvl(1), sl, sr, [1]);
    b.add_internal(sl, lvl(2), zero, zero, [1]);
    b.add_internal(sr, lvl(2), one, zero, [1]);
    b.add_leaf(one, amp("1"), [1]);
    b.add_leaf(zero, amp("0"), [1]);
    b.set_root(r);
    let other = b.finish().unwrap();
    let empty = intersection(&basis, &other).unwrap();
    assert!(empty.check_nonempty().is_none());
}

#[test]
fn reduction_shrinks_but_preserves_language() {
    // bell_basis with a redundant clone of q_plus, split leaf transitions,
    // and an unreachable junk state.
    let mut b = LstaBuilder::new();
    let p = b.add_state("p");
    let qp = b.add_state("q_plus");
    let qp2 = b.add_state("q_plus_copy");
    let qs = b.add_state("q_sign");
    let rp = b.add_state("r_plus");
    let r0 = b.add_state("r_zero");
    let rs = b.add_state("r_sign");
    let junk = b.add_state("junk");
    b.add_internal(p, lvl(1), qp, qs, [1]);
    for q in [qp, qp2] {
        b.add_internal(q, lvl(2), rp, r0, [1]);
        b.add_internal(q, lvl(2), r0, rp, [2]);
    }
    b.add_internal(qs, lvl(2), r0, rs, [1]);
    b.add_internal(qs, lvl(2), rs, r0, [2]);
    b.add_leaf(rp, amp("1/s2"), [1]);
    b.add_leaf(rp, amp("1/s2"), [2]);
    b.add_leaf(r0, amp("0"), [1, 2]);
    b.add_leaf(rs, amp("1/s2"), [1]);
    b.add_leaf(rs, amp("-1/s2"), [2]);
    b.add_internal(junk, lvl(2), junk, junk, [1]);
    b.set_root(p);
    let bloated = b.finish().unwrap();

    let reduced = bloated.reduce();
    assert!(reduced.num_states() < bloated.num_states());
    assert_eq!(reduced.num_states(), 6);
    assert_eq!(reduced.num_transitions(), 9);
    let budget = 100_000;
    assert_eq!(includes(&bloated, &reduced, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&reduced, &bloated, budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&reduced, &bell_basis(), budget).unwrap(), InclusionOutcome::Included);
    assert_eq!(includes(&bell_basis(), &reduced, budget).unwrap(), InclusionOutcome::Included);
}

#[test]
fn construction_rejects_malformed_automata() {
    let mut b = LstaBuilder::new();
    let r = b.add_state("r");
    b.add_leaf(r, amp("1"), [1]);
    b.add_leaf(r, amp("0"), [1, 2]);
    b.set_root(r);
    assert!(matches!(
        b.finish(),
        Err(LstaError::OverlappingChoices { state: 0, choice: 1 })
    ));

    let mut b = LstaBuilder::new();
    let r = b.add_state("r");
    b.add_leaf(r, amp("1"), []);
    b.set_root(r);
    assert!(matches!(b.finish(), Err(LstaError::EmptyChoiceSet { state: 0 })));
}
