//! Union and intersection of automata.

use crate::{Lsta, LstaBuilder, LstaError, StateId, Transition, TransitionKind};
use std::collections::BTreeMap;

/// Disjoint union: states of `b` are renamed after those of `a`, roots are
/// combined.  A run stays inside one operand, so choice values need no
/// adjustment.
pub fn union(a: &Lsta, b: &Lsta) -> Result<Lsta, LstaError> {
    let mut builder = LstaBuilder::new();
    for s in a.states() {
        builder.add_state(format!("a_{}", a.state_name(s)));
    }
    let offset = a.num_states() as u32;
    for s in b.states() {
        builder.add_state(format!("b_{}", b.state_name(s)));
    }
    for t in a.transitions() {
        builder.add_transition(t.clone());
    }
    let shift = |s: StateId| StateId(s.0 + offset);
    for t in b.transitions() {
        let kind = match &t.kind {
            TransitionKind::Internal { symbol, left, right } => TransitionKind::Internal {
                symbol: *symbol,
                left: shift(*left),
                right: shift(*right),
            },
            leaf => leaf.clone(),
        };
        builder.add_transition(Transition { top: shift(t.top), kind, choices: t.choices.clone() });
    }
    for &r in a.roots() {
        builder.set_root(r);
    }
    for &r in b.roots() {
        builder.set_root(shift(r));
    }
    builder.finish()
}

/// Product construction.  A tree is accepted iff both operands accept it;
/// a common choice in the product corresponds to a pair of common choices,
/// one per operand, so product choice values are pairs `(c_a, c_b)`
/// renumbered through a global dictionary in lexicographic order from 0.
pub fn intersection(a: &Lsta, b: &Lsta) -> Result<Lsta, LstaError> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for ta in a.transitions() {
        for tb in b.transitions() {
            for &ca in &ta.choices {
                for &cb in &tb.choices {
                    pairs.push((ca, cb));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let dict: BTreeMap<(u32, u32), u32> =
        pairs.into_iter().enumerate().map(|(i, p)| (p, i as u32)).collect();

    let mut builder = LstaBuilder::new();
    let mut ids: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
    for sa in a.states() {
        for sb in b.states() {
            let id = builder.add_state(format!("{}*{}", a.state_name(sa), b.state_name(sb)));
            ids.insert((sa, sb), id);
        }
    }
    for sa in a.states() {
        for sb in b.states() {
            let top = ids[&(sa, sb)];
            for ta in a.transitions_of(sa) {
                for tb in b.transitions_of(sb) {
                    let kind = match (&ta.kind, &tb.kind) {
                        (
                            TransitionKind::Internal { symbol: ya, left: la, right: ra },
                            TransitionKind::Internal { symbol: yb, left: lb, right: rb },
                        ) if ya == yb => TransitionKind::Internal {
                            symbol: *ya,
                            left: ids[&(*la, *lb)],
                            right: ids[&(*ra, *rb)],
                        },
                        (
                            TransitionKind::Leaf { value: va },
                            TransitionKind::Leaf { value: vb },
                        ) if va == vb => TransitionKind::Leaf { value: va.clone() },
                        _ => continue,
                    };
                    let dict = &dict;
                    let choices = ta
                        .choices
                        .iter()
                        .flat_map(|&ca| tb.choices.iter().map(move |&cb| dict[&(ca, cb)]))
                        .collect();
                    builder.add_transition(Transition { top, kind, choices });
                }
            }
        }
    }
    for &ra in a.roots() {
        for &rb in b.roots() {
            builder.set_root(ids[&(ra, rb)]);
        }
    }
    builder.finish().map(|l| l.trim())
}
