//! Reversal, subset construction and trimming.

use std::collections::HashMap;

use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Reverses a DFA: initial and final states swap roles and every
/// transition `q -a-> p` becomes `p -a-> q`.
pub fn reverse(d: &Dfa) -> Nfa {
    let n = d.n();
    let k = d.alphabet().len();
    let mut eta = vec![StateSet::empty(n); n * k];
    for q in 0..n {
        for a in 0..k {
            eta[d.next(q, a) * k + a].insert(q);
        }
    }
    Nfa::from_parts(
        d.alphabet().to_vec(),
        n,
        eta,
        d.finals().clone(),
        StateSet::from_indices(n, [d.initial()]),
    )
}

/// Reverses an NFA by transposing its transition relation symbol by symbol.
pub fn reverse_nfa(m: &Nfa) -> Nfa {
    let n = m.n();
    let k = m.alphabet().len();
    let mut eta = vec![StateSet::empty(n); n * k];
    for q in 0..n {
        for a in 0..k {
            for p in m.successors(q, a) {
                eta[p * k + a].insert(q);
            }
        }
    }
    Nfa::from_parts(m.alphabet().to_vec(), n, eta, m.finals().clone(), m.initials().clone())
}

/// Result of the subset construction: the DFA and, for each of its
/// states, the subset of NFA states it stands for.
#[derive(Clone, Debug)]
pub struct Determinized {
    pub dfa: Dfa,
    pub subsets: Vec<StateSet>,
}

/// Subset construction over the subsets reachable from the initial subset.
///
/// States are numbered in breadth-first discovery order, scanning symbols
/// in alphabet order; the initial subset is state 0. The empty subset is a
/// (non-final) state exactly when it is reachable.
pub fn determinize(m: &Nfa) -> Result<Determinized> {
    let k = m.alphabet().len();
    if k == 0 {
        return Err(Error::DegenerateDeterminization);
    }
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut subsets = vec![m.initials().clone()];
    index.insert(m.initials().clone(), 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        for a in 0..k {
            let target = m.step(&subsets[head], a);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            delta.push(id);
        }
        head += 1;
    }
    let finals = StateSet::from_indices(
        subsets.len(),
        subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.intersects(m.finals()))
            .map(|(i, _)| i),
    );
    Ok(Determinized {
        dfa: Dfa::from_parts(m.alphabet().to_vec(), delta, 0, finals),
        subsets,
    })
}

/// A trimmed NFA and the map from original state indices to new ones.
#[derive(Clone, Debug)]
pub struct Trimmed {
    pub nfa: Nfa,
    pub renumbering: Vec<Option<usize>>,
}

fn closure(m: &Nfa, start: &StateSet) -> StateSet {
    let mut seen = start.clone();
    let mut stack: Vec<usize> = start.iter().collect();
    while let Some(q) = stack.pop() {
        for a in 0..m.alphabet().len() {
            for p in m.successors(q, a) {
                if !seen.contains(p) {
                    seen.insert(p);
                    stack.push(p);
                }
            }
        }
    }
    seen
}

/// Removes unreachable states and states with an empty right language.
/// Survivors keep their relative order.
pub fn trim(m: &Nfa) -> Trimmed {
    let reachable = closure(m, m.initials());
    let coreachable = closure(&reverse_nfa(m), m.finals());
    let keep = reachable.intersection(&coreachable);
    let mut renumbering = vec![None; m.n()];
    for (new, old) in keep.iter().enumerate() {
        renumbering[old] = Some(new);
    }
    let n = keep.len();
    let k = m.alphabet().len();
    let project = |set: &StateSet| StateSet::from_indices(n, set.iter().filter_map(|q| renumbering[q]));
    let mut eta = Vec::with_capacity(n * k);
    for old in keep.iter() {
        for a in 0..k {
            eta.push(project(m.successors(old, a)));
        }
    }
    let nfa = Nfa::from_parts(
        m.alphabet().to_vec(),
        n,
        eta,
        project(m.initials()),
        project(m.finals()),
    );
    Trimmed { nfa, renumbering }
}
