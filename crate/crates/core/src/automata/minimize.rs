//! Hopcroft partition refinement, canonical numbering and isomorphism.

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// A refinable partition of `0..n`. Each block occupies a contiguous slice
/// of `elems`; the marked members of a block sit at the front of its slice.
struct Partition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    mid: Vec<usize>,
}

impl Partition {
    fn new(classes: &[Vec<usize>], n: usize) -> Self {
        let mut p = Partition {
            elems: Vec::with_capacity(n),
            loc: vec![0; n],
            block_of: vec![0; n],
            start: Vec::new(),
            end: Vec::new(),
            mid: Vec::new(),
        };
        for class in classes.iter().filter(|c| !c.is_empty()) {
            let b = p.start.len();
            p.start.push(p.elems.len());
            p.mid.push(p.elems.len());
            for &q in class {
                p.loc[q] = p.elems.len();
                p.block_of[q] = b;
                p.elems.push(q);
            }
            p.end.push(p.elems.len());
        }
        p
    }

    fn blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    /// Marks `q`; returns true if its block had no marks before.
    fn mark(&mut self, q: usize) -> bool {
        let b = self.block_of[q];
        let i = self.loc[q];
        let m = self.mid[b];
        if i < m {
            return false;
        }
        let other = self.elems[m];
        self.elems.swap(i, m);
        self.loc[other] = i;
        self.loc[q] = m;
        self.mid[b] += 1;
        m == self.start[b]
    }

    /// Splits the marked prefix off block `b`. Returns the new block, or
    /// `None` when every member was marked.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.mid[b];
        self.mid[b] = self.start[b];
        if m == self.end[b] {
            return None;
        }
        let nb = self.start.len();
        self.start.push(self.start[b]);
        self.end.push(m);
        self.mid.push(self.start[b]);
        self.start[b] = m;
        self.mid[b] = m;
        for i in self.start[nb]..self.end[nb] {
            self.block_of[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

/// Coarsest partition of all states of `d` into language-equivalence
/// classes. Each class is sorted; classes are ordered by smallest member.
pub fn equivalence_classes(d: &Dfa) -> Vec<Vec<usize>> {
    let n = d.n();
    let k = d.alphabet().len();
    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for (a, inv) in inverse.iter_mut().enumerate() {
            inv[d.next(q, a)].push(q);
        }
    }
    let (finals, others): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| d.is_final(q));
    let mut part = Partition::new(&[finals, others], n);
    let mut pending: Vec<usize> = (0..part.blocks()).collect();
    let mut in_pending = vec![true; part.blocks()];
    let mut touched = Vec::new();

    while let Some(splitter) = pending.pop() {
        in_pending[splitter] = false;
        let members = part.members(splitter).to_vec();
        for inv in &inverse {
            for &s in &members {
                for &p in &inv[s] {
                    if part.mark(p) {
                        touched.push(part.block_of[p]);
                    }
                }
            }
            for b in touched.drain(..) {
                if let Some(nb) = part.split(b) {
                    in_pending.push(false);
                    if in_pending[b] || part.size(nb) <= part.size(b) {
                        pending.push(nb);
                        in_pending[nb] = true;
                    } else {
                        pending.push(b);
                        in_pending[b] = true;
                    }
                }
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = (0..part.blocks())
        .map(|b| {
            let mut c = part.members(b).to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

/// Renumbers the reachable part of `d` in breadth-first order from the
/// initial state, scanning symbols in alphabet order.
pub fn canonical(d: &Dfa) -> Dfa {
    let order = d.reachable();
    let mut rank = vec![usize::MAX; d.n()];
    for (i, &q) in order.iter().enumerate() {
        rank[q] = i;
    }
    let delta = order.iter().flat_map(|&q| d.row(q).iter().map(|&t| rank[t])).collect();
    let finals = StateSet::from_indices(
        order.len(),
        order.iter().enumerate().filter(|(_, &q)| d.is_final(q)).map(|(i, _)| i),
    );
    Dfa::from_parts(d.alphabet().to_vec(), delta, 0, finals)
}

/// The minimal complete DFA for the language of `d`, canonically numbered.
/// A dead state is kept when the language requires one.
pub fn minimize(d: &Dfa) -> Dfa {
    let classes = equivalence_classes(d);
    let mut class_of = vec![0; d.n()];
    for (c, members) in classes.iter().enumerate() {
        for &q in members {
            class_of[q] = c;
        }
    }
    let delta = classes
        .iter()
        .flat_map(|members| d.row(members[0]).iter().map(|&t| class_of[t]))
        .collect();
    let finals = StateSet::from_indices(
        classes.len(),
        classes
            .iter()
            .enumerate()
            .filter(|(_, m)| d.is_final(m[0]))
            .map(|(c, _)| c),
    );
    let quotient = Dfa::from_parts(d.alphabet().to_vec(), delta, class_of[d.initial()], finals);
    canonical(&quotient)
}

/// Succeeds iff every state is reachable and no two states are equivalent.
pub fn check_minimal(d: &Dfa) -> Result<()> {
    let reachable = d.reachable();
    if reachable.len() < d.n() {
        let mut seen = vec![false; d.n()];
        for q in reachable {
            seen[q] = true;
        }
        let q = seen.iter().position(|&s| !s).expect("an unreachable state");
        return Err(Error::UnreachableState(q));
    }
    match equivalence_classes(d).into_iter().find(|c| c.len() > 1) {
        Some(c) => Err(Error::EquivalentStates(c[0], c[1])),
        None => Ok(()),
    }
}

pub fn is_minimal(d: &Dfa) -> bool {
    check_minimal(d).is_ok()
}

fn same_alphabet(d1: &Dfa, d2: &Dfa) -> Result<()> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: d1.alphabet().to_vec(),
            right: d2.alphabet().to_vec(),
        });
    }
    Ok(())
}

/// Whether the reachable parts of `d1` and `d2` are isomorphic, preserving
/// the initial state, final states and all transitions.
pub fn isomorphic(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    same_alphabet(d1, d2)?;
    Ok(canonical(d1) == canonical(d2))
}

/// Like [`isomorphic`] but final states are not compared.
pub fn isomorphic_ignoring_finals(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    same_alphabet(d1, d2)?;
    let (c1, c2) = (canonical(d1), canonical(d2));
    Ok(c1.n() == c2.n() && c1.table() == c2.table())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    AndNot,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::And => x && y,
            BoolOp::Or => x || y,
            BoolOp::Xor => x != y,
            BoolOp::AndNot => x && !y,
        }
    }
}

/// Reachable product automaton with acceptance combined by `op`.
pub fn product(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Result<Dfa> {
    same_alphabet(d1, d2)?;
    let k = d1.alphabet().len();
    let n2 = d2.n();
    let mut id = vec![usize::MAX; d1.n() * n2];
    let mut pairs = vec![(d1.initial(), d2.initial())];
    id[d1.initial() * n2 + d2.initial()] = 0;
    let mut delta = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        for a in 0..k {
            let (p2, q2) = (d1.next(p, a), d2.next(q, a));
            let slot = p2 * n2 + q2;
            if id[slot] == usize::MAX {
                id[slot] = pairs.len();
                pairs.push((p2, q2));
            }
            delta.push(id[slot]);
        }
        head += 1;
    }
    let finals = StateSet::from_indices(
        pairs.len(),
        pairs
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| op.apply(d1.is_final(p), d2.is_final(q)))
            .map(|(i, _)| i),
    );
    Ok(Dfa::from_parts(d1.alphabet().to_vec(), delta, 0, finals))
}

/// Whether no final state is reachable.
pub fn is_empty(d: &Dfa) -> bool {
    d.reachable().into_iter().all(|q| !d.is_final(q))
}

/// Language equality via emptiness of the symmetric difference.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    Ok(is_empty(&product(d1, d2, BoolOp::Xor)?))
}
