//! Atoms of a regular language and their quotient complexities.
//!
//! The átomaton of the language of a minimal DFA `D` is built as the
//! reverse of the determinized reverse of `D`. Each state of the
//! determinized reverse is a set `P` of states of `D`; as a state of the
//! átomaton it stands for the atom in which exactly the quotients `K_i`,
//! `i ∈ P`, appear uncomplemented.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::automata::{check_minimal, determinize, minimize, reverse, Dfa, Nfa};
use crate::bounds::{atom_bound, BigCount};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// NFA whose states are the atoms of a language, each labeled by its set
/// of uncomplemented quotient subscripts.
#[derive(Clone, Debug)]
pub struct Atomaton {
    nfa: Nfa,
    labels: Vec<StateSet>,
    index: HashMap<StateSet, usize>,
    source_n: usize,
}

impl Atomaton {
    pub(crate) fn from_parts(nfa: Nfa, labels: Vec<StateSet>, source_n: usize) -> Self {
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Atomaton {
            nfa,
            labels,
            index,
            source_n,
        }
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn labels(&self) -> &[StateSet] {
        &self.labels
    }

    pub fn label(&self, state: usize) -> &StateSet {
        &self.labels[state]
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn state_of(&self, label: &StateSet) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Labels in increasing bit-encoding order.
    pub fn sorted_labels(&self) -> Vec<StateSet> {
        let mut labels = self.labels.clone();
        labels.sort();
        labels
    }

    /// Label of the unique final state.
    pub fn final_label(&self) -> Option<&StateSet> {
        let mut finals = self.nfa.finals().iter();
        let first = finals.next()?;
        debug_assert!(finals.next().is_none(), "more than one final atom");
        Some(&self.labels[first])
    }

    pub fn initial_labels(&self) -> BTreeSet<StateSet> {
        self.nfa.initials().iter().map(|q| self.labels[q].clone()).collect()
    }

    /// Successor labels of `label` on the symbol at alphabet position `a`.
    pub fn successor_labels(&self, label: &StateSet, a: usize) -> Option<BTreeSet<StateSet>> {
        let q = self.state_of(label)?;
        Some(
            self.nfa
                .successors(q, a)
                .iter()
                .map(|p| self.labels[p].clone())
                .collect(),
        )
    }

    /// Whether both automata have the same labels, initial labels, final
    /// label, and labeled transitions.
    pub fn same_by_labels(&self, other: &Atomaton) -> bool {
        if self.nfa.alphabet() != other.nfa.alphabet()
            || self.source_n != other.source_n
            || self.len() != other.len()
            || self.initial_labels() != other.initial_labels()
            || self.final_label() != other.final_label()
        {
            return false;
        }
        self.labels.iter().all(|label| {
            (0..self.nfa.alphabet().len()).all(|a| match other.successor_labels(label, a) {
                Some(theirs) => self.successor_labels(label, a).as_ref() == Some(&theirs),
                None => false,
            })
        })
    }

    fn start_at(&self, label: &StateSet) -> Result<Nfa> {
        let q = self
            .state_of(label)
            .ok_or_else(|| Error::UnknownAtomLabel(label.subscript()))?;
        Ok(self.nfa.with_initials(StateSet::from_indices(self.len(), [q])))
    }
}

/// Builds the átomaton of the language of `d`, which must be minimal.
pub fn atomaton(d: &Dfa) -> Result<Atomaton> {
    check_minimal(d)?;
    let det = determinize(&reverse(d))?;
    Ok(Atomaton::from_parts(reverse(&det.dfa), det.subsets, d.n()))
}

/// Number of atoms of the language of the minimal DFA `d`.
pub fn atom_count(d: &Dfa) -> Result<usize> {
    Ok(atomaton(d)?.len())
}

/// The minimal DFA of one atom together with the collection of labels
/// each of its states stands for.
#[derive(Clone, Debug)]
pub struct AtomDfa {
    pub dfa: Dfa,
    pub collections: Vec<Vec<StateSet>>,
}

/// The minimal DFA of the atom labeled `label`: the átomaton restarted at
/// that single state, then determinized.
pub fn atom_dfa(atomaton: &Atomaton, label: &StateSet) -> Result<Dfa> {
    Ok(determinize(&atomaton.start_at(label)?)?.dfa)
}

/// As [`atom_dfa`], keeping the collection of labels behind each state.
pub fn atom_dfa_labeled(atomaton: &Atomaton, label: &StateSet) -> Result<AtomDfa> {
    let det = determinize(&atomaton.start_at(label)?)?;
    let collections = det
        .subsets
        .iter()
        .map(|s| s.iter().map(|q| atomaton.label(q).clone()).collect())
        .collect();
    Ok(AtomDfa {
        dfa: det.dfa,
        collections,
    })
}

/// Quotient complexity of one atom against its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomReport {
    pub label: StateSet,
    /// Number of complemented quotients.
    pub r: usize,
    pub complexity: usize,
    pub bound: BigCount,
    pub tight: bool,
}

impl Serialize for AtomReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AtomReport", 5)?;
        s.serialize_field("P", &self.label.iter().collect::<Vec<_>>())?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("complexity", &self.complexity)?;
        s.serialize_field("bound", &self.bound.to_string())?;
        s.serialize_field("tight", &self.tight)?;
        s.end()
    }
}

/// One report per atom of the language of `d`, ordered by label.
///
/// Atoms are processed in parallel on the current rayon pool.
pub fn atom_complexities(d: &Dfa) -> Result<Vec<AtomReport>> {
    if d.n() > 64 {
        return Err(Error::TooManyStates(d.n()));
    }
    let atomaton = atomaton(d)?;
    complexities_of(&atomaton)
}

pub(crate) fn complexities_of(atomaton: &Atomaton) -> Result<Vec<AtomReport>> {
    let n = atomaton.source_n();
    atomaton
        .sorted_labels()
        .into_par_iter()
        .map(|label| {
            let complexity = atom_dfa(atomaton, &label)?.n();
            let r = n - label.len();
            let bound = atom_bound(n as u32, r as u32)?;
            let tight = BigCount::from(complexity) == bound;
            Ok(AtomReport {
                label,
                r,
                complexity,
                bound,
                tight,
            })
        })
        .collect()
}

/// Whether partition refinement leaves every atom DFA of `d` unchanged in size.
pub fn verify_minimality_of_atom_dfas(d: &Dfa) -> Result<bool> {
    let atomaton = atomaton(d)?;
    atomaton
        .labels()
        .par_iter()
        .map(|label| {
            let dfa = atom_dfa(&atomaton, label)?;
            Ok(minimize(&dfa).n() == dfa.n())
        })
        .try_reduce(|| true, |x, y| Ok(x && y))
}
