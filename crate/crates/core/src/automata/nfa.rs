use crate::automata::dfa::check_alphabet;
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// A nondeterministic automaton without ε-moves, with any number of
/// initial states and set-valued (possibly empty) transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<char>,
    n: usize,
    eta: Vec<StateSet>,
    initials: StateSet,
    finals: StateSet,
}

impl Nfa {
    /// `transitions[q][a]` lists the successors of `q` on `alphabet[a]`.
    pub fn new<A>(alphabet: A, transitions: Vec<Vec<Vec<usize>>>, initials: &[usize], finals: &[usize]) -> Result<Self>
    where
        A: IntoIterator<Item = char>,
    {
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        check_alphabet(&alphabet)?;
        let n = transitions.len();
        let k = alphabet.len();
        let checked = |states: &[usize]| -> Result<StateSet> {
            match states.iter().find(|&&s| s >= n) {
                Some(&state) => Err(Error::StateOutOfRange { state, n }),
                None => Ok(StateSet::from_indices(n, states.iter().copied())),
            }
        };
        let mut eta = Vec::with_capacity(n * k);
        for (state, row) in transitions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::TransitionArity {
                    state,
                    expected: k,
                    found: row.len(),
                });
            }
            for targets in row {
                eta.push(checked(targets)?);
            }
        }
        Ok(Nfa {
            initials: checked(initials)?,
            finals: checked(finals)?,
            alphabet,
            n,
            eta,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Vec<char>,
        n: usize,
        eta: Vec<StateSet>,
        initials: StateSet,
        finals: StateSet,
    ) -> Self {
        debug_assert_eq!(eta.len(), n * alphabet.len());
        debug_assert!(eta.iter().all(|s| s.width() == n));
        debug_assert_eq!(initials.width(), n);
        debug_assert_eq!(finals.width(), n);
        Nfa {
            alphabet,
            n,
            eta,
            initials,
            finals,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initials(&self) -> &StateSet {
        &self.initials
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    /// Successors of `q` on the symbol at alphabet position `a`.
    #[inline]
    pub fn successors(&self, q: usize, a: usize) -> &StateSet {
        &self.eta[q * self.alphabet.len() + a]
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&s| s == c)
    }

    /// Image of a set of states under one symbol.
    pub fn step(&self, from: &StateSet, a: usize) -> StateSet {
        let mut out = StateSet::empty(self.n);
        for q in from {
            out.union_with(self.successors(q, a));
        }
        out
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        let mut current = self.initials.clone();
        for c in word.chars() {
            let a = self.symbol_index(c).ok_or(Error::UnknownSymbol(c))?;
            current = self.step(&current, a);
        }
        Ok(current.intersects(&self.finals))
    }

    /// The same automaton with a different set of initial states.
    pub fn with_initials(&self, initials: StateSet) -> Nfa {
        assert_eq!(initials.width(), self.n);
        Nfa {
            initials,
            ..self.clone()
        }
    }

    /// Successor lists as nested rows.
    pub fn table(&self) -> Vec<Vec<Vec<usize>>> {
        (0..self.n)
            .map(|q| {
                (0..self.alphabet.len())
                    .map(|a| self.successors(q, a).iter().collect())
                    .collect()
            })
            .collect()
    }
}
