use std::collections::HashSet;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::stateset::StateSet;

pub(crate) fn check_alphabet(alphabet: &[char]) -> Result<()> {
    let mut seen = HashSet::new();
    for &c in alphabet {
        if !seen.insert(c) {
            return Err(Error::DuplicateSymbol(c));
        }
    }
    Ok(())
}

/// A complete deterministic automaton with states `0..n`.
///
/// Transitions are stored row-major: the successor of state `q` on the
/// symbol at alphabet position `a` is `delta[q * k + a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<usize>,
    initial: usize,
    finals: StateSet,
}

impl Dfa {
    /// `transitions[q][a]` is the successor of `q` on `alphabet[a]`.
    pub fn new<A, F>(alphabet: A, transitions: Vec<Vec<usize>>, initial: usize, finals: F) -> Result<Self>
    where
        A: IntoIterator<Item = char>,
        F: IntoIterator<Item = usize>,
    {
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        check_alphabet(&alphabet)?;
        let n = transitions.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for (state, row) in transitions.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::TransitionArity {
                    state,
                    expected: k,
                    found: row.len(),
                });
            }
            for target in row {
                if target >= n {
                    return Err(Error::StateOutOfRange { state: target, n });
                }
                delta.push(target);
            }
        }
        if initial >= n {
            return Err(Error::StateOutOfRange { state: initial, n });
        }
        let mut final_set = StateSet::empty(n);
        for f in finals {
            if f >= n {
                return Err(Error::StateOutOfRange { state: f, n });
            }
            final_set.insert(f);
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            finals: final_set,
        })
    }

    /// Trusted constructor for automata built by this crate.
    pub(crate) fn from_parts(alphabet: Vec<char>, delta: Vec<usize>, initial: usize, finals: StateSet) -> Self {
        debug_assert!(!alphabet.is_empty());
        debug_assert_eq!(delta.len() % alphabet.len(), 0);
        debug_assert_eq!(finals.width(), delta.len() / alphabet.len());
        Dfa {
            alphabet,
            delta,
            initial,
            finals,
        }
    }

    pub fn n(&self) -> usize {
        self.delta.len() / self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    /// Successor of `q` on the symbol at alphabet position `a`.
    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn row(&self, q: usize) -> &[usize] {
        let k = self.alphabet.len();
        &self.delta[q * k..(q + 1) * k]
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&s| s == c)
    }

    pub(crate) fn word_indices(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.symbol_index(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    /// The state reached from `from` after reading `word`.
    pub fn run_from(&self, from: usize, word: &str) -> Result<usize> {
        let mut q = from;
        for c in word.chars() {
            let a = self.symbol_index(c).ok_or(Error::UnknownSymbol(c))?;
            q = self.next(q, a);
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.is_final(self.run_from(self.initial, word)?))
    }

    /// The same automaton with a different initial state; its language is
    /// the right language of `q`.
    pub fn with_initial(&self, q: usize) -> Result<Dfa> {
        if q >= self.n() {
            return Err(Error::StateOutOfRange { state: q, n: self.n() });
        }
        let mut d = self.clone();
        d.initial = q;
        Ok(d)
    }

    pub fn with_finals(&self, finals: StateSet) -> Dfa {
        assert_eq!(finals.width(), self.n());
        let mut d = self.clone();
        d.finals = finals;
        d
    }

    /// Transition table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|q| self.row(q).to_vec()).collect()
    }

    /// The same automaton viewed as an NFA with singleton successor sets.
    pub fn to_nfa(&self) -> Nfa {
        let n = self.n();
        let eta = self.delta.iter().map(|&t| StateSet::from_indices(n, [t])).collect();
        Nfa::from_parts(
            self.alphabet.clone(),
            n,
            eta,
            StateSet::from_indices(n, [self.initial]),
            self.finals.clone(),
        )
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in self.row(q) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }
}

/// Whether `d` accepts `word`.
pub fn accepts(d: &Dfa, word: &str) -> Result<bool> {
    d.accepts(word)
}
