//! The witness family `D_n` whose atoms all meet their complexity bounds.
//!
//! `D_n` has states `0..n`, alphabet `a, b, c`, initial state 0 and the
//! single final state `n-1`. Letter `a` is the cycle `i -> i+1 mod n`,
//! `b` swaps 0 and 1, and `c` sends `n-1` to 0 and fixes everything else.

use std::collections::HashSet;

use crate::atoms::Atomaton;
use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Largest `n` for which the átomaton is built directly from labels.
pub const MAX_DIRECT_N: usize = 12;

pub fn witness(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("witness needs n >= 2, got {n}")));
    }
    let transitions = (0..n)
        .map(|i| {
            let a = (i + 1) % n;
            let b = match i {
                0 => 1,
                1 => 0,
                _ => i,
            };
            let c = if i == n - 1 { 0 } else { i };
            vec![a, b, c]
        })
        .collect();
    Dfa::new("abc".chars(), transitions, 0, [n - 1])
}

/// A map of `0..n` into itself; `image[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation {
    pub image: Vec<usize>,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation {
            image: (0..n).collect(),
        }
    }

    /// The transformation performed by the symbol at alphabet position `a`.
    pub fn of_letter(d: &Dfa, a: usize) -> Self {
        Transformation {
            image: (0..d.n()).map(|q| d.next(q, a)).collect(),
        }
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Transformation) -> Self {
        Transformation {
            image: self.image.iter().map(|&i| then.image[i]).collect(),
        }
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemigroupSize {
    Exact(usize),
    ExceedsCap,
}

/// Default element cap for [`semigroup_size`].
pub const DEFAULT_SEMIGROUP_CAP: usize = 2_000_000;

/// Size of the transformation semigroup generated by the letters of `d`:
/// all transformations induced by nonempty words.
pub fn semigroup_size(d: &Dfa, cap: usize) -> SemigroupSize {
    let letters: Vec<Vec<u32>> = (0..d.alphabet().len())
        .map(|a| {
            Transformation::of_letter(d, a)
                .image
                .into_iter()
                .map(|i| i as u32)
                .collect()
        })
        .collect();
    let mut seen: HashSet<Box<[u32]>> = HashSet::new();
    let mut queue: Vec<Box<[u32]>> = Vec::new();
    for t in &letters {
        let t: Box<[u32]> = t.clone().into_boxed_slice();
        if seen.insert(t.clone()) {
            queue.push(t);
        }
    }
    if seen.len() > cap {
        return SemigroupSize::ExceedsCap;
    }
    let mut head = 0;
    while head < queue.len() {
        for letter in &letters {
            let next: Box<[u32]> = queue[head].iter().map(|&i| letter[i as usize]).collect();
            if !seen.contains(&next) {
                seen.insert(next.clone());
                if seen.len() > cap {
                    return SemigroupSize::ExceedsCap;
                }
                queue.push(next);
            }
        }
        head += 1;
    }
    SemigroupSize::Exact(seen.len())
}

/// The átomaton of `L(D_n)` written down directly from the transition rules
/// of `D_n`, without any determinization.
///
/// States are all `2^n` subsets of `0..n`, state `i` carrying the label with
/// bit encoding `i`.
pub fn witness_atomaton_direct(n: usize) -> Result<Atomaton> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("witness needs n >= 2, got {n}")));
    }
    if n > MAX_DIRECT_N {
        return Err(Error::InvalidArgument(format!(
            "direct construction supports n <= {MAX_DIRECT_N}, got {n}"
        )));
    }
    let count = 1usize << n;
    let last = n - 1;
    let full = count as u64 - 1;
    let has = |s: u64, i: usize| s & (1 << i) != 0;
    let mut eta = Vec::with_capacity(count * 3);
    for s in 0..count as u64 {
        // a: every element moves up by one, modulo n
        let shifted = ((s << 1) | (s >> last)) & full;
        // b: 0 and 1 trade places
        let swapped = match (has(s, 0), has(s, 1)) {
            (true, false) => (s & !1) | 2,
            (false, true) => (s & !2) | 1,
            _ => s,
        };
        // c: depends on membership of 0 and n-1
        let c_targets: Vec<u64> = match (has(s, 0), has(s, last)) {
            (false, false) => vec![s, s | (1 << last)],
            (true, true) => vec![s, s & !(1 << last)],
            _ => vec![],
        };
        eta.push(StateSet::from_indices(count, [shifted as usize]));
        eta.push(StateSet::from_indices(count, [swapped as usize]));
        eta.push(StateSet::from_indices(count, c_targets.into_iter().map(|t| t as usize)));
    }
    let initials = StateSet::from_indices(count, (0..count).filter(|&s| s & 1 != 0));
    let finals = StateSet::from_indices(count, [1usize << last]);
    let nfa = Nfa::from_parts(vec!['a', 'b', 'c'], count, eta, initials, finals);
    let labels = (0..count as u64).map(|s| StateSet::from_bits(n, s)).collect();
    Ok(Atomaton::from_parts(nfa, labels, n))
}
