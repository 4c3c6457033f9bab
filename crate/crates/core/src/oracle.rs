//! Brute-force oracles for atoms that never go through the átomaton.
//!
//! A word `w` lies in the atom labeled `P` exactly when `P` is its
//! signature, the set of states of `D` from which `w` is accepted. The
//! oracles here work on signatures and on the transformations words
//! induce on the states of `D`.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{atom_dfa, atomaton, AtomReport, Atomaton};
use crate::automata::{equivalent, is_minimal, minimize, product, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Environment variable holding the seed of the random-DFA suite.
pub const SEED_ENV: &str = "ATOMKIT_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_a70b;

/// Largest `n` for which the tuple-product oracle is run.
pub const TUPLE_ORACLE_MAX_N: usize = 6;

/// The set of states of `d` from which `word` is accepted.
pub fn signature(d: &Dfa, word: &str) -> Result<StateSet> {
    let word = d.word_indices(word)?;
    Ok(StateSet::from_indices(
        d.n(),
        (0..d.n()).filter(|&i| d.is_final(word.iter().fold(i, |q, &a| d.next(q, a)))),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureSearch {
    /// Signatures of all words.
    Closure,
    /// Signatures of words of length at most the given bound.
    MaxLen(usize),
}

/// Signatures reachable by extending words one letter at a time.
///
/// Prepending a letter `a` to `w` maps the signature `S` of `w` to the
/// preimage `{i : δ(i, a) ∈ S}`, so the search starts from the signature
/// of the empty word (the final states) and closes under preimages.
pub fn reachable_signatures(d: &Dfa, search: SignatureSearch) -> BTreeSet<StateSet> {
    let preimage =
        |s: &StateSet, a: usize| StateSet::from_indices(d.n(), (0..d.n()).filter(|&i| s.contains(d.next(i, a))));
    let limit = match search {
        SignatureSearch::Closure => usize::MAX,
        SignatureSearch::MaxLen(len) => len,
    };
    let mut seen = BTreeSet::from([d.finals().clone()]);
    let mut frontier = vec![d.finals().clone()];
    let mut depth = 0;
    while !frontier.is_empty() && depth < limit {
        let mut next = Vec::new();
        for s in &frontier {
            for a in 0..d.alphabet().len() {
                let p = preimage(s, a);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    seen
}

/// The transition monoid of `d` as an automaton: states are the tuples
/// `(δ(0,w), .., δ(n-1,w))` reachable from the identity tuple.
#[derive(Clone, Debug)]
pub struct TupleProduct {
    source: Dfa,
    tuples: Vec<Box<[u32]>>,
    delta: Vec<usize>,
}

impl TupleProduct {
    pub fn new(d: &Dfa) -> Self {
        let k = d.alphabet().len();
        let identity: Box<[u32]> = (0..d.n() as u32).collect();
        let mut index: HashMap<Box<[u32]>, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut tuples = vec![identity];
        let mut delta = Vec::new();
        let mut head = 0;
        while head < tuples.len() {
            for a in 0..k {
                let next: Box<[u32]> = tuples[head].iter().map(|&q| d.next(q as usize, a) as u32).collect();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    tuples.push(next);
                    tuples.len() - 1
                });
                delta.push(id);
            }
            head += 1;
        }
        TupleProduct {
            source: d.clone(),
            tuples,
            delta,
        }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    fn signature_of(&self, tuple: &[u32]) -> StateSet {
        StateSet::from_indices(
            self.source.n(),
            tuple
                .iter()
                .enumerate()
                .filter(|(_, &q)| self.source.is_final(q as usize))
                .map(|(i, _)| i),
        )
    }

    /// Minimal DFA of the atom labeled `label`, which may be empty.
    pub fn atom_dfa(&self, label: &StateSet) -> Result<Dfa> {
        if label.width() != self.source.n() {
            return Err(Error::InvalidArgument(format!(
                "label width {} does not match {} states",
                label.width(),
                self.source.n()
            )));
        }
        let finals = StateSet::from_indices(
            self.tuples.len(),
            self.tuples
                .iter()
                .enumerate()
                .filter(|(_, t)| self.signature_of(t) == *label)
                .map(|(i, _)| i),
        );
        let dfa = Dfa::from_parts(self.source.alphabet().to_vec(), self.delta.clone(), 0, finals);
        Ok(minimize(&dfa))
    }
}

/// Minimal DFA of the atom labeled `label`, built from the product of `n`
/// copies of `d` rather than from the átomaton.
pub fn tuple_product_atom_dfa(d: &Dfa, label: &StateSet) -> Result<Dfa> {
    TupleProduct::new(d).atom_dfa(label)
}

/// Whether every word of length at most `max_len` is accepted by exactly
/// one atom DFA, namely the one labeled by the word's signature.
pub fn partition_check(d: &Dfa, max_len: usize) -> Result<bool> {
    let atomaton = atomaton(d)?;
    let labels = atomaton.labels().to_vec();
    let dfas = labels
        .iter()
        .map(|l| atom_dfa(&atomaton, l))
        .collect::<Result<Vec<_>>>()?;
    let k = d.alphabet().len();
    let start_tuple: Vec<usize> = (0..d.n()).collect();
    let start_atoms: Vec<usize> = dfas.iter().map(|a| a.initial()).collect();
    let mut stack = vec![(start_tuple, start_atoms, 0usize)];
    while let Some((tuple, atoms, len)) = stack.pop() {
        let sig = StateSet::from_indices(d.n(), (0..d.n()).filter(|&i| d.is_final(tuple[i])));
        let mut accepting = (0..dfas.len()).filter(|&j| dfas[j].is_final(atoms[j]));
        let ok = match (accepting.next(), accepting.next()) {
            (Some(j), None) => labels[j] == sig,
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
        if len < max_len {
            for a in 0..k {
                let t = tuple.iter().map(|&q| d.next(q, a)).collect();
                let s = atoms.iter().zip(&dfas).map(|(&q, m)| m.next(q, a)).collect();
                stack.push((t, s, len + 1));
            }
        }
    }
    Ok(true)
}

/// Whether the quotient `K_i` equals the union of the atoms whose label
/// contains `i`, decided by product-automaton emptiness.
pub fn quotient_union_check(d: &Dfa, i: usize) -> Result<bool> {
    let quotient = d.with_initial(i)?;
    let atomaton = atomaton(d)?;
    let mut union: Option<Dfa> = None;
    for label in atomaton.labels().iter().filter(|l| l.contains(i)) {
        let atom = atom_dfa(&atomaton, label)?;
        union = Some(match union {
            None => atom,
            Some(acc) => minimize(&product(&acc, &atom, BoolOp::Or)?),
        });
    }
    let union = match union {
        Some(u) => u,
        None => Dfa::from_parts(
            d.alphabet().to_vec(),
            vec![0; d.alphabet().len()],
            0,
            StateSet::empty(1),
        ),
    };
    equivalent(&union, &quotient)
}

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A uniformly random minimal DFA with `n` states over the first
/// `alphabet_size` letters of `a..z`: transitions and a nonempty final set
/// are drawn uniformly and rejected until the result is minimal.
pub fn random_minimal_dfa<R: Rng>(rng: &mut R, n: usize, alphabet_size: usize) -> Dfa {
    assert!(n >= 1 && (1..=26).contains(&alphabet_size));
    let alphabet: Vec<char> = ('a'..='z').take(alphabet_size).collect();
    loop {
        let transitions = (0..n)
            .map(|_| (0..alphabet_size).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        let finals: Vec<usize> = loop {
            let f: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if !f.is_empty() {
                break f;
            }
        };
        let d = Dfa::new(alphabet.iter().copied(), transitions, 0, finals).expect("valid by construction");
        if is_minimal(&d) {
            return d;
        }
    }
}

/// `count` seeded random minimal DFAs with 1..=max_n states over `{a, b}`
/// or `{a, b, c}`.
pub fn random_minimal_dfas(seed: u64, count: usize, max_n: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(2..=3);
            random_minimal_dfa(&mut rng, n, k)
        })
        .collect()
}

/// Outcome of one named consistency check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Compares the átomaton pipeline against the oracles for one DFA.
///
/// Always checks the label set against the signature closure, minimality
/// of every atom DFA and every complexity against its bound. With
/// `tuple_oracle`, and when `d` has at most [`TUPLE_ORACLE_MAX_N`] states,
/// also recomputes every complexity with the tuple product.
pub fn cross_check(d: &Dfa, atomaton: &Atomaton, reports: &[AtomReport], tuple_oracle: bool) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let signatures = reachable_signatures(d, SignatureSearch::Closure);
    let labels: BTreeSet<StateSet> = atomaton.labels().iter().cloned().collect();
    checks.push(Check::new(
        "signatures",
        signatures == labels,
        format!("{} signatures, {} atom labels", signatures.len(), labels.len()),
    ));

    let irreducible = atomaton
        .labels()
        .par_iter()
        .map(|l| atom_dfa(atomaton, l).map(|m| minimize(&m).n() == m.n()))
        .collect::<Result<Vec<bool>>>()?;
    let reducible = irreducible.iter().filter(|&&ok| !ok).count();
    checks.push(Check::new(
        "minimality",
        reducible == 0,
        format!("{reducible} atom DFAs shrink under partition refinement"),
    ));

    let over: Vec<String> = reports
        .iter()
        .filter(|r| num_bigint::BigUint::from(r.complexity) > r.bound)
        .map(|r| r.label.subscript())
        .collect();
    checks.push(Check::new(
        "bounds",
        over.is_empty(),
        if over.is_empty() {
            "every complexity within its bound".to_string()
        } else {
            format!("over bound: {}", over.join(" "))
        },
    ));

    if tuple_oracle {
        if d.n() <= TUPLE_ORACLE_MAX_N {
            let tuples = TupleProduct::new(d);
            let mismatches = reports
                .par_iter()
                .map(|r| Ok((r, tuples.atom_dfa(&r.label)?.n())))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(r, c)| r.complexity != *c)
                .map(|(r, c)| format!("{}: pipeline {} vs tuples {}", r.label.subscript(), r.complexity, c))
                .collect::<Vec<_>>();
            checks.push(Check::new(
                "tuple-oracle",
                mismatches.is_empty(),
                if mismatches.is_empty() {
                    format!("{} tuples, all complexities agree", tuples.len())
                } else {
                    mismatches.join("; ")
                },
            ));
        } else {
            checks.push(Check::new(
                "tuple-oracle",
                true,
                format!("skipped: n = {} exceeds {}", d.n(), TUPLE_ORACLE_MAX_N),
            ));
        }
    }
    Ok(checks)
}
