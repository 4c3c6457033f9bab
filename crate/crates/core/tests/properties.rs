use proptest::prelude::*;

use atomkit::automata::{isomorphic, product, BoolOp};
use atomkit::oracle::{random_minimal_dfa, signature};
use atomkit::{atomaton, determinize, minimize, reverse_nfa, trim, Dfa, Nfa, StateSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALPHABET: &str = "abc";

fn nfa_strategy(max_n: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_n, 1..=3usize).prop_flat_map(|(n, k)| {
        let targets =
            proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0..n, 0..=2), k), n);
        let subset = proptest::collection::vec(0..n, 0..=n);
        (targets, subset.clone(), subset)
            .prop_map(move |(t, i, f)| Nfa::new(ALPHABET.chars().take(k), t, &i, &f).unwrap())
    })
}

fn dfa_strategy(max_n: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 1..=3usize).prop_flat_map(|(n, k)| {
        let rows = proptest::collection::vec(proptest::collection::vec(0..n, k), n);
        (rows, proptest::collection::vec(0..n, 0..=n))
            .prop_map(move |(t, f)| Dfa::new(ALPHABET.chars().take(k), t, 0, f).unwrap())
    })
}

fn words(k: usize, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| ALPHABET.chars().take(k).map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Walks every word up to `max_len` once, stepping the NFA subset and the
/// DFA state together.
fn determinize_agrees(m: &Nfa, d: &Dfa, max_len: usize) -> bool {
    let mut stack = vec![(m.initials().clone(), d.initial(), 0usize)];
    while let Some((set, q, len)) = stack.pop() {
        if set.intersects(m.finals()) != d.is_final(q) {
            return false;
        }
        if len < max_len {
            for a in 0..m.alphabet().len() {
                stack.push((m.step(&set, a), d.next(q, a), len + 1));
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinize_preserves_language(m in nfa_strategy(6)) {
        let det = determinize(&m).unwrap();
        prop_assert!(determinize_agrees(&m, &det.dfa, 8));
        for (q, s) in det.subsets.iter().enumerate() {
            prop_assert_eq!(det.dfa.is_final(q), s.intersects(m.finals()));
        }
    }

    #[test]
    fn reverse_nfa_is_an_involution(m in nfa_strategy(6)) {
        prop_assert_eq!(reverse_nfa(&reverse_nfa(&m)), m);
    }

    #[test]
    fn reverse_accepts_reversed_words(m in nfa_strategy(5)) {
        let r = reverse_nfa(&m);
        for w in words(m.alphabet().len(), 5) {
            let rev: String = w.chars().rev().collect();
            prop_assert_eq!(m.accepts(&w).unwrap(), r.accepts(&rev).unwrap());
        }
    }

    #[test]
    fn trim_preserves_language(m in nfa_strategy(6)) {
        let t = trim(&m);
        for w in words(m.alphabet().len(), 5) {
            prop_assert_eq!(m.accepts(&w).unwrap(), t.nfa.accepts(&w).unwrap());
        }
        let kept = t.renumbering.iter().flatten().count();
        prop_assert_eq!(kept, t.nfa.n());
    }

    #[test]
    fn minimize_preserves_language_and_is_idempotent(d in dfa_strategy(7)) {
        let m = minimize(&d);
        let diff = product(&d, &m, BoolOp::Xor).unwrap();
        prop_assert!(atomkit::automata::is_empty(&diff));
        prop_assert!(atomkit::automata::is_minimal(&m));
        prop_assert_eq!(minimize(&m), m);
    }

    #[test]
    fn signatures_compose(d in dfa_strategy(6), u in "[ab]{0,6}", v in "[ab]{0,6}") {
        prop_assume!(d.alphabet().len() >= 2);
        let uv = format!("{u}{v}");
        let sv = signature(&d, &v).unwrap();
        let preimage = StateSet::from_indices(d.n(), (0..d.n()).filter(|&i| sv.contains(d.run_from(i, &u).unwrap())));
        prop_assert_eq!(signature(&d, &uv).unwrap(), preimage);
    }

    #[test]
    fn every_signature_is_an_atom_label(seed in any::<u64>(), n in 1..=5usize, k in 1..=3usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_minimal_dfa(&mut rng, n, k);
        let a = atomaton(&d).unwrap();
        for w in words(k, 4) {
            prop_assert!(a.state_of(&signature(&d, &w).unwrap()).is_some());
        }
        prop_assert!(isomorphic(&minimize(&d), &d).unwrap());
    }
}
