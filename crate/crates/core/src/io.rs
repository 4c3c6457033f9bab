//! JSON automaton files and Graphviz DOT export.
//!
//! ```json
//! {"type": "dfa", "n": 2, "alphabet": ["a", "b"],
//!  "transitions": [[1, 0], [0, 1]], "initial": 0, "finals": [1]}
//! ```
//!
//! NFA files use `"type": "nfa"`, successor lists in place of single
//! targets and an array of initial states. An átomaton export adds a
//! `"labels"` array giving the label of each state.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::atoms::Atomaton;
use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawAutomaton {
    Dfa {
        n: usize,
        alphabet: Vec<String>,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<usize>,
    },
    Nfa {
        n: usize,
        alphabet: Vec<String>,
        transitions: Vec<Vec<Vec<usize>>>,
        initial: Vec<usize>,
        finals: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<Vec<usize>>>,
    },
}

/// A parsed automaton file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

fn symbols(alphabet: &[String]) -> Result<Vec<char>> {
    alphabet
        .iter()
        .map(|s| {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::Format(format!("alphabet entry {s:?} is not a single character"))),
            }
        })
        .collect()
}

fn check_count(n: usize, rows: usize) -> Result<()> {
    if n != rows {
        return Err(Error::Format(format!("\"n\" is {n} but {rows} transition rows given")));
    }
    Ok(())
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let raw: RawAutomaton = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    match raw {
        RawAutomaton::Dfa {
            n,
            alphabet,
            transitions,
            initial,
            finals,
        } => {
            check_count(n, transitions.len())?;
            Ok(Automaton::Dfa(Dfa::new(
                symbols(&alphabet)?,
                transitions,
                initial,
                finals,
            )?))
        }
        RawAutomaton::Nfa {
            n,
            alphabet,
            transitions,
            initial,
            finals,
            ..
        } => {
            check_count(n, transitions.len())?;
            Ok(Automaton::Nfa(Nfa::new(
                symbols(&alphabet)?,
                transitions,
                &initial,
                &finals,
            )?))
        }
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    match parse_automaton(text)? {
        Automaton::Dfa(d) => Ok(d),
        Automaton::Nfa(_) => Err(Error::Format("expected a DFA, found an NFA".into())),
    }
}

fn alphabet_strings(alphabet: &[char]) -> Vec<String> {
    alphabet.iter().map(|c| c.to_string()).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("automaton serializes")
}

pub fn dfa_to_json(d: &Dfa) -> String {
    to_json(&RawAutomaton::Dfa {
        n: d.n(),
        alphabet: alphabet_strings(d.alphabet()),
        transitions: d.table(),
        initial: d.initial(),
        finals: d.finals().iter().collect(),
    })
}

fn nfa_raw(m: &Nfa, labels: Option<&[StateSet]>) -> RawAutomaton {
    RawAutomaton::Nfa {
        n: m.n(),
        alphabet: alphabet_strings(m.alphabet()),
        transitions: m.table(),
        initial: m.initials().iter().collect(),
        finals: m.finals().iter().collect(),
        labels: labels.map(|ls| ls.iter().map(|l| l.iter().collect()).collect()),
    }
}

pub fn nfa_to_json(m: &Nfa) -> String {
    to_json(&nfa_raw(m, None))
}

/// The átomaton as an NFA file with a `"labels"` array.
pub fn atomaton_to_json(a: &Atomaton) -> String {
    to_json(&nfa_raw(a.nfa(), Some(a.labels())))
}

fn dot_edges(out: &mut String, edges: BTreeMap<(usize, usize), Vec<char>>) {
    for ((from, to), syms) in edges {
        let label: Vec<String> = syms.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "  {from} -> {to} [label=\"{}\"];", label.join(","));
    }
}

fn dot_nodes(out: &mut String, n: usize, finals: &StateSet, names: Option<&[String]>) {
    for q in 0..n {
        let shape = if finals.contains(q) { "doublecircle" } else { "circle" };
        match names {
            Some(names) => {
                let _ = writeln!(out, "  {q} [shape={shape}, label=\"{}\"];", names[q]);
            }
            None => {
                let _ = writeln!(out, "  {q} [shape={shape}];");
            }
        }
    }
}

pub fn dfa_to_dot(d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
    dot_nodes(&mut out, d.n(), d.finals(), None);
    let _ = writeln!(out, "  start -> {};", d.initial());
    let mut edges: BTreeMap<(usize, usize), Vec<char>> = BTreeMap::new();
    for q in 0..d.n() {
        for (a, &c) in d.alphabet().iter().enumerate() {
            edges.entry((q, d.next(q, a))).or_default().push(c);
        }
    }
    dot_edges(&mut out, edges);
    out.push_str("}\n");
    out
}

fn nfa_dot(m: &Nfa, names: Option<&[String]>) -> String {
    let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  start [shape=point];\n");
    dot_nodes(&mut out, m.n(), m.finals(), names);
    for q in m.initials() {
        let _ = writeln!(out, "  start -> {q};");
    }
    let mut edges: BTreeMap<(usize, usize), Vec<char>> = BTreeMap::new();
    for q in 0..m.n() {
        for (a, &c) in m.alphabet().iter().enumerate() {
            for p in m.successors(q, a) {
                edges.entry((q, p)).or_default().push(c);
            }
        }
    }
    dot_edges(&mut out, edges);
    out.push_str("}\n");
    out
}

pub fn nfa_to_dot(m: &Nfa) -> String {
    nfa_dot(m, None)
}

/// DOT for the átomaton with nodes named by their labels.
pub fn atomaton_to_dot(a: &Atomaton) -> String {
    let names: Vec<String> = a.labels().iter().map(|l| l.subscript()).collect();
    nfa_dot(a.nfa(), Some(&names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::witness;
    use proptest::prelude::*;

    #[test]
    fn parses_dfa_file() {
        let text = r#"{"type": "dfa", "n": 2, "alphabet": ["a", "b"],
                       "transitions": [[1, 0], [0, 1]], "initial": 0, "finals": [1]}"#;
        let d = parse_dfa(text).unwrap();
        assert_eq!(d.n(), 2);
        assert!(d.accepts("ab").unwrap());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_automaton("{"), Err(Error::Format(_))));
        let multi = r#"{"type": "dfa", "n": 1, "alphabet": ["ab"], "transitions": [[0]], "initial": 0, "finals": []}"#;
        assert!(matches!(parse_automaton(multi), Err(Error::Format(_))));
        let count = r#"{"type": "dfa", "n": 2, "alphabet": ["a"], "transitions": [[0]], "initial": 0, "finals": []}"#;
        assert!(matches!(parse_automaton(count), Err(Error::Format(_))));
        let range = r#"{"type": "dfa", "n": 1, "alphabet": ["a"], "transitions": [[3]], "initial": 0, "finals": []}"#;
        assert_eq!(parse_automaton(range), Err(Error::StateOutOfRange { state: 3, n: 1 }));
        let nfa =
            r#"{"type": "nfa", "n": 1, "alphabet": ["a"], "transitions": [[[0]]], "initial": [0], "finals": [0]}"#;
        assert!(parse_dfa(nfa).is_err());
        assert!(matches!(parse_automaton(nfa), Ok(Automaton::Nfa(_))));
    }

    #[test]
    fn dot_marks_finals_and_joins_symbols() {
        let dot = dfa_to_dot(&witness(3).unwrap());
        assert_eq!(dot.matches("doublecircle").count(), 1);
        assert!(dot.contains("  2 [shape=doublecircle];"));
        assert!(dot.contains("  0 -> 1 [label=\"a,b\"];"));
        assert!(dot.contains("  2 -> 0 [label=\"a,c\"];"));
    }

    proptest! {
        #[test]
        fn dfa_json_roundtrip(n in 1usize..6, k in 1usize..4, seed in proptest::collection::vec(0usize..100, 30)) {
            let alphabet: Vec<char> = "xyz".chars().take(k).collect();
            let transitions = (0..n).map(|q| (0..k).map(|a| seed[(q * k + a) % seed.len()] % n).collect()).collect();
            let finals: Vec<usize> = (0..n).filter(|q| seed[q % seed.len()] % 2 == 0).collect();
            let d = Dfa::new(alphabet, transitions, seed[0] % n, finals).unwrap();
            prop_assert_eq!(parse_automaton(&dfa_to_json(&d)).unwrap(), Automaton::Dfa(d));
        }

        #[test]
        fn nfa_json_roundtrip(n in 0usize..5, edges in proptest::collection::vec((0usize..5, 0usize..2, 0usize..5), 0..12)) {
            let mut transitions = vec![vec![Vec::new(); 2]; n];
            for &(p, a, q) in &edges {
                if p < n && q < n && !transitions[p][a].contains(&q) {
                    transitions[p][a].push(q);
                }
            }
            for row in &mut transitions {
                for targets in row.iter_mut() {
                    targets.sort_unstable();
                }
            }
            let initials: Vec<usize> = (0..n).filter(|q| q % 2 == 0).collect();
            let finals: Vec<usize> = (0..n).filter(|q| q % 3 == 0).collect();
            let m = Nfa::new("ab".chars(), transitions, &initials, &finals).unwrap();
            prop_assert_eq!(parse_automaton(&nfa_to_json(&m)).unwrap(), Automaton::Nfa(m));
        }
    }
}
