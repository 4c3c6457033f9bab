//! Hand-transcribed tables for the three-state witness and checks that
//! compare them with what the library builds.
//!
//! A label is written as a digit string, `e` is the empty label, and a
//! collection is a comma-separated list of labels. `-` is the empty
//! collection (or the empty successor set in the átomaton).

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use atomkit::atoms::{atom_dfa_labeled, Atomaton};
use atomkit::automata::isomorphic;
use atomkit::{determinize, reverse, Dfa, StateSet};

pub struct Row {
    pub state: &'static str,
    pub next: [&'static str; 3],
    pub initial: bool,
    pub accepting: bool,
}

const fn row(state: &'static str, next: [&'static str; 3], initial: bool, accepting: bool) -> Row {
    Row {
        state,
        next,
        initial,
        accepting,
    }
}

pub fn d3() -> Dfa {
    Dfa::new("abc".chars(), vec![vec![1, 1, 0], vec![2, 0, 1], vec![0, 2, 0]], 0, [2]).unwrap()
}

pub fn label(s: &str) -> StateSet {
    if s == "e" {
        return StateSet::empty(3);
    }
    StateSet::from_indices(3, s.chars().map(|c| c.to_digit(10).expect("digit") as usize))
}

pub fn collection(s: &str) -> BTreeSet<StateSet> {
    if s == "-" {
        return BTreeSet::new();
    }
    s.split(',').map(label).collect()
}

/// The determinized reverse of `D_3`; states are single labels.
pub const REVERSED_DETERMINIZED: &[Row] = &[
    row("e", ["e", "e", "e"], false, false),
    row("0", ["2", "1", "02"], false, true),
    row("1", ["0", "0", "1"], false, false),
    row("2", ["1", "2", "e"], true, false),
    row("01", ["02", "01", "012"], false, true),
    row("02", ["12", "12", "02"], false, true),
    row("12", ["01", "02", "1"], false, false),
    row("012", ["012", "012", "012"], false, true),
];

/// The átomaton of `L(D_3)`; `next` lists successor labels.
pub const ATOMATON: &[Row] = &[
    row("e", ["e", "e", "e,2"], false, false),
    row("0", ["1", "1", "-"], true, false),
    row("1", ["2", "0", "1,12"], false, false),
    row("2", ["0", "2", "-"], false, true),
    row("01", ["12", "01", "-"], true, false),
    row("02", ["01", "12", "0,02"], true, false),
    row("12", ["02", "02", "-"], false, false),
    row("012", ["012", "012", "01,012"], true, false),
];

pub const ATOM_012: &[Row] = &[
    row("012", ["012", "012", "01,012"], true, false),
    row("01,012", ["12,012", "01,012", "01,012"], false, false),
    row("02,012", ["01,012", "12,012", "0,01,02,012"], false, false),
    row("12,012", ["02,012", "02,012", "01,012"], false, false),
    row(
        "0,01,02,012",
        ["1,01,12,012", "1,01,12,012", "0,01,02,012"],
        false,
        false,
    ),
    row(
        "1,01,12,012",
        ["2,02,12,012", "0,01,02,012", "1,01,12,012"],
        false,
        false,
    ),
    row(
        "2,02,12,012",
        ["0,01,02,012", "2,02,12,012", "0,01,02,012"],
        false,
        true,
    ),
];

pub const ATOM_01: &[Row] = &[
    row("-", ["-", "-", "-"], false, false),
    row("01", ["12", "01", "-"], true, false),
    row("02", ["01", "12", "0,02"], false, false),
    row("12", ["02", "02", "-"], false, false),
    row("0,01", ["1,12", "1,01", "-"], false, false),
    row("0,02", ["1,01", "1,12", "0,02"], false, false),
    row("1,01", ["2,12", "0,01", "1,12"], false, false),
    row("1,12", ["2,02", "0,02", "1,12"], false, false),
    row("2,02", ["0,01", "2,12", "0,02"], false, true),
    row("2,12", ["0,02", "2,02", "-"], false, true),
];

pub const ATOM_2: &[Row] = &[
    row("-", ["-", "-", "-"], false, false),
    row("0", ["1", "1", "-"], false, false),
    row("1", ["2", "0", "1,12"], false, false),
    row("2", ["0", "2", "-"], true, true),
    row("0,01", ["1,12", "1,01", "-"], false, false),
    row("0,02", ["1,01", "1,12", "0,02"], false, false),
    row("1,01", ["2,12", "0,01", "1,12"], false, false),
    row("1,12", ["2,02", "0,02", "1,12"], false, false),
    row("2,02", ["0,01", "2,12", "0,02"], false, true),
    row("2,12", ["0,02", "2,02", "-"], false, true),
];

pub const ATOM_EMPTY: &[Row] = &[
    row("e", ["e", "e", "e,2"], true, false),
    row("e,0", ["e,1", "e,1", "e,2"], false, false),
    row("e,1", ["e,2", "e,0", "e,1,2,12"], false, false),
    row("e,2", ["e,0", "e,2", "e,2"], false, true),
    row("e,0,1,01", ["e,1,2,12", "e,0,1,01", "e,1,2,12"], false, false),
    row("e,0,2,02", ["e,0,1,01", "e,1,2,12", "e,0,2,02"], false, true),
    row("e,1,2,12", ["e,0,2,02", "e,0,2,02", "e,1,2,12"], false, true),
];

/// Atom tables with the label of the atom each one accepts.
pub const ATOM_TABLES: &[(&str, &[Row])] = &[("012", ATOM_012), ("01", ATOM_01), ("2", ATOM_2), ("e", ATOM_EMPTY)];

/// The DFA a deterministic table describes, states numbered by row.
pub fn table_dfa(rows: &[Row], key: impl Fn(&str) -> BTreeSet<StateSet>) -> Dfa {
    let index: BTreeMap<BTreeSet<StateSet>, usize> = rows.iter().enumerate().map(|(i, r)| (key(r.state), i)).collect();
    let transitions = rows
        .iter()
        .map(|r| r.next.iter().map(|s| index[&key(s)]).collect())
        .collect();
    let initial = rows.iter().position(|r| r.initial).expect("one initial row");
    let finals = rows.iter().enumerate().filter(|(_, r)| r.accepting).map(|(i, _)| i);
    Dfa::new("abc".chars(), transitions, initial, finals).unwrap()
}

fn single(s: &str) -> BTreeSet<StateSet> {
    BTreeSet::from([label(s)])
}

/// Compares a DFA whose states carry keys with a table, row by row.
fn compare(
    dfa: &Dfa,
    keys: &[BTreeSet<StateSet>],
    rows: &[Row],
    key: impl Fn(&str) -> BTreeSet<StateSet>,
) -> Result<(), String> {
    let reachable = dfa.reachable().len();
    if reachable != rows.len() {
        return Err(format!("{reachable} reachable states, table has {}", rows.len()));
    }
    let state: BTreeMap<&BTreeSet<StateSet>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    for r in rows {
        let q = *state
            .get(&key(r.state))
            .ok_or_else(|| format!("row {} not built", r.state))?;
        if r.initial != (dfa.initial() == q) || r.accepting != dfa.is_final(q) {
            return Err(format!("row {}: initial or final flag differs", r.state));
        }
        for (a, expected) in r.next.iter().enumerate() {
            if keys[dfa.next(q, a)] != key(expected) {
                return Err(format!(
                    "row {} on {}: expected {}",
                    r.state,
                    "abc".as_bytes()[a] as char,
                    expected
                ));
            }
        }
    }
    if !isomorphic(dfa, &table_dfa(rows, key)).map_err(|e| e.to_string())? {
        return Err("not isomorphic to the table".into());
    }
    Ok(())
}

pub fn check_reversed_determinized() -> Result<(), String> {
    let det = determinize(&reverse(&d3())).map_err(|e| e.to_string())?;
    let keys: Vec<BTreeSet<StateSet>> = det.subsets.iter().map(|s| BTreeSet::from([s.clone()])).collect();
    compare(&det.dfa, &keys, REVERSED_DETERMINIZED, single)
}

pub fn check_atomaton(a: &Atomaton) -> Result<(), String> {
    if a.len() != ATOMATON.len() {
        return Err(format!("{} atoms, table has {}", a.len(), ATOMATON.len()));
    }
    let initials: BTreeSet<StateSet> = ATOMATON.iter().filter(|r| r.initial).map(|r| label(r.state)).collect();
    if a.initial_labels() != initials {
        return Err("initial labels differ".into());
    }
    let finals: Vec<StateSet> = ATOMATON
        .iter()
        .filter(|r| r.accepting)
        .map(|r| label(r.state))
        .collect();
    if a.final_label() != finals.first() || finals.len() != 1 {
        return Err("final label differs".into());
    }
    for r in ATOMATON {
        for (x, expected) in r.next.iter().enumerate() {
            let got = a
                .successor_labels(&label(r.state), x)
                .ok_or_else(|| format!("no atom {}", r.state))?;
            if got != collection(expected) {
                return Err(format!(
                    "atom {} on {}: expected {}",
                    r.state,
                    "abc".as_bytes()[x] as char,
                    expected
                ));
            }
        }
    }
    Ok(())
}

pub fn check_atom_table(a: &Atomaton, atom: &str, rows: &[Row]) -> Result<(), String> {
    let labeled = atom_dfa_labeled(a, &label(atom)).map_err(|e| e.to_string())?;
    let keys: Vec<BTreeSet<StateSet>> = labeled
        .collections
        .iter()
        .map(|c| c.iter().cloned().collect())
        .collect();
    compare(&labeled.dfa, &keys, rows, collection).map_err(|e| format!("atom {atom}: {e}"))
}

/// Complementing every label of every collection maps the table of the
/// full atom onto the table of the empty atom, transitions included.
pub fn check_complement_map() -> Result<(), String> {
    let psi = |s: &str| -> BTreeSet<StateSet> { collection(s).iter().map(StateSet::complement).collect() };
    let target: BTreeMap<BTreeSet<StateSet>, &Row> = ATOM_EMPTY.iter().map(|r| (collection(r.state), r)).collect();
    if target.len() != ATOM_012.len() {
        return Err("tables differ in size".into());
    }
    for r in ATOM_012 {
        let image = target
            .get(&psi(r.state))
            .ok_or_else(|| format!("no image for {}", r.state))?;
        if image.initial != r.initial {
            return Err(format!("initial state not preserved at {}", r.state));
        }
        for a in 0..3 {
            if psi(r.next[a]) != collection(image.next[a]) {
                return Err(format!("map does not commute at {} on letter {a}", r.state));
            }
        }
    }
    Ok(())
}
