//! Atoms of regular languages.
//!
//! Given a minimal DFA, this crate builds the átomaton of its language,
//! enumerates the atoms, measures the quotient complexity of each atom and
//! compares it with the exact upper bound for atoms with the same number
//! of complemented quotients. The witness family [`witness::witness`]
//! meets every bound; [`oracle`] holds independent brute-force checks.

pub mod atoms;
pub mod automata;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod io;
pub mod oracle;
pub mod stateset;
pub mod witness;

pub use atoms::{atom_complexities, atom_count, atom_dfa, atomaton, AtomReport, Atomaton};
pub use automata::{determinize, minimize, reverse, reverse_nfa, trim, Dfa, Nfa};
pub use bounds::{atom_bound, BigCount};
pub use error::{Error, Result};
pub use stateset::StateSet;
