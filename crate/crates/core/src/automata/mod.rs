//! Deterministic and nondeterministic automata and the structural
//! operations on them.

mod dfa;
mod minimize;
mod nfa;
mod ops;

pub use dfa::{accepts, Dfa};
pub use minimize::{
    canonical, check_minimal, equivalence_classes, equivalent, is_empty, is_minimal, isomorphic,
    isomorphic_ignoring_finals, minimize, product, BoolOp,
};
pub use nfa::Nfa;
pub use ops::{determinize, reverse, reverse_nfa, trim, Determinized, Trimmed};
