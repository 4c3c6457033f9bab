use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("expected {expected} transition entries for state {state}, found {found}")]
    TransitionArity {
        state: usize,
        expected: usize,
        found: usize,
    },
    #[error("state {state} out of range for an automaton with {n} states")]
    StateOutOfRange { state: usize, n: usize },
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },
    #[error("cannot determinize an automaton with an empty alphabet")]
    DegenerateDeterminization,
    #[error("DFA is not minimal: state {0} is unreachable")]
    UnreachableState(usize),
    #[error("DFA is not minimal: states {0} and {1} are equivalent")]
    EquivalentStates(usize, usize),
    #[error("{0} is not the label of any atom")]
    UnknownAtomLabel(String),
    #[error("atom labels need at most 64 quotients, got {0}")]
    TooManyStates(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed automaton file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
