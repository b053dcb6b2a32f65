use thiserror::Error;

/// Errors produced by constructors, algorithms, and the text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state set is empty")]
    EmptyStates,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("invalid identifier {0:?}: identifiers must be nonempty and contain no whitespace")]
    InvalidIdentifier(String),
    #[error("duplicate state identifier {0:?}")]
    DuplicateState(String),
    #[error("duplicate letter identifier {0:?}")]
    DuplicateLetter(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("state index {index} out of range for an automaton with {count} states")]
    StateIndexOutOfRange { index: usize, count: usize },
    #[error("letter index {index} out of range for an alphabet with {count} letters")]
    LetterIndexOutOfRange { index: usize, count: usize },
    #[error("missing transition for state {state:?} on letter {letter:?}")]
    MissingTransition { state: String, letter: String },
    #[error("duplicate transition entry for state {state:?} on letter {letter:?}")]
    DuplicateTransition { state: String, letter: String },
    #[error(
        "conflicting transition entries for state {state:?} on letter {letter:?}: {first:?} vs {second:?}"
    )]
    ConflictingTransition {
        state: String,
        letter: String,
        first: String,
        second: String,
    },
    #[error("transformations act on different state counts ({left} vs {right})")]
    MismatchedStateCount { left: usize, right: usize },
    #[error("a transformation witness may be empty only for the identity mapping")]
    NonIdentityEmptyWitness,
    #[error("invalid transformation mapping: {0}")]
    InvalidMapping(String),
    #[error("semigroup size cap exceeded: cap {cap}, {discovered} elements discovered so far")]
    SemigroupCapExceeded { cap: usize, discovered: usize },
    #[error("the empty word does not name a semigroup element")]
    EmptyWord,
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("automaton is not strongly connected")]
    NotStronglyConnected,
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
    #[error("minimal ideal is not a right group")]
    IdealNotRightGroup,
    #[error("idempotent images do not partition the state set: {0}")]
    ImagesDoNotPartition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not a congruence of the automaton")]
    NotACongruence,
    #[error("congruence pair rejected: blocks of the two partitions share the distinct states {left:?} and {right:?}")]
    CongruenceMeetNotTrivial { left: String, right: String },
    #[error("congruence pair rejected: no state lies in the block of {left:?} of the first partition and the block of {right:?} of the second")]
    CongruenceCompositionNotFull { left: String, right: String },
    #[error("first factor is not a permutation automaton")]
    FirstFactorNotPermutation,
    #[error("first factor is not strongly connected")]
    FirstFactorNotStronglyConnected,
    #[error("second factor is not synchronizing")]
    SecondFactorNotSynchronizing,
    #[error("second factor is not strongly connected")]
    SecondFactorNotStronglyConnected,
    #[error("automaton is not quasi-ideal: {0}")]
    NotQuasiIdeal(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("isomorphism search without strong connectivity supports at most {cap} states, got {states}")]
    IsomorphismSearchTooLarge { states: usize, cap: usize },
    #[error("exhaustive enumeration of {count} automata exceeds the cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u64 },
    #[error("generator exhausted {attempts} attempts without satisfying the constraints")]
    GeneratorAttemptsExhausted { attempts: u64 },
    #[error("{what} supports at most {cap} states, got {states}")]
    OracleTooLarge {
        what: &'static str,
        states: usize,
        cap: usize,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
