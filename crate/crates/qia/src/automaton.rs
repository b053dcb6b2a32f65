//! Finite deterministic semiautomata and the transformations their words induce.
//!
//! An [`Automaton`] is a nonempty finite state set, a nonempty finite alphabet,
//! and a total transition table. States and letters carry external string
//! identifiers but are handled internally as dense indices; the declared
//! orderings are part of the structure and fix both canonical indices and the
//! shortlex order on words.
//!
//! Every word over the alphabet induces a [`Transformation`] of the state set.
//! Words act on the right: reading `xy` means reading `x` first, so the
//! mapping of `xy` is the mapping of `x` followed by the mapping of `y`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word over an automaton's alphabet, stored as letter indices.
///
/// Words are ordered shortlex: first by length, then lexicographically by
/// letter index. The empty word acts as the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: usize) -> Self {
        Word(vec![l])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Concatenation `self` then `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Extension by a single letter.
    pub fn push(&self, l: usize) -> Word {
        let mut letters = self.0.clone();
        letters.push(l);
        Word(letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A total map from states to states together with a witness word inducing it.
///
/// Equality and hashing consider the mapping only; the witness is bookkeeping.
/// An empty witness is permitted only for the identity mapping.
#[derive(Debug, Clone)]
pub struct Transformation {
    mapping: Vec<usize>,
    witness: Word,
}

impl Transformation {
    /// Builds a transformation from an explicit mapping and witness.
    pub fn new(mapping: Vec<usize>, witness: Word) -> Result<Self> {
        let n = mapping.len();
        if n == 0 {
            return Err(Error::InvalidMapping("mapping is empty".into()));
        }
        if let Some(&bad) = mapping.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidMapping(format!(
                "target {bad} out of range for {n} states"
            )));
        }
        if witness.is_empty() && !mapping.iter().enumerate().all(|(s, &t)| s == t) {
            return Err(Error::NonIdentityEmptyWitness);
        }
        Ok(Transformation { mapping, witness })
    }

    /// The identity transformation on `n` states, witnessed by the empty word.
    pub fn identity(n: usize) -> Self {
        Transformation {
            mapping: (0..n).collect(),
            witness: Word::empty(),
        }
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn witness(&self) -> &Word {
        &self.witness
    }

    pub fn apply(&self, state: usize) -> usize {
        self.mapping[state]
    }

    /// The image as a sorted list of distinct states.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.mapping.len()];
        for &t in &self.mapping {
            seen[t] = true;
        }
        (0..self.mapping.len()).filter(|&s| seen[s]).collect()
    }

    /// Number of distinct states in the image.
    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.mapping.len()];
        let mut count = 0;
        for &t in &self.mapping {
            if !seen[t] {
                seen[t] = true;
                count += 1;
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(s, &t)| s == t)
    }

    pub fn is_bijective(&self) -> bool {
        self.rank() == self.mapping.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mapping.iter().all(|&t| self.mapping[t] == t)
    }
}

impl PartialEq for Transformation {
    fn eq(&self, other: &Self) -> bool {
        self.mapping == other.mapping
    }
}

impl Eq for Transformation {}

impl std::hash::Hash for Transformation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mapping.hash(state);
    }
}

/// A finite deterministic semiautomaton with a total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    states: Vec<String>,
    alphabet: Vec<String>,
    table: Vec<Vec<usize>>,
    state_index: HashMap<String, usize>,
    letter_index: HashMap<String, usize>,
}

fn check_identifier(id: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidIdentifier(id.to_string()));
    }
    Ok(())
}

fn index_identifiers(
    ids: &[String],
    duplicate: fn(String) -> Error,
) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        check_identifier(id)?;
        if index.insert(id.clone(), i).is_some() {
            return Err(duplicate(id.clone()));
        }
    }
    Ok(index)
}

impl Automaton {
    /// Builds an automaton from explicit `(state, letter, target)` entries.
    ///
    /// Every `(state, letter)` pair must appear exactly once. Identifier order
    /// in `states` and `alphabet` is preserved and meaningful.
    pub fn new<S, L, E>(states: &[S], alphabet: &[L], entries: &[(E, E, E)]) -> Result<Self>
    where
        S: AsRef<str>,
        L: AsRef<str>,
        E: AsRef<str>,
    {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let alphabet: Vec<String> = alphabet.iter().map(|l| l.as_ref().to_string()).collect();
        if states.is_empty() {
            return Err(Error::EmptyStates);
        }
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let state_index = index_identifiers(&states, Error::DuplicateState)?;
        let letter_index = index_identifiers(&alphabet, Error::DuplicateLetter)?;

        let mut table = vec![vec![usize::MAX; alphabet.len()]; states.len()];
        for (s, l, t) in entries {
            let (s, l, t) = (s.as_ref(), l.as_ref(), t.as_ref());
            let si = *state_index
                .get(s)
                .ok_or_else(|| Error::UnknownState(s.to_string()))?;
            let li = *letter_index
                .get(l)
                .ok_or_else(|| Error::UnknownLetter(l.to_string()))?;
            let ti = *state_index
                .get(t)
                .ok_or_else(|| Error::UnknownState(t.to_string()))?;
            let cell = &mut table[si][li];
            if *cell != usize::MAX {
                if *cell == ti {
                    return Err(Error::DuplicateTransition {
                        state: s.to_string(),
                        letter: l.to_string(),
                    });
                }
                return Err(Error::ConflictingTransition {
                    state: s.to_string(),
                    letter: l.to_string(),
                    first: states[*cell].clone(),
                    second: t.to_string(),
                });
            }
            *cell = ti;
        }
        for (si, row) in table.iter().enumerate() {
            for (li, &t) in row.iter().enumerate() {
                if t == usize::MAX {
                    return Err(Error::MissingTransition {
                        state: states[si].clone(),
                        letter: alphabet[li].clone(),
                    });
                }
            }
        }
        Ok(Automaton {
            states,
            alphabet,
            table,
            state_index,
            letter_index,
        })
    }

    /// Builds an automaton from one row of target names per state.
    pub fn from_rows<S, L, E>(states: &[S], alphabet: &[L], rows: &[&[E]]) -> Result<Self>
    where
        S: AsRef<str>,
        L: AsRef<str>,
        E: AsRef<str>,
    {
        if rows.len() != states.len() {
            return Err(Error::InvalidMapping(format!(
                "expected {} rows, got {}",
                states.len(),
                rows.len()
            )));
        }
        let mut entries = Vec::new();
        for (s, row) in states.iter().zip(rows) {
            if row.len() != alphabet.len() {
                return Err(Error::MissingTransition {
                    state: s.as_ref().to_string(),
                    letter: alphabet
                        .get(row.len())
                        .map(|l| l.as_ref().to_string())
                        .unwrap_or_default(),
                });
            }
            for (l, t) in alphabet.iter().zip(row.iter()) {
                entries.push((
                    s.as_ref().to_string(),
                    l.as_ref().to_string(),
                    t.as_ref().to_string(),
                ));
            }
        }
        Self::new(states, alphabet, &entries)
    }

    /// Builds an automaton from an index-valued transition table.
    pub fn from_index_table(
        states: Vec<String>,
        alphabet: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyStates);
        }
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let state_index = index_identifiers(&states, Error::DuplicateState)?;
        let letter_index = index_identifiers(&alphabet, Error::DuplicateLetter)?;
        if table.len() != states.len() {
            return Err(Error::InvalidMapping(format!(
                "expected {} rows, got {}",
                states.len(),
                table.len()
            )));
        }
        for (si, row) in table.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::MissingTransition {
                    state: states[si].clone(),
                    letter: alphabet.get(row.len()).cloned().unwrap_or_default(),
                });
            }
            for &t in row {
                if t >= states.len() {
                    return Err(Error::StateIndexOutOfRange {
                        index: t,
                        count: states.len(),
                    });
                }
            }
        }
        Ok(Automaton {
            states,
            alphabet,
            table,
            state_index,
            letter_index,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn letter_name(&self, l: usize) -> &str {
        &self.alphabet[l]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letter_index.get(name).copied()
    }

    /// Single transition step. Indices must be in range.
    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.table[state][letter]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Runs `word` from `state`. The empty word returns `state` unchanged.
    pub fn apply(&self, state: usize, word: &Word) -> Result<usize> {
        if state >= self.states.len() {
            return Err(Error::StateIndexOutOfRange {
                index: state,
                count: self.states.len(),
            });
        }
        let mut s = state;
        for &l in word.letters() {
            if l >= self.alphabet.len() {
                return Err(Error::LetterIndexOutOfRange {
                    index: l,
                    count: self.alphabet.len(),
                });
            }
            s = self.table[s][l];
        }
        Ok(s)
    }

    /// The transformation induced by `word`; the empty word yields the identity.
    pub fn transformation_of_word(&self, word: &Word) -> Result<Transformation> {
        for &l in word.letters() {
            if l >= self.alphabet.len() {
                return Err(Error::LetterIndexOutOfRange {
                    index: l,
                    count: self.alphabet.len(),
                });
            }
        }
        let mut mapping: Vec<usize> = (0..self.states.len()).collect();
        for &l in word.letters() {
            for t in mapping.iter_mut() {
                *t = self.table[*t][l];
            }
        }
        if word.is_empty() {
            return Ok(Transformation::identity(self.states.len()));
        }
        Transformation::new(mapping, word.clone())
    }

    /// The transformation induced by a single letter.
    pub fn letter_transformation(&self, letter: usize) -> Result<Transformation> {
        if letter >= self.alphabet.len() {
            return Err(Error::LetterIndexOutOfRange {
                index: letter,
                count: self.alphabet.len(),
            });
        }
        let mapping = (0..self.states.len())
            .map(|s| self.table[s][letter])
            .collect();
        Transformation::new(mapping, Word::letter(letter))
    }

    /// Builds a word from letter names.
    pub fn word_from_letters<L: AsRef<str>>(&self, letters: &[L]) -> Result<Word> {
        letters
            .iter()
            .map(|l| {
                self.letter_index(l.as_ref())
                    .ok_or_else(|| Error::UnknownLetter(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<usize>>>()
            .map(Word)
    }

    /// Renders a word with letter names. Single-character names concatenate
    /// directly; longer names join with `.`. The empty word renders as `ε`.
    pub fn word_label(&self, word: &Word) -> String {
        join_letter_names(&self.alphabet, word)
    }
}

pub(crate) fn join_letter_names(names: &[String], word: &Word) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let compact = names.iter().all(|n| n.chars().count() == 1);
    let sep = if compact { "" } else { "." };
    word.letters()
        .iter()
        .map(|&l| names[l].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "automaton with {} states over {} letters",
            self.states.len(),
            self.alphabet.len()
        )
    }
}

/// Composes `f` then `g` over the states of `aut`.
///
/// The witness of the result is the concatenation of the witnesses.
pub fn compose(aut: &Automaton, f: &Transformation, g: &Transformation) -> Result<Transformation> {
    if f.degree() != g.degree() {
        return Err(Error::MismatchedStateCount {
            left: f.degree(),
            right: g.degree(),
        });
    }
    if f.degree() != aut.state_count() {
        return Err(Error::MismatchedStateCount {
            left: f.degree(),
            right: aut.state_count(),
        });
    }
    let mapping: Vec<usize> = f.mapping().iter().map(|&s| g.apply(s)).collect();
    let witness = f.witness().concat(g.witness());
    let out = Transformation::new(mapping, witness)?;
    debug_assert_eq!(
        aut.transformation_of_word(out.witness())?.mapping(),
        out.mapping(),
        "witness must re-evaluate to the composed mapping"
    );
    Ok(out)
}

/// Mapping-only composition `f` then `g`; witnesses are not tracked.
pub(crate) fn compose_mappings(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&s| g[s]).collect()
}
