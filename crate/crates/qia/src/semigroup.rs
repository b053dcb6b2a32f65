//! Transition semigroups of automata.
//!
//! The transition semigroup collects the distinct transformations induced by
//! nonempty words. Enumeration is a breadth-first closure: the letter
//! transformations are seeded in alphabet order, and each known element is
//! extended on the right by every letter in order. First-seen mappings are
//! kept, so elements appear in discovery order and the recorded witness of an
//! element is the shortlex-least nonempty word inducing it (every prefix of a
//! shortlex-least word is itself shortlex-least, hence already enumerated).
//!
//! The monoid view adds the class of the empty word: when some nonempty word
//! induces the identity, that element doubles as the monoid identity,
//! otherwise the identity is a separate, purely formal element.

use std::collections::HashMap;

use crate::automaton::{compose_mappings, join_letter_names, Automaton, Transformation, Word};
use crate::error::{Error, Result};

/// Default cap on the number of semigroup elements enumerated.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// The transition semigroup of an automaton.
#[derive(Debug, Clone)]
pub struct TransitionSemigroup {
    n_states: usize,
    letter_names: Vec<String>,
    elements: Vec<Transformation>,
    index_of: HashMap<Vec<usize>, usize>,
    /// `generator_map[e][l]` is the element index of `elements[e]` extended by
    /// letter `l` on the right.
    generator_map: Vec<Vec<usize>>,
    /// Element index induced by each single letter.
    letter_elem: Vec<usize>,
    identity: Option<usize>,
}

/// Enumerates the transition semigroup with the default element cap.
pub fn semigroup(aut: &Automaton) -> Result<TransitionSemigroup> {
    semigroup_with_cap(aut, DEFAULT_ELEMENT_CAP)
}

/// Enumerates the transition semigroup, failing once more than `cap` distinct
/// elements are discovered.
pub fn semigroup_with_cap(aut: &Automaton, cap: usize) -> Result<TransitionSemigroup> {
    let n = aut.state_count();
    let k = aut.letter_count();
    let mut elements: Vec<Transformation> = Vec::new();
    let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut letter_elem = Vec::with_capacity(k);

    for l in 0..k {
        let t = aut.letter_transformation(l)?;
        let idx = match index_of.get(t.mapping()) {
            Some(&i) => i,
            None => {
                if elements.len() >= cap {
                    return Err(Error::SemigroupCapExceeded {
                        cap,
                        discovered: elements.len(),
                    });
                }
                let i = elements.len();
                index_of.insert(t.mapping().to_vec(), i);
                elements.push(t);
                i
            }
        };
        letter_elem.push(idx);
    }

    let mut generator_map: Vec<Vec<usize>> = Vec::new();
    let mut e = 0;
    while e < elements.len() {
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let mut mapping = elements[e].mapping().to_vec();
            for t in mapping.iter_mut() {
                *t = aut.step(*t, l);
            }
            let idx = match index_of.get(&mapping) {
                Some(&i) => i,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::SemigroupCapExceeded {
                            cap,
                            discovered: elements.len(),
                        });
                    }
                    let i = elements.len();
                    let witness = elements[e].witness().push(l);
                    index_of.insert(mapping.clone(), i);
                    elements.push(Transformation::new(mapping, witness)?);
                    i
                }
            };
            row.push(idx);
        }
        generator_map.push(row);
        e += 1;
    }

    let identity_mapping: Vec<usize> = (0..n).collect();
    let identity = index_of.get(&identity_mapping).copied();
    Ok(TransitionSemigroup {
        n_states: n,
        letter_names: aut.alphabet().to_vec(),
        elements,
        index_of,
        generator_map,
        letter_elem,
        identity,
    })
}

impl TransitionSemigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn state_count(&self) -> usize {
        self.n_states
    }

    pub fn letter_count(&self) -> usize {
        self.letter_names.len()
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    /// Elements in discovery order.
    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn index_of_mapping(&self, mapping: &[usize]) -> Option<usize> {
        self.index_of.get(mapping).copied()
    }

    /// Element index induced by a single letter.
    pub fn letter_element(&self, letter: usize) -> Option<usize> {
        self.letter_elem.get(letter).copied()
    }

    /// Element index of `elements[e]` followed by letter `l`.
    pub fn extend_by_letter(&self, e: usize, l: usize) -> usize {
        self.generator_map[e][l]
    }

    /// True iff some nonempty word induces the identity transformation.
    pub fn contains_identity_as_nonempty_word(&self) -> bool {
        self.identity.is_some()
    }

    /// Index of the element whose mapping is the identity, if present.
    pub fn identity_element(&self) -> Option<usize> {
        self.identity
    }

    /// Size of the transition monoid: the semigroup plus, when no nonempty
    /// word induces the identity, one extra element for the empty word.
    pub fn monoid_size(&self) -> usize {
        self.elements.len() + usize::from(self.identity.is_none())
    }

    /// True iff the semigroup is a group of permutations.
    pub fn is_group(&self) -> bool {
        self.identity.is_some() && self.elements.iter().all(Transformation::is_bijective)
    }

    /// Index of the element induced by a nonempty word.
    pub fn class_of(&self, word: &Word) -> Result<usize> {
        let letters = word.letters();
        let (&first, rest) = letters.split_first().ok_or(Error::EmptyWord)?;
        let mut idx = *self
            .letter_elem
            .get(first)
            .ok_or(Error::LetterIndexOutOfRange {
                index: first,
                count: self.letter_elem.len(),
            })?;
        for &l in rest {
            if l >= self.letter_elem.len() {
                return Err(Error::LetterIndexOutOfRange {
                    index: l,
                    count: self.letter_elem.len(),
                });
            }
            idx = self.generator_map[idx][l];
        }
        Ok(idx)
    }

    /// Index of the product `elements[i]` followed by `elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        let mapping = compose_mappings(self.elements[i].mapping(), self.elements[j].mapping());
        self.index_of[&mapping]
    }

    /// Witness label of element `i`.
    pub fn label(&self, i: usize) -> String {
        join_letter_names(&self.letter_names, self.elements[i].witness())
    }

    /// Full multiplication table; entry `(i, j)` is the index of the product
    /// of element `i` followed by element `j`.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.elements.len())
            .map(|i| {
                (0..self.elements.len())
                    .map(|j| self.product(i, j))
                    .collect()
            })
            .collect()
    }

    /// Renders the multiplication table as aligned plain text.
    pub fn cayley_text(&self) -> String {
        let table = self.cayley_table();
        let labels: Vec<String> = (0..self.elements.len()).map(|i| self.label(i)).collect();
        let width = labels
            .iter()
            .map(|l| l.chars().count())
            .max()
            .unwrap_or(1)
            .max(1);
        let pad = |s: &str| {
            let mut out = s.to_string();
            let have = s.chars().count();
            out.extend(std::iter::repeat_n(' ', width.saturating_sub(have)));
            out
        };
        let mut lines = Vec::with_capacity(table.len() + 2);
        let header: Vec<String> = labels.iter().map(|l| pad(l)).collect();
        lines.push(
            format!("{} | {}", pad("*"), header.join(" "))
                .trim_end()
                .to_string(),
        );
        lines.push(format!(
            "{}-+-{}",
            "-".repeat(width),
            "-".repeat(width * labels.len() + labels.len().saturating_sub(1))
        ));
        for (i, row) in table.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|&j| pad(&labels[j])).collect();
            lines.push(
                format!("{} | {}", pad(&labels[i]), cells.join(" "))
                    .trim_end()
                    .to_string(),
            );
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    /// Renders the multiplication table as CSV with a `*` header corner.
    pub fn cayley_csv(&self) -> String {
        let table = self.cayley_table();
        let labels: Vec<String> = (0..self.elements.len()).map(|i| self.label(i)).collect();
        let mut out = String::new();
        out.push_str(&csv_row(
            std::iter::once("*".to_string()).chain(labels.iter().cloned()),
        ));
        for (i, row) in table.iter().enumerate() {
            out.push_str(&csv_row(
                std::iter::once(labels[i].clone()).chain(row.iter().map(|&j| labels[j].clone())),
            ));
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row<I: Iterator<Item = String>>(cells: I) -> String {
    let mut row = cells.map(|c| csv_cell(&c)).collect::<Vec<_>>().join(",");
    row.push('\n');
    row
}
