//! Independent reference implementations and instance generators for
//! validating the main algorithms.
//!
//! Everything here recomputes results from raw transition tables with
//! deliberately different algorithms: reachability by transitive closure
//! instead of graph search, semigroup enumeration by word-length levels
//! instead of a worklist, synchronization by subset tracking instead of
//! rank inspection, and isomorphism by canonical renumbering or exhaustive
//! bijections instead of anchored propagation. Agreement between the two
//! sides is checked by the test suites.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// Attempt budget for constrained random generation.
pub const DEFAULT_GENERATOR_ATTEMPTS: u64 = 100_000;
/// Cap on the number of tables `gen_exhaustive` will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
/// State-count cap for the subset-based synchronization check.
pub const SUBSET_SYNC_CAP: usize = 12;
/// State-count cap for brute-force bijection search.
pub const BRUTE_ISO_CAP: usize = 8;
/// State-count cap for building a factorization oracle.
pub const FACTORIZATION_CAP: usize = 8;
/// Cap on the number of candidate maps for brute homomorphism search.
pub const BRUTE_HOM_CAP: u64 = 10_000_000;

pub fn default_states(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("q{i}")).collect()
}

pub fn default_alphabet(k: usize) -> Vec<String> {
    (0..k).map(|l| l.to_string()).collect()
}

/// Uniform draw from `0..n` by rejection sampling on 64-bit words, so the
/// stream depends only on the seed and the sequence of bounds.
pub fn uniform_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    debug_assert!(n > 0);
    let n = n as u64;
    let threshold = u64::MAX - u64::MAX % n;
    loop {
        let x = rng.next_u64();
        if x < threshold {
            return (x % n) as usize;
        }
    }
}

/// Configuration for seeded random instance generation.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub states: usize,
    pub letters: usize,
    pub seed: u64,
    pub require_strongly_connected: bool,
    pub require_permutation: bool,
    pub require_synchronizing: bool,
    pub max_attempts: u64,
}

impl GeneratorConfig {
    pub fn new(states: usize, letters: usize, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            states,
            letters,
            seed,
            require_strongly_connected: false,
            require_permutation: false,
            require_synchronizing: false,
            max_attempts: DEFAULT_GENERATOR_ATTEMPTS,
        }
    }

    pub fn strongly_connected(mut self) -> GeneratorConfig {
        self.require_strongly_connected = true;
        self
    }

    pub fn permutation(mut self) -> GeneratorConfig {
        self.require_permutation = true;
        self
    }

    pub fn synchronizing(mut self) -> GeneratorConfig {
        self.require_synchronizing = true;
        self
    }
}

/// Draws uniform transition tables, ChaCha8-seeded for reproducibility, and
/// keeps the first one meeting every requested constraint.
pub fn gen_random(config: &GeneratorConfig) -> Result<Automaton> {
    if config.states == 0 {
        return Err(Error::EmptyStates);
    }
    if config.letters == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.max_attempts {
        let table: Vec<Vec<usize>> = (0..config.states)
            .map(|_| {
                (0..config.letters)
                    .map(|_| uniform_index(&mut rng, config.states))
                    .collect()
            })
            .collect();
        if config.require_permutation && !table_is_permutation(&table, config.states) {
            continue;
        }
        if config.require_strongly_connected && !table_strongly_connected(&table, config.states) {
            continue;
        }
        if config.require_synchronizing
            && !table_synchronizing(&table, config.states, config.letters)?
        {
            continue;
        }
        return Automaton::from_index_table(
            default_states(config.states),
            default_alphabet(config.letters),
            table,
        );
    }
    Err(Error::GeneratorAttemptsExhausted {
        attempts: config.max_attempts,
    })
}

/// All transition tables on the given shape, in numeric order: the table is
/// read as a base-`states` number whose most significant digit is the first
/// state's first letter.
pub fn gen_exhaustive(states: usize, letters: usize) -> Result<ExhaustiveTables> {
    if states == 0 {
        return Err(Error::EmptyStates);
    }
    if letters == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let cells = states * letters;
    let count = (states as u128)
        .checked_pow(cells as u32)
        .unwrap_or(u128::MAX);
    if count > DEFAULT_ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationTooLarge {
            count,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    Ok(ExhaustiveTables {
        state_names: default_states(states),
        letter_names: default_alphabet(letters),
        states,
        letters,
        next: 0,
        count: count as u64,
    })
}

#[derive(Debug)]
pub struct ExhaustiveTables {
    state_names: Vec<String>,
    letter_names: Vec<String>,
    states: usize,
    letters: usize,
    next: u64,
    count: u64,
}

impl ExhaustiveTables {
    pub fn count(&self) -> u64 {
        self.count
    }
}

impl Iterator for ExhaustiveTables {
    type Item = Automaton;

    fn next(&mut self) -> Option<Automaton> {
        if self.next == self.count {
            return None;
        }
        let mut code = self.next;
        self.next += 1;
        let cells = self.states * self.letters;
        let mut flat = vec![0usize; cells];
        for j in (0..cells).rev() {
            flat[j] = (code % self.states as u64) as usize;
            code /= self.states as u64;
        }
        let table: Vec<Vec<usize>> = flat.chunks(self.letters).map(<[usize]>::to_vec).collect();
        Some(
            Automaton::from_index_table(self.state_names.clone(), self.letter_names.clone(), table)
                .expect("enumerated tables are complete and in range"),
        )
    }
}

/// Every mapping induced by a nonempty word of length at most `max_len`,
/// computed level by level with no early termination.
pub fn oracle_semigroup(aut: &Automaton, max_len: usize) -> HashSet<Vec<usize>> {
    let n = aut.state_count();
    let letter_maps: Vec<Vec<usize>> = (0..aut.letter_count())
        .map(|l| (0..n).map(|s| aut.step(s, l)).collect())
        .collect();
    let mut all: HashSet<Vec<usize>> = HashSet::new();
    let mut level: HashSet<Vec<usize>> = letter_maps.iter().cloned().collect();
    for _ in 0..max_len {
        all.extend(level.iter().cloned());
        let mut next: HashSet<Vec<usize>> = HashSet::new();
        for m in &level {
            for lm in &letter_maps {
                next.insert(m.iter().map(|&t| lm[t]).collect());
            }
        }
        level = next;
    }
    all
}

fn table_is_permutation(table: &[Vec<usize>], n: usize) -> bool {
    (0..table.first().map_or(0, Vec::len)).all(|l| {
        let mut targets: Vec<usize> = table.iter().map(|row| row[l]).collect();
        targets.sort_unstable();
        targets == (0..n).collect::<Vec<usize>>()
    })
}

/// Strong connectivity by transitive closure of the one-step relation.
fn table_strongly_connected(table: &[Vec<usize>], n: usize) -> bool {
    let mut reach = vec![vec![false; n]; n];
    for (s, row) in table.iter().enumerate() {
        for &t in row {
            reach[s][t] = true;
        }
    }
    for mid in 0..n {
        let via = reach[mid].clone();
        for row in reach.iter_mut() {
            if row[mid] {
                for (cell, &through) in row.iter_mut().zip(&via) {
                    *cell |= through;
                }
            }
        }
    }
    (0..n).all(|a| (0..n).all(|b| a == b || reach[a][b]))
}

/// Synchronization by tracking the set of currently possible states as a
/// bitmask, starting from the full set.
fn table_synchronizing(table: &[Vec<usize>], n: usize, k: usize) -> Result<bool> {
    if n > SUBSET_SYNC_CAP {
        return Err(Error::OracleTooLarge {
            what: "subset synchronization check",
            states: n,
            cap: SUBSET_SYNC_CAP,
        });
    }
    let full: u64 = (1 << n) - 1;
    let mut seen = vec![false; 1 << n];
    seen[full as usize] = true;
    let mut queue = std::collections::VecDeque::from([full]);
    while let Some(mask) = queue.pop_front() {
        if mask.count_ones() == 1 {
            return Ok(true);
        }
        for l in 0..k {
            let mut image: u64 = 0;
            for (s, row) in table.iter().enumerate() {
                if mask & (1 << s) != 0 {
                    image |= 1 << row[l];
                }
            }
            if !seen[image as usize] {
                seen[image as usize] = true;
                queue.push_back(image);
            }
        }
    }
    Ok(false)
}

pub fn oracle_permutation(aut: &Automaton) -> bool {
    table_is_permutation(aut.table(), aut.state_count())
}

pub fn oracle_strongly_connected(aut: &Automaton) -> bool {
    table_strongly_connected(aut.table(), aut.state_count())
}

pub fn oracle_synchronizing(aut: &Automaton) -> Result<bool> {
    table_synchronizing(aut.table(), aut.state_count(), aut.letter_count())
}

/// Canonical renumbering for strongly connected automata: breadth-first
/// relabeling from each anchor state, keeping the lexicographically least
/// flattened table. `None` when some state is unreachable from every anchor,
/// in which case no single relabeling is canonical.
pub fn canonical_form(aut: &Automaton) -> Option<Vec<usize>> {
    canonical_table(aut.table(), aut.state_count(), aut.letter_count())
}

fn canonical_table(table: &[Vec<usize>], n: usize, k: usize) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for anchor in 0..n {
        let mut new_index: Vec<Option<usize>> = vec![None; n];
        let mut order = vec![anchor];
        new_index[anchor] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for &t in &table[s] {
                if new_index[t].is_none() {
                    new_index[t] = Some(order.len());
                    order.push(t);
                }
            }
        }
        if order.len() < n {
            continue;
        }
        let mut flat = Vec::with_capacity(2 + n * k);
        flat.push(n);
        flat.push(k);
        for &s in &order {
            for l in 0..k {
                flat.push(new_index[table[s][l]].expect("all states reached"));
            }
        }
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
    }
    best
}

/// Isomorphism by trying every bijection of the state sets.
pub fn isomorphic_brute(a: &Automaton, b: &Automaton) -> Result<bool> {
    let n = a.state_count();
    if n > BRUTE_ISO_CAP {
        return Err(Error::OracleTooLarge {
            what: "brute-force isomorphism",
            states: n,
            cap: BRUTE_ISO_CAP,
        });
    }
    if n != b.state_count() || a.letter_count() != b.letter_count() {
        return Ok(false);
    }
    let k = a.letter_count();
    let mut perm: Vec<usize> = (0..n).collect();
    Ok(permutations(&mut perm, 0, &mut |p| {
        (0..n).all(|s| (0..k).all(|l| p[a.step(s, l)] == b.step(p[s], l)))
    }))
}

fn permutations(
    perm: &mut Vec<usize>,
    from: usize,
    check: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if from == perm.len() {
        return check(perm);
    }
    for i in from..perm.len() {
        perm.swap(from, i);
        if permutations(perm, from + 1, check) {
            perm.swap(from, i);
            return true;
        }
        perm.swap(from, i);
    }
    false
}

/// Homomorphism existence by trying every total map of the state sets.
pub fn homomorphism_exists_brute(a: &Automaton, b: &Automaton) -> Result<bool> {
    if a.letter_count() != b.letter_count() {
        return Ok(false);
    }
    let (n, m, k) = (a.state_count(), b.state_count(), a.letter_count());
    let count = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > BRUTE_HOM_CAP as u128 {
        return Err(Error::EnumerationTooLarge {
            count,
            cap: BRUTE_HOM_CAP,
        });
    }
    let mut map = vec![0usize; n];
    loop {
        if (0..n).all(|s| (0..k).all(|l| map[a.step(s, l)] == b.step(map[s], l))) {
            return Ok(true);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < m {
                break;
            }
            map[pos] = 0;
        }
    }
}

fn product_table(
    a: &[Vec<usize>],
    na: usize,
    b: &[Vec<usize>],
    nb: usize,
    k: usize,
) -> Vec<Vec<usize>> {
    let mut table = Vec::with_capacity(na * nb);
    for row_a in a {
        for row_b in b {
            table.push((0..k).map(|l| row_a[l] * nb + row_b[l]).collect());
        }
    }
    table
}

/// Decides whether automata of a fixed shape are isomorphic to a direct
/// product of a strongly connected permutation automaton and a strongly
/// connected synchronizing automaton, by enumerating every such product up
/// front and comparing canonical forms. One-state factors reduce to the
/// other factor, so those splits are answered by direct classification.
#[derive(Debug)]
pub struct FactorizationOracle {
    states: usize,
    letters: usize,
    canon_products: HashSet<Vec<usize>>,
}

impl FactorizationOracle {
    pub fn new(states: usize, letters: usize) -> Result<FactorizationOracle> {
        if states == 0 {
            return Err(Error::EmptyStates);
        }
        if letters == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if states > FACTORIZATION_CAP {
            return Err(Error::OracleTooLarge {
                what: "factorization oracle",
                states,
                cap: FACTORIZATION_CAP,
            });
        }
        let mut canon_products = HashSet::new();
        for p in 2..=states / 2 {
            if !states.is_multiple_of(p) {
                continue;
            }
            let r = states / p;
            let perm_tables: Vec<Vec<Vec<usize>>> = all_tables(p, letters)
                .filter(|t| table_is_permutation(t, p) && table_strongly_connected(t, p))
                .collect();
            let sync_tables: Vec<Vec<Vec<usize>>> = all_tables(r, letters)
                .filter(|t| {
                    table_strongly_connected(t, r)
                        && table_synchronizing(t, r, letters).expect("factor sizes are tiny")
                })
                .collect();
            for pt in &perm_tables {
                for st in &sync_tables {
                    let prod = product_table(pt, p, st, r, letters);
                    if let Some(c) = canonical_table(&prod, states, letters) {
                        canon_products.insert(c);
                    }
                }
            }
        }
        Ok(FactorizationOracle {
            states,
            letters,
            canon_products,
        })
    }

    pub fn matches(&self, aut: &Automaton) -> Result<bool> {
        if aut.state_count() != self.states {
            return Err(Error::MismatchedStateCount {
                left: aut.state_count(),
                right: self.states,
            });
        }
        if aut.letter_count() != self.letters {
            return Err(Error::AlphabetMismatch(format!(
                "oracle built for {} letters, automaton has {}",
                self.letters,
                aut.letter_count()
            )));
        }
        if !oracle_strongly_connected(aut) {
            return Ok(false);
        }
        if oracle_permutation(aut) || oracle_synchronizing(aut)? {
            return Ok(true);
        }
        let Some(canon) = canonical_form(aut) else {
            return Ok(false);
        };
        Ok(self.canon_products.contains(&canon))
    }
}

/// One-shot factorization query; builds the oracle for this shape and asks.
pub fn oracle_factorization(aut: &Automaton) -> Result<bool> {
    FactorizationOracle::new(aut.state_count(), aut.letter_count())?.matches(aut)
}

fn all_tables(states: usize, letters: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    let cells = states * letters;
    let count = (states as u64).pow(cells as u32);
    (0..count).map(move |mut code| {
        let mut flat = vec![0usize; cells];
        for j in (0..cells).rev() {
            flat[j] = (code % states as u64) as usize;
            code /= states as u64;
        }
        flat.chunks(letters).map(<[usize]>::to_vec).collect()
    })
}
