//! Partitions of the state set, congruences, and quotient automata.
//!
//! A partition is a congruence when every letter maps each block into a
//! single block; the quotient automaton then acts on blocks. Two canonical
//! congruences matter here: one groups states that every minimal-ideal
//! element treats identically, the other groups states by the idempotent
//! image containing them.

use std::collections::HashMap;

use crate::analysis::{idempotent_image_partition, is_strongly_connected, MinimalIdeal};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semigroup::TransitionSemigroup;

/// A partition of `{0, .., n-1}` in canonical form: blocks sorted by least
/// member, members ascending within each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from blocks, validating exact cover of `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut block_of: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".to_string()));
            }
            for &s in block {
                if s >= n {
                    return Err(Error::InvalidPartition(format!(
                        "state index {s} out of range for {n} states"
                    )));
                }
                if block_of[s].is_some() {
                    return Err(Error::InvalidPartition(format!(
                        "state index {s} appears in more than one block"
                    )));
                }
                block_of[s] = Some(b);
            }
        }
        if let Some(s) = block_of.iter().position(Option::is_none) {
            return Err(Error::InvalidPartition(format!(
                "state index {s} missing from every block"
            )));
        }
        let mut sorted: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        sorted.sort_by_key(|b| b[0]);
        Ok(Partition::from_canonical(n, sorted))
    }

    /// Groups `0..n` by key; blocks are ordered by least member.
    pub fn from_grouping<K: Eq + std::hash::Hash>(
        n: usize,
        mut key: impl FnMut(usize) -> K,
    ) -> Partition {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            let b = *index.entry(key(s)).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(s);
        }
        Partition::from_canonical(n, blocks)
    }

    pub fn identity(n: usize) -> Partition {
        Partition::from_grouping(n, |s| s)
    }

    fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Partition {
        let mut block_of = vec![0; n];
        for (b, block) in blocks.iter().enumerate() {
            for &s in block {
                block_of[s] = b;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, s: usize) -> usize {
        self.block_of[s]
    }

    pub fn state_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn same_block(&self, s: usize, t: usize) -> bool {
        self.block_of[s] == self.block_of[t]
    }

    /// True iff every block is a singleton.
    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// Coarsest partition refining both: blocks are the nonempty pairwise
    /// intersections.
    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_grouping(self.block_of.len(), |s| {
            (self.block_of[s], other.block_of[s])
        })
    }
}

/// True iff every letter maps each block of the partition into one block.
pub fn is_congruence(aut: &Automaton, partition: &Partition) -> bool {
    partition.blocks().iter().all(|block| {
        (0..aut.letter_count()).all(|l| {
            let target = partition.block_of(aut.step(block[0], l));
            block
                .iter()
                .all(|&s| partition.block_of(aut.step(s, l)) == target)
        })
    })
}

/// Quotient automaton of a congruence. Block states are named after their
/// least member, as `[name]`.
pub fn quotient(aut: &Automaton, partition: &Partition) -> Result<Automaton> {
    if partition.state_count() != aut.state_count() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} states but the automaton has {}",
            partition.state_count(),
            aut.state_count()
        )));
    }
    if !is_congruence(aut, partition) {
        return Err(Error::NotACongruence);
    }
    let names: Vec<String> = partition
        .blocks()
        .iter()
        .map(|b| format!("[{}]", aut.state_name(b[0])))
        .collect();
    let table: Vec<Vec<usize>> = partition
        .blocks()
        .iter()
        .map(|b| {
            (0..aut.letter_count())
                .map(|l| partition.block_of(aut.step(b[0], l)))
                .collect()
        })
        .collect();
    Automaton::from_index_table(names, aut.alphabet().to_vec(), table)
}

/// The congruence identifying states that every minimal-ideal element sends
/// to the same place: the meet of the members' kernels. Requires a strongly
/// connected automaton whose minimal ideal is a right group.
pub fn pi_congruence(
    aut: &Automaton,
    sg: &TransitionSemigroup,
    ideal: &MinimalIdeal,
) -> Result<Partition> {
    if !is_strongly_connected(aut) {
        return Err(Error::NotStronglyConnected);
    }
    if !ideal.right_group {
        return Err(Error::IdealNotRightGroup);
    }
    let n = aut.state_count();
    Ok(Partition::from_grouping(n, |s| {
        ideal
            .members
            .iter()
            .map(|&m| sg.element(m).apply(s))
            .collect::<Vec<usize>>()
    }))
}

/// The congruence whose blocks are the idempotent images. Requires those
/// images to partition the state set.
pub fn rho_congruence(
    aut: &Automaton,
    sg: &TransitionSemigroup,
    ideal: &MinimalIdeal,
) -> Result<Partition> {
    let blocks = idempotent_image_partition(aut, sg, ideal)
        .map_err(|v| Error::ImagesDoNotPartition(v.to_string()))?;
    Partition::from_blocks(aut.state_count(), &blocks)
}

/// Renders a partition with state names, one `{..}` group per block.
pub fn partition_text(aut: &Automaton, partition: &Partition) -> String {
    partition
        .blocks()
        .iter()
        .map(|b| {
            let names: Vec<&str> = b.iter().map(|&s| aut.state_name(s)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect::<Vec<String>>()
        .join(" ")
}
