//! Structural classification of automata and their transition semigroups.
//!
//! The key object is the minimal ideal: the set of elements of least rank.
//! Rank never grows under composition, so that set absorbs multiplication on
//! both sides, and any two least-rank elements generate each other, making it
//! the least two-sided ideal. An automaton is quasi-ideal when it is strongly
//! connected, its minimal ideal is a right group, and the images of the
//! ideal's idempotents partition the state set.

use serde_json::{json, Value};

use crate::automaton::{Automaton, Transformation, Word};
use crate::error::{Error, Result};
use crate::semigroup::TransitionSemigroup;

/// True iff every state reaches every other state.
pub fn is_strongly_connected(aut: &Automaton) -> bool {
    let n = aut.state_count();
    if n <= 1 {
        return true;
    }
    let forward = |s: usize| (0..aut.letter_count()).map(move |l| aut.step(s, l));
    if reachable_from(n, 0, forward).iter().any(|&v| !v) {
        return false;
    }
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        for l in 0..aut.letter_count() {
            reverse[aut.step(s, l)].push(s);
        }
    }
    reachable_from(n, 0, |s| reverse[s].iter().copied())
        .iter()
        .all(|&v| v)
}

fn reachable_from<I, F>(n: usize, start: usize, mut next: F) -> Vec<bool>
where
    I: Iterator<Item = usize>,
    F: FnMut(usize) -> I,
{
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for t in next(s) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// True iff every letter acts as a permutation of the states.
pub fn is_permutation(aut: &Automaton) -> bool {
    (0..aut.letter_count()).all(|l| {
        let mut seen = vec![false; aut.state_count()];
        (0..aut.state_count()).all(|s| {
            let t = aut.step(s, l);
            !std::mem::replace(&mut seen[t], true)
        })
    })
}

/// The first enumerated constant element, whose witness is the shortlex-least
/// reset word, if one exists.
pub fn reset_witness(sg: &TransitionSemigroup) -> Option<&Transformation> {
    sg.elements().iter().find(|t| t.rank() == 1)
}

/// True iff some word sends every state to one state.
pub fn is_synchronizing(sg: &TransitionSemigroup) -> bool {
    reset_witness(sg).is_some()
}

/// The shortlex-least word sending every state to `target`: the witness of
/// the constant element with that value.
pub fn reset_word_to(aut: &Automaton, sg: &TransitionSemigroup, target: usize) -> Result<Word> {
    let n = aut.state_count();
    if target >= n {
        return Err(Error::StateIndexOutOfRange {
            index: target,
            count: n,
        });
    }
    if let Some(idx) = sg.index_of_mapping(&vec![target; n]) {
        return Ok(sg.element(idx).witness().clone());
    }
    if reset_witness(sg).is_some() {
        Err(Error::NotStronglyConnected)
    } else {
        Err(Error::NotSynchronizing)
    }
}

/// Kernel of a mapping as a class-id vector, classes numbered by first
/// occurrence.
pub(crate) fn kernel_classes(mapping: &[usize]) -> Vec<usize> {
    let mut class_of_target: Vec<Option<usize>> = vec![None; mapping.len()];
    let mut next = 0;
    mapping
        .iter()
        .map(|&t| {
            *class_of_target[t].get_or_insert_with(|| {
                let c = next;
                next += 1;
                c
            })
        })
        .collect()
}

/// The minimal ideal of a transition semigroup.
#[derive(Debug, Clone)]
pub struct MinimalIdeal {
    /// Element indices of least rank, in enumeration order.
    pub members: Vec<usize>,
    pub min_rank: usize,
    /// Idempotent members, in enumeration order.
    pub idempotents: Vec<usize>,
    /// Whether `a * I = I` for every member `a`.
    pub right_simple: bool,
    /// Right simple with an idempotent: every member generates the ideal on
    /// the right and some member is a unit for it.
    pub right_group: bool,
}

pub fn minimal_ideal(sg: &TransitionSemigroup) -> MinimalIdeal {
    let min_rank = sg
        .elements()
        .iter()
        .map(Transformation::rank)
        .min()
        .expect("semigroup of a valid automaton is nonempty");
    let members: Vec<usize> = (0..sg.len())
        .filter(|&i| sg.element(i).rank() == min_rank)
        .collect();
    let idempotents: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| sg.element(i).is_idempotent())
        .collect();
    // Right multiplication maps each kernel class into one class, and at
    // least rank it cannot merge classes, so members sharing a kernel form
    // one orbit under right multiplication: the ideal is right simple exactly
    // when all members share one kernel.
    let first_kernel = kernel_classes(sg.element(members[0]).mapping());
    let right_simple = members
        .iter()
        .all(|&i| kernel_classes(sg.element(i).mapping()) == first_kernel);
    let right_group = right_simple && !idempotents.is_empty();
    #[cfg(debug_assertions)]
    {
        let member_set: std::collections::HashSet<usize> = members.iter().copied().collect();
        for &i in &members {
            for l in 0..sg.letter_count() {
                debug_assert!(member_set.contains(&sg.extend_by_letter(i, l)));
                let left = sg.product(sg.letter_element(l).unwrap(), i);
                debug_assert!(member_set.contains(&left));
            }
        }
    }
    MinimalIdeal {
        members,
        min_rank,
        idempotents,
        right_simple,
        right_group,
    }
}

/// Why the idempotent images fail to partition the states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    /// Two idempotent images intersect without being equal; `state` lies in
    /// exactly one of them.
    Overlap {
        first: String,
        second: String,
        state: String,
    },
    /// No idempotent image contains `state`.
    Uncovered { state: String },
}

impl std::fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionViolation::Overlap {
                first,
                second,
                state,
            } => write!(
                f,
                "idempotent images of '{first}' and '{second}' overlap but differ at state {state}"
            ),
            PartitionViolation::Uncovered { state } => {
                write!(f, "state {state} is not covered by any idempotent image")
            }
        }
    }
}

/// Distinct idempotent images as state-index blocks ordered by least member,
/// when they partition the state set.
pub fn idempotent_image_partition(
    aut: &Automaton,
    sg: &TransitionSemigroup,
    ideal: &MinimalIdeal,
) -> std::result::Result<Vec<Vec<usize>>, PartitionViolation> {
    let mut images: Vec<(Vec<usize>, usize)> = Vec::new();
    for &e in &ideal.idempotents {
        let image = sg.element(e).image();
        if !images.iter().any(|(i, _)| *i == image) {
            images.push((image, e));
        }
    }
    for (a, (first, e1)) in images.iter().enumerate() {
        for (second, e2) in images.iter().skip(a + 1) {
            if first.iter().any(|s| second.contains(s)) {
                let odd = first
                    .iter()
                    .chain(second.iter())
                    .copied()
                    .filter(|s| first.contains(s) != second.contains(s))
                    .min()
                    .expect("unequal sorted sets have a symmetric difference");
                return Err(PartitionViolation::Overlap {
                    first: sg.label(*e1),
                    second: sg.label(*e2),
                    state: aut.state_name(odd).to_string(),
                });
            }
        }
    }
    let mut covered = vec![false; aut.state_count()];
    for (image, _) in &images {
        for &s in image {
            covered[s] = true;
        }
    }
    if let Some(state) = covered.iter().position(|&c| !c) {
        return Err(PartitionViolation::Uncovered {
            state: aut.state_name(state).to_string(),
        });
    }
    let mut blocks: Vec<Vec<usize>> = images.into_iter().map(|(i, _)| i).collect();
    blocks.sort_by_key(|b| b[0]);
    Ok(blocks)
}

/// Outcome of the three quasi-ideal conditions, each evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIdealReport {
    pub strongly_connected: bool,
    pub ideal_right_group: bool,
    pub images_partition: bool,
    /// All three conditions hold.
    pub verdict: bool,
    /// Idempotent image blocks by state name, present iff they partition.
    pub blocks: Option<Vec<Vec<String>>>,
    /// One line per failed condition, empty iff the verdict holds.
    pub violations: Vec<String>,
}

pub fn quasi_ideal_report(aut: &Automaton) -> Result<QuasiIdealReport> {
    let sg = crate::semigroup::semigroup(aut)?;
    let ideal = minimal_ideal(&sg);
    Ok(quasi_ideal_report_with(aut, &sg, &ideal))
}

pub fn quasi_ideal_report_with(
    aut: &Automaton,
    sg: &TransitionSemigroup,
    ideal: &MinimalIdeal,
) -> QuasiIdealReport {
    let strongly_connected = is_strongly_connected(aut);
    let ideal_right_group = ideal.right_group;
    let partition = idempotent_image_partition(aut, sg, ideal);
    let mut violations = Vec::new();
    if !strongly_connected {
        violations.push("not strongly connected".to_string());
    }
    if !ideal_right_group {
        violations.push("minimal ideal is not a right group".to_string());
    }
    let (images_partition, blocks) = match partition {
        Ok(blocks) => (
            true,
            Some(
                blocks
                    .into_iter()
                    .map(|b| {
                        b.into_iter()
                            .map(|s| aut.state_name(s).to_string())
                            .collect()
                    })
                    .collect(),
            ),
        ),
        Err(v) => {
            violations.push(v.to_string());
            (false, None)
        }
    };
    let verdict = strongly_connected && ideal_right_group && images_partition;
    QuasiIdealReport {
        strongly_connected,
        ideal_right_group,
        images_partition,
        verdict,
        blocks,
        violations,
    }
}

impl QuasiIdealReport {
    pub fn to_json(&self) -> Value {
        json!({
            "strongly_connected": self.strongly_connected,
            "ideal_right_group": self.ideal_right_group,
            "images_partition": self.images_partition,
            "verdict": self.verdict,
            "blocks": self.blocks,
            "violations": self.violations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "strongly_connected: {}\n",
            self.strongly_connected
        ));
        out.push_str(&format!("ideal_right_group: {}\n", self.ideal_right_group));
        out.push_str(&format!("images_partition: {}\n", self.images_partition));
        if let Some(blocks) = &self.blocks {
            let rendered: Vec<String> = blocks
                .iter()
                .map(|b| format!("{{{}}}", b.join(",")))
                .collect();
            out.push_str(&format!("blocks: {}\n", rendered.join(" ")));
        }
        for v in &self.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.verdict {
                "quasi-ideal"
            } else {
                "not quasi-ideal"
            }
        ));
        out
    }
}
