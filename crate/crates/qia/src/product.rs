//! Direct products, homomorphisms, and isomorphism search.
//!
//! Products are taken over a shared alphabet: letters act componentwise.
//! A pair of congruences whose meet is the identity and whose composition
//! relates every pair of states exhibits the automaton as a direct product of
//! its two quotients; `congruence_pair_iso` builds that product and the
//! witnessing isomorphism.

use crate::automaton::Automaton;
use crate::congruence::{quotient, Partition};
use crate::error::{Error, Result};

/// Cap on the state count for the backtracking isomorphism search, used only
/// when propagation from state 0 cannot cover the automaton.
pub const ISO_SEARCH_CAP: usize = 10;

/// Direct product over a shared alphabet. States are ordered with the first
/// factor outermost and named `(a,b)`.
pub fn direct_product(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    require_same_alphabet(a, b)?;
    let (na, nb) = (a.state_count(), b.state_count());
    let names: Vec<String> = (0..na)
        .flat_map(|sa| {
            (0..nb).map(move |sb| format!("({},{})", a.state_name(sa), b.state_name(sb)))
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..na)
        .flat_map(|sa| {
            (0..nb).map(move |sb| {
                (0..a.letter_count())
                    .map(|l| a.step(sa, l) * nb + b.step(sb, l))
                    .collect()
            })
        })
        .collect();
    Automaton::from_index_table(names, a.alphabet().to_vec(), table)
}

fn require_same_alphabet(a: &Automaton, b: &Automaton) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "[{}] vs [{}]",
            a.alphabet().join(","),
            b.alphabet().join(",")
        )));
    }
    Ok(())
}

/// A total map from the states of one automaton to the states of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMap {
    mapping: Vec<usize>,
}

impl StateMap {
    pub fn new(mapping: Vec<usize>, codomain_size: usize) -> Result<StateMap> {
        if let Some(&bad) = mapping.iter().find(|&&t| t >= codomain_size) {
            return Err(Error::InvalidMapping(format!(
                "target index {bad} out of range for {codomain_size} states"
            )));
        }
        Ok(StateMap { mapping })
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, s: usize) -> usize {
        self.mapping[s]
    }

    pub fn domain_size(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.mapping.len()];
        self.mapping
            .iter()
            .all(|&t| t < seen.len() && !std::mem::replace(&mut seen[t], true))
    }

    /// One `from -> to` line per state.
    pub fn to_text(&self, domain: &Automaton, codomain: &Automaton) -> String {
        let mut out = String::new();
        for (s, &t) in self.mapping.iter().enumerate() {
            out.push_str(&format!(
                "{} -> {}\n",
                domain.state_name(s),
                codomain.state_name(t)
            ));
        }
        out
    }
}

/// True iff the map commutes with every letter.
pub fn is_homomorphism(a: &Automaton, b: &Automaton, map: &StateMap) -> Result<bool> {
    require_same_alphabet(a, b)?;
    if map.domain_size() != a.state_count() {
        return Err(Error::MismatchedStateCount {
            left: map.domain_size(),
            right: a.state_count(),
        });
    }
    if let Some(&bad) = map.mapping().iter().find(|&&t| t >= b.state_count()) {
        return Err(Error::InvalidMapping(format!(
            "target index {bad} out of range for {} states",
            b.state_count()
        )));
    }
    Ok((0..a.state_count())
        .all(|s| (0..a.letter_count()).all(|l| map.apply(a.step(s, l)) == b.step(map.apply(s), l))))
}

/// True iff the map is a bijective homomorphism.
pub fn is_isomorphism(a: &Automaton, b: &Automaton, map: &StateMap) -> Result<bool> {
    Ok(a.state_count() == b.state_count() && map.is_bijective() && is_homomorphism(a, b, map)?)
}

/// Finds an isomorphism if one exists. When every state of the first
/// automaton is reachable from its state 0, the image of state 0 determines
/// the map, so each candidate anchor is propagated and checked; the first
/// anchor in state order that succeeds wins. Otherwise a signature-pruned
/// backtracking search runs, capped at [`ISO_SEARCH_CAP`] states.
pub fn find_isomorphism(a: &Automaton, b: &Automaton) -> Result<Option<StateMap>> {
    require_same_alphabet(a, b)?;
    let n = a.state_count();
    if n != b.state_count() {
        return Ok(None);
    }
    let mut rooted = true;
    for anchor in 0..n {
        match propagate_from_anchor(a, b, anchor) {
            Propagation::Complete(mapping) => {
                let map = StateMap { mapping };
                if map.is_bijective() {
                    return Ok(Some(map));
                }
            }
            Propagation::Conflict => {}
            Propagation::Partial => {
                rooted = false;
                break;
            }
        }
    }
    if rooted {
        return Ok(None);
    }
    if n > ISO_SEARCH_CAP {
        return Err(Error::IsomorphismSearchTooLarge {
            states: n,
            cap: ISO_SEARCH_CAP,
        });
    }
    Ok(backtrack_isomorphism(a, b).map(|mapping| StateMap { mapping }))
}

enum Propagation {
    Complete(Vec<usize>),
    Conflict,
    /// State 0 does not reach every state, so propagation cannot decide.
    Partial,
}

fn propagate_from_anchor(a: &Automaton, b: &Automaton, anchor: usize) -> Propagation {
    let n = a.state_count();
    let mut image: Vec<Option<usize>> = vec![None; n];
    image[0] = Some(anchor);
    let mut queue = std::collections::VecDeque::from([0]);
    let mut covered = 1;
    while let Some(s) = queue.pop_front() {
        let t = image[s].expect("queued states have images");
        for l in 0..a.letter_count() {
            let s2 = a.step(s, l);
            let t2 = b.step(t, l);
            match image[s2] {
                Some(existing) if existing != t2 => return Propagation::Conflict,
                Some(_) => {}
                None => {
                    image[s2] = Some(t2);
                    covered += 1;
                    queue.push_back(s2);
                }
            }
        }
    }
    if covered < n {
        return Propagation::Partial;
    }
    Propagation::Complete(image.into_iter().map(Option::unwrap).collect())
}

fn backtrack_isomorphism(a: &Automaton, b: &Automaton) -> Option<Vec<usize>> {
    let n = a.state_count();
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn consistent(a: &Automaton, b: &Automaton, image: &[Option<usize>], s: usize) -> bool {
        let t = image[s].unwrap();
        for l in 0..a.letter_count() {
            if let Some(t2) = image[a.step(s, l)] {
                if t2 != b.step(t, l) {
                    return false;
                }
            }
        }
        for (v, mapped) in image.iter().enumerate() {
            if let Some(tv) = *mapped {
                for l in 0..a.letter_count() {
                    if a.step(v, l) == s && b.step(tv, l) != t {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn search(
        a: &Automaton,
        b: &Automaton,
        sig_a: &[Vec<(usize, bool)>],
        sig_b: &[Vec<(usize, bool)>],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        s: usize,
    ) -> bool {
        if s == a.state_count() {
            return true;
        }
        for t in 0..b.state_count() {
            if used[t] || sig_a[s] != sig_b[t] {
                continue;
            }
            image[s] = Some(t);
            used[t] = true;
            if consistent(a, b, image, s) && search(a, b, sig_a, sig_b, image, used, s + 1) {
                return true;
            }
            image[s] = None;
            used[t] = false;
        }
        false
    }
    if search(a, b, &sig_a, &sig_b, &mut image, &mut used, 0) {
        Some(image.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Per-letter (in-degree, has-self-loop) profile, invariant under
/// isomorphism.
fn signatures(aut: &Automaton) -> Vec<Vec<(usize, bool)>> {
    let n = aut.state_count();
    let mut sigs = vec![vec![(0usize, false); aut.letter_count()]; n];
    for (s, row) in aut.table().iter().enumerate() {
        for (l, &t) in row.iter().enumerate() {
            sigs[t][l].0 += 1;
            if t == s {
                sigs[s][l].1 = true;
            }
        }
    }
    sigs
}

/// How a pair of congruences fares against the two direct-product
/// conditions: trivial meet and full composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruencePairEvidence {
    pub meet_is_identity: bool,
    /// Two distinct states related by both congruences.
    pub meet_counterexample: Option<(String, String)>,
    pub composition_is_full: bool,
    /// A pair `(s, t)` with no `u` related to `s` by the first congruence
    /// and to `t` by the second.
    pub composition_counterexample: Option<(String, String)>,
}

pub fn congruence_pair_check(
    aut: &Automaton,
    pi: &Partition,
    rho: &Partition,
) -> Result<CongruencePairEvidence> {
    let n = aut.state_count();
    for (name, p) in [("first", pi), ("second", rho)] {
        if p.state_count() != n {
            return Err(Error::InvalidPartition(format!(
                "{name} partition covers {} states but the automaton has {n}",
                p.state_count()
            )));
        }
    }
    let meet = pi.meet(rho);
    let meet_counterexample = meet.blocks().iter().find(|b| b.len() > 1).map(|b| {
        (
            aut.state_name(b[0]).to_string(),
            aut.state_name(b[1]).to_string(),
        )
    });
    let mut occupied = vec![vec![false; rho.block_count()]; pi.block_count()];
    for s in 0..n {
        occupied[pi.block_of(s)][rho.block_of(s)] = true;
    }
    let mut composition_counterexample = None;
    'outer: for (i, row) in occupied.iter().enumerate() {
        for (j, &occ) in row.iter().enumerate() {
            if !occ {
                composition_counterexample = Some((
                    aut.state_name(pi.blocks()[i][0]).to_string(),
                    aut.state_name(rho.blocks()[j][0]).to_string(),
                ));
                break 'outer;
            }
        }
    }
    Ok(CongruencePairEvidence {
        meet_is_identity: meet_counterexample.is_none(),
        meet_counterexample,
        composition_is_full: composition_counterexample.is_none(),
        composition_counterexample,
    })
}

/// A verified product decomposition along a pair of congruences.
#[derive(Debug, Clone)]
pub struct CongruencePairIso {
    pub quotient_pi: Automaton,
    pub quotient_rho: Automaton,
    pub product: Automaton,
    /// States of the source automaton to states of `product`.
    pub map: StateMap,
    pub evidence: CongruencePairEvidence,
}

/// Builds the product of the two quotients and the state map
/// `s -> ([s], [s])`, after verifying that both partitions are congruences,
/// their meet is the identity, and their composition relates every pair.
pub fn congruence_pair_iso(
    aut: &Automaton,
    pi: &Partition,
    rho: &Partition,
) -> Result<CongruencePairIso> {
    let quotient_pi = quotient(aut, pi)?;
    let quotient_rho = quotient(aut, rho)?;
    let evidence = congruence_pair_check(aut, pi, rho)?;
    if let Some((left, right)) = &evidence.meet_counterexample {
        return Err(Error::CongruenceMeetNotTrivial {
            left: left.clone(),
            right: right.clone(),
        });
    }
    if let Some((left, right)) = &evidence.composition_counterexample {
        return Err(Error::CongruenceCompositionNotFull {
            left: left.clone(),
            right: right.clone(),
        });
    }
    let product = direct_product(&quotient_pi, &quotient_rho)?;
    let mapping: Vec<usize> = (0..aut.state_count())
        .map(|s| pi.block_of(s) * rho.block_count() + rho.block_of(s))
        .collect();
    let map = StateMap::new(mapping, product.state_count())?;
    if !is_isomorphism(aut, &product, &map)? {
        return Err(Error::Internal(
            "congruence pair conditions hold but the block map is not an isomorphism".to_string(),
        ));
    }
    Ok(CongruencePairIso {
        quotient_pi,
        quotient_rho,
        product,
        map,
        evidence,
    })
}
