//! Shared hand-checked automata for unit tests.

use crate::automaton::Automaton;

/// Three-state permutation automaton whose semigroup is the symmetric group S3.
pub(crate) fn automaton_a() -> Automaton {
    Automaton::from_rows(
        &["s1", "s2", "s3"],
        &["0", "1"],
        &[&["s1", "s2"], &["s3", "s1"], &["s2", "s3"]],
    )
    .unwrap()
}

/// Two-state synchronizing automaton: letter 0 resets to t1, letter 1 to t2.
pub(crate) fn automaton_b() -> Automaton {
    Automaton::from_rows(&["t1", "t2"], &["0", "1"], &[&["t1", "t2"], &["t1", "t2"]]).unwrap()
}

/// The direct product of [`automaton_a`] and [`automaton_b`], written out.
pub(crate) fn automaton_axb() -> Automaton {
    Automaton::from_rows(
        &[
            "(s1,t1)", "(s1,t2)", "(s2,t1)", "(s2,t2)", "(s3,t1)", "(s3,t2)",
        ],
        &["0", "1"],
        &[
            &["(s1,t1)", "(s2,t2)"],
            &["(s1,t1)", "(s2,t2)"],
            &["(s3,t1)", "(s1,t2)"],
            &["(s3,t1)", "(s1,t2)"],
            &["(s2,t1)", "(s3,t2)"],
            &["(s2,t1)", "(s3,t2)"],
        ],
    )
    .unwrap()
}

/// Six-state automaton isomorphic to [`automaton_axb`] under q1 -> (s1,t1),
/// q2 -> (s1,t2), q3 -> (s2,t1), q4 -> (s2,t2), q5 -> (s3,t1), q6 -> (s3,t2).
pub(crate) fn automaton_c() -> Automaton {
    Automaton::from_rows(
        &["q1", "q2", "q3", "q4", "q5", "q6"],
        &["0", "1"],
        &[
            &["q1", "q4"],
            &["q1", "q4"],
            &["q5", "q2"],
            &["q5", "q2"],
            &["q3", "q6"],
            &["q3", "q6"],
        ],
    )
    .unwrap()
}

/// Strongly connected, minimal rank 2, and the minimal ideal is not right
/// simple: letter `a` merges {r1,r2} while the element induced by `ra` merges
/// {r1,r4}, so two distinct kernels occur at minimal rank.
pub(crate) fn ideal_not_right_group() -> Automaton {
    Automaton::from_rows(
        &["r1", "r2", "r3", "r4"],
        &["a", "r"],
        &[&["r1", "r2"], &["r1", "r3"], &["r3", "r4"], &["r3", "r1"]],
    )
    .unwrap()
}

/// Strongly connected with a right-group ideal, but the two idempotent images
/// {p1,p2} and {p2,p3} overlap without being equal.
pub(crate) fn overlapping_idempotent_images() -> Automaton {
    Automaton::from_rows(
        &["p1", "p2", "p3"],
        &["a", "b", "c"],
        &[
            &["p1", "p3", "p2"],
            &["p2", "p2", "p1"],
            &["p1", "p3", "p2"],
        ],
    )
    .unwrap()
}

/// Not strongly connected; the single idempotent image {u1,u3} leaves u2
/// uncovered.
pub(crate) fn uncovered_idempotent_images() -> Automaton {
    Automaton::from_rows(
        &["u1", "u2", "u3"],
        &["a", "b"],
        &[&["u1", "u3"], &["u1", "u3"], &["u3", "u1"]],
    )
    .unwrap()
}

/// Two self-loop states with no path between them.
pub(crate) fn two_components() -> Automaton {
    Automaton::from_rows(&["p", "q"], &["a"], &[&["p"], &["q"]]).unwrap()
}
