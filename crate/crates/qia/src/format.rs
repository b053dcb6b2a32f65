//! Plain-text automaton format, DOT export, and JSON rendering.
//!
//! The text format is line based. Blank lines and lines starting with `#`
//! are ignored. The first content line lists the states, the second the
//! alphabet, and every following line is one transition:
//!
//! ```text
//! # three states, two letters
//! states: s1 s2 s3
//! alphabet: 0 1
//! s1 0 s1
//! s1 1 s2
//! ...
//! ```
//!
//! Identifiers are whitespace-free; every (state, letter) pair must appear
//! exactly once.

use serde_json::{json, Value};

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// Parses the text format. Errors carry 1-based line numbers.
pub fn parse_automaton(input: &str) -> Result<Automaton> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (line, states) = expect_header(lines.next(), "states")?;
    let (_, alphabet) = expect_header(lines.next(), "alphabet")?;
    if states.is_empty() {
        return Err(Error::Parse {
            line,
            message: "no states listed".to_string(),
        });
    }

    let state_index = |name: &str, line: usize| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown state '{name}'"),
            })
    };
    let letter_index = |name: &str, line: usize| {
        alphabet
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown letter '{name}'"),
            })
    };

    let mut table = vec![vec![usize::MAX; alphabet.len()]; states.len()];
    let mut declared_at = vec![vec![0usize; alphabet.len()]; states.len()];
    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let [state, letter, target] = tokens.as_slice() else {
            return Err(Error::Parse {
                line,
                message: format!(
                    "expected 'state letter target', got {} tokens",
                    tokens.len()
                ),
            });
        };
        let s = state_index(state, line)?;
        let l = letter_index(letter, line)?;
        let t = state_index(target, line)?;
        if table[s][l] != usize::MAX {
            let message = if table[s][l] == t {
                format!(
                    "duplicate transition for ({state}, {letter}), first given on line {}",
                    declared_at[s][l]
                )
            } else {
                format!(
                    "conflicting transition for ({state}, {letter}): '{}' on line {} vs '{target}'",
                    states[table[s][l]], declared_at[s][l]
                )
            };
            return Err(Error::Parse { line, message });
        }
        table[s][l] = t;
        declared_at[s][l] = line;
    }
    for (s, row) in table.iter().enumerate() {
        if let Some(l) = row.iter().position(|&t| t == usize::MAX) {
            return Err(Error::MissingTransition {
                state: states[s].clone(),
                letter: alphabet[l].clone(),
            });
        }
    }
    Automaton::from_index_table(states, alphabet, table)
}

fn expect_header(item: Option<(usize, &str)>, key: &str) -> Result<(usize, Vec<String>)> {
    let (line, text) = item.ok_or(Error::Parse {
        line: 0,
        message: format!("missing '{key}:' line"),
    })?;
    let rest = text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("expected '{key}:' line, got '{text}'"),
        })?;
    Ok((line, rest.split_whitespace().map(str::to_string).collect()))
}

/// Canonical text form: header lines, then transitions in state-major,
/// letter-minor order.
pub fn serialize_automaton(aut: &Automaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("states: {}\n", aut.states().join(" ")));
    out.push_str(&format!("alphabet: {}\n", aut.alphabet().join(" ")));
    for s in 0..aut.state_count() {
        for l in 0..aut.letter_count() {
            out.push_str(&format!(
                "{} {} {}\n",
                aut.state_name(s),
                aut.letter_name(l),
                aut.state_name(aut.step(s, l))
            ));
        }
    }
    out
}

/// Graphviz rendering. Parallel edges are merged with comma-joined labels.
pub fn to_dot(aut: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..aut.state_count() {
        out.push_str(&format!("  {};\n", dot_quote(aut.state_name(s))));
    }
    for s in 0..aut.state_count() {
        let mut labels: Vec<(usize, Vec<&str>)> = Vec::new();
        for l in 0..aut.letter_count() {
            let t = aut.step(s, l);
            match labels.iter_mut().find(|(dst, _)| *dst == t) {
                Some((_, ls)) => ls.push(aut.letter_name(l)),
                None => labels.push((t, vec![aut.letter_name(l)])),
            }
        }
        for (t, ls) in labels {
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                dot_quote(aut.state_name(s)),
                dot_quote(aut.state_name(t)),
                dot_quote(&ls.join(","))
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// JSON form with rows of target state names, one row per state in order.
pub fn automaton_json(aut: &Automaton) -> Value {
    let rows: Vec<Vec<&str>> = (0..aut.state_count())
        .map(|s| {
            (0..aut.letter_count())
                .map(|l| aut.state_name(aut.step(s, l)))
                .collect()
        })
        .collect();
    json!({
        "states": aut.states(),
        "alphabet": aut.alphabet(),
        "rows": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_accepts_comments_blanks_and_any_transition_order() {
        let text = "\n# permutation example\nstates: s1 s2 s3\nalphabet: 0 1\n\ns3 1 s3\ns1 0 s1\ns1 1 s2\ns2 0 s3\n# middle comment\ns2 1 s1\ns3 0 s2\n";
        let aut = parse_automaton(text).unwrap();
        assert_eq!(aut, fixtures::automaton_a());
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        for aut in [
            fixtures::automaton_a(),
            fixtures::automaton_b(),
            fixtures::automaton_axb(),
            fixtures::automaton_c(),
        ] {
            let text = serialize_automaton(&aut);
            assert_eq!(parse_automaton(&text).unwrap(), aut);
        }
    }

    #[test]
    fn serialized_form_is_canonical() {
        assert_eq!(
            serialize_automaton(&fixtures::automaton_b()),
            "states: t1 t2\nalphabet: 0 1\nt1 0 t1\nt1 1 t2\nt2 0 t1\nt2 1 t2\n"
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let missing_header = "alphabet: 0\nstates: a\n";
        assert_eq!(
            parse_automaton(missing_header).unwrap_err(),
            Error::Parse {
                line: 1,
                message: "expected 'states:' line, got 'alphabet: 0'".to_string()
            }
        );

        let bad_arity = "states: a\nalphabet: 0\na 0\n";
        assert!(matches!(
            parse_automaton(bad_arity).unwrap_err(),
            Error::Parse { line: 3, .. }
        ));

        let unknown = "states: a\nalphabet: 0\na 0 b\n";
        assert_eq!(
            parse_automaton(unknown).unwrap_err(),
            Error::Parse {
                line: 3,
                message: "unknown state 'b'".to_string()
            }
        );

        let conflict = "states: a b\nalphabet: 0\na 0 a\nb 0 a\na 0 b\n";
        let err = parse_automaton(conflict).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 5,
                message: "conflicting transition for (a, 0): 'a' on line 3 vs 'b'".to_string()
            }
        );

        let duplicate = "states: a\nalphabet: 0\na 0 a\na 0 a\n";
        assert!(matches!(
            parse_automaton(duplicate).unwrap_err(),
            Error::Parse { line: 4, .. }
        ));

        let empty = "";
        assert!(matches!(
            parse_automaton(empty).unwrap_err(),
            Error::Parse { line: 0, .. }
        ));
    }

    #[test]
    fn parse_reports_missing_transitions() {
        let text = "states: a b\nalphabet: 0\na 0 b\n";
        assert_eq!(
            parse_automaton(text).unwrap_err(),
            Error::MissingTransition {
                state: "b".to_string(),
                letter: "0".to_string()
            }
        );
    }

    #[test]
    fn dot_output_merges_parallel_edges() {
        let dot = to_dot(&fixtures::automaton_b());
        assert_eq!(
            dot,
            "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n  \"t1\";\n  \"t2\";\n  \"t1\" -> \"t1\" [label=\"0\"];\n  \"t1\" -> \"t2\" [label=\"1\"];\n  \"t2\" -> \"t1\" [label=\"0\"];\n  \"t2\" -> \"t2\" [label=\"1\"];\n}\n"
        );

        let both =
            Automaton::from_rows(&["x", "y"], &["a", "b"], &[&["y", "y"], &["x", "x"]]).unwrap();
        let dot = to_dot(&both);
        assert!(dot.contains("\"x\" -> \"y\" [label=\"a,b\"];"));
    }

    #[test]
    fn dot_quoting_escapes_special_characters() {
        assert_eq!(dot_quote("plain"), "\"plain\"");
        assert_eq!(dot_quote("q\"1"), "\"q\\\"1\"");
        assert_eq!(dot_quote("a\\b"), "\"a\\\\b\"");
    }

    #[test]
    fn json_form_lists_rows_in_order() {
        let v = automaton_json(&fixtures::automaton_b());
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            "{\"alphabet\":[\"0\",\"1\"],\"rows\":[[\"t1\",\"t2\"],[\"t1\",\"t2\"]],\"states\":[\"t1\",\"t2\"]}"
        );
    }
}
