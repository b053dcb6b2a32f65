//! Exercises every subcommand of the binary against the bundled corpus.

mod common;

use qia::format::parse_automaton;

use common::{corpus_path, data_path, parse_corpus, read_corpus, run_cli, run_cli_with};

fn corpus_arg(name: &str) -> String {
    corpus_path(name).to_str().unwrap().to_string()
}

const INFO_B_TEXT: &str = "states: 2\nletters: 2\nstrongly_connected: true\npermutation: false\nsynchronizing: true\nsemigroup_size: 2\nmonoid_size: 3\nmin_rank: 1\nideal_size: 2\nideal_idempotents: 2\nideal_right_group: true\n";

#[test]
fn info_reports_classification_and_sizes() {
    let out = run_cli(&["info", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, INFO_B_TEXT);
}

#[test]
fn info_json_uses_stable_keys() {
    let out = run_cli(&["info", "--json", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    let expected = concat!(
        "{\n",
        "  \"ideal_idempotents\": 2,\n",
        "  \"ideal_right_group\": true,\n",
        "  \"ideal_size\": 2,\n",
        "  \"letters\": 2,\n",
        "  \"min_rank\": 1,\n",
        "  \"monoid_size\": 3,\n",
        "  \"permutation\": false,\n",
        "  \"semigroup_size\": 2,\n",
        "  \"states\": 2,\n",
        "  \"strongly_connected\": true,\n",
        "  \"synchronizing\": true\n",
        "}\n",
    );
    assert_eq!(out.stdout, expected);
}

#[test]
fn info_reads_standard_input() {
    let out = run_cli_with(&["info", "-"], Some(&read_corpus("b.aut")), &[]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, INFO_B_TEXT);
}

#[test]
fn semigroup_lists_elements_with_witness_labels() {
    let out = run_cli(&["semigroup", "--elements", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "0: t1 t1\n1: t2 t2\n");
}

#[test]
fn semigroup_emits_csv() {
    let out = run_cli(&["semigroup", "--csv", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "*,0,1\n0,0,1\n1,0,1\n");
}

#[test]
fn semigroup_rejects_conflicting_flags() {
    let out = run_cli(&["semigroup", "--csv", "--elements", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 2);
}

#[test]
fn check_prints_violations_and_exits_nonzero() {
    let out = run_cli(&["check", data_path("twocomponent.aut").to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(
        out.stdout,
        "strongly_connected: false\nideal_right_group: true\nimages_partition: true\nblocks: {p,q}\nviolation: not strongly connected\nverdict: not quasi-ideal\n"
    );
}

#[test]
fn decompose_writes_both_factors() {
    let dir = tempfile::tempdir().unwrap();
    let pi_path = dir.path().join("pi.aut");
    let rho_path = dir.path().join("rho.aut");
    let out = run_cli(&[
        "decompose",
        &corpus_arg("c.aut"),
        "--out-pi",
        pi_path.to_str().unwrap(),
        "--out-rho",
        rho_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("pi: {q1,q2} {q3,q4} {q5,q6}\n"));
    assert!(out.stdout.contains("rho: {q1,q3,q5} {q2,q4,q6}\n"));
    assert!(out.stdout.contains("isomorphism:\nq1 -> ([q1],[q1])\n"));

    let pi = parse_automaton(&std::fs::read_to_string(pi_path).unwrap()).unwrap();
    assert_eq!(pi.table(), parse_corpus("a.aut").table());
    let rho = parse_automaton(&std::fs::read_to_string(rho_path).unwrap()).unwrap();
    assert_eq!(rho.table(), parse_corpus("b.aut").table());
}

#[test]
fn decompose_json_names_the_failure_stage() {
    let out = run_cli(&[
        "decompose",
        "--json",
        data_path("twocomponent.aut").to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1);
    assert!(out
        .stdout
        .contains("\"failure_stage\": \"not_strongly_connected\""));
    assert!(out.stdout.contains("\"pi_blocks\": null"));
}

#[test]
fn product_builds_the_corpus_product() {
    let out = run_cli(&["product", &corpus_arg("a.aut"), &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, read_corpus("axb.aut"));
}

#[test]
fn product_out_writes_the_file_instead() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.aut");
    let out = run_cli(&[
        "product",
        &corpus_arg("a.aut"),
        &corpus_arg("b.aut"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "");
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        read_corpus("axb.aut")
    );
}

#[test]
fn product_check_certifies_the_construction() {
    let out = run_cli(&[
        "product",
        "--check",
        &corpus_arg("a.aut"),
        &corpus_arg("b.aut"),
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with(&read_corpus("axb.aut")));
    assert!(out.stdout.ends_with("verdict: quasi-ideal\n"));
}

#[test]
fn product_check_rejects_factors_in_the_wrong_order() {
    let out = run_cli(&[
        "product",
        "--check",
        &corpus_arg("b.aut"),
        &corpus_arg("a.aut"),
    ]);
    assert_eq!(out.code, 1);
    assert!(out
        .stderr
        .contains("product check failed: first factor is not a permutation automaton"));
}

#[test]
fn product_rejects_mismatched_alphabets() {
    let out = run_cli(&[
        "product",
        &corpus_arg("a.aut"),
        data_path("twocomponent.aut").to_str().unwrap(),
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("alphabets differ"));
}

#[test]
fn iso_prints_the_state_map() {
    let out = run_cli(&["iso", &corpus_arg("c.aut"), &corpus_arg("axb.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "q1 -> (s1,t1)\nq2 -> (s1,t2)\nq3 -> (s2,t1)\nq4 -> (s2,t2)\nq5 -> (s3,t1)\nq6 -> (s3,t2)\n"
    );
}

#[test]
fn iso_reports_non_isomorphic_pairs() {
    let out = run_cli(&["iso", &corpus_arg("a.aut"), &corpus_arg("b.aut")]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "not isomorphic\n");
}

#[test]
fn dot_renders_graphviz() {
    let out = run_cli(&["dot", &corpus_arg("b.aut")]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n  \"t1\";\n  \"t2\";\n  \"t1\" -> \"t1\" [label=\"0\"];\n  \"t1\" -> \"t2\" [label=\"1\"];\n  \"t2\" -> \"t1\" [label=\"0\"];\n  \"t2\" -> \"t2\" [label=\"1\"];\n}\n"
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run_cli(&[]).code, 2);
    assert_eq!(run_cli(&["frobnicate"]).code, 2);
    assert_eq!(run_cli(&["check"]).code, 2);
    assert_eq!(run_cli(&["--help"]).code, 0);
    assert_eq!(run_cli(&["--version"]).code, 0);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run_cli(&["check", "no-such-file.aut"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("error: reading no-such-file.aut"));
}

#[test]
fn malformed_file_reports_the_line() {
    let out = run_cli(&["check", data_path("bad.aut").to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("missing transition"));
}

#[test]
fn semigroup_cap_env_var_is_enforced() {
    let out = run_cli_with(
        &["semigroup", &corpus_arg("a.aut")],
        None,
        &[("QIA_SEMIGROUP_CAP", "3")],
    );
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("semigroup size cap exceeded: cap 3"));

    let ok = run_cli_with(
        &["semigroup", &corpus_arg("a.aut")],
        None,
        &[("QIA_SEMIGROUP_CAP", "6")],
    );
    assert_eq!(ok.code, 0);

    let garbage = run_cli_with(
        &["info", &corpus_arg("a.aut")],
        None,
        &[("QIA_SEMIGROUP_CAP", "many")],
    );
    assert_eq!(garbage.code, 2);
    assert!(garbage.stderr.contains("not a valid element count"));
}
