//! Command-line interface over the library.
//!
//! Exit codes: 0 when the command succeeds (and any checked property holds),
//! 1 when a checked property fails to hold, 2 on usage, input, or resource
//! errors.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qia::analysis::{
    is_permutation, is_strongly_connected, is_synchronizing, minimal_ideal, quasi_ideal_report_with,
};
use qia::automaton::Automaton;
use qia::decompose::{decompose_with_cap, verify_product_with_cap};
use qia::error::Error;
use qia::format::{parse_automaton, serialize_automaton, to_dot};
use qia::product::{direct_product, find_isomorphism};
use qia::semigroup::{semigroup_with_cap, DEFAULT_ELEMENT_CAP};

#[derive(Parser)]
#[command(
    name = "qia",
    version,
    about = "Transition semigroups, quasi-ideal checks, and product decompositions of finite automata",
    after_help = "Files use the plain-text automaton format; pass '-' to read standard input.\n\nEnvironment:\n  QIA_SEMIGROUP_CAP  Cap on enumerated semigroup elements (default 1000000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize an automaton: size, classification, semigroup statistics
    Info {
        file: PathBuf,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the multiplication table of the transition semigroup
    Semigroup {
        file: PathBuf,
        /// Emit CSV instead of aligned text
        #[arg(long)]
        csv: bool,
        /// List elements with their witnesses and mappings instead
        #[arg(long, conflicts_with = "csv")]
        elements: bool,
    },
    /// Check the quasi-ideal conditions; exits 1 when the verdict is negative
    Check {
        file: PathBuf,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Decompose a quasi-ideal automaton into its two canonical factors
    Decompose {
        file: PathBuf,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        /// Write the permutation factor to this file
        #[arg(long, value_name = "FILE")]
        out_pi: Option<PathBuf>,
        /// Write the synchronizing factor to this file
        #[arg(long, value_name = "FILE")]
        out_rho: Option<PathBuf>,
    },
    /// Build the direct product of two automata over a shared alphabet
    Product {
        first: PathBuf,
        second: PathBuf,
        /// Verify the factor hypotheses and certify the product quasi-ideal
        #[arg(long)]
        check: bool,
        /// Write the product to this file instead of standard output
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism; exits 1 when none exists
    Iso { first: PathBuf, second: PathBuf },
    /// Render an automaton as Graphviz DOT
    Dot { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Automaton, String> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?
    };
    parse_automaton(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn element_cap() -> Result<usize, String> {
    match std::env::var("QIA_SEMIGROUP_CAP") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ELEMENT_CAP),
        Err(e) => Err(format!("QIA_SEMIGROUP_CAP: {e}")),
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| format!("QIA_SEMIGROUP_CAP: '{v}' is not a valid element count")),
    }
}

fn write_out(path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display()))
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let cap = element_cap()?;
    let fail = |e: Error| e.to_string();
    match cli.command {
        Command::Info { file, json } => {
            let aut = load(&file)?;
            let sg = semigroup_with_cap(&aut, cap).map_err(fail)?;
            let ideal = minimal_ideal(&sg);
            if json {
                print!(
                    "{}",
                    json_line(&serde_json::json!({
                        "states": aut.state_count(),
                        "letters": aut.letter_count(),
                        "strongly_connected": is_strongly_connected(&aut),
                        "permutation": is_permutation(&aut),
                        "synchronizing": is_synchronizing(&sg),
                        "semigroup_size": sg.len(),
                        "monoid_size": sg.monoid_size(),
                        "min_rank": ideal.min_rank,
                        "ideal_size": ideal.members.len(),
                        "ideal_idempotents": ideal.idempotents.len(),
                        "ideal_right_group": ideal.right_group,
                    }))
                );
            } else {
                print!(
                    "states: {}\nletters: {}\nstrongly_connected: {}\npermutation: {}\nsynchronizing: {}\nsemigroup_size: {}\nmonoid_size: {}\nmin_rank: {}\nideal_size: {}\nideal_idempotents: {}\nideal_right_group: {}\n",
                    aut.state_count(),
                    aut.letter_count(),
                    is_strongly_connected(&aut),
                    is_permutation(&aut),
                    is_synchronizing(&sg),
                    sg.len(),
                    sg.monoid_size(),
                    ideal.min_rank,
                    ideal.members.len(),
                    ideal.idempotents.len(),
                    ideal.right_group,
                )
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Semigroup {
            file,
            csv,
            elements,
        } => {
            let aut = load(&file)?;
            let sg = semigroup_with_cap(&aut, cap).map_err(fail)?;
            if elements {
                let mut out = String::new();
                for i in 0..sg.len() {
                    let targets: Vec<&str> = sg
                        .element(i)
                        .mapping()
                        .iter()
                        .map(|&t| aut.state_name(t))
                        .collect();
                    out.push_str(&format!("{}: {}\n", sg.label(i), targets.join(" ")));
                }
                print!("{out}");
            } else if csv {
                print!("{}", sg.cayley_csv());
            } else {
                print!("{}", sg.cayley_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file, json } => {
            let aut = load(&file)?;
            let sg = semigroup_with_cap(&aut, cap).map_err(fail)?;
            let ideal = minimal_ideal(&sg);
            let report = quasi_ideal_report_with(&aut, &sg, &ideal);
            if json {
                print!("{}", json_line(&report.to_json()));
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Decompose {
            file,
            json,
            out_pi,
            out_rho,
        } => {
            let aut = load(&file)?;
            let outcome = decompose_with_cap(&aut, cap).map_err(fail)?;
            if json {
                print!("{}", json_line(&outcome.to_json(&aut)));
            } else {
                print!("{}", outcome.to_text(&aut));
            }
            if let Some(d) = &outcome.decomposition {
                if let Some(path) = &out_pi {
                    write_out(path, &serialize_automaton(&d.quotient_pi))?;
                }
                if let Some(path) = &out_rho {
                    write_out(path, &serialize_automaton(&d.quotient_rho))?;
                }
            }
            Ok(if outcome.decomposition.is_some() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Product {
            first,
            second,
            check,
            out,
        } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let product = direct_product(&a, &b).map_err(fail)?;
            let serialized = serialize_automaton(&product);
            match &out {
                Some(path) => write_out(path, &serialized)?,
                None => print!("{serialized}"),
            }
            if check {
                match verify_product_with_cap(&a, &b, cap) {
                    Ok(report) => {
                        print!("{}", report.to_text());
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(
                        e @ (Error::FirstFactorNotPermutation
                        | Error::FirstFactorNotStronglyConnected
                        | Error::SecondFactorNotSynchronizing
                        | Error::SecondFactorNotStronglyConnected),
                    ) => {
                        eprintln!("product check failed: {e}");
                        Ok(ExitCode::from(1))
                    }
                    Err(e) => Err(fail(e)),
                }
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Iso { first, second } => {
            let a = load(&first)?;
            let b = load(&second)?;
            match find_isomorphism(&a, &b).map_err(fail)? {
                Some(map) => {
                    print!("{}", map.to_text(&a, &b));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Dot { file } => {
            let aut = load(&file)?;
            print!("{}", to_dot(&aut));
            Ok(ExitCode::SUCCESS)
        }
    }
}
