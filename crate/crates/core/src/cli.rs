//! Command-line front end. `run` returns the exit status and both output
//! streams so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyk::{extract_tree, member};
use crate::dyck::{in_dk_lemma, in_dk_stack, DyckWord};
use crate::elin::{elin_to_dyck_nf, is_even_linear, recognize_atm, EvenLinearGrammar};
use crate::enumerate::enumerate_words;
use crate::grammar::{parse_grammar, Grammar};
use crate::normal_form::{to_cnf, to_dyck_nf, verify_equivalence_matrices, SubstitutionLedger};
use crate::phi::{build_phi, extend_grammar, verify_characterization};
use crate::trace::{pairing_of, trace_word};

#[derive(Debug, Parser)]
#[command(
    name = "dycknf",
    version,
    about = "Dyck normal form toolkit for context-free grammars"
)]
struct Cli {
    /// Length bound for enumeration-based checks.
    #[arg(long, global = true, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
    /// Seed for sampled words.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Line-oriented `key=value` output.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert to Chomsky normal form.
    Cnf { grammar: PathBuf },
    /// Convert to Dyck normal form and print the substitution ledger.
    Dyckify { grammar: PathBuf },
    /// CYK membership.
    Member { grammar: PathBuf, word: String },
    /// Trace-word of the canonical derivation tree.
    Trace { grammar: PathBuf, word: String },
    /// Decide membership in D_k with both oracles.
    CheckDyck { word: String },
    /// Extend the grammar and print the terminal map.
    Phi { grammar: PathBuf },
    /// Check the bracket characterization up to --max-len.
    VerifyPhi { grammar: PathBuf },
    /// Run the even linear recognizer and print its report.
    ElinRecognize { grammar: PathBuf, word: String },
    /// Compare languages and CYK tables of the CNF and Dyck forms.
    VerifyEquiv {
        grammar: PathBuf,
        word: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Error(String),
}

fn error<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Error(e.to_string())
}

fn load(path: &PathBuf) -> Result<Grammar, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    parse_grammar(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn dyck_form(g: &Grammar) -> Result<(Grammar, Grammar, SubstitutionLedger), Fail> {
    let cnf = to_cnf(g).map_err(error)?;
    let (d, ledger) = to_dyck_nf(&cnf).map_err(error)?;
    Ok((cnf, d, ledger))
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return CliOutcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut out = String::new();
    match dispatch(&cli, &mut out) {
        Ok(code) => CliOutcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(Fail::Usage(m)) => CliOutcome {
            code: 2,
            stdout: out,
            stderr: format!("error: {m}\n"),
        },
        Err(Fail::Error(m)) => CliOutcome {
            code: 1,
            stdout: out,
            stderr: format!("error: {m}\n"),
        },
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, Fail> {
    let m = cli.machine;
    let max_len = cli.max_len as usize;
    match &cli.command {
        Command::Cnf { grammar } => {
            let g = to_cnf(&load(grammar)?).map_err(error)?;
            out.push_str(&g.to_string());
            Ok(0)
        }
        Command::Dyckify { grammar } => {
            let (_, d, ledger) = dyck_form(&load(grammar)?)?;
            if m {
                let _ = writeln!(out, "nonterminals={}", d.nonterminals().len());
                let _ = writeln!(out, "rules={}", d.rules().len());
                for r in d.rules() {
                    let _ = writeln!(out, "rule {r}");
                }
                for e in &ledger.entries {
                    let _ = writeln!(out, "ledger {e}");
                }
            } else {
                out.push_str(&d.to_string());
                let _ = writeln!(
                    out,
                    "# {} nonterminals, {} rules",
                    d.nonterminals().len(),
                    d.rules().len()
                );
                for e in &ledger.entries {
                    let _ = writeln!(out, "# {e}");
                }
            }
            Ok(0)
        }
        Command::Member { grammar, word } => {
            let g = to_cnf(&load(grammar)?).map_err(error)?;
            let ok = member(&g, word).map_err(error)?;
            let _ = writeln!(
                out,
                "{}{}",
                if m { "verdict=" } else { "" },
                if ok { "accept" } else { "reject" }
            );
            Ok(verdict(ok))
        }
        Command::Trace { grammar, word } => {
            let g = load(grammar)?;
            let d = if g.is_dyck_nf() { g } else { dyck_form(&g)?.1 };
            if !member(&d, word).map_err(error)? {
                let _ = writeln!(out, "{}reject", if m { "verdict=" } else { "" });
                return Ok(1);
            }
            let tree = extract_tree(&d, word).map_err(error)?;
            let t = trace_word(&d, &tree).map_err(error)?;
            let pairing = pairing_of(&d).map_err(error)?;
            let named: Vec<String> = t.letters.0.iter().map(|b| pairing.render(*b)).collect();
            if m {
                let _ = writeln!(out, "trace={}", t.letters);
                let _ = writeln!(out, "named={}", named.join(" "));
                let _ = writeln!(out, "length={}", t.letters.len());
            } else {
                let _ = writeln!(out, "{}", t.letters);
                let _ = writeln!(out, "{}", named.join(" "));
            }
            Ok(0)
        }
        Command::CheckDyck { word } => {
            let w: DyckWord = word.parse().map_err(|e| Fail::Usage(format!("{e}")))?;
            let (a, b) = (in_dk_lemma(&w), in_dk_stack(&w));
            if a != b {
                return Err(Fail::Error(format!(
                    "oracles disagree on {w}: lemma={a} stack={b}"
                )));
            }
            let _ = writeln!(out, "{}{}", if m { "in_dk=" } else { "in D_k: " }, a);
            Ok(verdict(a))
        }
        Command::Phi { grammar } => {
            let g = load(grammar)?;
            let d = if g.is_dyck_nf() { g } else { dyck_form(&g)?.1 };
            let eg = extend_grammar(&d).map_err(error)?;
            let phi = build_phi(&eg);
            for (b, img) in &phi.images {
                let name = eg.pairing.render(*b);
                let img = img.map(String::from).unwrap_or_else(|| "eps".into());
                if m {
                    let _ = writeln!(out, "phi {b} {name} {img}");
                } else {
                    let _ = writeln!(out, "{b:<4} {name:<12} -> {img}");
                }
            }
            Ok(0)
        }
        Command::VerifyPhi { grammar } => {
            let g = load(grammar)?;
            let d = if g.is_dyck_nf() { g } else { dyck_form(&g)?.1 };
            let eg = extend_grammar(&d).map_err(error)?;
            let report = verify_characterization(&eg, max_len).map_err(error)?;
            out.push_str(&report.to_string());
            Ok(verdict(report.passed()))
        }
        Command::ElinRecognize { grammar, word } => {
            let g = load(grammar)?;
            let d = if is_even_linear(&g) {
                elin_to_dyck_nf(&EvenLinearGrammar::new(g).map_err(error)?)
                    .map_err(error)?
                    .grammar
            } else {
                g
            };
            let r = recognize_atm(&d, word).map_err(error)?;
            out.push_str(&r.to_string());
            Ok(verdict(r.accepted))
        }
        Command::VerifyEquiv { grammar, word } => {
            let g = load(grammar)?;
            let (cnf, d, ledger) = dyck_form(&g)?;
            let lhs = enumerate_words(&cnf, max_len).map_err(error)?;
            let rhs = enumerate_words(&d, max_len).map_err(error)?;
            let lang_ok = lhs == rhs;
            let words = match word {
                Some(w) => vec![w.clone()],
                None => sample_words(&cnf, &lhs, max_len, cli.seed),
            };
            let mut bad = Vec::new();
            for w in &words {
                if !verify_equivalence_matrices(&cnf, &d, &ledger, w).map_err(error)? {
                    bad.push(w.clone());
                }
            }
            let _ = writeln!(
                out,
                "{}language={} words={} matrices={} mismatches={}",
                if m { "" } else { "verify-equiv " },
                if lang_ok { "equal" } else { "differ" },
                lhs.len(),
                words.len(),
                bad.len()
            );
            for w in &bad {
                let _ = writeln!(out, "MISMATCH {w}");
            }
            Ok(verdict(lang_ok && bad.is_empty()))
        }
    }
}

/// Members of the language plus seeded random words over its terminals.
fn sample_words(g: &Grammar, members: &[String], max_len: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<String> = members.iter().take(200).cloned().collect();
    let t = g.terminals();
    for _ in 0..100 {
        let n = rng.random_range(1..=max_len);
        words.push((0..n).map(|_| t[rng.random_range(0..t.len())]).collect());
    }
    words
}
