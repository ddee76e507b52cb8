//! Fixture grammars and seeded random grammar generators used by the tests,
//! the acceptance harness, and the CLI.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::enumerate_words;
use crate::grammar::{parse_grammar, Grammar, Rule};

pub const EXPR: &str = include_str!("../grammars/expr.cfg");
pub const EXPR_CNF: &str = include_str!("../grammars/expr-cnf.cfg");
pub const EXPR_DYCK: &str = include_str!("../grammars/expr-dyck.cfg");
pub const ANBN: &str = include_str!("../grammars/anbn.cfg");
pub const PALINDROMES: &str = include_str!("../grammars/palindromes.cfg");

/// The expression grammar `E -> a | T*R | E+T`, `T -> a | T*R`, `R -> a`.
pub fn expr() -> Grammar {
    parse_grammar(EXPR).expect("fixture parses")
}

/// Its Chomsky normal form as printed in the worked example.
pub fn expr_cnf() -> Grammar {
    parse_grammar(EXPR_CNF).expect("fixture parses")
}

/// Its Dyck normal form as printed in the worked example, with `T'` spelled
/// `Tp` and brackets dropped from the names.
pub fn expr_dyck() -> Grammar {
    parse_grammar(EXPR_DYCK).expect("fixture parses")
}

const NAMES: [&str; 7] = ["A", "B", "C", "D", "F", "G", "H"];

/// A random CNF grammar with start `S` (never on a right-hand side), at most
/// `max_nonterminals` nonterminals in total, and terminals drawn from
/// `alphabet`. Retries until the language has a word of length at least 2.
pub fn random_cnf(seed: u64, max_nonterminals: usize, alphabet: &[char]) -> Grammar {
    assert!(max_nonterminals >= 2 && !alphabet.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n_other = rng.random_range(1..max_nonterminals.min(NAMES.len() + 1));
        let names: Vec<&str> = NAMES[..n_other].to_vec();
        let mut rules = Vec::new();
        for lhs in std::iter::once("S").chain(names.iter().copied()) {
            let count = rng.random_range(1..=3);
            for _ in 0..count {
                if rng.random_bool(0.6) {
                    let b = names[rng.random_range(0..names.len())];
                    let c = names[rng.random_range(0..names.len())];
                    rules.push(Rule::binary(lhs, b, c));
                } else {
                    let t = alphabet[rng.random_range(0..alphabet.len())];
                    rules.push(Rule::terminal(lhs, t));
                }
            }
        }
        // every nonterminal needs at least one rule to be declared; all do
        let g = Grammar::new("S", rules).expect("generated grammar is valid");
        let words = enumerate_words(&g, 5).expect("small bound");
        if words.iter().any(|w| w.len() >= 2) {
            return g;
        }
    }
}

/// The expression grammar's CNF plus `count - 1` seeded random CNF grammars
/// with at most 8 nonterminals.
pub fn cnf_corpus(seed: u64, count: usize) -> Vec<Grammar> {
    let mut out = vec![expr_cnf()];
    let alphabets: [&[char]; 3] = [&['a', 'b'], &['a', 'b', 'c'], &['a']];
    for i in 1..count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        out.push(random_cnf(s, 8, alphabets[i % alphabets.len()]));
    }
    out
}

/// Even linear grammars exercised by the recognizer tests.
pub fn even_linear_corpus() -> Vec<Grammar> {
    [
        ANBN,
        PALINDROMES,
        "start: S\nS -> 'a' S 'b' | 'a' 'b'",
        "start: S\nS -> 'a' A 'b' | 'c'\nA -> 'b' S 'a' | 'b' 'b'",
        "start: S\nS -> 'a' 'b' S 'b' 'a' | 'c' | A\nA -> 'b' A 'a' | 'a' 'a' 'c'",
        "start: S\nS -> 'a' S 'a' | 'b' S 'a' | 'c' | 'c' 'c'",
    ]
    .iter()
    .map(|t| parse_grammar(t).expect("fixture parses"))
    .collect()
}
