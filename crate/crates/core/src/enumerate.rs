//! Brute-force language enumeration, the oracle for every language-equality
//! check in the crate.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::grammar::{Grammar, Symbol};

/// Default cap on the number of (nonterminal, word) entries held in the table.
pub const DEFAULT_WORD_CAP: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("enumeration table exceeded {0} entries")]
    ResourceLimit(usize),
}

/// Sorts words by length, then lexicographically.
pub fn sort_length_lex(words: &mut [String]) {
    words.sort_by(|a, b| {
        a.chars()
            .count()
            .cmp(&b.chars().count())
            .then_with(|| a.cmp(b))
    });
}

/// All words of `L(g)` with length in `1..=max_len`, length-lex ordered.
pub fn enumerate_words(g: &Grammar, max_len: usize) -> Result<Vec<String>, EnumError> {
    enumerate_words_capped(g, max_len, DEFAULT_WORD_CAP)
}

pub fn enumerate_words_capped(
    g: &Grammar,
    max_len: usize,
    cap: usize,
) -> Result<Vec<String>, EnumError> {
    let table = LengthTable::build(g, max_len, cap)?;
    let start = table.index[g.start()];
    let mut out: Vec<String> = (1..=max_len)
        .flat_map(|n| table.sets[start][n].iter().cloned())
        .collect();
    sort_length_lex(&mut out);
    Ok(out)
}

/// `sets[X][n]` holds the words of length `n` derivable from nonterminal `X`.
/// Filled length by length; within a length the rules are iterated to a
/// fixpoint, which is only needed when unit or nullable rules let a
/// nonterminal depend on words of its own length.
struct LengthTable {
    index: HashMap<String, usize>,
    sets: Vec<Vec<HashSet<String>>>,
}

enum Item {
    T(char),
    N(usize),
}

impl LengthTable {
    fn build(g: &Grammar, max_len: usize, cap: usize) -> Result<LengthTable, EnumError> {
        let index: HashMap<String, usize> = g
            .nonterminals()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let rules: Vec<(usize, Vec<Item>)> = g
            .rules()
            .iter()
            .map(|r| {
                let rhs = r
                    .rhs
                    .iter()
                    .map(|s| match s {
                        Symbol::Terminal(c) => Item::T(*c),
                        Symbol::Nonterminal(n) => Item::N(index[n]),
                    })
                    .collect();
                (index[&r.lhs], rhs)
            })
            .collect();
        let nullable = nullable_set(g, &index);
        let same_length_dependency = rules.iter().any(|(_, rhs)| {
            rhs.iter()
                .filter(|s| match s {
                    Item::T(_) => true,
                    Item::N(x) => !nullable[*x],
                })
                .count()
                <= 1
                && rhs.iter().any(|s| matches!(s, Item::N(_)))
        });
        let mut sets = vec![vec![HashSet::new(); max_len + 1]; index.len()];
        for (x, is_nullable) in nullable.iter().enumerate() {
            if *is_nullable {
                sets[x][0].insert(String::new());
            }
        }
        let mut total = 0usize;
        for n in 1..=max_len {
            loop {
                let mut changed = false;
                for (lhs, rhs) in &rules {
                    let produced = expand(rhs, n, &sets);
                    for w in produced {
                        if sets[*lhs][n].insert(w) {
                            changed = true;
                            total += 1;
                            if total > cap {
                                return Err(EnumError::ResourceLimit(cap));
                            }
                        }
                    }
                }
                if !changed || !same_length_dependency {
                    break;
                }
            }
        }
        Ok(LengthTable { index, sets })
    }
}

fn nullable_set(g: &Grammar, index: &HashMap<String, usize>) -> Vec<bool> {
    let mut nullable = vec![false; index.len()];
    loop {
        let mut changed = false;
        for r in g.rules() {
            let x = index[&r.lhs];
            if !nullable[x]
                && r.rhs.iter().all(|s| match s {
                    Symbol::Terminal(_) => false,
                    Symbol::Nonterminal(n) => nullable[index[n]],
                })
            {
                nullable[x] = true;
                changed = true;
            }
        }
        if !changed {
            return nullable;
        }
    }
}

/// Words of exactly length `n` produced by the sequence `rhs`, reading each
/// nonterminal's current sets.
fn expand(rhs: &[Item], n: usize, sets: &[Vec<HashSet<String>>]) -> Vec<String> {
    // partial[len] = words of length len produced by the prefix read so far
    let mut partial: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    partial[0].push(String::new());
    for item in rhs {
        let mut next: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        for (len, words) in partial.iter().enumerate() {
            if words.is_empty() {
                continue;
            }
            match item {
                Item::T(c) => {
                    if len < n {
                        next[len + 1].extend(words.iter().map(|w| {
                            let mut s = w.clone();
                            s.push(*c);
                            s
                        }));
                    }
                }
                Item::N(x) => {
                    for (l, suffixes) in sets[*x].iter().enumerate().take(n - len + 1) {
                        for w in words {
                            for s in suffixes {
                                let mut joined = String::with_capacity(w.len() + s.len());
                                joined.push_str(w);
                                joined.push_str(s);
                                next[len + l].push(joined);
                            }
                        }
                    }
                }
            }
        }
        for v in &mut next {
            v.sort_unstable();
            v.dedup();
        }
        partial = next;
    }
    std::mem::take(&mut partial[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn expression_words() {
        let g =
            parse_grammar("start: E\nE -> 'a' | T '*' R | E '+' T\nT -> 'a' | T '*' R\nR -> 'a'")
                .unwrap();
        let w = enumerate_words(&g, 3).unwrap();
        assert_eq!(w, ["a", "a*a", "a+a"]);
    }

    #[test]
    fn minimal() {
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        assert_eq!(enumerate_words(&g, 5).unwrap(), ["a"]);
    }

    #[test]
    fn unit_and_empty_rules() {
        let g = parse_grammar("start: S\nS -> A | 'x' S\nA -> B 'b'\nB -> eps | 'a'").unwrap();
        assert_eq!(
            enumerate_words(&g, 3).unwrap(),
            ["b", "ab", "xb", "xab", "xxb"]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = parse_grammar("start: S\nS -> 'a' | 'b' | S S").unwrap();
        assert_eq!(
            enumerate_words_capped(&g, 10, 100),
            Err(EnumError::ResourceLimit(100))
        );
    }
}
