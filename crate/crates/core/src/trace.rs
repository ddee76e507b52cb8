//! Bracket pairings of Dyck normal form grammars and trace-words of their
//! derivations.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::cyk::{all_trees, CykError};
use crate::derivation::{leftmost_derivation, Child, DerivationTree, TreeError};
use crate::dyck::{Bracket, DyckWord, Side};
use crate::enumerate::{enumerate_words, EnumError};
use crate::grammar::Grammar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("grammar is not in Dyck normal form: {0}")]
    NotDyck(String),
    #[error("derivation of length {0} has no trace-word (at least 3 steps needed)")]
    DerivationTooShort(usize),
    #[error("nonterminal {0} is not in any bracket pair")]
    Unpaired(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Cyk(#[from] CykError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("more than {0} trace-words")]
    ResourceLimit(usize),
}

/// Left/right partners of a Dyck normal form grammar, numbered from 1 in
/// order of first occurrence in a binary rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketPairing {
    pairs: Vec<(String, String)>,
    start: String,
    index: HashMap<String, Bracket>,
    /// Non-start nonterminals never used in a binary rule.
    unpaired: Vec<String>,
}

impl BracketPairing {
    pub fn from_pairs(start: impl Into<String>, pairs: Vec<(String, String)>) -> BracketPairing {
        let mut index = HashMap::new();
        for (i, (l, r)) in pairs.iter().enumerate() {
            index.insert(l.clone(), Bracket::left(i + 1));
            index.insert(r.clone(), Bracket::right(i + 1));
        }
        BracketPairing {
            pairs,
            start: start.into(),
            index,
            unpaired: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn unpaired(&self) -> &[String] {
        &self.unpaired
    }

    pub fn bracket(&self, nt: &str) -> Option<Bracket> {
        self.index.get(nt).copied()
    }

    /// The nonterminal carrying bracket `b`.
    pub fn nonterminal(&self, b: Bracket) -> Option<&str> {
        let (l, r) = self.pairs.get(b.pair.checked_sub(1)?)?;
        Some(match b.side {
            Side::Left => l,
            Side::Right => r,
        })
    }

    /// The partner of `nt` in its pair.
    pub fn partner(&self, nt: &str) -> Option<&str> {
        let b = self.bracket(nt)?;
        let flipped = Bracket {
            pair: b.pair,
            side: match b.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
        };
        self.nonterminal(flipped)
    }

    /// Renders a bracket with its nonterminal, e.g. `[E` or `]T1`.
    pub fn render(&self, b: Bracket) -> String {
        let name = self.nonterminal(b).unwrap_or("?");
        match b.side {
            Side::Left => format!("[{name}"),
            Side::Right => format!("]{name}"),
        }
    }
}

pub fn pairing_of(g: &Grammar) -> Result<BracketPairing, TraceError> {
    if let Some(v) = g.dyck_nf_violation() {
        return Err(TraceError::NotDyck(v));
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    for r in g.rules() {
        if let Some((b, c)) = r.as_binary() {
            if !pairs.iter().any(|(l, _)| l == b) {
                pairs.push((b.to_string(), c.to_string()));
            }
        }
    }
    let mut p = BracketPairing::from_pairs(g.start(), pairs);
    p.unpaired = g
        .nonterminals()
        .iter()
        .filter(|n| *n != g.start() && p.bracket(n).is_none())
        .cloned()
        .collect();
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord {
    pub letters: DyckWord,
    pub word: String,
}

fn bracket_of(p: &BracketPairing, nt: &str) -> Result<Bracket, TraceError> {
    p.bracket(nt)
        .ok_or_else(|| TraceError::Unpaired(nt.to_string()))
}

/// Depth-first read of the interior nodes below the root.
pub fn trace_word(g: &Grammar, tree: &DerivationTree) -> Result<TraceWord, TraceError> {
    let p = pairing_of(g)?;
    trace_with(&p, g, tree)
}

pub(crate) fn trace_with(
    p: &BracketPairing,
    g: &Grammar,
    tree: &DerivationTree,
) -> Result<TraceWord, TraceError> {
    tree.validate_derivation(g)?;
    let labels = tree.preorder_labels();
    if labels.len() == 1 {
        return Err(TraceError::DerivationTooShort(1));
    }
    let letters = labels[1..]
        .iter()
        .map(|l| bracket_of(p, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TraceWord {
        letters: DyckWord(letters),
        word: tree.frontier(),
    })
}

/// The trace read off the leftmost derivation: left-hand sides of every
/// step but the first.
pub fn trace_by_rewrite_order(g: &Grammar, tree: &DerivationTree) -> Result<TraceWord, TraceError> {
    let p = pairing_of(g)?;
    let steps = leftmost_derivation(g, tree)?;
    if steps.len() < 3 {
        return Err(TraceError::DerivationTooShort(steps.len()));
    }
    let letters = steps[1..]
        .iter()
        .map(|r| bracket_of(&p, &r.lhs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TraceWord {
        letters: DyckWord(letters),
        word: tree.frontier(),
    })
}

pub const DEFAULT_TRACE_CAP: usize = 1_000_000;

/// Trace-words of every derivation tree of every word of length at most
/// `max_len`, sorted and without duplicates.
pub fn trace_language(
    g: &Grammar,
    max_len: usize,
    cap: usize,
) -> Result<Vec<TraceWord>, TraceError> {
    let p = pairing_of(g)?;
    let mut out: BTreeSet<TraceWord> = BTreeSet::new();
    for w in enumerate_words(g, max_len)? {
        let remaining = cap.saturating_sub(out.len()).max(1);
        for t in all_trees(g, &w, remaining).map_err(|_| TraceError::ResourceLimit(cap))? {
            if t.children.iter().all(|c| matches!(c, Child::Leaf(_))) {
                continue;
            }
            out.insert(trace_with(&p, g, &t)?);
        }
        if out.len() > cap {
            return Err(TraceError::ResourceLimit(cap));
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyk::extract_tree;
    use crate::grammar::parse_grammar;

    #[test]
    fn pairing_small() {
        let g = parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> 'b'").unwrap();
        let p = pairing_of(&g).unwrap();
        assert_eq!(p.pairs(), [("A".to_string(), "B".to_string())]);
        assert_eq!(p.partner("B"), Some("A"));
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        assert_eq!(pairing_of(&g).unwrap().k(), 0);
    }

    #[test]
    fn short_derivation_has_no_trace() {
        let g = parse_grammar("start: S\nS -> 'a' | A B\nA -> 'a'\nB -> 'b'").unwrap();
        let t = extract_tree(&g, "a").unwrap();
        assert_eq!(trace_word(&g, &t), Err(TraceError::DerivationTooShort(1)));
        let t = extract_tree(&g, "ab").unwrap();
        let tw = trace_word(&g, &t).unwrap();
        assert_eq!(tw.letters.to_string(), "[1 ]1");
        assert_eq!(tw, trace_by_rewrite_order(&g, &t).unwrap());
    }

    #[test]
    fn minimal_grammar_has_empty_trace_language() {
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        assert!(trace_language(&g, 5, 100).unwrap().is_empty());
    }
}
