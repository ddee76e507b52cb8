//! The grammar extension, the terminal map φ, and the desk-scale check that
//! `L(G) = φ(D'_K)` up to a length bound.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::dyck::{in_dk_stack, Bracket, DyckWord};
use crate::enumerate::{enumerate_words, sort_length_lex, EnumError};
use crate::grammar::{Grammar, Rule};
use crate::trace::{pairing_of, trace_language, BracketPairing, TraceError, DEFAULT_TRACE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("bracket {0} is outside the alphabet")]
    UnknownLetter(Bracket),
}

/// Pair indices (1-based) grouped by which sides carry a terminal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NonterminalPartition {
    pub n1: Vec<usize>,
    pub n2_left: Vec<usize>,
    pub n2_right: Vec<usize>,
    pub n3: Vec<usize>,
    /// Set when no pair side has a terminal rule although pairs exist.
    pub warning: Option<String>,
}

impl NonterminalPartition {
    pub fn total(&self) -> usize {
        self.n1.len() + self.n2_left.len() + self.n2_right.len() + self.n3.len()
    }
}

fn terminal_of(g: &Grammar, nt: &str) -> Option<char> {
    g.rules_of(nt).find_map(Rule::as_terminal)
}

pub fn partition_nonterminals(g: &Grammar) -> Result<NonterminalPartition, PhiError> {
    let p = pairing_of(g)?;
    Ok(partition_with(g, &p))
}

pub(crate) fn partition_with(g: &Grammar, p: &BracketPairing) -> NonterminalPartition {
    let mut part = NonterminalPartition::default();
    for (i, (l, r)) in p.pairs().iter().enumerate() {
        let idx = i + 1;
        match (terminal_of(g, l).is_some(), terminal_of(g, r).is_some()) {
            (true, true) => part.n1.push(idx),
            (true, false) => part.n2_left.push(idx),
            (false, true) => part.n2_right.push(idx),
            (false, false) => part.n3.push(idx),
        }
    }
    if p.k() > 0 && part.n3.len() == p.k() {
        part.warning = Some(
            "no bracket maps to a terminal; the grammar generates no word of length > 1".into(),
        );
    }
    part
}

/// A Dyck normal form grammar extended with one pair `([t, ]t)` per
/// terminal `t` with a rule `S -> t`, via `S -> [t ]t`, `[t -> t`,
/// `]t -> eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedGrammar {
    pub base: Grammar,
    pub grammar: Grammar,
    pub pairing: BracketPairing,
    pub new_pairs: Vec<(String, String)>,
    /// `[t ]t` for every new pair, in terminal declaration order.
    pub lp: Vec<DyckWord>,
}

impl ExtendedGrammar {
    /// Total number of pairs `K = k + p`.
    pub fn k(&self) -> usize {
        self.pairing.k()
    }
}

pub fn extend_grammar(g: &Grammar) -> Result<ExtendedGrammar, PhiError> {
    let base_pairing = pairing_of(g)?;
    let k = base_pairing.k();
    let mut used: HashSet<String> = g.nonterminals().iter().cloned().collect();
    let mut rules = g.rules().to_vec();
    let mut pairs = base_pairing.pairs().to_vec();
    let mut new_pairs = Vec::new();
    let mut lp = Vec::new();
    let start = g.start();
    let start_terminals: Vec<char> = g
        .terminals()
        .iter()
        .copied()
        .filter(|t| g.has_rule(&Rule::terminal(start, *t)))
        .collect();
    for t in start_terminals {
        let l = Grammar::fresh_name(&used, start, "L");
        used.insert(l.clone());
        let r = Grammar::fresh_name(&used, start, "R");
        used.insert(r.clone());
        rules.push(Rule::binary(start, l.clone(), r.clone()));
        rules.push(Rule::terminal(l.clone(), t));
        rules.push(Rule::new(r.clone(), vec![]));
        pairs.push((l.clone(), r.clone()));
        new_pairs.push((l, r));
        let idx = k + new_pairs.len();
        lp.push(DyckWord(vec![Bracket::left(idx), Bracket::right(idx)]));
    }
    let grammar = Grammar::new(start, rules).expect("extension of a valid grammar is valid");
    Ok(ExtendedGrammar {
        base: g.clone(),
        grammar,
        pairing: BracketPairing::from_pairs(start, pairs),
        new_pairs,
        lp,
    })
}

/// φ on the bracket letters of an extended grammar; `None` is the empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalMap {
    pub images: BTreeMap<Bracket, Option<char>>,
}

impl TerminalMap {
    pub fn get(&self, b: Bracket) -> Option<Option<char>> {
        self.images.get(&b).copied()
    }
}

pub fn build_phi(eg: &ExtendedGrammar) -> TerminalMap {
    let mut images = BTreeMap::new();
    for (i, (l, r)) in eg.pairing.pairs().iter().enumerate() {
        images.insert(Bracket::left(i + 1), terminal_of(&eg.grammar, l));
        images.insert(Bracket::right(i + 1), terminal_of(&eg.grammar, r));
    }
    TerminalMap { images }
}

pub fn apply_phi(phi: &TerminalMap, w: &DyckWord) -> Result<String, PhiError> {
    let mut out = String::new();
    for b in &w.0 {
        match phi.get(*b) {
            Some(Some(c)) => out.push(c),
            Some(None) => {}
            None => return Err(PhiError::UnknownLetter(*b)),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    pub max_len: usize,
    pub k: usize,
    pub words: usize,
    pub traces: usize,
    pub missing: Vec<String>,
    pub extra: Vec<DyckWord>,
    pub not_dyck: Vec<DyckWord>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.not_dyck.is_empty()
    }
}

impl fmt::Display for PhiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: K={} max_len={} words={} traces={} missing={} extra={} not_dyck={}",
            if self.passed() { "pass" } else { "fail" },
            self.k,
            self.max_len,
            self.words,
            self.traces,
            self.missing.len(),
            self.extra.len(),
            self.not_dyck.len()
        )?;
        for w in &self.missing {
            writeln!(f, "MISSING {w}")?;
        }
        for t in &self.extra {
            writeln!(f, "EXTRA {t}")?;
        }
        for t in &self.not_dyck {
            writeln!(f, "NOT_DYCK {t}")?;
        }
        Ok(())
    }
}

/// Compares `φ(traces ∪ L_p)` with the enumerated language up to `max_len`
/// and checks that every element of `traces ∪ L_p` is a Dyck word.
pub fn verify_characterization(
    eg: &ExtendedGrammar,
    max_len: usize,
) -> Result<PhiReport, PhiError> {
    let phi = build_phi(eg);
    let traces = trace_language(&eg.base, max_len, DEFAULT_TRACE_CAP)?;
    let mut elements: Vec<DyckWord> = traces.into_iter().map(|t| t.letters).collect();
    elements.extend(eg.lp.iter().cloned());
    let words: BTreeSet<String> = enumerate_words(&eg.base, max_len)?.into_iter().collect();
    let mut image: BTreeSet<String> = BTreeSet::new();
    let mut extra = Vec::new();
    let mut not_dyck = Vec::new();
    for t in &elements {
        let w = apply_phi(&phi, t)?;
        if !in_dk_stack(t) {
            not_dyck.push(t.clone());
        }
        if words.contains(&w) {
            image.insert(w);
        } else {
            extra.push(t.clone());
        }
    }
    let mut missing: Vec<String> = words.difference(&image).cloned().collect();
    sort_length_lex(&mut missing);
    extra.sort_by_key(|t| t.len());
    Ok(PhiReport {
        max_len,
        k: eg.k(),
        words: words.len(),
        traces: elements.len(),
        missing,
        extra,
        not_dyck,
    })
}
