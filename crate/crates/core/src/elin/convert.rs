use std::collections::{BTreeSet, HashSet};

use super::{ElinError, EvenLinearGrammar};
use crate::grammar::{Grammar, Rule, Symbol};
use crate::normal_form::{to_dyck_nf, SubstitutionLedger};
use crate::phi::{partition_with, NonterminalPartition};
use crate::trace::{pairing_of, BracketPairing};

/// A Dyck normal form grammar built from an even linear one, together with
/// its bracket pairing and partition. `partition.n3` is always empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElinDyck {
    pub grammar: Grammar,
    pub pairing: BracketPairing,
    pub partition: NonterminalPartition,
    pub ledger: SubstitutionLedger,
}

struct Builder {
    used: HashSet<String>,
    rules: Vec<Rule>,
}

impl Builder {
    fn fresh(&mut self, base: &str, tag: &str) -> String {
        let n = Grammar::fresh_name(&self.used, base, tag);
        self.used.insert(n.clone());
        n
    }

    /// `lhs -> [a ]b` with `[a -> a`, `]b -> Z ]c`, `]c -> b`.
    fn linear(&mut self, lhs: &str, left: &[char], mid: &str, right: &[char]) {
        let m = left.len();
        let a = self.fresh(lhs, "a");
        let b = self.fresh(lhs, "b");
        let c = self.fresh(lhs, "c");
        self.rules.push(Rule::binary(lhs, a.clone(), b.clone()));
        self.rules.push(Rule::terminal(a, left[0]));
        self.rules.push(Rule::terminal(c.clone(), right[m - 1]));
        let z = if m == 1 {
            mid.to_string()
        } else {
            let z = self.fresh(lhs, "m");
            self.linear(&z, &left[1..], mid, &right[..m - 1]);
            z
        };
        self.rules.push(Rule::binary(b, z, c));
    }

    fn word(&mut self, lhs: &str, t: &[char]) {
        match t.len() {
            1 => self.rules.push(Rule::terminal(lhs, t[0])),
            2 => {
                let a = self.fresh(lhs, "a");
                let b = self.fresh(lhs, "b");
                self.rules.push(Rule::binary(lhs, a.clone(), b.clone()));
                self.rules.push(Rule::terminal(a, t[0]));
                self.rules.push(Rule::terminal(b, t[1]));
            }
            n => {
                let z = self.fresh(lhs, "m");
                self.word(&z, &t[1..n - 1]);
                self.linear(lhs, &t[..1], &z, &t[n - 1..]);
            }
        }
    }
}

/// Every rule of `g` with unit rules replaced by the closure of their
/// targets, and a fresh start symbol when the start occurs on a right-hand
/// side.
fn without_units(g: &Grammar, used: &mut HashSet<String>) -> (String, Vec<Rule>) {
    let mut rules: Vec<Rule> = g.rules().to_vec();
    let mut start = g.start().to_string();
    if g.start_on_rhs() {
        start = Grammar::fresh_name(used, g.start(), "s");
        used.insert(start.clone());
        rules.extend(
            g.rules_of(g.start())
                .map(|r| Rule::new(start.clone(), r.rhs.clone())),
        );
    }
    let is_unit = |r: &Rule| matches!(r.rhs.as_slice(), [Symbol::Nonterminal(_)]);
    let lhs_set: Vec<String> = {
        let mut seen = BTreeSet::new();
        rules
            .iter()
            .filter(|r| seen.insert(r.lhs.clone()))
            .map(|r| r.lhs.clone())
            .collect()
    };
    let mut out = Vec::new();
    for x in &lhs_set {
        let mut closure = vec![x.clone()];
        let mut i = 0;
        while i < closure.len() {
            let cur = closure[i].clone();
            for r in rules.iter().filter(|r| r.lhs == cur && is_unit(r)) {
                let y = r.rhs[0].as_nonterminal().expect("unit rule").to_string();
                if !closure.contains(&y) {
                    closure.push(y);
                }
            }
            i += 1;
        }
        for y in &closure {
            for r in rules.iter().filter(|r| r.lhs == *y && !is_unit(r)) {
                out.push(Rule::new(x.clone(), r.rhs.clone()));
            }
        }
    }
    (start, out)
}

pub fn elin_to_dyck_nf(g: &EvenLinearGrammar) -> Result<ElinDyck, ElinError> {
    let g = g.grammar();
    if let Some(r) = g.rules().iter().find(|r| r.is_empty()) {
        return Err(ElinError::EmptyRule(r.lhs.clone()));
    }
    let mut used: HashSet<String> = g.nonterminals().iter().cloned().collect();
    let (start, rules) = without_units(g, &mut used);
    let mut b = Builder {
        used,
        rules: Vec::new(),
    };
    for r in &rules {
        let mid = r.rhs.iter().position(|s| !s.is_terminal());
        let chars: Vec<char> = r.rhs.iter().filter_map(Symbol::as_terminal).collect();
        match mid {
            None => b.word(&r.lhs, &chars),
            Some(i) => {
                let y = r.rhs[i].as_nonterminal().expect("checked");
                b.linear(&r.lhs, &chars[..i], y, &chars[i..]);
            }
        }
    }
    let cnf = Grammar::new(start, b.rules)
        .map_err(|e| ElinError::NotElinShape(e.to_string()))?
        .prune_useless();
    let (grammar, ledger) = to_dyck_nf(&cnf)?;
    let pairing = pairing_of(&grammar).map_err(|e| ElinError::NotElinShape(e.to_string()))?;
    let partition = partition_with(&grammar, &pairing);
    if let Some(v) = elin_shape_violation(&grammar, &pairing, &partition) {
        return Err(ElinError::NotElinShape(v));
    }
    Ok(ElinDyck {
        grammar,
        pairing,
        partition,
        ledger,
    })
}

fn has_terminal(g: &Grammar, nt: &str) -> bool {
    g.rules_of(nt).any(|r| r.as_terminal().is_some())
}

/// The recognizer relies on every derivation being a spine
/// `S -> [j ]j`, `]j -> [i ]i`, `[i -> [j' ]j'`, ... where `[j` and `]i`
/// are terminal nonterminals.
pub(crate) fn elin_shape_violation(
    g: &Grammar,
    p: &BracketPairing,
    part: &NonterminalPartition,
) -> Option<String> {
    if let Some(i) = part.n3.first() {
        let (l, r) = &p.pairs()[i - 1];
        return Some(format!("pair ({l}, {r}) has no terminal side"));
    }
    for r in g.rules_of(g.start()) {
        if let Some((l, _)) = r.as_binary() {
            if !has_terminal(g, l) {
                return Some(format!("{r}: left child has no terminal rule"));
            }
        }
    }
    for (l, r) in p.pairs() {
        let (owner, need_left) = if has_terminal(g, l) {
            (r, false)
        } else {
            (l, true)
        };
        for rule in g.rules_of(owner) {
            if let Some((a, b)) = rule.as_binary() {
                let checked = if need_left { a } else { b };
                if !has_terminal(g, checked) {
                    return Some(format!("{rule}: {checked} has no terminal rule"));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::even_linear_corpus;
    use crate::enumerate::enumerate_words;
    use crate::grammar::parse_grammar;

    #[test]
    fn corpus_languages_preserved() {
        for g in even_linear_corpus() {
            let e = elin_to_dyck_nf(&EvenLinearGrammar::new(g.clone()).unwrap()).unwrap();
            assert!(e.grammar.is_dyck_nf());
            assert!(e.partition.n3.is_empty());
            assert_eq!(
                enumerate_words(&g, 9).unwrap(),
                enumerate_words(&e.grammar, 9).unwrap(),
                "{g}"
            );
        }
    }

    #[test]
    fn empty_rule_rejected() {
        let g = parse_grammar("start: S\nS -> 'a' S 'b' | eps").unwrap();
        assert!(matches!(
            elin_to_dyck_nf(&EvenLinearGrammar::new(g).unwrap()),
            Err(ElinError::EmptyRule(_))
        ));
    }

    #[test]
    fn general_dyck_grammar_lacks_shape() {
        let g = crate::corpus::expr_dyck();
        let p = pairing_of(&g).unwrap();
        let part = partition_with(&g, &p);
        assert!(elin_shape_violation(&g, &p, &part).is_some());
    }
}
