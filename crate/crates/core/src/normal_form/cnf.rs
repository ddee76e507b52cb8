//! Textbook Chomsky normal form conversion (START, TERM, BIN, UNIT).

use std::collections::{HashMap, HashSet};

use super::NormalFormError;
use crate::grammar::{Grammar, Rule, Symbol};

/// Converts a λ-free grammar to Chomsky normal form. A grammar already in
/// CNF with the start symbol absent from every right-hand side is returned
/// unchanged.
pub fn to_cnf(g: &Grammar) -> Result<Grammar, NormalFormError> {
    if let Some(r) = g.rules().iter().find(|r| r.is_empty()) {
        return Err(NormalFormError::EmptyRule(r.lhs.clone()));
    }
    if g.is_cnf() && !g.start_on_rhs() {
        return Ok(g.clone());
    }
    let mut used: HashSet<String> = g.nonterminals().iter().cloned().collect();
    let mut rules: Vec<Rule> = Vec::new();
    let mut start = g.start().to_string();

    if g.start_on_rhs() {
        start = Grammar::fresh_name(&used, g.start(), "s");
        used.insert(start.clone());
        rules.extend(
            g.rules_of(g.start())
                .map(|r| Rule::new(start.clone(), r.rhs.clone())),
        );
    }
    rules.extend(g.rules().iter().cloned());

    // TERM: terminals inside long rules get a shared nonterminal each
    let mut term_nt: HashMap<char, String> = HashMap::new();
    let mut term_rules = Vec::new();
    for r in &mut rules {
        if r.rhs.len() < 2 {
            continue;
        }
        for s in &mut r.rhs {
            if let Symbol::Terminal(c) = *s {
                let name = term_nt.entry(c).or_insert_with(|| {
                    let n = Grammar::fresh_name(&used, &r.lhs, "t");
                    used.insert(n.clone());
                    term_rules.push(Rule::terminal(n.clone(), c));
                    n
                });
                *s = Symbol::Nonterminal(name.clone());
            }
        }
    }
    rules.extend(term_rules);

    // BIN
    let mut binarized = Vec::with_capacity(rules.len());
    for r in rules {
        if r.rhs.len() <= 2 {
            binarized.push(r);
            continue;
        }
        let mut lhs = r.lhs.clone();
        let k = r.rhs.len();
        for s in r.rhs.iter().take(k - 2) {
            let next = Grammar::fresh_name(&used, &r.lhs, "b");
            used.insert(next.clone());
            binarized.push(Rule::new(lhs, vec![s.clone(), Symbol::nt(next.clone())]));
            lhs = next;
        }
        binarized.push(Rule::new(lhs, r.rhs[k - 2..].to_vec()));
    }

    // UNIT
    let is_unit = |r: &Rule| matches!(r.rhs.as_slice(), [Symbol::Nonterminal(_)]);
    let mut lhs_order: Vec<String> = Vec::new();
    for r in &binarized {
        if !lhs_order.contains(&r.lhs) {
            lhs_order.push(r.lhs.clone());
        }
    }
    let mut out = Vec::new();
    for x in &lhs_order {
        let mut closure = vec![x.clone()];
        let mut i = 0;
        while i < closure.len() {
            let y = closure[i].clone();
            for r in binarized.iter().filter(|r| r.lhs == y) {
                if is_unit(r) {
                    let z = r.rhs[0].as_nonterminal().unwrap().to_string();
                    if !closure.contains(&z) {
                        closure.push(z);
                    }
                } else {
                    out.push(Rule::new(x.clone(), r.rhs.clone()));
                }
            }
            i += 1;
        }
    }

    let mut g2 = drop_undefined(start, out)?;
    g2 = g2.prune_useless();
    Ok(g2)
}

/// Removes rules mentioning nonterminals that ended up without rules.
fn drop_undefined(start: String, mut rules: Vec<Rule>) -> Result<Grammar, NormalFormError> {
    loop {
        let defined: HashSet<&str> = rules.iter().map(|r| r.lhs.as_str()).collect();
        let before = rules.len();
        let keep: Vec<bool> = rules
            .iter()
            .map(|r| {
                r.rhs
                    .iter()
                    .all(|s| s.as_nonterminal().is_none_or(|n| defined.contains(n)))
            })
            .collect();
        let mut it = keep.into_iter();
        rules.retain(|_| it.next().unwrap());
        if rules.len() == before {
            break;
        }
    }
    Grammar::new(start, rules).map_err(|_| NormalFormError::EmptyLanguage)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_words;
    use crate::grammar::parse_grammar;

    #[test]
    fn expression_grammar() {
        let g =
            parse_grammar("start: E\nE -> 'a' | T '*' R | E '+' T\nT -> 'a' | T '*' R\nR -> 'a'")
                .unwrap();
        let c = to_cnf(&g).unwrap();
        assert!(c.is_cnf());
        assert!(!c.start_on_rhs());
        assert_eq!(
            enumerate_words(&g, 7).unwrap(),
            enumerate_words(&c, 7).unwrap()
        );
    }

    #[test]
    fn unit_chains_and_long_rules() {
        let g = parse_grammar("start: S\nS -> A | 'x' 'y' 'z' S 'w'\nA -> B\nB -> 'b' | A 'c'")
            .unwrap();
        let c = to_cnf(&g).unwrap();
        assert!(c.is_cnf());
        assert_eq!(
            enumerate_words(&g, 9).unwrap(),
            enumerate_words(&c, 9).unwrap()
        );
    }

    #[test]
    fn already_cnf_unchanged() {
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        assert_eq!(to_cnf(&g).unwrap(), g);
        let g = parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> 'b'").unwrap();
        assert_eq!(to_cnf(&g).unwrap(), g);
    }

    #[test]
    fn empty_rule_rejected() {
        let g = parse_grammar("start: S\nS -> 'a' R\nR -> eps").unwrap();
        assert_eq!(to_cnf(&g), Err(NormalFormError::EmptyRule("R".into())));
    }
}
