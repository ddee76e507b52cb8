//! The three-step conversion from Chomsky to Dyck normal form.
//!
//! Step 1 separates terminal rules from binary ones (terminal substitution),
//! step 2 renames right occurrences of nonterminals that also occur on the
//! left, step 3 splits nonterminals with several partners until the
//! left/right co-occurrence relation is a bijection. Originals are kept
//! whenever a substitute is added, so the output is not minimal.

use std::collections::HashSet;
use std::fmt;

use super::NormalFormError;
use crate::grammar::{Grammar, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubstitutionKind {
    Terminal(char),
    Nonterminal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub new: String,
    pub original: String,
    pub kind: SubstitutionKind,
    pub step: u8,
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SubstitutionKind::Terminal(_) => "terminal",
            SubstitutionKind::Nonterminal => "nonterminal",
        };
        write!(
            f,
            "{} <- {} {kind} step={}",
            self.new, self.original, self.step
        )
    }
}

/// Substitutions in creation order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionLedger {
    pub entries: Vec<LedgerEntry>,
}

impl SubstitutionLedger {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, new: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.new == new)
    }
}

impl fmt::Display for SubstitutionLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Rhs {
    Pair(String, String),
    Term(char),
}

struct Work {
    rules: Vec<(String, Rhs)>,
    used: HashSet<String>,
    ledger: SubstitutionLedger,
}

impl Work {
    fn push(&mut self, lhs: String, rhs: Rhs) {
        if !self.rules.iter().any(|(l, r)| *l == lhs && *r == rhs) {
            self.rules.push((lhs, rhs));
        }
    }

    fn fresh(
        &mut self,
        base: &str,
        tag: &str,
        original: &str,
        kind: SubstitutionKind,
        step: u8,
    ) -> String {
        let name = Grammar::fresh_name(&self.used, base, tag);
        self.used.insert(name.clone());
        self.ledger.entries.push(LedgerEntry {
            new: name.clone(),
            original: original.to_string(),
            kind,
            step,
        });
        name
    }

    fn rules_of(&self, x: &str) -> Vec<Rhs> {
        self.rules
            .iter()
            .filter(|(l, _)| l == x)
            .map(|(_, r)| r.clone())
            .collect()
    }

    fn has_binary(&self, x: &str) -> bool {
        self.rules
            .iter()
            .any(|(l, r)| l == x && matches!(r, Rhs::Pair(..)))
    }

    /// Replaces `a -> t` by `new -> t` and adds, for every binary rule
    /// containing `a`, the variants with any nonempty subset of the
    /// occurrences of `a` renamed to `new`.
    fn terminal_substitution(&mut self, a: &str, t: char) {
        let new = self.fresh(a, "t", a, SubstitutionKind::Terminal(t), 1);
        let pos = self
            .rules
            .iter()
            .position(|(l, r)| l == a && *r == Rhs::Term(t))
            .expect("substituted rule exists");
        self.rules.remove(pos);
        self.push(new.clone(), Rhs::Term(t));
        let snapshot: Vec<(String, Rhs)> = self.rules.clone();
        for (x, rhs) in snapshot {
            let Rhs::Pair(b, c) = rhs else { continue };
            let variants: Vec<(String, String)> = match (b == a, c == a) {
                (true, true) => vec![
                    (new.clone(), c.clone()),
                    (b.clone(), new.clone()),
                    (new.clone(), new.clone()),
                ],
                (true, false) => vec![(new.clone(), c.clone())],
                (false, true) => vec![(b.clone(), new.clone())],
                (false, false) => vec![],
            };
            for (l, r) in variants {
                self.push(x.clone(), Rhs::Pair(l, r));
            }
        }
    }

    /// Replaces every pair `(from_l, from_r)` on right-hand sides by `to`.
    fn replace_pair(&mut self, from: (&str, &str), to: (&str, &str)) {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.rules.len());
        for (x, rhs) in std::mem::take(&mut self.rules) {
            let rhs = match rhs {
                Rhs::Pair(b, c) if b == from.0 && c == from.1 => {
                    Rhs::Pair(to.0.to_string(), to.1.to_string())
                }
                other => other,
            };
            if seen.insert((x.clone(), rhs.clone())) {
                out.push((x, rhs));
            }
        }
        self.rules = out;
    }

    fn copy_rules(&mut self, from: &str, to: &str) {
        for rhs in self.rules_of(from) {
            self.push(to.to_string(), rhs);
        }
    }

    fn left_children(&self) -> HashSet<String> {
        self.rules
            .iter()
            .filter_map(|(_, r)| match r {
                Rhs::Pair(b, _) => Some(b.clone()),
                Rhs::Term(_) => None,
            })
            .collect()
    }

    fn partners(&self, side_left: bool, x: &str) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (_, r) in &self.rules {
            if let Rhs::Pair(b, c) = r {
                let (me, other) = if side_left { (b, c) } else { (c, b) };
                if me == x && !out.contains(other) {
                    out.push(other.clone());
                }
            }
        }
        out
    }
}

/// Converts a CNF grammar whose start symbol does not occur on any
/// right-hand side to Dyck normal form, returning the substitution ledger.
///
/// Fresh names: `<A>_t<k>` for terminal substitutes, `<A>_R<k>` for a
/// substitute occupying the right position of a pair, `<A>_L<k>` for one
/// occupying the left position.
pub fn to_dyck_nf(g: &Grammar) -> Result<(Grammar, SubstitutionLedger), NormalFormError> {
    if !g.is_cnf() {
        return Err(NormalFormError::NotCnf);
    }
    if g.start_on_rhs() {
        return Err(NormalFormError::StartOnRhs(g.start().to_string()));
    }
    let start = g.start().to_string();
    let mut w = Work {
        rules: g
            .rules()
            .iter()
            .map(|r| {
                let rhs = match (r.as_binary(), r.as_terminal()) {
                    (Some((b, c)), _) => Rhs::Pair(b.to_string(), c.to_string()),
                    (None, Some(t)) => Rhs::Term(t),
                    _ => unreachable!("checked CNF"),
                };
                (r.lhs.clone(), rhs)
            })
            .collect(),
        used: g.nonterminals().iter().cloned().collect(),
        ledger: SubstitutionLedger::default(),
    };

    // Step 1a: a non-start nonterminal keeps only its first terminal rule
    loop {
        let conflict = w.rules.iter().enumerate().find_map(|(i, (a, r))| match r {
            Rhs::Term(t) if *a != start => w.rules[..i]
                .iter()
                .any(|(l, r2)| l == a && matches!(r2, Rhs::Term(u) if u != t))
                .then(|| (a.clone(), *t)),
            _ => None,
        });
        match conflict {
            Some((a, t)) => w.terminal_substitution(&a, t),
            None => break,
        }
    }
    // Step 1b: terminal rules of nonterminals that also have binary rules
    loop {
        let conflict = w.rules.iter().find_map(|(a, r)| match r {
            Rhs::Term(t) if *a != start && w.has_binary(a) => Some((a.clone(), *t)),
            _ => None,
        });
        match conflict {
            Some((a, t)) => w.terminal_substitution(&a, t),
            None => break,
        }
    }

    // Step 2: keep left occurrences, rename right occurrences
    loop {
        let lefts = w.left_children();
        let conflict = w.rules.iter().find_map(|(_, r)| match r {
            Rhs::Pair(_, c) if lefts.contains(c) => Some(c.clone()),
            _ => None,
        });
        let Some(a) = conflict else { break };
        let siblings = w.partners(false, &a);
        let mut created = Vec::new();
        for z in siblings {
            let new = w.fresh(&a, "R", &a, SubstitutionKind::Nonterminal, 2);
            w.replace_pair((&z, &a), (&z, &new));
            created.push(new);
        }
        for new in created {
            w.copy_rules(&a, &new);
        }
    }

    // Step 3: make the partner relation a bijection
    let cap = (g.nonterminals().len() + w.ledger.len()).max(1) * w.rules.len().max(1);
    let mut steps = 0;
    loop {
        let conflict = w.rules.iter().find_map(|(_, r)| {
            let Rhs::Pair(b, c) = r else { return None };
            let lp = w.partners(false, c);
            if lp.len() > 1 {
                return Some((false, c.clone(), lp));
            }
            let rp = w.partners(true, b);
            if rp.len() > 1 {
                return Some((true, b.clone(), rp));
            }
            None
        });
        let Some((is_left, x, partners)) = conflict else {
            break;
        };
        steps += 1;
        if steps > cap {
            return Err(NormalFormError::NonTermination(cap));
        }
        let mut created = Vec::new();
        for p in partners.into_iter().skip(1) {
            if is_left {
                let new = w.fresh(&x, "L", &x, SubstitutionKind::Nonterminal, 3);
                w.replace_pair((&x, &p), (&new, &p));
                created.push(new);
            } else {
                let new = w.fresh(&x, "R", &x, SubstitutionKind::Nonterminal, 3);
                w.replace_pair((&p, &x), (&p, &new));
                created.push(new);
            }
        }
        for new in created {
            w.copy_rules(&x, &new);
        }
    }

    let rules = w
        .rules
        .into_iter()
        .map(|(l, r)| match r {
            Rhs::Pair(b, c) => Rule::binary(l, b, c),
            Rhs::Term(t) => Rule::terminal(l, t),
        })
        .collect();
    let out =
        Grammar::new(start, rules).map_err(|e| NormalFormError::LedgerMismatch(e.to_string()))?;
    Ok((out, w.ledger))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_words;
    use crate::grammar::parse_grammar;

    #[test]
    fn already_dyck_is_fixpoint() {
        let g = parse_grammar("start: S\nS -> A B | 'c'\nA -> 'a'\nB -> 'b'").unwrap();
        let (d, ledger) = to_dyck_nf(&g).unwrap();
        assert_eq!(d, g);
        assert!(ledger.is_empty());
    }

    #[test]
    fn doubled_occurrence_gets_three_variants() {
        let g = parse_grammar("start: S\nS -> A A\nA -> 'a' | A A").unwrap();
        let (d, ledger) = to_dyck_nf(&g).unwrap();
        assert!(d.is_dyck_nf(), "{d}");
        assert_eq!(ledger.entries[0].to_string(), "A_t1 <- A terminal step=1");
        assert_eq!(
            enumerate_words(&g, 8).unwrap(),
            enumerate_words(&d, 8).unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        let g = parse_grammar("start: S\nS -> 'a' 'b'").unwrap();
        assert_eq!(to_dyck_nf(&g), Err(NormalFormError::NotCnf));
        let g = parse_grammar("start: S\nS -> A S | 'b'\nA -> 'a'").unwrap();
        assert_eq!(to_dyck_nf(&g), Err(NormalFormError::StartOnRhs("S".into())));
    }

    #[test]
    fn two_terminal_rules() {
        let g = parse_grammar("start: S\nS -> A A\nA -> 'a' | 'b'").unwrap();
        let (d, _) = to_dyck_nf(&g).unwrap();
        assert!(d.is_dyck_nf(), "{d}");
        assert_eq!(enumerate_words(&d, 3).unwrap(), ["aa", "ab", "ba", "bb"]);
    }
}
