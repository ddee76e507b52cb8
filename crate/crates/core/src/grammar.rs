//! Grammar representation, the text format, and the structural predicates
//! for Chomsky and Dyck normal form.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest right-hand side accepted by [`parse_grammar`] unless overridden.
pub const DEFAULT_MAX_RHS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(char),
    Nonterminal(String),
}

impl Symbol {
    pub fn nt(name: impl Into<String>) -> Symbol {
        Symbol::Nonterminal(name.into())
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }

    pub fn as_nonterminal(&self) -> Option<&str> {
        match self {
            Symbol::Nonterminal(n) => Some(n),
            Symbol::Terminal(_) => None,
        }
    }

    pub fn as_terminal(&self) -> Option<char> {
        match self {
            Symbol::Terminal(c) => Some(*c),
            Symbol::Nonterminal(_) => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Terminal(c) => write!(f, "'{c}'"),
            Symbol::Nonterminal(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<Symbol>,
}

impl Rule {
    pub fn new(lhs: impl Into<String>, rhs: Vec<Symbol>) -> Rule {
        Rule {
            lhs: lhs.into(),
            rhs,
        }
    }

    pub fn binary(
        lhs: impl Into<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) -> Rule {
        Rule::new(lhs, vec![Symbol::nt(left), Symbol::nt(right)])
    }

    pub fn terminal(lhs: impl Into<String>, t: char) -> Rule {
        Rule::new(lhs, vec![Symbol::Terminal(t)])
    }

    /// `Some((B, C))` for a rule `X -> B C` over two nonterminals.
    pub fn as_binary(&self) -> Option<(&str, &str)> {
        match self.rhs.as_slice() {
            [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => Some((b, c)),
            _ => None,
        }
    }

    /// `Some(a)` for a rule `X -> a`.
    pub fn as_terminal(&self) -> Option<char> {
        match self.rhs.as_slice() {
            [Symbol::Terminal(c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> ", self.lhs)?;
        write_alternative(f, &self.rhs)
    }
}

fn write_alternative(f: &mut impl fmt::Write, rhs: &[Symbol]) -> fmt::Result {
    if rhs.is_empty() {
        return f.write_str("eps");
    }
    for (i, s) in rhs.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared symbol `{0}` (no rule rewrites it)")]
    UndeclaredSymbol(String),
    #[error("line {line}: duplicate start declaration")]
    DuplicateStart { line: usize },
    #[error("missing `start:` declaration")]
    MissingStart,
    #[error("grammar has no rules")]
    EmptyRuleSet,
    #[error("invalid nonterminal name `{0}`")]
    InvalidName(String),
    #[error("right-hand side of `{lhs}` has {len} symbols, limit is {limit}")]
    RhsTooLong {
        lhs: String,
        len: usize,
        limit: usize,
    },
}

/// A context-free grammar `(N, T, P, S)`.
///
/// Nonterminals are ordered by first appearance as a left-hand side and
/// terminals by first appearance in a right-hand side; duplicate rules are
/// dropped. Every grammar is built through [`Grammar::new`], so this ordering
/// is what the text format round-trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<char>,
    rules: Vec<Rule>,
    start: String,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "eps"
}

impl Grammar {
    pub fn new(start: impl Into<String>, rules: Vec<Rule>) -> Result<Grammar, GrammarError> {
        let start = start.into();
        if rules.is_empty() {
            return Err(GrammarError::EmptyRuleSet);
        }
        let mut seen = HashSet::new();
        let mut deduped = Vec::with_capacity(rules.len());
        for r in rules {
            if seen.insert(r.clone()) {
                deduped.push(r);
            }
        }
        let mut nonterminals = Vec::new();
        let mut declared = HashSet::new();
        for r in &deduped {
            if !is_identifier(&r.lhs) {
                return Err(GrammarError::InvalidName(r.lhs.clone()));
            }
            if declared.insert(r.lhs.clone()) {
                nonterminals.push(r.lhs.clone());
            }
        }
        if !declared.contains(&start) {
            return Err(GrammarError::UndeclaredSymbol(start));
        }
        let mut terminals = Vec::new();
        let mut tset = HashSet::new();
        for r in &deduped {
            for s in &r.rhs {
                match s {
                    Symbol::Nonterminal(n) if !declared.contains(n) => {
                        return Err(GrammarError::UndeclaredSymbol(n.clone()))
                    }
                    Symbol::Terminal(c) if tset.insert(*c) => {
                        terminals.push(*c);
                    }
                    _ => {}
                }
            }
        }
        Ok(Grammar {
            nonterminals,
            terminals,
            rules: deduped,
            start,
        })
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[char] {
        &self.terminals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_of<'a>(&'a self, lhs: &'a str) -> impl Iterator<Item = &'a Rule> + 'a {
        self.rules.iter().filter(move |r| r.lhs == lhs)
    }

    pub fn has_nonterminal(&self, name: &str) -> bool {
        self.nonterminals.iter().any(|n| n == name)
    }

    pub fn has_rule(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn start_on_rhs(&self) -> bool {
        self.rules.iter().any(|r| {
            r.rhs
                .iter()
                .any(|s| s.as_nonterminal() == Some(self.start.as_str()))
        })
    }

    pub fn has_empty_rule(&self) -> bool {
        self.rules.iter().any(Rule::is_empty)
    }

    /// Every rule is `X -> A B` or `X -> a`.
    pub fn is_cnf(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.as_binary().is_some() || r.as_terminal().is_some())
    }

    /// Chomsky normal form plus the pairing conditions: a non-start
    /// nonterminal with a terminal rule has no other rule, no nonterminal is
    /// both a left and a right child, and left/right children co-occur as a
    /// partial bijection. The start symbol may not occur on a right-hand side.
    pub fn is_dyck_nf(&self) -> bool {
        self.dyck_nf_violation().is_none()
    }

    /// The first violated Dyck normal form condition, if any.
    pub fn dyck_nf_violation(&self) -> Option<String> {
        if !self.is_cnf() {
            return Some("not in Chomsky normal form".into());
        }
        if self.start_on_rhs() {
            return Some(format!(
                "start symbol {} occurs on a right-hand side",
                self.start
            ));
        }
        for nt in &self.nonterminals {
            if *nt == self.start {
                continue;
            }
            let rules: Vec<&Rule> = self.rules_of(nt).collect();
            if rules.len() > 1 && rules.iter().any(|r| r.as_terminal().is_some()) {
                return Some(format!("{nt} has a terminal rule and another rule"));
            }
        }
        let mut right_of: HashMap<&str, &str> = HashMap::new();
        let mut left_of: HashMap<&str, &str> = HashMap::new();
        for r in &self.rules {
            let Some((b, c)) = r.as_binary() else {
                continue;
            };
            if let Some(prev) = right_of.insert(b, c) {
                if prev != c {
                    return Some(format!("{b} pairs with both {prev} and {c}"));
                }
            }
            if let Some(prev) = left_of.insert(c, b) {
                if prev != b {
                    return Some(format!("{c} pairs with both {prev} and {b}"));
                }
            }
        }
        if let Some(both) = right_of.keys().find(|l| left_of.contains_key(*l)) {
            return Some(format!("{both} occurs both as a left and a right child"));
        }
        None
    }

    /// A fresh nonterminal `<base>_<tag><k>`, smallest `k >= 1` not in use.
    pub(crate) fn fresh_name(used: &HashSet<String>, base: &str, tag: &str) -> String {
        (1..)
            .map(|k| format!("{base}_{tag}{k}"))
            .find(|n| !used.contains(n))
            .expect("unbounded counter")
    }

    /// Drops nonterminals that derive no terminal word or are unreachable
    /// from the start symbol, together with every rule mentioning them.
    pub fn prune_useless(&self) -> Grammar {
        let mut generating: HashSet<&str> = HashSet::new();
        loop {
            let before = generating.len();
            for r in &self.rules {
                if r.rhs.iter().all(|s| match s {
                    Symbol::Terminal(_) => true,
                    Symbol::Nonterminal(n) => generating.contains(n.as_str()),
                }) {
                    generating.insert(&r.lhs);
                }
            }
            if generating.len() == before {
                break;
            }
        }
        let productive = |r: &&Rule| {
            generating.contains(r.lhs.as_str())
                && r.rhs
                    .iter()
                    .all(|s| s.as_nonterminal().is_none_or(|n| generating.contains(n)))
        };
        let kept: Vec<&Rule> = self.rules.iter().filter(productive).collect();
        let mut reachable: HashSet<&str> = HashSet::from([self.start.as_str()]);
        let mut stack = vec![self.start.as_str()];
        while let Some(x) = stack.pop() {
            for r in kept.iter().filter(|r| r.lhs == x) {
                for n in r.rhs.iter().filter_map(Symbol::as_nonterminal) {
                    if reachable.insert(n) {
                        stack.push(n);
                    }
                }
            }
        }
        let rules: Vec<Rule> = kept
            .into_iter()
            .filter(|r| reachable.contains(r.lhs.as_str()))
            .cloned()
            .collect();
        match Grammar::new(self.start.clone(), rules) {
            Ok(g) => g,
            // empty language: keep the grammar as is
            Err(_) => self.clone(),
        }
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.start)?;
        let mut i = 0;
        while i < self.rules.len() {
            let lhs = &self.rules[i].lhs;
            write!(f, "{lhs} -> ")?;
            let mut first = true;
            while i < self.rules.len() && self.rules[i].lhs == *lhs {
                if !first {
                    f.write_str(" | ")?;
                }
                write_alternative(f, &self.rules[i].rhs)?;
                first = false;
                i += 1;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Grammar {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_grammar(s)
    }
}

pub fn serialize_grammar(g: &Grammar) -> String {
    g.to_string()
}

pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    parse_grammar_with(text, DEFAULT_MAX_RHS)
}

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String),
    Quoted(char),
    Arrow,
    Bar,
    Colon,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(Token, usize)>, GrammarError> {
    let chars: Vec<char> = line.chars().collect();
    let err = |column: usize, message: &str| GrammarError::Syntax {
        line: lineno,
        column,
        message: message.to_string(),
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '|' {
            out.push((Token::Bar, col));
            i += 1;
        } else if c == ':' {
            out.push((Token::Colon, col));
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1) != Some(&'>') {
                return Err(err(col, "expected `->`"));
            }
            out.push((Token::Arrow, col));
            i += 2;
        } else if c == '\'' {
            match (chars.get(i + 1), chars.get(i + 2)) {
                (Some(t), Some('\'')) => {
                    out.push((Token::Quoted(*t), col));
                    i += 3;
                }
                _ => return Err(err(col, "terminal must be one quoted character")),
            }
        } else if c.is_ascii_alphabetic() {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[begin..i].iter().collect()), col));
        } else {
            return Err(err(col, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Parses the grammar text format with an explicit right-hand-side bound.
pub fn parse_grammar_with(text: &str, max_rhs: usize) -> Result<Grammar, GrammarError> {
    let mut start: Option<String> = None;
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens = tokenize(raw, lineno)?;
        let syntax = |column: usize, message: &str| GrammarError::Syntax {
            line: lineno,
            column,
            message: message.to_string(),
        };
        match tokens.as_slice() {
            [(Token::Ident(kw), _), (Token::Colon, _), (Token::Ident(s), _)] if kw == "start" => {
                if start.is_some() {
                    return Err(GrammarError::DuplicateStart { line: lineno });
                }
                start = Some(s.clone());
            }
            [(Token::Ident(kw), _), (Token::Colon, c), ..] if kw == "start" => {
                return Err(syntax(*c, "expected one nonterminal after `start:`"));
            }
            [(Token::Ident(lhs), _), (Token::Arrow, arrow_col), rest @ ..] => {
                if lhs == "eps" {
                    return Err(syntax(1, "`eps` cannot be rewritten"));
                }
                let mut alt: Vec<Symbol> = Vec::new();
                let mut saw_eps = false;
                let mut last_col = *arrow_col;
                let mut finish = |alt: &mut Vec<Symbol>, saw_eps: &mut bool, col: usize| {
                    if alt.is_empty() && !*saw_eps {
                        return Err(syntax(col, "empty alternative (write `eps`)"));
                    }
                    if alt.len() > max_rhs {
                        return Err(GrammarError::RhsTooLong {
                            lhs: lhs.clone(),
                            len: alt.len(),
                            limit: max_rhs,
                        });
                    }
                    rules.push(Rule::new(lhs.clone(), std::mem::take(alt)));
                    *saw_eps = false;
                    Ok(())
                };
                for (tok, col) in rest {
                    last_col = *col;
                    match tok {
                        Token::Bar => finish(&mut alt, &mut saw_eps, *col)?,
                        Token::Ident(n) if n == "eps" => {
                            if !alt.is_empty() || saw_eps {
                                return Err(syntax(*col, "`eps` must stand alone"));
                            }
                            saw_eps = true;
                        }
                        _ if saw_eps => return Err(syntax(*col, "`eps` must stand alone")),
                        Token::Ident(n) => alt.push(Symbol::Nonterminal(n.clone())),
                        Token::Quoted(t) => alt.push(Symbol::Terminal(*t)),
                        Token::Arrow | Token::Colon => {
                            return Err(syntax(*col, "unexpected token in alternative"))
                        }
                    }
                }
                finish(&mut alt, &mut saw_eps, last_col + 1)?;
            }
            [(_, c), ..] => return Err(syntax(*c, "expected `start: <NT>` or `<NT> -> ...`")),
            [] => {}
        }
    }
    let start = start.ok_or(GrammarError::MissingStart)?;
    Grammar::new(start, rules)
}

/// Finds a renaming of nonterminals (start to start, terminals fixed) that
/// maps the rule set of `a` onto the rule set of `b`.
pub fn isomorphism(a: &Grammar, b: &Grammar) -> Option<BTreeMap<String, String>> {
    if a.nonterminals.len() != b.nonterminals.len()
        || a.rules.len() != b.rules.len()
        || a.terminals.iter().collect::<BTreeSet<_>>()
            != b.terminals.iter().collect::<BTreeSet<_>>()
    {
        return None;
    }
    let sa = Signatures::of(a);
    let sb = Signatures::of(b);
    let order: Vec<&String> = {
        let mut v: Vec<&String> = a.nonterminals.iter().collect();
        // fewest candidates first
        v.sort_by_key(|n| {
            b.nonterminals
                .iter()
                .filter(|m| sa.get(n) == sb.get(m))
                .count()
        });
        v
    };
    let b_rules: HashSet<&Rule> = b.rules.iter().collect();
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let mut used: HashSet<String> = HashSet::new();
    map.insert(a.start.clone(), b.start.clone());
    used.insert(b.start.clone());
    if sa.get(&a.start) != sb.get(&b.start) {
        return None;
    }
    fn consistent(a: &Grammar, b_rules: &HashSet<&Rule>, map: &BTreeMap<String, String>) -> bool {
        a.rules.iter().all(|r| {
            let Some(lhs) = map.get(&r.lhs) else {
                return true;
            };
            let mut rhs = Vec::with_capacity(r.rhs.len());
            for s in &r.rhs {
                match s {
                    Symbol::Terminal(c) => rhs.push(Symbol::Terminal(*c)),
                    Symbol::Nonterminal(n) => match map.get(n) {
                        Some(m) => rhs.push(Symbol::Nonterminal(m.clone())),
                        None => return true,
                    },
                }
            }
            b_rules.contains(&Rule::new(lhs.clone(), rhs))
        })
    }
    #[allow(clippy::too_many_arguments)]
    fn search(
        idx: usize,
        order: &[&String],
        a: &Grammar,
        b: &Grammar,
        sa: &Signatures,
        sb: &Signatures,
        b_rules: &HashSet<&Rule>,
        map: &mut BTreeMap<String, String>,
        used: &mut HashSet<String>,
    ) -> bool {
        if idx == order.len() {
            return consistent(a, b_rules, map);
        }
        let n = order[idx];
        if map.contains_key(n) {
            return search(idx + 1, order, a, b, sa, sb, b_rules, map, used);
        }
        for m in &b.nonterminals {
            if used.contains(m) || sa.get(n) != sb.get(m) {
                continue;
            }
            map.insert(n.clone(), m.clone());
            used.insert(m.clone());
            if consistent(a, b_rules, map)
                && search(idx + 1, order, a, b, sa, sb, b_rules, map, used)
            {
                return true;
            }
            map.remove(n);
            used.remove(m);
        }
        false
    }
    if search(0, &order, a, b, &sa, &sb, &b_rules, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Renaming-invariant per-nonterminal fingerprint used to prune the
/// isomorphism search.
struct Signatures(HashMap<String, (usize, BTreeSet<char>, usize, usize, usize)>);

impl Signatures {
    fn of(g: &Grammar) -> Signatures {
        let mut m = HashMap::new();
        for n in &g.nonterminals {
            let own: Vec<&Rule> = g.rules_of(n).collect();
            let terms: BTreeSet<char> = own.iter().filter_map(|r| r.as_terminal()).collect();
            let mut as_left = 0;
            let mut as_right = 0;
            for r in &g.rules {
                for (i, s) in r.rhs.iter().enumerate() {
                    if s.as_nonterminal() == Some(n) {
                        if i == 0 {
                            as_left += 1;
                        } else {
                            as_right += 1;
                        }
                    }
                }
            }
            m.insert(
                n.clone(),
                (
                    own.len(),
                    terms,
                    as_left,
                    as_right,
                    own.iter().filter(|r| r.rhs.len() > 1).count(),
                ),
            );
        }
        Signatures(m)
    }

    fn get(&self, n: &str) -> Option<&(usize, BTreeSet<char>, usize, usize, usize)> {
        self.0.get(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXPR: &str = "start: E\nE -> 'a' | T '*' R | E '+' T\nT -> 'a' | T '*' R\nR -> 'a'\n";

    #[test]
    fn parses_expression_grammar() {
        let g = parse_grammar(EXPR).unwrap();
        assert_eq!(g.nonterminals(), ["E", "T", "R"]);
        assert_eq!(g.terminals(), ['a', '*', '+']);
        assert_eq!(g.rules().len(), 6);
        assert_eq!(g.start(), "E");
        assert!(!g.is_cnf());
    }

    #[test]
    fn minimal_grammar() {
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        assert_eq!(
            (g.nonterminals().len(), g.terminals().len(), g.rules().len()),
            (1, 1, 1)
        );
        assert!(g.is_cnf());
        assert!(g.is_dyck_nf());
    }

    #[test]
    fn undeclared_symbol() {
        assert_eq!(
            parse_grammar("start: S\nS -> A"),
            Err(GrammarError::UndeclaredSymbol("A".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_grammar("start: S\nS -> 'ab'") {
            Err(GrammarError::Syntax {
                line: 2, column: 6, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_grammar("start: S\nS -> 'a' $") {
            Err(GrammarError::Syntax {
                line: 2,
                column: 10,
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_grammar("start: S\nstart: S\nS -> 'a'"),
            Err(GrammarError::DuplicateStart { line: 2 })
        ));
        assert_eq!(
            parse_grammar("start: S\n# nothing"),
            Err(GrammarError::EmptyRuleSet)
        );
        assert_eq!(parse_grammar("S -> 'a'"), Err(GrammarError::MissingStart));
        assert!(matches!(
            parse_grammar("start: S\nS -> 'a' eps"),
            Err(GrammarError::Syntax { .. })
        ));
        assert!(matches!(
            parse_grammar("start: S\nS -> 'a' | | 'b'"),
            Err(GrammarError::Syntax { .. })
        ));
    }

    #[test]
    fn rhs_bound() {
        let long = "start: S\nS -> 'a' 'a' 'a' 'a' 'a' 'a' 'a' 'a' 'a'";
        assert!(matches!(
            parse_grammar(long),
            Err(GrammarError::RhsTooLong { len: 9, .. })
        ));
        assert!(parse_grammar_with(long, 9).is_ok());
    }

    #[test]
    fn eps_round_trip() {
        let g = parse_grammar("start: S\nS -> 'a' R\nR -> eps | 'b'").unwrap();
        let text = serialize_grammar(&g);
        assert!(text.contains("eps"));
        assert_eq!(parse_grammar(&text).unwrap(), g);
    }

    #[test]
    fn expression_round_trip() {
        let g = parse_grammar(EXPR).unwrap();
        let text = serialize_grammar(&g);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(parse_grammar(&text).unwrap(), g);
    }

    #[test]
    fn quoted_bar_and_colon_terminals() {
        let g = parse_grammar("start: S\nS -> '|' S ':' | '-'").unwrap();
        assert_eq!(g.terminals(), ['|', ':', '-']);
        assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn dyck_conditions() {
        // item 2
        let g = parse_grammar("start: S\nS -> A B\nA -> 'a' | A B\nB -> 'b'").unwrap();
        assert!(g.is_cnf() && !g.is_dyck_nf());
        // item 3
        let g = parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> C A\nC -> 'c'").unwrap();
        assert!(!g.is_dyck_nf());
        // item 4
        let g = parse_grammar("start: S\nS -> A B | C B\nA -> 'a'\nB -> 'b'\nC -> 'c'").unwrap();
        assert!(!g.is_dyck_nf());
        let g = parse_grammar("start: S\nS -> A B | 'c'\nA -> 'a'\nB -> 'b'").unwrap();
        assert!(g.is_dyck_nf());
        // start on a right-hand side
        let g = parse_grammar("start: S\nS -> A S | 'c'\nA -> 'a'").unwrap();
        assert!(g.is_cnf() && !g.is_dyck_nf());
    }

    #[test]
    fn isomorphism_up_to_renaming() {
        let a = parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> 'b' ").unwrap();
        let b = parse_grammar("start: S\nS -> X Y\nY -> 'b'\nX -> 'a'").unwrap();
        let m = isomorphism(&a, &b).unwrap();
        assert_eq!(m["A"], "X");
        let c = parse_grammar("start: S\nS -> X Y\nY -> 'a'\nX -> 'b'").unwrap();
        assert!(isomorphism(&a, &c).is_none());
    }

    #[test]
    fn pruning() {
        let g = parse_grammar("start: S\nS -> A B | 'c'\nA -> A B\nB -> 'b'\nD -> 'd'").unwrap();
        let p = g.prune_useless();
        assert_eq!(p.nonterminals(), ["S"]);
        assert_eq!(p.rules().len(), 1);
    }
}
