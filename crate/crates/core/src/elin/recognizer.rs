//! Divide-and-conquer membership for grammars produced by `elin_to_dyck_nf`.
//!
//! A word `a_1 ... a_n` with `p = floor(n / 2)` is derived along a spine of
//! left brackets `[j_1 ... [j_p`: `S -> [j_1 ]j_1`, and for `k < p` a pair
//! `i` with `]j_k -> [i ]i`, `[i -> [j_{k+1} ]j_{k+1}`, `]i -> a_{n-k+1}`.
//! The spine ends with `]j_p -> a_{p+1}` (even `n`) or `]j_p -> [c ]c`,
//! `[c -> a_{p+1}`, `]c -> a_{p+2}` (odd `n`). Position 0 holds a virtual
//! bracket for `S`. The recognizer guesses brackets at chain positions,
//! splitting `[0, p]` by the iterated division of `p`, and evaluates the
//! resulting alternating tree with memoization.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::convert::elin_shape_violation;
use super::division::{iterated_division, IteratedDivision};
use super::ElinError;
use crate::cyk::{member, CykError};
use crate::grammar::Grammar;
use crate::phi::partition_with;
use crate::trace::{pairing_of, BracketPairing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Node labels. `Diamond` marks a branch whose own checks succeeded but
/// whose leftmost bracket was guessed by an ancestor and is confirmed only
/// by a sibling; the enclosing universal node resolves it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Zero,
    One,
    Diamond,
}

impl Label {
    fn ok(self) -> bool {
        self != Label::Zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStat {
    pub label: String,
    pub quantifier: Quantifier,
    /// Evaluated nodes at this level (memoized repeats are not counted).
    pub nodes: usize,
    /// Largest branching of a node at this level; for existential levels the
    /// number of candidate tuples, saturating.
    pub max_branches: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlternationTrace {
    pub levels: Vec<LevelStat>,
    /// Quantifier levels on the longest root-to-leaf path of the plan.
    pub depth: usize,
    pub alternations: usize,
    /// Simulated work-tape cells: counters in binary plus the longest
    /// bracket tuple held at once.
    pub cells: usize,
    pub diamonds_resolved: usize,
    pub cut_points: usize,
    /// Cutting points that are not the right edge of a last sub-interval at
    /// the deepest level.
    pub cut_point_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub accepted: bool,
    pub n: usize,
    pub p: usize,
    /// `None` when `p < 4` and the word was decided by CYK.
    pub division: Option<IteratedDivision>,
    pub trace: AlternationTrace,
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.accepted { "accept" } else { "reject" };
        match &self.division {
            None => writeln!(f, "{verdict} n={} p={} (cyk base case)", self.n, self.p),
            Some(d) => {
                writeln!(
                    f,
                    "{verdict} n={} p={} d={} ell={}",
                    self.n,
                    self.p,
                    d.divisor,
                    d.ell()
                )?;
                writeln!(f, "division {d}")?;
                let t = &self.trace;
                writeln!(
                    f,
                    "depth={} alternations={} cells={} diamonds={} cut_points={} cut_point_violations={}",
                    t.depth, t.alternations, t.cells, t.diamonds_resolved, t.cut_points, t.cut_point_violations
                )?;
                for (i, l) in t.levels.iter().enumerate() {
                    let q = match l.quantifier {
                        Quantifier::Exists => "E",
                        Quantifier::Forall => "A",
                    };
                    writeln!(
                        f,
                        "level {:>2} {q} {:<22} nodes={} branches={}",
                        i + 1,
                        l.label,
                        l.nodes,
                        l.max_branches
                    )?;
                }
                Ok(())
            }
        }
    }
}

const START: usize = 0;

struct Spine {
    w: Vec<char>,
    n: usize,
    p: usize,
    /// Per pair index (1-based, slot 0 unused): terminal of the left and
    /// right nonterminal.
    left_t: Vec<Option<char>>,
    right_t: Vec<Option<char>>,
    start_pairs: HashSet<usize>,
    /// `]j -> [i ]i`
    right_rules: Vec<Vec<usize>>,
    /// `[i -> [j ]j`
    left_rules: Vec<Vec<usize>>,
    /// `cand[k]`: pairs whose left nonterminal derives `a_k`.
    cand: Vec<Vec<usize>>,
}

fn pair_of(p: &BracketPairing, nt: &str) -> Option<usize> {
    p.bracket(nt).map(|b| b.pair)
}

impl Spine {
    fn new(g: &Grammar, w: &str) -> Result<(Spine, BracketPairing), ElinError> {
        let pairing = pairing_of(g).map_err(|e| ElinError::NotElinShape(e.to_string()))?;
        let part = partition_with(g, &pairing);
        if let Some(v) = elin_shape_violation(g, &pairing, &part) {
            return Err(ElinError::NotElinShape(v));
        }
        let w: Vec<char> = w.chars().collect();
        if w.is_empty() {
            return Err(CykError::EmptyWord.into());
        }
        if let Some(c) = w.iter().find(|c| !g.terminals().contains(c)) {
            return Err(CykError::UnknownSymbol(*c).into());
        }
        let k = pairing.k();
        let term = |nt: &str| g.rules_of(nt).find_map(|r| r.as_terminal());
        let mut left_t = vec![None; k + 1];
        let mut right_t = vec![None; k + 1];
        let mut right_rules = vec![Vec::new(); k + 1];
        let mut left_rules = vec![Vec::new(); k + 1];
        for (i, (l, r)) in pairing.pairs().iter().enumerate() {
            let idx = i + 1;
            left_t[idx] = term(l);
            right_t[idx] = term(r);
            for (owner, out) in [(r, &mut right_rules[idx]), (l, &mut left_rules[idx])] {
                for rule in g.rules_of(owner) {
                    if let Some(q) = rule.as_binary().and_then(|(b, _)| pair_of(&pairing, b)) {
                        out.push(q);
                    }
                }
            }
        }
        let start_pairs = g
            .rules_of(g.start())
            .filter_map(|r| r.as_binary().and_then(|(b, _)| pair_of(&pairing, b)))
            .collect();
        let n = w.len();
        let p = n / 2;
        let mut cand = vec![Vec::new(); p + 1];
        for (kk, c) in cand.iter_mut().enumerate().skip(1) {
            *c = (1..=k).filter(|&b| left_t[b] == Some(w[kk - 1])).collect();
        }
        Ok((
            Spine {
                w,
                n,
                p,
                left_t,
                right_t,
                start_pairs,
                right_rules,
                left_rules,
                cand,
            },
            pairing,
        ))
    }

    /// `a_k`, 1-based.
    fn a(&self, k: usize) -> Option<char> {
        self.w.get(k.wrapping_sub(1)).copied()
    }

    /// The five-rule check between chain positions `k` and `k + 1`; position
    /// 0 is the start symbol.
    fn link(&self, k: usize, b: usize, b2: usize) -> bool {
        if self.left_t[b2] != self.a(k + 1) {
            return false;
        }
        if k == 0 {
            return b == START && self.start_pairs.contains(&b2);
        }
        self.left_t[b] == self.a(k)
            && self.right_rules[b].iter().any(|&i| {
                self.left_rules[i].contains(&b2) && self.right_t[i] == self.a(self.n - k + 1)
            })
    }

    fn end(&self, b: usize) -> bool {
        let p = self.p;
        if self.left_t[b] != self.a(p) {
            return false;
        }
        if self.n.is_multiple_of(2) {
            self.right_t[b] == self.a(p + 1)
        } else {
            self.right_rules[b]
                .iter()
                .any(|&c| self.left_t[c] == self.a(p + 1) && self.right_t[c] == self.a(p + 2))
        }
    }
}

/// Checks the link between the left brackets of `jk` and `jk1` at chain
/// position `k` (`1 <= k < floor(|w| / 2)`).
pub fn local_check(g: &Grammar, w: &str, k: usize, jk: &str, jk1: &str) -> Result<bool, ElinError> {
    let (s, pairing) = Spine::new(g, w)?;
    if k == 0 || k >= s.p {
        return Err(ElinError::PositionOutOfRange { k, p: s.p });
    }
    let left_pair = |nt: &str| {
        pairing
            .bracket(nt)
            .filter(|b| b.is_left())
            .map(|b| b.pair)
            .ok_or_else(|| ElinError::NotElinShape(format!("{nt} is not a left bracket")))
    };
    Ok(s.link(k, left_pair(jk)?, left_pair(jk1)?))
}

fn saturating_product(sizes: impl Iterator<Item = usize>) -> u128 {
    sizes.fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

struct Machine<'a> {
    s: &'a Spine,
    div: &'a IteratedDivision,
    d: usize,
    ell: usize,
    memo: HashMap<(usize, usize, usize, usize), Label>,
    trace: AlternationTrace,
}

impl Machine<'_> {
    fn level_index(&self, l: usize, part: usize) -> usize {
        if l > self.ell {
            2 + 4 * self.ell + part
        } else {
            2 + 4 * (l - 1) + part
        }
    }

    fn note(&mut self, idx: usize, branches: u128) {
        let st = &mut self.trace.levels[idx];
        st.nodes += 1;
        st.max_branches = st.max_branches.max(branches);
    }

    /// Chain positions `x..=y` with brackets `bx`, `by` fixed at the ends;
    /// `l` is the division level whose quotient `Q_{l-1}` equals `y - x`.
    fn interval(&mut self, l: usize, x: usize, bx: usize, by: usize) -> Label {
        if let Some(&v) = self.memo.get(&(l, x, bx, by)) {
            return v;
        }
        let len = self.div.q(l - 1) as usize;
        let y = x + len;
        let pending = if l >= 2 { Label::Diamond } else { Label::One };
        let v = if l > self.ell {
            let e = self.level_index(l, 0);
            let branches = saturating_product((x + 1..y).map(|k| self.s.cand[k].len()));
            self.note(e, branches);
            let reach = self.advance(x, y - 1, bx);
            let fa = self.level_index(l, 1);
            let ok = reach.iter().any(|&b| {
                self.trace.levels[fa].nodes += 1;
                self.s.link(y - 1, b, by)
            });
            self.trace.levels[fa].max_branches =
                self.trace.levels[fa].max_branches.max(len as u128);
            if ok {
                pending
            } else {
                Label::Zero
            }
        } else {
            let r = self.div.r(l) as usize;
            let e = self.level_index(l, 0);
            let branches = saturating_product((x + 1..=x + r).map(|k| self.s.cand[k].len()));
            self.note(e, branches);
            let reach = self.advance(x, x + r, bx);
            let fa = self.level_index(l, 1);
            self.note(fa, r as u128 + 1);
            let mut label = Label::Zero;
            for b in reach {
                if self.cut(l, x + r, b, by).ok() {
                    label = pending;
                    break;
                }
            }
            label
        };
        self.memo.insert((l, x, bx, by), v);
        v
    }

    /// Brackets reachable at position `to` from `bx` at `from` through
    /// successful links; `{bx}` when `from == to`.
    fn advance(&self, from: usize, to: usize, bx: usize) -> Vec<usize> {
        let mut reach = vec![bx];
        for k in from + 1..=to {
            reach = self.s.cand[k]
                .iter()
                .copied()
                .filter(|&b| reach.iter().any(|&a| self.s.link(k - 1, a, b)))
                .collect();
            if reach.is_empty() {
                break;
            }
        }
        reach
    }

    /// Guesses the `d - 1` cutting points after `x` and checks the `d`
    /// sub-intervals of length `Q_l` universally.
    fn cut(&mut self, l: usize, x: usize, bx: usize, by: usize) -> Label {
        let q = self.div.q(l) as usize;
        let d = self.d;
        let e = self.level_index(l, 2);
        let branches = saturating_product((1..d).map(|i| self.s.cand[x + i * q].len()));
        self.note(e, branches);
        let fa = self.level_index(l, 3);
        self.note(fa, d as u128);
        let mut reach = vec![bx];
        for i in 1..=d {
            let pos = x + i * q;
            let targets: Vec<usize> = if i == d {
                vec![by]
            } else {
                self.s.cand[pos].clone()
            };
            let mut next = Vec::new();
            for b in targets {
                let mut hit = false;
                for &a in &reach {
                    let child = self.interval(l + 1, pos - q, a, b);
                    if child == Label::Diamond {
                        self.trace.diamonds_resolved += 1;
                    }
                    if child.ok() {
                        hit = true;
                        break;
                    }
                }
                if hit {
                    next.push(b);
                }
            }
            reach = next;
            if reach.is_empty() {
                return Label::Zero;
            }
        }
        Label::One
    }
}

fn build_levels(ell: usize) -> Vec<LevelStat> {
    let stat = |label: String, quantifier| LevelStat {
        label,
        quantifier,
        nodes: 0,
        max_branches: 0,
    };
    let mut v = vec![
        stat("guess n, last bracket".into(), Quantifier::Exists),
        stat("end check, interval".into(), Quantifier::Forall),
    ];
    for l in 1..=ell {
        v.push(stat(format!("l{l} prefix tuple"), Quantifier::Exists));
        v.push(stat(format!("l{l} prefix links, rest"), Quantifier::Forall));
        v.push(stat(format!("l{l} cutting points"), Quantifier::Exists));
        v.push(stat(format!("l{l} sub-intervals"), Quantifier::Forall));
    }
    v.push(stat("leaf tuple".into(), Quantifier::Exists));
    v.push(stat("leaf links".into(), Quantifier::Forall));
    v
}

/// Walks the interval plan, which depends only on `p`, and counts cutting
/// points `P^u` (`u < ell`) that are not the right edge of a last deepest
/// sub-interval.
fn cut_point_audit(div: &IteratedDivision) -> (usize, usize) {
    let d = div.divisor as usize;
    let ell = div.ell();
    let mut cuts = Vec::new();
    let mut edges = HashSet::new();
    let mut stack = vec![(1usize, 0usize, false)];
    while let Some((l, x, last)) = stack.pop() {
        let len = div.q(l - 1) as usize;
        if l > ell {
            if last {
                edges.insert(x + len);
            }
            continue;
        }
        let r = div.r(l) as usize;
        let q = div.q(l) as usize;
        // the claim covers cutting points spawned above the deepest level
        if l < ell {
            cuts.extend((1..=d).map(|i| x + r + i * q));
        }
        for i in 0..d {
            stack.push((l + 1, x + r + i * q, i == d - 1));
        }
    }
    let violations = cuts.iter().filter(|c| !edges.contains(c)).count();
    (cuts.len(), violations)
}

fn bits(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Registers: n, p, d, ell, the current level, Q_l, R_l and a position.
const REGISTERS: usize = 8;

pub fn recognize_atm(g: &Grammar, w: &str) -> Result<Recognition, ElinError> {
    let (s, _) = Spine::new(g, w)?;
    let (n, p) = (s.n, s.p);
    if p < 4 {
        return Ok(Recognition {
            accepted: member(g, w)?,
            n,
            p,
            division: None,
            trace: AlternationTrace::default(),
        });
    }
    let div = iterated_division(p as u64)?;
    let d = div.divisor as usize;
    let ell = div.ell();
    let levels = build_levels(ell);
    let depth = levels.len();
    let tuple = (1..=ell)
        .map(|l| div.r(l) as usize + 3)
        .chain([d + 2, div.q(ell) as usize + 3])
        .max()
        .unwrap_or(0);
    let (cut_points, cut_point_violations) = cut_point_audit(&div);
    let mut m = Machine {
        s: &s,
        div: &div,
        d,
        ell,
        memo: HashMap::new(),
        trace: AlternationTrace {
            levels,
            depth,
            alternations: depth - 1,
            cells: REGISTERS * bits(n) + tuple,
            cut_points,
            cut_point_violations,
            ..Default::default()
        },
    };
    m.note(0, s.cand[p].len() as u128);
    let mut accepted = false;
    for &b in &s.cand[p] {
        m.note(1, 2);
        if s.end(b) && m.interval(1, 0, START, b).ok() {
            accepted = true;
            break;
        }
    }
    let trace = m.trace;
    Ok(Recognition {
        accepted,
        n,
        p,
        division: Some(div),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::even_linear_corpus;
    use crate::elin::{elin_to_dyck_nf, EvenLinearGrammar};
    use crate::enumerate::enumerate_words;
    use crate::grammar::parse_grammar;

    fn convert(text: &str) -> Grammar {
        let g = parse_grammar(text).unwrap();
        elin_to_dyck_nf(&EvenLinearGrammar::new(g).unwrap())
            .unwrap()
            .grammar
    }

    #[test]
    fn local_check_on_anbn() {
        let g = convert("start: S\nS -> 'a' S 'b' | 'c'");
        let pairing = pairing_of(&g).unwrap();
        let lefts: Vec<&str> = pairing.pairs().iter().map(|(l, _)| l.as_str()).collect();
        let mut hits = Vec::new();
        for a in &lefts {
            for b in &lefts {
                if local_check(&g, "aacbb", 1, a, b).unwrap() {
                    hits.push((a.to_string(), b.to_string()));
                }
            }
        }
        assert!(!hits.is_empty());
        for (a, b) in &hits {
            assert!(!local_check(&g, "aacba", 1, a, b).unwrap());
        }
        assert!(matches!(
            local_check(&g, "aacbb", 2, lefts[0], lefts[0]),
            Err(ElinError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn agrees_with_cyk_on_corpus() {
        for g in even_linear_corpus() {
            let e = elin_to_dyck_nf(&EvenLinearGrammar::new(g.clone()).unwrap()).unwrap();
            let words = enumerate_words(&g, 13).unwrap();
            for w in words.iter().filter(|w| w.len() >= 8) {
                let r = recognize_atm(&e.grammar, w).unwrap();
                assert!(r.accepted, "{w} in {g}");
                assert_eq!(r.trace.cut_point_violations, 0);
            }
            let t: Vec<char> = g.terminals().to_vec();
            let mut w: Vec<char> = words.last().unwrap().chars().collect();
            for i in 0..w.len() {
                let orig = w[i];
                for &c in &t {
                    w[i] = c;
                    let s: String = w.iter().collect();
                    if s.len() >= 8 {
                        let r = recognize_atm(&e.grammar, &s).unwrap();
                        assert_eq!(r.accepted, member(&e.grammar, &s).unwrap(), "{s}");
                    }
                }
                w[i] = orig;
            }
        }
    }

    #[test]
    fn long_word_report() {
        let g = convert("start: S\nS -> 'a' S 'b' | 'c'");
        let w = format!("{}c{}", "a".repeat(64), "b".repeat(64));
        let r = recognize_atm(&g, &w).unwrap();
        assert!(r.accepted);
        let d = r.division.as_ref().unwrap();
        assert_eq!((d.divisor, d.ell()), (6, 2));
        assert_eq!(r.trace.depth, 4 * 2 + 4);
        assert!(r.trace.depth <= 8 * 8);
        assert!(r.trace.cells <= 32 * 8);
        let bad = format!("{}c{}", "a".repeat(64), "b".repeat(63));
        assert!(!recognize_atm(&g, &bad).unwrap().accepted);
        assert!(r.to_string().starts_with("accept n=129 p=64 d=6 ell=2"));
    }

    #[test]
    fn rejects_general_dyck_grammar() {
        assert!(matches!(
            recognize_atm(&crate::corpus::expr_dyck(), "a+a*a"),
            Err(ElinError::NotElinShape(_))
        ));
    }
}
