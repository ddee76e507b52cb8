//! Triangular-matrix CYK over grammars in Chomsky normal form.
//!
//! Positions are 1-based and inclusive: `cell(i, j)` is `V_ij`, the set of
//! nonterminals deriving `a_i ... a_j`.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::derivation::{Child, DerivationTree};
use crate::grammar::Grammar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CykError {
    #[error("grammar is not in Chomsky normal form")]
    NotCnf,
    #[error("empty word")]
    EmptyWord,
    #[error("symbol `{0}` is not a terminal of the grammar")]
    UnknownSymbol(char),
    #[error("word `{0}` is not in the language")]
    NotAMember(String),
    #[error("more than {0} derivation trees")]
    TooManyTrees(usize),
}

/// Index form of a CNF grammar.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub names: Vec<String>,
    /// (lhs, left, right) in rule order
    pub binary: Vec<(usize, usize, usize)>,
    /// (lhs, terminal) in rule order
    pub terminal: Vec<(usize, char)>,
    pub start: usize,
}

impl Compiled {
    pub fn new(g: &Grammar) -> Result<Compiled, CykError> {
        if !g.is_cnf() {
            return Err(CykError::NotCnf);
        }
        let names = g.nonterminals().to_vec();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let mut binary = Vec::new();
        let mut terminal = Vec::new();
        for r in g.rules() {
            if let Some((b, c)) = r.as_binary() {
                binary.push((index[&r.lhs], index[b], index[c]));
            } else if let Some(t) = r.as_terminal() {
                terminal.push((index[&r.lhs], t));
            }
        }
        Ok(Compiled {
            start: index[g.start()],
            names,
            binary,
            terminal,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CykTable {
    n: usize,
    names: Vec<String>,
    // cells[i][j - i] for 0-based i, j
    cells: Vec<Vec<Vec<bool>>>,
}

impl CykTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `V_ij` (1-based, inclusive) in nonterminal declaration order.
    pub fn cell(&self, i: usize, j: usize) -> Vec<&str> {
        assert!(
            1 <= i && i <= j && j <= self.n,
            "cell ({i},{j}) out of range"
        );
        self.cells[i - 1][j - i]
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(k, _)| self.names[k].as_str())
            .collect()
    }

    pub fn contains(&self, i: usize, j: usize, nt: &str) -> bool {
        match self.names.iter().position(|n| n == nt) {
            Some(k) => self.cells[i - 1][j - i][k],
            None => false,
        }
    }

    fn has(&self, i0: usize, j0: usize, k: usize) -> bool {
        self.cells[i0][j0 - i0][k]
    }

    /// Row-major text dump, one row per `i`, cells as `{A,B}`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            let row: Vec<String> = (i..=self.n)
                .map(|j| format!("{{{}}}", self.cell(i, j).join(",")))
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

fn check_word(g: &Grammar, w: &str) -> Result<Vec<char>, CykError> {
    let chars: Vec<char> = w.chars().collect();
    if chars.is_empty() {
        return Err(CykError::EmptyWord);
    }
    if let Some(c) = chars.iter().find(|c| !g.terminals().contains(c)) {
        return Err(CykError::UnknownSymbol(*c));
    }
    Ok(chars)
}

pub fn build_table(g: &Grammar, w: &str) -> Result<CykTable, CykError> {
    let c = Compiled::new(g)?;
    let chars = check_word(g, w)?;
    Ok(fill(&c, &chars))
}

pub(crate) fn fill(c: &Compiled, chars: &[char]) -> CykTable {
    let n = chars.len();
    let k = c.names.len();
    let mut cells: Vec<Vec<Vec<bool>>> = (0..n).map(|i| vec![vec![false; k]; n - i]).collect();
    for (i, a) in chars.iter().enumerate() {
        for &(x, t) in &c.terminal {
            if t == *a {
                cells[i][0][x] = true;
            }
        }
    }
    for span in 1..n {
        for i in 0..n - span {
            let j = i + span;
            let mut acc = vec![false; k];
            for l in i..j {
                let left = &cells[i][l - i];
                let right = &cells[l + 1][j - l - 1];
                for &(x, b, cc) in &c.binary {
                    if left[b] && right[cc] {
                        acc[x] = true;
                    }
                }
            }
            cells[i][span] = acc;
        }
    }
    CykTable {
        n,
        names: c.names.clone(),
        cells,
    }
}

pub fn member(g: &Grammar, w: &str) -> Result<bool, CykError> {
    let t = build_table(g, w)?;
    Ok(t.contains(1, t.len(), g.start()))
}

/// The canonical tree: smallest split point first, then the first matching
/// rule in declaration order.
pub fn extract_tree(g: &Grammar, w: &str) -> Result<DerivationTree, CykError> {
    let c = Compiled::new(g)?;
    let chars = check_word(g, w)?;
    let table = fill(&c, &chars);
    if !table.has(0, chars.len() - 1, c.start) {
        return Err(CykError::NotAMember(w.to_string()));
    }
    Ok(canonical(&c, &table, &chars, c.start, 0, chars.len() - 1))
}

fn canonical(
    c: &Compiled,
    t: &CykTable,
    w: &[char],
    x: usize,
    i: usize,
    j: usize,
) -> DerivationTree {
    if i == j {
        return DerivationTree::leaf(c.names[x].clone(), w[i]);
    }
    for l in i..j {
        for &(lhs, b, cc) in &c.binary {
            if lhs == x && t.has(i, l, b) && t.has(l + 1, j, cc) {
                return DerivationTree::binary(
                    c.names[x].clone(),
                    canonical(c, t, w, b, i, l),
                    canonical(c, t, w, cc, l + 1, j),
                );
            }
        }
    }
    unreachable!("cell membership without a witness")
}

/// Every derivation tree of `w`, at most `cap` of them.
pub fn all_trees(g: &Grammar, w: &str, cap: usize) -> Result<Vec<DerivationTree>, CykError> {
    let c = Compiled::new(g)?;
    let chars = check_word(g, w)?;
    let table = fill(&c, &chars);
    let mut memo = HashMap::new();
    subtrees(
        &c,
        &table,
        &chars,
        c.start,
        0,
        chars.len() - 1,
        cap,
        &mut memo,
    )
}

type Memo = HashMap<(usize, usize, usize), Vec<DerivationTree>>;

#[allow(clippy::too_many_arguments)]
fn subtrees(
    c: &Compiled,
    t: &CykTable,
    w: &[char],
    x: usize,
    i: usize,
    j: usize,
    cap: usize,
    memo: &mut Memo,
) -> Result<Vec<DerivationTree>, CykError> {
    if let Some(v) = memo.get(&(x, i, j)) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    if !t.has(i, j, x) {
        // nothing
    } else if i == j {
        out.push(DerivationTree::leaf(c.names[x].clone(), w[i]));
    } else {
        for l in i..j {
            for &(lhs, b, cc) in &c.binary {
                if lhs != x || !t.has(i, l, b) || !t.has(l + 1, j, cc) {
                    continue;
                }
                let lefts = subtrees(c, t, w, b, i, l, cap, memo)?;
                let rights = subtrees(c, t, w, cc, l + 1, j, cap, memo)?;
                if out.len() + lefts.len() * rights.len() > cap {
                    return Err(CykError::TooManyTrees(cap));
                }
                for lt in &lefts {
                    for rt in &rights {
                        out.push(DerivationTree {
                            label: c.names[x].clone(),
                            children: vec![Child::Node(lt.clone()), Child::Node(rt.clone())],
                        });
                    }
                }
            }
        }
    }
    memo.insert((x, i, j), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    fn g() -> Grammar {
        parse_grammar("start: S\nS -> A B | A C\nA -> 'a'\nB -> 'b'\nC -> A B").unwrap()
    }

    #[test]
    fn table_and_membership() {
        let g = g();
        let t = build_table(&g, "ab").unwrap();
        assert_eq!(t.cell(1, 1), ["A"]);
        assert_eq!(t.cell(2, 2), ["B"]);
        assert_eq!(t.cell(1, 2), ["S", "C"]);
        assert!(member(&g, "aab").unwrap());
        assert!(!member(&g, "ba").unwrap());
        assert_eq!(member(&g, "x"), Err(CykError::UnknownSymbol('x')));
        assert_eq!(member(&g, ""), Err(CykError::EmptyWord));
        assert_eq!(t.dump(), "{A} {S,C}\n{B}\n");
    }

    #[test]
    fn non_cnf_rejected() {
        let g = parse_grammar("start: S\nS -> 'a' 'b'").unwrap();
        assert_eq!(member(&g, "ab"), Err(CykError::NotCnf));
    }

    #[test]
    fn canonical_tree() {
        let g = g();
        let t = extract_tree(&g, "aab").unwrap();
        assert_eq!(t.to_string(), "S(A(a) C(A(a) B(b)))");
        assert!(matches!(
            extract_tree(&g, "b"),
            Err(CykError::NotAMember(_))
        ));
    }

    #[test]
    fn ambiguous_trees() {
        let g = parse_grammar("start: S\nS -> S S | 'a'").unwrap();
        // Catalan(3) = 5 trees of "aaaa"
        assert_eq!(all_trees(&g, "aaaa", 100).unwrap().len(), 5);
        assert_eq!(all_trees(&g, "aaaa", 3), Err(CykError::TooManyTrees(3)));
    }
}
