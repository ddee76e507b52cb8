//! Derivation trees and their leftmost derivations.

use std::fmt;

use thiserror::Error;

use crate::grammar::{Grammar, Rule, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Child {
    Leaf(char),
    Node(DerivationTree),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivationTree {
    pub label: String,
    pub children: Vec<Child>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {label} does not instantiate a rule of the grammar ({rule})")]
    NoSuchRule { label: String, rule: String },
    #[error("root {found} is not the start symbol {expected}")]
    WrongRoot { found: String, expected: String },
}

impl DerivationTree {
    pub fn leaf(label: impl Into<String>, t: char) -> DerivationTree {
        DerivationTree {
            label: label.into(),
            children: vec![Child::Leaf(t)],
        }
    }

    pub fn binary(
        label: impl Into<String>,
        left: DerivationTree,
        right: DerivationTree,
    ) -> DerivationTree {
        DerivationTree {
            label: label.into(),
            children: vec![Child::Node(left), Child::Node(right)],
        }
    }

    /// The rule applied at this node.
    pub fn rule(&self) -> Rule {
        Rule::new(
            self.label.clone(),
            self.children
                .iter()
                .map(|c| match c {
                    Child::Leaf(t) => Symbol::Terminal(*t),
                    Child::Node(n) => Symbol::Nonterminal(n.label.clone()),
                })
                .collect(),
        )
    }

    pub fn frontier(&self) -> String {
        let mut s = String::new();
        self.collect_frontier(&mut s);
        s
    }

    fn collect_frontier(&self, out: &mut String) {
        for c in &self.children {
            match c {
                Child::Leaf(t) => out.push(*t),
                Child::Node(n) => n.collect_frontier(out),
            }
        }
    }

    /// Interior node labels in depth-first, left-to-right preorder.
    pub fn preorder_labels(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t.label.as_str());
            for c in t.children.iter().rev() {
                if let Child::Node(n) = c {
                    stack.push(n);
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.preorder_labels().len()
    }

    /// Checks that every node instantiates a rule of `g`. The root is not
    /// required to be the start symbol; see [`DerivationTree::validate_derivation`].
    pub fn validate(&self, g: &Grammar) -> Result<(), TreeError> {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            let rule = t.rule();
            if !g.has_rule(&rule) {
                return Err(TreeError::NoSuchRule {
                    label: t.label.clone(),
                    rule: rule.to_string(),
                });
            }
            for c in &t.children {
                if let Child::Node(n) = c {
                    stack.push(n);
                }
            }
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate), and additionally requires the root
    /// to be the start symbol.
    pub fn validate_derivation(&self, g: &Grammar) -> Result<(), TreeError> {
        if self.label != g.start() {
            return Err(TreeError::WrongRoot {
                found: self.label.clone(),
                expected: g.start().to_string(),
            });
        }
        self.validate(g)
    }

    pub fn relabel(&self, f: &impl Fn(&str) -> String) -> DerivationTree {
        DerivationTree {
            label: f(&self.label),
            children: self
                .children
                .iter()
                .map(|c| match c {
                    Child::Leaf(t) => Child::Leaf(*t),
                    Child::Node(n) => Child::Node(n.relabel(f)),
                })
                .collect(),
        }
    }
}

impl fmt::Display for DerivationTree {
    /// Bracketed form, e.g. `E0(T(T3(a) T5(T2(*) R(a))) ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.label)?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match c {
                Child::Leaf(t) => write!(f, "{t}")?,
                Child::Node(n) => write!(f, "{n}")?,
            }
        }
        f.write_str(")")
    }
}

/// The rule sequence of the leftmost derivation whose tree is `tree`.
///
/// Simulated on sentential forms: each step rewrites the leftmost
/// nonterminal with the rule recorded at the matching tree node.
pub fn leftmost_derivation(g: &Grammar, tree: &DerivationTree) -> Result<Vec<Rule>, TreeError> {
    tree.validate_derivation(g)?;
    enum Item<'a> {
        T,
        N(&'a DerivationTree),
    }
    let mut form: Vec<Item> = vec![Item::N(tree)];
    let mut steps = Vec::new();
    while let Some(pos) = form.iter().position(|i| matches!(i, Item::N(_))) {
        let Item::N(node) = form[pos] else {
            unreachable!()
        };
        steps.push(node.rule());
        let expansion: Vec<Item> = node
            .children
            .iter()
            .map(|c| match c {
                Child::Leaf(_) => Item::T,
                Child::Node(n) => Item::N(n),
            })
            .collect();
        form.splice(pos..=pos, expansion);
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn single_rule_derivation() {
        let g = parse_grammar("start: S\nS -> 'a'").unwrap();
        let t = DerivationTree::leaf("S", 'a');
        let d = leftmost_derivation(&g, &t).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(t.frontier(), "a");
    }

    #[test]
    fn rejects_foreign_tree() {
        let g = parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> 'b'").unwrap();
        let t = DerivationTree::binary(
            "S",
            DerivationTree::leaf("B", 'b'),
            DerivationTree::leaf("A", 'a'),
        );
        assert!(matches!(
            leftmost_derivation(&g, &t),
            Err(TreeError::NoSuchRule { .. })
        ));
        let t = DerivationTree::leaf("A", 'a');
        assert!(matches!(
            leftmost_derivation(&g, &t),
            Err(TreeError::WrongRoot { .. })
        ));
    }

    #[test]
    fn leftmost_order() {
        let g =
            parse_grammar("start: S\nS -> A B\nA -> 'a'\nB -> C D\nC -> 'c'\nD -> 'd'").unwrap();
        let t = DerivationTree::binary(
            "S",
            DerivationTree::leaf("A", 'a'),
            DerivationTree::binary(
                "B",
                DerivationTree::leaf("C", 'c'),
                DerivationTree::leaf("D", 'd'),
            ),
        );
        let lhs: Vec<String> = leftmost_derivation(&g, &t)
            .unwrap()
            .into_iter()
            .map(|r| r.lhs)
            .collect();
        assert_eq!(lhs, ["S", "A", "B", "C", "D"]);
        assert_eq!(t.preorder_labels(), ["S", "A", "B", "C", "D"]);
        assert_eq!(t.frontier(), "acd");
    }
}
