//! Even linear grammars: conversion to Dyck normal form without pairs that
//! map to no terminal, trace shapes, iterated division of the half length,
//! and the alternation-counting divide-and-conquer recognizer.

mod convert;
mod division;
mod recognizer;
mod shape;

use thiserror::Error;

use crate::cyk::CykError;
use crate::grammar::{Grammar, Symbol};
use crate::normal_form::NormalFormError;

pub use convert::{elin_to_dyck_nf, ElinDyck};
pub use division::{iterated_division, IteratedDivision};
pub use recognizer::{
    local_check, recognize_atm, AlternationTrace, Label, LevelStat, Quantifier, Recognition,
};
pub use shape::{trace_shape_check, TraceShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElinError {
    #[error("grammar is not even linear: {0}")]
    NotEvenLinear(String),
    #[error("empty right-hand side in a rule of {0}")]
    EmptyRule(String),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error("grammar does not have the even linear Dyck shape: {0}")]
    NotElinShape(String),
    #[error("p = {0} is below 4; the divisor would be at most 1")]
    BaseCase(u64),
    #[error("position {k} out of range 1..{p}")]
    PositionOutOfRange { k: usize, p: usize },
    #[error(transparent)]
    Cyk(#[from] CykError),
}

/// Every rule is `X -> t1 Y t2` with `|t1| = |t2|` or `X -> t`.
pub fn is_even_linear(g: &Grammar) -> bool {
    even_linear_violation(g).is_none()
}

fn even_linear_violation(g: &Grammar) -> Option<String> {
    for r in g.rules() {
        let nts: Vec<usize> = r
            .rhs
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Symbol::Nonterminal(_)))
            .map(|(i, _)| i)
            .collect();
        match nts.as_slice() {
            [] => {}
            [i] => {
                let left = *i;
                let right = r.rhs.len() - i - 1;
                if left != right {
                    return Some(format!("{r}: flanks of length {left} and {right}"));
                }
            }
            _ => return Some(format!("{r}: more than one nonterminal")),
        }
    }
    None
}

/// A grammar checked to be even linear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenLinearGrammar(Grammar);

impl EvenLinearGrammar {
    pub fn new(g: Grammar) -> Result<EvenLinearGrammar, ElinError> {
        match even_linear_violation(&g) {
            Some(v) => Err(ElinError::NotEvenLinear(v)),
            None => Ok(EvenLinearGrammar(g)),
        }
    }

    pub fn grammar(&self) -> &Grammar {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn even_linear_predicate() {
        assert!(is_even_linear(
            &parse_grammar("start: S\nS -> 'a' S 'b' | 'c'").unwrap()
        ));
        assert!(!is_even_linear(
            &parse_grammar("start: S\nS -> 'a' S | 'c'").unwrap()
        ));
        assert!(!is_even_linear(&crate::corpus::expr()));
        assert!(EvenLinearGrammar::new(crate::corpus::expr()).is_err());
    }
}
