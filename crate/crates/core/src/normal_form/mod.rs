//! Chomsky and Dyck normal form conversions and the homomorphism relating
//! a Dyck normal form grammar back to its Chomsky normal form source.

mod cnf;
mod dyck;
mod homomorphism;

use thiserror::Error;

pub use cnf::to_cnf;
pub use dyck::{to_dyck_nf, LedgerEntry, SubstitutionKind, SubstitutionLedger};
pub use homomorphism::{
    build_hd, map_tree, verify_equivalence_matrices, Homomorphism, SubstitutionRelations,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("rule {0} -> eps: empty rules are not supported")]
    EmptyRule(String),
    #[error("grammar generates no word")]
    EmptyLanguage,
    #[error("grammar is not in Chomsky normal form")]
    NotCnf,
    #[error("start symbol {0} occurs on a right-hand side; convert with to_cnf first")]
    StartOnRhs(String),
    #[error("pairing substitution did not reach a fixpoint within {0} steps")]
    NonTermination(usize),
    #[error("ledger entry {0} refers to an unknown nonterminal")]
    DanglingEntry(String),
    #[error("ledger does not relate the two grammars: {0}")]
    LedgerMismatch(String),
    #[error(transparent)]
    Cyk(#[from] crate::cyk::CykError),
    #[error("relabeled tree is not a derivation of the source grammar: {0}")]
    InvalidImage(String),
}
