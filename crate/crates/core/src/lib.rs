//! Context-free grammars in Dyck normal form: conversion, trace-words,
//! the homomorphic characterization by one-sided Dyck languages, and an
//! alternation-counting recognizer for even linear languages.

pub mod cli;
pub mod corpus;
pub mod cyk;
pub mod derivation;
pub mod dyck;
pub mod elin;
pub mod enumerate;
pub mod grammar;
pub mod normal_form;
pub mod phi;
pub mod trace;

pub use cyk::{build_table, extract_tree, member, CykTable};
pub use derivation::{leftmost_derivation, DerivationTree};
pub use dyck::{in_dk_lemma, in_dk_stack, Bracket, DyckWord};
pub use enumerate::enumerate_words;
pub use grammar::{parse_grammar, serialize_grammar, Grammar, Rule, Symbol};
pub use normal_form::{to_cnf, to_dyck_nf, SubstitutionLedger};
pub use trace::{pairing_of, trace_word, BracketPairing, TraceWord};
