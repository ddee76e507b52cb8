//! The homomorphism `h_d` from a Dyck normal form grammar back to its CNF
//! source, and the CYK-table relations `ĥ_t` / `ĥ_¬t`.

use std::collections::{BTreeMap, BTreeSet};

use super::{NormalFormError, SubstitutionKind, SubstitutionLedger};
use crate::cyk::build_table;
use crate::derivation::DerivationTree;
use crate::grammar::Grammar;

/// Nonterminal part of `h_d`; terminals are fixed implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    map: BTreeMap<String, String>,
}

impl Homomorphism {
    pub fn apply<'a>(&'a self, nt: &str) -> Option<&'a str> {
        self.map.get(nt).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }
}

/// Collapses substitution chains in `ledger` to nonterminals of `source`.
pub fn build_hd(
    ledger: &SubstitutionLedger,
    source: &Grammar,
) -> Result<Homomorphism, NormalFormError> {
    let mut map: BTreeMap<String, String> = source
        .nonterminals()
        .iter()
        .map(|n| (n.clone(), n.clone()))
        .collect();
    for e in &ledger.entries {
        if source.has_nonterminal(&e.new) || map.contains_key(&e.new) {
            return Err(NormalFormError::LedgerMismatch(format!(
                "{} is not fresh",
                e.new
            )));
        }
        let root = map
            .get(&e.original)
            .cloned()
            .ok_or_else(|| NormalFormError::DanglingEntry(e.to_string()))?;
        map.insert(e.new.clone(), root);
    }
    Ok(Homomorphism { map })
}

/// Relabels a tree of the Dyck normal form grammar through `hd` and checks
/// that the image is a derivation tree of `cnf`.
pub fn map_tree(
    hd: &Homomorphism,
    tree: &DerivationTree,
    cnf: &Grammar,
) -> Result<DerivationTree, NormalFormError> {
    if let Some(l) = tree
        .preorder_labels()
        .into_iter()
        .find(|l| hd.apply(l).is_none())
    {
        return Err(NormalFormError::InvalidImage(format!(
            "{l} is outside the domain of h_d"
        )));
    }
    let image = tree.relabel(&|l| hd.apply(l).unwrap_or(l).to_string());
    image
        .validate_derivation(cnf)
        .map_err(|e| NormalFormError::InvalidImage(e.to_string()))?;
    Ok(image)
}

/// `ĥ_t` is keyed by (nonterminal, terminal) because a nonterminal may lose
/// several terminal rules to distinct substitutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionRelations {
    pub h_t: BTreeMap<(String, char), BTreeSet<String>>,
    pub h_not_t: BTreeMap<String, BTreeSet<String>>,
}

impl SubstitutionRelations {
    pub fn new(ledger: &SubstitutionLedger, source: &Grammar) -> SubstitutionRelations {
        let descendants = |x: &str| -> BTreeSet<String> {
            let mut set = BTreeSet::from([x.to_string()]);
            for e in &ledger.entries {
                if e.kind == SubstitutionKind::Nonterminal && set.contains(&e.original) {
                    set.insert(e.new.clone());
                }
            }
            set
        };
        let mut h_t = BTreeMap::new();
        let mut h_not_t = BTreeMap::new();
        for x in source.nonterminals() {
            h_not_t.insert(x.clone(), descendants(x));
            for t in source.rules_of(x).filter_map(|r| r.as_terminal()) {
                let sub = ledger
                    .entries
                    .iter()
                    .find(|e| e.original == *x && e.kind == SubstitutionKind::Terminal(t));
                let img = match sub {
                    Some(e) => descendants(&e.new),
                    None => descendants(x),
                };
                h_t.insert((x.clone(), t), img);
            }
        }
        SubstitutionRelations { h_t, h_not_t }
    }
}

/// Builds the CYK tables of `w` over both grammars and checks
/// `V'_ii = ĥ_t(V_ii)` and `V'_ij = ĥ_¬t(V_ij)` for `i < j`.
pub fn verify_equivalence_matrices(
    g_cnf: &Grammar,
    g_dyck: &Grammar,
    ledger: &SubstitutionLedger,
    w: &str,
) -> Result<bool, NormalFormError> {
    let hd = build_hd(ledger, g_cnf)?;
    if let Some(n) = g_dyck.nonterminals().iter().find(|n| hd.apply(n).is_none()) {
        return Err(NormalFormError::LedgerMismatch(format!(
            "{n} is neither original nor recorded"
        )));
    }
    let rel = SubstitutionRelations::new(ledger, g_cnf);
    let v = build_table(g_cnf, w)?;
    let v2 = build_table(g_dyck, w)?;
    let chars: Vec<char> = w.chars().collect();
    let n = chars.len();
    for i in 1..=n {
        for j in i..=n {
            let mut expected: BTreeSet<&str> = BTreeSet::new();
            for x in v.cell(i, j) {
                let img = if i == j {
                    rel.h_t.get(&(x.to_string(), chars[i - 1]))
                } else {
                    rel.h_not_t.get(x)
                };
                if let Some(img) = img {
                    expected.extend(img.iter().map(String::as_str));
                }
            }
            let actual: BTreeSet<&str> = v2.cell(i, j).into_iter().collect();
            if actual != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
