use dycknf::corpus;
use dycknf::grammar::isomorphism;
use dycknf::normal_form::{build_hd, map_tree, to_dyck_nf};
use dycknf::trace::{trace_by_rewrite_order, trace_word};
use dycknf::{extract_tree, leftmost_derivation, pairing_of};

#[test]
fn expression_dyck_form_matches_worked_example() {
    let (d, ledger) = to_dyck_nf(&corpus::expr_cnf()).unwrap();
    assert_eq!(d.nonterminals().len(), 15);
    assert_eq!(d.rules().len(), 26);
    assert!(isomorphism(&d, &corpus::expr_dyck()).is_some());
    assert_eq!(ledger.len(), 7);
    assert_eq!(ledger.entries.iter().filter(|e| e.step == 1).count(), 2);
}

#[test]
fn expression_trace_matches_worked_example() {
    let g = corpus::expr_dyck();
    let tree = extract_tree(&g, "a*a*a+a").unwrap();
    let t = trace_word(&g, &tree).unwrap();
    let p = pairing_of(&g).unwrap();
    let named: Vec<String> = t.letters.0.iter().map(|b| p.render(*b)).collect();
    assert_eq!(
        named.join(" "),
        "[E [T [T3 ]T5 [T2 ]R ]T1 [T2 ]R ]E1 [E4 ]T4"
    );
    assert_eq!(t, trace_by_rewrite_order(&g, &tree).unwrap());
    assert_eq!(leftmost_derivation(&g, &tree).unwrap().len(), 13);
}

#[test]
fn worked_example_tree_maps_back() {
    let cnf = corpus::expr_cnf();
    let (d, ledger) = to_dyck_nf(&cnf).unwrap();
    let hd = build_hd(&ledger, &cnf).unwrap();
    for w in ["a", "a*a", "a+a", "a*a*a+a", "a+a*a+a"] {
        let tree = extract_tree(&d, w).unwrap();
        let image = map_tree(&hd, &tree, &cnf).unwrap();
        assert_eq!(image.frontier(), w);
        assert_eq!(image.node_count(), tree.node_count());
    }
}
