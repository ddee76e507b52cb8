use proptest::prelude::*;

use dycknf::corpus::{even_linear_corpus, random_cnf};
use dycknf::dyck::{in_dk_lemma, in_dk_stack, Bracket, DyckWord};
use dycknf::elin::{elin_to_dyck_nf, iterated_division, recognize_atm, EvenLinearGrammar};
use dycknf::normal_form::{build_hd, map_tree, verify_equivalence_matrices};
use dycknf::phi::{apply_phi, build_phi, extend_grammar};
use dycknf::trace::trace_by_rewrite_order;
use dycknf::{enumerate_words, extract_tree, member, parse_grammar, to_dyck_nf, trace_word};

fn alphabet(i: u8) -> &'static [char] {
    match i % 3 {
        0 => &['a', 'b'],
        1 => &['a', 'b', 'c'],
        _ => &['a'],
    }
}

fn bracket() -> impl Strategy<Value = Bracket> {
    (1usize..=3, any::<bool>()).prop_map(|(i, l)| {
        if l {
            Bracket::left(i)
        } else {
            Bracket::right(i)
        }
    })
}

/// Well-nested bracket sequences over three pairs.
fn nested() -> impl Strategy<Value = Vec<Bracket>> {
    let leaf = (1usize..=3).prop_map(|i| vec![Bracket::left(i), Bracket::right(i)]);
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (1usize..=3, inner.clone()).prop_map(|(i, mut v)| {
                v.insert(0, Bracket::left(i));
                v.push(Bracket::right(i));
                v
            }),
            (inner.clone(), inner).prop_map(|(mut a, b)| {
                a.extend(b);
                a
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), a in any::<u8>()) {
        let g = random_cnf(seed, 8, alphabet(a));
        prop_assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn dyck_form_preserves_language(seed in any::<u64>(), a in any::<u8>()) {
        let g = random_cnf(seed, 8, alphabet(a));
        let (d, ledger) = to_dyck_nf(&g).unwrap();
        prop_assert!(d.is_dyck_nf());
        let words = enumerate_words(&g, 7).unwrap();
        prop_assert_eq!(&words, &enumerate_words(&d, 7).unwrap());
        let hd = build_hd(&ledger, &g).unwrap();
        for w in words.iter().take(20) {
            prop_assert!(verify_equivalence_matrices(&g, &d, &ledger, w).unwrap());
            let image = map_tree(&hd, &extract_tree(&d, w).unwrap(), &g).unwrap();
            prop_assert_eq!(&image.frontier(), w);
        }
    }

    #[test]
    fn traces_are_dyck_and_map_back(seed in any::<u64>(), a in any::<u8>()) {
        let g = random_cnf(seed, 8, alphabet(a));
        let (d, _) = to_dyck_nf(&g).unwrap();
        let eg = extend_grammar(&d).unwrap();
        let phi = build_phi(&eg);
        for w in enumerate_words(&d, 7).unwrap().iter().filter(|w| w.len() >= 2).take(20) {
            let tree = extract_tree(&d, w).unwrap();
            let t = trace_word(&d, &tree).unwrap();
            prop_assert_eq!(t.letters.len(), 2 * w.len() - 2);
            prop_assert!(in_dk_stack(&t.letters));
            prop_assert_eq!(&apply_phi(&phi, &t.letters).unwrap(), w);
            prop_assert_eq!(&t, &trace_by_rewrite_order(&d, &tree).unwrap());
        }
    }

    #[test]
    fn dyck_oracles_agree(w in proptest::collection::vec(bracket(), 0..24)) {
        let w = DyckWord(w);
        prop_assert_eq!(in_dk_lemma(&w), in_dk_stack(&w));
    }

    #[test]
    fn nested_words_are_accepted(v in nested()) {
        let w = DyckWord(v);
        prop_assert!(in_dk_lemma(&w));
        prop_assert!(in_dk_stack(&w));
    }

    #[test]
    fn iterated_division_ranges(p in 4u64..1_000_000_000_000) {
        let d = iterated_division(p).unwrap();
        prop_assert_eq!(d.reconstruct(), p);
        prop_assert_eq!(d.divisor, u64::from(p.ilog2()));
        prop_assert!(d.remainders.iter().all(|&r| r < d.divisor));
        let q = *d.quotients.last().unwrap();
        prop_assert!(1 <= q && q < d.divisor);
    }

    #[test]
    fn recognizer_matches_cyk(gi in 0usize..6, w in proptest::collection::vec(0usize..3, 8..34)) {
        let g = even_linear_corpus().swap_remove(gi);
        let d = elin_to_dyck_nf(&EvenLinearGrammar::new(g).unwrap()).unwrap().grammar;
        let t = d.terminals();
        let w: String = w.iter().map(|&i| t[i % t.len()]).collect();
        prop_assert_eq!(recognize_atm(&d, &w).unwrap().accepted, member(&d, &w).unwrap());
    }
}
