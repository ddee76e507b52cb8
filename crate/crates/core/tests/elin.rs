use dycknf::corpus::even_linear_corpus;
use dycknf::dyck::DyckWord;
use dycknf::elin::{
    elin_to_dyck_nf, is_even_linear, recognize_atm, trace_shape_check, EvenLinearGrammar,
    TraceShape,
};
use dycknf::{enumerate_words, extract_tree, member, parse_grammar, trace_word, Grammar};

fn convert(text: &str) -> dycknf::elin::ElinDyck {
    let g = parse_grammar(text).unwrap();
    elin_to_dyck_nf(&EvenLinearGrammar::new(g).unwrap()).unwrap()
}

const ANBN: &str = "start: S\nS -> 'a' S 'b' | 'c'";

#[test]
fn single_pair_grammar() {
    let e = convert("start: S\nS -> 'a' 'b'");
    assert_eq!(e.grammar.nonterminals().len(), 3);
    assert_eq!(e.partition.n1, [1]);
    assert_eq!(e.partition.total(), 1);
}

#[test]
fn traces_take_the_expected_forms() {
    for g in even_linear_corpus() {
        let e = elin_to_dyck_nf(&EvenLinearGrammar::new(g).unwrap()).unwrap();
        for w in enumerate_words(&e.grammar, 11).unwrap() {
            let p = w.len() / 2;
            let tree = extract_tree(&e.grammar, &w).unwrap();
            let shape = if w.len() == 1 {
                trace_shape_check(&e.partition, &DyckWord::default())
            } else {
                trace_shape_check(
                    &e.partition,
                    &trace_word(&e.grammar, &tree).unwrap().letters,
                )
            };
            let expected = if w.len() % 2 == 1 {
                TraceShape::FormA { p }
            } else {
                TraceShape::FormB { p }
            };
            assert_eq!(shape, expected, "{w}");
        }
    }
}

#[test]
fn shuffled_trace_is_neither() {
    let e = convert(ANBN);
    let tree = extract_tree(&e.grammar, "aacbb").unwrap();
    let mut t = trace_word(&e.grammar, &tree).unwrap().letters;
    assert_eq!(
        trace_shape_check(&e.partition, &t),
        TraceShape::FormA { p: 2 }
    );
    t.0.reverse();
    assert_eq!(trace_shape_check(&e.partition, &t), TraceShape::Neither);
}

#[test]
fn recognizer_examples() {
    let d = convert(ANBN).grammar;
    assert!(recognize_atm(&d, "aacbb").unwrap().accepted);
    assert!(!recognize_atm(&d, "aabbb").unwrap().accepted);
    let short = recognize_atm(&d, "acb").unwrap();
    assert!(short.division.is_none() && short.trace.depth == 0);
}

#[test]
fn depth_follows_the_number_of_divisions() {
    let d = convert(ANBN).grammar;
    for p in 4..=200 {
        let w = format!("{}c{}", "a".repeat(p), "b".repeat(p));
        let r = recognize_atm(&d, &w).unwrap();
        assert!(r.accepted);
        let ell = r.division.as_ref().unwrap().ell();
        assert_eq!(r.trace.depth, 4 * ell + 4);
        assert_eq!(r.trace.cut_point_violations, 0);
    }
}

#[test]
fn start_on_right_hand_side_and_units() {
    let text = "start: S\nS -> 'a' 'b' S 'b' 'a' | 'c' | A\nA -> 'b' A 'a' | 'a' 'a' 'c'";
    let g: Grammar = parse_grammar(text).unwrap();
    assert!(is_even_linear(&g));
    let e = convert(text);
    assert!(!e.grammar.start_on_rhs());
    for w in ["c", "abcba", "aac", "baaca", "abbaacaba"] {
        assert_eq!(
            member(&e.grammar, w).unwrap(),
            enumerate_words(&g, 9).unwrap().contains(&w.to_string()),
            "{w}"
        );
    }
}
