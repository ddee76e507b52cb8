use std::ffi::{CStr, CString};
use std::ptr;

use dycknf_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn parse(text: &str) -> *mut DnfGrammar {
    let mut g = ptr::null_mut();
    assert_eq!(dnf_grammar_parse(c(text).as_ptr(), &mut g), DnfStatus::Ok);
    g
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    dnf_string_free(s);
    out
}

const EXPR_CNF: &str = include_str!("../../core/grammars/expr-cnf.cfg");
const ANBN: &str = include_str!("../../core/grammars/anbn.cfg");

#[test]
fn conversion_round_trip() {
    unsafe {
        let g = parse(EXPR_CNF);
        let mut is_cnf = false;
        assert_eq!(dnf_is_cnf(g, &mut is_cnf), DnfStatus::Ok);
        assert!(is_cnf);
        let mut d = ptr::null_mut();
        let mut ledger = ptr::null_mut();
        assert_eq!(dnf_to_dyck_nf(g, &mut d, &mut ledger), DnfStatus::Ok);
        assert_eq!(take(ledger).lines().count(), 7);
        let (mut n, mut r) = (0, 0);
        assert_eq!(dnf_grammar_size(d, &mut n, &mut r), DnfStatus::Ok);
        assert_eq!((n, r), (15, 26));
        let mut text = ptr::null_mut();
        assert_eq!(dnf_grammar_serialize(d, &mut text), DnfStatus::Ok);
        let again = parse(&take(text));
        let mut dyck = false;
        assert_eq!(dnf_is_dyck_nf(again, &mut dyck), DnfStatus::Ok);
        assert!(dyck);

        let mut yes = false;
        assert_eq!(
            dnf_member(d, c("a*a*a+a").as_ptr(), &mut yes),
            DnfStatus::Ok
        );
        assert!(yes);
        let mut trace = ptr::null_mut();
        assert_eq!(
            dnf_trace(d, c("a*a*a+a").as_ptr(), &mut trace),
            DnfStatus::Ok
        );
        assert_eq!(take(trace).split(' ').count(), 12);
        let mut passed = false;
        assert_eq!(
            dnf_verify_characterization(d, 6, &mut passed, ptr::null_mut()),
            DnfStatus::Ok
        );
        assert!(passed);
        for h in [g, d, again] {
            dnf_grammar_free(h);
        }
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            dnf_grammar_parse(c("S -> ").as_ptr(), &mut g),
            DnfStatus::Parse
        );
        assert!(g.is_null());
        assert!(!dnf_last_error().is_null());
        assert_eq!(
            dnf_grammar_parse(ptr::null(), &mut g),
            DnfStatus::NullPointer
        );

        let anbn = parse(ANBN);
        let mut out = false;
        assert_eq!(
            dnf_member(anbn, c("ab").as_ptr(), &mut out),
            DnfStatus::NotCnf
        );
        let cnf = parse(EXPR_CNF);
        assert_eq!(
            dnf_member(cnf, c("a?").as_ptr(), &mut out),
            DnfStatus::InvalidWord
        );
        let msg = CStr::from_ptr(dnf_last_error()).to_str().unwrap();
        assert!(msg.contains('?'), "{msg}");
        assert_eq!(
            dnf_member(cnf, c("a").as_ptr(), ptr::null_mut()),
            DnfStatus::NullPointer
        );
        assert_eq!(
            dnf_elin_recognize(cnf, c("a").as_ptr(), &mut out, ptr::null_mut()),
            DnfStatus::NotEvenLinear
        );
        dnf_grammar_free(anbn);
        dnf_grammar_free(cnf);
        dnf_grammar_free(ptr::null_mut());
    }
}

#[test]
fn dyck_words_and_recognizer() {
    unsafe {
        let mut out = true;
        assert_eq!(dnf_check_dyck(c("[1 ]2").as_ptr(), &mut out), DnfStatus::Ok);
        assert!(!out);
        assert_eq!(
            dnf_check_dyck(c("[1 [2 ]2 ]1").as_ptr(), &mut out),
            DnfStatus::Ok
        );
        assert!(out);
        assert_eq!(dnf_check_dyck(c("x").as_ptr(), &mut out), DnfStatus::Parse);

        let g = parse(ANBN);
        let mut report = ptr::null_mut();
        assert_eq!(
            dnf_elin_recognize(g, c("aaaaacbbbbb").as_ptr(), &mut out, &mut report),
            DnfStatus::Ok
        );
        assert!(out);
        assert!(take(report).starts_with("accept n=11 p=5"));
        assert_eq!(
            dnf_elin_recognize(g, c("aaaaacbbbb").as_ptr(), &mut out, ptr::null_mut()),
            DnfStatus::Ok
        );
        assert!(!out);
        dnf_grammar_free(g);
    }
}

#[test]
fn header_declares_the_api() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dycknf.h");
    let header = std::fs::read_to_string(path).unwrap();
    for f in [
        "dnf_grammar_parse",
        "dnf_grammar_free",
        "dnf_to_dyck_nf",
        "dnf_elin_recognize",
        "dnf_last_error",
        "typedef struct DnfGrammar DnfGrammar",
        "DNF_STATUS_NOT_CNF = 4",
    ] {
        assert!(header.contains(f), "{f}");
    }
    // syntax-check the header as C when a compiler is around
    if let Ok(o) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", path])
        .output()
    {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
}
