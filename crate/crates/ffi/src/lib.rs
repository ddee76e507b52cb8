//! C ABI over `dycknf`. Grammars cross the boundary as opaque handles,
//! strings as NUL-terminated UTF-8, and every fallible call returns a
//! `DnfStatus`. The message of the last failure on the calling thread is
//! available through `dnf_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dycknf::cyk::CykError;
use dycknf::dyck::{in_dk_lemma, in_dk_stack, DyckWord};
use dycknf::elin::{elin_to_dyck_nf, is_even_linear, recognize_atm, ElinError, EvenLinearGrammar};
use dycknf::normal_form::NormalFormError;
use dycknf::phi::{extend_grammar, verify_characterization};
use dycknf::{
    extract_tree, member, pairing_of, parse_grammar, to_cnf, to_dyck_nf, trace_word, Grammar,
};

/// Opaque grammar handle.
pub struct DnfGrammar {
    inner: Grammar,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotCnf = 4,
    Conversion = 5,
    InvalidWord = 6,
    NotEvenLinear = 7,
    ResourceLimit = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(DnfStatus, String);

impl From<NormalFormError> for Fail {
    fn from(e: NormalFormError) -> Fail {
        let code = match e {
            NormalFormError::NotCnf => DnfStatus::NotCnf,
            NormalFormError::Cyk(ref c) => return Fail::from(c.clone()),
            _ => DnfStatus::Conversion,
        };
        Fail(code, e.to_string())
    }
}

impl From<CykError> for Fail {
    fn from(e: CykError) -> Fail {
        let code = match e {
            CykError::NotCnf => DnfStatus::NotCnf,
            CykError::TooManyTrees(_) => DnfStatus::ResourceLimit,
            _ => DnfStatus::InvalidWord,
        };
        Fail(code, e.to_string())
    }
}

impl From<ElinError> for Fail {
    fn from(e: ElinError) -> Fail {
        match e {
            ElinError::Cyk(c) => c.into(),
            ElinError::NormalForm(n) => n.into(),
            other => Fail(DnfStatus::NotEvenLinear, other.to_string()),
        }
    }
}

fn conversion<E: std::fmt::Display>(e: E) -> Fail {
    Fail(DnfStatus::Conversion, e.to_string())
}

/// Runs `f`, records the failure message, and turns panics into
/// `DnfStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DnfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DnfStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("panic inside dycknf");
            DnfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(DnfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(DnfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn grammar_arg<'a>(g: *const DnfGrammar) -> Result<&'a Grammar, Fail> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| Fail(DnfStatus::NullPointer, "null grammar handle".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DnfStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("NUL removed")
        .into_raw()
}

unsafe fn write_grammar(out: *mut *mut DnfGrammar, g: Grammar) -> Result<(), Fail> {
    write(out, Box::into_raw(Box::new(DnfGrammar { inner: g })))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dnf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_grammar_parse(
    text: *const c_char,
    out: *mut *mut DnfGrammar,
) -> DnfStatus {
    guard(|| {
        let g = parse_grammar(str_arg(text)?).map_err(|e| Fail(DnfStatus::Parse, e.to_string()))?;
        write_grammar(out, g)
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dnf_grammar_free(g: *mut DnfGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dnf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Grammar text; release with `dnf_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_grammar_serialize(
    g: *const DnfGrammar,
    out: *mut *mut c_char,
) -> DnfStatus {
    guard(|| write(out, c_string(grammar_arg(g)?.to_string())))
}

/// # Safety
/// `g` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dnf_grammar_size(
    g: *const DnfGrammar,
    nonterminals: *mut usize,
    rules: *mut usize,
) -> DnfStatus {
    guard(|| {
        let g = grammar_arg(g)?;
        write(nonterminals, g.nonterminals().len())?;
        write(rules, g.rules().len())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_is_cnf(g: *const DnfGrammar, out: *mut bool) -> DnfStatus {
    guard(|| write(out, grammar_arg(g)?.is_cnf()))
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_is_dyck_nf(g: *const DnfGrammar, out: *mut bool) -> DnfStatus {
    guard(|| write(out, grammar_arg(g)?.is_dyck_nf()))
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_to_cnf(g: *const DnfGrammar, out: *mut *mut DnfGrammar) -> DnfStatus {
    guard(|| write_grammar(out, to_cnf(grammar_arg(g)?)?))
}

/// Converts a CNF grammar whose start symbol is not on any right-hand side.
/// When `ledger` is not NULL it receives the substitution ledger, one entry
/// per line.
///
/// # Safety
/// `g` must be a live handle, `out` a valid pointer, `ledger` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn dnf_to_dyck_nf(
    g: *const DnfGrammar,
    out: *mut *mut DnfGrammar,
    ledger: *mut *mut c_char,
) -> DnfStatus {
    guard(|| {
        let (d, l) = to_dyck_nf(grammar_arg(g)?)?;
        if !ledger.is_null() {
            ledger.write(c_string(l.to_string()));
        }
        write_grammar(out, d)
    })
}

/// CYK membership; the grammar must be in CNF.
///
/// # Safety
/// `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dnf_member(
    g: *const DnfGrammar,
    word: *const c_char,
    out: *mut bool,
) -> DnfStatus {
    guard(|| write(out, member(grammar_arg(g)?, str_arg(word)?)?))
}

/// Trace-word of the canonical derivation tree of `word`, as `[1 ]1 ...`.
///
/// # Safety
/// `g` must be a live Dyck normal form handle, `word` a NUL-terminated
/// string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dnf_trace(
    g: *const DnfGrammar,
    word: *const c_char,
    out: *mut *mut c_char,
) -> DnfStatus {
    guard(|| {
        let g = grammar_arg(g)?;
        pairing_of(g).map_err(conversion)?;
        let tree = extract_tree(g, str_arg(word)?)?;
        let t = trace_word(g, &tree).map_err(|e| Fail(DnfStatus::InvalidWord, e.to_string()))?;
        write(out, c_string(t.letters.to_string()))
    })
}

/// Membership in D_k, decided by both oracles.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dnf_check_dyck(word: *const c_char, out: *mut bool) -> DnfStatus {
    guard(|| {
        let w: DyckWord = str_arg(word)?
            .parse()
            .map_err(|e: dycknf::dyck::DyckError| Fail(DnfStatus::Parse, e.to_string()))?;
        let (a, b) = (in_dk_lemma(&w), in_dk_stack(&w));
        if a != b {
            return Err(Fail(DnfStatus::Panic, format!("oracles disagree on {w}")));
        }
        write(out, a)
    })
}

/// Checks the bracket characterization of a Dyck normal form grammar up to
/// `max_len`. `report` may be NULL.
///
/// # Safety
/// `g` must be a live handle, `passed` valid, `report` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn dnf_verify_characterization(
    g: *const DnfGrammar,
    max_len: usize,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> DnfStatus {
    guard(|| {
        let eg = extend_grammar(grammar_arg(g)?).map_err(conversion)?;
        let r = verify_characterization(&eg, max_len)
            .map_err(|e| Fail(DnfStatus::ResourceLimit, e.to_string()))?;
        if !report.is_null() {
            report.write(c_string(r.to_string()));
        }
        write(passed, r.passed())
    })
}

/// Runs the even linear recognizer. An even linear grammar is converted
/// first; otherwise the handle must already be the output of that
/// conversion. `report` may be NULL.
///
/// # Safety
/// `g` must be a live handle, `word` a NUL-terminated string, `accepted`
/// valid, `report` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn dnf_elin_recognize(
    g: *const DnfGrammar,
    word: *const c_char,
    accepted: *mut bool,
    report: *mut *mut c_char,
) -> DnfStatus {
    guard(|| {
        let g = grammar_arg(g)?;
        let converted;
        let d = if is_even_linear(g) {
            converted = elin_to_dyck_nf(&EvenLinearGrammar::new(g.clone())?)?.grammar;
            &converted
        } else {
            g
        };
        let r = recognize_atm(d, str_arg(word)?)?;
        if !report.is_null() {
            report.write(c_string(r.to_string()));
        }
        write(accepted, r.accepted)
    })
}
