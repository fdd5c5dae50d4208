use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gbsn_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = gbsn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { gbsn_string_free(p) };
    s
}

fn builtin(name: &str) -> *mut GbsnGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gbsn_graph_builtin(c(name).as_ptr(), &mut g) }, GbsnStatus::Ok);
    g
}

fn call_json(f: impl FnOnce(*mut *mut c_char) -> GbsnStatus) -> Value {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), GbsnStatus::Ok, "{}", last_error());
    serde_json::from_str(&take(out)).unwrap()
}

#[test]
fn parse_and_round_trip() {
    let src = c("gbs rank=2\nvertex v0\nedge t from=v0 to=v0 alpha=[[1,0],[0,1]] omega=[[0,-1],[1,0]]\n");
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gbsn_graph_parse(src.as_ptr(), &mut g) }, GbsnStatus::Ok);
    assert_eq!(unsafe { gbsn_graph_rank(g) }, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gbsn_graph_to_text(g, &mut out) }, GbsnStatus::Ok);
    assert_eq!(take(out), src.to_str().unwrap());
    let m = call_json(|o| unsafe { gbsn_monodromy_json(g, 0, o) });
    assert_eq!(m["classification"], "finite");
    assert_eq!(m["order"], 4);
    unsafe { gbsn_graph_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let bad = c("gbs rank=x\n");
    assert_eq!(
        unsafe { gbsn_graph_parse(bad.as_ptr(), &mut g) },
        GbsnStatus::ParseError
    );
    assert!(last_error().contains("line 1"));
    assert!(g.is_null());

    let singular = c("gbs rank=1\nvertex v0\nedge t from=v0 to=v0 alpha=[[1]] omega=[[0]]\n");
    assert_eq!(
        unsafe { gbsn_graph_parse(singular.as_ptr(), &mut g) },
        GbsnStatus::InvalidGraph
    );
    assert!(last_error().contains("singular"));

    assert_eq!(
        unsafe { gbsn_graph_parse(ptr::null(), &mut g) },
        GbsnStatus::NullPointer
    );
    assert_eq!(
        unsafe { gbsn_graph_builtin(c("nope").as_ptr(), &mut g) },
        GbsnStatus::ParseError
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { gbsn_graph_parse(invalid.as_ptr() as *const c_char, &mut g) },
        GbsnStatus::InvalidUtf8
    );

    let lm = builtin("leary-minasyan");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { gbsn_normalize_json(lm, c("a1").as_ptr(), &mut out) },
        GbsnStatus::DomainError
    );
    assert_eq!(
        unsafe { gbsn_presentation_json(ptr::null(), &mut out) },
        GbsnStatus::NullPointer
    );
    assert_eq!(
        unsafe { gbsn_presentation_json(lm, ptr::null_mut()) },
        GbsnStatus::NullPointer
    );
    assert_eq!(unsafe { gbsn_graph_rank(ptr::null()) }, 0);
    unsafe { gbsn_graph_free(lm) };

    let bs = builtin("bs");
    assert_eq!(
        unsafe { gbsn_level_quotient_json(bs, 2, 1, &mut out) },
        GbsnStatus::DomainError
    );
    assert!(last_error().contains("divides"));
    assert_eq!(
        unsafe { gbsn_normalize_json(bs, c("a7").as_ptr(), &mut out) },
        GbsnStatus::ParseError
    );
    unsafe { gbsn_graph_free(bs) };
}

#[test]
fn success_clears_the_last_error() {
    let mut g = ptr::null_mut();
    assert_ne!(unsafe { gbsn_graph_parse(ptr::null(), &mut g) }, GbsnStatus::Ok);
    assert!(!gbsn_last_error().is_null());
    let bs = builtin("bs");
    assert!(gbsn_last_error().is_null());
    unsafe { gbsn_graph_free(bs) };
}

#[test]
fn computations() {
    let lm = builtin("leary-minasyan");
    let v = call_json(|o| unsafe { gbsn_properties_json(lm, 0, o) });
    let vrc = v.as_array().unwrap().iter().find(|x| x["property"] == "VRC").unwrap();
    assert_eq!(vrc["answer"], "no");
    let p = call_json(|o| unsafe { gbsn_presentation_json(lm, o) });
    assert_eq!(p["relators"].as_array().unwrap().len(), 3);
    unsafe { gbsn_graph_free(lm) };

    let bs = builtin("bs");
    let n = call_json(|o| unsafe { gbsn_normalize_json(bs, c("t^-1 a^2 t").as_ptr(), o) });
    assert_eq!(n["word"], "a");
    let q = call_json(|o| unsafe { gbsn_level_quotient_json(bs, 3, 2, o) });
    assert_eq!(
        (q["r_l"].clone(), q["order"].clone()),
        (Value::from(6), Value::from(54))
    );
    unsafe { gbsn_graph_free(bs) };

    let z3 = builtin("identity-loop");
    let cert = call_json(|o| unsafe { gbsn_certificate_search_json(z3, c("a1^2\na2\nt\n").as_ptr(), o) });
    assert_eq!(cert["result"], "certificate");
    assert_eq!(cert["certificate"]["index"], 2);
    let none = call_json(|o| unsafe { gbsn_certificate_search_json(z3, c("a1\na2\nt\n").as_ptr(), o) });
    assert_eq!(none["result"], "none-found");
    unsafe { gbsn_graph_free(z3) };
}

#[test]
fn freeing_null_is_harmless() {
    unsafe {
        gbsn_graph_free(ptr::null_mut());
        gbsn_string_free(ptr::null_mut());
    }
}
