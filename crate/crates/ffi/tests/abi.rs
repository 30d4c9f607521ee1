use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use kamiltonian_ffi::*;

const KAPITZA: &str = include_str!("../../../models/kapitza_quantum.cfg");

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    kam_string_free(s);
    out
}

fn last_error() -> String {
    let p = kam_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn parse(src: &str) -> *mut KamModel {
    let c = CString::new(src).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(kam_model_parse(c.as_ptr(), &mut m), KamStatus::Ok);
    m
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(kam_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn kapitza_expands_and_renders() {
    unsafe {
        let m = parse(KAPITZA);
        assert_eq!(kam_model_warning_count(m), 0);
        let mut x = ptr::null_mut();
        assert_eq!(kam_expand(m, 4, ptr::null(), ptr::null(), &mut x), KamStatus::Ok);
        assert_eq!(kam_expansion_order(x), 4);

        let mut s = ptr::null_mut();
        assert_eq!(kam_expansion_render(x, KamFormat::Text, &mut s), KamStatus::Ok);
        let text = take(s);
        assert!(text.contains("K^(4)"), "{text}");

        assert_eq!(kam_expansion_render(x, KamFormat::Latex, &mut s), KamStatus::Ok);
        assert!(take(s).contains("K^{(2)}"));

        assert_eq!(kam_expansion_render_k(x, 9, KamFormat::Text, &mut s), KamStatus::InvalidArgument);
        assert!(last_error().contains("order 9"));

        kam_expansion_free(x);
        kam_model_free(m);
    }
}

#[test]
fn json_round_trip_is_byte_exact() {
    unsafe {
        let m = parse(KAPITZA);
        let mut x = ptr::null_mut();
        let g = CString::new("floquet-magnus").unwrap();
        let t0 = CString::new("1/4").unwrap();
        assert_eq!(kam_expand(m, 2, g.as_ptr(), t0.as_ptr(), &mut x), KamStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(kam_expansion_render(x, KamFormat::Json, &mut s), KamStatus::Ok);
        let json = take(s);

        let c = CString::new(json.clone()).unwrap();
        let mut y = ptr::null_mut();
        assert_eq!(kam_expansion_from_json(c.as_ptr(), &mut y), KamStatus::Ok);
        assert_eq!(kam_expansion_render(y, KamFormat::Json, &mut s), KamStatus::Ok);
        assert_eq!(take(s), json);

        kam_expansion_free(x);
        kam_expansion_free(y);
        kam_model_free(m);
    }
}

#[test]
fn parse_error_reports_position() {
    unsafe {
        let c = CString::new("[model]\nalgebra = ladder-quantum\n[hamiltonian]\nmode 0 = x*a\n").unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(kam_model_parse(c.as_ptr(), &mut m), KamStatus::ParseError);
        assert!(m.is_null());
        assert!(last_error().contains("line 4"), "{}", last_error());
    }
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(kam_model_parse(ptr::null(), &mut m), KamStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(kam_model_parse(bad.as_ptr().cast(), &mut m), KamStatus::InvalidUtf8);
        let mut x = ptr::null_mut();
        assert_eq!(kam_expand(ptr::null(), 1, ptr::null(), ptr::null(), &mut x), KamStatus::NullArgument);

        let m = parse(KAPITZA);
        let g = CString::new("nonsense").unwrap();
        assert_eq!(kam_expand(m, 1, g.as_ptr(), ptr::null(), &mut x), KamStatus::InvalidArgument);
        assert_eq!(kam_expand(m, 40, ptr::null(), ptr::null(), &mut x), KamStatus::OrderLimit);
        kam_model_free(m);

        let junk = CString::new("{\"algebra\": 3}").unwrap();
        assert_eq!(kam_expansion_from_json(junk.as_ptr(), &mut x), KamStatus::ParseError);

        kam_string_free(ptr::null_mut());
        kam_model_free(ptr::null_mut());
        kam_expansion_free(ptr::null_mut());
        assert_eq!(kam_expansion_order(ptr::null()), 0);
    }
}

#[test]
fn closed_forms() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(kam_closed_form(2, KamTarget::K, KamFormat::Text, &mut s), KamStatus::Ok);
        let text = take(s);
        assert_eq!(text.lines().count(), 3, "{text}");
        assert_eq!(kam_closed_form(2, KamTarget::S, KamFormat::Json, &mut s), KamStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert!(v.is_array());
        assert_eq!(kam_closed_form(99, KamTarget::K, KamFormat::Text, &mut s), KamStatus::OrderLimit);
    }
}

#[test]
fn diagram_paths() {
    let mut n = 0usize;
    unsafe {
        assert_eq!(kam_diagram_path_count(3, 3, &mut n), KamStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(kam_diagram_path_count(1, 5, &mut n), KamStatus::InvalidArgument);
        assert_eq!(kam_diagram_path_count(1, 1, ptr::null_mut()), KamStatus::NullArgument);
    }
}
