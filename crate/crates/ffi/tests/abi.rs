use std::ffi::{CStr, CString};
use std::ptr;

use siltq_ffi::*;

fn last_error() -> String {
    let p = siltq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn builtin(name: &str, params: &str) -> *mut SiltqAlgebra {
    let (name, params) = (CString::new(name).unwrap(), CString::new(params).unwrap());
    let mut a = ptr::null_mut();
    let st = unsafe { siltq_algebra_builtin(name.as_ptr(), params.as_ptr(), 0, &mut a) };
    assert_eq!(st, SiltqStatus::Ok);
    a
}

#[test]
fn census_of_a3_through_the_abi() {
    let a = builtin("linear_a", "n=3");
    unsafe {
        assert_eq!(siltq_algebra_dim(a), 6);
        assert_eq!(siltq_algebra_vertex_count(a), 3);
        let mut c = ptr::null_mut();
        assert_eq!(siltq_enumerate(a, 10_000, &mut c), SiltqStatus::Ok);
        assert_eq!(siltq_census_len(c), 14);
        assert!(siltq_census_complete(c));

        let (mut minus, mut plus) = (0, 0);
        assert_eq!(siltq_census_bisect(c, 1, &mut minus, &mut plus), SiltqStatus::Ok);
        assert_eq!((minus, plus), (7, 7));

        let mut written = 0;
        assert_eq!(siltq_census_key(c, 0, ptr::null_mut(), 0, &mut written), SiltqStatus::BufferTooSmall);
        assert_eq!(written, 9);
        let mut buf = vec![0i64; written];
        assert_eq!(siltq_census_key(c, 0, buf.as_mut_ptr(), buf.len(), &mut written), SiltqStatus::Ok);
        assert!(buf.iter().any(|&x| x != 0));

        let mut json = ptr::null_mut();
        assert_eq!(siltq_census_to_json(c, &mut json), SiltqStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"count\": 14"));
        siltq_string_free(json);

        siltq_census_free(c);
        siltq_algebra_free(a);
    }
}

#[test]
fn errors_are_reported_per_thread() {
    siltq_clear_error();
    assert!(siltq_last_error().is_null());
    let name = CString::new("no_such_algebra").unwrap();
    let mut a = ptr::null_mut();
    let st = unsafe { siltq_algebra_builtin(name.as_ptr(), ptr::null(), 0, &mut a) };
    assert_eq!(st, SiltqStatus::InvalidInput);
    assert!(a.is_null());
    assert!(last_error().contains("no_such_algebra"));
    std::thread::spawn(|| assert!(siltq_last_error().is_null())).join().unwrap();
}

#[test]
fn null_arguments_are_rejected() {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { siltq_algebra_builtin(ptr::null(), ptr::null(), 0, &mut a) }, SiltqStatus::NullArgument);
    assert_eq!(unsafe { siltq_algebra_from_json(ptr::null(), &mut a) }, SiltqStatus::NullArgument);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { siltq_enumerate(ptr::null(), 10, &mut c) }, SiltqStatus::NullArgument);
    assert_eq!(unsafe { siltq_census_len(ptr::null()) }, 0);
    unsafe {
        siltq_algebra_free(ptr::null_mut());
        siltq_census_free(ptr::null_mut());
        siltq_string_free(ptr::null_mut());
    }
}

#[test]
fn spec_json_and_bad_syntax() {
    let good = CString::new(
        r#"{"field": {"kind": "Q"}, "vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}], "relations": []}"#,
    )
    .unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { siltq_algebra_from_json(good.as_ptr(), &mut a) }, SiltqStatus::Ok);
    assert_eq!(unsafe { siltq_algebra_dim(a) }, 3);
    unsafe { siltq_algebra_free(a) };

    let bad = CString::new("{\"field\": ").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { siltq_algebra_from_json(bad.as_ptr(), &mut b) }, SiltqStatus::InvalidInput);
    assert!(last_error().contains("line"));
}

#[test]
fn incomplete_census_cannot_be_bisected() {
    let a = builtin("linear_a", "n=3");
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(siltq_enumerate(a, 3, &mut c), SiltqStatus::Ok);
        assert!(!siltq_census_complete(c));
        let (mut m, mut p) = (0, 0);
        assert_eq!(siltq_census_bisect(c, 0, &mut m, &mut p), SiltqStatus::Incomplete);
        siltq_census_free(c);
        siltq_algebra_free(a);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(siltq_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../include/siltq.h")).unwrap();
    for f in [
        "siltq_last_error", "siltq_clear_error", "siltq_version", "siltq_algebra_builtin",
        "siltq_algebra_from_json", "siltq_algebra_free", "siltq_algebra_dim", "siltq_enumerate",
        "siltq_census_len", "siltq_census_key", "siltq_census_bisect", "siltq_census_to_json",
        "siltq_string_free", "SILTQ_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}
