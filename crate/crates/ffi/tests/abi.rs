use std::ffi::{c_char, CStr, CString};
use std::ptr;

use chern_calculus_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    chern_string_free(s);
    out
}

unsafe fn last_error() -> Option<String> {
    let p = chern_last_error_message();
    (!p.is_null()).then(|| CStr::from_ptr(p).to_str().unwrap().to_owned())
}

unsafe fn class(json: &str) -> *mut ChernKClass {
    let mut h = ptr::null_mut();
    assert_eq!(chern_kclass_from_json(c(json).as_ptr(), &mut h), ChernStatus::Ok);
    h
}

#[test]
fn lr_coefficients() {
    unsafe {
        let mut out = 0u64;
        let st = chern_lr_coefficient(c("2,1").as_ptr(), c("1").as_ptr(), c("1,1").as_ptr(), &mut out);
        assert_eq!(st, ChernStatus::Ok);
        assert_eq!(out, 1);
        let st = chern_lr_coefficient(c("3,2,1").as_ptr(), c("2,1").as_ptr(), c("2,1").as_ptr(), &mut out);
        assert_eq!((st, out), (ChernStatus::Ok, 2));
        assert_eq!(last_error(), None);
    }
}

#[test]
fn malformed_partition_sets_last_error() {
    unsafe {
        let mut out = 7u64;
        let st = chern_lr_coefficient(c("1,2").as_ptr(), c("").as_ptr(), c("").as_ptr(), &mut out);
        assert_eq!(st, ChernStatus::Parse);
        assert_eq!(out, 7);
        assert!(last_error().unwrap().contains("partition"));
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let mut out = 0u64;
        assert_eq!(
            chern_lr_coefficient(ptr::null(), c("").as_ptr(), c("").as_ptr(), &mut out),
            ChernStatus::NullPointer
        );
        assert_eq!(
            chern_lr_coefficient(c("1").as_ptr(), c("").as_ptr(), c("1").as_ptr(), ptr::null_mut()),
            ChernStatus::NullPointer
        );
        let mut s = ptr::null_mut();
        assert_eq!(chern_kclass_rank(ptr::null(), &mut s), ChernStatus::NullPointer);
        chern_kclass_free(ptr::null_mut());
        chern_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    unsafe {
        let bad = [0xffu8 as c_char, 0];
        let mut h = ptr::null_mut();
        assert_eq!(chern_kclass_from_json(bad.as_ptr(), &mut h), ChernStatus::InvalidUtf8);
        assert!(h.is_null());
    }
}

#[test]
fn class_handles() {
    unsafe {
        let a = class(r#"{"pos":[[1]]}"#);
        let b = class(r#"{"pos":[[0,1]],"neg":[[]]}"#);
        let mut sum = ptr::null_mut();
        assert_eq!(chern_kclass_add(a, b, &mut sum), ChernStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(chern_kclass_rank(sum, &mut s), ChernStatus::Ok);
        assert_eq!(take(s), "1");

        let mut t = ptr::null_mut();
        assert_eq!(chern_kclass_tensor(a, a, &mut t), ChernStatus::Ok);
        assert_eq!(chern_kclass_to_json(t, &mut s), ChernStatus::Ok);
        assert_eq!(take(s), r#"{"pos":[[2]],"neg":[]}"#);

        let mut d = ptr::null_mut();
        assert_eq!(chern_kclass_dual(a, &mut d), ChernStatus::Ok);
        assert_eq!(chern_kclass_total_chern_json(d, 3, &mut s), ChernStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v[1]["terms"][0]["coeff"], "-1");

        assert_eq!(chern_kclass_total_chern_json(d, 0, &mut s), ChernStatus::Domain);

        let mut r = ptr::null_mut();
        let reduced = class(r#"{"pos":[[1]],"neg":[[]]}"#);
        assert_eq!(chern_kclass_tensor(reduced, reduced, &mut r), ChernStatus::Ok);
        assert_eq!(chern_kclass_filtration_degree_json(r, 4, &mut s), ChernStatus::Ok);
        assert_eq!(take(s), r#"{"kind":"finite","value":2}"#);

        for h in [a, b, sum, t, d, r, reduced] {
            chern_kclass_free(h);
        }
    }
}

#[test]
fn malformed_class() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(chern_kclass_from_json(c("{oops").as_ptr(), &mut h), ChernStatus::Parse);
        assert!(h.is_null());
        assert!(last_error().is_some());
    }
}

#[test]
fn grassmannians() {
    unsafe {
        let mut rank = 0usize;
        assert_eq!(chern_grass_rank(2, 4, &mut rank), ChernStatus::Ok);
        assert_eq!(rank, 6);
        assert_ne!(chern_grass_rank(0, 4, &mut rank), ChernStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(chern_grass_present_json(2, 4, &mut s), ChernStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["relations_text"][0], "-c1^3+2*c1*c2");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn grr_reports() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(chern_grr_verify_json(3, 5, &mut s), ChernStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let reports = v.as_array().unwrap();
        assert!(reports.iter().all(|r| r["pass"] == true && r["seed"] == 5));
        assert_eq!(chern_grr_verify_json(0, 0, &mut s), ChernStatus::Ok);
        assert_eq!(take(s), "[]");
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(chern_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
