use std::ffi::{c_char, CStr, CString};
use std::ptr;

use exotic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    exo_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(exo_last_error()).to_str().unwrap().to_string()
}

unsafe fn point(mu: &str, nu: &str, p: u32) -> *mut ExoPoint {
    let mut pt = ptr::null_mut();
    assert_eq!(exo_point_normal_basis(c(mu).as_ptr(), c(nu).as_ptr(), p, &mut pt), ExoStatus::Ok);
    assert!(!pt.is_null());
    pt
}

#[test]
fn normal_basis_round_trips_through_the_exotic_type() {
    unsafe {
        let pt = point("1", "2", 3);
        let mut dim = 0usize;
        assert_eq!(exo_point_dim(pt, &mut dim), ExoStatus::Ok);
        assert_eq!(dim, 6);
        let mut s = ptr::null_mut();
        assert_eq!(exo_point_exotic_type_json(pt, &mut s), ExoStatus::Ok);
        assert_eq!(take(s), r#"{"mu":[1],"nu":[2]}"#);
        assert_eq!(exo_point_json(pt, &mut s), ExoStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["p"], 3);
        assert_eq!(v["x"].as_array().unwrap().len(), 6);
        exo_point_free(pt);
    }
}

#[test]
fn census_of_the_two_key_example() {
    unsafe {
        let pt = point("", "2,1", 2);
        let mut s = ptr::null_mut();
        assert_eq!(exo_fiber_census_json(pt, c("1,2").as_ptr(), 1_000_000, &mut s), ExoStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let counts: Vec<u64> = v.as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).collect();
        assert_eq!(counts, vec![45, 12]);
        exo_point_free(pt);
    }
}

#[test]
fn d_alpha_and_identities() {
    unsafe {
        let mut d = 0i64;
        assert_eq!(exo_d_alpha(c("").as_ptr(), c("2,1").as_ptr(), c("1,2").as_ptr(), &mut d), ExoStatus::Ok);
        assert_eq!(d, 4);
        let (mut passed, mut total) = (0u32, 0u32);
        assert_eq!(exo_verify_identities(&mut passed, &mut total), ExoStatus::Ok);
        assert_eq!((passed, total), (10, 10));
    }
}

#[test]
fn errors_are_reported_with_codes_and_messages() {
    unsafe {
        let mut pt = ptr::null_mut();
        assert_eq!(
            exo_point_normal_basis(c("1").as_ptr(), c("").as_ptr(), 4, &mut pt),
            ExoStatus::InvalidArgument
        );
        assert!(pt.is_null());
        assert!(last_error().contains('4'));
        assert_eq!(
            exo_point_normal_basis(c("x").as_ptr(), c("").as_ptr(), 2, &mut pt),
            ExoStatus::InvalidArgument
        );
        assert_eq!(exo_point_normal_basis(ptr::null(), c("").as_ptr(), 2, &mut pt), ExoStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(
            exo_point_normal_basis(bad.as_ptr() as *const c_char, c("").as_ptr(), 2, &mut pt),
            ExoStatus::InvalidUtf8
        );
        let mut dim = 0usize;
        assert_eq!(exo_point_dim(ptr::null(), &mut dim), ExoStatus::NullPointer);

        let big = point("", "2,1", 2);
        let mut s = ptr::null_mut();
        if std::env::var_os("EXOTIC_GUARD").is_none() {
            assert_eq!(exo_fiber_census_json(big, c("1,2").as_ptr(), 10, &mut s), ExoStatus::GuardExceeded);
            assert!(last_error().contains("guard"));
        }
        assert_eq!(exo_fiber_census_json(big, c("1,1").as_ptr(), 1000, &mut s), ExoStatus::InvalidArgument);
        exo_point_free(big);

        // A successful call clears the message.
        assert_eq!(exo_verify_identities(&mut 0, &mut 0), ExoStatus::Ok);
        assert_eq!(last_error(), "");
        exo_point_free(ptr::null_mut());
        exo_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_whole_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/exotic.h")).unwrap();
    for name in [
        "typedef struct ExoPoint ExoPoint;",
        "EXO_STATUS_GUARD_EXCEEDED = 4",
        "exo_point_normal_basis(",
        "exo_point_free(",
        "exo_point_dim(",
        "exo_point_json(",
        "exo_point_exotic_type_json(",
        "exo_d_alpha(",
        "exo_fiber_census_json(",
        "exo_verify_identities(",
        "exo_string_free(",
        "exo_last_error(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
