use std::ffi::{CStr, CString};
use std::ptr;

use frolicher_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(frolicher_last_error_message()) }.to_str().unwrap().to_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { frolicher_string_free(p) };
    s
}

#[test]
fn iwasawa_report() {
    unsafe {
        let mut s = ptr::null_mut();
        let name = CString::new("iwasawa").unwrap();
        assert_eq!(frolicher_structure_builtin(name.as_ptr(), 0, &mut s), FrolicherStatus::Ok);
        let mut m = 0;
        assert_eq!(frolicher_structure_generators(s, &mut m), FrolicherStatus::Ok);
        assert_eq!(m, 3);

        let mut r = ptr::null_mut();
        assert_eq!(frolicher_report_compute(s, 0, &mut r), FrolicherStatus::Ok);
        let mut page = 0;
        assert_eq!(frolicher_report_degeneration_page(r, &mut page), FrolicherStatus::Ok);
        assert_eq!(page, 2);
        let mut count = 0;
        frolicher_report_page_count(r, &mut count);
        assert_eq!(count, 5);
        let mut dim = 0;
        assert_eq!(frolicher_report_page_dim(r, 1, 0, 1, &mut dim), FrolicherStatus::Ok);
        assert_eq!(dim, 2);
        assert_eq!(frolicher_report_page_dim(r, 9, 0, 0, &mut dim), FrolicherStatus::OutOfRange);
        assert!(last_error().contains("E_9"));
        let mut b1 = 0;
        assert_eq!(frolicher_report_betti(r, 1, &mut b1), FrolicherStatus::Ok);
        assert_eq!(b1, 4);
        let mut euler = 1;
        frolicher_report_euler(r, &mut euler);
        assert_eq!(euler, 0);

        let mut json = ptr::null_mut();
        assert_eq!(frolicher_report_json(r, &mut json), FrolicherStatus::Ok);
        assert!(take_string(json).contains("\"degeneration_page\":2"));

        frolicher_report_free(r);
        frolicher_structure_free(s);
    }
}

#[test]
fn parse_serialize_round_trip() {
    unsafe {
        let text = CString::new("generators 3\nd f3 = -f1^f2\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(frolicher_structure_parse(text.as_ptr(), &mut s), FrolicherStatus::Ok);
        let mut valid = false;
        frolicher_structure_is_valid(s, &mut valid);
        assert!(valid);
        let mut out = ptr::null_mut();
        assert_eq!(frolicher_structure_serialize(s, &mut out), FrolicherStatus::Ok);
        assert_eq!(take_string(out), "generators 3\nd f3 = -f1^f2\n");
        frolicher_structure_free(s);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        let bad = CString::new("generators 2\nd f3 = f1^f2").unwrap();
        assert_eq!(frolicher_structure_parse(bad.as_ptr(), &mut s), FrolicherStatus::ParseError);
        assert!(s.is_null());
        assert!(last_error().starts_with("2:3: unknown generator"), "{}", last_error());

        assert_eq!(frolicher_structure_parse(ptr::null(), &mut s), FrolicherStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(frolicher_structure_parse(invalid.as_ptr().cast(), &mut s), FrolicherStatus::InvalidUtf8);

        let name = CString::new("klein").unwrap();
        assert_eq!(frolicher_structure_builtin(name.as_ptr(), 0, &mut s), FrolicherStatus::OutOfRange);
        assert_eq!(frolicher_structure_family_xn(1, &mut s), FrolicherStatus::OutOfRange);

        let nonintegrable = CString::new("generators 3\nd f1 = ~f2^~f3").unwrap();
        assert_eq!(frolicher_structure_parse(nonintegrable.as_ptr(), &mut s), FrolicherStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(frolicher_report_compute(s, 0, &mut r), FrolicherStatus::InvalidStructure);
        assert!(r.is_null());
        frolicher_structure_free(s);

        // Success clears the message.
        assert_eq!(frolicher_structure_family_xn(2, &mut s), FrolicherStatus::Ok);
        assert_eq!(last_error(), "");
        frolicher_structure_free(s);
        frolicher_structure_free(ptr::null_mut());
        frolicher_report_free(ptr::null_mut());
        frolicher_string_free(ptr::null_mut());
    }
}

#[test]
fn zigzag_reach() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(frolicher_structure_family_xn(2, &mut s), FrolicherStatus::Ok);
        // ~f3 = conjugate of omega_1 lives to E_2 on X_2 and beyond.
        let start = CString::new("~f3").unwrap();
        let mut reached = 0;
        assert_eq!(frolicher_zigzag_reach(s, start.as_ptr(), 2, &mut reached), FrolicherStatus::Ok);
        assert_eq!(reached, 2);
        frolicher_structure_free(s);

        let name = CString::new("iwasawa").unwrap();
        assert_eq!(frolicher_structure_builtin(name.as_ptr(), 0, &mut s), FrolicherStatus::Ok);
        // f3 is delbar-closed but d_1[f3] = [-f1^f2] != 0.
        let start = CString::new("f3").unwrap();
        assert_eq!(frolicher_zigzag_reach(s, start.as_ptr(), 2, &mut reached), FrolicherStatus::NoZigzag);
        assert_eq!(reached, 1);
        let not_closed = CString::new("~f3").unwrap();
        assert_eq!(frolicher_zigzag_reach(s, not_closed.as_ptr(), 2, &mut reached), FrolicherStatus::InvalidStructure);
        frolicher_structure_free(s);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/frolicher.h");
    for name in [
        "frolicher_structure_parse",
        "frolicher_structure_builtin",
        "frolicher_structure_family_xn",
        "frolicher_report_compute",
        "frolicher_report_page_dim",
        "frolicher_zigzag_reach",
        "frolicher_last_error_message",
        "FROLICHER_STATUS_NO_ZIGZAG",
        "typedef struct FrolicherStructure FrolicherStructure;",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
