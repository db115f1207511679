//! Exercises the C surface from Rust and, when a C compiler is available,
//! end-to-end through an actual C program linked against the static library.

use std::ffi::{CStr, CString};
use std::ptr;

use octo_ffi::*;

fn basis(i: usize) -> *mut OctoElement {
    let mut out = ptr::null_mut();
    assert_eq!(octo_element_basis(i, &mut out), OctoStatus::Ok);
    out
}

fn coeffs8(e: *const OctoElement) -> [f64; 8] {
    let mut buf = [0.0; 8];
    assert_eq!(octo_element_coeffs(e, buf.as_mut_ptr(), 8), OctoStatus::Ok);
    buf
}

#[test]
fn element_lifecycle_and_arithmetic() {
    let e3 = basis(3);
    let e5 = basis(5);
    let mut prod = ptr::null_mut();
    assert_eq!(octo_multiply(e3, e5, &mut prod), OctoStatus::Ok);
    let c = coeffs8(prod);
    assert_eq!(c[1], 1.0);
    assert!(c.iter().enumerate().all(|(i, v)| i == 1 || *v == 0.0));

    let mut dim = 0usize;
    assert_eq!(octo_element_dim(prod, &mut dim), OctoStatus::Ok);
    assert_eq!(dim, 8);

    let mut norm = 0.0f64;
    assert_eq!(octo_norm(prod, &mut norm), OctoStatus::Ok);
    assert_eq!(norm, 1.0);

    let mut inv = ptr::null_mut();
    assert_eq!(octo_inverse(prod, &mut inv), OctoStatus::Ok);
    assert_eq!(coeffs8(inv)[1], -1.0);

    let mut sign = 0i8;
    let mut index = 0usize;
    assert_eq!(octo_basis_product(1, 4, &mut sign, &mut index), OctoStatus::Ok);
    assert_eq!((sign, index), (-1, 6));
    assert_eq!(
        octo_basis_product(9, 0, &mut sign, &mut index),
        OctoStatus::IndexOutOfRange
    );

    for h in [e3, e5, prod, inv] {
        octo_element_free(h);
    }
    octo_element_free(ptr::null_mut());
}

#[test]
fn null_and_error_paths() {
    let mut out = ptr::null_mut();
    assert_eq!(
        octo_element_new(ptr::null(), 8, &mut out),
        OctoStatus::NullPointer
    );
    let coeffs = [0.0; 3];
    assert_eq!(
        octo_element_new(coeffs.as_ptr(), 3, &mut out),
        OctoStatus::InvalidArgument
    );
    let zero = [0.0; 8];
    assert_eq!(octo_element_new(zero.as_ptr(), 8, &mut out), OctoStatus::Ok);
    let mut inv = ptr::null_mut();
    assert_eq!(octo_inverse(out, &mut inv), OctoStatus::DivisionByZero);
    octo_element_free(out);
}

#[test]
fn derivations_and_automorphisms() {
    let e1 = basis(1);
    let e2 = basis(2);
    let mut d = [0.0f64; 64];
    assert_eq!(octo_d_ab_matrix(e1, e2, d.as_mut_ptr()), OctoStatus::Ok);
    let mut flag = false;
    assert_eq!(octo_is_derivation(d.as_ptr(), &mut flag), OctoStatus::Ok);
    assert!(flag);

    let mut f = [0.0f64; 64];
    assert_eq!(octo_f_kij_matrix(1, 2, 4, f.as_mut_ptr()), OctoStatus::Ok);
    let mut g = [0.0f64; 64];
    assert_eq!(octo_exp_f(0.3, f.as_ptr(), g.as_mut_ptr()), OctoStatus::Ok);
    assert_eq!(octo_is_automorphism(g.as_ptr(), &mut flag), OctoStatus::Ok);
    assert!(flag);
    // a derivation is not a one-parameter-subgroup generator unless F^3 = -F
    assert_eq!(
        octo_exp_f(1.0, d.as_ptr(), g.as_mut_ptr()),
        OctoStatus::InvariantViolation
    );

    // conjugation by 1/2 + (sqrt3/2) e1 is an automorphism
    let half = [0.5, 3.0f64.sqrt() / 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let mut u = ptr::null_mut();
    assert_eq!(octo_element_new(half.as_ptr(), 8, &mut u), OctoStatus::Ok);
    let mut real = false;
    assert_eq!(octo_u_cubed_is_real(u, &mut real), OctoStatus::Ok);
    assert!(real);
    let mut cm = [0.0f64; 64];
    assert_eq!(octo_conjugation_matrix(u, cm.as_mut_ptr()), OctoStatus::Ok);
    assert_eq!(octo_is_automorphism(cm.as_ptr(), &mut flag), OctoStatus::Ok);
    assert!(flag);

    let mut dist = f64::NAN;
    let mut t = [0.0f64; 64];
    assert_eq!(
        octo_g2_tangent(e1, e2, 1e-4, t.as_mut_ptr(), &mut dist),
        OctoStatus::Ok
    );
    assert!(dist < 1e-5);

    for h in [e1, e2, u] {
        octo_element_free(h);
    }
}

#[test]
fn words_and_reports() {
    let json = CString::new(
        r#"[{"mu": [1.4142135623730951, 0.0, 0.0, 0.7071067811865475],
             "nu": [0.0, 0.0, 0.0, 0.0],
             "q": [1, 0, 0, 0, 0, 0, 0]}]"#,
    )
    .unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(octo_word_from_json(json.as_ptr(), &mut w), OctoStatus::Ok);
    let mut len = 0usize;
    assert_eq!(octo_word_len(w, &mut len), OctoStatus::Ok);
    assert_eq!(len, 1);

    let vec = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let mut out = [0.0f64; 10];
    assert_eq!(octo_word_apply(w, vec.as_ptr(), out.as_mut_ptr()), OctoStatus::Ok);
    assert!((out[0] - 1.25).abs() < 1e-12);
    assert!((out[9] - 0.75).abs() < 1e-12);

    let mut m = [0.0f64; 100];
    assert_eq!(octo_word_matrix(w, m.as_mut_ptr()), OctoStatus::Ok);
    assert!((m[0] - 1.25).abs() < 1e-12);

    let mut inv = ptr::null_mut();
    assert_eq!(octo_word_inverse(w, &mut inv), OctoStatus::Ok);
    let mut round = [0.0f64; 10];
    assert_eq!(octo_word_apply(inv, out.as_ptr(), round.as_mut_ptr()), OctoStatus::Ok);
    assert!((round[0] - 1.0).abs() < 1e-9);

    octo_word_free(w);
    octo_word_free(inv);

    let bad = CString::new("not json").unwrap();
    let mut w2 = ptr::null_mut();
    assert_eq!(octo_word_from_json(bad.as_ptr(), &mut w2), OctoStatus::ParseError);

    // table + verify round trips through strings
    let mut table = ptr::null_mut();
    assert_eq!(octo_table_json(&mut table), OctoStatus::Ok);
    let text = unsafe { CStr::from_ptr(table) }.to_str().unwrap();
    assert!(text.contains("\"e3*e5\": \"e1\""));
    octo_string_free(table);

    let name = CString::new("lemma4").unwrap();
    let mut report = ptr::null_mut();
    let mut passed = false;
    assert_eq!(
        octo_verify_suite(name.as_ptr(), 42, 100, &mut report, &mut passed),
        OctoStatus::Ok
    );
    assert!(passed);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap();
    assert!(text.contains("\"passed\": true"));
    octo_string_free(report);

    let unknown = CString::new("nope").unwrap();
    assert_eq!(
        octo_verify_suite(unknown.as_ptr(), 0, 0, &mut report, &mut passed),
        OctoStatus::InvalidArgument
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(octo_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
