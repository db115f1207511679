//! C ABI for the octonion / SL(2,O) library.
//!
//! Conventions:
//! - every function returns an [`OctoStatus`]; results go to out-pointers;
//! - `OctoElement` and `OctoWord` are opaque handles freed with their
//!   matching `*_free` function;
//! - 8x8 matrices travel as row-major `double[64]`, the 10x10 light-cone
//!   matrix as row-major `double[100]`;
//! - strings returned by the library are NUL-terminated, UTF-8, and must be
//!   released with [`octo_string_free`].
//!
//! The generated header lands in `include/octo.h`.

#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use octo_core::algebra::{AlgebraElement, AlgebraLevel};
use octo_core::automorphisms;
use octo_core::derivations::{self, LinearEndo8, Matrix8};
use octo_core::error::Error;
use octo_core::formats;
use octo_core::hermitian::{herm_to_vec, vec_to_herm, SpacetimeVector};
use octo_core::report::{run_suite, to_json_17, RunConfig, Suite};
use octo_core::sl2o::GroupWord;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidLevel = 3,
    LevelMismatch = 4,
    DivisionByZero = 5,
    IndexOutOfRange = 6,
    InvariantViolation = 7,
    NotInImage = 8,
    ParseError = 9,
    InternalPanic = 10,
}

impl From<&Error> for OctoStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidLevel(_) => OctoStatus::InvalidLevel,
            Error::LevelMismatch(_, _) => OctoStatus::LevelMismatch,
            Error::CoefficientLength { .. } => OctoStatus::InvalidArgument,
            Error::DivisionByZero => OctoStatus::DivisionByZero,
            Error::IndexOutOfRange(_, _) => OctoStatus::IndexOutOfRange,
            Error::InvalidArgument(_) => OctoStatus::InvalidArgument,
            Error::NotInImage(_) => OctoStatus::NotInImage,
            Error::InvariantViolation(_) => OctoStatus::InvariantViolation,
        }
    }
}

/// Opaque octonion (or lower-level algebra element) handle.
pub struct OctoElement(AlgebraElement);

/// Opaque group-word handle.
pub struct OctoWord(GroupWord);

fn guarded(f: impl FnOnce() -> OctoStatus) -> OctoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => OctoStatus::InternalPanic,
    }
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

fn endo_from_raw(data: &[f64]) -> LinearEndo8 {
    let mut m = Matrix8::zeros();
    for i in 0..8 {
        for j in 0..8 {
            m[(i, j)] = data[i * 8 + j];
        }
    }
    LinearEndo8::from_matrix(m)
}

fn endo_to_raw(e: &LinearEndo8, out: &mut [f64]) {
    for i in 0..8 {
        for j in 0..8 {
            out[i * 8 + j] = e.matrix()[(i, j)];
        }
    }
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn octo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build an element from `len` coefficients; `len` must be 1, 2, 4 or 8.
#[no_mangle]
pub extern "C" fn octo_element_new(
    coeffs: *const f64,
    len: usize,
    out: *mut *mut OctoElement,
) -> OctoStatus {
    guarded(|| {
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        let level = match AlgebraLevel::from_dim(len) {
            Ok(l) => l,
            Err(e) => return (&e).into(),
        };
        let Some(coeffs) = (unsafe { slice_arg(coeffs, len) }) else {
            return OctoStatus::NullPointer;
        };
        match AlgebraElement::from_coeffs(level, coeffs) {
            Ok(e) => {
                unsafe { *out = Box::into_raw(Box::new(OctoElement(e))) };
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Octonion basis unit e_i.
#[no_mangle]
pub extern "C" fn octo_element_basis(i: usize, out: *mut *mut OctoElement) -> OctoStatus {
    guarded(|| {
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        match AlgebraElement::oct_basis(i) {
            Ok(e) => {
                unsafe { *out = Box::into_raw(Box::new(OctoElement(e))) };
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Release an element handle (null is ignored).
#[no_mangle]
pub extern "C" fn octo_element_free(e: *mut OctoElement) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

/// Dimension (1, 2, 4 or 8) of the element's algebra.
#[no_mangle]
pub extern "C" fn octo_element_dim(e: *const OctoElement, out: *mut usize) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = (*e).0.level().dim() };
        OctoStatus::Ok
    })
}

/// Copy the coefficients into `out`, which must hold at least `dim` values.
#[no_mangle]
pub extern "C" fn octo_element_coeffs(
    e: *const OctoElement,
    out: *mut f64,
    len: usize,
) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let coeffs = unsafe { (*e).0.coeffs() };
        if len < coeffs.len() {
            return OctoStatus::InvalidArgument;
        }
        unsafe { std::slice::from_raw_parts_mut(out, coeffs.len()) }.copy_from_slice(coeffs);
        OctoStatus::Ok
    })
}

macro_rules! binary_op {
    ($name:ident, $body:expr) => {
        #[no_mangle]
        pub extern "C" fn $name(
            a: *const OctoElement,
            b: *const OctoElement,
            out: *mut *mut OctoElement,
        ) -> OctoStatus {
            guarded(|| {
                if a.is_null() || b.is_null() || out.is_null() {
                    return OctoStatus::NullPointer;
                }
                let (x, y) = unsafe { (&(*a).0, &(*b).0) };
                #[allow(clippy::redundant_closure_call)]
                match ($body)(x, y) {
                    Ok(v) => {
                        unsafe { *out = Box::into_raw(Box::new(OctoElement(v))) };
                        OctoStatus::Ok
                    }
                    Err(e) => (&e).into(),
                }
            })
        }
    };
}

binary_op!(octo_multiply, |x: &AlgebraElement, y: &AlgebraElement| x.try_mul(y));
binary_op!(octo_commutator, |x: &AlgebraElement, y: &AlgebraElement| {
    octo_core::algebra::commutator(x, y)
});

/// Associator `[a, b, c]` = (ab)c - a(bc).
#[no_mangle]
pub extern "C" fn octo_associator(
    a: *const OctoElement,
    b: *const OctoElement,
    c: *const OctoElement,
    out: *mut *mut OctoElement,
) -> OctoStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || c.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let (x, y, z) = unsafe { (&(*a).0, &(*b).0, &(*c).0) };
        match octo_core::algebra::associator(x, y, z) {
            Ok(v) => {
                unsafe { *out = Box::into_raw(Box::new(OctoElement(v))) };
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Conjugate of an element.
#[no_mangle]
pub extern "C" fn octo_conjugate(e: *const OctoElement, out: *mut *mut OctoElement) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let v = unsafe { (*e).0.conjugate() };
        unsafe { *out = Box::into_raw(Box::new(OctoElement(v))) };
        OctoStatus::Ok
    })
}

/// Multiplicative inverse; fails on zero.
#[no_mangle]
pub extern "C" fn octo_inverse(e: *const OctoElement, out: *mut *mut OctoElement) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        match unsafe { (*e).0.inverse() } {
            Ok(v) => {
                unsafe { *out = Box::into_raw(Box::new(OctoElement(v))) };
                OctoStatus::Ok
            }
            Err(err) => (&err).into(),
        }
    })
}

/// Euclidean norm of the coefficient vector.
#[no_mangle]
pub extern "C" fn octo_norm(e: *const OctoElement, out: *mut f64) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = (*e).0.norm() };
        OctoStatus::Ok
    })
}

/// Signed octonion basis product e_i e_j = sign * e_k.
#[no_mangle]
pub extern "C" fn octo_basis_product(
    i: usize,
    j: usize,
    sign: *mut i8,
    index: *mut usize,
) -> OctoStatus {
    guarded(|| {
        if sign.is_null() || index.is_null() {
            return OctoStatus::NullPointer;
        }
        match octo_core::algebra::basis_product(i, j) {
            Ok((s, k)) => {
                unsafe {
                    *sign = s;
                    *index = k;
                }
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Whether u^3 is real (so conjugation by u is an automorphism).
#[no_mangle]
pub extern "C" fn octo_u_cubed_is_real(e: *const OctoElement, out: *mut bool) -> OctoStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = automorphisms::u_cubed_is_real(&(*e).0) };
        OctoStatus::Ok
    })
}

/// The conjugation map x -> u x u^{-1} as a row-major `double[64]`.
#[no_mangle]
pub extern "C" fn octo_conjugation_matrix(
    u: *const OctoElement,
    out: *mut f64,
) -> OctoStatus {
    guarded(|| {
        if u.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        match automorphisms::conjugation_map(unsafe { &(*u).0 }) {
            Ok(m) => {
                endo_to_raw(&m, unsafe { std::slice::from_raw_parts_mut(out, 64) });
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// The canonical derivation D_{a,b} as a row-major `double[64]`.
#[no_mangle]
pub extern "C" fn octo_d_ab_matrix(
    a: *const OctoElement,
    b: *const OctoElement,
    out: *mut f64,
) -> OctoStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let (x, y) = unsafe { (&(*a).0, &(*b).0) };
        if x.level() != AlgebraLevel::Octonion || y.level() != AlgebraLevel::Octonion {
            return OctoStatus::LevelMismatch;
        }
        let d = derivations::d_ab(x, y);
        endo_to_raw(&d, unsafe { std::slice::from_raw_parts_mut(out, 64) });
        OctoStatus::Ok
    })
}

/// The basis derivation F^k_{ij} as a row-major `double[64]`.
#[no_mangle]
pub extern "C" fn octo_f_kij_matrix(k: usize, i: usize, j: usize, out: *mut f64) -> OctoStatus {
    guarded(|| {
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        match derivations::f_kij(k, i, j) {
            Ok(f) => {
                endo_to_raw(&f, unsafe { std::slice::from_raw_parts_mut(out, 64) });
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Closed-form exponential exp(tF) for generators with F^3 = -F.
#[no_mangle]
pub extern "C" fn octo_exp_f(t: f64, f: *const f64, out: *mut f64) -> OctoStatus {
    guarded(|| {
        let Some(data) = (unsafe { slice_arg(f, 64) }) else {
            return OctoStatus::NullPointer;
        };
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        match derivations::exp_f(t, &endo_from_raw(data)) {
            Ok(g) => {
                endo_to_raw(&g, unsafe { std::slice::from_raw_parts_mut(out, 64) });
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Leibniz-rule test of an 8x8 map.
#[no_mangle]
pub extern "C" fn octo_is_derivation(m: *const f64, out: *mut bool) -> OctoStatus {
    guarded(|| {
        let Some(data) = (unsafe { slice_arg(m, 64) }) else {
            return OctoStatus::NullPointer;
        };
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = derivations::is_derivation(&endo_from_raw(data)) };
        OctoStatus::Ok
    })
}

/// Multiplicativity test of an 8x8 map.
#[no_mangle]
pub extern "C" fn octo_is_automorphism(m: *const f64, out: *mut bool) -> OctoStatus {
    guarded(|| {
        let Some(data) = (unsafe { slice_arg(m, 64) }) else {
            return OctoStatus::NullPointer;
        };
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = automorphisms::is_automorphism(&endo_from_raw(data)) };
        OctoStatus::Ok
    })
}

/// Finite-difference tangent of the generator curve for the anticommuting
/// imaginary pair (a, b); writes the 8x8 tangent and its Frobenius distance
/// to the canonical derivation.
#[no_mangle]
pub extern "C" fn octo_g2_tangent(
    a: *const OctoElement,
    b: *const OctoElement,
    h: f64,
    out: *mut f64,
    distance: *mut f64,
) -> OctoStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out.is_null() || distance.is_null() {
            return OctoStatus::NullPointer;
        }
        let (x, y) = unsafe { (&(*a).0, &(*b).0) };
        match automorphisms::tangent_at_identity_with_step(x, y, h) {
            Ok(t) => {
                endo_to_raw(&t, unsafe { std::slice::from_raw_parts_mut(out, 64) });
                unsafe { *distance = t.frobenius_distance(&derivations::d_ab(x, y)) };
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Parse a word from its JSON form (a list of {mu, nu, q} generators).
#[no_mangle]
pub extern "C" fn octo_word_from_json(
    json: *const c_char,
    out: *mut *mut OctoWord,
) -> OctoStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let Ok(text) = unsafe { CStr::from_ptr(json) }.to_str() else {
            return OctoStatus::ParseError;
        };
        match formats::word_from_json(text) {
            Ok(w) => {
                unsafe { *out = Box::into_raw(Box::new(OctoWord(w))) };
                OctoStatus::Ok
            }
            Err(_) => OctoStatus::ParseError,
        }
    })
}

/// Release a word handle (null is ignored).
#[no_mangle]
pub extern "C" fn octo_word_free(w: *mut OctoWord) {
    if !w.is_null() {
        drop(unsafe { Box::from_raw(w) });
    }
}

/// Number of generators in the word.
#[no_mangle]
pub extern "C" fn octo_word_len(w: *const OctoWord, out: *mut usize) -> OctoStatus {
    guarded(|| {
        if w.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        unsafe { *out = (*w).0.len() };
        OctoStatus::Ok
    })
}

/// The inverse word (reversed per-generator adjugate expansions).
#[no_mangle]
pub extern "C" fn octo_word_inverse(w: *const OctoWord, out: *mut *mut OctoWord) -> OctoStatus {
    guarded(|| {
        if w.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        match unsafe { (*w).0.inverse() } {
            Ok(inv) => {
                unsafe { *out = Box::into_raw(Box::new(OctoWord(inv))) };
                OctoStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Apply the word to a 10-component light-cone vector.
#[no_mangle]
pub extern "C" fn octo_word_apply(
    w: *const OctoWord,
    vec: *const f64,
    out: *mut f64,
) -> OctoStatus {
    guarded(|| {
        if w.is_null() {
            return OctoStatus::NullPointer;
        }
        let Some(coords) = (unsafe { slice_arg(vec, 10) }) else {
            return OctoStatus::NullPointer;
        };
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        let v = match SpacetimeVector::new(coords.to_vec()) {
            Ok(v) => v,
            Err(e) => return (&e).into(),
        };
        let img = herm_to_vec(&unsafe { &(*w).0 }.apply(&vec_to_herm(&v)));
        unsafe { std::slice::from_raw_parts_mut(out, 10) }.copy_from_slice(img.coords());
        OctoStatus::Ok
    })
}

/// The word's 10x10 light-cone matrix, row-major `double[100]`.
#[no_mangle]
pub extern "C" fn octo_word_matrix(w: *const OctoWord, out: *mut f64) -> OctoStatus {
    guarded(|| {
        if w.is_null() || out.is_null() {
            return OctoStatus::NullPointer;
        }
        let m = unsafe { &(*w).0 }.to_lorentz_matrix();
        let dst = unsafe { std::slice::from_raw_parts_mut(out, 100) };
        for i in 0..10 {
            for j in 0..10 {
                dst[i * 10 + j] = m.matrix()[(i, j)];
            }
        }
        OctoStatus::Ok
    })
}

/// The frozen multiplication table as a JSON string (free with
/// [`octo_string_free`]).
#[no_mangle]
pub extern "C" fn octo_table_json(out: *mut *mut c_char) -> OctoStatus {
    guarded(|| {
        if out.is_null() {
            return OctoStatus::NullPointer;
        }
        let json = to_json_17(&octo_core::algebra::table_export());
        match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                OctoStatus::Ok
            }
            Err(_) => OctoStatus::InternalPanic,
        }
    })
}

/// Run a named verification suite; returns the JSON report as a string
/// (free with [`octo_string_free`]) and sets `passed`. `samples == 0`
/// selects the suite default.
#[no_mangle]
pub extern "C" fn octo_verify_suite(
    name: *const c_char,
    seed: u64,
    samples: usize,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> OctoStatus {
    guarded(|| {
        if name.is_null() || report.is_null() || passed.is_null() {
            return OctoStatus::NullPointer;
        }
        let Ok(text) = unsafe { CStr::from_ptr(name) }.to_str() else {
            return OctoStatus::ParseError;
        };
        let suite: Suite = match text.parse() {
            Ok(s) => s,
            Err(e) => return (&e).into(),
        };
        let cfg = RunConfig {
            seed,
            samples: if samples == 0 { None } else { Some(samples) },
            tolerances: Default::default(),
        };
        match run_suite(suite, &cfg) {
            Ok(rep) => {
                unsafe { *passed = rep.passed };
                match CString::new(to_json_17(&rep)) {
                    Ok(s) => {
                        unsafe { *report = s.into_raw() };
                        OctoStatus::Ok
                    }
                    Err(_) => OctoStatus::InternalPanic,
                }
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Release a string returned by the library (null is ignored).
#[no_mangle]
pub extern "C" fn octo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
