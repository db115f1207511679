//! G2 as automorphisms of the octonions: conjugation maps x -> u x u^{-1},
//! the cube-is-real criterion, the unit-norm generator curve u(t) and the
//! four-fold nested curve G^t_{a,b} whose tangent at the identity is the
//! canonical derivation D_{a,b}.
//!
//! Nesting order inside the curve follows the displayed formula verbatim; no
//! re-association is performed anywhere in this module (nonassociativity is
//! the point). Within a single sandwich w x w^{-1} the parenthesization is
//! immaterial because the subalgebra generated by {w, x} is associative.

use crate::algebra::{AlgebraElement, AlgebraLevel};
use crate::derivations::LinearEndo8;
use crate::error::{Error, Result};

/// Max deviation from multiplicativity T(e_i e_j) = T(e_i) T(e_j) over all
/// 64 basis pairs.
pub fn automorphism_residual(t: &LinearEndo8) -> f64 {
    let e = |i: usize| AlgebraElement::oct_basis(i).expect("basis index");
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let lhs = t.apply(&(e(i) * e(j)));
            let rhs = t.apply(&e(i)) * t.apply(&e(j));
            worst = worst.max((lhs - rhs).max_abs());
        }
    }
    worst
}

/// True iff the map is multiplicative on all basis pairs to 1e-9.
pub fn is_automorphism(t: &LinearEndo8) -> bool {
    automorphism_residual(t) < 1e-9
}

/// The linear map x -> u x u^{-1} as a matrix. An automorphism exactly when
/// u^3 is real.
pub fn conjugation_map(u: &AlgebraElement) -> Result<LinearEndo8> {
    let ui = u.inverse()?;
    Ok(LinearEndo8::from_basis_images(|j| {
        let x = AlgebraElement::oct_basis(j).expect("basis index");
        (*u * x) * ui
    }))
}

/// True iff imag(u^3) vanishes to 1e-10 relative to |u|^3; equivalently
/// vec(u) = 0 or |3 u0^2 - |vec(u)|^2| small.
pub fn u_cubed_is_real(u: &AlgebraElement) -> bool {
    let u3 = *u * *u * *u;
    let scale = u.norm_squared() * u.norm();
    u3.imag_part().norm() <= 1e-10 * (1.0 + scale)
}

/// Parameters of the G2 generator curve: imaginary anticommuting a, b.
#[derive(Debug, Clone, Copy)]
pub struct G2CurveParams {
    a: AlgebraElement,
    b: AlgebraElement,
    t: f64,
}

impl G2CurveParams {
    /// Validates Re(a) = Re(b) = 0, a != 0, b != 0 and ab = -ba, all to 1e-12.
    pub fn new(a: AlgebraElement, b: AlgebraElement, t: f64) -> Result<Self> {
        if a.level() != AlgebraLevel::Octonion || b.level() != AlgebraLevel::Octonion {
            return Err(Error::invalid("curve parameters must be octonions"));
        }
        if a.real_part().abs() > 1e-12 || b.real_part().abs() > 1e-12 {
            return Err(Error::invariant("curve parameters must be imaginary"));
        }
        if a.norm() <= 1e-12 || b.norm() <= 1e-12 {
            return Err(Error::invariant("curve parameters must be nonzero"));
        }
        let anti = (a * b + b * a).max_abs();
        if anti > 1e-12 * (1.0 + a.norm() * b.norm()) {
            return Err(Error::invariant(format!(
                "curve parameters must anticommute, |ab + ba| = {anti:.3e}"
            )));
        }
        Ok(G2CurveParams { a, b, t })
    }

    pub fn a(&self) -> &AlgebraElement {
        &self.a
    }

    pub fn b(&self) -> &AlgebraElement {
        &self.b
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn at(&self, t: f64) -> Self {
        G2CurveParams { t, ..*self }
    }
}

/// The unit-norm curve
/// u(t) = 1/2 + (sqrt(3)/2) w(t)/|w(t)| with w(t) = a + (4/3)|a|^2 t b.
/// u(t)^3 is real for every t.
pub fn u_of_t(params: &G2CurveParams) -> AlgebraElement {
    let a = params.a;
    let b = params.b;
    let w = a + b * ((4.0 / 3.0) * a.norm_squared() * params.t);
    AlgebraElement::scalar(AlgebraLevel::Octonion, 0.5) + w * (3.0f64.sqrt() / (2.0 * w.norm()))
}

/// The curve G^t_{a,b}: x -> u(t)^{-1} (u(0) (u(t) (u(0)^{-1} x u(0)) u(t)^{-1}) u(0)^{-1}) u(t),
/// a composition of four conjugation automorphisms.
pub fn curve_g(params: &G2CurveParams) -> LinearEndo8 {
    let ut = u_of_t(params);
    let u0 = u_of_t(&params.at(0.0));
    let uti = ut.inverse().expect("u(t) has unit norm");
    let u0i = u0.inverse().expect("u(0) has unit norm");
    LinearEndo8::from_basis_images(|j| {
        let x = AlgebraElement::oct_basis(j).expect("basis index");
        let s1 = (u0i * x) * u0;
        let s2 = (ut * s1) * uti;
        let s3 = (u0 * s2) * u0i;
        (uti * s3) * ut
    })
}

/// Finite-difference step for curve tangents.
pub const TANGENT_STEP: f64 = 1e-4;

/// Central finite-difference tangent of G^t_{a,b} at t = 0 with one
/// Richardson extrapolation level; matches D_{a,b} within 1e-5 for the
/// default step.
pub fn tangent_at_identity(a: &AlgebraElement, b: &AlgebraElement) -> Result<LinearEndo8> {
    tangent_at_identity_with_step(a, b, TANGENT_STEP)
}

pub fn tangent_at_identity_with_step(
    a: &AlgebraElement,
    b: &AlgebraElement,
    h: f64,
) -> Result<LinearEndo8> {
    if h <= 0.0 {
        return Err(Error::invalid("step must be positive"));
    }
    let params = G2CurveParams::new(*a, *b, 0.0)?;
    let diff = |hh: f64| {
        curve_g(&params.at(hh))
            .sub(&curve_g(&params.at(-hh)))
            .scale(1.0 / (2.0 * hh))
    };
    let d1 = diff(h);
    let d2 = diff(h / 2.0);
    Ok(d2.scale(4.0 / 3.0).sub(&d1.scale(1.0 / 3.0)))
}
