//! The Jordan algebra h2(K) of 2x2 Hermitian matrices over K, its
//! determinant, and the light-cone identification with R^{n+2} carrying the
//! Lorentz quadratic form.
//!
//! A Hermitian matrix (alpha, x; conj(x), beta) stores only (alpha, beta, x);
//! hermiticity is structural. Products of general 2x2 matrices over O fix the
//! evaluation order row-into-column with single left-to-right entry products.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraLevel};
use crate::error::{Error, Result};

/// Point of R^{n+2} in the coordinates (x0, ..., x_{n+1}) matched to
/// h2(K) by diag = x0 +- x_{n+1}, off-diagonal = x1 e0 + ... + x_n e_{n-1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpacetimeVector {
    coords: Vec<f64>,
}

impl SpacetimeVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        AlgebraLevel::from_dim(coords.len().wrapping_sub(2))?;
        Ok(SpacetimeVector { coords })
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        SpacetimeVector {
            coords: vec![0.0; level.dim() + 2],
        }
    }

    pub fn basis(level: AlgebraLevel, i: usize) -> Result<Self> {
        let mut v = Self::zero(level);
        if i >= v.coords.len() {
            return Err(Error::IndexOutOfRange(i, "spacetime vector"));
        }
        v.coords[i] = 1.0;
        Ok(v)
    }

    pub fn level(&self) -> AlgebraLevel {
        AlgebraLevel::from_dim(self.coords.len() - 2).expect("validated on construction")
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// 2x2 Hermitian matrix (alpha, x; conj(x), beta) over one algebra level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hermitian2 {
    pub alpha: f64,
    pub beta: f64,
    pub x: AlgebraElement,
}

impl Hermitian2 {
    pub fn new(alpha: f64, beta: f64, x: AlgebraElement) -> Self {
        Hermitian2 { alpha, beta, x }
    }

    pub fn identity(level: AlgebraLevel) -> Self {
        Hermitian2::new(1.0, 1.0, AlgebraElement::zero(level))
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        Hermitian2::new(0.0, 0.0, AlgebraElement::zero(level))
    }

    pub fn level(&self) -> AlgebraLevel {
        self.x.level()
    }

    pub fn max_abs(&self) -> f64 {
        self.alpha.abs().max(self.beta.abs()).max(self.x.max_abs())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Hermitian2::new(
            self.alpha - other.alpha,
            self.beta - other.beta,
            self.x - other.x,
        )
    }

    pub fn as_matrix(&self) -> Matrix2K {
        let level = self.level();
        Matrix2K {
            a: AlgebraElement::scalar(level, self.alpha),
            b: self.x,
            c: self.x.conjugate(),
            d: AlgebraElement::scalar(level, self.beta),
        }
    }
}


/// Light-cone identification R^{n+2} -> h2(K).
pub fn vec_to_herm(v: &SpacetimeVector) -> Hermitian2 {
    let level = v.level();
    let n = level.dim();
    let c = v.coords();
    let x = AlgebraElement::from_coeffs(level, &c[1..=n]).expect("length matches level");
    Hermitian2::new(c[0] + c[n + 1], c[0] - c[n + 1], x)
}

/// Inverse of [`vec_to_herm`]; exact round trip.
pub fn herm_to_vec(h: &Hermitian2) -> SpacetimeVector {
    let n = h.level().dim();
    let mut coords = vec![0.0; n + 2];
    coords[0] = 0.5 * (h.alpha + h.beta);
    coords[n + 1] = 0.5 * (h.alpha - h.beta);
    coords[1..=n].copy_from_slice(h.x.coeffs());
    SpacetimeVector { coords }
}

/// det(X) = alpha beta - |x|^2; equals Q(herm_to_vec(X)).
pub fn det_herm(h: &Hermitian2) -> f64 {
    h.alpha * h.beta - h.x.norm_squared()
}

/// General 2x2 matrix over K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2K {
    pub a: AlgebraElement,
    pub b: AlgebraElement,
    pub c: AlgebraElement,
    pub d: AlgebraElement,
}

impl Matrix2K {
    pub fn new(
        a: AlgebraElement,
        b: AlgebraElement,
        c: AlgebraElement,
        d: AlgebraElement,
    ) -> Result<Self> {
        let level = a.level();
        if b.level() != level || c.level() != level || d.level() != level {
            return Err(Error::invalid("matrix entries must share one level"));
        }
        Ok(Matrix2K { a, b, c, d })
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        let z = AlgebraElement::zero(level);
        Matrix2K { a: z, b: z, c: z, d: z }
    }

    pub fn identity(level: AlgebraLevel) -> Self {
        let z = AlgebraElement::zero(level);
        let one = AlgebraElement::one(level);
        Matrix2K { a: one, b: z, c: z, d: one }
    }

    pub fn diagonal(u: AlgebraElement, v: AlgebraElement) -> Self {
        let z = AlgebraElement::zero(u.level());
        Matrix2K { a: u, b: z, c: z, d: v }
    }

    pub fn level(&self) -> AlgebraLevel {
        self.a.level()
    }

    /// Row-into-column product; each entry is a sum of two single octonion
    /// products, evaluated left-to-right.
    pub fn mul(&self, rhs: &Self) -> Self {
        Matrix2K {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Matrix2K {
            a: self.a.conjugate(),
            b: self.c.conjugate(),
            c: self.b.conjugate(),
            d: self.d.conjugate(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Matrix2K {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
            d: self.d + rhs.d,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Matrix2K {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            c: self.c - rhs.c,
            d: self.d - rhs.d,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Matrix2K {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }

    pub fn trace(&self) -> AlgebraElement {
        self.a + self.d
    }

    pub fn max_abs(&self) -> f64 {
        self.a
            .max_abs()
            .max(self.b.max_abs())
            .max(self.c.max_abs())
            .max(self.d.max_abs())
    }

    /// Max deviation from hermiticity (real diagonal, c = conj(b)).
    pub fn hermiticity_residual(&self) -> f64 {
        self.a
            .imag_part()
            .max_abs()
            .max(self.d.imag_part().max_abs())
            .max((self.c - self.b.conjugate()).max_abs())
    }

    /// Interpret as Hermitian, verifying the structure numerically.
    pub fn into_hermitian(self, tol: f64) -> Result<Hermitian2> {
        let resid = self.hermiticity_residual();
        if resid > tol {
            return Err(Error::invariant(format!(
                "matrix is not hermitian, residual {resid:.3e}"
            )));
        }
        Ok(Hermitian2::new(self.a.real_part(), self.d.real_part(), self.b))
    }
}

/// Symmetrized Jordan product X o Y = (XY + YX) / 2. The result of the
/// entrywise octonionic computation is verified Hermitian before reassembly.
pub fn jordan_product(x: &Hermitian2, y: &Hermitian2) -> Hermitian2 {
    let xm = x.as_matrix();
    let ym = y.as_matrix();
    let sym = xm.mul(&ym).add(&ym.mul(&xm)).scale(0.5);
    sym.into_hermitian(1e-12 * (1.0 + xm.max_abs() * ym.max_abs()))
        .expect("jordan product of hermitian matrices is hermitian")
}

/// det(M M^dagger) = |a|^2|d|^2 + |b|^2|c|^2 - (a conj(c))(d conj(b))
///                 - (b conj(d))(c conj(a));
/// the two product terms are mutual conjugates, so the combination is real.
pub fn det_mmdagger(m: &Matrix2K) -> f64 {
    let p1 = (m.a * m.c.conjugate()) * (m.d * m.b.conjugate());
    let p2 = (m.b * m.d.conjugate()) * (m.c * m.a.conjugate());
    let cross = p1 + p2;
    debug_assert!(
        cross.imag_part().max_abs() <= 1e-10 * (1.0 + cross.max_abs()),
        "conjugate pair must sum to a real scalar"
    );
    m.a.norm_squared() * m.d.norm_squared() + m.b.norm_squared() * m.c.norm_squared()
        - cross.real_part()
}

/// Plain (unsymmetrized) Hermitian action M X M^dagger = (M X) M^dagger.
/// Over R, C, H this preserves determinants multiplicatively; over O it does
/// not for generic M.
pub fn hermitian_action(m: &Matrix2K, x: &Hermitian2) -> Matrix2K {
    m.mul(&x.as_matrix()).mul(&m.dagger())
}

/// Lorentz bilinear form f(v, w) = v0 w0 - v1 w1 - ... on matching lengths.
pub fn lorentz_form(v: &SpacetimeVector, w: &SpacetimeVector) -> Result<f64> {
    if v.dim() != w.dim() {
        return Err(Error::invalid(format!(
            "vector lengths differ: {} vs {}",
            v.dim(),
            w.dim()
        )));
    }
    let a = v.coords();
    let b = w.coords();
    let mut s = a[0] * b[0];
    for i in 1..a.len() {
        s -= a[i] * b[i];
    }
    Ok(s)
}

/// Lorentz quadratic form Q(v) = f(v, v).
pub fn quadratic_form(v: &SpacetimeVector) -> f64 {
    lorentz_form(v, v).expect("same vector")
}

/// The metric eta = diag(1, -1, ..., -1) of the given total dimension.
pub fn eta(dim: usize) -> nalgebra::DMatrix<f64> {
    let mut m = nalgebra::DMatrix::<f64>::identity(dim, dim) * -1.0;
    m[(0, 0)] = 1.0;
    m
}
