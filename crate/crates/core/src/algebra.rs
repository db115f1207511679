//! Cayley-Dickson normed division algebras R, C, H, O with exact basis
//! products.
//!
//! Elements are coefficient vectors over the basis {e0, ..., e_{2^n - 1}}
//! with e0 = 1. Levels 0..=2 use the standard real, complex and quaternion
//! tables (i = e1, j = e2, k = e3, ij = k). Level 3 uses the frozen octonion
//! table below.
//!
//! The octonion table is the unique oriented Fano-plane structure (out of the
//! 480 valid ones) satisfying the four pinned products
//!
//! ```text
//! e3 e5 = e1,   e1 e4 = -e6,   e1 e2 = e7,   e3 e4 = e7
//! ```
//!
//! and its seven quaternionic triples, written as cycles e_a e_b = e_c, are
//!
//! ```text
//! (1,2,7) (1,3,5) (1,6,4) (2,5,4) (2,6,3) (3,4,7) (5,6,7)
//! ```
//!
//! Uniqueness is re-derived by the brute-force search in the integration
//! tests.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Which Cayley-Dickson algebra an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlgebraLevel {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl AlgebraLevel {
    pub const ALL: [AlgebraLevel; 4] = [
        AlgebraLevel::Real,
        AlgebraLevel::Complex,
        AlgebraLevel::Quaternion,
        AlgebraLevel::Octonion,
    ];

    /// Dimension 2^n of the algebra over the reals.
    pub const fn dim(self) -> usize {
        match self {
            AlgebraLevel::Real => 1,
            AlgebraLevel::Complex => 2,
            AlgebraLevel::Quaternion => 4,
            AlgebraLevel::Octonion => 8,
        }
    }

    pub const fn index(self) -> u8 {
        match self {
            AlgebraLevel::Real => 0,
            AlgebraLevel::Complex => 1,
            AlgebraLevel::Quaternion => 2,
            AlgebraLevel::Octonion => 3,
        }
    }

    /// Levels above 3 (sedenions and beyond) are rejected, not silently
    /// supported: norm multiplicativity fails there.
    pub fn from_index(n: u8) -> Result<Self> {
        match n {
            0 => Ok(AlgebraLevel::Real),
            1 => Ok(AlgebraLevel::Complex),
            2 => Ok(AlgebraLevel::Quaternion),
            3 => Ok(AlgebraLevel::Octonion),
            other => Err(Error::InvalidLevel(other)),
        }
    }

    /// Level whose algebra has the given dimension (1, 2, 4 or 8).
    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            1 => Ok(AlgebraLevel::Real),
            2 => Ok(AlgebraLevel::Complex),
            4 => Ok(AlgebraLevel::Quaternion),
            8 => Ok(AlgebraLevel::Octonion),
            _ => Err(Error::CoefficientLength {
                expected: 8,
                got: dim,
            }),
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            AlgebraLevel::Real => "R",
            AlgebraLevel::Complex => "C",
            AlgebraLevel::Quaternion => "H",
            AlgebraLevel::Octonion => "O",
        }
    }
}

impl fmt::Display for AlgebraLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signed basis products of one Cayley-Dickson level:
/// `e_i e_j = sign[i][j] * e_{index[i][j]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisProductTable {
    pub level: AlgebraLevel,
    pub sign: [[i8; 8]; 8],
    pub index: [[u8; 8]; 8],
}

/// Frozen octonion signs (see the module docs for the derivation).
const OCT_SIGN: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, 1, -1, -1, 1, -1],
    [1, -1, -1, -1, -1, 1, 1, 1],
    [1, -1, 1, -1, 1, 1, -1, -1],
    [1, 1, 1, -1, -1, -1, -1, 1],
    [1, 1, -1, -1, 1, -1, 1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, 1, -1, 1, -1, 1, -1, -1],
];

/// Frozen octonion basis indices.
const OCT_INDEX: [[u8; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 7, 5, 6, 3, 4, 2],
    [2, 7, 0, 6, 5, 4, 3, 1],
    [3, 5, 6, 0, 7, 1, 2, 4],
    [4, 6, 5, 7, 0, 2, 1, 3],
    [5, 3, 4, 1, 2, 0, 7, 6],
    [6, 4, 3, 2, 1, 7, 0, 5],
    [7, 2, 1, 4, 3, 6, 5, 0],
];

/// The seven oriented quaternionic triples of the frozen table,
/// each `[a, b, c]` meaning `e_a e_b = e_c` (cyclically).
pub const OCT_TRIPLES: [[u8; 3]; 7] = [
    [1, 2, 7],
    [1, 3, 5],
    [1, 6, 4],
    [2, 5, 4],
    [2, 6, 3],
    [3, 4, 7],
    [5, 6, 7],
];

const fn lower_table(level: AlgebraLevel, cycles: &[[u8; 3]]) -> BasisProductTable {
    let n = level.dim();
    let mut sign = [[0i8; 8]; 8];
    let mut index = [[0u8; 8]; 8];
    let mut k = 0;
    while k < n {
        sign[0][k] = 1;
        sign[k][0] = 1;
        index[0][k] = k as u8;
        index[k][0] = k as u8;
        k += 1;
    }
    let mut i = 1;
    while i < n {
        sign[i][i] = -1;
        index[i][i] = 0;
        i += 1;
    }
    let mut c = 0;
    while c < cycles.len() {
        let [a, b, t] = cycles[c];
        let mut r = 0;
        while r < 3 {
            let (x, y, z) = match r {
                0 => (a, b, t),
                1 => (b, t, a),
                _ => (t, a, b),
            };
            sign[x as usize][y as usize] = 1;
            index[x as usize][y as usize] = z;
            sign[y as usize][x as usize] = -1;
            index[y as usize][x as usize] = z;
            r += 1;
        }
        c += 1;
    }
    BasisProductTable { level, sign, index }
}

const REAL_TABLE: BasisProductTable = lower_table(AlgebraLevel::Real, &[]);
const COMPLEX_TABLE: BasisProductTable = lower_table(AlgebraLevel::Complex, &[]);
const QUATERNION_TABLE: BasisProductTable = lower_table(AlgebraLevel::Quaternion, &[[1, 2, 3]]);
const OCTONION_TABLE: BasisProductTable = BasisProductTable {
    level: AlgebraLevel::Octonion,
    sign: OCT_SIGN,
    index: OCT_INDEX,
};

impl BasisProductTable {
    pub const fn for_level(level: AlgebraLevel) -> &'static BasisProductTable {
        match level {
            AlgebraLevel::Real => &REAL_TABLE,
            AlgebraLevel::Complex => &COMPLEX_TABLE,
            AlgebraLevel::Quaternion => &QUATERNION_TABLE,
            AlgebraLevel::Octonion => &OCTONION_TABLE,
        }
    }

    pub const fn octonion() -> &'static BasisProductTable {
        &OCTONION_TABLE
    }

    /// Signed product of two basis units: `e_i e_j = sign * e_k`.
    pub fn product(&self, i: usize, j: usize) -> Result<(i8, usize)> {
        let n = self.level.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange(i, self.level.name()));
        }
        if j >= n {
            return Err(Error::IndexOutOfRange(j, self.level.name()));
        }
        Ok((self.sign[i][j], self.index[i][j] as usize))
    }
}

/// Octonion basis product `e_i e_j` under the frozen table.
pub fn basis_product(i: usize, j: usize) -> Result<(i8, usize)> {
    OCTONION_TABLE.product(i, j)
}

/// An element of one of the four normed division algebras, stored as its
/// coefficient vector over {e0, ..., e_{2^n-1}}. Coefficients above the
/// level's dimension are structurally zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    level: AlgebraLevel,
    coeffs: [f64; 8],
}

impl AlgebraElement {
    pub fn zero(level: AlgebraLevel) -> Self {
        AlgebraElement {
            level,
            coeffs: [0.0; 8],
        }
    }

    pub fn one(level: AlgebraLevel) -> Self {
        Self::scalar(level, 1.0)
    }

    pub fn scalar(level: AlgebraLevel, value: f64) -> Self {
        let mut coeffs = [0.0; 8];
        coeffs[0] = value;
        AlgebraElement { level, coeffs }
    }

    /// Basis unit `e_i`.
    pub fn basis(level: AlgebraLevel, i: usize) -> Result<Self> {
        if i >= level.dim() {
            return Err(Error::IndexOutOfRange(i, level.name()));
        }
        let mut coeffs = [0.0; 8];
        coeffs[i] = 1.0;
        Ok(AlgebraElement { level, coeffs })
    }

    /// Octonion basis unit `e_i`, the common case.
    pub fn oct_basis(i: usize) -> Result<Self> {
        Self::basis(AlgebraLevel::Octonion, i)
    }

    pub fn from_coeffs(level: AlgebraLevel, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != level.dim() {
            return Err(Error::CoefficientLength {
                expected: level.dim(),
                got: coeffs.len(),
            });
        }
        let mut c = [0.0; 8];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(AlgebraElement { level, coeffs: c })
    }

    pub fn octonion(coeffs: [f64; 8]) -> Self {
        AlgebraElement {
            level: AlgebraLevel::Octonion,
            coeffs,
        }
    }

    pub fn level(&self) -> AlgebraLevel {
        self.level
    }

    /// Coefficients over the basis; length equals `2^level`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.level.dim()]
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs[i]
    }

    pub(crate) fn coeffs8(&self) -> &[f64; 8] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, v: f64) -> Result<()> {
        if i >= self.level.dim() {
            return Err(Error::IndexOutOfRange(i, self.level.name()));
        }
        self.coeffs[i] = v;
        Ok(())
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level.name(), other.level.name()));
        }
        Ok(())
    }

    /// Bilinear extension of the basis product table.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let table = BasisProductTable::for_level(self.level);
        let n = self.level.dim();
        let mut coeffs = [0.0; 8];
        for i in 0..n {
            let xi = self.coeffs[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let yj = other.coeffs[j];
                if yj == 0.0 {
                    continue;
                }
                coeffs[table.index[i][j] as usize] += f64::from(table.sign[i][j]) * xi * yj;
            }
        }
        Ok(AlgebraElement {
            level: self.level,
            coeffs,
        })
    }

    pub fn conjugate(&self) -> Self {
        let mut coeffs = self.coeffs;
        for c in coeffs.iter_mut().skip(1) {
            *c = -*c;
        }
        AlgebraElement {
            level: self.level,
            coeffs,
        }
    }

    pub fn real_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn imag_part(&self) -> Self {
        let mut out = *self;
        out.coeffs[0] = 0.0;
        out
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product of coefficient vectors; equals Re(x * conj(y)).
    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Multiplicative inverse conj(x) / |x|^2.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if n2 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conjugate() * (1.0 / n2))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        *self * s
    }
}

/// Serialized as the plain coefficient array; the level is inferred from the
/// array length (1, 2, 4 or 8) on deserialization.
impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<f64>::deserialize(deserializer)?;
        let level = AlgebraLevel::from_dim(coeffs.len()).map_err(serde::de::Error::custom)?;
        AlgebraElement::from_coeffs(level, &coeffs).map_err(serde::de::Error::custom)
    }
}

impl Index<usize> for AlgebraElement {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coeffs[i]
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.level, rhs.level, "level mismatch in +");
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        AlgebraElement {
            level: self.level,
            coeffs,
        }
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> Self {
        let mut coeffs = self.coeffs;
        for c in &mut coeffs {
            *c = -*c;
        }
        AlgebraElement {
            level: self.level,
            coeffs,
        }
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    /// Panics on level mismatch; use [`AlgebraElement::try_mul`] for the
    /// checked path.
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("level mismatch in *")
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> Self {
        let mut coeffs = self.coeffs;
        for c in &mut coeffs {
            *c *= s;
        }
        AlgebraElement {
            level: self.level,
            coeffs,
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if first {
                write!(f, "{c}e{i}")?;
                first = false;
            } else if *c < 0.0 {
                write!(f, " - {}e{i}", -c)?;
            } else {
                write!(f, " + {c}e{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Commutator [x, y] = xy - yx.
pub fn commutator(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    Ok(x.try_mul(y)? - y.try_mul(x)?)
}

/// Associator [a, b, c] = (ab)c - a(bc).
pub fn associator(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> Result<AlgebraElement> {
    Ok(a.try_mul(b)?.try_mul(c)? - a.try_mul(&b.try_mul(c)?)?)
}

/// Multiplication table export: the oriented triples and the two pinned
/// products, with deterministic ordering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableExport {
    pub triples: Vec<[u8; 3]>,
    pub examples: std::collections::BTreeMap<String, String>,
}

pub fn table_export() -> TableExport {
    let mut examples = std::collections::BTreeMap::new();
    for (i, j) in [(3usize, 5usize), (1, 4)] {
        let (s, k) = basis_product(i, j).expect("indices in range");
        let v = if s < 0 {
            format!("-e{k}")
        } else {
            format!("e{k}")
        };
        examples.insert(format!("e{i}*e{j}"), v);
    }
    TableExport {
        triples: OCT_TRIPLES.to_vec(),
        examples,
    }
}
