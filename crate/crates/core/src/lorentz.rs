//! The explicit isomorphisms phi: sl(2,K) -> so(n+1,1) for K = R, C, H, O,
//! the six-rule bracket on sl(2,O) = M2'(O) + C(O') + Der(O), and the
//! so(n,1) membership checks.
//!
//! Coordinate ordering is (x0, ..., x_{n+1}) with x0 first and the diagonal
//! coordinate last, matching the light-cone identification in
//! [`crate::hermitian`].

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, AlgebraElement, AlgebraLevel};
use crate::derivations::{f_basis, is_derivation, LinearEndo8};
use crate::error::{Error, Result};
use crate::hermitian::{eta, Hermitian2, Matrix2K, SpacetimeVector};
use crate::linalg;
use crate::sampling::SampleRng;

/// Residual threshold for the least-squares projections used by
/// [`phi_inverse`] and the interior so(7) split.
pub const PROJECTION_RESIDUAL_TOL: f64 = 1e-8;

/// An (n+2) x (n+2) real matrix satisfying the Lorentz-algebra condition
/// eta m = -(eta m)^T (checked against [`SoMatrix::antisymmetry_residual`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SoMatrix {
    m: DMatrix<f64>,
}

impl SoMatrix {
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::invalid("so matrix must be square"));
        }
        AlgebraLevel::from_dim(m.nrows().wrapping_sub(2))?;
        Ok(SoMatrix { m })
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        let d = level.dim() + 2;
        SoMatrix {
            m: DMatrix::zeros(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn level(&self) -> AlgebraLevel {
        AlgebraLevel::from_dim(self.dim() - 2).expect("validated on construction")
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// Max-abs entry of eta m + (eta m)^T; zero for so(n+1,1) members.
    pub fn antisymmetry_residual(&self) -> f64 {
        let em = eta(self.dim()) * &self.m;
        linalg::max_abs(&(&em + em.transpose()))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        SoMatrix {
            m: &self.m * &other.m - &other.m * &self.m,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SoMatrix {
            m: &self.m - &other.m,
        }
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.m)
    }

    pub fn flatten(&self) -> Vec<f64> {
        let d = self.dim();
        let mut v = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                v.push(self.m[(i, j)]);
            }
        }
        v
    }

    pub fn apply(&self, v: &SpacetimeVector) -> Result<SpacetimeVector> {
        if v.dim() != self.dim() {
            return Err(Error::invalid("dimension mismatch"));
        }
        let x = nalgebra::DVector::from_column_slice(v.coords());
        let y = &self.m * x;
        SpacetimeVector::new(y.iter().copied().collect())
    }
}

/// Element of sl(2,K). For K = R, C the matrix part is fully traceless; for
/// K = H only the real part of the trace vanishes; for K = O the matrix part
/// is fully traceless and the commutator-map parameter `cd` (imaginary) and
/// derivation part `g` carry the rest of the 45 dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Element {
    level: AlgebraLevel,
    m: Matrix2K,
    cd: AlgebraElement,
    g: LinearEndo8,
}

impl Sl2Element {
    /// Build from parts, validating the per-level invariants.
    pub fn new(
        level: AlgebraLevel,
        m: Matrix2K,
        cd: AlgebraElement,
        g: LinearEndo8,
    ) -> Result<Self> {
        if m.level() != level || cd.level() != AlgebraLevel::Octonion {
            return Err(Error::invalid("component level mismatch"));
        }
        let scale = 1.0 + m.max_abs();
        match level {
            AlgebraLevel::Real | AlgebraLevel::Complex => {
                if (m.a + m.d).max_abs() > 1e-12 * scale {
                    return Err(Error::invariant("matrix part must be traceless"));
                }
            }
            AlgebraLevel::Quaternion => {
                if m.trace().real_part().abs() > 1e-12 * scale {
                    return Err(Error::invariant("Re(Tr) must vanish"));
                }
            }
            AlgebraLevel::Octonion => {
                if m.trace().max_abs() > 1e-12 * scale {
                    return Err(Error::invariant("matrix part must be traceless"));
                }
            }
        }
        if level != AlgebraLevel::Octonion {
            if cd.max_abs() != 0.0 || g.max_abs() != 0.0 {
                return Err(Error::invariant(
                    "commutator and derivation parts exist only over O",
                ));
            }
        } else {
            if cd.real_part().abs() > 1e-12 * (1.0 + cd.max_abs()) {
                return Err(Error::invariant("commutator parameter must be imaginary"));
            }
            if g.max_abs() > 0.0 && !is_derivation(&g) {
                return Err(Error::invariant("g part must be a derivation"));
            }
        }
        Ok(Sl2Element { level, m, cd, g })
    }

    /// Pure matrix part (cd = 0, g = 0).
    pub fn from_matrix(m: Matrix2K) -> Result<Self> {
        Self::new(
            m.level(),
            m,
            AlgebraElement::zero(AlgebraLevel::Octonion),
            LinearEndo8::zero(),
        )
    }

    /// Pure commutator map C_d over O.
    pub fn commutator_part(d: AlgebraElement) -> Result<Self> {
        Self::new(
            AlgebraLevel::Octonion,
            Matrix2K::zero(AlgebraLevel::Octonion),
            d,
            LinearEndo8::zero(),
        )
    }

    /// Pure derivation part over O.
    pub fn derivation_part(g: LinearEndo8) -> Result<Self> {
        Self::new(
            AlgebraLevel::Octonion,
            Matrix2K::zero(AlgebraLevel::Octonion),
            AlgebraElement::zero(AlgebraLevel::Octonion),
            g,
        )
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        Sl2Element {
            level,
            m: Matrix2K::zero(level),
            cd: AlgebraElement::zero(AlgebraLevel::Octonion),
            g: LinearEndo8::zero(),
        }
    }

    pub fn level(&self) -> AlgebraLevel {
        self.level
    }

    pub fn matrix_part(&self) -> &Matrix2K {
        &self.m
    }

    pub fn commutator_parameter(&self) -> &AlgebraElement {
        &self.cd
    }

    pub fn derivation(&self) -> &LinearEndo8 {
        &self.g
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level.name(), other.level.name()));
        }
        Ok(Sl2Element {
            level: self.level,
            m: self.m.add(&other.m),
            cd: self.cd + other.cd,
            g: self.g.add(&other.g),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Sl2Element {
            level: self.level,
            m: self.m.scale(s),
            cd: self.cd * s,
            g: self.g.scale(s),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs().max(self.cd.max_abs()).max(self.g.max_abs())
    }
}

fn embed_interior(out: &mut DMatrix<f64>, op: &LinearEndo8) {
    for i in 1..8 {
        for j in 1..8 {
            out[(i + 1, j + 1)] += op.matrix()[(i, j)];
        }
    }
}

/// The 8x8 matrix of the commutator map x -> [d, x].
pub fn commutator_map(d: &AlgebraElement) -> LinearEndo8 {
    let d = *d;
    LinearEndo8::from_basis_images(|j| {
        let x = AlgebraElement::oct_basis(j).expect("basis index");
        commutator(&d, &x).expect("octonion commutator")
    })
}

/// The explicit isomorphism phi at every level; the displayed matrices for
/// levels 0..=2 and the three-block sum for level 3.
pub fn phi(n: &Sl2Element) -> SoMatrix {
    let level = n.level();
    let dim = level.dim() + 2;
    let mut out = DMatrix::<f64>::zeros(dim, dim);
    let m = &n.m;
    match level {
        AlgebraLevel::Real => {
            let (a, b, c) = (m.a.coeff(0), m.b.coeff(0), m.c.coeff(0));
            out[(0, 1)] = b + c;
            out[(1, 0)] = b + c;
            out[(0, 2)] = 2.0 * a;
            out[(2, 0)] = 2.0 * a;
            out[(1, 2)] = c - b;
            out[(2, 1)] = b - c;
        }
        AlgebraLevel::Complex => {
            let (a0, a1) = (m.a.coeff(0), m.a.coeff(1));
            let (b0, b1) = (m.b.coeff(0), m.b.coeff(1));
            let (c0, c1) = (m.c.coeff(0), m.c.coeff(1));
            out[(0, 1)] = b0 + c0;
            out[(1, 0)] = b0 + c0;
            out[(0, 2)] = b1 - c1;
            out[(2, 0)] = b1 - c1;
            out[(0, 3)] = 2.0 * a0;
            out[(3, 0)] = 2.0 * a0;
            out[(1, 2)] = -2.0 * a1;
            out[(2, 1)] = 2.0 * a1;
            out[(1, 3)] = c0 - b0;
            out[(3, 1)] = b0 - c0;
            out[(2, 3)] = -b1 - c1;
            out[(3, 2)] = b1 + c1;
        }
        AlgebraLevel::Quaternion => {
            let a = m.a.coeffs8();
            let b = m.b.coeffs8();
            let c = m.c.coeffs8();
            let d = m.d.coeffs8();
            out[(0, 1)] = b[0] + c[0];
            out[(1, 0)] = b[0] + c[0];
            out[(0, 5)] = 2.0 * a[0];
            out[(5, 0)] = 2.0 * a[0];
            out[(1, 5)] = c[0] - b[0];
            out[(5, 1)] = b[0] - c[0];
            for i in 1..4 {
                out[(0, i + 1)] = b[i] - c[i];
                out[(i + 1, 0)] = b[i] - c[i];
                out[(1, i + 1)] = d[i] - a[i];
                out[(i + 1, 1)] = a[i] - d[i];
                out[(i + 1, 5)] = -(b[i] + c[i]);
                out[(5, i + 1)] = b[i] + c[i];
            }
            // interior rotation block from the quaternion units
            out[(2, 3)] = -(a[3] + d[3]);
            out[(3, 2)] = a[3] + d[3];
            out[(2, 4)] = a[2] + d[2];
            out[(4, 2)] = -(a[2] + d[2]);
            out[(3, 4)] = -(a[1] + d[1]);
            out[(4, 3)] = a[1] + d[1];
        }
        AlgebraLevel::Octonion => {
            let a = m.a.coeffs8();
            let b = m.b.coeffs8();
            let c = m.c.coeffs8();
            out[(0, 1)] = b[0] + c[0];
            out[(1, 0)] = b[0] + c[0];
            out[(0, 9)] = 2.0 * a[0];
            out[(9, 0)] = 2.0 * a[0];
            out[(1, 9)] = c[0] - b[0];
            out[(9, 1)] = b[0] - c[0];
            for i in 1..8 {
                out[(0, i + 1)] = b[i] - c[i];
                out[(i + 1, 0)] = b[i] - c[i];
                out[(1, i + 1)] = -2.0 * a[i];
                out[(i + 1, 1)] = 2.0 * a[i];
                out[(i + 1, 9)] = -(c[i] + b[i]);
                out[(9, i + 1)] = b[i] + c[i];
            }
            embed_interior(&mut out, &commutator_map(&n.cd));
            embed_interior(&mut out, &n.g);
        }
    }
    SoMatrix { m: out }
}

/// The defining tangent action X -> N X + X N^dagger, extended over O by the
/// entrywise action of the commutator and derivation parts. Satisfies
/// herm_to_vec(tangent_action(N, X)) = phi(N) herm_to_vec(X).
pub fn tangent_action(n: &Sl2Element, x: &Hermitian2) -> Result<Hermitian2> {
    if n.level() != x.level() {
        return Err(Error::LevelMismatch(n.level().name(), x.level().name()));
    }
    let xm = x.as_matrix();
    let mut out = n.m.mul(&xm).add(&xm.mul(&n.m.dagger()));
    if n.level() == AlgebraLevel::Octonion {
        let act = |v: &AlgebraElement| commutator(&n.cd, v).expect("octonions") + n.g.apply(v);
        out = out.add(&Matrix2K::new(
            act(&xm.a),
            act(&xm.b),
            act(&xm.c),
            act(&xm.d),
        )?);
    }
    let scale = 1.0 + n.max_abs() * x.max_abs();
    out.into_hermitian(1e-11 * scale)
}

/// Basis of sl(2,K): 3 / 6 / 15 / 45 elements for levels 0..=3.
pub fn sl2_basis(level: AlgebraLevel) -> Vec<Sl2Element> {
    let n = level.dim();
    let mut basis = Vec::new();
    let unit = |i: usize| AlgebraElement::basis(level, i).expect("basis index");
    let zero = AlgebraElement::zero(level);
    // diagonal part: diag(e_i, -e_i); at level H the imaginary diagonal
    // entries are independent, so diag(e_i, 0) and diag(0, e_i) are used.
    match level {
        AlgebraLevel::Quaternion => {
            basis.push(
                Sl2Element::from_matrix(Matrix2K::diagonal(unit(0), -unit(0))).expect("traceless"),
            );
            for i in 1..n {
                basis.push(
                    Sl2Element::from_matrix(Matrix2K::diagonal(unit(i), zero)).expect("Re Tr = 0"),
                );
                basis.push(
                    Sl2Element::from_matrix(Matrix2K::diagonal(zero, unit(i))).expect("Re Tr = 0"),
                );
            }
        }
        _ => {
            for i in 0..n {
                basis.push(
                    Sl2Element::from_matrix(Matrix2K::diagonal(unit(i), -unit(i)))
                        .expect("traceless"),
                );
            }
        }
    }
    for i in 0..n {
        let m = Matrix2K::new(zero, unit(i), zero, zero).expect("levels match");
        basis.push(Sl2Element::from_matrix(m).expect("traceless"));
        let m = Matrix2K::new(zero, zero, unit(i), zero).expect("levels match");
        basis.push(Sl2Element::from_matrix(m).expect("traceless"));
    }
    if level == AlgebraLevel::Octonion {
        for i in 1..8 {
            basis.push(
                Sl2Element::commutator_part(AlgebraElement::oct_basis(i).expect("basis index"))
                    .expect("imaginary"),
            );
        }
        for f in f_basis() {
            basis.push(Sl2Element::derivation_part(f).expect("derivation"));
        }
    }
    basis
}

/// Decompose an interior so(7) operator (killing e0) into a commutator map
/// plus a derivation, by least squares over the 7 + 14 basis operators.
pub fn decompose_so7(k: &LinearEndo8) -> Result<(AlgebraElement, LinearEndo8)> {
    let mut basis_ops: Vec<LinearEndo8> = (1..8)
        .map(|i| commutator_map(&AlgebraElement::oct_basis(i).expect("basis index")))
        .collect();
    basis_ops.extend(f_basis());
    let cols: Vec<Vec<f64>> = basis_ops.iter().map(|op| op.flatten()).collect();
    let (coeffs, resid) = linalg::lstsq(&cols, &k.flatten());
    if resid > PROJECTION_RESIDUAL_TOL {
        return Err(Error::NotInImage(resid));
    }
    let mut d = AlgebraElement::zero(AlgebraLevel::Octonion);
    for (i, c) in coeffs.iter().take(7).enumerate() {
        d.set_coeff(i + 1, *c).expect("imaginary index");
    }
    let mut g = LinearEndo8::zero();
    for (c, op) in coeffs[7..].iter().zip(&basis_ops[7..]) {
        g = g.add(&op.scale(*c));
    }
    Ok((d, g))
}

/// Recover the sl(2,K) element from its phi image by least squares over the
/// image of [`sl2_basis`]; errors when the residual exceeds the projection
/// threshold (the matrix is not in the image).
pub fn phi_inverse(s: &SoMatrix) -> Result<Sl2Element> {
    let level = s.level();
    let basis = sl2_basis(level);
    let cols: Vec<Vec<f64>> = basis.iter().map(|b| phi(b).flatten()).collect();
    let (coeffs, resid) = linalg::lstsq(&cols, &s.flatten());
    if resid > PROJECTION_RESIDUAL_TOL {
        return Err(Error::NotInImage(resid));
    }
    let mut out = Sl2Element::zero(level);
    for (c, b) in coeffs.iter().zip(&basis) {
        out = out.add(&b.scale(*c)).expect("same level");
    }
    Ok(out)
}

/// The pairing of off-diagonal slots in the derivation part of [M, N] is
/// crosswise (upper with lower); see `g_mn`.
fn g_mn(m: &Matrix2K, n: &Matrix2K) -> LinearEndo8 {
    use crate::derivations::d_ab;
    d_ab(&m.a, &n.a)
        .scale(2.0 / 3.0)
        .add(&d_ab(&m.b, &n.c).scale(1.0 / 3.0))
        .add(&d_ab(&m.c, &n.b).scale(1.0 / 3.0))
}

/// The six-rule bracket on sl(2,O), by case analysis on the components:
///
/// ```text
/// [C_d, C_d']  = C_d C_d' - C_d' C_d          (split back into C + Der)
/// [g, g']      = g g' - g' g
/// [g, C_d]     = C_{g(d)}
/// [C_d, M]     = entrywise C_d over M
/// [g, M]       = entrywise g over M
/// [M, N]       = (MN - NM - Tr(MN - NM)/2 I) + C_{Tr(MN - NM)/6} + g_{M,N}
/// ```
pub fn sl2o_bracket(a: &Sl2Element, b: &Sl2Element) -> Result<Sl2Element> {
    if a.level() != AlgebraLevel::Octonion || b.level() != AlgebraLevel::Octonion {
        return Err(Error::LevelMismatch(a.level().name(), b.level().name()));
    }
    let level = AlgebraLevel::Octonion;
    let (ma, mb) = (&a.m, &b.m);
    // [M, N]
    let mm = ma.mul(mb).sub(&mb.mul(ma));
    let t = mm.trace();
    let half_t = t * 0.5;
    let mut m_part = Matrix2K::new(mm.a - half_t, mm.b, mm.c, mm.d - half_t)?;
    let mut d_part = t.imag_part() * (1.0 / 6.0);
    let mut g_part = g_mn(ma, mb);
    // [C_d, M] and [g, M], entrywise, with signs from antisymmetry
    let entrywise = |f: &dyn Fn(&AlgebraElement) -> AlgebraElement, m: &Matrix2K| {
        Matrix2K::new(f(&m.a), f(&m.b), f(&m.c), f(&m.d)).expect("levels match")
    };
    let ca = |v: &AlgebraElement| commutator(&a.cd, v).expect("octonions");
    let cb = |v: &AlgebraElement| commutator(&b.cd, v).expect("octonions");
    let ga = |v: &AlgebraElement| a.g.apply(v);
    let gb = |v: &AlgebraElement| b.g.apply(v);
    m_part = m_part
        .add(&entrywise(&ca, mb))
        .sub(&entrywise(&cb, ma))
        .add(&entrywise(&ga, mb))
        .sub(&entrywise(&gb, ma));
    // [g, C_d] = C_{g(d)}
    d_part = d_part + a.g.apply(&b.cd) - b.g.apply(&a.cd);
    // [g, g']
    g_part = g_part.add(&a.g.bracket(&b.g));
    // [C_d, C_d'] splits into a commutator map plus a derivation
    if a.cd.max_abs() != 0.0 && b.cd.max_abs() != 0.0 {
        let k = commutator_map(&a.cd).bracket(&commutator_map(&b.cd));
        let (dd, gg) = decompose_so7(&k)?;
        d_part = d_part + dd;
        g_part = g_part.add(&gg);
    }
    Sl2Element::new(level, m_part, d_part, g_part)
}

/// Bracket at levels 0..=2: the plain matrix commutator (which stays in
/// sl(2,K)).
pub fn matrix_bracket(a: &Sl2Element, b: &Sl2Element) -> Result<Sl2Element> {
    if a.level() != b.level() {
        return Err(Error::LevelMismatch(a.level().name(), b.level().name()));
    }
    let mm = a.m.mul(&b.m).sub(&b.m.mul(&a.m));
    Sl2Element::from_matrix(mm)
}

/// Outcome of the homomorphism fuzz check at one level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub level: u8,
    pub samples: usize,
    pub max_bracket_residual: f64,
    pub max_action_residual: f64,
    pub max_antisymmetry_residual: f64,
    pub image_rank: usize,
    pub expected_rank: usize,
}

impl HomomorphismReport {
    pub fn passed(&self, bracket_tol: f64, action_tol: f64, antisym_tol: f64) -> bool {
        self.max_bracket_residual < bracket_tol
            && self.max_action_residual < action_tol
            && self.max_antisymmetry_residual < antisym_tol
            && self.image_rank == self.expected_rank
    }
}

/// Random element of sl(2,K) with O(1) coefficients.
pub fn random_sl2(rng: &mut SampleRng, level: AlgebraLevel) -> Sl2Element {
    use rand::Rng;
    let basis = sl2_basis(level);
    let mut out = Sl2Element::zero(level);
    for b in &basis {
        out = out
            .add(&b.scale(rng.gen_range(-1.0..=1.0)))
            .expect("same level");
    }
    out
}

/// Verify `phi([A,B]) = [phi A, phi B]` over random pairs, the action
/// consistency herm(tangent_action) = phi * vec, the so-condition, and the
/// image rank. For level 3 the bracket is [`sl2o_bracket`], which
/// simultaneously validates the bracket-rule decomposition.
pub fn check_homomorphism(level: AlgebraLevel, samples: usize, rng: &mut SampleRng) -> HomomorphismReport {
    use rand::Rng;
    let mut max_bracket = 0.0f64;
    let mut max_action = 0.0f64;
    let mut max_antisym = 0.0f64;
    for _ in 0..samples {
        let a = random_sl2(rng, level);
        let b = random_sl2(rng, level);
        let (pa, pb) = (phi(&a), phi(&b));
        max_antisym = max_antisym
            .max(pa.antisymmetry_residual())
            .max(pb.antisymmetry_residual());
        let br = if level == AlgebraLevel::Octonion {
            sl2o_bracket(&a, &b).expect("octonion pair")
        } else {
            matrix_bracket(&a, &b).expect("same level")
        };
        max_bracket = max_bracket.max(phi(&br).sub(&pa.bracket(&pb)).max_abs());
        // action cross-check on a random hermitian matrix
        let x = Hermitian2::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            crate::sampling::uniform_element(rng, level, 1.0),
        );
        let lhs = crate::hermitian::herm_to_vec(&tangent_action(&a, &x).expect("levels match"));
        let rhs = pa
            .apply(&crate::hermitian::herm_to_vec(&x))
            .expect("dimensions match");
        let diff = lhs
            .coords()
            .iter()
            .zip(rhs.coords())
            .fold(0.0f64, |acc, (u, v)| acc.max((u - v).abs()));
        max_action = max_action.max(diff);
    }
    let basis = sl2_basis(level);
    let rows: Vec<Vec<f64>> = basis.iter().map(|b| phi(b).flatten()).collect();
    let image_rank = linalg::rank(&rows, linalg::RANK_PIVOT_TOL);
    HomomorphismReport {
        level: level.index(),
        samples,
        max_bracket_residual: max_bracket,
        max_action_residual: max_action,
        max_antisymmetry_residual: max_antisym,
        image_rank,
        expected_rank: basis.len(),
    }
}
