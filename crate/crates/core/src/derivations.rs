//! The derivation algebra of the octonions, realized as 8x8 real matrices
//! acting on coefficient vectors, in two bases: the canonical derivations
//! D_{a,b} and the paired-rotation generators F^k_{ij}, together with the
//! closed-form exponential into SO(7).

use nalgebra::SMatrix;

use crate::algebra::{associator, commutator, AlgebraElement, BasisProductTable};
use crate::error::{Error, Result};

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// A real-linear map on O viewed as R^8. Houses derivations, plane rotations
/// and automorphisms; sub-roles add their own constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearEndo8 {
    m: Matrix8,
}

impl LinearEndo8 {
    pub fn from_matrix(m: Matrix8) -> Self {
        LinearEndo8 { m }
    }

    pub fn identity() -> Self {
        LinearEndo8 {
            m: Matrix8::identity(),
        }
    }

    pub fn zero() -> Self {
        LinearEndo8 { m: Matrix8::zeros() }
    }

    /// Build the matrix column-by-column from images of the basis units.
    pub fn from_basis_images(f: impl Fn(usize) -> AlgebraElement) -> Self {
        let mut m = Matrix8::zeros();
        for j in 0..8 {
            let img = f(j);
            for i in 0..8 {
                m[(i, j)] = img.coeff(i);
            }
        }
        LinearEndo8 { m }
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.m
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = [0.0; 8];
        for (i, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..8 {
                s += self.m[(i, j)] * x.coeff(j);
            }
            *o = s;
        }
        AlgebraElement::octonion(out)
    }

    pub fn compose(&self, inner: &Self) -> Self {
        LinearEndo8 { m: self.m * inner.m }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearEndo8 { m: self.m + other.m }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LinearEndo8 { m: self.m - other.m }
    }

    pub fn scale(&self, s: f64) -> Self {
        LinearEndo8 { m: self.m * s }
    }

    /// Matrix commutator [A, B] = AB - BA.
    pub fn bracket(&self, other: &Self) -> Self {
        LinearEndo8 {
            m: self.m * other.m - other.m * self.m,
        }
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (self.m - other.m).norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.frobenius_distance(other) < tol
    }

    pub fn transpose(&self) -> Self {
        LinearEndo8 { m: self.m.transpose() }
    }

    /// Rows flattened row-major, for rank audits.
    pub fn flatten(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                v.push(self.m[(i, j)]);
            }
        }
        v
    }

    /// Max deviation from the Leibniz rule D(xy) = D(x)y + xD(y) over all
    /// basis pairs.
    pub fn derivation_residual(&self) -> f64 {
        let e = |i: usize| AlgebraElement::oct_basis(i).expect("basis index");
        let mut worst = 0.0f64;
        for i in 0..8 {
            for j in 0..8 {
                let lhs = self.apply(&(e(i) * e(j)));
                let rhs = self.apply(&e(i)) * e(j) + e(i) * self.apply(&e(j));
                worst = worst.max((lhs - rhs).max_abs());
            }
        }
        worst
    }
}

/// True iff the Leibniz rule holds on all 64 basis pairs to 1e-10.
pub fn is_derivation(d: &LinearEndo8) -> bool {
    d.derivation_residual() < 1e-10
}

/// Canonical derivation D_{a,b}: x -> `[[a,b],x] - 3[a,b,x]` (closed form).
pub fn d_ab(a: &AlgebraElement, b: &AlgebraElement) -> LinearEndo8 {
    let ab = commutator(a, b).expect("octonion commutator");
    LinearEndo8::from_basis_images(|j| {
        let x = AlgebraElement::oct_basis(j).expect("basis index");
        commutator(&ab, &x).expect("level") - associator(a, b, &x).expect("level") * 3.0
    })
}

/// D_{a,b} as `[L_a,L_b] + [L_a,R_b] + [R_a,R_b]` acting on x.
pub fn d_ab_operator_form(a: &AlgebraElement, b: &AlgebraElement) -> LinearEndo8 {
    let left = |u: AlgebraElement| LinearEndo8::from_basis_images(|j| {
        u * AlgebraElement::oct_basis(j).expect("basis index")
    });
    let right = |u: AlgebraElement| LinearEndo8::from_basis_images(|j| {
        AlgebraElement::oct_basis(j).expect("basis index") * u
    });
    let (la, lb) = (left(*a), left(*b));
    let (ra, rb) = (right(*a), right(*b));
    la.bracket(&lb).add(&la.bracket(&rb)).add(&ra.bracket(&rb))
}

/// D_{a,b} as x -> `([[a,x],b] + [a,[b,x]] + [[a,b],x]) / 2`.
pub fn d_ab_nested_form(a: &AlgebraElement, b: &AlgebraElement) -> LinearEndo8 {
    LinearEndo8::from_basis_images(|j| {
        let x = AlgebraElement::oct_basis(j).expect("basis index");
        let t = commutator(&commutator(a, &x).unwrap(), b).unwrap()
            + commutator(a, &commutator(b, &x).unwrap()).unwrap()
            + commutator(&commutator(a, b).unwrap(), &x).unwrap();
        t * 0.5
    })
}

fn check_imaginary_index(i: usize) -> Result<()> {
    if i == 0 || i > 7 {
        return Err(Error::IndexOutOfRange(i, "imaginary octonion units"));
    }
    Ok(())
}

/// Rotation generator in the (e_i, e_j) plane:
/// R_{ij}(x) = Re(x e_j) e_i - Re(x e_i) e_j. Not a derivation on its own.
pub fn r_ij(i: usize, j: usize) -> Result<LinearEndo8> {
    check_imaginary_index(i)?;
    check_imaginary_index(j)?;
    if i == j {
        return Err(Error::invalid(format!("r_ij needs distinct indices, got ({i},{i})")));
    }
    Ok(LinearEndo8::from_basis_images(|c| {
        let x = AlgebraElement::oct_basis(c).expect("basis index");
        let ei = AlgebraElement::oct_basis(i).expect("basis index");
        let ej = AlgebraElement::oct_basis(j).expect("basis index");
        ei * (x * ej).real_part() - ej * (x * ei).real_part()
    }))
}

/// Paired rotation F^k_{ij} = R_{ia} + R_{jb} where e_i e_a = e_k = -e_j e_b.
/// When the table entry carries the opposite sign, the sign is absorbed into
/// the rotation (R_{i,-a} := -R_{i,a}).
pub fn f_kij(k: usize, i: usize, j: usize) -> Result<LinearEndo8> {
    check_imaginary_index(k)?;
    check_imaginary_index(i)?;
    check_imaginary_index(j)?;
    if i == j || i == k || j == k {
        return Err(Error::invalid(format!(
            "f_kij needs distinct indices, got ({k},{i},{j})"
        )));
    }
    let table = BasisProductTable::octonion();
    // a is the third point of the line through i and k: e_i e_a = s_a e_k
    let a = table.index[i][k] as usize;
    let (sa, ka) = table.product(i, a)?;
    debug_assert_eq!(ka, k);
    let b = table.index[j][k] as usize;
    let (sb, kb) = table.product(j, b)?;
    debug_assert_eq!(kb, k);
    if a == j || b == i {
        // i, j, k lie on one line; the two rotations collapse and the
        // construction degenerates
        return Err(Error::invalid(format!(
            "no valid (a, b) pair for ({k},{i},{j}): the indices are collinear"
        )));
    }
    // R_{ia} weighted so that the rotated product contributes +e_k, and
    // R_{jb} so that it contributes -e_k.
    let term_a = r_ij(i, a)?.scale(f64::from(sa));
    let term_b = r_ij(j, b)?.scale(-f64::from(sb));
    Ok(term_a.add(&term_b))
}

/// Index triples (k, i, j) of the 14-element F-basis.
pub const F_BASIS_TRIPLES: [(usize, usize, usize); 14] = [
    (1, 2, 4),
    (1, 2, 5),
    (2, 5, 1),
    (2, 5, 3),
    (3, 2, 1),
    (3, 2, 7),
    (4, 2, 3),
    (4, 1, 3),
    (5, 1, 7),
    (5, 1, 2),
    (6, 3, 1),
    (6, 7, 1),
    (7, 3, 6),
    (7, 1, 6),
];

/// The 14 basis derivations F^k_{ij}.
pub fn f_basis() -> Vec<LinearEndo8> {
    F_BASIS_TRIPLES
        .iter()
        .map(|&(k, i, j)| f_kij(k, i, j).expect("basis triples are constructible"))
        .collect()
}

/// All 21 canonical pairs (i, j), i < j, indexing D_{e_i, e_j}.
pub fn d_basis_pairs() -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(21);
    for i in 1..8 {
        for j in (i + 1)..8 {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Max-abs residual of F^3 + F.
pub fn cube_residual(f: &LinearEndo8) -> f64 {
    let f3 = f.compose(f).compose(f);
    f3.add(f).max_abs()
}

/// Closed-form exponential exp(tF) = Id + sin(t) F + (1 - cos(t)) F^2,
/// valid for generators with F^3 = -F (checked to 1e-10).
pub fn exp_f(t: f64, f: &LinearEndo8) -> Result<LinearEndo8> {
    let resid = cube_residual(f);
    if resid > 1e-10 {
        return Err(Error::invariant(format!(
            "exp_f requires F^3 = -F, residual {resid:.3e}"
        )));
    }
    let f2 = f.compose(f);
    Ok(LinearEndo8::identity()
        .add(&f.scale(t.sin()))
        .add(&f2.scale(1.0 - t.cos())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::sampling::{stream_rng, uniform_element};
    use crate::algebra::AlgebraLevel;

    fn e(i: usize) -> AlgebraElement {
        AlgebraElement::oct_basis(i).unwrap()
    }

    #[test]
    fn three_printed_forms_agree() {
        let mut rng = stream_rng(7, 0);
        for _ in 0..20 {
            let a = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let b = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let d = d_ab(&a, &b);
            assert!(d.approx_eq(&d_ab_operator_form(&a, &b), 1e-12));
            assert!(d.approx_eq(&d_ab_nested_form(&a, &b), 1e-12));
        }
    }

    #[test]
    fn d_ab_basics() {
        assert!(d_ab(&e(1), &e(1)).max_abs() == 0.0);
        let mut rng = stream_rng(7, 1);
        let a = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
        let b = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
        let d = d_ab(&a, &b);
        assert!(d.apply(&e(0)).is_zero(1e-14));
        assert!(is_derivation(&d));
        // value fixed by the frozen table: D_{e1,e2}(e4) = 2 e3
        let img = d_ab(&e(1), &e(2)).apply(&e(4));
        assert!((img - e(3) * 2.0).is_zero(1e-14));
    }

    #[test]
    fn r_ij_is_plane_rotation_generator() {
        let r = r_ij(1, 2).unwrap();
        assert!((r.apply(&e(1)) - e(2)).is_zero(0.0));
        assert!((r.apply(&e(2)) + e(1)).is_zero(0.0));
        assert!(r.apply(&e(5)).is_zero(0.0));
        assert!(r.approx_eq(&r_ij(2, 1).unwrap().scale(-1.0), 1e-15));
        assert!(!is_derivation(&r));
        assert!(r_ij(1, 1).is_err());
        assert!(r_ij(0, 2).is_err());
    }

    #[test]
    fn f_basis_members_are_derivations() {
        for f in f_basis() {
            assert!(f.apply(&e(0)).is_zero(0.0));
            assert!(is_derivation(&f));
            assert!(cube_residual(&f) < 1e-12);
            // F^4 = -F^2 and F^5 = F follow
            let f2 = f.compose(&f);
            assert!(f2.compose(&f2).add(&f2).max_abs() < 1e-12);
            assert!(f2.compose(&f2).compose(&f).sub(&f).max_abs() < 1e-12);
        }
        assert!(f_kij(1, 1, 2).is_err());
        assert!(f_kij(0, 1, 2).is_err());
        // collinear triples have no valid (a, b) pair: {1,2,7} is a line
        assert!(f_kij(7, 1, 2).is_err());
    }

    #[test]
    fn derivations_kill_e0_and_are_antisymmetric_on_imaginaries() {
        let mut rng = stream_rng(7, 3);
        let a = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
        let b = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
        let mut ops = f_basis();
        ops.push(d_ab(&a, &b));
        for op in &ops {
            let m = op.matrix();
            for j in 0..8 {
                assert_eq!(m[(j, 0)], 0.0);
                assert!(m[(0, j)].abs() < 1e-14);
            }
            let skew = op.add(&op.transpose());
            assert!(skew.max_abs() < 1e-13);
        }
    }

    #[test]
    fn spans_have_rank_14_and_coincide() {
        let ds: Vec<Vec<f64>> = d_basis_pairs()
            .iter()
            .map(|&(i, j)| d_ab(&e(i), &e(j)).flatten())
            .collect();
        let fs: Vec<Vec<f64>> = f_basis().iter().map(|f| f.flatten()).collect();
        assert_eq!(linalg::rank(&ds, linalg::RANK_PIVOT_TOL), 14);
        assert_eq!(linalg::rank(&fs, linalg::RANK_PIVOT_TOL), 14);
        let mut both = ds;
        both.extend(fs);
        assert_eq!(linalg::rank(&both, linalg::RANK_PIVOT_TOL), 14);
    }

    #[test]
    fn seven_linear_dependence_relations() {
        let table = BasisProductTable::octonion();
        for k in 1..8usize {
            let mut pairs = Vec::new();
            for i in 1..8usize {
                for j in 1..8usize {
                    if i != j && table.index[i][j] as usize == k && table.sign[i][j] == 1 {
                        pairs.push((i, j));
                    }
                }
            }
            assert_eq!(pairs.len(), 3, "three ordered pairs multiply to e{k}");
            let sum = pairs
                .iter()
                .fold(LinearEndo8::zero(), |acc, &(i, j)| acc.add(&d_ab(&e(i), &e(j))));
            assert!(sum.max_abs() < 1e-12);
        }
    }

    #[test]
    fn generalized_jacobi_identity() {
        let mut rng = stream_rng(7, 2);
        for _ in 0..20 {
            let a = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let b = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let c = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let d = uniform_element(&mut rng, AlgebraLevel::Octonion, 1.0);
            let dab = d_ab(&a, &b);
            let dcd = d_ab(&c, &d);
            let lhs = dab.compose(&dcd);
            let rhs = d_ab(&dab.apply(&c), &d)
                .add(&d_ab(&c, &dab.apply(&d)))
                .add(&dcd.compose(&dab));
            assert!(lhs.approx_eq(&rhs, 1e-10));
        }
    }

    #[test]
    fn bracket_of_derivations_is_derivation() {
        let fs = f_basis();
        let b = fs[0].bracket(&fs[5]);
        assert!(is_derivation(&b));
        let d = d_ab(&e(1), &e(2)).bracket(&d_ab(&e(3), &e(7)));
        assert!(is_derivation(&d));
    }

    #[test]
    fn exp_f_closed_form() {
        let f = f_kij(1, 2, 4).unwrap();
        assert!(exp_f(0.0, &f).unwrap().approx_eq(&LinearEndo8::identity(), 1e-15));
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!(exp_f(two_pi, &f).unwrap().approx_eq(&LinearEndo8::identity(), 1e-12));
        // one-parameter subgroup and orthogonality
        let (s, t) = (0.4, 0.9);
        let prod = exp_f(s, &f).unwrap().compose(&exp_f(t, &f).unwrap());
        assert!(prod.approx_eq(&exp_f(s + t, &f).unwrap(), 1e-12));
        let g = exp_f(t, &f).unwrap();
        assert!(g.transpose().compose(&g).approx_eq(&LinearEndo8::identity(), 1e-12));
        // rejected for non-generators
        assert!(exp_f(1.0, &d_ab(&e(1), &e(2))).is_err());
    }

    #[test]
    fn zero_map_is_derivation() {
        assert!(is_derivation(&LinearEndo8::zero()));
        assert!(!is_derivation(&LinearEndo8::identity()));
    }
}
