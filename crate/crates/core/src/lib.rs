//! Octonion arithmetic, the g2 derivation algebra and its generator curves,
//! the Lie-algebra isomorphisms sl(2,K) = so(n+1,1) for K = R, C, H, O, and
//! the group of determinant-preserving symmetrized Hermitian actions on
//! 2x2 octonionic Hermitian matrices.
//!
//! Everything is plain `f64` over fixed basis tables; all operations are pure
//! and all types are immutable, so values can be shared and sent across
//! threads freely.

pub mod algebra;
pub mod automorphisms;
pub mod derivations;
pub mod error;
pub mod formats;
pub mod hermitian;
pub mod linalg;
pub mod lorentz;
pub mod report;
pub mod sampling;
pub mod sl2o;

pub use algebra::{
    associator, basis_product, commutator, table_export, AlgebraElement, AlgebraLevel,
    BasisProductTable,
};
pub use automorphisms::{
    conjugation_map, curve_g, is_automorphism, tangent_at_identity, u_cubed_is_real, u_of_t,
    G2CurveParams,
};
pub use derivations::{d_ab, exp_f, f_basis, f_kij, is_derivation, r_ij, LinearEndo8};
pub use error::{Error, Result};
pub use hermitian::{
    det_herm, det_mmdagger, herm_to_vec, jordan_product, lorentz_form, quadratic_form,
    vec_to_herm, Hermitian2, Matrix2K, SpacetimeVector,
};
pub use lorentz::{
    check_homomorphism, phi, phi_inverse, sl2o_bracket, tangent_action, Sl2Element, SoMatrix,
};
pub use report::{run_suite, RunConfig, Suite, SuiteReport};
pub use sl2o::{
    det_cond_lhs, detfactor_expansion, is_det_preserving, lemma4_identity, phi_m_apply,
    tangent_of_curve, CurveFamily, GeneratorMatrix, GroupWord,
};
