//! Seeded, stream-split random sampling for the fuzz suites.
//!
//! One counter-based RNG family (ChaCha) keyed by (seed, stream): every check
//! draws from its own stream so reports are reproducible per seed regardless
//! of which suites run or in which order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraLevel};

pub type SampleRng = ChaCha8Rng;

/// RNG for a named check: seed selects the key, stream decorrelates checks.
pub fn stream_rng(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Element with coefficients uniform in [-scale, scale].
pub fn uniform_element(rng: &mut SampleRng, level: AlgebraLevel, scale: f64) -> AlgebraElement {
    let mut coeffs = [0.0; 8];
    for c in coeffs.iter_mut().take(level.dim()) {
        *c = rng.gen_range(-scale..=scale);
    }
    AlgebraElement::from_coeffs(level, &coeffs[..level.dim()]).expect("length matches level")
}

/// Element with half-integer coefficients in {-1, -1/2, 0, 1/2, 1}; products
/// of a few such elements stay exactly representable in doubles.
pub fn half_integer_element(rng: &mut SampleRng, level: AlgebraLevel) -> AlgebraElement {
    let mut coeffs = [0.0; 8];
    for c in coeffs.iter_mut().take(level.dim()) {
        *c = f64::from(rng.gen_range(-2i32..=2)) / 2.0;
    }
    AlgebraElement::from_coeffs(level, &coeffs[..level.dim()]).expect("length matches level")
}

/// Nonzero element (resampled until the norm is bounded away from zero).
pub fn nonzero_element(rng: &mut SampleRng, level: AlgebraLevel, scale: f64) -> AlgebraElement {
    loop {
        let x = uniform_element(rng, level, scale);
        if x.norm() > 1e-3 * scale {
            return x;
        }
    }
}

pub fn unit_element(rng: &mut SampleRng, level: AlgebraLevel) -> AlgebraElement {
    let x = nonzero_element(rng, level, 1.0);
    x * (1.0 / x.norm())
}

/// Purely imaginary octonion with coefficients uniform in [-scale, scale].
pub fn imaginary(rng: &mut SampleRng, scale: f64) -> AlgebraElement {
    let mut x = uniform_element(rng, AlgebraLevel::Octonion, scale);
    x.set_coeff(0, 0.0).expect("index 0 valid");
    x
}

pub fn nonzero_imaginary(rng: &mut SampleRng, scale: f64) -> AlgebraElement {
    loop {
        let x = imaginary(rng, scale);
        if x.norm() > 1e-3 * scale {
            return x;
        }
    }
}

pub fn unit_imaginary(rng: &mut SampleRng) -> AlgebraElement {
    let x = nonzero_imaginary(rng, 1.0);
    x * (1.0 / x.norm())
}

/// Pair of nonzero anticommuting imaginary octonions (ab = -ba), obtained by
/// orthogonalizing the second against the first. Norms are <= 2.
pub fn anticommuting_pair(rng: &mut SampleRng) -> (AlgebraElement, AlgebraElement) {
    loop {
        let a = nonzero_imaginary(rng, 0.7);
        let mut b = imaginary(rng, 0.7);
        let proj = a.dot(&b) / a.norm_squared();
        b = b - a * proj;
        if b.norm() > 1e-3 {
            return (a, b);
        }
    }
}

/// Octonion on the cone 3 u0^2 = |vec(u)|^2 (so u^3 is real): u0 uniform in
/// [-1,1] away from 0, direction uniform on S^6 scaled to sqrt(3)|u0|.
pub fn cone_sample(rng: &mut SampleRng) -> AlgebraElement {
    let mut u0 = 0.0f64;
    while u0.abs() < 1e-2 {
        u0 = rng.gen_range(-1.0..=1.0);
    }
    let v = unit_imaginary(rng) * (3.0f64.sqrt() * u0.abs());
    AlgebraElement::scalar(AlgebraLevel::Octonion, u0) + v
}

/// Octonion whose cube has imaginary norm above `min_imag_cube`.
pub fn off_cone_sample(rng: &mut SampleRng, min_imag_cube: f64) -> AlgebraElement {
    loop {
        let u = uniform_element(rng, AlgebraLevel::Octonion, 1.5);
        let u3 = u * u * u;
        if u3.imag_part().norm() > min_imag_cube {
            return u;
        }
    }
}
