//! The seeded verification suites behind `verify`, with deterministic JSON
//! reports: identical seed and flags produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{associator, commutator, AlgebraElement, AlgebraLevel};
use crate::automorphisms::{automorphism_residual, conjugation_map, tangent_at_identity};
use crate::derivations::d_ab;
use crate::error::{Error, Result};
use crate::hermitian::{det_herm, eta, Hermitian2};
use crate::linalg;
use crate::lorentz::{check_homomorphism, phi};
use crate::sampling::{
    cone_sample, half_integer_element, off_cone_sample, stream_rng, uniform_element, SampleRng,
};
use crate::sl2o::{
    det_cond_lhs, detfactor_expansion, lemma4_identity, phi_m_apply, random_generator,
    random_word, CurveFamily,
};

/// Run configuration shared by every suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Per-suite sample count; `None` uses the suite's own default.
    pub samples: Option<usize>,
    /// Tolerance overrides keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn new(seed: u64) -> Self {
        RunConfig {
            seed,
            samples: None,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == Some(0) {
            return Err(Error::invalid("samples must be >= 1"));
        }
        if let Some((name, tol)) = self.tolerances.iter().find(|(_, t)| **t <= 0.0) {
            return Err(Error::invalid(format!(
                "tolerance override {name}={tol} must be positive"
            )));
        }
        Ok(())
    }
}

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    Moufang,
    Artin,
    LemmaU3,
    Lemma4,
    Detfactor,
    IsoR,
    IsoC,
    IsoH,
    IsoO,
    G2Tangent,
    Sl2oTangent,
    LorentzWord,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Moufang,
        Suite::Artin,
        Suite::LemmaU3,
        Suite::Lemma4,
        Suite::Detfactor,
        Suite::IsoR,
        Suite::IsoC,
        Suite::IsoH,
        Suite::IsoO,
        Suite::G2Tangent,
        Suite::Sl2oTangent,
        Suite::LorentzWord,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Moufang => "moufang",
            Suite::Artin => "artin",
            Suite::LemmaU3 => "lemma-u3",
            Suite::Lemma4 => "lemma4",
            Suite::Detfactor => "detfactor",
            Suite::IsoR => "iso-R",
            Suite::IsoC => "iso-C",
            Suite::IsoH => "iso-H",
            Suite::IsoO => "iso-O",
            Suite::G2Tangent => "g2-tangent",
            Suite::Sl2oTangent => "sl2o-tangent",
            Suite::LorentzWord => "lorentz-word",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Moufang | Suite::Lemma4 | Suite::Detfactor => 10_000,
            Suite::Artin => 2_000,
            Suite::LemmaU3 => 1_000,
            Suite::IsoR | Suite::IsoC | Suite::IsoH | Suite::IsoO => 200,
            Suite::G2Tangent => 21,
            Suite::Sl2oTangent => 52,
            Suite::LorentzWord => 50,
        }
    }

    fn stream_base(self) -> u64 {
        16 * Suite::ALL.iter().position(|s| *s == self).expect("suite listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

/// One named check inside a suite: `statistic <= tolerance` passes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub passed: bool,
}

/// Full report of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

struct SuiteRun<'c> {
    cfg: &'c RunConfig,
    checks: Vec<CheckResult>,
}

impl<'c> SuiteRun<'c> {
    fn push(&mut self, name: &str, samples: usize, default_tol: f64, residual: f64) {
        let tolerance = self.cfg.tolerances.get(name).copied().unwrap_or(default_tol);
        self.checks.push(CheckResult {
            name: name.to_string(),
            samples,
            tolerance,
            max_residual: residual,
            passed: residual <= tolerance,
        });
    }
}

/// Run one suite under the given configuration.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let samples = cfg.samples.unwrap_or_else(|| suite.default_samples());
    let mut run = SuiteRun {
        cfg,
        checks: Vec::new(),
    };
    let rng = |offset: u64| stream_rng(cfg.seed, suite.stream_base() + offset);
    match suite {
        Suite::Moufang => moufang_suite(&mut run, samples, rng),
        Suite::Artin => artin_suite(&mut run, samples, rng),
        Suite::LemmaU3 => lemma_u3_suite(&mut run, samples, rng),
        Suite::Lemma4 => lemma4_suite(&mut run, samples, rng),
        Suite::Detfactor => detfactor_suite(&mut run, samples, rng),
        Suite::IsoR => iso_suite(&mut run, AlgebraLevel::Real, samples, rng),
        Suite::IsoC => iso_suite(&mut run, AlgebraLevel::Complex, samples, rng),
        Suite::IsoH => iso_suite(&mut run, AlgebraLevel::Quaternion, samples, rng),
        Suite::IsoO => iso_suite(&mut run, AlgebraLevel::Octonion, samples, rng),
        Suite::G2Tangent => g2_tangent_suite(&mut run),
        Suite::Sl2oTangent => sl2o_tangent_suite(&mut run),
        Suite::LorentzWord => lorentz_word_suite(&mut run, samples, rng),
    }
    let passed = run.checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        seed: cfg.seed,
        samples,
        checks: run.checks,
        passed,
    })
}

fn oct(rng: &mut SampleRng) -> AlgebraElement {
    half_integer_element(rng, AlgebraLevel::Octonion)
}

fn nonzero_oct(rng: &mut SampleRng) -> AlgebraElement {
    loop {
        let z = oct(rng);
        if z.norm() > 0.4 {
            return z;
        }
    }
}

fn moufang_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    let mut r = rng(0);
    let mut norm_mult = 0.0f64;
    let mut moufang = [0.0f64; 3];
    let mut derived = [0.0f64; 2];
    let mut conj_comm = 0.0f64;
    let mut conj_assoc = 0.0f64;
    let mut six_assoc = 0.0f64;
    for _ in 0..samples {
        let x = oct(&mut r);
        let y = oct(&mut r);
        let z = nonzero_oct(&mut r);
        norm_mult = norm_mult.max(((x * y).norm() - x.norm() * y.norm()).abs());
        moufang[0] = moufang[0].max((z * (x * (z * y)) - ((z * x) * z) * y).max_abs());
        moufang[1] = moufang[1].max((((x * z) * y) * z - x * ((z * y) * z)).max_abs());
        moufang[2] = moufang[2].max(((z * x) * (y * z) - (z * (x * y)) * z).max_abs());
        let zi = z.inverse().expect("nonzero");
        derived[0] = derived[0].max(((x * y) * z - (x * zi) * ((z * y) * z)).max_abs());
        derived[1] = derived[1].max((z * (x * y) - ((z * x) * z) * (zi * y)).max_abs());
        let cm = commutator(&x, &y).expect("octonions");
        conj_comm = conj_comm
            .max((commutator(&x.conjugate(), &y).expect("octonions") + cm).max_abs())
            .max((cm.conjugate() + cm).max_abs());
        let am = associator(&x, &y, &z).expect("octonions");
        conj_assoc = conj_assoc
            .max((associator(&x.conjugate(), &y, &z).expect("octonions") + am).max_abs())
            .max((am.conjugate() + am).max_abs());
        let six = commutator(&cm, &z).expect("octonions")
            + commutator(&commutator(&y, &z).expect("octonions"), &x).expect("octonions")
            + commutator(&commutator(&z, &x).expect("octonions"), &y).expect("octonions");
        six_assoc = six_assoc.max((am * 6.0 - six).max_abs());
    }
    run.push("moufang.norm-multiplicativity", samples, 1e-11, norm_mult);
    run.push("moufang.moufang-1", samples, 1e-11, moufang[0]);
    run.push("moufang.moufang-2", samples, 1e-11, moufang[1]);
    run.push("moufang.moufang-3", samples, 1e-11, moufang[2]);
    run.push("moufang.derived-moufang-1", samples, 1e-11, derived[0]);
    run.push("moufang.derived-moufang-2", samples, 1e-11, derived[1]);
    run.push("moufang.conjugate-commutator", samples, 1e-11, conj_comm);
    run.push("moufang.conjugate-associator", samples, 1e-11, conj_assoc);
    run.push("moufang.six-associator", samples, 1e-11, six_assoc);
}

fn all_parenthesizations(word: &[AlgebraElement]) -> Vec<AlgebraElement> {
    if word.len() == 1 {
        return vec![word[0]];
    }
    let mut out = Vec::new();
    for split in 1..word.len() {
        for l in all_parenthesizations(&word[..split]) {
            for r in all_parenthesizations(&word[split..]) {
                out.push(l * r);
            }
        }
    }
    out
}

fn artin_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    use rand::Rng;
    let mut r = rng(0);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = oct(&mut r);
        let b = oct(&mut r);
        let len = r.gen_range(2..=6usize);
        let word: Vec<AlgebraElement> =
            (0..len).map(|_| if r.gen_bool(0.5) { a } else { b }).collect();
        let values = all_parenthesizations(&word);
        let base = values[0];
        for v in &values[1..] {
            worst = worst.max((*v - base).max_abs());
        }
    }
    run.push("artin.parenthesization-independence", samples, 1e-11, worst);
    // division property: x != 0 and xy = 0 forces y = 0; checked through the
    // inverse identity x^{-1}(x y) = y
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..samples.min(2_000) {
        let x = nonzero_oct(&mut r);
        let y = oct(&mut r);
        let back = x.inverse().expect("nonzero") * (x * y);
        worst = worst.max((back - y).max_abs());
    }
    run.push("artin.division-recovery", samples.min(2_000), 1e-11, worst);
}

fn lemma_u3_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    let mut r = rng(0);
    let mut cone_resid = 0.0f64;
    let mut cone_miscls = 0usize;
    for _ in 0..samples {
        let u = cone_sample(&mut r);
        let resid = automorphism_residual(&conjugation_map(&u).expect("nonzero"));
        cone_resid = cone_resid.max(resid);
        if resid >= 1e-9 {
            cone_miscls += 1;
        }
    }
    run.push("lemma-u3.cone-automorphism-residual", samples, 1e-9, cone_resid);
    run.push("lemma-u3.cone-misclassified", samples, 0.0, cone_miscls as f64);
    let mut r = rng(1);
    let mut off_miscls = 0usize;
    for _ in 0..samples {
        let u = off_cone_sample(&mut r, 0.1);
        let resid = automorphism_residual(&conjugation_map(&u).expect("nonzero"));
        if resid < 1e-9 {
            off_miscls += 1;
        }
    }
    run.push("lemma-u3.off-cone-misclassified", samples, 0.0, off_miscls as f64);
}

fn lemma4_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    let mut r = rng(0);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = uniform_element(&mut r, AlgebraLevel::Octonion, 1.0);
        let b = uniform_element(&mut r, AlgebraLevel::Octonion, 1.0);
        let c = uniform_element(&mut r, AlgebraLevel::Octonion, 1.0);
        let d = uniform_element(&mut r, AlgebraLevel::Octonion, 1.0);
        let (lhs, rhs) = lemma4_identity(&a, &b, &c, &d);
        worst = worst.max((lhs - rhs).abs());
    }
    run.push("lemma4.real-part-identity", samples, 1e-12, worst);
}

fn random_m2(rng: &mut SampleRng) -> crate::hermitian::Matrix2K {
    crate::hermitian::Matrix2K::new(
        uniform_element(rng, AlgebraLevel::Octonion, 1.0),
        uniform_element(rng, AlgebraLevel::Octonion, 1.0),
        uniform_element(rng, AlgebraLevel::Octonion, 1.0),
        uniform_element(rng, AlgebraLevel::Octonion, 1.0),
    )
    .expect("levels match")
}

fn random_hermitian(rng: &mut SampleRng) -> Hermitian2 {
    use rand::Rng;
    Hermitian2::new(
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        uniform_element(rng, AlgebraLevel::Octonion, 1.0),
    )
}

fn detfactor_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    // expansion equality on generic four-octonion matrices
    let mut r = rng(0);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let m = random_m2(&mut r);
        let x = uniform_element(&mut r, AlgebraLevel::Octonion, 1.0);
        worst = worst.max((detfactor_expansion(&m, &x) - det_cond_lhs(&m, &x)).abs());
    }
    run.push("detfactor.expansion-equality", samples, 1e-10, worst);
    // generator matrices preserve determinants
    let gen_samples = (samples / 10).max(100);
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..gen_samples {
        let g = random_generator(&mut r);
        let x = random_hermitian(&mut r);
        let out = phi_m_apply(&g.to_matrix(), &x);
        worst = worst.max((det_herm(&out) - det_herm(&x)).abs());
    }
    run.push("detfactor.generator-det-preserved", gen_samples, 1e-10, worst);
    // generic matrices: a violating X is found for >= 99% of the samples
    let mut r = rng(2);
    let mut missed = 0usize;
    for _ in 0..gen_samples {
        let m = random_m2(&mut r);
        let dm = crate::hermitian::det_mmdagger(&m);
        let mut found = false;
        for _ in 0..20 {
            let x = random_hermitian(&mut r);
            let out = phi_m_apply(&m, &x);
            if (det_herm(&out) - dm * det_herm(&x)).abs() > 1e-6 {
                found = true;
                break;
            }
        }
        if !found {
            missed += 1;
        }
    }
    run.push(
        "detfactor.generic-violation-missed-fraction",
        gen_samples,
        0.01,
        missed as f64 / gen_samples as f64,
    );
}

fn iso_suite(
    run: &mut SuiteRun,
    level: AlgebraLevel,
    samples: usize,
    rng: impl Fn(u64) -> SampleRng,
) {
    let mut r = rng(0);
    let rep = check_homomorphism(level, samples, &mut r);
    let prefix = format!("iso-{}", level.name());
    run.push(&format!("{prefix}.bracket-residual"), samples, 1e-9, rep.max_bracket_residual);
    run.push(&format!("{prefix}.action-residual"), samples, 1e-11, rep.max_action_residual);
    run.push(
        &format!("{prefix}.antisymmetry-residual"),
        samples,
        1e-12,
        rep.max_antisymmetry_residual,
    );
    run.push(
        &format!("{prefix}.image-rank-deficit"),
        1,
        0.0,
        (rep.expected_rank as f64 - rep.image_rank as f64).abs(),
    );
}

fn g2_tangent_suite(run: &mut SuiteRun) {
    let e = |i: usize| AlgebraElement::oct_basis(i).expect("basis index");
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for i in 1..8 {
        for j in (i + 1)..8 {
            let t = tangent_at_identity(&e(i), &e(j)).expect("valid pair");
            worst = worst.max(t.frobenius_distance(&d_ab(&e(i), &e(j))));
            pairs += 1;
        }
    }
    run.push("g2-tangent.curve-vs-derivation", pairs, 1e-5, worst);
}

fn sl2o_tangent_suite(run: &mut SuiteRun) {
    use crate::lorentz::Sl2Element;
    let e = |i: usize| AlgebraElement::oct_basis(i).expect("basis index");
    let one = AlgebraElement::one(AlgebraLevel::Octonion);
    let zero = AlgebraElement::zero(AlgebraLevel::Octonion);
    let mut matrix_worst = 0.0f64;
    let mut comm_worst = 0.0f64;
    let mut g2_worst = 0.0f64;
    let mut rows = Vec::new();
    for fam in CurveFamily::spanning_set() {
        let t = fam.tangent().expect("family tangent");
        rows.push(phi(&t).flatten());
        let expected = match fam {
            CurveFamily::Diag { m } => {
                let u = if m == 0 { one } else { e(m) };
                Sl2Element::from_matrix(crate::hermitian::Matrix2K::diagonal(u, -u))
                    .expect("traceless")
            }
            CurveFamily::OffDiagB { m } => {
                let u = if m == 0 { one } else { e(m) };
                Sl2Element::from_matrix(
                    crate::hermitian::Matrix2K::new(zero, u, zero, zero).expect("levels"),
                )
                .expect("traceless")
            }
            CurveFamily::OffDiagC { m } => {
                let u = if m == 0 { one } else { e(m) };
                Sl2Element::from_matrix(
                    crate::hermitian::Matrix2K::new(zero, zero, u, zero).expect("levels"),
                )
                .expect("traceless")
            }
            CurveFamily::Comm { m } => Sl2Element::commutator_part(e(m)).expect("imaginary"),
            CurveFamily::G2 { i, j } => {
                Sl2Element::derivation_part(d_ab(&e(i), &e(j))).expect("derivation")
            }
        };
        let resid = t.sub(&expected).expect("same level").max_abs();
        match fam {
            CurveFamily::Comm { .. } => comm_worst = comm_worst.max(resid),
            CurveFamily::G2 { .. } => g2_worst = g2_worst.max(resid),
            _ => matrix_worst = matrix_worst.max(resid),
        }
    }
    run.push("sl2o-tangent.matrix-directions", 24, 1e-5, matrix_worst);
    run.push("sl2o-tangent.commutator-directions", 7, 1e-5, comm_worst);
    run.push("sl2o-tangent.derivation-directions", 21, 1e-5, g2_worst);
    let rank = linalg::rank(&rows, 1e-6);
    run.push(
        "sl2o-tangent.reachability-rank-deficit",
        rows.len(),
        0.0,
        (45.0 - rank as f64).abs(),
    );
}

fn lorentz_word_suite(run: &mut SuiteRun, samples: usize, rng: impl Fn(u64) -> SampleRng) {
    use rand::Rng;
    let et = eta(10);
    let id = nalgebra::DMatrix::<f64>::identity(10, 10);
    let mut r = rng(0);
    let mut inverse_worst = 0.0f64;
    let mut eta_worst = 0.0f64;
    let mut ortho_worst = 0.0f64;
    let mut mult_worst = 0.0f64;
    for _ in 0..samples {
        let len = r.gen_range(1..=8usize);
        let w = random_word(&mut r, len);
        let l = w.to_lorentz_matrix();
        // word o inverse acts as the identity on the basis
        let round = w.then(&w.inverse().expect("normalized generators"));
        let lr = round.to_lorentz_matrix();
        inverse_worst = inverse_worst.max(linalg::max_abs(&(lr.matrix() - &id)));
        // Lorentz-form preservation and orthochronous component
        let resid = l.matrix().transpose() * &et * l.matrix() - &et;
        eta_worst = eta_worst.max(linalg::max_abs(&resid));
        let det = l.matrix().determinant();
        let time = l.matrix()[(0, 0)];
        ortho_worst = ortho_worst
            .max((det - 1.0).abs())
            .max(if time > 0.0 { 0.0 } else { 1.0 });
        // multiplicativity over concatenation
        let len2 = r.gen_range(1..=3usize);
        let w2 = random_word(&mut r, len2);
        let lhs = w.then(&w2).to_lorentz_matrix();
        let rhs = l.matrix() * w2.to_lorentz_matrix().matrix();
        mult_worst = mult_worst.max(linalg::max_abs(&(lhs.matrix() - &rhs)));
    }
    run.push("lorentz-word.inverse-round-trip", samples, 1e-9, inverse_worst);
    run.push("lorentz-word.eta-preservation", samples, 1e-9, eta_worst);
    run.push("lorentz-word.orthochronous", samples, 1e-6, ortho_worst);
    run.push("lorentz-word.concat-multiplicative", samples, 1e-9, mult_worst);
}

/// Serialize any report value as JSON with every float printed with 17
/// significant digits, making reports diff-stable.
pub fn to_json_17(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter::new());
    value.serialize(&mut ser).expect("report types serialize");
    let mut s = String::from_utf8(out).expect("serde_json emits utf8");
    s.push('\n');
    s
}

/// Pretty JSON formatter printing floats as 17-significant-digit scientific
/// notation.
struct SciFormatter {
    indent: usize,
    has_value: bool,
}

impl SciFormatter {
    fn new() -> Self {
        SciFormatter {
            indent: 0,
            has_value: false,
        }
    }

    fn newline<W: ?Sized + std::io::Write>(&self, writer: &mut W) -> std::io::Result<()> {
        writer.write_all(b"\n")?;
        for _ in 0..self.indent {
            writer.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        writer.write_all(b"[")
    }

    fn end_array<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(writer)?;
        }
        writer.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn end_array_value<W: ?Sized + std::io::Write>(&mut self, _writer: &mut W) -> std::io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(writer)?;
        }
        writer.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        writer.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + std::io::Write>(&mut self, _writer: &mut W) -> std::io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}
