//! JSON wire formats for the CLI and FFI surfaces: group words, sl(2,K)
//! elements, matrices and octonion arguments.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraLevel};
use crate::derivations::{LinearEndo8, Matrix8};
use crate::error::{Error, Result};
use crate::hermitian::Matrix2K;
use crate::lorentz::{Sl2Element, SoMatrix};
use crate::sl2o::{GeneratorMatrix, GroupWord};

/// One word generator: `{"mu": [4], "nu": [4], "q": [7 imaginary components]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub mu: [f64; 4],
    pub nu: [f64; 4],
    pub q: [f64; 7],
}

impl GeneratorJson {
    pub fn to_generator(&self) -> Result<GeneratorMatrix> {
        let mut coeffs = [0.0; 8];
        coeffs[1..].copy_from_slice(&self.q);
        GeneratorMatrix::new(self.mu, self.nu, AlgebraElement::octonion(coeffs))
    }

    pub fn from_generator(g: &GeneratorMatrix) -> Self {
        let mut q = [0.0; 7];
        q.copy_from_slice(&g.q().coeffs()[1..]);
        GeneratorJson {
            mu: g.mu(),
            nu: g.nu(),
            q,
        }
    }
}

/// A word is serialized as a plain list of generators.
pub fn word_from_json(text: &str) -> Result<GroupWord> {
    let gens: Vec<GeneratorJson> =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("word JSON: {e}")))?;
    let gens = gens
        .iter()
        .map(GeneratorJson::to_generator)
        .collect::<Result<Vec<_>>>()?;
    GroupWord::new(gens)
}

pub fn word_to_json_value(w: &GroupWord) -> Vec<GeneratorJson> {
    w.gens().iter().map(GeneratorJson::from_generator).collect()
}

/// JSON shape of a 2x2 matrix over K; entry length fixes the level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Matrix2Json {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl Matrix2Json {
    pub fn to_matrix(&self) -> Result<Matrix2K> {
        let level = AlgebraLevel::from_dim(self.a.len())?;
        Matrix2K::new(
            AlgebraElement::from_coeffs(level, &self.a)?,
            AlgebraElement::from_coeffs(level, &self.b)?,
            AlgebraElement::from_coeffs(level, &self.c)?,
            AlgebraElement::from_coeffs(level, &self.d)?,
        )
    }

    pub fn from_matrix(m: &Matrix2K) -> Self {
        Matrix2Json {
            a: m.a.coeffs().to_vec(),
            b: m.b.coeffs().to_vec(),
            c: m.c.coeffs().to_vec(),
            d: m.d.coeffs().to_vec(),
        }
    }
}

/// JSON shape of an sl(2,K) element; `cd` and `g` only over the octonions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sl2ElementJson {
    pub m: Matrix2Json,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cd: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<f64>>>,
}

impl Sl2ElementJson {
    pub fn to_element(&self) -> Result<Sl2Element> {
        let m = self.m.to_matrix()?;
        let level = m.level();
        let cd = match &self.cd {
            None => AlgebraElement::zero(AlgebraLevel::Octonion),
            Some(c) => AlgebraElement::from_coeffs(AlgebraLevel::Octonion, c)?,
        };
        let g = match &self.g {
            None => LinearEndo8::zero(),
            Some(rows) => {
                if rows.len() != 8 || rows.iter().any(|r| r.len() != 8) {
                    return Err(Error::invalid("derivation block must be 8x8"));
                }
                let mut m8 = Matrix8::zeros();
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m8[(i, j)] = *v;
                    }
                }
                LinearEndo8::from_matrix(m8)
            }
        };
        Sl2Element::new(level, m, cd, g)
    }

    pub fn from_element(e: &Sl2Element) -> Self {
        let cd = e.commutator_parameter();
        let g = e.derivation();
        Sl2ElementJson {
            m: Matrix2Json::from_matrix(e.matrix_part()),
            cd: if cd.max_abs() == 0.0 {
                None
            } else {
                Some(cd.coeffs().to_vec())
            },
            g: if g.max_abs() == 0.0 {
                None
            } else {
                Some(endo_rows(g))
            },
        }
    }
}

pub fn endo_rows(e: &LinearEndo8) -> Vec<Vec<f64>> {
    (0..8)
        .map(|i| (0..8).map(|j| e.matrix()[(i, j)]).collect())
        .collect()
}

pub fn so_matrix_rows(s: &SoMatrix) -> Vec<Vec<f64>> {
    let d = s.dim();
    (0..d)
        .map(|i| (0..d).map(|j| s.matrix()[(i, j)]).collect())
        .collect()
}

/// Parse an octonion CLI argument: a basis name like `e3` or a comma list of
/// up to 8 coefficients.
pub fn parse_octonion(text: &str) -> Result<AlgebraElement> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('e') {
        if let Ok(i) = rest.parse::<usize>() {
            return AlgebraElement::oct_basis(i);
        }
    }
    let coeffs = t
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::invalid(format!("bad coefficient '{p}': {e}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if coeffs.len() > 8 {
        return Err(Error::CoefficientLength {
            expected: 8,
            got: coeffs.len(),
        });
    }
    let mut full = [0.0; 8];
    full[..coeffs.len()].copy_from_slice(&coeffs);
    Ok(AlgebraElement::octonion(full))
}
