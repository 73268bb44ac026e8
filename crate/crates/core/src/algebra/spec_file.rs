//! Text format for algebra specifications (TOML).
//!
//! ```toml
//! name = "heisenberg"
//! dim = 3
//! degrees = [0, 1, 1]
//! basis = ["x", "y", "z"]      # optional
//!
//! [field]
//! p = 5
//! k = 1
//!
//! [[constants]]                # only pairs i < j; [b_j, b_i] is derived
//! i = 0
//! j = 1
//! coeffs = [0, 0, 1]
//! ```
//!
//! Coefficients are element encodings in `0..q`; for prime fields any
//! integer is accepted and reduced mod p. An optional `even_basis` list of
//! coordinate vectors describes a grading of the algebra by its even part.

use serde::{Deserialize, Serialize};

use super::GradedLieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::SubspaceBasis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEntry {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub degrees: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even_basis: Option<Vec<Vec<i64>>>,
    pub field: FieldEntry,
    #[serde(default)]
    pub constants: Vec<ConstantEntry>,
}

fn schema(detail: impl Into<String>) -> Error {
    Error::SpecError { axiom: "schema".into(), detail: detail.into() }
}

fn to_fe(field: &Field, c: i64) -> Result<Fe> {
    if field.k() == 1 {
        Ok(field.elem(c))
    } else if (0..field.q() as i64).contains(&c) {
        Ok(field.from_index(c as u32))
    } else {
        Err(schema(format!("coefficient {c} is not an element encoding of {field}")))
    }
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<AlgebraSpec> {
        toml::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("algebra specs serialize")
    }

    pub fn build(&self) -> Result<GradedLieAlgebra> {
        let field = Field::new(self.field.p, self.field.k).map_err(|e| schema(e.to_string()))?;
        let n = self.dim;
        if self.degrees.len() != n {
            return Err(schema(format!("{} degrees for dimension {n}", self.degrees.len())));
        }
        let names = match &self.basis {
            Some(b) if b.len() != n => return Err(schema(format!("{} basis names for dimension {n}", b.len()))),
            Some(b) => b.clone(),
            None => (0..n).map(|i| format!("b{i}")).collect(),
        };
        let mut c = vec![Fe::ZERO; n * n * n];
        let mut seen = std::collections::HashSet::new();
        for entry in &self.constants {
            let (i, j) = (entry.i, entry.j);
            if i >= n || j >= n {
                return Err(schema(format!("basis index out of range in ({i}, {j})")));
            }
            if i >= j {
                return Err(Error::SpecError {
                    axiom: "anticommutativity".into(),
                    detail: format!("entry ({i}, {j}) must have i < j; [b_j, b_i] is derived"),
                });
            }
            if !seen.insert((i, j)) {
                return Err(schema(format!("duplicate entry ({i}, {j})")));
            }
            if entry.coeffs.len() != n {
                return Err(schema(format!("entry ({i}, {j}) has {} coefficients, expected {n}", entry.coeffs.len())));
            }
            for (k, &x) in entry.coeffs.iter().enumerate() {
                let v = to_fe(&field, x)?;
                c[(i * n + j) * n + k] = v;
                c[(j * n + i) * n + k] = field.neg(v);
            }
        }
        GradedLieAlgebra::from_constants(self.name.clone().unwrap_or_else(|| "custom".into()), field, self.degrees.clone(), names, c)
    }

    /// The `even_basis` block as a subspace of the built algebra, if present.
    pub fn even_subspace(&self, alg: &GradedLieAlgebra) -> Result<Option<SubspaceBasis>> {
        let Some(rows) = &self.even_basis else { return Ok(None) };
        let f = alg.field();
        let mut vecs = Vec::new();
        for r in rows {
            if r.len() != alg.dim() {
                return Err(schema("even_basis vector has the wrong length"));
            }
            vecs.push(r.iter().map(|&x| to_fe(f, x)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Some(SubspaceBasis::from_vectors(f, alg.dim(), vecs)))
    }

    pub fn from_algebra(alg: &GradedLieAlgebra) -> AlgebraSpec {
        let n = alg.dim();
        let f = alg.field();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = alg.constant(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    constants.push(ConstantEntry { i, j, coeffs: c.iter().map(|x| x.index() as i64).collect() });
                }
            }
        }
        AlgebraSpec {
            name: Some(alg.name().to_string()),
            dim: n,
            degrees: alg.degrees().to_vec(),
            basis: Some(alg.basis_names().to_vec()),
            even_basis: None,
            field: FieldEntry { p: f.p(), k: f.k() },
            constants,
        }
    }
}

impl GradedLieAlgebra {
    pub fn from_spec_str(text: &str) -> Result<GradedLieAlgebra> {
        AlgebraSpec::parse(text)?.build()
    }

    pub fn from_spec_file(path: &std::path::Path) -> Result<GradedLieAlgebra> {
        let text = std::fs::read_to_string(path).map_err(|e| schema(format!("{}: {e}", path.display())))?;
        Self::from_spec_str(&text)
    }

    pub fn to_spec_string(&self) -> String {
        AlgebraSpec::from_algebra(self).to_text()
    }
}
