//! Finite-dimensional Z₂-graded Lie algebras given by structure constants.

mod spec_file;
mod structure;

pub use spec_file::{AlgebraSpec, ConstantEntry, FieldEntry};
pub use structure::{
    ProbeReport, ProbeViolation, RootPair, RootReport, StructureReport, DEFAULT_DIM_CAP,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::mat2::{self, Mat2};

/// Coordinate vector of an algebra element in the algebra's basis.
pub type Element = Vec<Fe>;

/// A Lie algebra `L = L₀ ⊕ L₁` with a homogeneous basis `b_0..b_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    name: String,
    field: Field,
    degrees: Vec<u8>,
    basis_names: Vec<String>,
    /// `constants[(i * n + j) * n + k]` is the `b_k` coordinate of `[b_i, b_j]`.
    constants: Vec<Fe>,
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// Basis indices of a failing pair or triple.
    pub witness: Option<Vec<usize>>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl GradedLieAlgebra {
    /// Builds an algebra from raw constants and validates it; the first
    /// failing axiom is returned as a [`Error::SpecError`].
    pub fn from_constants(
        name: impl Into<String>,
        field: Field,
        degrees: Vec<u8>,
        basis_names: Vec<String>,
        constants: Vec<Fe>,
    ) -> Result<GradedLieAlgebra> {
        let alg = Self::from_constants_unchecked(name, field, degrees, basis_names, constants)?;
        let report = alg.validate();
        if let Some(fail) = report.first_failure() {
            return Err(Error::SpecError {
                axiom: fail.axiom.to_string(),
                detail: fail.detail.clone().unwrap_or_default(),
            });
        }
        Ok(alg)
    }

    /// Shape checks only; the axioms are left to [`GradedLieAlgebra::validate`].
    pub fn from_constants_unchecked(
        name: impl Into<String>,
        field: Field,
        degrees: Vec<u8>,
        basis_names: Vec<String>,
        constants: Vec<Fe>,
    ) -> Result<GradedLieAlgebra> {
        let n = degrees.len();
        let schema = |detail: String| Error::SpecError { axiom: "schema".into(), detail };
        if constants.len() != n * n * n {
            return Err(schema(format!("expected {} structure constants, got {}", n * n * n, constants.len())));
        }
        if basis_names.len() != n {
            return Err(schema(format!("expected {n} basis names, got {}", basis_names.len())));
        }
        if let Some(d) = degrees.iter().find(|&&d| d > 1) {
            return Err(schema(format!("degree {d} is not in Z2")));
        }
        if let Some(c) = constants.iter().find(|c| c.index() >= field.q()) {
            return Err(schema(format!("coefficient {c} outside {field}")));
        }
        Ok(GradedLieAlgebra { name: name.into(), field, degrees, basis_names, constants })
    }

    /// Realizes a Lie algebra spanned by the given 2×2 matrices under the
    /// commutator. The matrices must be linearly independent and closed.
    pub fn from_matrix_basis(
        name: &str,
        field: Field,
        basis: &[Mat2],
        degrees: Vec<u8>,
        names: &[&str],
    ) -> Result<GradedLieAlgebra> {
        let n = basis.len();
        let span = Matrix::from_columns(4, &basis.iter().map(mat2::flatten).collect::<Vec<_>>());
        if span.rank(&field) != n {
            return Err(Error::InvalidInput("matrix basis is linearly dependent".into()));
        }
        let mut constants = Vec::with_capacity(n * n * n);
        for a in basis {
            for b in basis {
                let c = mat2::flatten(&mat2::commutator(&field, a, b));
                let coords = crate::linalg::solve(&field, &span, &c).ok_or_else(|| Error::SpecError {
                    axiom: "closure".into(),
                    detail: "commutator leaves the span".into(),
                })?;
                constants.extend(coords);
            }
        }
        Self::from_constants(name, field, degrees, names.iter().map(|s| s.to_string()).collect(), constants)
    }

    /// sl₂ with basis h = e₁₁ − e₂₂, e = e₁₂, f = e₂₁ and its natural grading.
    pub fn sl2(field: Field) -> GradedLieAlgebra {
        let h = mat2::sub(&field, &mat2::unit(0, 0), &mat2::unit(1, 1));
        Self::from_matrix_basis("sl2", field, &[h, mat2::unit(0, 1), mat2::unit(1, 0)], vec![0, 1, 1], &["h", "e", "f"])
            .expect("sl2 is a graded Lie algebra")
    }

    /// gl₂ = M₂ under the commutator, basis e₁₁, e₁₂, e₂₁, e₂₂, diagonal even.
    pub fn gl2(field: Field) -> GradedLieAlgebra {
        Self::m2_grading_ii(field).renamed("gl2")
    }

    /// M₂ with the trivial grading (everything even).
    pub fn m2_grading_i(field: Field) -> GradedLieAlgebra {
        Self::from_matrix_basis("m2-I", field, &m2_units(), vec![0, 0, 0, 0], &["e11", "e12", "e21", "e22"])
            .expect("gl2 is a Lie algebra")
    }

    /// M₂ graded by diagonal (even) and off-diagonal (odd) matrices.
    pub fn m2_grading_ii(field: Field) -> GradedLieAlgebra {
        Self::from_matrix_basis("m2-II", field, &m2_units(), vec![0, 1, 1, 0], &["e11", "e12", "e21", "e22"])
            .expect("gl2 is a graded Lie algebra")
    }

    /// M₂ with even part F(e₁₁+e₂₂) ⊕ F(e₁₂+b e₂₁) and odd part
    /// F(e₁₁−e₂₂) ⊕ F(e₁₂−b e₂₁); `b` must be a non-square.
    pub fn m2_grading_iii(field: Field, b: Fe) -> Result<GradedLieAlgebra> {
        if field.is_square(b) {
            return Err(Error::InvalidInput(format!("{b} is a square in {field}")));
        }
        Self::from_matrix_basis("m2-III", field, &m2_grading_iii_basis(&field, b), vec![0, 0, 1, 1], &["1", "u", "h", "v"])
    }

    /// span{e₁₁, e₁₂} ⊂ gl₂ with e₁₁ even and e₁₂ odd.
    pub fn span_e11_e12(field: Field) -> GradedLieAlgebra {
        Self::from_matrix_basis("span-e11-e12", field, &[mat2::unit(0, 0), mat2::unit(0, 1)], vec![0, 1], &["e11", "e12"])
            .expect("span{e11, e12} is a graded subalgebra")
    }

    /// Three-dimensional Heisenberg algebra [x, y] = z, degrees (0, 1, 1).
    pub fn heisenberg(field: Field) -> GradedLieAlgebra {
        let n = 3;
        let at = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut c = vec![Fe::ZERO; n * n * n];
        c[at(0, 1, 2)] = Fe::ONE;
        c[at(1, 0, 2)] = field.neg(Fe::ONE);
        Self::from_constants("heisenberg", field, vec![0, 1, 1], vec!["x".into(), "y".into(), "z".into()], c)
            .expect("the Heisenberg algebra is a graded Lie algebra")
    }

    /// Abelian algebra with the given degrees.
    pub fn abelian(field: Field, degrees: Vec<u8>) -> GradedLieAlgebra {
        let n = degrees.len();
        let names = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_constants("abelian", field, degrees, names, vec![Fe::ZERO; n * n * n]).expect("abelian algebras are valid")
    }

    /// Direct sum of algebras over a common field.
    pub fn direct_sum(parts: &[GradedLieAlgebra]) -> Result<GradedLieAlgebra> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidInput("empty direct sum".into()));
        };
        let field = first.field;
        if parts.iter().any(|p| p.field != field) {
            return Err(Error::AmbientMismatch("summands over different fields".into()));
        }
        let n: usize = parts.iter().map(|p| p.dim()).sum();
        let mut c = vec![Fe::ZERO; n * n * n];
        let mut degrees = Vec::new();
        let mut names = Vec::new();
        let mut offset = 0;
        for (s, part) in parts.iter().enumerate() {
            let m = part.dim();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        c[((offset + i) * n + offset + j) * n + offset + k] = part.constant(i, j)[k];
                    }
                }
            }
            degrees.extend_from_slice(&part.degrees);
            names.extend(part.basis_names.iter().map(|b| format!("{b}_{s}")));
            offset += m;
        }
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("+");
        Self::from_constants(name, field, degrees, names, c)
    }

    pub fn renamed(mut self, name: &str) -> GradedLieAlgebra {
        self.name = name.to_string();
        self
    }

    /// Same constants with different degree labels (validated).
    pub fn with_degrees(&self, degrees: Vec<u8>) -> Result<GradedLieAlgebra> {
        Self::from_constants(self.name.clone(), self.field, degrees, self.basis_names.clone(), self.constants.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn constant(&self, i: usize, j: usize) -> &[Fe] {
        let n = self.dim();
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = vec![Fe::ZERO; self.dim()];
        v[i] = Fe::ONE;
        v
    }

    pub fn zero(&self) -> Element {
        vec![Fe::ZERO; self.dim()]
    }

    /// The homogeneous component `L_g` as a coordinate subspace.
    pub fn component(&self, degree: u8) -> SubspaceBasis {
        let rows = (0..self.dim()).filter(|&i| self.degrees[i] == degree).map(|i| self.basis_vector(i));
        SubspaceBasis::from_vectors(&self.field, self.dim(), rows.collect::<Vec<_>>())
    }

    pub fn component_dim(&self, degree: u8) -> usize {
        self.degrees.iter().filter(|&&d| d == degree).count()
    }

    /// Projection of `a` onto `L_g`.
    pub fn project(&self, a: &[Fe], degree: u8) -> Element {
        a.iter()
            .zip(&self.degrees)
            .map(|(&c, &d)| if d == degree { c } else { Fe::ZERO })
            .collect()
    }

    /// Degree of a nonzero homogeneous element; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self, a: &[Fe]) -> Option<u8> {
        let mut degs = a.iter().zip(&self.degrees).filter(|(c, _)| !c.is_zero()).map(|(_, &d)| d);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, a: &[Fe], degree: u8) -> bool {
        a.iter().zip(&self.degrees).all(|(c, &d)| c.is_zero() || d == degree)
    }

    fn check_element(&self, a: &[Fe]) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::AmbientMismatch(format!(
                "element of length {} in {}-dimensional {}",
                a.len(),
                self.dim(),
                self.name
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, a: &[Fe], b: &[Fe]) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    /// Bilinear extension of the structure constants; lengths are trusted.
    #[inline]
    pub fn bracket_unchecked(&self, a: &[Fe], b: &[Fe]) -> Element {
        let n = self.dim();
        let f = &self.field;
        let mut out = vec![Fe::ZERO; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let c = f.mul(ai, bj);
                let row = &self.constants[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, &s) in out.iter_mut().zip(row) {
                    if !s.is_zero() {
                        *o = f.add(*o, f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad a : y ↦ [a, y]`; column `j` is `[a, b_j]`.
    pub fn ad_matrix(&self, a: &[Fe]) -> Result<Matrix> {
        self.check_element(a)?;
        let cols: Vec<Element> = (0..self.dim()).map(|j| self.bracket_unchecked(a, &self.basis_vector(j))).collect();
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// `a` written in the basis names, e.g. `2*h - e`.
    pub fn format_element(&self, a: &[Fe]) -> String {
        let mut out = String::new();
        for (c, name) in a.iter().zip(&self.basis_names) {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match self.field.signed(*c) {
                Some(s) => (s < 0, s.unsigned_abs().to_string()),
                None => (false, format!("{{{}}}", c.index())),
            };
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Element {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, c: Fe, a: &[Fe]) -> Element {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// Checks anticommutativity, the Jacobi identity on all basis triples and
    /// compatibility of the bracket with the grading.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let f = &self.field;
        let mut anti = AxiomCheck { axiom: "anticommutativity", passed: true, witness: None, detail: None };
        'anti: for i in 0..n {
            for j in i..n {
                let cij = self.constant(i, j);
                let cji = self.constant(j, i);
                if cij.iter().zip(cji).any(|(&a, &b)| !f.add(a, b).is_zero()) {
                    anti.passed = false;
                    anti.witness = Some(vec![i, j]);
                    anti.detail = Some(format!(
                        "[{0},{1}] != -[{1},{0}]",
                        self.basis_names[i], self.basis_names[j]
                    ));
                    break 'anti;
                }
            }
        }
        let mut jacobi = AxiomCheck { axiom: "jacobi", passed: true, witness: None, detail: None };
        'jac: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (bi, bj, bk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket_unchecked(&self.bracket_unchecked(&bi, &bj), &bk);
                    let t2 = self.bracket_unchecked(&self.bracket_unchecked(&bj, &bk), &bi);
                    let t3 = self.bracket_unchecked(&self.bracket_unchecked(&bk, &bi), &bj);
                    let s = self.add(&self.add(&t1, &t2), &t3);
                    if s.iter().any(|c| !c.is_zero()) {
                        jacobi.passed = false;
                        jacobi.witness = Some(vec![i, j, k]);
                        jacobi.detail = Some(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[k]
                        ));
                        break 'jac;
                    }
                }
            }
        }
        let mut grading = AxiomCheck { axiom: "grading", passed: true, witness: None, detail: None };
        'grad: for i in 0..n {
            for j in 0..n {
                let target = (self.degrees[i] + self.degrees[j]) % 2;
                if let Some(k) = (0..n).find(|&k| !self.constant(i, j)[k].is_zero() && self.degrees[k] != target) {
                    grading.passed = false;
                    grading.witness = Some(vec![i, j, k]);
                    grading.detail = Some(format!(
                        "[{}, {}] has a component along {} of degree {}, expected degree {}",
                        self.basis_names[i], self.basis_names[j], self.basis_names[k], self.degrees[k], target
                    ));
                    break 'grad;
                }
            }
        }
        ValidationReport { checks: vec![anti, jacobi, grading] }
    }
}

fn m2_units() -> [Mat2; 4] {
    [mat2::unit(0, 0), mat2::unit(0, 1), mat2::unit(1, 0), mat2::unit(1, 1)]
}

/// (e₁₁+e₂₂, e₁₂+b e₂₁, e₁₁−e₂₂, e₁₂−b e₂₁).
pub fn m2_grading_iii_basis(field: &Field, b: Fe) -> [Mat2; 4] {
    let one = mat2::identity();
    let h = mat2::sub(field, &mat2::unit(0, 0), &mat2::unit(1, 1));
    let be21 = mat2::scale(field, b, &mat2::unit(1, 0));
    let u = mat2::add(field, &mat2::unit(0, 1), &be21);
    let v = mat2::sub(field, &mat2::unit(0, 1), &be21);
    [one, u, h, v]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn el(f: &Field, xs: &[i64]) -> Element {
        xs.iter().map(|&x| f.elem(x)).collect()
    }

    #[test]
    fn sl2_relations() {
        let f = gf(5);
        let l = GradedLieAlgebra::sl2(f);
        let (h, e, ff) = (l.basis_vector(0), l.basis_vector(1), l.basis_vector(2));
        assert_eq!(l.bracket(&e, &ff).unwrap(), h);
        assert_eq!(l.bracket(&h, &e).unwrap(), el(&f, &[0, 2, 0]));
        assert_eq!(l.bracket(&h, &ff).unwrap(), el(&f, &[0, 0, -2]));
        assert_eq!(l.degrees(), &[0, 1, 1]);
        let ad = l.ad_matrix(&h).unwrap();
        assert_eq!([ad[(0, 0)], ad[(1, 1)], ad[(2, 2)]], [f.elem(0), f.elem(2), f.elem(-2)]);
        assert!(matches!(l.bracket(&h, &el(&f, &[1, 0])), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn span_e11_e12_relations() {
        let f = gf(5);
        let l = GradedLieAlgebra::span_e11_e12(f);
        assert_eq!(l.bracket(&l.basis_vector(0), &l.basis_vector(1)).unwrap(), l.basis_vector(1));
        assert_eq!(l.degrees(), &[0, 1]);
    }

    #[test]
    fn grading_iii_components() {
        let f = gf(5);
        let l = GradedLieAlgebra::m2_grading_iii(f, f.elem(2)).unwrap();
        assert!(l.validate().passed());
        assert_eq!(l.component_dim(0), 2);
        let uv = l.bracket(&l.basis_vector(1), &l.basis_vector(3)).unwrap();
        assert!(l.is_homogeneous_of(&uv, 1));
        assert!(GradedLieAlgebra::m2_grading_iii(f, f.elem(4)).is_err());
    }

    #[test]
    fn validate_catches_bad_grading() {
        let f = gf(5);
        let bad = GradedLieAlgebra::sl2(f).with_degrees(vec![0, 1, 0]);
        match bad {
            Err(Error::SpecError { axiom, .. }) => assert_eq!(axiom, "grading"),
            other => panic!("unexpected {other:?}"),
        }
        let l = GradedLieAlgebra::sl2(f);
        let relabeled = GradedLieAlgebra::from_constants_unchecked("x", f, vec![0, 1, 0], l.basis_names.clone(), l.constants.clone()).unwrap();
        let report = relabeled.validate();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.axiom, "grading");
        let w = fail.witness.clone().unwrap();
        assert_eq!(relabeled.degrees()[w[2]], (relabeled.degrees()[w[0]] + relabeled.degrees()[w[1]] + 1) % 2);
    }

    #[test]
    fn validate_catches_broken_antisymmetry() {
        let f = gf(5);
        let l = GradedLieAlgebra::sl2(f);
        let mut c = l.constants.clone();
        c[(3 + 2) * 3] = f.elem(2); // [e, f] = 2h but [f, e] = -h
        let bad = GradedLieAlgebra::from_constants_unchecked("bad", f, vec![0, 1, 1], l.basis_names.clone(), c).unwrap();
        assert_eq!(bad.validate().first_failure().unwrap().axiom, "anticommutativity");
    }

    #[test]
    fn builtins_validate_over_several_fields() {
        for q in [5, 7, 25] {
            let f = gf(q);
            let b = f.find_nonsquare();
            let algs = vec![
                GradedLieAlgebra::sl2(f),
                GradedLieAlgebra::gl2(f),
                GradedLieAlgebra::m2_grading_i(f),
                GradedLieAlgebra::m2_grading_ii(f),
                GradedLieAlgebra::m2_grading_iii(f, b).unwrap(),
                GradedLieAlgebra::span_e11_e12(f),
                GradedLieAlgebra::heisenberg(f),
                GradedLieAlgebra::direct_sum(&[GradedLieAlgebra::sl2(f), GradedLieAlgebra::span_e11_e12(f)]).unwrap(),
            ];
            for a in algs {
                assert!(a.validate().passed(), "{} over {f}", a.name());
            }
        }
    }

    #[test]
    fn bracket_is_alternating() {
        let f = gf(7);
        let l = GradedLieAlgebra::gl2(f);
        let all = SubspaceBasis::full(4);
        for a in all.elements(&f).step_by(37) {
            assert!(l.bracket(&a, &a).unwrap().iter().all(|c| c.is_zero()));
        }
    }
}
