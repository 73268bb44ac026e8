//! Z₂-gradings of M₂(F) and sl₂(F) over prime fields.
//!
//! In odd characteristic a Z₂-grading is the same thing as an involutive
//! automorphism: the even and odd parts are its ±1 eigenspaces. Gradings are
//! therefore enumerated from the automorphism group and classified by orbits
//! under it.
//!
//! Coordinates: M₂ and gl₂ use (e₁₁, e₁₂, e₂₁, e₂₂); sl₂ uses (h, e, f) with
//! h = e₁₁ − e₂₂, e = e₁₂, f = e₂₁.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraSpec, Element, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::mat2::{self, Mat2};

/// The algebra whose gradings are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// M₂ as an associative algebra.
    M2Assoc,
    /// M₂ under the commutator; Lie gradings need not be associative.
    Gl2Lie,
    Sl2Lie,
}

impl Target {
    pub fn dim(self) -> usize {
        match self {
            Target::Sl2Lie => 3,
            _ => 4,
        }
    }

    /// The matrices realizing the coordinate basis.
    pub fn basis_matrices(self, field: &Field) -> Vec<Mat2> {
        match self {
            Target::Sl2Lie => vec![sl2_h(field), mat2::unit(0, 1), mat2::unit(1, 0)],
            _ => vec![mat2::unit(0, 0), mat2::unit(0, 1), mat2::unit(1, 0), mat2::unit(1, 1)],
        }
    }

    /// The ungraded parent algebra in coordinate basis.
    pub fn parent(self, field: Field) -> GradedLieAlgebra {
        match self {
            Target::Sl2Lie => GradedLieAlgebra::sl2(field).with_degrees(vec![0; 3]).expect("trivial grading"),
            _ => GradedLieAlgebra::m2_grading_i(field).renamed("gl2"),
        }
    }

    fn is_matrix_algebra(self) -> bool {
        self != Target::Sl2Lie
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::M2Assoc => "m2",
            Target::Gl2Lie => "gl2",
            Target::Sl2Lie => "sl2",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        match s {
            "m2" | "m2_assoc" | "m2-assoc" => Ok(Target::M2Assoc),
            "gl2" | "gl2_lie" | "gl2-lie" => Ok(Target::Gl2Lie),
            "sl2" | "sl2_lie" | "sl2-lie" => Ok(Target::Sl2Lie),
            _ => Err(Error::InvalidInput(format!("unknown grading target `{s}` (expected m2, gl2 or sl2)"))),
        }
    }
}

fn sl2_h(field: &Field) -> Mat2 {
    mat2::sub(field, &mat2::unit(0, 0), &mat2::unit(1, 1))
}

type Product = fn(&Field, &Mat2, &Mat2) -> Mat2;

fn display_field<S: Serializer>(f: &Field, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

/// A linear automorphism of the target, as a matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub matrix: Matrix,
    pub origin: String,
}

impl Automorphism {
    pub fn is_involution(&self, field: &Field) -> bool {
        let n = self.matrix.rows();
        self.matrix.mul(field, &self.matrix).map(|m| m == Matrix::identity(n)).unwrap_or(false)
    }
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Automorphism", 2)?;
        st.serialize_field("matrix", &self.matrix.to_rows())?;
        st.serialize_field("origin", &self.origin)?;
        st.end()
    }
}

fn require_prime(field: &Field) -> Result<()> {
    if field.k() > 1 {
        return Err(Error::UnsupportedField(format!(
            "grading enumeration needs a prime field, got {field}"
        )));
    }
    Ok(())
}

fn fmt_mat(field: &Field, m: &Mat2) -> String {
    let s = |x: Fe| field.signed(x).map_or_else(|| x.to_string(), |v| v.to_string());
    format!("[[{}, {}], [{}, {}]]", s(m[0][0]), s(m[0][1]), s(m[1][0]), s(m[1][1]))
}

/// Conjugation `X ↦ g X g⁻¹` on M₂ coordinates.
fn conjugation(field: &Field, g: &Mat2) -> Matrix {
    let gi = mat2::inverse(field, g).expect("g is invertible");
    let cols: Vec<Vec<Fe>> = Target::M2Assoc
        .basis_matrices(field)
        .iter()
        .map(|x| mat2::flatten(&mat2::mul(field, &mat2::mul(field, g, x), &gi)))
        .collect();
    Matrix::from_columns(4, &cols)
}

/// The automorphism group of the target, one matrix per automorphism.
///
/// M₂: conjugations by GL₂ (scalar multiples identified). gl₂: conjugations
/// combined with a nonzero rescaling of the centre. sl₂: every linear map
/// fixed by the images a = φ(e), b = φ(f), with φ(h) = [a, b], that respects
/// all brackets of the basis and is invertible.
pub fn automorphism_group(target: Target, field: &Field) -> Result<Vec<Automorphism>> {
    require_prime(field)?;
    match target {
        Target::M2Assoc => Ok(m2_automorphisms(field)),
        Target::Gl2Lie => {
            let half = field.inv(field.elem(2))?;
            let mut out = Vec::new();
            for c in field.nonzero() {
                for a in m2_automorphisms(field) {
                    // X = X₀ + (tr X / 2)·1 ↦ a(X₀) + c (tr X / 2)·1, with a(1) = 1.
                    let mut cols = Vec::new();
                    for (j, x) in Target::Gl2Lie.basis_matrices(field).iter().enumerate() {
                        let t = field.mul(half, field.add(x[0][0], x[1][1]));
                        let moved = a.matrix.column(j);
                        let mut v: Vec<Fe> = moved;
                        let shift = field.mul(field.sub(c, Fe::ONE), t);
                        v[0] = field.add(v[0], shift);
                        v[3] = field.add(v[3], shift);
                        cols.push(v);
                    }
                    out.push(Automorphism {
                        matrix: Matrix::from_columns(4, &cols),
                        origin: format!("{}; centre scaled by {}", a.origin, field.signed(c).unwrap_or(0)),
                    });
                }
            }
            Ok(out)
        }
        Target::Sl2Lie => Ok(sl2_automorphisms(field)),
    }
}

fn m2_automorphisms(field: &Field) -> Vec<Automorphism> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in mat2::general_linear_group(field) {
        let m = conjugation(field, &g);
        if seen.insert(m.clone()) {
            out.push(Automorphism { matrix: m, origin: format!("conjugation by {}", fmt_mat(field, &g)) });
        }
    }
    out
}

fn sl2_automorphisms(field: &Field) -> Vec<Automorphism> {
    let alg = GradedLieAlgebra::sl2(*field);
    let vectors: Vec<Element> = SubspaceBasis::full(3).elements(field).collect();
    let two = field.elem(2);
    let minus_two = field.elem(-2);
    let ok = |a: &Element, b: &Element| -> Option<Matrix> {
        let h = alg.bracket_unchecked(a, b);
        if alg.bracket_unchecked(&h, a) != alg.scale(two, a) || alg.bracket_unchecked(&h, b) != alg.scale(minus_two, b) {
            return None;
        }
        let m = Matrix::from_columns(3, &[h, a.clone(), b.clone()]);
        m.is_invertible(field).then_some(m)
    };
    let found: Vec<Vec<Matrix>> = vectors
        .par_iter()
        .map(|a| {
            // φ(e) is ad-nilpotent, so ad(a)³ = 0; this prunes most candidates.
            let ad = alg.ad_matrix(a).expect("right length");
            let ad3 = ad.mul(field, &ad).and_then(|m| m.mul(field, &ad)).expect("square");
            if a.iter().all(|x| x.is_zero()) || ad3 != Matrix::zeros(3, 3) {
                return Vec::new();
            }
            vectors.iter().filter_map(|b| ok(a, b)).collect()
        })
        .collect();
    let fmt = |v: &[Fe]| alg.format_element(v);
    found
        .into_iter()
        .flatten()
        .map(|m| {
            let origin = format!("e -> {}, f -> {}", fmt(&m.column(1)), fmt(&m.column(2)));
            Automorphism { matrix: m, origin }
        })
        .collect()
}

/// A splitting `even ⊕ odd` of the target, in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingDescriptor {
    pub target: Target,
    #[serde(serialize_with = "display_field")]
    pub field: Field,
    pub even: SubspaceBasis,
    pub odd: SubspaceBasis,
    pub origin: String,
}

impl GradingDescriptor {
    /// Builds a descriptor, checking every grading invariant.
    pub fn new(target: Target, field: Field, even: SubspaceBasis, odd: SubspaceBasis, origin: impl Into<String>) -> Result<GradingDescriptor> {
        let g = GradingDescriptor { target, field, even, odd, origin: origin.into() };
        g.check_invariants()?;
        Ok(g)
    }

    /// Builds the descriptor from spanning vectors of the two parts.
    pub fn from_vectors(target: Target, field: Field, even: Vec<Vec<Fe>>, odd: Vec<Vec<Fe>>, origin: impl Into<String>) -> Result<GradingDescriptor> {
        let n = target.dim();
        Self::new(
            target,
            field,
            SubspaceBasis::from_vectors(&field, n, even),
            SubspaceBasis::from_vectors(&field, n, odd),
            origin,
        )
    }

    /// The ±1 eigensplit of an involution.
    pub fn from_involution(target: Target, field: Field, aut: &Automorphism) -> Result<GradingDescriptor> {
        let n = target.dim();
        if aut.matrix.rows() != n || !aut.is_involution(&field) {
            return Err(Error::InvalidInput(format!("{} is not an involution of {target}", aut.origin)));
        }
        let id = Matrix::identity(n);
        let even = aut.matrix.sub(&field, &id).kernel(&field);
        let odd = aut.matrix.sub(&field, &id.scale(&field, field.elem(-1))).kernel(&field);
        Self::new(target, field, even, odd, aut.origin.clone())
    }

    pub fn dim_even(&self) -> usize {
        self.even.dim()
    }

    pub fn dim_odd(&self) -> usize {
        self.odd.dim()
    }

    fn part(&self, degree: u8) -> &SubspaceBasis {
        if degree == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    fn to_matrix(&self, v: &[Fe]) -> Mat2 {
        mat2::combine(&self.field, v, &self.target.basis_matrices(&self.field))
    }

    fn coords_of(&self, m: &Mat2) -> Vec<Fe> {
        match self.target {
            Target::Sl2Lie => vec![m[0][0], m[0][1], m[1][0]],
            _ => mat2::flatten(m),
        }
    }

    /// Bases of the even and odd parts as matrices.
    pub fn matrices(&self) -> (Vec<Mat2>, Vec<Mat2>) {
        let conv = |s: &SubspaceBasis| s.rows().iter().map(|r| self.to_matrix(r)).collect();
        (conv(&self.even), conv(&self.odd))
    }

    /// Checks `even ⊕ odd = parent`, the three bracket inclusions and, for
    /// associative targets, closure under matrix multiplication.
    pub fn check_invariants(&self) -> Result<()> {
        let f = &self.field;
        let n = self.target.dim();
        let fail = |axiom: &str, detail: String| Err(Error::SpecError { axiom: axiom.into(), detail });
        if self.even.ambient_dim() != n || self.odd.ambient_dim() != n {
            return Err(Error::AmbientMismatch(format!("grading of {} needs vectors of length {n}", self.target)));
        }
        if self.even.dim() + self.odd.dim() != n || !self.even.sum(f, &self.odd)?.is_full() {
            return fail("direct sum", format!("even ({}) and odd ({}) do not split the algebra", self.even.dim(), self.odd.dim()));
        }
        let mut products: Vec<(&str, Product)> = vec![("bracket", mat2::commutator)];
        if self.target == Target::M2Assoc {
            products.push(("product", mat2::mul));
        }
        for (name, op) in products {
            for i in 0..2u8 {
                for j in 0..2u8 {
                    for a in self.part(i).rows() {
                        for b in self.part(j).rows() {
                            let c = self.coords_of(&op(f, &self.to_matrix(a), &self.to_matrix(b)));
                            if !self.part(i ^ j).contains(f, &c)? {
                                return fail(
                                    "grading compatibility",
                                    format!("{name} of degrees {i} and {j} leaves the degree-{} part", i ^ j),
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The image grading under an automorphism.
    pub fn transform(&self, aut: &Automorphism) -> Result<GradingDescriptor> {
        Ok(GradingDescriptor {
            target: self.target,
            field: self.field,
            even: self.even.image(&self.field, &aut.matrix)?,
            odd: self.odd.image(&self.field, &aut.matrix)?,
            origin: format!("{} after {}", self.origin, aut.origin),
        })
    }

    fn key(&self) -> (SubspaceBasis, SubspaceBasis) {
        (self.even.clone(), self.odd.clone())
    }

    /// Same split, ignoring the origin tag.
    pub fn same_split(&self, other: &GradingDescriptor) -> bool {
        self.target == other.target && self.even == other.even && self.odd == other.odd
    }

    /// The graded Lie algebra in the homogeneous basis (even basis first).
    pub fn to_algebra(&self) -> Result<GradedLieAlgebra> {
        let (ev, od) = self.matrices();
        let basis: Vec<Mat2> = ev.iter().chain(&od).copied().collect();
        let degrees: Vec<u8> = std::iter::repeat_n(0, ev.len()).chain(std::iter::repeat_n(1, od.len())).collect();
        let names: Vec<String> = (1..=ev.len()).map(|i| format!("a{i}")).chain((1..=od.len()).map(|i| format!("b{i}"))).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        GradedLieAlgebra::from_matrix_basis(&format!("{}-graded", self.target), self.field, &basis, degrees, &names)
    }

    /// The algebra spec of [`to_algebra`](Self::to_algebra) with an `even_basis` block.
    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let alg = self.to_algebra()?;
        let mut spec = AlgebraSpec::from_algebra(&alg);
        let n = alg.dim();
        spec.even_basis = Some((0..self.dim_even()).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect());
        Ok(spec)
    }

    /// Whether the identity matrix is even. Only meaningful for M₂/gl₂.
    pub fn unit_in_even(&self) -> Result<bool> {
        if !self.target.is_matrix_algebra() {
            return Err(Error::InvalidInput("the unit lives in M₂, not in sl₂".into()));
        }
        self.even.contains(&self.field, &mat2::flatten(&mat2::identity()))
    }

    /// Whether the split is closed under matrix multiplication.
    pub fn is_associative_grading(&self) -> Result<bool> {
        if !self.target.is_matrix_algebra() {
            return Err(Error::InvalidInput("sl₂ is not closed under matrix multiplication".into()));
        }
        let f = &self.field;
        for i in 0..2u8 {
            for j in 0..2u8 {
                for a in self.part(i).rows() {
                    for b in self.part(j).rows() {
                        let c = mat2::flatten(&mat2::mul(f, &self.to_matrix(a), &self.to_matrix(b)));
                        if !self.part(i ^ j).contains(f, &c)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Decides `[z, y^q] = [z, y]` for every even `y` and odd `z`.
    /// The identity is linear in `z`, so odd basis vectors suffice.
    pub fn q_power_identity(&self) -> QPowerCheck {
        let f = &self.field;
        let parent = self.target.parent(*f);
        let q = f.q();
        for y in self.even.elements(f) {
            for z in self.odd.rows() {
                let once = parent.bracket_unchecked(z, &y);
                let mut acc = once.clone();
                for _ in 1..q {
                    acc = parent.bracket_unchecked(&acc, &y);
                }
                if acc != once {
                    return QPowerCheck {
                        holds: false,
                        witness: Some(QPowerWitness {
                            y: parent.format_element(&y),
                            z: parent.format_element(z),
                            lhs: parent.format_element(&acc),
                            rhs: parent.format_element(&once),
                        }),
                    };
                }
            }
        }
        QPowerCheck { holds: true, witness: None }
    }

    /// The gl₂ split obtained by adding the identity matrix to one part.
    pub fn extend_to_gl2(&self, unit_degree: u8) -> Result<GradingDescriptor> {
        if self.target != Target::Sl2Lie {
            return Err(Error::InvalidInput("only sl₂ gradings extend to gl₂".into()));
        }
        let (ev, od) = self.matrices();
        let mut parts = [ev, od];
        parts[usize::from(unit_degree & 1)].push(mat2::identity());
        let [ev, od] = parts;
        GradingDescriptor::from_vectors(
            Target::Gl2Lie,
            self.field,
            ev.iter().map(mat2::flatten).collect(),
            od.iter().map(mat2::flatten).collect(),
            format!("{}; unit {}", self.origin, if unit_degree & 1 == 0 { "even" } else { "odd" }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPowerWitness {
    pub y: String,
    pub z: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPowerCheck {
    pub holds: bool,
    pub witness: Option<QPowerWitness>,
}

/// All gradings of the target, one per involutive automorphism (the
/// identity gives the trivial grading).
pub fn enumerate_z2_gradings(target: Target, field: &Field) -> Result<Vec<GradingDescriptor>> {
    let autos = automorphism_group(target, field)?;
    gradings_from_automorphisms(target, field, &autos)
}

pub fn gradings_from_automorphisms(target: Target, field: &Field, autos: &[Automorphism]) -> Result<Vec<GradingDescriptor>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in autos.iter().filter(|a| a.is_involution(field)) {
        let g = GradingDescriptor::from_involution(target, *field, a)?;
        if seen.insert(g.key()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Finds an automorphism carrying `a` onto `b`.
pub fn find_isomorphism<'a>(a: &GradingDescriptor, b: &GradingDescriptor, autos: &'a [Automorphism]) -> Result<Option<&'a Automorphism>> {
    if a.target != b.target || a.dim_even() != b.dim_even() {
        return Ok(None);
    }
    for aut in autos {
        let t = a.transform(aut)?;
        if t.same_split(b) {
            return Ok(Some(aut));
        }
    }
    Ok(None)
}

/// The gradings displayed in the classification of M₂ (I, II, III) or the
/// three sl₂ types (trivial, natural, non-square), with the first non-square.
pub fn canonical_gradings(target: Target, field: &Field) -> Result<Vec<(String, GradingDescriptor)>> {
    let f = *field;
    let b = f.find_nonsquare();
    let flat = |ms: &[Mat2]| ms.iter().map(mat2::flatten).collect::<Vec<_>>();
    match target {
        Target::Sl2Lie => {
            let v = |h: i64, e: i64, ff: Fe| vec![f.elem(h), f.elem(e), ff];
            Ok(vec![
                (
                    "trivial".into(),
                    GradingDescriptor::from_vectors(target, f, vec![v(1, 0, Fe::ZERO), v(0, 1, Fe::ZERO), v(0, 0, Fe::ONE)], vec![], "trivial")?,
                ),
                (
                    "natural".into(),
                    GradingDescriptor::from_vectors(target, f, vec![v(1, 0, Fe::ZERO)], vec![v(0, 1, Fe::ZERO), v(0, 0, Fe::ONE)], "natural")?,
                ),
                (
                    "nonsquare".into(),
                    GradingDescriptor::from_vectors(target, f, vec![v(0, 1, b)], vec![v(1, 0, Fe::ZERO), v(0, 1, f.neg(b))], format!("non-square b = {b}"))?,
                ),
            ])
        }
        _ => {
            let u = Target::M2Assoc.basis_matrices(&f);
            let [one, ub, h, vb] = crate::algebra::m2_grading_iii_basis(&f, b);
            Ok(vec![
                ("I".into(), GradingDescriptor::from_vectors(target, f, flat(&u), vec![], "I: trivial")?),
                ("II".into(), GradingDescriptor::from_vectors(target, f, flat(&[u[0], u[3]]), flat(&[u[1], u[2]]), "II: diagonal")?),
                ("III".into(), GradingDescriptor::from_vectors(target, f, flat(&[one, ub]), flat(&[h, vb]), format!("III: non-square b = {b}"))?),
            ])
        }
    }
}

/// An isomorphism class of gradings with its separating invariants.
#[derive(Clone, Debug, Serialize)]
pub struct GradingClass {
    /// Name of the canonical grading in this class, if any.
    pub label: Option<String>,
    /// The canonical grading when there is one, else the first member.
    pub representative: GradingDescriptor,
    /// Indices into the classified list.
    pub members: Vec<usize>,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub q_power_identity: bool,
    /// Only for M₂/gl₂.
    pub unit_in_even: Option<bool>,
    pub associative: Option<bool>,
}

/// Orbits of the gradings under the automorphism group.
pub fn classify_up_to_iso(gradings: &[GradingDescriptor], autos: &[Automorphism]) -> Result<Vec<GradingClass>> {
    let Some(first) = gradings.first() else { return Ok(Vec::new()) };
    if gradings.iter().any(|g| g.target != first.target || g.field != first.field) {
        return Err(Error::AmbientMismatch("gradings do not share a parent".into()));
    }
    let index: HashMap<_, usize> = gradings.iter().enumerate().map(|(i, g)| (g.key(), i)).collect();
    let mut class_of = vec![usize::MAX; gradings.len()];
    let mut classes = Vec::new();
    let canon = canonical_gradings(first.target, &first.field)?;
    for (i, g) in gradings.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        let mut orbit = std::collections::HashSet::new();
        for aut in autos {
            let t = g.transform(aut)?;
            if let Some(&j) = index.get(&t.key()) {
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
            orbit.insert(t.key());
        }
        class_of[i] = c;
        if !members.contains(&i) {
            members.push(i);
        }
        members.sort_unstable();
        let found = canon.iter().find(|(_, cg)| orbit.contains(&cg.key()));
        let label = found.map(|(l, _)| l.clone());
        let representative = found.map_or_else(|| g.clone(), |(_, cg)| cg.clone());
        let matrix = g.target.is_matrix_algebra();
        classes.push(GradingClass {
            label,
            representative,
            members,
            dim_even: g.dim_even(),
            dim_odd: g.dim_odd(),
            q_power_identity: g.q_power_identity().holds,
            unit_in_even: if matrix { Some(g.unit_in_even()?) } else { None },
            associative: if matrix { Some(g.is_associative_grading()?) } else { None },
        });
    }
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitComponentReport {
    pub unit_in_even: bool,
    /// Direct check of closure under matrix multiplication.
    pub associative: bool,
}

impl UnitComponentReport {
    pub fn agrees(&self) -> bool {
        self.unit_in_even == self.associative
    }
}

/// Whether 1 is even, cross-checked against associative closure.
pub fn unit_component_check(g: &GradingDescriptor) -> Result<UnitComponentReport> {
    Ok(UnitComponentReport { unit_in_even: g.unit_in_even()?, associative: g.is_associative_grading()? })
}

/// Every Lie grading of gl₂: an sl₂ grading with the unit placed in either part.
pub fn gl2_lie_splits(field: &Field) -> Result<Vec<GradingDescriptor>> {
    let mut out = Vec::new();
    for g in enumerate_z2_gradings(Target::Sl2Lie, field)? {
        out.push(g.extend_to_gl2(0)?);
        out.push(g.extend_to_gl2(1)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalVerdict {
    pub dim_even_is_one: bool,
    /// `[a, c^q] = [a, c]` for odd `a` and `c ∈ F·1 ⊕ even`, computed in gl₂.
    pub q_power_identity: QPowerCheck,
    pub hypotheses_hold: bool,
    pub failing_hypothesis: Option<String>,
    /// A graded isomorphism onto the natural grading.
    pub isomorphism: Option<Automorphism>,
}

/// If `g` has a one-dimensional even part and satisfies the q-power
/// identity, exhibits an automorphism carrying it to the natural grading.
pub fn natural_characterization(g: &GradingDescriptor, autos: &[Automorphism]) -> Result<NaturalVerdict> {
    if g.target != Target::Sl2Lie {
        return Err(Error::InvalidInput("the characterization concerns sl₂ gradings".into()));
    }
    require_prime(&g.field)?;
    let dim_even_is_one = g.dim_even() == 1;
    let q_power_identity = g.extend_to_gl2(0)?.q_power_identity();
    let failing_hypothesis = if !dim_even_is_one {
        Some(format!("even part has dimension {}", g.dim_even()))
    } else if !q_power_identity.holds {
        Some("q-power identity fails".to_string())
    } else {
        None
    };
    let hypotheses_hold = failing_hypothesis.is_none();
    let mut isomorphism = None;
    if hypotheses_hold {
        let natural = canonical_gradings(Target::Sl2Lie, &g.field)?.swap_remove(1).1;
        let aut = find_isomorphism(g, &natural, autos)?.ok_or_else(|| {
            Error::TheoremViolation(format!("{}: hypotheses hold but no isomorphism to the natural grading", g.origin))
        })?;
        isomorphism = Some(aut.clone());
    }
    Ok(NaturalVerdict { dim_even_is_one, q_power_identity, hypotheses_hold, failing_hypothesis, isomorphism })
}

/// Both sides of `[h, u] ` versus `[h, u, …, u]` (q copies of u) for
/// h = e₁₁ − e₂₂ and u = e₁₂ + b e₂₁.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BobocReport {
    #[serde(serialize_with = "display_field")]
    pub field: Field,
    pub b: Fe,
    pub b_is_square: bool,
    pub lhs: Mat2,
    pub rhs: Mat2,
    pub equal: bool,
}

pub fn boboc_sides(field: &Field, b: Fe) -> BobocReport {
    let h = sl2_h(field);
    let u = mat2::add(field, &mat2::unit(0, 1), &mat2::scale(field, b, &mat2::unit(1, 0)));
    let lhs = mat2::commutator(field, &h, &u);
    let mut rhs = lhs;
    for _ in 1..field.q() {
        rhs = mat2::commutator(field, &rhs, &u);
    }
    BobocReport { field: *field, b, b_is_square: field.is_square(b), lhs, rhs, equal: lhs == rhs }
}

/// The inequality for the first non-square b; equality is a theorem violation.
pub fn remark_boboc(field: &Field) -> Result<BobocReport> {
    if field.q().is_multiple_of(2) {
        return Err(Error::UnsupportedField(format!("{field} has even order")));
    }
    let r = boboc_sides(field, field.find_nonsquare());
    if r.equal {
        return Err(Error::TheoremViolation(format!("both sides agree for b = {} over {field}", r.b)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn group_orders() {
        let f = gf(5);
        assert_eq!(automorphism_group(Target::M2Assoc, &f).unwrap().len(), 120);
        assert_eq!(automorphism_group(Target::Sl2Lie, &f).unwrap().len(), 120);
        assert_eq!(automorphism_group(Target::Gl2Lie, &f).unwrap().len(), 480);
    }

    #[test]
    fn sl2_automorphisms_respect_brackets() {
        let f = gf(5);
        let alg = GradedLieAlgebra::sl2(f);
        for a in automorphism_group(Target::Sl2Lie, &f).unwrap().iter().step_by(7) {
            for i in 0..3 {
                for j in 0..3 {
                    let (x, y) = (alg.basis_vector(i), alg.basis_vector(j));
                    let lhs = a.matrix.apply(&f, &alg.bracket_unchecked(&x, &y));
                    let rhs = alg.bracket_unchecked(&a.matrix.apply(&f, &x), &a.matrix.apply(&f, &y));
                    assert_eq!(lhs, rhs, "{}", a.origin);
                }
            }
        }
    }

    #[test]
    fn extension_fields_are_refused() {
        let f = gf(25);
        assert!(matches!(enumerate_z2_gradings(Target::Sl2Lie, &f), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn m2_enumeration() {
        let f = gf(5);
        let gs = enumerate_z2_gradings(Target::M2Assoc, &f).unwrap();
        assert_eq!(gs.len(), 26);
        assert!(gs.iter().any(|g| g.odd.is_zero()));
        let canon = canonical_gradings(Target::M2Assoc, &f).unwrap();
        assert!(gs.iter().any(|g| g.same_split(&canon[1].1)));
        for g in &gs {
            g.check_invariants().unwrap();
        }
    }

    #[test]
    fn sl2_enumeration() {
        let f = gf(5);
        let gs = enumerate_z2_gradings(Target::Sl2Lie, &f).unwrap();
        let natural = &canonical_gradings(Target::Sl2Lie, &f).unwrap()[1].1;
        assert!(gs.iter().any(|g| g.same_split(natural)));
        assert!(gs.iter().all(|g| !g.even.is_zero()));
    }

    #[test]
    fn class_counts() {
        for q in [5, 7] {
            let f = gf(q);
            for target in [Target::M2Assoc, Target::Sl2Lie] {
                let autos = automorphism_group(target, &f).unwrap();
                let gs = gradings_from_automorphisms(target, &f, &autos).unwrap();
                let classes = classify_up_to_iso(&gs, &autos).unwrap();
                assert_eq!(classes.len(), 3, "{target} over GF({q})");
                let mut labels: Vec<_> = classes.iter().map(|c| c.label.clone().unwrap()).collect();
                labels.sort();
                let mut want: Vec<_> = canonical_gradings(target, &f).unwrap().into_iter().map(|(l, _)| l).collect();
                want.sort();
                assert_eq!(labels, want);
                assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), gs.len());
            }
        }
    }

    #[test]
    fn conjugated_natural_grading_is_natural() {
        let f = gf(5);
        let autos = automorphism_group(Target::Sl2Lie, &f).unwrap();
        let gs = gradings_from_automorphisms(Target::Sl2Lie, &f, &autos).unwrap();
        let natural = canonical_gradings(Target::Sl2Lie, &f).unwrap().swap_remove(1).1;
        let g = [[Fe::ONE, Fe::ZERO], [Fe::ZERO, f.elem(2)]];
        let conj = natural.transform(&Automorphism { matrix: sl2_conjugation(&f, &g), origin: "diag(1,2)".into() }).unwrap();
        assert!(conj.same_split(&natural));
        let classes = classify_up_to_iso(&gs, &autos).unwrap();
        let nat_class = classes.iter().find(|c| c.label.as_deref() == Some("natural")).unwrap();
        assert!(nat_class.members.iter().any(|&i| gs[i].same_split(&conj)));
        let g = [[f.elem(1), f.elem(3)], [f.elem(2), f.elem(4)]];
        let moved = natural.transform(&Automorphism { matrix: sl2_conjugation(&f, &g), origin: "inner".into() }).unwrap();
        assert!(!moved.same_split(&natural));
        assert!(nat_class.members.iter().any(|&i| gs[i].same_split(&moved)));
        let v = natural_characterization(&moved, &autos).unwrap();
        assert!(v.hypotheses_hold);
        let iso = v.isomorphism.unwrap();
        assert!(moved.transform(&iso).unwrap().same_split(&natural));
    }

    fn sl2_conjugation(f: &Field, g: &Mat2) -> Matrix {
        let gi = mat2::inverse(f, g).unwrap();
        let cols: Vec<Vec<Fe>> = Target::Sl2Lie
            .basis_matrices(f)
            .iter()
            .map(|x| {
                let m = mat2::mul(f, &mat2::mul(f, g, x), &gi);
                vec![m[0][0], m[0][1], m[1][0]]
            })
            .collect();
        Matrix::from_columns(3, &cols)
    }

    #[test]
    fn unit_component() {
        let f = gf(5);
        let canon = canonical_gradings(Target::M2Assoc, &f).unwrap();
        for (_, g) in &canon {
            let r = unit_component_check(g).unwrap();
            assert!(r.unit_in_even && r.associative);
        }
        let u = Target::M2Assoc.basis_matrices(&f);
        let h = sl2_h(&f);
        let moved = GradingDescriptor::from_vectors(
            Target::Gl2Lie,
            f,
            vec![mat2::flatten(&h)],
            vec![mat2::flatten(&mat2::identity()), mat2::flatten(&u[1]), mat2::flatten(&u[2])],
            "unit moved to odd",
        )
        .unwrap();
        let r = unit_component_check(&moved).unwrap();
        assert!(!r.unit_in_even && !r.associative);
        assert!(GradingDescriptor::from_vectors(Target::M2Assoc, f, moved.even.rows().to_vec(), moved.odd.rows().to_vec(), "x").is_err());
    }

    #[test]
    fn gl2_splits_match_lie_automorphisms() {
        let f = gf(5);
        let lifted = gl2_lie_splits(&f).unwrap();
        let direct = enumerate_z2_gradings(Target::Gl2Lie, &f).unwrap();
        assert_eq!(lifted.len(), direct.len());
        assert!(lifted.iter().all(|g| direct.iter().any(|d| d.same_split(g))));
        for g in &lifted {
            assert!(unit_component_check(g).unwrap().agrees(), "{}", g.origin);
        }
    }

    #[test]
    fn natural_characterization_cases() {
        let f = gf(5);
        let autos = automorphism_group(Target::Sl2Lie, &f).unwrap();
        let canon = canonical_gradings(Target::Sl2Lie, &f).unwrap();
        let v = natural_characterization(&canon[1].1, &autos).unwrap();
        assert!(v.hypotheses_hold);
        assert_eq!(v.isomorphism.unwrap().matrix, Matrix::identity(3));
        let v = natural_characterization(&canon[2].1, &autos).unwrap();
        assert!(v.dim_even_is_one && !v.q_power_identity.holds && !v.hypotheses_hold);
        let v = natural_characterization(&canon[0].1, &autos).unwrap();
        assert!(!v.dim_even_is_one);
    }

    #[test]
    fn grading_iii_restricts_to_nonsquare_sl2_grading() {
        let f = gf(5);
        let b = f.find_nonsquare();
        let alg = canonical_gradings(Target::M2Assoc, &f).unwrap().swap_remove(2).1;
        let nonsq = canonical_gradings(Target::Sl2Lie, &f).unwrap().swap_remove(2).1;
        assert_eq!(b, f.elem(2));
        let lifted = nonsq.extend_to_gl2(0).unwrap();
        assert_eq!((&lifted.even, &lifted.odd), (&alg.even, &alg.odd));
    }

    #[test]
    fn q_power_identity_separates_natural_class() {
        for q in [5, 7] {
            let f = gf(q);
            let autos = automorphism_group(Target::Sl2Lie, &f).unwrap();
            let gs = gradings_from_automorphisms(Target::Sl2Lie, &f, &autos).unwrap();
            let natural = canonical_gradings(Target::Sl2Lie, &f).unwrap().swap_remove(1).1;
            for g in gs.iter().filter(|g| g.dim_even() == 1) {
                let is_natural = find_isomorphism(g, &natural, &autos).unwrap().is_some();
                assert_eq!(g.q_power_identity().holds, is_natural, "{}", g.origin);
            }
        }
    }

    #[test]
    fn boboc() {
        for q in [5, 7] {
            let f = gf(q);
            let r = remark_boboc(&f).unwrap();
            assert!(!r.equal && !r.b_is_square);
            assert_eq!(r.b, f.elem(if q == 5 { 2 } else { 3 }));
            let c = boboc_sides(&f, f.elem(4));
            assert!(c.b_is_square && c.equal);
        }
    }

    #[test]
    fn spec_round_trip() {
        let f = gf(5);
        let g = &canonical_gradings(Target::M2Assoc, &f).unwrap()[2].1;
        let spec = g.to_spec().unwrap();
        let text = spec.to_text();
        let parsed = AlgebraSpec::parse(&text).unwrap();
        let alg = parsed.build().unwrap();
        assert_eq!(alg.component_dim(0), 2);
        assert_eq!(parsed.even_subspace(&alg).unwrap().unwrap(), alg.component(0));
    }
}
