//! Ideals, series and structural invariants of small graded Lie algebras.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Element, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{eigen_decomposition, EigenBasis, Matrix, SubspaceBasis};

/// Default dimension cap for the enumeration-based radical and nilradical.
pub const DEFAULT_DIM_CAP: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub algebra: String,
    pub dim: usize,
    /// L, [L,L], L⁽²⁾, … until the series stabilizes.
    pub derived_series: Vec<SubspaceBasis>,
    /// L¹ = L, L² = [L,L], … until the series stabilizes.
    pub lower_central: Vec<SubspaceBasis>,
    pub center: SubspaceBasis,
    /// `None` when the dimension exceeds the cap.
    pub radical: Option<SubspaceBasis>,
    pub nilradical: Option<SubspaceBasis>,
    pub minimal_graded_ideals: Option<Vec<SubspaceBasis>>,
    pub monolithic: Option<bool>,
    pub graded_simple: Option<bool>,
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub metabelian: bool,
}

impl StructureReport {
    /// The unique minimal graded ideal, if the algebra is monolithic.
    pub fn monolith(&self) -> Option<&SubspaceBasis> {
        match (&self.monolithic, &self.minimal_graded_ideals) {
            (Some(true), Some(ideals)) => ideals.first(),
            _ => None,
        }
    }

    /// `[L, L]`.
    pub fn derived_algebra(&self) -> &SubspaceBasis {
        self.derived_series.get(1).unwrap_or(&self.derived_series[0])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeViolation {
    pub generators: Vec<Element>,
    pub subalgebra: SubspaceBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub generator_count_cap: usize,
    pub exhaustive: bool,
    pub subsets_checked: u64,
    pub nilpotent_subalgebras_seen: usize,
    pub violation: Option<ProbeViolation>,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootPair {
    pub lambda: Fe,
    pub neg_lambda: Fe,
    /// span{[V_λ, V_−λ]}.
    pub bracket_space: SubspaceBasis,
    /// span{[V_λ, V_−λ]} ⊕ V_λ is a subalgebra.
    pub positive_subalgebra: bool,
    /// span{[V_λ, V_−λ]} ⊕ V_−λ is a subalgebra.
    pub negative_subalgebra: bool,
    /// span{[V_λ, V_−λ]} ⊕ V_λ ⊕ V_−λ is a graded ideal.
    pub graded_ideal: bool,
    pub ideal: SubspaceBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub eigen: EigenBasis,
    /// Per eigenvalue, a basis of homogeneous eigenvectors with their degrees.
    pub homogeneous_basis: Vec<(Fe, Vec<(u8, Element)>)>,
    /// Every eigenspace is the direct sum of its even and odd parts.
    pub homogeneous_split: bool,
    /// Nonzero eigenvalues whose negatives are also eigenvalues, each pair once.
    pub pairs: Vec<RootPair>,
    /// Nonzero eigenvalues λ with −λ not an eigenvalue.
    pub unpaired: Vec<Fe>,
    /// V(ad a₀)₀ ∩ L₁ = 0.
    pub zero_space_meets_odd_trivially: bool,
    /// L₀ = Σ span{[V_λ, V_−λ]} over the pairs.
    pub even_part_from_root_brackets: bool,
}

impl GradedLieAlgebra {
    /// span{[a, b] : a ∈ A, b ∈ B}.
    pub fn bracket_spaces(&self, a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
        let mut out = SubspaceBasis::zero(self.dim());
        for x in a.rows() {
            for y in b.rows() {
                out.insert(self.field(), &self.bracket_unchecked(x, y));
            }
        }
        out
    }

    pub fn whole(&self) -> SubspaceBasis {
        SubspaceBasis::full(self.dim())
    }

    /// The ideal generated by `gens`: the smallest subspace containing them and
    /// closed under bracketing with every basis vector. With `graded`, each
    /// generator is first split into its homogeneous components.
    pub fn generated_ideal(&self, gens: &[Element], graded: bool) -> Result<SubspaceBasis> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("generated_ideal needs at least one generator".into()));
        }
        let f = self.field();
        let mut space = SubspaceBasis::zero(self.dim());
        let mut queue: Vec<Element> = Vec::new();
        for g in gens {
            if g.len() != self.dim() {
                return Err(Error::AmbientMismatch("generator length".into()));
            }
            if graded {
                queue.push(self.project(g, 0));
                queue.push(self.project(g, 1));
            } else {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            if space.insert(f, &v) {
                for j in 0..self.dim() {
                    let w = self.bracket_unchecked(&v, &self.basis_vector(j));
                    if !space.contains(f, &w)? {
                        queue.push(w);
                    }
                }
            }
        }
        Ok(space)
    }

    /// The subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Element]) -> SubspaceBasis {
        let f = self.field();
        let mut space = SubspaceBasis::zero(self.dim());
        let mut spanning: Vec<Element> = Vec::new();
        let mut queue: Vec<Element> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !space.insert(f, &v) {
                continue;
            }
            for u in &spanning {
                queue.push(self.bracket_unchecked(u, &v));
            }
            spanning.push(v);
        }
        space
    }

    pub fn is_subalgebra(&self, s: &SubspaceBasis) -> bool {
        self.bracket_spaces(s, s).is_subspace_of(self.field(), s).unwrap_or(false)
    }

    pub fn is_ideal(&self, s: &SubspaceBasis) -> bool {
        self.bracket_spaces(s, &self.whole()).is_subspace_of(self.field(), s).unwrap_or(false)
    }

    /// `s = (s ∩ L₀) ⊕ (s ∩ L₁)`.
    pub fn is_graded_subspace(&self, s: &SubspaceBasis) -> bool {
        let f = self.field();
        let even = s.intersect(f, &self.component(0)).expect("same ambient");
        let odd = s.intersect(f, &self.component(1)).expect("same ambient");
        even.dim() + odd.dim() == s.dim()
    }

    /// s, [s,s], [[s,s],[s,s]], … until two consecutive terms agree.
    pub fn derived_series_of(&self, s: &SubspaceBasis) -> Vec<SubspaceBasis> {
        let mut out = vec![s.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    /// s¹ = s, s^{k+1} = [s^k, s], until two consecutive terms agree.
    pub fn lower_central_series_of(&self, s: &SubspaceBasis) -> Vec<SubspaceBasis> {
        let mut out = vec![s.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, s);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable_subalgebra(&self, s: &SubspaceBasis) -> bool {
        self.derived_series_of(s).last().is_some_and(|t| t.is_zero())
    }

    pub fn is_nilpotent_subalgebra(&self, s: &SubspaceBasis) -> bool {
        self.lower_central_series_of(s).last().is_some_and(|t| t.is_zero())
    }

    pub fn is_abelian_subalgebra(&self, s: &SubspaceBasis) -> bool {
        self.bracket_spaces(s, s).is_zero()
    }

    /// `{a : [a, x] = 0 for all x ∈ s}` for an arbitrary subspace `s`.
    fn annihilator_of(&self, s: &SubspaceBasis) -> SubspaceBasis {
        let n = self.dim();
        // stack the maps a ↦ [a, x] for x in a basis of s
        let mut rows = Vec::new();
        for x in s.rows() {
            let cols: Vec<Element> = (0..n).map(|i| self.bracket_unchecked(&self.basis_vector(i), x)).collect();
            rows.extend(Matrix::from_columns(n, &cols).to_rows());
        }
        if rows.is_empty() {
            return self.whole();
        }
        Matrix::from_rows(&rows).expect("uniform rows").kernel(self.field())
    }

    pub fn center(&self) -> SubspaceBasis {
        self.annihilator_of(&self.whole())
    }

    /// `C_L(I) = {a ∈ L : [a, I] = 0}`; `I` must be an ideal.
    pub fn centralizer_of_ideal(&self, ideal: &SubspaceBasis) -> Result<SubspaceBasis> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::AmbientMismatch("ideal lives in another ambient space".into()));
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let c = self.annihilator_of(ideal);
        debug_assert!(self.is_ideal(&c));
        Ok(c)
    }

    /// Ideals `⟨x⟩` for every nonzero `x` in `s` (one per line through the origin).
    fn single_generated_ideals(&self, s: &SubspaceBasis, graded: bool) -> Vec<SubspaceBasis> {
        let f = self.field();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in s.projective_points(f) {
            let ideal = self.generated_ideal(&[x], graded).expect("nonempty generators");
            if seen.insert(ideal.clone()) {
                out.push(ideal);
            }
        }
        out
    }

    /// Structure summary. Radical, nilradical and the minimal graded ideals
    /// are found by enumerating single-generated ideals and are only computed
    /// when `dim ≤ dim_cap`.
    pub fn structure_report(&self, dim_cap: usize) -> StructureReport {
        let f = self.field();
        let whole = self.whole();
        let derived_series = self.derived_series_of(&whole);
        let lower_central = self.lower_central_series_of(&whole);
        let solvable = derived_series.last().is_some_and(|s| s.is_zero());
        let nilpotent = lower_central.last().is_some_and(|s| s.is_zero());
        let metabelian = derived_series.len() <= 3 && solvable;
        let abelian = derived_series.len() <= 2 && solvable;
        let mut report = StructureReport {
            algebra: self.name().to_string(),
            dim: self.dim(),
            center: self.center(),
            derived_series,
            lower_central,
            radical: None,
            nilradical: None,
            minimal_graded_ideals: None,
            monolithic: None,
            graded_simple: None,
            abelian,
            solvable,
            nilpotent,
            metabelian,
        };
        if self.dim() > dim_cap {
            return report;
        }
        let mut radical = SubspaceBasis::zero(self.dim());
        let mut nilradical = SubspaceBasis::zero(self.dim());
        for ideal in self.single_generated_ideals(&whole, false) {
            if self.is_solvable_subalgebra(&ideal) {
                radical = radical.sum(f, &ideal).expect("same ambient");
                if self.is_nilpotent_subalgebra(&ideal) {
                    nilradical = nilradical.sum(f, &ideal).expect("same ambient");
                }
            }
        }
        let mut graded_ideals = self.single_generated_ideals(&self.component(0), true);
        for i in self.single_generated_ideals(&self.component(1), true) {
            if !graded_ideals.contains(&i) {
                graded_ideals.push(i);
            }
        }
        let minimal: Vec<SubspaceBasis> = graded_ideals
            .iter()
            .filter(|i| {
                !graded_ideals
                    .iter()
                    .any(|j| j.dim() < i.dim() && j.is_subspace_of(f, i).expect("same ambient"))
            })
            .cloned()
            .collect();
        let has_proper = graded_ideals.iter().any(|i| !i.is_full());
        let derived_nonzero = !report.derived_algebra().is_zero() && !report.abelian;
        report.graded_simple = Some(self.dim() > 0 && derived_nonzero && !has_proper);
        report.monolithic = Some(minimal.len() == 1);
        report.minimal_graded_ideals = Some(minimal);
        report.radical = Some(radical);
        report.nilradical = Some(nilradical);
        report
    }

    /// Checks that the subalgebras generated by at most `generator_count_cap`
    /// elements are abelian whenever they are nilpotent. Exhaustive over lines
    /// when at most `budget` subsets arise, otherwise `budget` seeded samples.
    /// A clean result is a partial check, not a certificate.
    pub fn a_property_probe(&self, generator_count_cap: usize, budget: u64, seed: u64) -> ProbeReport {
        let f = self.field();
        let points: Vec<Element> = self.whole().projective_points(f).collect();
        let np = points.len() as u64;
        let cap = generator_count_cap.max(1);
        // number of subsets of size 2..=cap (singletons span abelian lines)
        let mut total: u64 = 0;
        let mut binom: u64 = 1;
        let mut overflow = false;
        for k in 1..=cap as u64 {
            binom = match binom.checked_mul(np.saturating_sub(k - 1)) {
                Some(b) => b / k,
                None => {
                    overflow = true;
                    break;
                }
            };
            if k >= 2 {
                total = total.saturating_add(binom);
            }
        }
        let exhaustive = !overflow && total <= budget;
        let mut seen: HashSet<SubspaceBasis> = HashSet::new();
        let mut checked = 0u64;
        let mut nil_seen = 0usize;
        let mut violation = None;
        let mut visit = |gens: Vec<Element>, checked: &mut u64| -> bool {
            *checked += 1;
            let sub = self.generated_subalgebra(&gens);
            if !seen.insert(sub.clone()) {
                return false;
            }
            if self.is_nilpotent_subalgebra(&sub) {
                nil_seen += 1;
                if !self.is_abelian_subalgebra(&sub) {
                    violation = Some(ProbeViolation { generators: gens, subalgebra: sub });
                    return true;
                }
            }
            false
        };
        if exhaustive {
            let mut stack: Vec<usize> = Vec::new();
            'outer: for size in 2..=cap {
                // lexicographic combinations of `size` indices
                stack.clear();
                stack.extend(0..size);
                if size > points.len() {
                    break;
                }
                loop {
                    let gens = stack.iter().map(|&i| points[i].clone()).collect();
                    if visit(gens, &mut checked) {
                        break 'outer;
                    }
                    let mut pos = size;
                    loop {
                        if pos == 0 {
                            continue 'outer;
                        }
                        pos -= 1;
                        if stack[pos] < points.len() - size + pos {
                            break;
                        }
                    }
                    stack[pos] += 1;
                    for t in pos + 1..size {
                        stack[t] = stack[t - 1] + 1;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..budget {
                let size = rng.gen_range(2..=cap.max(2));
                let gens = (0..size).map(|_| points[rng.gen_range(0..points.len())].clone()).collect();
                if visit(gens, &mut checked) {
                    break;
                }
            }
        }
        let summary = match &violation {
            Some(_) => "violation: a nilpotent non-abelian subalgebra was found".to_string(),
            None => format!(
                "no violation found (partial check: subalgebras generated by at most {cap} elements, {})",
                if exhaustive { "exhaustive" } else { "sampled" }
            ),
        };
        ProbeReport {
            generator_count_cap: cap,
            exhaustive,
            subsets_checked: checked,
            nilpotent_subalgebras_seen: nil_seen,
            violation,
            summary,
        }
    }

    /// Eigenspace decomposition of `ad a₀` for an even `a₀`, refined to
    /// homogeneous eigenvectors, with the root-pair subalgebra and ideal tests.
    pub fn root_decomposition(&self, a0: &[Fe]) -> Result<RootReport> {
        if a0.len() != self.dim() {
            return Err(Error::AmbientMismatch("a0 length".into()));
        }
        if !self.is_homogeneous_of(a0, 0) {
            return Err(Error::InvalidInput("a0 must be homogeneous of degree 0".into()));
        }
        let f = self.field();
        let eigen = eigen_decomposition(f, &self.ad_matrix(a0)?)?;
        if !eigen.diagonalizable {
            return Err(Error::NotDiagonalizable);
        }
        let (even, odd) = (self.component(0), self.component(1));
        let mut homogeneous_basis = Vec::new();
        let mut split = true;
        for (lambda, space) in &eigen.pairs {
            let e = space.intersect(f, &even)?;
            let o = space.intersect(f, &odd)?;
            split &= e.dim() + o.dim() == space.dim();
            let mut vecs: Vec<(u8, Element)> = e.rows().iter().map(|r| (0, r.clone())).collect();
            vecs.extend(o.rows().iter().map(|r| (1, r.clone())));
            homogeneous_basis.push((*lambda, vecs));
        }
        let mut pairs = Vec::new();
        let mut unpaired = Vec::new();
        let mut bracket_sum = SubspaceBasis::zero(self.dim());
        for (lambda, pos) in &eigen.pairs {
            if lambda.is_zero() {
                continue;
            }
            let neg_lambda = f.neg(*lambda);
            let Some(neg) = eigen.eigenspace(neg_lambda) else {
                unpaired.push(*lambda);
                continue;
            };
            if neg_lambda < *lambda {
                continue;
            }
            let w = self.bracket_spaces(pos, neg);
            bracket_sum = bracket_sum.sum(f, &w)?;
            let with_pos = w.sum(f, pos)?;
            let with_neg = w.sum(f, neg)?;
            let ideal = with_pos.sum(f, neg)?;
            pairs.push(RootPair {
                lambda: *lambda,
                neg_lambda,
                positive_subalgebra: self.is_subalgebra(&with_pos),
                negative_subalgebra: self.is_subalgebra(&with_neg),
                graded_ideal: self.is_ideal(&ideal) && self.is_graded_subspace(&ideal),
                bracket_space: w,
                ideal,
            });
        }
        let zero_odd = match eigen.eigenspace(Fe::ZERO) {
            Some(v0) => v0.intersect(f, &odd)?.is_zero(),
            None => true,
        };
        Ok(RootReport {
            even_part_from_root_brackets: bracket_sum == even,
            eigen,
            homogeneous_basis,
            homogeneous_split: split,
            pairs,
            unpaired,
            zero_space_meets_odd_trivially: zero_odd,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn span(f: &Field, n: usize, rows: &[&[i64]]) -> SubspaceBasis {
        SubspaceBasis::from_vectors(f, n, rows.iter().map(|r| r.iter().map(|&x| f.elem(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn generated_ideal_examples() {
        let f = gf(5);
        let sl2 = GradedLieAlgebra::sl2(f);
        assert_eq!(sl2.generated_ideal(&[sl2.basis_vector(0)], false).unwrap().dim(), 3);
        let b = GradedLieAlgebra::span_e11_e12(f);
        assert_eq!(b.generated_ideal(&[b.basis_vector(1)], false).unwrap(), span(&f, 2, &[&[0, 1]]));
        let ab = GradedLieAlgebra::abelian(f, vec![0]);
        assert_eq!(ab.generated_ideal(&[ab.basis_vector(0)], true).unwrap().dim(), 1);
        assert!(sl2.generated_ideal(&[], false).is_err());
    }

    #[test]
    fn graded_generation_splits_generators() {
        let f = gf(5);
        let b = GradedLieAlgebra::span_e11_e12(f);
        let x = vec![f.elem(1), f.elem(1)];
        assert_eq!(b.generated_ideal(&[x], true).unwrap().dim(), 2);
    }

    #[test]
    fn generated_ideal_monotone_and_idempotent() {
        let f = gf(5);
        let l = GradedLieAlgebra::direct_sum(&[GradedLieAlgebra::span_e11_e12(f), GradedLieAlgebra::heisenberg(f)]).unwrap();
        let pts: Vec<Element> = l.whole().projective_points(&f).step_by(97).collect();
        for w in pts.windows(2) {
            let small = l.generated_ideal(&w[..1], false).unwrap();
            let big = l.generated_ideal(w, false).unwrap();
            assert!(small.is_subspace_of(&f, &big).unwrap());
            let again = l.generated_ideal(big.rows(), false).unwrap();
            assert_eq!(again, big);
            assert!(l.is_ideal(&big));
        }
    }

    #[test]
    fn sl2_structure() {
        let f = gf(5);
        let r = GradedLieAlgebra::sl2(f).structure_report(DEFAULT_DIM_CAP);
        assert!(r.radical.as_ref().unwrap().is_zero());
        assert!(r.nilradical.as_ref().unwrap().is_zero());
        assert!(r.center.is_zero());
        assert_eq!(r.graded_simple, Some(true));
        assert_eq!(r.monolithic, Some(true));
        assert!(r.monolith().unwrap().is_full());
        assert!(!r.solvable);
        assert_eq!(r.derived_series.len(), 1);
    }

    #[test]
    fn span_e11_e12_structure() {
        let f = gf(5);
        let r = GradedLieAlgebra::span_e11_e12(f).structure_report(DEFAULT_DIM_CAP);
        let e12 = span(&f, 2, &[&[0, 1]]);
        assert_eq!(r.derived_series, vec![SubspaceBasis::full(2), e12.clone(), SubspaceBasis::zero(2)]);
        assert!(r.metabelian && r.solvable && !r.nilpotent);
        assert_eq!(r.monolith(), Some(&e12));
        assert_eq!(r.nilradical.as_ref(), Some(&e12));
        assert_eq!(r.derived_algebra(), &e12);
        assert!(r.radical.as_ref().unwrap().is_full());
        assert_eq!(r.graded_simple, Some(false));
    }

    #[test]
    fn abelian_sum_structure() {
        let f = gf(5);
        let l = GradedLieAlgebra::direct_sum(&[GradedLieAlgebra::abelian(f, vec![0]), GradedLieAlgebra::abelian(f, vec![1])]).unwrap();
        let r = l.structure_report(DEFAULT_DIM_CAP);
        assert!(r.center.is_full());
        assert!(r.radical.unwrap().is_full());
        assert!(r.solvable && r.abelian);
        assert_eq!(r.monolithic, Some(false));
        assert_eq!(r.graded_simple, Some(false));
    }

    #[test]
    fn dimension_cap_leaves_fields_uncomputed() {
        let f = gf(5);
        let r = GradedLieAlgebra::gl2(f).structure_report(3);
        assert!(r.radical.is_none() && r.monolithic.is_none());
        let r = GradedLieAlgebra::gl2(f).structure_report(DEFAULT_DIM_CAP);
        // Rad(gl2) = Z(gl2) = F·1
        assert_eq!(r.radical.unwrap(), span(&f, 4, &[&[1, 0, 0, 1]]));
    }

    #[test]
    fn centralizer_examples() {
        let f = gf(5);
        let sl2 = GradedLieAlgebra::sl2(f);
        assert!(sl2.centralizer_of_ideal(&sl2.whole()).unwrap().is_zero());
        let b = GradedLieAlgebra::span_e11_e12(f);
        let e12 = span(&f, 2, &[&[0, 1]]);
        assert_eq!(b.centralizer_of_ideal(&e12).unwrap(), e12);
        let ab = GradedLieAlgebra::abelian(f, vec![0, 1, 1]);
        assert!(ab.centralizer_of_ideal(&span(&f, 3, &[&[0, 1, 0]])).unwrap().is_full());
        let not_ideal = span(&f, 2, &[&[1, 0]]);
        assert_eq!(b.centralizer_of_ideal(&not_ideal), Err(Error::NotAnIdeal));
    }

    #[test]
    fn a_property_examples() {
        let f = gf(5);
        let r = GradedLieAlgebra::sl2(f).a_property_probe(2, 1_000_000, 1);
        assert!(r.violation.is_none() && r.exhaustive);
        assert_eq!(r.subsets_checked, 31 * 30 / 2);
        assert!(r.summary.contains("partial"));
        let h = GradedLieAlgebra::heisenberg(f).a_property_probe(2, 1_000_000, 1);
        assert!(h.violation.is_some());
        let ab = GradedLieAlgebra::abelian(f, vec![0, 1]).a_property_probe(2, 1_000_000, 1);
        assert!(ab.violation.is_none());
        let sampled = GradedLieAlgebra::heisenberg(f).a_property_probe(2, 50, 7);
        assert!(!sampled.exhaustive);
        assert!(sampled.violation.is_some());
    }

    #[test]
    fn root_decomposition_of_h() {
        let f = gf(5);
        let l = GradedLieAlgebra::sl2(f);
        let r = l.root_decomposition(&l.basis_vector(0)).unwrap();
        assert_eq!(r.eigen.eigenvalues(), vec![f.elem(0), f.elem(2), f.elem(3)]);
        assert_eq!(r.eigen.eigenspace(f.elem(2)), Some(&span(&f, 3, &[&[0, 1, 0]])));
        assert_eq!(r.eigen.eigenspace(f.elem(3)), Some(&span(&f, 3, &[&[0, 0, 1]])));
        assert_eq!(r.pairs.len(), 1);
        let p = &r.pairs[0];
        assert_eq!(p.bracket_space, span(&f, 3, &[&[1, 0, 0]]));
        assert!(p.positive_subalgebra && p.negative_subalgebra && p.graded_ideal);
        assert!(p.ideal.is_full());
        assert!(r.zero_space_meets_odd_trivially && r.even_part_from_root_brackets && r.homogeneous_split);

        let r2 = l.root_decomposition(&l.scale(f.elem(2), &l.basis_vector(0))).unwrap();
        assert_eq!(r2.eigen.eigenvalues(), vec![f.elem(0), f.elem(1), f.elem(4)]);
        assert_eq!(r2.eigen.eigenspace(f.elem(4)), r.eigen.eigenspace(f.elem(2)));

        let r0 = l.root_decomposition(&l.zero()).unwrap();
        assert_eq!(r0.eigen.eigenvalues(), vec![f.elem(0)]);
        assert!(r0.pairs.is_empty());
        assert!(!r0.zero_space_meets_odd_trivially);

        assert!(matches!(l.root_decomposition(&l.basis_vector(1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn root_decomposition_rejects_nilpotent_ad() {
        let f = gf(5);
        let h = GradedLieAlgebra::heisenberg(f);
        assert_eq!(h.root_decomposition(&h.basis_vector(0)).unwrap_err(), Error::NotDiagonalizable);
    }
}
