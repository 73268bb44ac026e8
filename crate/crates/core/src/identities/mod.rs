//! Identity checking, identity spaces and consequence spans in bounded
//! windows of the free graded Lie algebra.

mod consequence;

pub use consequence::{
    basis_check, consequence_span, total_degree_windows, BasisCheckConfig, BasisCheckReport, ConsequenceReport,
    GeneratorRecord, PoolConfig, WindowRecord, WindowStatus,
};

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Element, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::freelie::{eval_word, lyndon_words, Assignment, LieExpr, LiePolynomial, MultiDegree, Var, Word};
use crate::linalg::SubspaceBasis;

/// Default cap on the number of assignments enumerated exhaustively.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// The span of all Lyndon monomials whose multidegree lies under `caps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    caps: MultiDegree,
    components: Vec<(MultiDegree, std::ops::Range<usize>)>,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl AmbientSpace {
    pub fn new(caps: MultiDegree) -> AmbientSpace {
        let mut basis = Vec::new();
        let mut components = Vec::new();
        for md in caps.sub_degrees() {
            let words = lyndon_words(&md);
            if words.is_empty() {
                continue;
            }
            let start = basis.len();
            basis.extend(words);
            components.push((md, start..basis.len()));
        }
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        AmbientSpace { caps, components, basis, index }
    }

    /// Every variable with cap 1.
    pub fn multilinear(vars: &[Var]) -> AmbientSpace {
        AmbientSpace::new(MultiDegree::from_pairs(vars.iter().map(|&v| (v, 1))))
    }

    pub fn caps(&self) -> &MultiDegree {
        &self.caps
    }

    pub fn variables(&self) -> Vec<Var> {
        self.caps.vars().collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Nonempty multihomogeneous components with their coordinate ranges.
    pub fn components(&self) -> &[(MultiDegree, std::ops::Range<usize>)] {
        &self.components
    }

    pub fn contains_degree(&self, md: &MultiDegree) -> bool {
        md.fits(&self.caps)
    }

    /// Coordinates of `p`; `None` if a term lies outside the window.
    pub fn coordinates(&self, p: &LiePolynomial) -> Option<Vec<Fe>> {
        let mut out = vec![Fe::ZERO; self.dim()];
        for (w, c) in p.terms() {
            out[*self.index.get(w)?] = c;
        }
        Some(out)
    }

    pub fn polynomial(&self, field: Field, coords: &[Fe]) -> LiePolynomial {
        LiePolynomial::from_coordinates(field, &self.basis, coords)
    }

    /// Projection onto one multihomogeneous component.
    pub fn component_of(&self, coords: &[Fe], md: &MultiDegree) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; coords.len()];
        if let Some((_, r)) = self.components.iter().find(|(m, _)| m == md) {
            out[r.clone()].copy_from_slice(&coords[r.clone()]);
        }
        out
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.caps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive { budget: u128 },
    Sampled { samples: u64, seed: u64 },
}

impl Mode {
    pub fn exhaustive() -> Mode {
        Mode::Exhaustive { budget: DEFAULT_BUDGET }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive { .. } => f.write_str("exhaustive"),
            Mode::Sampled { samples, seed } => write!(f, "sampled({samples}, seed {seed})"),
        }
    }
}

/// Every assignment of homogeneous (graded) or arbitrary (ordinary) values.
#[derive(Clone, Debug)]
pub struct AssignmentSpace {
    vars: Vec<Var>,
    choices: Vec<Vec<Element>>,
}

impl AssignmentSpace {
    /// In graded mode y's range over L₀ and z's over L₁; x's always range over L.
    pub fn new(alg: &GradedLieAlgebra, vars: &[Var], graded: bool) -> AssignmentSpace {
        let f = alg.field();
        let whole: Vec<Element> = alg.whole().elements(f).collect();
        let mut cache: HashMap<Option<u8>, Vec<Element>> = HashMap::new();
        let choices = vars
            .iter()
            .map(|v| {
                let key = if graded { v.parity() } else { None };
                cache
                    .entry(key)
                    .or_insert_with(|| match key {
                        None => whole.clone(),
                        Some(d) => alg.component(d).elements(f).collect(),
                    })
                    .clone()
            })
            .collect();
        AssignmentSpace { vars: vars.to_vec(), choices }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Number of assignments; saturates at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Mixed-radix decoding, first variable fastest.
    pub fn get(&self, mut index: u128) -> Assignment {
        let mut a = Assignment::new();
        for (v, c) in self.vars.iter().zip(&self.choices) {
            let n = c.len() as u128;
            a.insert(*v, c[(index % n) as usize].clone());
            index /= n;
        }
        a
    }

    pub fn random(&self, rng: &mut impl Rng) -> Assignment {
        self.vars.iter().zip(&self.choices).map(|(v, c)| (*v, c[rng.gen_range(0..c.len())].clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// `(variable, value)` pairs, values written in the algebra basis.
    pub assignment: Vec<(String, String)>,
    pub value: String,
    #[serde(skip)]
    pub raw: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    pub mode: Mode,
    pub graded: bool,
    pub counterexample: Option<Counterexample>,
    pub evaluations: u128,
}

fn is_zero(v: &[Fe]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn describe(alg: &GradedLieAlgebra, a: &Assignment, value: &[Fe]) -> Counterexample {
    Counterexample {
        assignment: a.iter().map(|(v, x)| (v.to_string(), alg.format_element(x))).collect(),
        value: alg.format_element(value),
        raw: a.clone(),
    }
}

/// Checks whether `e` vanishes on `alg`.
pub fn check_identity(e: &LieExpr, alg: &GradedLieAlgebra, graded: bool, mode: Mode) -> Result<CheckReport> {
    let vars: Vec<Var> = e.vars().into_iter().collect();
    let space = AssignmentSpace::new(alg, &vars, graded);
    let total = space.count();
    let eval = |a: &Assignment| e.evaluate(alg, a);
    let (hit, evaluations) = match mode {
        Mode::Exhaustive { budget } => {
            if total > budget {
                return Err(Error::BudgetExceeded { needed: total, budget });
            }
            let hit = (0..total as u64)
                .into_par_iter()
                .find_first(|&i| eval(&space.get(i as u128)).map_or(true, |v| !is_zero(&v)));
            let n = hit.map_or(total, |i| i as u128 + 1);
            (hit.map(|i| space.get(i as u128)), n)
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<Assignment> = (0..samples).map(|_| space.random(&mut rng)).collect();
            let hit = draws.par_iter().position_first(|a| eval(a).map_or(true, |v| !is_zero(&v)));
            let n = hit.map_or(samples as u128, |i| i as u128 + 1);
            (hit.map(|i| draws[i].clone()), n)
        }
    };
    let counterexample = match hit {
        None => None,
        Some(a) => {
            // re-evaluate on its own before reporting
            let value = eval(&a)?;
            if is_zero(&value) {
                return Err(Error::TheoremViolation("counterexample did not reproduce".into()));
            }
            if e.degree_bound().is_some_and(|b| b.total() <= 12) {
                let p = e.normalize(*alg.field())?;
                if p.evaluate(alg, &a)? != value {
                    return Err(Error::TheoremViolation("expanded and direct evaluation disagree".into()));
                }
            }
            Some(describe(alg, &a, &value))
        }
    };
    Ok(CheckReport { holds: counterexample.is_none(), mode, graded, counterexample, evaluations })
}

/// Rows of the evaluation map at one assignment: one row per algebra coordinate.
fn evaluation_rows(alg: &GradedLieAlgebra, ambient: &AmbientSpace, a: &Assignment) -> Result<Vec<Vec<Fe>>> {
    let mut memo = HashMap::new();
    let values: Vec<Element> =
        ambient.basis().iter().map(|w| eval_word(w.letters(), alg, a, &mut memo)).collect::<Result<_>>()?;
    Ok((0..alg.dim()).map(|k| values.iter().map(|v| v[k]).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentitySpaceReport {
    pub window: MultiDegree,
    pub ambient_dim: usize,
    /// The identities of the algebra inside the window.
    pub space: SubspaceBasis,
    pub assignments_total: u128,
    pub assignments_used: u128,
    pub certification_passes: usize,
}

impl IdentitySpaceReport {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

const CHUNK: u64 = 512;

/// Graded identities of `alg` inside `ambient`: the kernel of the evaluation
/// map. Sampled mode builds rows from random assignments and then certifies
/// every kernel vector against all assignments, adding rows until stable.
pub fn identity_space(alg: &GradedLieAlgebra, ambient: &AmbientSpace, mode: Mode) -> Result<IdentitySpaceReport> {
    let f = *alg.field();
    let space = AssignmentSpace::new(alg, &ambient.variables(), true);
    let total = space.count();
    let budget = match mode {
        Mode::Exhaustive { budget } => budget,
        Mode::Sampled { .. } => DEFAULT_BUDGET,
    };
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let d = ambient.dim();
    let mut rows = SubspaceBasis::zero(d);
    let mut used: u128 = 0;
    let absorb = |rows: &mut SubspaceBasis, a: &Assignment| -> Result<()> {
        for r in evaluation_rows(alg, ambient, a)? {
            rows.insert(&f, &r);
        }
        Ok(())
    };
    match mode {
        Mode::Exhaustive { .. } => {
            let chunks = (total as u64).div_ceil(CHUNK);
            let mut next = 0u64;
            while next < chunks && !rows.is_full() {
                let batch_end = (next + rayon::current_num_threads() as u64 * 4).min(chunks);
                let parts: Vec<SubspaceBasis> = (next..batch_end)
                    .into_par_iter()
                    .map(|c| -> Result<SubspaceBasis> {
                        let mut local = SubspaceBasis::zero(d);
                        for i in c * CHUNK..((c + 1) * CHUNK).min(total as u64) {
                            absorb(&mut local, &space.get(i as u128))?;
                            if local.is_full() {
                                break;
                            }
                        }
                        Ok(local)
                    })
                    .collect::<Result<_>>()?;
                for part in parts {
                    rows = rows.sum(&f, &part)?;
                }
                used = (batch_end * CHUNK).min(total as u64) as u128;
                next = batch_end;
            }
            Ok(IdentitySpaceReport {
                window: ambient.caps().clone(),
                ambient_dim: d,
                space: rows.annihilator(&f),
                assignments_total: total,
                assignments_used: used,
                certification_passes: 0,
            })
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                absorb(&mut rows, &space.random(&mut rng))?;
                used += 1;
            }
            let mut passes = 0;
            loop {
                passes += 1;
                let kernel = rows.annihilator(&f);
                let polys: Vec<LiePolynomial> = kernel.rows().iter().map(|r| ambient.polynomial(f, r)).collect();
                let failing = (0..total as u64).into_par_iter().find_first(|&i| {
                    let a = space.get(i as u128);
                    polys.iter().any(|p| p.evaluate(alg, &a).map_or(true, |v| !is_zero(&v)))
                });
                match failing {
                    None => {
                        return Ok(IdentitySpaceReport {
                            window: ambient.caps().clone(),
                            ambient_dim: d,
                            space: kernel,
                            assignments_total: total,
                            assignments_used: used,
                            certification_passes: passes,
                        })
                    }
                    Some(i) => {
                        absorb(&mut rows, &space.get(i as u128))?;
                        used += 1;
                    }
                }
            }
        }
    }
}

/// Whether every vector of `span` vanishes on `alg` (exhaustive).
pub fn vanishes_on(alg: &GradedLieAlgebra, ambient: &AmbientSpace, span: &SubspaceBasis, budget: u128) -> Result<Option<(LiePolynomial, Counterexample)>> {
    let f = *alg.field();
    let space = AssignmentSpace::new(alg, &ambient.variables(), true);
    let total = space.count();
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let polys: Vec<LiePolynomial> = span.rows().iter().map(|r| ambient.polynomial(f, r)).collect();
    for p in polys {
        let hit = (0..total as u64)
            .into_par_iter()
            .find_first(|&i| p.evaluate(alg, &space.get(i as u128)).map_or(true, |v| !is_zero(&v)));
        if let Some(i) = hit {
            let a = space.get(i as u128);
            let v = p.evaluate(alg, &a)?;
            return Ok(Some((p, describe(alg, &a, &v))));
        }
    }
    Ok(None)
}
