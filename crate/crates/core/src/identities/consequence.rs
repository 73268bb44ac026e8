use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_identity, identity_space, AmbientSpace, AssignmentSpace, Mode};
use crate::algebra::GradedLieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::freelie::{lyndon_words, Leaf, LieExpr, LiePolynomial, MultiDegree, Var, VarKind, Word};
use crate::linalg::SubspaceBasis;

/// Substitution pool and stabilization settings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoolConfig {
    /// Largest degree of a monomial image.
    pub max_image_degree: u32,
    pub batch_size: usize,
    /// Stop after this many consecutive batches without growth.
    pub stable_rounds: usize,
    pub max_rounds: usize,
    pub seed: u64,
}

impl Default for PoolConfig {
    fn default() -> PoolConfig {
        PoolConfig { max_image_degree: 3, batch_size: 512, stable_rounds: 8, max_rounds: 256, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsequenceReport {
    pub window: MultiDegree,
    /// A lower bound for the consequences of the generators inside the window.
    pub span: SubspaceBasis,
    pub instances_admitted: u64,
    pub instances_rejected: u64,
    pub random_rounds: usize,
}

/// Images available to a variable: monomials of matching parity under the caps.
fn monomial_pool(ambient: &AmbientSpace, max_degree: u32) -> BTreeMap<Option<u8>, Vec<Word>> {
    let mut pool: BTreeMap<Option<u8>, Vec<Word>> = BTreeMap::new();
    for md in ambient.caps().sub_degrees() {
        if md.total() > max_degree {
            continue;
        }
        for w in lyndon_words(&md) {
            pool.entry(Some(md.parity())).or_default().push(w.clone());
            pool.entry(None).or_default().push(w);
        }
    }
    pool
}

fn pool_key(v: Var) -> Option<u8> {
    v.parity()
}

/// An instance together with every left-normed extension `[f, v₁, …, v_k]`
/// by single variables that stays inside the window.
fn extensions(f: &LiePolynomial, ambient: &AmbientSpace) -> Vec<LiePolynomial> {
    let vars = ambient.variables();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![f.clone()];
    while let Some(p) = stack.pop() {
        if p.is_zero() || !seen.insert(projective_key(&p)) {
            continue;
        }
        let bound = p.degree_bound();
        for &v in &vars {
            let mut b = bound.clone();
            b.add(v, 1);
            if ambient.contains_degree(&b) {
                stack.push(p.bracket(&LiePolynomial::var(*p.field(), v)));
            }
        }
        out.push(p);
    }
    out
}

/// Key identifying `p` up to a nonzero scalar.
fn projective_key(p: &LiePolynomial) -> Vec<(Word, Fe)> {
    let f = p.field();
    let lead = p.terms().next().map(|(_, c)| c).unwrap_or(Fe::ONE);
    let inv = f.inv(lead).unwrap_or(Fe::ONE);
    p.terms().map(|(w, c)| (w.clone(), f.mul(inv, c))).collect()
}

struct Accumulator<'a> {
    field: Field,
    ambient: &'a AmbientSpace,
    span: SubspaceBasis,
    admitted: u64,
    rejected: u64,
}

impl Accumulator<'_> {
    fn absorb(&mut self, polys: Vec<LiePolynomial>) -> bool {
        let before = self.span.dim();
        for p in polys {
            let coords = self.ambient.coordinates(&p).expect("extensions stay inside the window");
            self.span.insert(&self.field, &coords);
        }
        self.span.dim() > before
    }
}

/// Expands an instance if it fits the window.
fn instance(field: Field, gen: &LieExpr, images: &BTreeMap<Var, LiePolynomial>, ambient: &AmbientSpace) -> Option<LiePolynomial> {
    let bound = gen.bound_with(&|v| match images.get(&v) {
        Some(p) if p.is_zero() => Leaf::Zero,
        Some(p) => Leaf::Known(p.degree_bound()),
        None => Leaf::Known(MultiDegree::from_pairs([(v, 1)])),
    })?;
    if !ambient.contains_degree(&bound) {
        return None;
    }
    let e = gen.substitute_polys(images, false).ok()?;
    e.expand(field, ambient.caps()).ok()
}

/// Lower bound for the graded verbal ideal generated by `gens`, intersected
/// with `ambient`. A deterministic pass sends each generator variable to 0 or
/// to a monomial of matching parity; seeded random batches of one- and
/// two-term images with random scalars follow until the span is stable.
pub fn consequence_span(field: Field, gens: &[LieExpr], ambient: &AmbientSpace, config: &PoolConfig) -> Result<ConsequenceReport> {
    let pool = monomial_pool(ambient, config.max_image_degree);
    let mut acc = Accumulator { field, ambient, span: SubspaceBasis::zero(ambient.dim()), admitted: 0, rejected: 0 };

    for gen in gens {
        let vars: Vec<Var> = gen.vars().into_iter().collect();
        let mut found = Vec::new();
        let mut images: BTreeMap<Var, LiePolynomial> = BTreeMap::new();
        dfs(field, gen, &vars, 0, &pool, ambient, &mut images, &mut found, &mut acc.rejected);
        let extended: Vec<Vec<LiePolynomial>> = found.par_iter().map(|p| extensions(p, ambient)).collect();
        for e in extended {
            acc.admitted += 1;
            acc.absorb(e);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut quiet = 0;
    let mut rounds = 0;
    let nonzero: Vec<Fe> = field.nonzero().collect();
    while quiet < config.stable_rounds && rounds < config.max_rounds && !acc.span.is_full() && !gens.is_empty() {
        rounds += 1;
        let mut batch = Vec::with_capacity(config.batch_size);
        for _ in 0..config.batch_size {
            let gen = &gens[rng.gen_range(0..gens.len())];
            let mut images = BTreeMap::new();
            for v in gen.vars() {
                let choices = pool.get(&pool_key(v)).map(Vec::as_slice).unwrap_or(&[]);
                let mut p = LiePolynomial::zero(field);
                if !choices.is_empty() {
                    let terms = if choices.len() > 1 && rng.gen_bool(0.5) { 2 } else { 1 };
                    for w in choices.choose_multiple(&mut rng, terms) {
                        p.add_term(w.clone(), *nonzero.choose(&mut rng).expect("field has units"));
                    }
                }
                images.insert(v, p);
            }
            batch.push((gen, images));
        }
        let extended: Vec<Option<Vec<LiePolynomial>>> = batch
            .par_iter()
            .map(|(gen, images)| instance(field, gen, images, ambient).map(|p| extensions(&p, ambient)))
            .collect();
        let mut grew = false;
        for e in extended {
            match e {
                Some(polys) => {
                    acc.admitted += 1;
                    grew |= acc.absorb(polys);
                }
                None => acc.rejected += 1,
            }
        }
        quiet = if grew { 0 } else { quiet + 1 };
    }

    Ok(ConsequenceReport {
        window: ambient.caps().clone(),
        span: acc.span,
        instances_admitted: acc.admitted,
        instances_rejected: acc.rejected,
        random_rounds: rounds,
    })
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    field: Field,
    gen: &LieExpr,
    vars: &[Var],
    depth: usize,
    pool: &BTreeMap<Option<u8>, Vec<Word>>,
    ambient: &AmbientSpace,
    images: &mut BTreeMap<Var, LiePolynomial>,
    found: &mut Vec<LiePolynomial>,
    rejected: &mut u64,
) {
    let bound = gen.bound_with(&|v| match images.get(&v) {
        Some(p) if p.is_zero() => Leaf::Zero,
        Some(p) => Leaf::Known(p.degree_bound()),
        None => Leaf::Unknown,
    });
    match bound {
        None => return,
        Some(b) if !ambient.contains_degree(&b) => {
            *rejected += 1;
            return;
        }
        _ => {}
    }
    if depth == vars.len() {
        if let Some(p) = instance(field, gen, images, ambient) {
            if !p.is_zero() {
                found.push(p);
            }
        }
        return;
    }
    let v = vars[depth];
    let mut options = vec![LiePolynomial::zero(field)];
    for w in pool.get(&pool_key(v)).map(Vec::as_slice).unwrap_or(&[]) {
        options.push(LiePolynomial::monomial(field, w.clone(), Fe::ONE));
    }
    for p in options {
        images.insert(v, p);
        dfs(field, gen, vars, depth + 1, pool, ambient, images, found, rejected);
    }
    images.remove(&v);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowStatus {
    Equal,
    StrictInclusion,
    Inconclusive,
}

impl std::fmt::Display for WindowStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WindowStatus::Equal => "equal",
            WindowStatus::StrictInclusion => "strict-inclusion",
            WindowStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub holds: bool,
    pub mode: Mode,
    pub evaluations: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowRecord {
    pub window: MultiDegree,
    pub ambient_dim: usize,
    pub id_dim: Option<usize>,
    pub cons_dim: usize,
    pub status: WindowStatus,
    /// An identity outside the consequence span, for strict inclusions.
    pub uncovered: Option<LiePolynomial>,
    pub identity_basis: Vec<LiePolynomial>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheckConfig {
    pub budget: u128,
    /// Samples for soundness checks whose exhaustive run exceeds the budget.
    pub soundness_samples: u64,
    pub pool: PoolConfig,
}

impl Default for BasisCheckConfig {
    fn default() -> BasisCheckConfig {
        BasisCheckConfig { budget: super::DEFAULT_BUDGET, soundness_samples: 100_000, pool: PoolConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheckReport {
    pub algebra: String,
    pub q: u32,
    pub config: BasisCheckConfig,
    pub generators: Vec<GeneratorRecord>,
    pub windows: Vec<WindowRecord>,
    pub verdict: WindowStatus,
}

/// Soundness of every generator on `alg`, then per window a comparison of
/// the identity space with the consequence span.
pub fn basis_check(
    alg: &GradedLieAlgebra,
    gens: &[(String, LieExpr)],
    windows: &[MultiDegree],
    config: &BasisCheckConfig,
) -> Result<BasisCheckReport> {
    if windows.is_empty() {
        return Err(Error::InvalidInput("at least one window is required".into()));
    }
    let f = *alg.field();
    let mut generators = Vec::new();
    for (name, e) in gens {
        let vars: Vec<Var> = e.vars().into_iter().collect();
        if vars.iter().any(|v| v.kind == VarKind::Free) {
            return Err(Error::InvalidInput(format!("generator {name} has ungraded variables")));
        }
        let total = AssignmentSpace::new(alg, &vars, true).count();
        let mode = if total <= config.budget {
            Mode::Exhaustive { budget: config.budget }
        } else {
            Mode::Sampled { samples: config.soundness_samples, seed: config.pool.seed }
        };
        let r = check_identity(e, alg, true, mode)?;
        if let Some(cx) = &r.counterexample {
            let at: Vec<String> = cx.assignment.iter().map(|(v, x)| format!("{v} = {x}")).collect();
            return Err(Error::SoundnessFailure {
                generator: name.clone(),
                detail: format!("value {} at {}", cx.value, at.join(", ")),
            });
        }
        generators.push(GeneratorRecord { name: name.clone(), holds: true, mode, evaluations: r.evaluations });
    }
    let exprs: Vec<LieExpr> = gens.iter().map(|(_, e)| e.clone()).collect();
    let mut records = Vec::new();
    for w in windows {
        let ambient = AmbientSpace::new(w.clone());
        let cons = consequence_span(f, &exprs, &ambient, &config.pool)?;
        let id = match identity_space(alg, &ambient, Mode::Exhaustive { budget: config.budget }) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { needed, budget }) => {
                records.push(WindowRecord {
                    window: w.clone(),
                    ambient_dim: ambient.dim(),
                    id_dim: None,
                    cons_dim: cons.span.dim(),
                    status: WindowStatus::Inconclusive,
                    uncovered: None,
                    identity_basis: Vec::new(),
                    note: Some(format!("{needed} assignments exceed the budget of {budget}")),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        if !cons.span.is_subspace_of(&f, &id.space)? {
            return Err(Error::TheoremViolation(format!(
                "a consequence of identities fails to be an identity in window {w}"
            )));
        }
        let uncovered = id
            .space
            .rows()
            .iter()
            .find(|r| !cons.span.contains(&f, r).unwrap_or(false))
            .map(|r| ambient.polynomial(f, r));
        records.push(WindowRecord {
            window: w.clone(),
            ambient_dim: ambient.dim(),
            id_dim: Some(id.dim()),
            cons_dim: cons.span.dim(),
            status: if uncovered.is_none() { WindowStatus::Equal } else { WindowStatus::StrictInclusion },
            uncovered,
            identity_basis: id.space.rows().iter().map(|r| ambient.polynomial(f, r)).collect(),
            note: None,
        });
    }
    let verdict = records.iter().map(|r| r.status).max().unwrap_or(WindowStatus::Equal);
    Ok(BasisCheckReport {
        algebra: alg.name().to_string(),
        q: f.q(),
        config: config.clone(),
        generators,
        windows: records,
        verdict,
    })
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One window per multidegree of total degree `1..=max_total` up to renaming
/// variables of the same parity: y-degrees and z-degrees each form a
/// partition with parts at most `per_var_cap`.
pub fn total_degree_windows(max_total: u32, per_var_cap: u32) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    for n in 1..=max_total {
        for a in (0..=n).rev() {
            for ys in partitions(a, per_var_cap) {
                for zs in partitions(n - a, per_var_cap) {
                    let mut md = MultiDegree::new();
                    for (i, &c) in ys.iter().enumerate() {
                        md.add(Var::y(i as u32 + 1), c);
                    }
                    for (i, &c) in zs.iter().enumerate() {
                        md.add(Var::z(i as u32 + 1), c);
                    }
                    out.push(md);
                }
            }
        }
    }
    out
}
