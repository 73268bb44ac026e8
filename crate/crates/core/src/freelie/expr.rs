use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::{LiePolynomial, MultiDegree, Var};
use crate::algebra::{Element, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;

/// Values of the variables of an expression.
pub type Assignment = BTreeMap<Var, Element>;

/// Commutator expression with ad-operator slots. Slots act on the right:
/// `[v, w^k]` applies `v ↦ [v, w]` k times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Var(Var),
    /// The empty sum is 0.
    Sum(Vec<LieExpr>),
    Scale(i64, Box<LieExpr>),
    /// Already-normalized polynomial, produced by substitution.
    Poly(LiePolynomial),
    Bracket { head: Box<LieExpr>, slots: Vec<Slot> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `(ad w)^k`
    AdPower { w: LieExpr, k: u32 },
    /// `Σ c (ad w)^e`
    AdPolyDiff { w: LieExpr, terms: Vec<(i64, u32)> },
}

impl Slot {
    pub fn element(w: LieExpr) -> Slot {
        Slot::AdPower { w, k: 1 }
    }

    pub fn power(w: LieExpr, k: u32) -> Slot {
        assert!(k >= 1, "ad exponents start at 1");
        Slot::AdPower { w, k }
    }

    /// `Σ c (ad w)^e`; a single term with coefficient 1 becomes a power slot.
    pub fn poly(w: LieExpr, terms: Vec<(i64, u32)>) -> Slot {
        assert!(!terms.is_empty() && terms.iter().all(|&(_, e)| e >= 1), "ad exponents start at 1");
        if let [(1, k)] = terms[..] {
            return Slot::AdPower { w, k };
        }
        Slot::AdPolyDiff { w, terms }
    }

    pub fn base(&self) -> &LieExpr {
        match self {
            Slot::AdPower { w, .. } | Slot::AdPolyDiff { w, .. } => w,
        }
    }

    pub fn max_exponent(&self) -> u32 {
        match self {
            Slot::AdPower { k, .. } => *k,
            Slot::AdPolyDiff { terms, .. } => terms.iter().map(|&(_, e)| e).max().unwrap_or(0),
        }
    }

    fn map_base(&self, f: impl FnOnce(&LieExpr) -> Result<LieExpr>) -> Result<Slot> {
        Ok(match self {
            Slot::AdPower { w, k } => Slot::AdPower { w: f(w)?, k: *k },
            Slot::AdPolyDiff { w, terms } => Slot::AdPolyDiff { w: f(w)?, terms: terms.clone() },
        })
    }

    /// Applies the slot operator to `x`, given the value of its base.
    fn apply<T: Clone>(&self, x: T, w: &T, bracket: impl Fn(&T, &T) -> T, lin: impl Fn(&mut T, i64, &T)) -> T {
        match self {
            Slot::AdPower { k, .. } => (0..*k).fold(x, |acc, _| bracket(&acc, w)),
            Slot::AdPolyDiff { terms, .. } => {
                let mut sorted = terms.clone();
                sorted.sort_by_key(|&(_, e)| e);
                let mut cur = x.clone();
                let mut done = 0;
                let mut acc: Option<T> = None;
                for (c, e) in sorted {
                    for _ in done..e {
                        cur = bracket(&cur, w);
                    }
                    done = e;
                    match acc.as_mut() {
                        None => {
                            let mut first = cur.clone();
                            lin(&mut first, c - 1, &cur);
                            acc = Some(first);
                        }
                        Some(a) => lin(a, c, &cur),
                    }
                }
                acc.unwrap_or(x)
            }
        }
    }
}

/// Result of a parity analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(u8),
    /// Mixed parities or ungraded variables.
    Mixed,
}

impl Grading {
    fn join(self, other: Grading) -> Grading {
        match (self, other) {
            (Grading::Zero, g) | (g, Grading::Zero) => g,
            (Grading::Homogeneous(a), Grading::Homogeneous(b)) if a == b => self,
            _ => Grading::Mixed,
        }
    }

    fn plus(self, other: Grading) -> Grading {
        match (self, other) {
            (Grading::Zero, _) | (_, Grading::Zero) => Grading::Zero,
            (Grading::Homogeneous(a), Grading::Homogeneous(b)) => Grading::Homogeneous((a + b) % 2),
            _ => Grading::Mixed,
        }
    }
}

/// What a degree bound knows about a variable.
#[derive(Clone, Debug)]
pub enum Leaf {
    Zero,
    /// Not yet fixed; contributes nothing to the bound.
    Unknown,
    Known(MultiDegree),
}

fn join_degrees(a: &MultiDegree, b: &MultiDegree) -> MultiDegree {
    let mut out = a.clone();
    for (v, c) in b.iter() {
        let extra = c.saturating_sub(out.get(v));
        out.add(v, extra);
    }
    out
}

fn scaled_degree(a: &MultiDegree, k: u32) -> MultiDegree {
    MultiDegree::from_pairs(a.iter().map(|(v, c)| (v, c.saturating_mul(k))))
}

impl LieExpr {
    pub fn var(v: Var) -> LieExpr {
        LieExpr::Var(v)
    }

    pub fn zero() -> LieExpr {
        LieExpr::Sum(Vec::new())
    }

    /// The plain commutator `[a, b]`.
    pub fn bracket(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::Bracket { head: Box::new(a), slots: vec![Slot::element(b)] }
    }

    pub fn chain(head: LieExpr, slots: Vec<Slot>) -> LieExpr {
        LieExpr::Bracket { head: Box::new(head), slots }
    }

    /// Left-normed `[a₁, a₂, …, aₙ]`.
    pub fn left_normed(items: Vec<LieExpr>) -> LieExpr {
        let mut it = items.into_iter();
        let head = it.next().expect("at least one entry");
        LieExpr::chain(head, it.map(Slot::element).collect())
    }

    pub fn scale(c: i64, e: LieExpr) -> LieExpr {
        LieExpr::Scale(c, Box::new(e))
    }

    pub fn negated(e: LieExpr) -> LieExpr {
        LieExpr::scale(-1, e)
    }

    pub fn difference(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::Sum(vec![a, LieExpr::negated(b)])
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            LieExpr::Var(v) => {
                out.insert(*v);
            }
            LieExpr::Sum(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            LieExpr::Scale(_, e) => e.collect_vars(out),
            LieExpr::Poly(p) => out.extend(p.vars()),
            LieExpr::Bracket { head, slots } => {
                head.collect_vars(out);
                slots.iter().for_each(|s| s.base().collect_vars(out));
            }
        }
    }

    /// Whether the expression contains an operator slot other than a plain element.
    pub fn has_operator_slots(&self) -> bool {
        match self {
            LieExpr::Var(_) | LieExpr::Poly(_) => false,
            LieExpr::Sum(ts) => ts.iter().any(LieExpr::has_operator_slots),
            LieExpr::Scale(_, e) => e.has_operator_slots(),
            LieExpr::Bracket { head, slots } => {
                head.has_operator_slots()
                    || slots.iter().any(|s| !matches!(s, Slot::AdPower { k: 1, .. }) || s.base().has_operator_slots())
            }
        }
    }

    pub fn grading(&self) -> Grading {
        match self {
            LieExpr::Var(v) => v.parity().map_or(Grading::Mixed, Grading::Homogeneous),
            LieExpr::Sum(ts) => ts.iter().fold(Grading::Zero, |g, t| g.join(t.grading())),
            LieExpr::Scale(_, e) => e.grading(),
            LieExpr::Poly(p) if p.is_zero() => Grading::Zero,
            LieExpr::Poly(p) => p.parity().map_or(Grading::Mixed, Grading::Homogeneous),
            LieExpr::Bracket { head, slots } => {
                let mut g = head.grading();
                for s in slots {
                    let w = s.base().grading();
                    let op = match s {
                        Slot::AdPower { k, .. } => (0..*k).fold(Grading::Homogeneous(0), |a, _| a.plus(w)),
                        Slot::AdPolyDiff { terms, .. } => terms
                            .iter()
                            .map(|&(_, e)| (0..e).fold(Grading::Homogeneous(0), |a, _| a.plus(w)))
                            .fold(Grading::Zero, Grading::join),
                    };
                    g = g.plus(op);
                }
                g
            }
        }
    }

    /// Componentwise upper bound on the multidegrees of the expansion;
    /// `None` when the expression is zero for structural reasons.
    pub fn degree_bound(&self) -> Option<MultiDegree> {
        self.bound_with(&|v| Leaf::Known(MultiDegree::from_pairs([(v, 1)])))
    }

    /// Degree bound with variables replaced according to `leaf`. With
    /// `Leaf::Unknown` entries the result bounds every completion from below.
    pub fn bound_with(&self, leaf: &dyn Fn(Var) -> Leaf) -> Option<MultiDegree> {
        match self {
            LieExpr::Var(v) => match leaf(*v) {
                Leaf::Zero => None,
                Leaf::Unknown => Some(MultiDegree::new()),
                Leaf::Known(m) => Some(m),
            },
            LieExpr::Sum(ts) => ts.iter().filter_map(|t| t.bound_with(leaf)).reduce(|a, b| join_degrees(&a, &b)),
            LieExpr::Scale(_, e) => e.bound_with(leaf),
            LieExpr::Poly(p) => (!p.is_zero()).then(|| p.degree_bound()),
            LieExpr::Bracket { head, slots } => {
                let mut acc = head.bound_with(leaf)?;
                for s in slots {
                    let w = s.base().bound_with(leaf)?;
                    acc = acc.sum(&scaled_degree(&w, s.max_exponent()));
                }
                Some(acc)
            }
        }
    }

    pub fn evaluate(&self, alg: &GradedLieAlgebra, assignment: &Assignment) -> Result<Element> {
        let f = alg.field();
        match self {
            LieExpr::Var(v) => {
                let val = assignment.get(v).ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
                if val.len() != alg.dim() {
                    return Err(Error::AmbientMismatch(format!("value of {v} has the wrong length")));
                }
                Ok(val.clone())
            }
            LieExpr::Sum(ts) => {
                let mut acc = alg.zero();
                for t in ts {
                    acc = alg.add(&acc, &t.evaluate(alg, assignment)?);
                }
                Ok(acc)
            }
            LieExpr::Scale(c, e) => Ok(alg.scale(f.elem(*c), &e.evaluate(alg, assignment)?)),
            LieExpr::Poly(p) => p.evaluate(alg, assignment),
            LieExpr::Bracket { head, slots } => {
                let mut x = head.evaluate(alg, assignment)?;
                for s in slots {
                    let w = s.base().evaluate(alg, assignment)?;
                    if x.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    x = s.apply(
                        x,
                        &w,
                        |a, b| alg.bracket_unchecked(a, b),
                        |acc, c, t| {
                            let ct = alg.scale(f.elem(c), t);
                            *acc = alg.add(acc, &ct);
                        },
                    );
                }
                Ok(x)
            }
        }
    }

    /// Expands into the Lyndon basis. Fails up front when the degree bound
    /// exceeds `caps` (absent variables have cap 0).
    pub fn expand(&self, field: Field, caps: &MultiDegree) -> Result<LiePolynomial> {
        if let Some(bound) = self.degree_bound() {
            if !bound.fits(caps) {
                return Err(Error::ExpansionTooLarge { multidegree: bound.to_string(), caps: caps.to_string() });
            }
        }
        Ok(self.expand_unchecked(field))
    }

    /// Expansion without the cap guard; only for expressions of small degree.
    pub fn normalize(&self, field: Field) -> Result<LiePolynomial> {
        let bound = self.degree_bound().unwrap_or_default();
        self.expand(field, &bound)
    }

    fn expand_unchecked(&self, field: Field) -> LiePolynomial {
        match self {
            LieExpr::Var(v) => LiePolynomial::var(field, *v),
            LieExpr::Sum(ts) => ts.iter().fold(LiePolynomial::zero(field), |acc, t| acc.add(&t.expand_unchecked(field))),
            LieExpr::Scale(c, e) => e.expand_unchecked(field).scale(field.elem(*c)),
            LieExpr::Poly(p) => p.clone(),
            LieExpr::Bracket { head, slots } => {
                let mut x = head.expand_unchecked(field);
                for s in slots {
                    if x.is_zero() {
                        break;
                    }
                    let w = s.base().expand_unchecked(field);
                    x = s.apply(x, &w, |a, b| a.bracket(b), |acc, c, t| *acc = acc.add(&t.scale(field.elem(c))));
                }
                x
            }
        }
    }

    /// Replaces variables by expressions. In graded mode each y (z) must be
    /// sent to an even (odd) expression or to 0.
    pub fn substitute(&self, map: &BTreeMap<Var, LieExpr>, graded: bool) -> Result<LieExpr> {
        if graded {
            for (v, img) in map {
                let Some(p) = v.parity() else { continue };
                match img.grading() {
                    Grading::Zero => {}
                    Grading::Homogeneous(g) if g == p => {}
                    g => {
                        return Err(Error::ParityError(format!(
                            "{v} has degree {p} but its image {img} is {}",
                            match g {
                                Grading::Homogeneous(d) => format!("of degree {d}"),
                                _ => "not homogeneous".to_string(),
                            }
                        )))
                    }
                }
            }
        }
        self.subst(map)
    }

    /// Substitution of normalized polynomials, wrapped as leaves.
    pub fn substitute_polys(&self, map: &BTreeMap<Var, LiePolynomial>, graded: bool) -> Result<LieExpr> {
        let m = map.iter().map(|(v, p)| (*v, LieExpr::Poly(p.clone()))).collect();
        self.substitute(&m, graded)
    }

    fn subst(&self, map: &BTreeMap<Var, LieExpr>) -> Result<LieExpr> {
        Ok(match self {
            LieExpr::Var(v) => map.get(v).cloned().unwrap_or(LieExpr::Var(*v)),
            LieExpr::Sum(ts) => LieExpr::Sum(ts.iter().map(|t| t.subst(map)).collect::<Result<_>>()?),
            LieExpr::Scale(c, e) => LieExpr::Scale(*c, Box::new(e.subst(map)?)),
            LieExpr::Poly(p) => {
                if p.vars().iter().any(|v| map.contains_key(v)) {
                    // re-expand the leaf through its terms
                    let mut terms = Vec::new();
                    for (w, c) in p.terms() {
                        let leaf = word_expr(w.letters());
                        terms.push(LieExpr::Scale(
                            p.field().signed(c).ok_or_else(|| {
                                Error::InvalidInput("substitution into polynomials over extension fields".into())
                            })?,
                            Box::new(leaf.subst(map)?),
                        ));
                    }
                    LieExpr::Sum(terms)
                } else {
                    LieExpr::Poly(p.clone())
                }
            }
            LieExpr::Bracket { head, slots } => LieExpr::Bracket {
                head: Box::new(head.subst(map)?),
                slots: slots.iter().map(|s| s.map_base(|w| w.subst(map))).collect::<Result<_>>()?,
            },
        })
    }

    /// Number of nodes, used to keep printed reports short.
    pub fn size(&self) -> usize {
        match self {
            LieExpr::Var(_) => 1,
            LieExpr::Sum(ts) => 1 + ts.iter().map(LieExpr::size).sum::<usize>(),
            LieExpr::Scale(_, e) => 1 + e.size(),
            LieExpr::Poly(p) => 1 + p.len(),
            LieExpr::Bracket { head, slots } => 1 + head.size() + slots.iter().map(|s| s.base().size()).sum::<usize>(),
        }
    }
}

/// Standard bracketing of a Lyndon word as an expression.
fn word_expr(w: &[Var]) -> LieExpr {
    if w.len() == 1 {
        return LieExpr::Var(w[0]);
    }
    let split = (1..w.len()).min_by(|&a, &b| w[a..].cmp(&w[b..])).expect("length ≥ 2");
    LieExpr::bracket(word_expr(&w[..split]), word_expr(&w[split..]))
}

impl From<Var> for LieExpr {
    fn from(v: Var) -> LieExpr {
        LieExpr::Var(v)
    }
}

fn is_atomic(e: &LieExpr) -> bool {
    matches!(e, LieExpr::Var(_) | LieExpr::Bracket { .. }) || matches!(e, LieExpr::Sum(ts) if ts.is_empty())
}

fn write_atom(f: &mut fmt::Formatter<'_>, e: &LieExpr) -> fmt::Result {
    if is_atomic(e) {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

fn write_scaled(f: &mut fmt::Formatter<'_>, c: i64, e: &LieExpr) -> fmt::Result {
    match c {
        -1 => {
            f.write_str("-")?;
            write_atom(f, e)
        }
        _ => {
            write!(f, "{c}*")?;
            write_atom(f, e)
        }
    }
}

fn write_slot(f: &mut fmt::Formatter<'_>, s: &Slot) -> fmt::Result {
    match s {
        Slot::AdPower { w, k: 1 } => write!(f, "{w}"),
        Slot::AdPower { w, k } => {
            write_atom(f, w)?;
            write!(f, "^{k}")
        }
        Slot::AdPolyDiff { w, terms } => {
            let all_linear = terms.iter().all(|&(_, e)| e == 1);
            f.write_str("(")?;
            for (i, &(c, e)) in terms.iter().enumerate() {
                let mag = if i == 0 {
                    match c {
                        1 => String::new(),
                        -1 => "-".to_string(),
                        _ => format!("{c}*"),
                    }
                } else {
                    f.write_str(if c < 0 { " - " } else { " + " })?;
                    match c.unsigned_abs() {
                        1 => String::new(),
                        m => format!("{m}*"),
                    }
                };
                f.write_str(&mag)?;
                write_atom(f, w)?;
                if e != 1 || all_linear {
                    write!(f, "^{e}")?;
                }
            }
            f.write_str(")")
        }
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieExpr::Var(v) => write!(f, "{v}"),
            LieExpr::Sum(ts) if ts.is_empty() => f.write_str("0"),
            LieExpr::Sum(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    match (i, t) {
                        (0, LieExpr::Scale(c, e)) => write_scaled(f, *c, e)?,
                        (0, t) => write_atom(f, t)?,
                        (_, LieExpr::Scale(c, e)) if *c < 0 => {
                            f.write_str(" - ")?;
                            match c.unsigned_abs() {
                                1 => write_atom(f, e)?,
                                m => {
                                    write!(f, "{m}*")?;
                                    write_atom(f, e)?
                                }
                            }
                        }
                        (_, LieExpr::Scale(c, e)) => {
                            f.write_str(" + ")?;
                            write!(f, "{c}*")?;
                            write_atom(f, e)?
                        }
                        (_, t) => {
                            f.write_str(" + ")?;
                            write_atom(f, t)?
                        }
                    }
                }
                Ok(())
            }
            LieExpr::Scale(c, e) => write_scaled(f, *c, e),
            LieExpr::Poly(p) => write!(f, "{p}"),
            LieExpr::Bracket { head, slots } => {
                write!(f, "[{head}")?;
                for s in slots {
                    f.write_str(", ")?;
                    write_slot(f, s)?;
                }
                f.write_str("]")
            }
        }
    }
}

impl Serialize for LieExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
