//! The free Z₂-graded Lie algebra on even variables `y_i`, odd variables
//! `z_i` and ungraded variables `x_i`, with its Lyndon basis.

mod builtins;
mod expr;
mod parse;

pub use builtins::{builtin, lema5_set, sem1, sem2, set_s, yy, zyq_zy, zz, BUILTIN_NAMES};
pub use expr::{Assignment, Grading, Leaf, LieExpr, Slot};
pub use parse::parse_expr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::algebra::{Element, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VarKind {
    /// `y`
    Even,
    /// `z`
    Odd,
    /// `x`, used by ordinary identities.
    Free,
}

impl VarKind {
    pub fn prefix(self) -> char {
        match self {
            VarKind::Even => 'y',
            VarKind::Odd => 'z',
            VarKind::Free => 'x',
        }
    }

    /// Z₂-degree; `None` for ungraded variables.
    pub fn parity(self) -> Option<u8> {
        match self {
            VarKind::Even => Some(0),
            VarKind::Odd => Some(1),
            VarKind::Free => None,
        }
    }
}

/// A variable. The derived order is the alphabet order: y's, then z's, then x's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub kind: VarKind,
    pub index: u32,
}

impl Var {
    pub const fn y(index: u32) -> Var {
        Var { kind: VarKind::Even, index }
    }

    pub const fn z(index: u32) -> Var {
        Var { kind: VarKind::Odd, index }
    }

    pub const fn x(index: u32) -> Var {
        Var { kind: VarKind::Free, index }
    }

    pub fn parity(self) -> Option<u8> {
        self.kind.parity()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('y') => VarKind::Even,
            Some('z') => VarKind::Odd,
            Some('x') => VarKind::Free,
            _ => return Err(Error::InvalidInput(format!("bad variable name {s:?}"))),
        };
        match chars.as_str().parse::<u32>() {
            Ok(index) if index >= 1 => Ok(Var { kind, index }),
            _ => Err(Error::InvalidInput(format!("bad variable index in {s:?}"))),
        }
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Occurrence count per variable. Zero counts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(BTreeMap<Var, u32>);

impl MultiDegree {
    pub fn new() -> MultiDegree {
        MultiDegree::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> MultiDegree {
        let mut md = MultiDegree::new();
        for (v, c) in pairs {
            md.add(v, c);
        }
        md
    }

    pub fn of_word(word: &[Var]) -> MultiDegree {
        MultiDegree::from_pairs(word.iter().map(|&v| (v, 1)))
    }

    pub fn add(&mut self, v: Var, count: u32) {
        if count > 0 {
            *self.0.entry(v).or_insert(0) += count;
        }
    }

    pub fn get(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of odd letters mod 2.
    pub fn parity(&self) -> u8 {
        (self.iter().filter(|(v, _)| v.kind == VarKind::Odd).map(|(_, c)| c).sum::<u32>() % 2) as u8
    }

    /// Componentwise `self ≤ caps`, with absent caps read as 0.
    pub fn fits(&self, caps: &MultiDegree) -> bool {
        self.iter().all(|(v, c)| c <= caps.get(v))
    }

    pub fn sum(&self, other: &MultiDegree) -> MultiDegree {
        let mut out = self.clone();
        for (v, c) in other.iter() {
            out.add(v, c);
        }
        out
    }

    /// Letters of the multidegree in alphabet order, with repetition.
    pub fn letters(&self) -> Vec<Var> {
        self.iter().flat_map(|(v, c)| std::iter::repeat_n(v, c as usize)).collect()
    }

    /// Every nonzero multidegree componentwise below `self`, ordered by total
    /// degree and then lexicographically.
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let vars: Vec<(Var, u32)> = self.iter().collect();
        let mut out = vec![MultiDegree::new()];
        for (v, cap) in vars {
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for md in &out {
                for c in 0..=cap {
                    let mut m = md.clone();
                    m.add(v, c);
                    next.push(m);
                }
            }
            out = next;
        }
        out.retain(|m| !m.is_empty());
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    /// Parses `y1:1,z1:5`; a bare variable counts once.
    fn from_str(s: &str) -> Result<MultiDegree> {
        let mut md = MultiDegree::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (v, c) = match part.split_once(':') {
                Some((v, c)) => {
                    let c = c.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad count in {part:?}")))?;
                    (v.parse::<Var>()?, c)
                }
                None => (part.parse::<Var>()?, 1),
            };
            md.add(v, c);
        }
        Ok(md)
    }
}

impl Serialize for MultiDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A Lyndon word; the key of a basis monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Var>);

impl Word {
    pub fn letter(v: Var) -> Word {
        Word(vec![v])
    }

    /// Returns `None` unless `letters` is a Lyndon word.
    pub fn new(letters: Vec<Var>) -> Option<Word> {
        is_lyndon(&letters).then_some(Word(letters))
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree::of_word(&self.0)
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(Word, Word)> {
        if self.0.len() < 2 {
            return None;
        }
        let w = &self.0;
        let split = (1..w.len()).min_by(|&a, &b| w[a..].cmp(&w[b..])).expect("length ≥ 2");
        Some((Word(w[..split].to_vec()), Word(w[split..].to_vec())))
    }

    /// Standard bracketing, e.g. `[y1, [y1, z1]]`.
    pub fn bracketing(&self) -> String {
        match self.standard_factorization() {
            None => self.0[0].to_string(),
            Some((u, v)) => format!("[{}, {}]", u.bracketing(), v.bracketing()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketing())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_lyndon(w: &[Var]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of the given multidegree, in increasing order.
pub fn lyndon_words(md: &MultiDegree) -> Vec<Word> {
    let mut counts: Vec<(Var, u32)> = md.iter().collect();
    let n = md.total() as usize;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(counts: &mut [(Var, u32)], cur: &mut Vec<Var>, n: usize, out: &mut Vec<Word>) {
        if cur.len() == n {
            if is_lyndon(cur) {
                out.push(Word(cur.clone()));
            }
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            // a Lyndon word starts with its smallest letter
            if !cur.is_empty() && counts[i].0 < cur[0] {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            rec(counts, cur, n, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    if n > 0 {
        rec(&mut counts, &mut cur, n, &mut out);
    }
    out
}

/// Integer combination of Lyndon words.
type IntComb = Vec<(Word, i64)>;

fn bracket_cache() -> &'static Mutex<HashMap<(Word, Word), IntComb>> {
    static CACHE: OnceLock<Mutex<HashMap<(Word, Word), IntComb>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn add_into(acc: &mut BTreeMap<Word, i64>, comb: &IntComb, scale: i64) {
    for (w, c) in comb {
        let e = acc.entry(w.clone()).or_insert(0);
        *e += scale * c;
        if *e == 0 {
            acc.remove(w);
        }
    }
}

/// `[P(u), P(v)]` written in the Lyndon basis, over the integers.
pub fn bracket_words(u: &Word, v: &Word) -> Vec<(Word, i64)> {
    use std::cmp::Ordering;
    match u.cmp(v) {
        Ordering::Equal => return Vec::new(),
        Ordering::Greater => return bracket_words(v, u).into_iter().map(|(w, c)| (w, -c)).collect(),
        Ordering::Less => {}
    }
    let key = (u.clone(), v.clone());
    if let Some(hit) = bracket_cache().lock().expect("cache poisoned").get(&key) {
        return hit.clone();
    }
    let result = match u.standard_factorization() {
        Some((a, b)) if b < *v => {
            // [[a,b],v] = [a,[b,v]] + [[a,v],b]
            let mut acc = BTreeMap::new();
            for (t, c) in bracket_words(&b, v) {
                add_into(&mut acc, &bracket_words(&a, &t), c);
            }
            for (t, c) in bracket_words(&a, v) {
                add_into(&mut acc, &bracket_words(&t, &b), c);
            }
            acc.into_iter().collect()
        }
        _ => {
            let mut w = u.0.clone();
            w.extend_from_slice(&v.0);
            vec![(Word(w), 1)]
        }
    };
    bracket_cache().lock().expect("cache poisoned").insert(key, result.clone());
    result
}

/// An element of the free Lie algebra over a finite field, in the Lyndon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePolynomial {
    field: Field,
    terms: BTreeMap<Word, Fe>,
}

impl LiePolynomial {
    pub fn zero(field: Field) -> LiePolynomial {
        LiePolynomial { field, terms: BTreeMap::new() }
    }

    pub fn var(field: Field, v: Var) -> LiePolynomial {
        Self::monomial(field, Word::letter(v), Fe::ONE)
    }

    pub fn monomial(field: Field, w: Word, c: Fe) -> LiePolynomial {
        let mut p = Self::zero(field);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Word, Fe)>) -> LiePolynomial {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, Fe)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> Fe {
        self.terms.get(w).copied().unwrap_or(Fe::ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Fe) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = self.field.add(*e.get(), c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LiePolynomial) -> LiePolynomial {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Fe) -> LiePolynomial {
        let f = self.field;
        LiePolynomial::from_terms(f, self.terms().map(|(w, a)| (w.clone(), f.mul(c, a))))
    }

    pub fn neg(&self) -> LiePolynomial {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn sub(&self, other: &LiePolynomial) -> LiePolynomial {
        self.add(&other.neg())
    }

    pub fn bracket(&self, other: &LiePolynomial) -> LiePolynomial {
        let f = self.field;
        let mut out = LiePolynomial::zero(f);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                let ab = f.mul(a, b);
                for (w, c) in bracket_words(u, v) {
                    out.add_term(w, f.mul(ab, f.elem(c)));
                }
            }
        }
        out
    }

    /// Componentwise maximum of the multidegrees of the terms.
    pub fn degree_bound(&self) -> MultiDegree {
        let mut out = BTreeMap::new();
        for (w, _) in self.terms() {
            for (v, c) in w.multidegree().iter() {
                let e = out.entry(v).or_insert(0);
                *e = (*e).max(c);
            }
        }
        MultiDegree(out)
    }

    /// The multihomogeneous components, keyed by multidegree.
    pub fn multihomog_components(&self) -> BTreeMap<MultiDegree, LiePolynomial> {
        let mut out: BTreeMap<MultiDegree, LiePolynomial> = BTreeMap::new();
        for (w, c) in self.terms() {
            out.entry(w.multidegree()).or_insert_with(|| LiePolynomial::zero(self.field)).add_term(w.clone(), c);
        }
        out
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multihomog_components().len() <= 1
    }

    /// Z₂-degree of every term, if they agree. `None` for zero or mixed input.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms().map(|(w, _)| w.multidegree().parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms().flat_map(|(w, _)| w.letters().to_vec()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Value in `alg` under `assignment`.
    pub fn evaluate(&self, alg: &GradedLieAlgebra, assignment: &Assignment) -> Result<Element> {
        let mut memo = HashMap::new();
        let f = alg.field();
        let mut acc = alg.zero();
        for (w, c) in self.terms() {
            let v = eval_word(w.letters(), alg, assignment, &mut memo)?;
            for (a, b) in acc.iter_mut().zip(&v) {
                *a = f.add(*a, f.mul(c, *b));
            }
        }
        Ok(acc)
    }

    /// Coordinates in the given list of basis words; `None` if a term falls outside.
    pub fn coordinates(&self, basis: &[Word]) -> Option<Vec<Fe>> {
        let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out = vec![Fe::ZERO; basis.len()];
        for (w, c) in self.terms() {
            out[*index.get(w)?] = c;
        }
        Some(out)
    }

    pub fn from_coordinates(field: Field, basis: &[Word], coords: &[Fe]) -> LiePolynomial {
        LiePolynomial::from_terms(field, basis.iter().cloned().zip(coords.iter().copied()))
    }
}

/// Evaluates the standard bracketing of a Lyndon word, memoizing subwords.
pub(crate) fn eval_word(
    word: &[Var],
    alg: &GradedLieAlgebra,
    assignment: &Assignment,
    memo: &mut HashMap<Vec<Var>, Element>,
) -> Result<Element> {
    if word.len() == 1 {
        return assignment.get(&word[0]).cloned().ok_or_else(|| Error::MissingAssignment(word[0].to_string()));
    }
    if let Some(v) = memo.get(word) {
        return Ok(v.clone());
    }
    let split = (1..word.len()).min_by(|&a, &b| word[a..].cmp(&word[b..])).expect("length ≥ 2");
    let left = eval_word(&word[..split], alg, assignment, memo)?;
    let right = eval_word(&word[split..], alg, assignment, memo)?;
    let v = alg.bracket_unchecked(&left, &right);
    memo.insert(word.to_vec(), v.clone());
    Ok(v)
}

impl fmt::Display for LiePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let (neg, mag) = match self.field.signed(c) {
                Some(s) if s < 0 => (true, (-s).to_string()),
                Some(s) => (false, s.to_string()),
                None => (false, format!("{{{}}}", c.index())),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Serialize for LiePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
