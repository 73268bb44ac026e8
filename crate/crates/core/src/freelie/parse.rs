//! Text syntax for [`LieExpr`].
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := ['-'] [int '*'] atom ['^' int]
//! atom  := var | '0' | '[' expr (',' expr)+ ']' | '(' expr ')'
//! ```
//!
//! Exponents are only meaningful in commutator slots after the head. A slot
//! whose terms carry exponents is an operator `Σ c (ad w)^e` on a single base
//! `w`; a slot without exponents is an element `w` and means `ad w`.

use super::{LieExpr, Slot, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Term {
    pos: usize,
    coef: i64,
    explicit: bool,
    atom: Atom,
    exp: Option<u32>,
}

#[derive(Clone, Debug)]
enum Atom {
    Var(Var),
    Zero,
    Chain(LieExpr),
    Paren(Vec<Term>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { position, message: message.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |b| format!("{:?}", b as char));
            err(self.pos, format!("expected {:?}, found {found}", c as char))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<u64>()
            .or_else(|_| err(start, "number too large"))
    }

    fn sum(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term(1)?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term(1)?);
            } else if self.eat(b'-') {
                terms.push(self.term(-1)?);
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self, mut sign: i64) -> Result<Term> {
        self.skip_ws();
        let pos = self.pos;
        if self.eat(b'-') {
            sign = -sign;
        }
        let mut coef = 1i64;
        let mut explicit = false;
        let atom = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num_pos = self.pos;
            let n = self.int()?;
            if self.eat(b'*') {
                coef = i64::try_from(n).or_else(|_| err(num_pos, "coefficient too large"))?;
                explicit = true;
                self.atom()?
            } else if n == 0 {
                Atom::Zero
            } else {
                return err(self.pos, "expected '*' after a coefficient");
            }
        } else {
            self.atom()?
        };
        let exp = if self.eat(b'^') {
            let braced = self.eat(b'{');
            let at = self.pos;
            let e = self.int()?;
            if braced {
                self.expect(b'}')?;
            }
            match u32::try_from(e) {
                Ok(e) if e >= 1 => Some(e),
                _ => return err(at, "exponents must be between 1 and 2^32 - 1"),
            }
        } else {
            None
        };
        Ok(Term { pos, coef: sign * coef, explicit, atom, exp })
    }

    fn atom(&mut self) -> Result<Atom> {
        let pos = self.pos;
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let head = self.sum()?;
                let mut slots = Vec::new();
                while self.eat(b',') {
                    slots.push(self.sum()?);
                }
                self.expect(b']')?;
                if slots.is_empty() {
                    return err(pos, "a commutator needs at least two entries");
                }
                let head = to_expr(head)?;
                let slots = slots.into_iter().map(to_slot).collect::<Result<_>>()?;
                Ok(Atom::Chain(LieExpr::chain(head, slots)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(Atom::Paren(inner))
            }
            Some(b'0') if !self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                self.pos += 1;
                Ok(Atom::Zero)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match name.parse::<Var>() {
                    Ok(v) => Ok(Atom::Var(v)),
                    Err(_) => err(start, format!("unknown variable {name:?} (use y<n>, z<n> or x<n>)")),
                }
            }
            Some(c) => err(pos, format!("unexpected {:?}", c as char)),
            None => err(pos, "unexpected end of input"),
        }
    }
}

fn atom_expr(atom: Atom) -> Result<LieExpr> {
    Ok(match atom {
        Atom::Var(v) => LieExpr::Var(v),
        Atom::Zero => LieExpr::zero(),
        Atom::Chain(e) => e,
        Atom::Paren(inner) => to_expr(inner)?,
    })
}

fn term_expr(t: Term) -> Result<LieExpr> {
    if t.exp.is_some() {
        return err(t.pos, "exponents are only allowed in commutator slots");
    }
    let e = atom_expr(t.atom)?;
    Ok(if t.explicit || t.coef != 1 { LieExpr::scale(t.coef, e) } else { e })
}

fn to_expr(mut terms: Vec<Term>) -> Result<LieExpr> {
    if terms.len() == 1 {
        return term_expr(terms.pop().expect("one term"));
    }
    Ok(LieExpr::Sum(terms.into_iter().map(term_expr).collect::<Result<_>>()?))
}

fn to_slot(mut terms: Vec<Term>) -> Result<Slot> {
    if terms.len() == 1 && terms[0].coef == 1 && !terms[0].explicit && terms[0].exp.is_none() {
        if let Atom::Paren(_) = terms[0].atom {
            let Atom::Paren(inner) = terms.pop().expect("one term").atom else { unreachable!() };
            return to_slot(inner);
        }
    }
    if terms.iter().all(|t| t.exp.is_none()) {
        return Ok(Slot::element(to_expr(terms)?));
    }
    let pos = terms[0].pos;
    let mut base: Option<LieExpr> = None;
    let mut coeffs = Vec::with_capacity(terms.len());
    for t in terms {
        let e = t.exp.unwrap_or(1);
        let w = atom_expr(t.atom)?;
        match &base {
            None => base = Some(w),
            Some(b) if *b == w => {}
            Some(_) => return err(t.pos, "all terms of an operator slot must share one base"),
        }
        coeffs.push((t.coef, e));
    }
    match base {
        Some(w) => Ok(Slot::poly(w, coeffs)),
        None => err(pos, "empty slot"),
    }
}

/// Parses the expression syntax described in the module docs.
pub fn parse_expr(text: &str) -> Result<LieExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return err(0, "empty expression");
    }
    let terms = p.sum()?;
    if let Some(c) = p.peek() {
        return err(p.pos, format!("unexpected {:?} after the expression", c as char));
    }
    to_expr(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: u32) -> LieExpr {
        LieExpr::Var(Var::y(i))
    }
    fn z(i: u32) -> LieExpr {
        LieExpr::Var(Var::z(i))
    }
    fn x(i: u32) -> LieExpr {
        LieExpr::Var(Var::x(i))
    }

    #[test]
    fn parses_examples() {
        let e = parse_expr("[z1, y1^5] - [z1, y1]").unwrap();
        let want = LieExpr::difference(LieExpr::chain(z(1), vec![Slot::power(y(1), 5)]), LieExpr::bracket(z(1), y(1)));
        assert_eq!(e, want);
        let e = parse_expr("[x1, (x2^27 - x2^3)]").unwrap();
        assert_eq!(e, LieExpr::chain(x(1), vec![Slot::poly(x(2), vec![(1, 27), (-1, 3)])]));
        let e = parse_expr("[x1, (x2^{27} - x2^{3})]").unwrap();
        assert_eq!(e.to_string(), "[x1, (x2^27 - x2^3)]");
        let e = parse_expr("[x1, x2, (x1^25 - x1), [x1, x2]^3]").unwrap();
        assert_eq!(e.to_string(), "[x1, x2, (x1^25 - x1), [x1, x2]^3]");
        assert_eq!(parse_expr("0").unwrap(), LieExpr::zero());
        assert_eq!(parse_expr("[[z1, z2], y1]").unwrap(), LieExpr::bracket(LieExpr::bracket(z(1), z(2)), y(1)));
        assert_eq!(parse_expr("[y1, y2 + z1]").unwrap(), LieExpr::bracket(y(1), LieExpr::Sum(vec![y(2), z(1)])));
        assert_eq!(parse_expr("[y1, (y2 + z1)^2]").unwrap(), LieExpr::chain(y(1), vec![Slot::power(LieExpr::Sum(vec![y(2), z(1)]), 2)]));
    }

    #[test]
    fn reports_positions() {
        for (text, at) in [("[y1 y2]", 4), ("[y1]", 0), ("[y1, w2]", 5), ("y1^2", 0), ("[y1, (y2^2 - z1^3)]", 13), ("", 0), ("2 y1", 2)] {
            match parse_expr(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, at, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    fn arb_var() -> impl Strategy<Value = LieExpr> {
        prop_oneof![(1u32..3).prop_map(y), (1u32..3).prop_map(z), (1u32..3).prop_map(x)]
    }

    fn arb_expr() -> impl Strategy<Value = LieExpr> {
        arb_var().prop_recursive(3, 24, 3, |inner| {
            let slot = prop_oneof![
                inner.clone().prop_map(Slot::element),
                (inner.clone(), 2u32..30).prop_map(|(w, k)| Slot::power(w, k)),
                (inner.clone(), proptest::collection::vec((-3i64..4, 1u32..30), 2..4)).prop_map(|(w, t)| Slot::poly(w, t)),
            ];
            prop_oneof![
                (inner.clone(), proptest::collection::vec(slot, 1..3)).prop_map(|(h, s)| LieExpr::chain(h, s)),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(LieExpr::Sum),
                (-4i64..5, inner).prop_map(|(c, e)| LieExpr::scale(c, e)),
                Just(LieExpr::zero()),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
        }
    }
}
