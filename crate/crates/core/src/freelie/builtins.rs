use std::collections::BTreeMap;

use super::{LieExpr, Slot, Var};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &["sem1", "sem2", "yy", "zz", "zyq_zy", "S", "lema5"];

fn x(i: u32) -> LieExpr {
    LieExpr::Var(Var::x(i))
}

fn sq(q: u32) -> u32 {
    q.checked_mul(q).expect("field size too large for the built-in exponents")
}

/// `x₁ f(ad x₂)` with `f(t) = t^{q²+2} − t³`.
pub fn sem1(q: u32) -> LieExpr {
    LieExpr::chain(x(1), vec![Slot::poly(x(2), vec![(1, sq(q) + 2), (-1, 3)])])
}

/// The six-term ordinary identity of sl₂ over GF(q).
pub fn sem2(q: u32) -> LieExpr {
    assert!(q >= 5, "q must exceed 3");
    let q2 = sq(q);
    let frob = |w: LieExpr| Slot::poly(w, vec![(1, q2), (-1, 1)]);
    let t1 = LieExpr::bracket(x(1), x(2));
    let t2 = LieExpr::chain(x(1), vec![Slot::element(x(2)), Slot::power(x(1), q2 - 1)]);
    let t3 = LieExpr::chain(x(1), vec![Slot::power(x(2), q)]);
    let t4 = LieExpr::chain(x(1), vec![Slot::element(x(2)), Slot::power(x(1), q2 - 1), Slot::power(x(2), q - 1)]);
    let t5 = LieExpr::chain(
        x(1),
        vec![Slot::element(x(2)), frob(x(1)), Slot::power(LieExpr::bracket(x(1), x(2)), q - 2), frob(x(2))],
    );
    // u' = [(ad x₁)^{q²} − ad x₁ applied to x₁, x₂], written through x₂
    let u = LieExpr::negated(LieExpr::chain(x(2), vec![frob(x(1))]));
    let t6 = LieExpr::chain(x(2), vec![Slot::power(u, q), Slot::poly(x(2), vec![(1, q2 - 2), (-1, q - 2)])]);
    LieExpr::Sum(vec![t1, LieExpr::negated(t2), LieExpr::negated(t3), t4, t5, LieExpr::negated(t6)])
}

pub fn yy() -> LieExpr {
    LieExpr::bracket(LieExpr::Var(Var::y(1)), LieExpr::Var(Var::y(2)))
}

pub fn zz() -> LieExpr {
    LieExpr::bracket(LieExpr::Var(Var::z(1)), LieExpr::Var(Var::z(2)))
}

/// `[z₁, y₁^q] − [z₁, y₁]`.
pub fn zyq_zy(q: u32) -> LieExpr {
    let (z1, y1) = (LieExpr::Var(Var::z(1)), LieExpr::Var(Var::y(1)));
    LieExpr::difference(LieExpr::chain(z1.clone(), vec![Slot::power(y1.clone(), q)]), LieExpr::bracket(z1, y1))
}

/// `e(y₁ + z₁, y₂ + z₂)` for an expression in `x₁, x₂`.
fn graded_form(e: &LieExpr) -> LieExpr {
    let map = BTreeMap::from([
        (Var::x(1), LieExpr::Sum(vec![LieExpr::Var(Var::y(1)), LieExpr::Var(Var::z(1))])),
        (Var::x(2), LieExpr::Sum(vec![LieExpr::Var(Var::y(2)), LieExpr::Var(Var::z(2))])),
    ]);
    e.substitute(&map, false).expect("ungraded substitution cannot fail")
}

/// The four graded generators for sl₂ over GF(q), with labels.
pub fn set_s(q: u32) -> Vec<(String, LieExpr)> {
    vec![
        ("sem1(y1 + z1, y2 + z2)".to_string(), graded_form(&sem1(q))),
        ("sem2(y1 + z1, y2 + z2)".to_string(), graded_form(&sem2(q))),
        ("[y1, y2]".to_string(), yy()),
        (format!("[z1, y1^{q}] - [z1, y1]"), zyq_zy(q)),
    ]
}

/// Graded generators for span{e₁₁, e₁₂}, with labels.
pub fn lema5_set(q: u32) -> Vec<(String, LieExpr)> {
    vec![
        ("[y1, y2]".to_string(), yy()),
        ("[z1, z2]".to_string(), zz()),
        (format!("[z1, y1^{q}] - [z1, y1]"), zyq_zy(q)),
    ]
}

/// Looks up a built-in by name; sets return several labeled expressions.
pub fn builtin(name: &str, q: u32) -> Result<Vec<(String, LieExpr)>> {
    if q < 5 {
        return Err(Error::InvalidInput(format!("built-ins need q > 3, got {q}")));
    }
    let single = |e: LieExpr| vec![(name.to_string(), e)];
    Ok(match name {
        "sem1" => single(sem1(q)),
        "sem2" => single(sem2(q)),
        "yy" => single(yy()),
        "zz" => single(zz()),
        "zyq_zy" => single(zyq_zy(q)),
        "S" | "set_S" => set_s(q),
        "lema5" | "lema5_set" => lema5_set(q),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown built-in {name:?}; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    })
}
