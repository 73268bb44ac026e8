//! 2×2 matrices over GF(q), the concrete home of gl₂, sl₂ and M₂.

use crate::field::{Fe, Field};

/// Row-major 2×2 matrix.
pub type Mat2 = [[Fe; 2]; 2];

pub fn unit(i: usize, j: usize) -> Mat2 {
    let mut m = [[Fe::ZERO; 2]; 2];
    m[i][j] = Fe::ONE;
    m
}

pub fn identity() -> Mat2 {
    [[Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ONE]]
}

pub fn add(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[Fe::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = f.add(a[i][j], b[i][j]);
        }
    }
    m
}

pub fn scale(f: &Field, c: Fe, a: &Mat2) -> Mat2 {
    let mut m = *a;
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = f.mul(c, *x);
        }
    }
    m
}

pub fn sub(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    add(f, a, &scale(f, f.neg(Fe::ONE), b))
}

pub fn mul(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[Fe::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = f.add(f.mul(a[i][0], b[0][j]), f.mul(a[i][1], b[1][j]));
        }
    }
    m
}

pub fn commutator(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    sub(f, &mul(f, a, b), &mul(f, b, a))
}

pub fn det(f: &Field, a: &Mat2) -> Fe {
    f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]))
}

pub fn inverse(f: &Field, a: &Mat2) -> Option<Mat2> {
    let d = f.inv(det(f, a)).ok()?;
    Some(scale(f, d, &[[a[1][1], f.neg(a[0][1])], [f.neg(a[1][0]), a[0][0]]]))
}

/// Coordinates in the basis (e11, e12, e21, e22).
pub fn flatten(a: &Mat2) -> Vec<Fe> {
    vec![a[0][0], a[0][1], a[1][0], a[1][1]]
}

pub fn unflatten(v: &[Fe]) -> Mat2 {
    [[v[0], v[1]], [v[2], v[3]]]
}

/// Linear combination `Σ c_i m_i`.
pub fn combine(f: &Field, coeffs: &[Fe], mats: &[Mat2]) -> Mat2 {
    coeffs
        .iter()
        .zip(mats)
        .fold([[Fe::ZERO; 2]; 2], |acc, (&c, m)| add(f, &acc, &scale(f, c, m)))
}

/// All invertible 2×2 matrices in encoding order.
pub fn general_linear_group(f: &Field) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = [[a, b], [c, d]];
                    if !det(f, &m).is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}
