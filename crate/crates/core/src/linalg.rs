//! Dense linear algebra over GF(q): row reduction, kernels, eigenspaces and
//! the subspace lattice in canonical (reduced row-echelon) form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// A dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::AmbientMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Fe>]) -> Matrix {
        Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = field.add(out[(i, j)], field.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| field.sub(self[(i, j)], other[(i, j)]))
    }

    pub fn scale(&self, field: &Field, c: Fe) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| field.mul(c, self[(i, j)]))
    }

    /// Reduces in place to reduced row-echelon form and returns pivot columns.
    pub fn rref_in_place(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = field.mul(inv, self[(r, j)]);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.mul(factor, self[(r, j)]);
                    self[(i, j)] = field.sub(self[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref_in_place(field).len()
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    pub fn inverse(&self, field: &Field) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::AmbientMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else if j - n == i {
                Fe::ONE
            } else {
                Fe::ZERO
            }
        });
        let pivots = aug.rref_in_place(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)]))
    }

    /// Right kernel `{x : M x = 0}`.
    pub fn kernel(&self, field: &Field) -> SubspaceBasis {
        rref_kernel(field, self).kernel
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`rref_kernel`].
#[derive(Clone, Debug)]
pub struct RrefKernel {
    pub rref: Matrix,
    pub rank: usize,
    pub kernel: SubspaceBasis,
}

/// Row-reduces `m` and returns its right kernel in canonical form.
pub fn rref_kernel(field: &Field, m: &Matrix) -> RrefKernel {
    let mut rref = m.clone();
    let pivots = rref.rref_in_place(field);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel_rows = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fe::ZERO; n];
        v[free] = Fe::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(rref[(r, free)]);
        }
        kernel_rows.push(v);
    }
    let kernel = SubspaceBasis::from_vectors(field, n, kernel_rows);
    RrefKernel { rank: pivots.len(), rref, kernel }
}

/// A subspace of `F^n` held in reduced row-echelon form, so that two bases
/// describe the same subspace exactly when they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    rows: Vec<Vec<Fe>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis { ambient_dim, rows: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis { ambient_dim, rows: Matrix::identity(ambient_dim).to_rows() }
    }

    pub fn from_vectors<I>(field: &Field, ambient_dim: usize, vectors: I) -> SubspaceBasis
    where
        I: IntoIterator<Item = Vec<Fe>>,
    {
        let mut s = SubspaceBasis::zero(ambient_dim);
        for v in vectors {
            s.insert(field, &v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    fn pivot(row: &[Fe]) -> usize {
        row.iter().position(|c| !c.is_zero()).expect("basis rows are nonzero")
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut w = v.to_vec();
        for row in &self.rows {
            let p = Self::pivot(row);
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row).skip(p) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        w
    }

    pub fn contains(&self, field: &Field, v: &[Fe]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(self.reduce(field, v).iter().all(|c| c.is_zero()))
    }

    /// Adds `v` to the span, keeping the basis fully reduced. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, field: &Field, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length does not match ambient dimension");
        let mut w = self.reduce(field, v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = field.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = field.mul(inv, *x);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&w) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        let at = self.rows.partition_point(|r| Self::pivot(r) < p);
        self.rows.insert(at, w);
        true
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::AmbientMismatch(format!("dimension {} vs ambient {}", n, self.ambient_dim)));
        }
        Ok(())
    }

    pub fn sum(&self, field: &Field, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_len(other.ambient_dim)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(field, r);
        }
        Ok(s)
    }

    /// Intersection through the kernel of the stacked system `Σ a_i A_i − Σ b_j B_j = 0`.
    pub fn intersect(&self, field: &Field, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_len(other.ambient_dim)?;
        let n = self.ambient_dim;
        let (ra, rb) = (self.dim(), other.dim());
        let m = Matrix::from_fn(n, ra + rb, |i, j| {
            if j < ra {
                self.rows[j][i]
            } else {
                field.neg(other.rows[j - ra][i])
            }
        });
        let ker = m.kernel(field);
        let vectors = ker.rows.iter().map(|coef| {
            let mut v = vec![Fe::ZERO; n];
            for (a, row) in coef[..ra].iter().zip(&self.rows) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(*a, r));
                }
            }
            v
        });
        Ok(SubspaceBasis::from_vectors(field, n, vectors.collect::<Vec<_>>()))
    }

    pub fn is_subspace_of(&self, field: &Field, other: &SubspaceBasis) -> Result<bool> {
        self.check_len(other.ambient_dim)?;
        Ok(self.rows.iter().all(|r| other.reduce(field, r).iter().all(|c| c.is_zero())))
    }

    /// Image of the subspace under a linear map given as a matrix acting on columns.
    pub fn image(&self, field: &Field, m: &Matrix) -> Result<SubspaceBasis> {
        if m.cols() != self.ambient_dim {
            return Err(Error::AmbientMismatch("map domain".into()));
        }
        Ok(SubspaceBasis::from_vectors(field, m.rows(), self.rows.iter().map(|r| m.apply(field, r)).collect::<Vec<_>>()))
    }

    /// The subspace `{x : <x, r> = 0 for every basis row r}`.
    pub fn annihilator(&self, field: &Field) -> SubspaceBasis {
        if self.rows.is_empty() {
            return SubspaceBasis::full(self.ambient_dim);
        }
        Matrix::from_rows(&self.rows).expect("rows share a length").kernel(field)
    }
}

/// Some solution of `m x = b`, if the system is consistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Fe]) -> Option<Vec<Fe>> {
    let n = m.cols();
    let mut aug = Matrix::from_fn(m.rows(), n + 1, |i, j| if j < n { m[(i, j)] } else { b[i] });
    let pivots = aug.rref_in_place(field);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Fe::ZERO; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)];
    }
    Some(x)
}

impl SubspaceBasis {
    /// Every vector of the subspace, as coefficient combinations of the basis
    /// rows in mixed-radix order. `q^dim` items.
    pub fn elements<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vec<Fe>> + 'a {
        let q = field.q() as u64;
        let total = q.pow(self.dim() as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![Fe::ZERO; self.ambient_dim];
            for row in &self.rows {
                let c = field.from_index((idx % q) as u32);
                idx /= q;
                if c.is_zero() {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(c, r));
                }
            }
            v
        })
    }

    /// One representative per one-dimensional subspace: combinations whose
    /// last nonzero coefficient is 1. `(q^dim - 1)/(q - 1)` items.
    pub fn projective_points<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vec<Fe>> + 'a {
        let q = field.q() as u64;
        let d = self.dim() as u32;
        (0..d).flat_map(move |lead| {
            let count = q.pow(lead);
            (0..count).map(move |mut idx| {
                let mut v = self.rows[lead as usize].clone();
                for row in &self.rows[..lead as usize] {
                    let c = field.from_index((idx % q) as u32);
                    idx /= q;
                    if c.is_zero() {
                        continue;
                    }
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(c, r));
                    }
                }
                v
            })
        })
    }

    /// Coordinates of `v` with respect to the basis rows, if `v` lies in the span.
    pub fn coordinates(&self, field: &Field, v: &[Fe]) -> Option<Vec<Fe>> {
        if self.rows.is_empty() {
            return v.iter().all(|c| c.is_zero()).then(Vec::new);
        }
        solve(field, &Matrix::from_columns(self.ambient_dim, &self.rows), v)
    }
}

/// Eigenvalues with their eigenspaces.
#[derive(Clone, Debug, Serialize)]
pub struct EigenBasis {
    pub pairs: Vec<(Fe, SubspaceBasis)>,
    pub diagonalizable: bool,
}

impl EigenBasis {
    pub fn eigenspace(&self, lambda: Fe) -> Option<&SubspaceBasis> {
        self.pairs.iter().find(|(l, _)| *l == lambda).map(|(_, s)| s)
    }

    pub fn eigenvalues(&self) -> Vec<Fe> {
        self.pairs.iter().map(|(l, _)| *l).collect()
    }
}

/// Eigenvalues in the base field found by testing every `λ` for a nontrivial
/// kernel of `m − λI`.
pub fn eigen_decomposition(field: &Field, m: &Matrix) -> Result<EigenBasis> {
    if !m.is_square() {
        return Err(Error::AmbientMismatch("eigen decomposition needs a square matrix".into()));
    }
    let n = m.rows();
    let mut pairs = Vec::new();
    for lambda in field.elements() {
        let shifted = m.sub(field, &Matrix::identity(n).scale(field, lambda));
        let ker = shifted.kernel(field);
        if !ker.is_zero() {
            pairs.push((lambda, ker));
        }
    }
    let total: usize = pairs.iter().map(|(_, s)| s.dim()).sum();
    Ok(EigenBasis { diagonalizable: total == n, pairs })
}
