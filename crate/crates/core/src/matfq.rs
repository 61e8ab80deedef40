//! Dense matrices and subspaces over `F_q`.
//!
//! Entries are stored as raw element encodings (see [`crate::gf`]); every
//! matrix carries the field it lives in. Subspaces are kept as the reduced
//! row echelon form of a basis, which makes equality structural.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldContext};

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref_rows(f: &FieldContext, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = f.neg(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if y != 0 {
                    *x = f.add(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank_rows(f: &FieldContext, rows: &[Vec<u32>]) -> usize {
    let mut work = rows.to_vec();
    rref_rows(f, &mut work).len()
}

/// Basis of `{x : r . x = 0 for every r in rows}` inside `F^ncols`.
pub fn null_space(f: &FieldContext, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut work = rows.to_vec();
    let pivots = rref_rows(f, &mut work);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &p) in work.iter().zip(&pivots) {
            v[p] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Standard dot product.
pub fn dot(f: &FieldContext, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { f.add(acc, f.mul(x, y)) })
}

/// `a + c * b` componentwise, in place.
pub fn axpy(f: &FieldContext, a: &mut [u32], c: u32, b: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = f.add(*x, f.mul(c, y));
        }
    }
}

/// Rank of a binary matrix whose rows are bit masks. Destroys the input.
pub fn rank_bits(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
    }
    rank
}

/// Rank of a row-major `rows x cols` matrix given as a flat slice, using
/// `scratch` as working storage.
pub fn rank_flat(f: &FieldContext, data: &[u32], rows: usize, cols: usize, scratch: &mut Vec<u32>) -> usize {
    scratch.clear();
    scratch.extend_from_slice(data);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| scratch[i * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for j in c..cols {
                scratch.swap(pr * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(scratch[rank * cols + c]).expect("nonzero pivot");
        for i in rank + 1..rows {
            let x = scratch[i * cols + c];
            if x == 0 {
                continue;
            }
            let factor = f.neg(f.mul(x, inv));
            for j in c..cols {
                let y = scratch[rank * cols + j];
                if y != 0 {
                    scratch[i * cols + j] = f.add(scratch[i * cols + j], f.mul(factor, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of `u`-dimensional subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, u: usize, q: u64) -> u128 {
    if u > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..u {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(x), Some(y)) => {
                num = x;
                den = y;
            }
            _ => return u128::MAX,
        }
        // Keep the running quotient small: partial products are always integral.
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A dense `rows x cols` matrix over `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl MatrixFq {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `E_{s,l}`: a single one at `(s, l)` (0-based).
    pub fn unit(field: &Field, rows: usize, cols: usize, s: usize, l: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.data[s * cols + l] = 1;
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            for &x in r {
                data.push(field.check(x)?);
            }
        }
        Ok(MatrixFq { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Builds a matrix from row-major entries.
    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(MatrixFq { field: field.clone(), rows, cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatrixFq { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatrixFq { data, ..self.clone() })
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        MatrixFq { data: self.data.iter().map(|&a| f.mul(c, a)).collect(), ..self.clone() }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        if self.field.order() == 2 && self.cols <= 64 {
            let mut rows: Vec<u64> = (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &x)| acc | ((x as u64) << j))
                })
                .collect();
            return rank_bits(&mut rows);
        }
        rank_rows(&self.field, &self.to_rows())
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&self.field, &mut rows);
        rows.resize(self.rows, vec![0; self.cols]);
        let m = MatrixFq::from_rows(&self.field, &rows, self.cols).expect("same field");
        (m, pivots)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = rref_rows(&self.field, &mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivideByZero);
        }
        let inv: Vec<Vec<u32>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        MatrixFq::from_rows(&self.field, &inv, n)
    }

    /// The submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Row space inside `F_q^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(&self.field, self.cols, self.to_rows()).expect("rows have matching length")
    }

    /// Column space inside `F_q^rows`.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Trace of `self * other^T`, i.e. the sum of entrywise products.
    pub fn trace_form(&self, other: &Self) -> Result<u32> {
        self.check_same(other)?;
        Ok(dot(&self.field, &self.data, &other.data))
    }
}

/// A subspace of `F_q^n`, stored as a basis in reduced row echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, {:?})", self.n, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Self {
        Subspace { field: field.clone(), n, basis: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { field: field.clone(), n, basis }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span(field: &Field, n: usize, vectors: Vec<Vec<u32>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != n {
                return Err(Error::AmbientMismatch(v.len(), n));
            }
            for &x in v {
                field.check(x)?;
            }
        }
        let mut basis = vectors;
        rref_rows(field, &mut basis);
        Ok(Subspace { field: field.clone(), n, basis })
    }

    /// Wraps a basis already known to be in reduced row echelon form.
    pub(crate) fn from_rref(field: &Field, n: usize, basis: Vec<Vec<u32>>) -> Self {
        Subspace { field: field.clone(), n, basis }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("basis rows are nonzero"))
            .collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.n {
            return false;
        }
        // Reduce against the RREF basis and see whether anything survives.
        let f = &self.field;
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).expect("nonzero row");
            if w[p] != 0 {
                let c = f.neg(w[p]);
                axpy(f, &mut w, c, row);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref_rows(&self.field, &mut rows);
        Ok(Subspace { field: self.field.clone(), n: self.n, basis: rows })
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend_from_slice(u);
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat(0).take(n));
            rows.push(r);
        }
        rref_rows(&self.field, &mut rows);
        let basis: Vec<Vec<u32>> = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Subspace::span(&self.field, n, basis)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal(&self) -> Self {
        let mut basis = null_space(&self.field, &self.basis, self.n);
        rref_rows(&self.field, &mut basis);
        Subspace { field: self.field.clone(), n: self.n, basis }
    }
}

/// Iterator over all `u`-dimensional subspaces of `F_q^n`.
///
/// Subspaces come out grouped by pivot set (combinations in lexicographic
/// order); within a pivot set the free entries run through an odometer,
/// last entry fastest.
pub struct SubspaceIter {
    field: Field,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    done: bool,
}

/// Enumerates the `u`-dimensional subspaces of `F_q^n`, refusing when their
/// number exceeds `cap`.
pub fn enumerate_subspaces(field: &Field, n: usize, u: usize, cap: u128) -> Result<SubspaceIter> {
    if u > n {
        return Err(Error::DimensionMismatch(format!("subspace dimension {u} > {n}")));
    }
    let size = gaussian_binomial(n, u, field.order() as u64);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let mut it = SubspaceIter {
        field: field.clone(),
        n,
        pivots: (0..u).collect(),
        free: Vec::new(),
        values: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

impl SubspaceIter {
    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.values = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let mut basis = vec![vec![0u32; self.n]; self.pivots.len()];
        for (r, &p) in self.pivots.iter().enumerate() {
            basis[r][p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            basis[r][c] = v;
        }
        Subspace::from_rref(&self.field, self.n, basis)
    }

    fn advance(&mut self) {
        let q = self.field.order();
        for i in (0..self.values.len()).rev() {
            self.values[i] += 1;
            if self.values[i] < q {
                return;
            }
            self.values[i] = 0;
        }
        // Next combination of pivot columns.
        let u = self.pivots.len();
        let mut i = u;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.n - u + i {
                self.pivots[i] += 1;
                for k in i + 1..u {
                    self.pivots[k] = self.pivots[k - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        self.advance();
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        FieldContext::prime(2).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, f: &Field, r: usize, c: usize) -> MatrixFq {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.order())).collect();
        MatrixFq::from_flat(f, r, c, data).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f2();
        assert_eq!(MatrixFq::zeros(&f, 3, 2).rank(), 0);
        assert_eq!(MatrixFq::unit(&f, 3, 3, 0, 0).rank(), 1);
        let m = MatrixFq::from_rows(&f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 0]], 3).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_is_transpose_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = FieldContext::new(p, e, None).unwrap();
            for _ in 0..200 {
                let r = rng.gen_range(1..=5);
                let c = rng.gen_range(1..=5);
                let m = random_matrix(&mut rng, &f, r, c);
                assert_eq!(m.rank(), m.transpose().rank());
                assert_eq!(m.rank(), rank_rows(&f, &m.to_rows()));
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FieldContext::new(3, 1, None).unwrap();
        let mut seen = 0;
        while seen < 50 {
            let m = random_matrix(&mut rng, &f, 3, 3);
            match m.inverse() {
                Ok(inv) => {
                    assert_eq!(m.mul(&inv).unwrap(), MatrixFq::identity(&f, 3));
                    seen += 1;
                }
                Err(_) => assert!(!m.is_invertible()),
            }
        }
    }

    #[test]
    fn intersection_example() {
        let f = f2();
        let u = Subspace::span(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let v = Subspace::span(&f, 3, vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let expect = Subspace::span(&f, 3, vec![vec![1, 1, 0]]).unwrap();
        assert_eq!(u.intersect(&v).unwrap(), expect);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let a = Subspace::span(&f, 3, vec![vec![1, 0, 0]]).unwrap();
        let b = Subspace::span(&f, 3, vec![vec![0, 1, 0]]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let c = Subspace::span(&f, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(a.intersect(&c).unwrap_err(), Error::AmbientMismatch(3, 2));
    }

    #[test]
    fn intersection_matches_membership_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FieldContext::new(3, 1, None).unwrap();
        for _ in 0..100 {
            let n = 4;
            let gen = |rng: &mut ChaCha8Rng| {
                let k = rng.gen_range(0..=n);
                let vs = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect()).collect();
                Subspace::span(&f, n, vs).unwrap()
            };
            let (u, v) = (gen(&mut rng), gen(&mut rng));
            let inter = u.intersect(&v).unwrap();
            let sum = u.sum(&v).unwrap();
            assert_eq!(u.dim() + v.dim(), inter.dim() + sum.dim());
            // Count common vectors by brute force.
            let mut common = 0u32;
            for x in 0..81u32 {
                let vec: Vec<u32> = (0..4).map(|i| (x / 3u32.pow(i)) % 3).collect();
                if u.contains(&vec) && v.contains(&vec) {
                    common += 1;
                    assert!(inter.contains(&vec));
                }
            }
            assert_eq!(common, 3u32.pow(inter.dim() as u32));
        }
    }

    #[test]
    fn orthogonal_complement() {
        let f = FieldContext::new(2, 2, None).unwrap();
        let u = Subspace::span(&f, 3, vec![vec![1, 2, 3]]).unwrap();
        let perp = u.orthogonal();
        assert_eq!(perp.dim(), 2);
        for v in perp.basis() {
            assert_eq!(dot(&f, v, &u.basis()[0]), 0);
        }
        assert_eq!(perp.orthogonal(), u);
    }

    #[test]
    fn subspace_enumeration_counts() {
        let f = f2();
        assert_eq!(enumerate_subspaces(&f, 2, 1, 100).unwrap().count(), 3);
        let zero: Vec<_> = enumerate_subspaces(&f, 4, 0, 100).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].dim(), 0);
        let f3 = FieldContext::prime(3).unwrap();
        assert_eq!(enumerate_subspaces(&f3, 3, 1, 100).unwrap().count(), 13);
        assert!(matches!(
            enumerate_subspaces(&f3, 6, 3, 10),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_is_distinct_and_matches_product_formula() {
        // Oracle: the product formula evaluated in floating point-free
        // integer arithmetic, independently of `gaussian_binomial`.
        fn oracle(n: u32, u: u32, q: u64) -> u64 {
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..u {
                num *= q.pow(n - i) - 1;
                den *= q.pow(i + 1) - 1;
            }
            num / den
        }
        for (p, e, n) in [(2u32, 1u32, 5usize), (3, 1, 4), (2, 2, 3)] {
            let f = FieldContext::new(p, e, None).unwrap();
            for u in 0..=n {
                let all: Vec<Subspace> = enumerate_subspaces(&f, n, u, u128::MAX).unwrap().collect();
                let q = f.order() as u64;
                assert_eq!(all.len() as u64, oracle(n as u32, u as u32, q));
                assert_eq!(gaussian_binomial(n, u, q), all.len() as u128);
                let mut keys: Vec<_> = all.iter().map(|s| s.basis().to_vec()).collect();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), all.len());
                for s in &all {
                    assert_eq!(s.dim(), u);
                    let mut b = s.basis().to_vec();
                    rref_rows(&f, &mut b);
                    assert_eq!(b, s.basis());
                }
            }
        }
    }

    #[test]
    fn null_space_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FieldContext::new(5, 1, None).unwrap();
        for _ in 0..50 {
            let m = random_matrix(&mut rng, &f, 3, 5);
            let ns = null_space(&f, &m.to_rows(), 5);
            assert_eq!(ns.len() + m.rank(), 5);
            for v in &ns {
                for r in m.to_rows() {
                    assert_eq!(dot(&f, &r, v), 0);
                }
            }
        }
    }
}
