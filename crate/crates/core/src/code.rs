//! The ambient space `M = prod F_q^{m_i x n_i}`, its elements, sum-rank
//! weights and linear codes.
//!
//! A tuple is flattened block by block, each block row-major. Under this
//! flattening the trace form `sum_i tr(D_i C_i^T)` is the ordinary dot
//! product, so duals are null spaces.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matfq::{dot, rank_bits, rank_flat, rref_rows, null_space, MatrixFq};
use crate::Caps;

/// Block dimensions of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    m: Vec<usize>,
    n: Vec<usize>,
    strict: bool,
    offsets: Vec<usize>,
}

impl Shape {
    /// A shape with `m_1 >= ... >= m_l` and `n_i <= m_i`.
    pub fn new(m: Vec<usize>, n: Vec<usize>) -> Result<Self> {
        Self::build(m, n, true)
    }

    /// A shape without the ordering hypotheses, for wiretap scenarios.
    pub fn non_strict(m: Vec<usize>, n: Vec<usize>) -> Result<Self> {
        Self::build(m, n, false)
    }

    fn build(m: Vec<usize>, n: Vec<usize>, strict: bool) -> Result<Self> {
        if m.len() != n.len() {
            return Err(Error::InvalidShape(format!("{} row counts but {} column counts", m.len(), n.len())));
        }
        if m.is_empty() {
            return Err(Error::InvalidShape("no blocks".into()));
        }
        if m.iter().chain(&n).any(|&x| x == 0) {
            return Err(Error::InvalidShape("block dimensions must be positive".into()));
        }
        if strict {
            if m.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidShape("row counts must be non-increasing".into()));
            }
            if let Some(i) = (0..m.len()).find(|&i| n[i] > m[i]) {
                return Err(Error::InvalidShape(format!("block {i} has more columns than rows")));
            }
        }
        let mut offsets = Vec::with_capacity(m.len() + 1);
        let mut acc = 0;
        for i in 0..m.len() {
            offsets.push(acc);
            acc += m[i] * n[i];
        }
        offsets.push(acc);
        Ok(Shape { m, n, strict, offsets })
    }

    /// Number of blocks `l`.
    pub fn blocks(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Total number of columns `n = sum n_i`.
    pub fn total_n(&self) -> usize {
        self.n.iter().sum()
    }

    /// `dim M = sum m_i n_i`.
    pub fn dim(&self) -> usize {
        self.offsets[self.m.len()]
    }

    /// Start of block `i` in the flattened coordinates.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Flattened coordinate of entry `(s, l)` of block `i`.
    pub fn coord(&self, i: usize, s: usize, l: usize) -> usize {
        self.offsets[i] + s * self.n[i] + l
    }

    /// Block containing the global column `c` (0-based), columns numbered
    /// block by block.
    pub fn block_of_column(&self, mut c: usize) -> usize {
        for (i, &ni) in self.n.iter().enumerate() {
            if c < ni {
                return i;
            }
            c -= ni;
        }
        panic!("column index out of range")
    }

    /// Upper bound on the sum-rank weight: `sum min(m_i, n_i)`.
    pub fn max_weight(&self) -> usize {
        self.m.iter().zip(&self.n).map(|(&a, &b)| a.min(b)).sum()
    }

    /// Sum-rank weight of a flattened tuple.
    pub fn srk_flat(&self, field: &Field, v: &[u32]) -> usize {
        let mut scratch = Vec::new();
        (0..self.blocks())
            .map(|i| rank_flat(field, &v[self.offsets[i]..self.offsets[i + 1]], self.m[i], self.n[i], &mut scratch))
            .sum()
    }

    /// Block ranks of a flattened tuple.
    pub fn ranks_flat(&self, field: &Field, v: &[u32]) -> Vec<usize> {
        let mut scratch = Vec::new();
        (0..self.blocks())
            .map(|i| rank_flat(field, &v[self.offsets[i]..self.offsets[i + 1]], self.m[i], self.n[i], &mut scratch))
            .collect()
    }

    /// `sum m_i r_i` for block ranks `r_i`.
    pub fn weighted(&self, ranks: &[usize]) -> usize {
        ranks.iter().zip(&self.m).map(|(r, m)| r * m).sum()
    }
}

/// An element `(C_1, ..., C_l)` of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    shape: Shape,
    blocks: Vec<MatrixFq>,
}

impl MatrixTuple {
    pub fn new(shape: &Shape, blocks: Vec<MatrixFq>) -> Result<Self> {
        if blocks.len() != shape.blocks() {
            return Err(Error::ShapeMismatch);
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.nrows() != shape.m[i] || b.ncols() != shape.n[i] {
                return Err(Error::ShapeMismatch);
            }
            if b.field() != blocks[0].field() {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(MatrixTuple { shape: shape.clone(), blocks })
    }

    pub fn zero(field: &Field, shape: &Shape) -> Self {
        let blocks = (0..shape.blocks())
            .map(|i| MatrixFq::zeros(field, shape.m[i], shape.n[i]))
            .collect();
        MatrixTuple { shape: shape.clone(), blocks }
    }

    pub fn from_flat(field: &Field, shape: &Shape, v: &[u32]) -> Result<Self> {
        if v.len() != shape.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for dim {}", v.len(), shape.dim())));
        }
        let blocks = (0..shape.blocks())
            .map(|i| {
                MatrixFq::from_flat(field, shape.m[i], shape.n[i], v[shape.offsets[i]..shape.offsets[i + 1]].to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixTuple { shape: shape.clone(), blocks })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> &Field {
        self.blocks[0].field()
    }

    pub fn blocks(&self) -> &[MatrixFq] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &MatrixFq {
        &self.blocks[i]
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.as_slice().iter().copied()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(MatrixFq::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(MatrixFq::rank).collect()
    }

    /// `sum_i m_i rk(C_i)`.
    pub fn weighted_srk(&self) -> usize {
        self.shape.weighted(&self.ranks())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(MatrixTuple { shape: self.shape.clone(), blocks })
    }

    pub fn scale(&self, c: u32) -> Self {
        MatrixTuple { shape: self.shape.clone(), blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }
}

/// Sum-rank weight `sum_i rk(C_i)`.
pub fn srk(c: &MatrixTuple) -> usize {
    c.blocks.iter().map(MatrixFq::rank).sum()
}

/// Sum-rank distance `srk(C - D)`.
pub fn distance(c: &MatrixTuple, d: &MatrixTuple) -> Result<usize> {
    if c.shape != d.shape {
        return Err(Error::ShapeMismatch);
    }
    let diff: Vec<MatrixFq> = c.blocks.iter().zip(&d.blocks).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
    Ok(diff.iter().map(MatrixFq::rank).sum())
}

/// The trace form `sum_i tr(D_i C_i^T)`.
pub fn trace_pairing(d: &MatrixTuple, c: &MatrixTuple) -> Result<u32> {
    if d.shape != c.shape {
        return Err(Error::ShapeMismatch);
    }
    if d.field() != c.field() {
        return Err(Error::ContextMismatch);
    }
    Ok(dot(d.field(), &d.flatten(), &c.flatten()))
}

/// How the minimum distance is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    /// Brute force over all codewords.
    Enumerate,
    /// The first generalized weight over product anticodes.
    Anticode,
}

/// Aggregate weight statistics of a code, from one pass over its codewords.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightStats {
    /// Smallest weight of a nonzero codeword, `None` for the zero code.
    pub min_distance: Option<usize>,
    pub max_srk: usize,
    /// `max sum_i m_i rk(C_i)`.
    pub weighted_max: usize,
}

/// An `F_q`-linear subspace of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    shape: Shape,
    basis: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Span of the given tuples.
    pub fn new(field: &Field, shape: &Shape, generators: &[MatrixTuple]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(generators.len());
        for g in generators {
            if g.shape != *shape {
                return Err(Error::ShapeMismatch);
            }
            if g.field() != field {
                return Err(Error::ContextMismatch);
            }
            vectors.push(g.flatten());
        }
        Self::from_vectors(field, shape, vectors)
    }

    /// Span of flattened tuples.
    pub fn from_vectors(field: &Field, shape: &Shape, mut vectors: Vec<Vec<u32>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != shape.dim() {
                return Err(Error::DimensionMismatch(format!("vector of length {} for dim {}", v.len(), shape.dim())));
            }
            for &x in v {
                field.check(x)?;
            }
        }
        rref_rows(field, &mut vectors);
        Ok(LinearCode { field: field.clone(), shape: shape.clone(), basis: vectors })
    }

    pub fn zero(field: &Field, shape: &Shape) -> Self {
        LinearCode { field: field.clone(), shape: shape.clone(), basis: Vec::new() }
    }

    pub fn full(field: &Field, shape: &Shape) -> Self {
        let d = shape.dim();
        let basis = (0..d).map(|i| (0..d).map(|j| u32::from(i == j)).collect()).collect();
        LinearCode { field: field.clone(), shape: shape.clone(), basis }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis: reduced row echelon form of the flattened generators.
    pub fn basis_vectors(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<MatrixTuple> {
        self.basis
            .iter()
            .map(|v| MatrixTuple::from_flat(&self.field, &self.shape, v).expect("consistent dims"))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn contains_flat(&self, v: &[u32]) -> bool {
        if v.len() != self.shape.dim() {
            return false;
        }
        let f = &self.field;
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).expect("nonzero row");
            if w[p] != 0 {
                let c = f.neg(w[p]);
                crate::matfq::axpy(f, &mut w, c, row);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, c: &MatrixTuple) -> bool {
        c.shape == self.shape && c.field() == &self.field && self.contains_flat(&c.flatten())
    }

    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.shape == other.shape && self.basis.iter().all(|v| other.contains_flat(v))
    }

    /// The dual code with respect to the trace form.
    pub fn dual(&self) -> Self {
        let mut basis = null_space(&self.field, &self.basis, self.shape.dim());
        rref_rows(&self.field, &mut basis);
        LinearCode { field: self.field.clone(), shape: self.shape.clone(), basis }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref_rows(&self.field, &mut rows);
        Ok(LinearCode { field: self.field.clone(), shape: self.shape.clone(), basis: rows })
    }

    /// Intersection as the dual of the sum of duals.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Number of codewords, `q^dim`, saturating.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    fn guard(&self, cap: u128) -> Result<()> {
        let size = self.size();
        if size > cap {
            return Err(Error::EnumerationTooLarge { size, cap });
        }
        Ok(())
    }

    /// Calls `f` on every codeword (zero included), as a flattened vector.
    pub fn for_each_codeword<F>(&self, cap: u128, mut f: F) -> Result<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        self.guard(cap)?;
        let fld = &self.field;
        let q = fld.order();
        let k = self.dim();
        let mut current = vec![0u32; self.shape.dim()];
        let mut digits = vec![0u32; k];
        if f(&current).is_break() {
            return Ok(());
        }
        // Odometer where every digit change adds one basis vector: a digit
        // wrapping from q-1 to 0 adds its vector a q-th time, i.e. nothing net.
        loop {
            let mut t = 0;
            loop {
                if t == k {
                    return Ok(());
                }
                for (x, &y) in current.iter_mut().zip(&self.basis[t]) {
                    if y != 0 {
                        *x = fld.add(*x, y);
                    }
                }
                digits[t] += 1;
                if digits[t] < q {
                    break;
                }
                digits[t] = 0;
                t += 1;
            }
            if f(&current).is_break() {
                return Ok(());
            }
        }
    }

    /// Calls `f` with the block ranks of every codeword (zero included).
    pub fn for_each_codeword_ranks<F>(&self, cap: u128, mut f: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.guard(cap)?;
        let shape = &self.shape;
        let l = shape.blocks();
        let mut ranks = vec![0usize; l];
        if self.field.order() == 2 && shape.n.iter().all(|&n| n <= 64) {
            // Rows of every block as bit masks; walk the codewords in Gray
            // code order so each step is one XOR.
            let row_start: Vec<usize> = std::iter::once(0)
                .chain(shape.m.iter().scan(0, |acc, &m| {
                    *acc += m;
                    Some(*acc)
                }))
                .collect();
            let total_rows = row_start[l];
            let packed: Vec<Vec<u64>> = self
                .basis
                .iter()
                .map(|v| {
                    let mut rows = vec![0u64; total_rows];
                    for i in 0..l {
                        for s in 0..shape.m[i] {
                            let mut mask = 0u64;
                            for c in 0..shape.n[i] {
                                if v[shape.coord(i, s, c)] != 0 {
                                    mask |= 1 << c;
                                }
                            }
                            rows[row_start[i] + s] = mask;
                        }
                    }
                    rows
                })
                .collect();
            let mut current = vec![0u64; total_rows];
            let mut scratch = vec![0u64; total_rows];
            if f(&ranks).is_break() {
                return Ok(());
            }
            let count: u64 = 1u64 << self.dim();
            for step in 1..count {
                let t = step.trailing_zeros() as usize;
                for (x, y) in current.iter_mut().zip(&packed[t]) {
                    *x ^= *y;
                }
                scratch.copy_from_slice(&current);
                for i in 0..l {
                    ranks[i] = rank_bits(&mut scratch[row_start[i]..row_start[i + 1]]);
                }
                if f(&ranks).is_break() {
                    return Ok(());
                }
            }
            return Ok(());
        }
        let mut scratch = Vec::new();
        let fld = self.field.clone();
        self.for_each_codeword(u128::MAX, |v| {
            for i in 0..l {
                ranks[i] = rank_flat(&fld, &v[shape.offsets[i]..shape.offsets[i + 1]], shape.m[i], shape.n[i], &mut scratch);
            }
            f(&ranks)
        })
    }

    /// Minimum distance, maximum sum-rank weight and the weighted maximum,
    /// by enumerating codewords.
    pub fn weight_stats(&self, cap: u128) -> Result<WeightStats> {
        let shape = &self.shape;
        let mut stats = WeightStats { min_distance: None, max_srk: 0, weighted_max: 0 };
        let mut first = true;
        self.for_each_codeword_ranks(cap, |ranks| {
            if first {
                first = false;
                return ControlFlow::Continue(());
            }
            let w: usize = ranks.iter().sum();
            stats.min_distance = Some(stats.min_distance.map_or(w, |d| d.min(w)));
            stats.max_srk = stats.max_srk.max(w);
            stats.weighted_max = stats.weighted_max.max(shape.weighted(ranks));
            ControlFlow::Continue(())
        })?;
        Ok(stats)
    }

    /// Minimum sum-rank distance of a nonzero code.
    pub fn min_distance(&self, method: DistanceMethod, caps: &Caps) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::TrivialCode);
        }
        match method {
            DistanceMethod::Enumerate => Ok(self.weight_stats(caps.codewords)?.min_distance.expect("nonzero code")),
            DistanceMethod::Anticode => {
                crate::genweights::gen_weight(self, 1, crate::genweights::Variant::Product, caps)
            }
        }
    }

    /// `max srk` over the code.
    pub fn max_srk(&self, cap: u128) -> Result<usize> {
        Ok(self.weight_stats(cap)?.max_srk)
    }

    /// `max sum_i m_i rk(C_i)` over the code.
    pub fn weighted_max(&self, cap: u128) -> Result<usize> {
        Ok(self.weight_stats(cap)?.weighted_max)
    }

    /// Projection onto block `i`, as a code in the single-block shape.
    pub fn project(&self, i: usize) -> Self {
        let shape = Shape::build(vec![self.shape.m[i]], vec![self.shape.n[i]], self.shape.strict).expect("positive dims");
        let vectors = self
            .basis
            .iter()
            .map(|v| v[self.shape.offsets[i]..self.shape.offsets[i + 1]].to_vec())
            .collect();
        LinearCode::from_vectors(&self.field, &shape, vectors).expect("consistent dims")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldContext;

    fn f2() -> Field {
        FieldContext::prime(2).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![2, 3], vec![1, 1]).is_err());
        assert!(Shape::new(vec![2], vec![3]).is_err());
        assert!(Shape::non_strict(vec![2], vec![3]).is_ok());
        assert!(Shape::new(vec![0], vec![0]).is_err());
        let s = Shape::new(vec![3, 2], vec![1, 2]).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(s.total_n(), 3);
        assert_eq!(s.block_of_column(0), 0);
        assert_eq!(s.block_of_column(2), 1);
    }

    #[test]
    fn srk_examples() {
        let f = f2();
        let s = Shape::new(vec![2, 2], vec![2, 2]).unwrap();
        assert_eq!(srk(&MatrixTuple::zero(&f, &s)), 0);
        let t = MatrixTuple::new(
            &s,
            vec![MatrixFq::unit(&f, 2, 2, 0, 0), MatrixFq::unit(&f, 2, 2, 1, 1)],
        )
        .unwrap();
        assert_eq!(srk(&t), 2);
    }

    #[test]
    fn trace_pairing_examples() {
        let f = f2();
        let s = Shape::new(vec![2], vec![2]).unwrap();
        let e = MatrixTuple::new(&s, vec![MatrixFq::unit(&f, 2, 2, 0, 0)]).unwrap();
        assert_eq!(trace_pairing(&e, &e).unwrap(), 1);
        assert_eq!(trace_pairing(&MatrixTuple::zero(&f, &s), &e).unwrap(), 0);
        let f3 = FieldContext::prime(3).unwrap();
        let s = Shape::new(vec![2, 1], vec![2, 1]).unwrap();
        let d = MatrixTuple::new(&s, vec![MatrixFq::identity(&f3, 2), MatrixFq::identity(&f3, 1)]).unwrap();
        assert_eq!(trace_pairing(&d, &d).unwrap(), 0);
    }

    #[test]
    fn trace_pairing_matches_matrix_trace() {
        // Oracle: tr(D C^T) computed with an explicit product.
        let f = FieldContext::prime(3).unwrap();
        let d = MatrixFq::from_rows(&f, &[vec![1, 2, 0], vec![2, 2, 1]], 3).unwrap();
        let c = MatrixFq::from_rows(&f, &[vec![0, 1, 2], vec![1, 1, 1]], 3).unwrap();
        let prod = d.mul(&c.transpose()).unwrap();
        let tr = f.add(prod.get(0, 0), prod.get(1, 1));
        assert_eq!(d.trace_form(&c).unwrap(), tr);
    }

    #[test]
    fn dual_examples() {
        let f = f2();
        let s = Shape::new(vec![3, 2], vec![1, 2]).unwrap();
        assert_eq!(LinearCode::full(&f, &s).dual().dim(), 0);
        // 0 x F^{2x2}: its dual is F^{3x1} x 0.
        let gens: Vec<Vec<u32>> = (3..7).map(|i| (0..7).map(|j| u32::from(i == j)).collect()).collect();
        let c1 = LinearCode::from_vectors(&f, &s, gens).unwrap();
        let d = c1.dual();
        let expect: Vec<Vec<u32>> = (0..3).map(|i| (0..7).map(|j| u32::from(i == j)).collect()).collect();
        assert_eq!(d, LinearCode::from_vectors(&f, &s, expect).unwrap());
        assert_eq!(d.dual(), c1);
    }

    #[test]
    fn self_orthogonal_intersection() {
        let f = f2();
        let s = Shape::new(vec![1, 1], vec![1, 1]).unwrap();
        let c = LinearCode::from_vectors(&f, &s, vec![vec![1, 1]]).unwrap();
        assert_eq!(c.intersect(&c.dual()).unwrap(), c);
        assert_eq!(c.intersect(&LinearCode::full(&f, &s)).unwrap(), c);
    }

    #[test]
    fn enumeration_paths_agree() {
        let f = f2();
        let s = Shape::new(vec![3, 2, 1], vec![2, 2, 1]).unwrap();
        let code = LinearCode::from_vectors(
            &f,
            &s,
            vec![
                vec![1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1],
                vec![0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0],
                vec![1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1],
            ],
        )
        .unwrap();
        let mut fast = Vec::new();
        code.for_each_codeword_ranks(1 << 20, |r| {
            fast.push(r.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        let mut slow = Vec::new();
        code.for_each_codeword(1 << 20, |v| {
            slow.push(s.ranks_flat(&f, v));
            ControlFlow::Continue(())
        })
        .unwrap();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 8);
    }

    #[test]
    fn enumeration_guard() {
        let f = f2();
        let s = Shape::new(vec![3], vec![3]).unwrap();
        let full = LinearCode::full(&f, &s);
        assert_eq!(
            full.weight_stats(256).unwrap_err(),
            Error::EnumerationTooLarge { size: 512, cap: 256 }
        );
        let stats = full.weight_stats(512).unwrap();
        assert_eq!(stats.min_distance, Some(1));
        assert_eq!(stats.max_srk, 3);
        assert_eq!(stats.weighted_max, 9);
    }

    #[test]
    fn zero_code_stats() {
        let f = f2();
        let s = Shape::new(vec![2], vec![2]).unwrap();
        let z = LinearCode::zero(&f, &s);
        assert_eq!(z.max_srk(16).unwrap(), 0);
        assert_eq!(z.weighted_max(16).unwrap(), 0);
        assert_eq!(z.min_distance(DistanceMethod::Enumerate, &Caps::default()).unwrap_err(), Error::TrivialCode);
    }
}
