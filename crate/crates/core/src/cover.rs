//! Pivot patterns, covering numbers and large-rank elements of cosets
//! `A + V` of matrix spaces.
//!
//! Positions are 0-based `(row, col)` pairs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matfq::MatrixFq;
use crate::Caps;

/// Least nonzero position in row-major order.
pub fn phi(m: &MatrixFq) -> Result<(usize, usize)> {
    let i = m.as_slice().iter().position(|&x| x != 0).ok_or(Error::ZeroMatrix)?;
    Ok((i / m.ncols(), i % m.ncols()))
}

/// The positions `phi(M_k)` of a collection of `m x n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotPattern {
    pub m: usize,
    pub n: usize,
    pub pivots: BTreeSet<(usize, usize)>,
}

impl PivotPattern {
    pub fn new(m: usize, n: usize, pivots: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pivots: BTreeSet<_> = pivots.into_iter().collect();
        if let Some(&(i, j)) = pivots.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(Error::InvalidInput(format!("position ({i},{j}) outside a {m}x{n} grid")));
        }
        Ok(PivotPattern { m, n, pivots })
    }

    pub fn of(ms: &[MatrixFq]) -> Result<Self> {
        let (m, n) = common_dims(ms, None)?;
        PivotPattern::new(m, n, ms.iter().map(phi).collect::<Result<Vec<_>>>()?)
    }

    /// Maximum matching in the rows-versus-columns graph, with a minimum
    /// line cover of the same size.
    pub fn cover(&self) -> LineCover {
        let mut adj = vec![Vec::new(); self.m];
        for &(i, j) in &self.pivots {
            adj[i].push(j);
        }
        let mut col_match: Vec<Option<usize>> = vec![None; self.n];
        for r in 0..self.m {
            let mut seen = vec![false; self.n];
            augment(r, &adj, &mut seen, &mut col_match);
        }
        let mut row_match: Vec<Option<usize>> = vec![None; self.m];
        for (c, r) in col_match.iter().enumerate() {
            if let Some(r) = *r {
                row_match[r] = Some(c);
            }
        }
        // Konig: rows reachable from free rows by alternating paths.
        let mut row_seen = vec![false; self.m];
        let mut col_seen = vec![false; self.n];
        let mut stack: Vec<usize> = (0..self.m).filter(|&r| row_match[r].is_none()).collect();
        for &r in &stack {
            row_seen[r] = true;
        }
        while let Some(r) = stack.pop() {
            for &c in &adj[r] {
                if !col_seen[c] {
                    col_seen[c] = true;
                    if let Some(r2) = col_match[c] {
                        if !row_seen[r2] {
                            row_seen[r2] = true;
                            stack.push(r2);
                        }
                    }
                }
            }
        }
        let mut matching: Vec<(usize, usize)> =
            row_match.iter().enumerate().filter_map(|(r, c)| c.map(|c| (r, c))).collect();
        matching.sort_unstable();
        LineCover {
            matching,
            rows: (0..self.m).filter(|&r| !row_seen[r]).collect(),
            cols: (0..self.n).filter(|&c| col_seen[c]).collect(),
        }
    }
}

fn augment(r: usize, adj: &[Vec<usize>], seen: &mut [bool], col_match: &mut [Option<usize>]) -> bool {
    for &c in &adj[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if col_match[c].map_or(true, |r2| augment(r2, adj, seen, col_match)) {
            col_match[c] = Some(r);
            return true;
        }
    }
    false
}

/// An independent set of pivots and a line cover of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCover {
    pub matching: Vec<(usize, usize)>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl LineCover {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rho {
    pub rho: usize,
    /// Independent pivots, sorted by row.
    pub independent: Vec<(usize, usize)>,
    /// For each independent pivot, the least index `k` with that `phi(M_k)`.
    pub witnesses: Vec<usize>,
    pub cover_rows: Vec<usize>,
    pub cover_cols: Vec<usize>,
}

fn common_dims(ms: &[MatrixFq], a: Option<&MatrixFq>) -> Result<(usize, usize)> {
    let dims = a.or(ms.first()).map(|x| (x.nrows(), x.ncols())).ok_or_else(|| {
        Error::InvalidInput("empty matrix collection".into())
    })?;
    if ms.iter().any(|x| (x.nrows(), x.ncols()) != dims) {
        return Err(Error::DimensionMismatch("matrices must share dimensions".into()));
    }
    if let Some(a) = a {
        if ms.iter().any(|x| x.field() != a.field()) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(dims)
}

/// Covering number of the pivot pattern of `ms`.
pub fn rho(ms: &[MatrixFq]) -> Result<Rho> {
    let phis = ms.iter().map(phi).collect::<Result<Vec<_>>>()?;
    let pattern = PivotPattern::of(ms)?;
    let cover = pattern.cover();
    let witnesses = cover.matching.iter().map(|p| phis.iter().position(|q| q == p).expect("pivot of some M_k")).collect();
    Ok(Rho {
        rho: cover.size(),
        independent: cover.matching,
        witnesses,
        cover_rows: cover.rows,
        cover_cols: cover.cols,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshulamResult {
    pub coeffs: Vec<u8>,
    pub rank: usize,
    pub rho: usize,
}

/// 0/1 coefficients `x` with `rank(A + sum x_k M_k) >= rho(M)`.
///
/// Restricts to the rows and columns of an independent pivot set, changes
/// basis so the restricted matrices become unit-triangular, then fixes the
/// `x_j` one leading minor at a time.
pub fn meshulam_search(a: &MatrixFq, ms: &[MatrixFq]) -> Result<MeshulamResult> {
    common_dims(ms, Some(a))?;
    let f = a.field();
    if ms.is_empty() {
        return Ok(MeshulamResult { coeffs: Vec::new(), rank: a.rank(), rho: 0 });
    }
    let info = rho(ms)?;
    let r = info.rho;
    let mut coeffs = vec![0u8; ms.len()];
    if r > 0 {
        let rows: Vec<usize> = info.independent.iter().map(|p| p.0).collect();
        let mut cols: Vec<usize> = info.independent.iter().map(|p| p.1).collect();
        cols.sort_unstable();
        let bs: Vec<MatrixFq> = info.witnesses.iter().map(|&k| ms[k].submatrix(&rows, &cols)).collect();
        let c_rows: Vec<Vec<u32>> = (0..r).map(|j| bs[j].row(j).to_vec()).collect();
        let c = MatrixFq::from_rows(f, &c_rows, r)?;
        let c_inv = c
            .inverse()
            .map_err(|_| Error::InvariantViolation("pivot rows are dependent".into()))?;
        let ds: Vec<MatrixFq> = bs.iter().map(|b| b.mul(&c_inv)).collect::<Result<_>>()?;
        let mut x = a.submatrix(&rows, &cols).mul(&c_inv)?;
        for i in 0..r {
            let lead: Vec<usize> = (0..=i).collect();
            if !x.submatrix(&lead, &lead).is_invertible() {
                x = x.add(&ds[i])?;
                coeffs[info.witnesses[i]] = 1;
                if !x.submatrix(&lead, &lead).is_invertible() {
                    return Err(Error::InvariantViolation("leading minor stays singular".into()));
                }
            }
        }
    }
    let mut sum = a.clone();
    for (k, m) in ms.iter().enumerate() {
        if coeffs[k] == 1 {
            sum = sum.add(m)?;
        }
    }
    let rank = sum.rank();
    if rank < r {
        return Err(Error::InvariantViolation(format!("rank {rank} below covering number {r}")));
    }
    Ok(MeshulamResult { coeffs, rank, rho: r })
}

/// An element `B` of `V` with `rank(A + B)` large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWitness {
    pub b: MatrixFq,
    pub rank: usize,
    /// 0/1 coefficients on the code's reduced basis, when `B` was built
    /// that way.
    pub coeffs: Option<Vec<u8>>,
}

fn single_block(a: &MatrixFq, v: &LinearCode) -> Result<(usize, usize)> {
    let s = v.shape();
    if s.blocks() != 1 {
        return Err(Error::InvalidShape("a single matrix block is required".into()));
    }
    if (s.m()[0], s.n()[0]) != (a.nrows(), a.ncols()) {
        return Err(Error::DimensionMismatch("A and V have different dimensions".into()));
    }
    if a.field() != v.field() {
        return Err(Error::ContextMismatch);
    }
    if s.n()[0] > s.m()[0] {
        return Err(Error::InvalidShape(format!("coset bounds need n <= m, got {}x{}", s.m()[0], s.n()[0])));
    }
    Ok((s.m()[0], s.n()[0]))
}

fn basis_matrices(v: &LinearCode, m: usize, n: usize) -> Vec<MatrixFq> {
    v.basis_vectors()
        .iter()
        .map(|b| MatrixFq::from_flat(v.field(), m, n, b.clone()).expect("basis vector has block size"))
        .collect()
}

/// `B in V` with `rank(A + B) >= t + 1`, for `dim V > m t` and `t < n <= m`.
/// The reduced basis of `V` has distinct pivots, so its covering number is
/// at least `t + 1`.
pub fn coset_rank_lower(a: &MatrixFq, v: &LinearCode, t: usize) -> Result<CosetWitness> {
    let (m, n) = single_block(a, v)?;
    if t >= n {
        return Err(Error::InvalidInput(format!("t = {t} must be below n = {n}")));
    }
    if v.dim() <= m * t {
        return Err(Error::DimensionTooSmall { dim: v.dim(), needed: m * t + 1 });
    }
    let ms = basis_matrices(v, m, n);
    let res = meshulam_search(a, &ms)?;
    let mut b = MatrixFq::zeros(a.field(), m, n);
    for (k, mk) in ms.iter().enumerate() {
        if res.coeffs[k] == 1 {
            b = b.add(mk)?;
        }
    }
    if res.rank < t + 1 {
        return Err(Error::InvariantViolation(format!("rank {} does not exceed t = {t}", res.rank)));
    }
    Ok(CosetWitness { b, rank: res.rank, coeffs: Some(res.coeffs) })
}

/// `B in V` with `rank(A + B) >= t + 1`, for `dim V = m t`, `t < n <= m`
/// and `A` outside `V`. Such a `B` always exists, so
/// [`Error::SearchExhausted`] means a bug.
///
/// Tries the covering-number construction on the basis of `V`, then on
/// `A` together with that basis (usable when `1 + x_0` is invertible), then
/// searches `V`: exhaustively within `caps.codewords`, otherwise by seeded
/// random sampling of as many elements.
pub fn coset_witness_exact(a: &MatrixFq, v: &LinearCode, t: usize, caps: &Caps) -> Result<CosetWitness> {
    let (m, n) = single_block(a, v)?;
    if t >= n {
        return Err(Error::InvalidInput(format!("t = {t} must be below n = {n}")));
    }
    if v.dim() != m * t {
        return Err(Error::DimensionMismatch(format!("dim V = {} but m t = {}", v.dim(), m * t)));
    }
    if v.contains_flat(a.as_slice()) {
        return Err(Error::AInV);
    }
    let f = a.field();
    let ms = basis_matrices(v, m, n);
    let combine = |coeffs: &[u8]| -> Result<MatrixFq> {
        let mut b = MatrixFq::zeros(f, m, n);
        for (k, mk) in ms.iter().enumerate() {
            if coeffs[k] == 1 {
                b = b.add(mk)?;
            }
        }
        Ok(b)
    };
    if !ms.is_empty() {
        let res = meshulam_search(a, &ms)?;
        if res.rank > t {
            let b = combine(&res.coeffs)?;
            return Ok(CosetWitness { b, rank: res.rank, coeffs: Some(res.coeffs) });
        }
    }
    // (1 + x_0) A + B has rank > t; rescale when 1 + x_0 != 0.
    let mut ext = vec![a.clone()];
    ext.extend(ms.iter().cloned());
    let res = meshulam_search(&MatrixFq::zeros(f, m, n), &ext)?;
    if res.rank > t {
        let lead = if res.coeffs[0] == 1 { f.add(1, 1) } else { 1 };
        if let Some(inv) = f.inv(lead) {
            let b = combine(&res.coeffs[1..])?.scale(inv);
            let rank = a.add(&b)?.rank();
            if rank > t {
                return Ok(CosetWitness { b, rank, coeffs: None });
            }
        }
    }
    let mut found = None;
    if v.size() <= caps.codewords {
        v.for_each_codeword(caps.codewords, |w| {
            let b = MatrixFq::from_flat(f, m, n, w.to_vec()).expect("codeword has block size");
            let rank = a.add(&b).expect("same dimensions").rank();
            if rank > t {
                found = Some(CosetWitness { b, rank, coeffs: None });
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        })?;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let q = f.order();
        for _ in 0..caps.codewords {
            let mut b = MatrixFq::zeros(f, m, n);
            for mk in &ms {
                b = b.add(&mk.scale(rng.gen_range(0..q)))?;
            }
            let rank = a.add(&b)?.rank();
            if rank > t {
                found = Some(CosetWitness { b, rank, coeffs: None });
                break;
            }
        }
    }
    found.ok_or(Error::SearchExhausted)
}
