//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here goes through the library's anticode families or
//! codeword enumerators; only field arithmetic, matrix rank and subspace
//! listing are reused.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use sumrank::matfq::enumerate_subspaces;
use sumrank::{Field, FieldContext, LinearCode, MatrixFq, Shape};

pub fn field(q: u32) -> Field {
    match q {
        2 | 3 | 5 | 7 => FieldContext::prime(q).unwrap(),
        4 => FieldContext::new(2, 2, None).unwrap(),
        8 => FieldContext::new(2, 3, None).unwrap(),
        9 => FieldContext::new(3, 2, None).unwrap(),
        _ => panic!("no test field of order {q}"),
    }
}

pub fn shape(blocks: &[(usize, usize)]) -> Shape {
    Shape::new(blocks.iter().map(|b| b.0).collect(), blocks.iter().map(|b| b.1).collect()).unwrap()
}

pub fn code(f: &Field, s: &Shape, vectors: &[Vec<u32>]) -> LinearCode {
    LinearCode::from_vectors(f, s, vectors.to_vec()).unwrap()
}

pub fn unit_code(f: &Field, s: &Shape, coords: &[usize]) -> LinearCode {
    let vs = coords.iter().map(|&c| (0..s.dim()).map(|j| u32::from(j == c)).collect()).collect::<Vec<_>>();
    code(f, s, &vs)
}

/// Flat vector of a tuple given block by block as row lists.
pub fn flat(blocks: &[&[&[u32]]]) -> Vec<u32> {
    blocks.iter().flat_map(|b| b.iter().flat_map(|r| r.iter().copied())).collect()
}

pub fn blocks_of(f: &Field, s: &Shape, v: &[u32]) -> Vec<MatrixFq> {
    (0..s.blocks())
        .map(|i| {
            let (m, n) = (s.m()[i], s.n()[i]);
            let off = s.offset(i);
            MatrixFq::from_flat(f, m, n, v[off..off + m * n].to_vec()).unwrap()
        })
        .collect()
}

pub fn block_ranks(f: &Field, s: &Shape, v: &[u32]) -> Vec<usize> {
    blocks_of(f, s, v).iter().map(MatrixFq::rank).collect()
}

/// Every element of the span of `basis`, by an explicit odometer.
pub fn span_elements(f: &Field, basis: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
    let q = f.order();
    let mut coeffs = vec![0u32; basis.len()];
    let mut out = Vec::new();
    loop {
        let mut v = vec![0u32; len];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, *y));
            }
        }
        out.push(v);
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

pub fn codewords(c: &LinearCode) -> Vec<Vec<u32>> {
    span_elements(c.field(), c.basis_vectors(), c.shape().dim())
}

pub fn brute_min_distance(c: &LinearCode) -> Option<usize> {
    codewords(c)
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| block_ranks(c.field(), c.shape(), v).iter().sum())
        .min()
}

pub fn brute_max_srk(c: &LinearCode) -> usize {
    codewords(c).iter().map(|v| block_ranks(c.field(), c.shape(), v).iter().sum()).max().unwrap()
}

/// `max sum m_i rk(C_i)` over the code.
pub fn brute_weighted_max(c: &LinearCode) -> usize {
    let s = c.shape();
    codewords(c)
        .iter()
        .map(|v| block_ranks(c.field(), s, v).iter().zip(s.m()).map(|(r, m)| r * m).sum())
        .max()
        .unwrap()
}

pub fn all_codes(f: &Field, s: &Shape) -> Vec<LinearCode> {
    let mut out = Vec::new();
    for u in 0..=s.dim() {
        for w in enumerate_subspaces(f, s.dim(), u, u128::MAX).unwrap() {
            out.push(code(f, s, w.basis()));
        }
    }
    out
}

/// One optimal anticode found by filtering all subspaces.
pub struct OracleAnticode {
    pub code: LinearCode,
    pub max_srk: usize,
    /// Whether it is a product of optimal rank-metric anticodes.
    pub product: bool,
    /// Last block carrying a nonzero projection.
    pub last_nonzero: Option<usize>,
}

fn projection(c: &LinearCode, i: usize) -> LinearCode {
    let s = c.shape();
    let (off, len) = (s.offset(i), s.m()[i] * s.n()[i]);
    let vs = c
        .basis_vectors()
        .iter()
        .map(|v| (0..s.dim()).map(|j| if j >= off && j < off + len { v[j] } else { 0 }).collect())
        .collect::<Vec<_>>();
    code(c.field(), s, &vs)
}

/// All optimal anticodes of a shape, by checking `dim = max sum m_i rk`
/// on every subspace of the ambient space.
pub fn oracle_anticodes(f: &Field, s: &Shape) -> Vec<OracleAnticode> {
    let mut out = Vec::new();
    for c in all_codes(f, s) {
        if brute_weighted_max(&c) != c.dim() {
            continue;
        }
        let projections: Vec<LinearCode> = (0..s.blocks()).map(|i| projection(&c, i)).collect();
        let product_dim: usize = projections.iter().map(LinearCode::dim).sum();
        let factors_optimal = projections.iter().enumerate().all(|(i, p)| p.dim() == s.m()[i] * brute_max_srk(p));
        let last_nonzero = (0..s.blocks()).rev().find(|&i| projections[i].dim() > 0);
        out.push(OracleAnticode {
            max_srk: brute_max_srk(&c),
            product: product_dim == c.dim() && factors_optimal,
            last_nonzero,
            code: c,
        });
    }
    out
}

/// Generalized weights from a list of optimal anticodes.
pub fn oracle_profile(c: &LinearCode, anticodes: &[OracleAnticode], product_only: bool) -> Vec<usize> {
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for a in anticodes.iter().filter(|a| a.product || !product_only) {
        let d = c.intersect(&a.code).unwrap().dim();
        let e = best.entry(a.max_srk).or_insert(0);
        *e = (*e).max(d);
    }
    (1..=c.dim())
        .map(|r| *best.iter().find(|(_, &d)| d >= r).expect("the full space is an anticode").0)
        .collect()
}

pub fn random_vector<R: Rng>(rng: &mut R, f: &Field, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..f.order())).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, f: &Field, m: usize, n: usize) -> MatrixFq {
    MatrixFq::from_flat(f, m, n, random_vector(rng, f, m * n)).unwrap()
}

pub fn random_nonzero_matrix<R: Rng>(rng: &mut R, f: &Field, m: usize, n: usize) -> MatrixFq {
    loop {
        let x = random_matrix(rng, f, m, n);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random code of exactly the given dimension.
pub fn random_code<R: Rng>(rng: &mut R, f: &Field, s: &Shape, dim: usize) -> LinearCode {
    assert!(dim <= s.dim());
    let mut vs: Vec<Vec<u32>> = Vec::new();
    loop {
        let c = code(f, s, &vs);
        if c.dim() == dim {
            return c;
        }
        vs = c.basis_vectors().to_vec();
        vs.push(random_vector(rng, f, s.dim()));
    }
}

/// Random strict shape: `m` nonincreasing, `n_i <= m_i`.
pub fn random_strict_shape<R: Rng>(rng: &mut R, blocks: usize, max_m: usize, max_dim: usize) -> Shape {
    loop {
        let mut m: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=max_m)).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        let n: Vec<usize> = m.iter().map(|&mi| rng.gen_range(1..=mi)).collect();
        let s = Shape::new(m, n).unwrap();
        if s.dim() <= max_dim {
            return s;
        }
    }
}

/// All strict shapes over the given block sizes with `sum m_i n_i <= max_dim`.
pub fn strict_shapes(max_dim: usize) -> Vec<Shape> {
    fn rec(prefix: &mut Vec<(usize, usize)>, left: usize, max_m: usize, out: &mut Vec<Shape>) {
        if !prefix.is_empty() {
            out.push(shape(prefix));
        }
        for m in 1..=max_m {
            for n in 1..=m {
                if m * n <= left {
                    prefix.push((m, n));
                    rec(prefix, left - m * n, m, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_dim, max_dim, &mut out);
    out
}
