//! Linear sum-rank isometries `(C_1, ..., C_l) -> (psi_1(C_sigma(1)), ...)`
//! with `psi_i(A) = M_i A N_i` or `M_i A^t N_i`, and brute-force code
//! equivalence.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{LinearCode, MatrixTuple, Shape};
use crate::error::{Error, Result};
use crate::genweights::{weight_profile, Variant};
use crate::gf::Field;
use crate::matfq::{MatrixFq, Subspace};
use crate::Caps;

/// One rank-metric isometry `A -> M A N` (or `M A^t N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIsometry {
    pub m: MatrixFq,
    pub n: MatrixFq,
    pub transpose: bool,
}

impl BlockIsometry {
    pub fn identity(field: &Field, rows: usize, cols: usize) -> Self {
        BlockIsometry { m: MatrixFq::identity(field, rows), n: MatrixFq::identity(field, cols), transpose: false }
    }

    pub fn apply(&self, a: &MatrixFq) -> MatrixFq {
        let a = if self.transpose { a.transpose() } else { a.clone() };
        self.m.mul(&a).and_then(|x| x.mul(&self.n)).expect("block dimensions checked")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    field: Field,
    shape: Shape,
    sigma: Vec<usize>,
    blocks: Vec<BlockIsometry>,
}

impl Isometry {
    pub fn new(field: &Field, shape: &Shape, sigma: Vec<usize>, blocks: Vec<BlockIsometry>) -> Result<Self> {
        let l = shape.blocks();
        if sigma.len() != l || blocks.len() != l {
            return Err(Error::ShapeMismatch);
        }
        let mut seen = vec![false; l];
        for (i, &j) in sigma.iter().enumerate() {
            if j >= l || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidInput("sigma is not a permutation".into()));
            }
            if (shape.m()[i], shape.n()[i]) != (shape.m()[j], shape.n()[j]) {
                return Err(Error::InvalidInput(format!("sigma maps block {j} to block {i} of another size")));
            }
        }
        for (i, b) in blocks.iter().enumerate() {
            let (m, n) = (shape.m()[i], shape.n()[i]);
            if b.transpose && m != n {
                return Err(Error::IllegalTranspose(i));
            }
            if (b.m.nrows(), b.m.ncols(), b.n.nrows(), b.n.ncols()) != (m, m, n, n) {
                return Err(Error::DimensionMismatch(format!("block {i} needs {m}x{m} and {n}x{n} matrices")));
            }
            if b.m.field() != field || b.n.field() != field {
                return Err(Error::ContextMismatch);
            }
            if !b.m.is_invertible() || !b.n.is_invertible() {
                return Err(Error::InvalidInput(format!("block {i} matrices must be invertible")));
            }
        }
        Ok(Isometry { field: field.clone(), shape: shape.clone(), sigma, blocks })
    }

    pub fn identity(field: &Field, shape: &Shape) -> Self {
        Isometry {
            field: field.clone(),
            shape: shape.clone(),
            sigma: (0..shape.blocks()).collect(),
            blocks: (0..shape.blocks()).map(|i| BlockIsometry::identity(field, shape.m()[i], shape.n()[i])).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn blocks(&self) -> &[BlockIsometry] {
        &self.blocks
    }

    pub fn apply(&self, c: &MatrixTuple) -> Result<MatrixTuple> {
        if c.shape() != &self.shape {
            return Err(Error::ShapeMismatch);
        }
        if c.field() != &self.field {
            return Err(Error::ContextMismatch);
        }
        let blocks = (0..self.shape.blocks()).map(|i| self.blocks[i].apply(c.block(self.sigma[i]))).collect();
        MatrixTuple::new(&self.shape, blocks)
    }

    pub fn apply_flat(&self, v: &[u32]) -> Vec<u32> {
        let t = MatrixTuple::from_flat(&self.field, &self.shape, v).expect("vector of ambient length");
        self.apply(&t).expect("same shape").flatten()
    }

    pub fn apply_code(&self, c: &LinearCode) -> Result<LinearCode> {
        if c.shape() != &self.shape {
            return Err(Error::ShapeMismatch);
        }
        let images = c.basis_vectors().iter().map(|v| self.apply_flat(v)).collect();
        LinearCode::from_vectors(&self.field, &self.shape, images)
    }
}

/// `|GL_k(F_q)|`.
pub fn gl_order(q: u64, k: usize) -> u128 {
    let qk = (q as u128).pow(k as u32);
    (0..k).map(|i| qk - (q as u128).pow(i as u32)).product()
}

/// All invertible `k x k` matrices, ordered by their row-major digit
/// encoding with the first entry most significant.
pub fn general_linear(field: &Field, k: usize, cap: u128) -> Result<Vec<MatrixFq>> {
    let q = field.order() as u128;
    let total = q.checked_pow((k * k) as u32).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::GroupTooLarge { size: total, cap });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u32; k * k];
    loop {
        let m = MatrixFq::from_flat(field, k, k, digits.clone())?;
        if m.is_invertible() {
            out.push(m);
        }
        let mut pos = k * k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if (digits[pos] as u128) < q {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Uniform element of `GL_k` by rejection, with the number of singular
/// draws rejected.
pub fn random_gl<R: Rng>(field: &Field, k: usize, rng: &mut R) -> (MatrixFq, u64) {
    let q = field.order();
    let mut rejected = 0;
    loop {
        let data = (0..k * k).map(|_| rng.gen_range(0..q)).collect();
        let m = MatrixFq::from_flat(field, k, k, data).expect("square data");
        if m.is_invertible() {
            return (m, rejected);
        }
        rejected += 1;
    }
}

/// Deterministic random isometry: blocks of equal size are shuffled, each
/// `psi_i` gets uniform `M_i`, `N_i` and, for square blocks, a fair
/// transpose flag. Also returns the number of singular draws rejected.
pub fn random_isometry_with_stats(field: &Field, shape: &Shape, seed: u64) -> (Isometry, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = shape.blocks();
    let mut sigma: Vec<usize> = (0..l).collect();
    let mut classes: Vec<(usize, usize)> = (0..l).map(|i| (shape.m()[i], shape.n()[i])).collect();
    classes.sort_unstable();
    classes.dedup();
    for class in classes {
        let members: Vec<usize> = (0..l).filter(|&i| (shape.m()[i], shape.n()[i]) == class).collect();
        let mut images = members.clone();
        images.shuffle(&mut rng);
        for (&i, &j) in members.iter().zip(&images) {
            sigma[i] = j;
        }
    }
    let mut rejected = 0;
    let blocks = (0..l)
        .map(|i| {
            let (m, n) = (shape.m()[i], shape.n()[i]);
            let (a, ra) = random_gl(field, m, &mut rng);
            let (b, rb) = random_gl(field, n, &mut rng);
            rejected += ra + rb;
            let transpose = m == n && rng.gen_bool(0.5);
            BlockIsometry { m: a, n: b, transpose }
        })
        .collect();
    (Isometry { field: field.clone(), shape: shape.clone(), sigma, blocks }, rejected)
}

pub fn random_isometry(field: &Field, shape: &Shape, seed: u64) -> Isometry {
    random_isometry_with_stats(field, shape, seed).0
}

/// Block permutations compatible with the shape, in lexicographic order.
pub fn compatible_permutations(shape: &Shape) -> Vec<Vec<usize>> {
    fn go(shape: &Shape, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == shape.blocks() {
            out.push(cur.clone());
            return;
        }
        for j in 0..shape.blocks() {
            if !used[j] && shape.m()[j] == shape.m()[i] && shape.n()[j] == shape.n()[i] {
                used[j] = true;
                cur.push(j);
                go(shape, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(shape, &mut Vec::new(), &mut vec![false; shape.blocks()], &mut out);
    out
}

/// Order of the isometry group of the ambient space.
pub fn isometry_group_order(field: &Field, shape: &Shape) -> u128 {
    let q = field.order() as u64;
    let perms = compatible_permutations(shape).len() as u128;
    (0..shape.blocks()).fold(perms, |acc, i| {
        let (m, n) = (shape.m()[i], shape.n()[i]);
        let t = if m == n { 2 } else { 1 };
        acc.saturating_mul(gl_order(q, m).saturating_mul(gl_order(q, n)).saturating_mul(t))
    })
}

fn projection(c: &LinearCode, i: usize) -> Subspace {
    let p = c.project(i);
    Subspace::span(c.field(), p.shape().dim(), p.basis_vectors().to_vec()).expect("vectors of block length")
}

/// Cheap invariants: dimension, sum-rank weight distribution and the
/// generalized weights. `false` means provably inequivalent.
fn invariants_agree(a: &LinearCode, b: &LinearCode, caps: &Caps) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let dist = |c: &LinearCode| -> Option<Vec<u128>> {
        let mut d = vec![0u128; c.shape().max_weight() + 1];
        c.for_each_codeword_ranks(caps.codewords, |r| {
            d[r.iter().sum::<usize>()] += 1;
            ControlFlow::Continue(())
        })
        .ok()?;
        Some(d)
    };
    if let (Some(x), Some(y)) = (dist(a), dist(b)) {
        if x != y {
            return false;
        }
    }
    if let (Ok(x), Ok(y)) = (weight_profile(a, Variant::Product, caps), weight_profile(b, Variant::Product, caps)) {
        if x != y {
            return false;
        }
    }
    true
}

/// Visits every isometry `phi` of the ambient space with `phi(a) = b`,
/// permutations in lexicographic order, then per block the transpose flag,
/// `M_i` and `N_i` in encoding order. Skips the invariant pre-filter.
pub fn for_each_equivalence<F>(a: &LinearCode, b: &LinearCode, caps: &Caps, mut f: F) -> Result<()>
where
    F: FnMut(&Isometry) -> ControlFlow<()>,
{
    let shape = a.shape();
    if b.shape() != shape {
        return Err(Error::ShapeMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::ContextMismatch);
    }
    let field = a.field();
    let size = isometry_group_order(field, shape);
    if size > caps.group {
        return Err(Error::GroupTooLarge { size, cap: caps.group });
    }
    if a.dim() != b.dim() {
        return Ok(());
    }
    let l = shape.blocks();
    let pa: Vec<Subspace> = (0..l).map(|i| projection(a, i)).collect();
    let pb: Vec<Subspace> = (0..l).map(|i| projection(b, i)).collect();
    let mut gl: std::collections::BTreeMap<usize, Vec<MatrixFq>> = Default::default();
    for i in 0..l {
        for k in [shape.m()[i], shape.n()[i]] {
            if let std::collections::btree_map::Entry::Vacant(e) = gl.entry(k) {
                e.insert(general_linear(field, k, u128::MAX)?);
            }
        }
    }
    // Candidate psi_i per (target block, source block), filtered by the
    // projections.
    let mut options: Vec<Vec<Option<Vec<BlockIsometry>>>> = vec![vec![None; l]; l];
    for sigma in compatible_permutations(shape) {
        if sigma.iter().enumerate().any(|(i, &j)| pa[j].dim() != pb[i].dim()) {
            continue;
        }
        for (i, &j) in sigma.iter().enumerate() {
            if options[i][j].is_none() {
                options[i][j] = Some(block_candidates(&pa[j], &pb[i], shape.m()[i], shape.n()[i], &gl));
            }
        }
        let mut chosen = Vec::with_capacity(l);
        let flow = search(a, b, &sigma, &options, &mut chosen, &mut f);
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

fn block_candidates(
    from: &Subspace,
    to: &Subspace,
    m: usize,
    n: usize,
    gl: &std::collections::BTreeMap<usize, Vec<MatrixFq>>,
) -> Vec<BlockIsometry> {
    let f = from.field();
    let sources: Vec<MatrixFq> =
        from.basis().iter().map(|v| MatrixFq::from_flat(f, m, n, v.clone()).expect("block vector")).collect();
    let mut out = Vec::new();
    let flags: &[bool] = if m == n { &[false, true] } else { &[false] };
    for &transpose in flags {
        for mm in &gl[&m] {
            for nn in &gl[&n] {
                let psi = BlockIsometry { m: mm.clone(), n: nn.clone(), transpose };
                if sources.iter().all(|s| to.contains(psi.apply(s).as_slice())) {
                    out.push(psi);
                }
            }
        }
    }
    out
}

fn search<F>(
    a: &LinearCode,
    b: &LinearCode,
    sigma: &[usize],
    options: &[Vec<Option<Vec<BlockIsometry>>>],
    chosen: &mut Vec<BlockIsometry>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Isometry) -> ControlFlow<()>,
{
    let i = chosen.len();
    if i == sigma.len() {
        let iso = Isometry {
            field: a.field().clone(),
            shape: a.shape().clone(),
            sigma: sigma.to_vec(),
            blocks: chosen.clone(),
        };
        if a.basis_vectors().iter().all(|v| b.contains_flat(&iso.apply_flat(v))) {
            return f(&iso);
        }
        return ControlFlow::Continue(());
    }
    for psi in options[i][sigma[i]].as_ref().expect("candidates computed") {
        chosen.push(psi.clone());
        let flow = search(a, b, sigma, options, chosen, f);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Whether some isometry of the ambient space maps `a` onto `b`, with the
/// first witness in search order.
pub fn equivalent_codes(a: &LinearCode, b: &LinearCode, caps: &Caps) -> Result<Option<Isometry>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch);
    }
    let size = isometry_group_order(a.field(), a.shape());
    if size > caps.group {
        return Err(Error::GroupTooLarge { size, cap: caps.group });
    }
    if !invariants_agree(a, b, caps) {
        return Ok(None);
    }
    let mut found = None;
    for_each_equivalence(a, b, caps, |iso| {
        found = Some(iso.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}
