//! Optimal anticodes: descriptors, materialization, recognition,
//! enumeration and duality.
//!
//! An optimal rank-metric anticode in `F_q^{m x n}` is `{M : Row(M) <= L}`
//! for a subspace `L <= F_q^n` when `m > n`; for square blocks the
//! transposed family `{M : Col(M) <= L}` occurs as well. Sum-rank optimal
//! anticodes are products of these, except over `F_2` where the trailing
//! `1 x 1` blocks may carry an arbitrary optimal Hamming anticode.

use std::ops::ControlFlow;

use crate::code::{LinearCode, Shape};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matfq::{enumerate_subspaces, rref_rows, Subspace};
use crate::Caps;

/// Which family of anticodes a computation ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Products of optimal rank-metric anticodes.
    Product,
    /// All optimal anticodes, including Hamming tails over `F_2`.
    All,
    /// Products of row-support spaces `V_L = {M : Row(M) <= L}`, any block
    /// shape; the weight of a member is `sum dim L_i`.
    Support,
}

/// One block of a product anticode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockAnticode {
    /// `{M : Row(M) <= L}` with `L <= F_q^{n_i}`.
    RowSpace(Subspace),
    /// `{M : Col(M) <= L}` with `L <= F_q^{m_i}`.
    ColSpace(Subspace),
}

impl BlockAnticode {
    pub fn subspace(&self) -> &Subspace {
        match self {
            BlockAnticode::RowSpace(l) | BlockAnticode::ColSpace(l) => l,
        }
    }

    /// Maximum rank of an element: `dim L`.
    pub fn max_rank(&self) -> usize {
        self.subspace().dim()
    }

    /// Linear functionals on the flattened `m x n` block cutting it out.
    fn functionals(&self, m: usize, n: usize) -> Vec<Vec<u32>> {
        let perp = self.subspace().orthogonal();
        let mut out = Vec::new();
        match self {
            BlockAnticode::RowSpace(_) => {
                for s in 0..m {
                    for h in perp.basis() {
                        let mut v = vec![0u32; m * n];
                        v[s * n..(s + 1) * n].copy_from_slice(h);
                        out.push(v);
                    }
                }
            }
            BlockAnticode::ColSpace(_) => {
                for l in 0..n {
                    for h in perp.basis() {
                        let mut v = vec![0u32; m * n];
                        for s in 0..m {
                            v[s * n + l] = h[s];
                        }
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Spanning set of the block anticode, flattened row-major.
    fn generators(&self, m: usize, n: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        match self {
            BlockAnticode::RowSpace(l) => {
                for s in 0..m {
                    for b in l.basis() {
                        let mut v = vec![0u32; m * n];
                        v[s * n..(s + 1) * n].copy_from_slice(b);
                        out.push(v);
                    }
                }
            }
            BlockAnticode::ColSpace(l) => {
                for c in 0..n {
                    for b in l.basis() {
                        let mut v = vec![0u32; m * n];
                        for s in 0..m {
                            v[s * n + c] = b[s];
                        }
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}

/// A product optimal anticode, possibly with a Hamming tail.
///
/// Without a tail there is one entry per block. With a tail the first
/// `blocks.len()` blocks are products and the tail is a subspace of
/// `F_2^{l - blocks.len()}` spanning the remaining `1 x 1` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticodeDescriptor {
    field: Field,
    shape: Shape,
    blocks: Vec<BlockAnticode>,
    tail: Option<Subspace>,
}

impl AnticodeDescriptor {
    pub fn new(field: &Field, shape: &Shape, blocks: Vec<BlockAnticode>, tail: Option<Subspace>) -> Result<Self> {
        let l = shape.blocks();
        let covered = blocks.len() + tail.as_ref().map_or(0, Subspace::ambient);
        if covered != l {
            return Err(Error::InvalidInput(format!("descriptor covers {covered} of {l} blocks")));
        }
        for (i, b) in blocks.iter().enumerate() {
            let (m, n) = (shape.m()[i], shape.n()[i]);
            match b {
                BlockAnticode::RowSpace(s) if s.ambient() != n => {
                    return Err(Error::AmbientMismatch(s.ambient(), n));
                }
                BlockAnticode::ColSpace(s) => {
                    if m != n {
                        return Err(Error::IllegalTranspose(i));
                    }
                    if s.ambient() != m {
                        return Err(Error::AmbientMismatch(s.ambient(), m));
                    }
                }
                _ => {}
            }
            if b.subspace().field() != field {
                return Err(Error::ContextMismatch);
            }
        }
        if let Some(t) = &tail {
            if field.order() != 2 {
                return Err(Error::InvalidInput("Hamming tails exist only over F_2".into()));
            }
            if (blocks.len()..l).any(|i| shape.m()[i] != 1 || shape.n()[i] != 1) {
                return Err(Error::InvalidInput("tail blocks must be 1x1".into()));
            }
            if t.field() != field {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(AnticodeDescriptor { field: field.clone(), shape: shape.clone(), blocks, tail })
    }

    /// The anticode with every block zero.
    pub fn zero(field: &Field, shape: &Shape) -> Self {
        let blocks = shape.n().iter().map(|&n| BlockAnticode::RowSpace(Subspace::zero(field, n))).collect();
        AnticodeDescriptor { field: field.clone(), shape: shape.clone(), blocks, tail: None }
    }

    /// The whole ambient space.
    pub fn full(field: &Field, shape: &Shape) -> Self {
        let blocks = shape.n().iter().map(|&n| BlockAnticode::RowSpace(Subspace::full(field, n))).collect();
        AnticodeDescriptor { field: field.clone(), shape: shape.clone(), blocks, tail: None }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn blocks(&self) -> &[BlockAnticode] {
        &self.blocks
    }

    pub fn tail(&self) -> Option<&Subspace> {
        self.tail.as_ref()
    }

    /// Maximum sum-rank weight of an element.
    pub fn max_srk(&self) -> usize {
        let head: usize = self.blocks.iter().map(BlockAnticode::max_rank).sum();
        head + self.tail.as_ref().map_or(0, hamming_max_weight)
    }

    pub fn dim(&self) -> usize {
        let head: usize = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| match b {
                BlockAnticode::RowSpace(l) => self.shape.m()[i] * l.dim(),
                BlockAnticode::ColSpace(l) => self.shape.n()[i] * l.dim(),
            })
            .sum();
        head + self.tail.as_ref().map_or(0, Subspace::dim)
    }

    /// Index of the last block on which the anticode is nonzero.
    pub fn last_nonzero_block(&self) -> Option<usize> {
        if let Some(t) = &self.tail {
            if let Some(j) = (0..t.ambient()).rev().find(|&j| t.basis().iter().any(|b| b[j] != 0)) {
                return Some(self.blocks.len() + j);
            }
        }
        (0..self.blocks.len()).rev().find(|&i| self.blocks[i].max_rank() > 0)
    }

    /// Linear functionals on the flattened ambient space whose common kernel
    /// is the anticode.
    pub(crate) fn functionals(&self) -> Vec<Vec<u32>> {
        let total = self.shape.dim();
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let off = self.shape.offset(i);
            for h in b.functionals(self.shape.m()[i], self.shape.n()[i]) {
                let mut v = vec![0u32; total];
                v[off..off + h.len()].copy_from_slice(&h);
                out.push(v);
            }
        }
        if let Some(t) = &self.tail {
            let off = self.shape.offset(self.blocks.len());
            for h in t.orthogonal().basis() {
                let mut v = vec![0u32; total];
                v[off..off + h.len()].copy_from_slice(h);
                out.push(v);
            }
        }
        out
    }

    /// The anticode as a linear code.
    pub fn materialize(&self) -> LinearCode {
        let total = self.shape.dim();
        let mut gens = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let off = self.shape.offset(i);
            for g in b.generators(self.shape.m()[i], self.shape.n()[i]) {
                let mut v = vec![0u32; total];
                v[off..off + g.len()].copy_from_slice(&g);
                gens.push(v);
            }
        }
        if let Some(t) = &self.tail {
            let off = self.shape.offset(self.blocks.len());
            for w in t.basis() {
                let mut v = vec![0u32; total];
                v[off..off + w.len()].copy_from_slice(w);
                gens.push(v);
            }
        }
        LinearCode::from_vectors(&self.field, &self.shape, gens).expect("generators fit the shape")
    }

    /// `dim(C cap A)` from the rank of the anticode's functionals on `C`.
    pub fn intersection_dim(&self, code: &LinearCode) -> Result<usize> {
        if code.shape() != &self.shape {
            return Err(Error::ShapeMismatch);
        }
        let images = apply_functionals(&self.field, code, &self.functionals());
        Ok(code.dim() - crate::matfq::rank_rows(&self.field, &images))
    }
}

/// For each functional `h`, the vector `(h(c_1), ..., h(c_k))` over the
/// code's basis.
fn apply_functionals(f: &Field, code: &LinearCode, functionals: &[Vec<u32>]) -> Vec<Vec<u32>> {
    functionals
        .iter()
        .map(|h| code.basis_vectors().iter().map(|c| crate::matfq::dot(f, h, c)).collect())
        .collect()
}

/// Largest Hamming weight in a subspace of `F_q^t`, by enumeration.
pub fn hamming_max_weight(w: &Subspace) -> usize {
    let f = w.field();
    let t = w.ambient();
    if f.order() == 2 && t <= 64 {
        let rows: Vec<u64> = w
            .basis()
            .iter()
            .map(|b| b.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | ((x as u64) << j)))
            .collect();
        let mut best = 0;
        let mut cur = 0u64;
        for step in 1u64..(1u64 << rows.len()) {
            cur ^= rows[step.trailing_zeros() as usize];
            best = best.max(cur.count_ones() as usize);
        }
        return best;
    }
    let q = f.order();
    let k = w.dim();
    let mut digits = vec![0u32; k];
    let mut cur = vec![0u32; t];
    let mut best = 0;
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return best;
            }
            crate::matfq::axpy(f, &mut cur, 1, &w.basis()[i]);
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        best = best.max(cur.iter().filter(|&&x| x != 0).count());
    }
}

/// True when `w` is spanned by standard unit vectors.
fn is_coordinate_subspace(w: &Subspace) -> bool {
    w.basis().iter().all(|b| b.iter().filter(|&&x| x != 0).count() == 1)
}

/// Number of trailing `1 x 1` blocks that may carry a Hamming tail, or 0
/// when no tail is needed.
pub(crate) fn tail_length(field: &Field, shape: &Shape) -> usize {
    if field.order() != 2 {
        return 0;
    }
    let t = shape
        .m()
        .iter()
        .zip(shape.n())
        .rev()
        .take_while(|(&m, &n)| m == 1 && n == 1)
        .count();
    // With at most two scalar blocks every optimal Hamming anticode is a
    // coordinate product.
    if t >= 3 {
        t
    } else {
        0
    }
}

/// Optimal Hamming anticodes in `F_2^t`: subspaces whose dimension equals
/// their maximum weight.
pub fn hamming_optimal_anticodes(field: &Field, t: usize, caps: &Caps) -> Result<Vec<Subspace>> {
    if t > caps.tail_len {
        return Err(Error::EnumerationTooLarge { size: t as u128, cap: caps.tail_len as u128 });
    }
    let mut out = Vec::new();
    for u in 0..=t {
        for w in enumerate_subspaces(field, t, u, caps.subspaces)? {
            if hamming_max_weight(&w) == u {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Optimal rank-metric anticodes in one `m x n` block with maximum rank `u`.
pub fn block_anticodes(field: &Field, m: usize, n: usize, u: usize, variant: Variant, cap: u128) -> Result<Vec<BlockAnticode>> {
    let mut out = Vec::new();
    let col = variant == Variant::Support || m >= n;
    let row = variant != Variant::Support && m == n;
    if col && u <= n {
        for l in enumerate_subspaces(field, n, u, cap)? {
            out.push(BlockAnticode::RowSpace(l));
        }
    }
    // Row supports of dimension 0 or n coincide with column supports.
    if row && u <= m && !(col && (u == 0 || u == n)) {
        for l in enumerate_subspaces(field, m, u, cap)? {
            out.push(BlockAnticode::ColSpace(l));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Piece {
    Block(BlockAnticode),
    Tail(Subspace),
}

struct SlotOption {
    piece: Piece,
    mu: usize,
    dim: usize,
    functionals: Vec<Vec<u32>>,
}

struct Slot {
    offset: usize,
    options: Vec<SlotOption>,
}

/// The full family of anticodes of one variant for a shape, organised as
/// one list of choices per block (or per tail).
pub struct AnticodeFamily {
    field: Field,
    shape: Shape,
    slots: Vec<Slot>,
    head_blocks: usize,
}

/// What a callback sees for one member of an [`AnticodeFamily`].
#[derive(Clone, Copy, Debug)]
pub struct MemberInfo<'a> {
    /// Option index per slot; pass to [`AnticodeFamily::descriptor`].
    pub choice: &'a [usize],
    /// Maximum sum-rank weight (or `sum dim L_i` for supports).
    pub mu: usize,
    pub dim: usize,
    /// Last block on which the anticode is nonzero.
    pub last_nonzero: Option<usize>,
    /// `dim(C cap A)` for the code the walk was started with.
    pub intersection: usize,
}

impl AnticodeFamily {
    pub fn new(field: &Field, shape: &Shape, variant: Variant, caps: &Caps) -> Result<Self> {
        if variant != Variant::Support && !shape.is_strict() {
            return Err(Error::InvalidShape("anticode families need m_1 >= ... >= m_l and n_i <= m_i".into()));
        }
        let tail = if variant == Variant::All { tail_length(field, shape) } else { 0 };
        let head_blocks = shape.blocks() - tail;
        let mut slots = Vec::new();
        for i in 0..head_blocks {
            let (m, n) = (shape.m()[i], shape.n()[i]);
            let mut options = Vec::new();
            for u in 0..=n.max(m) {
                for b in block_anticodes(field, m, n, u, variant, caps.subspaces)? {
                    let dim = match &b {
                        BlockAnticode::RowSpace(l) => m * l.dim(),
                        BlockAnticode::ColSpace(l) => n * l.dim(),
                    };
                    let functionals = b.functionals(m, n);
                    options.push(SlotOption { mu: b.max_rank(), dim, functionals, piece: Piece::Block(b) });
                }
            }
            slots.push(Slot { offset: shape.offset(i), options });
        }
        if tail > 0 {
            let mut options = Vec::new();
            for w in hamming_optimal_anticodes(field, tail, caps)? {
                let functionals = w.orthogonal().basis().to_vec();
                options.push(SlotOption { mu: w.dim(), dim: w.dim(), functionals, piece: Piece::Tail(w) });
            }
            slots.push(Slot { offset: shape.offset(head_blocks), options });
        }
        let total: u128 = slots.iter().map(|s| s.options.len() as u128).product();
        if total > caps.subspaces {
            return Err(Error::EnumerationTooLarge { size: total, cap: caps.subspaces });
        }
        Ok(AnticodeFamily { field: field.clone(), shape: shape.clone(), slots, head_blocks })
    }

    /// Number of members.
    pub fn size(&self) -> u128 {
        self.slots.iter().map(|s| s.options.len() as u128).product()
    }

    /// The descriptor of a member. Tails that are coordinate subspaces are
    /// written as products.
    pub fn descriptor(&self, choice: &[usize]) -> AnticodeDescriptor {
        let mut blocks = Vec::new();
        let mut tail = None;
        for (slot, &c) in self.slots.iter().zip(choice) {
            match &slot.options[c].piece {
                Piece::Block(b) => blocks.push(b.clone()),
                Piece::Tail(w) => {
                    if is_coordinate_subspace(w) {
                        for j in 0..w.ambient() {
                            let on = w.basis().iter().any(|b| b[j] != 0);
                            let l = if on { Subspace::full(&self.field, 1) } else { Subspace::zero(&self.field, 1) };
                            blocks.push(BlockAnticode::RowSpace(l));
                        }
                    } else {
                        tail = Some(w.clone());
                    }
                }
            }
        }
        AnticodeDescriptor { field: self.field.clone(), shape: self.shape.clone(), blocks, tail }
    }

    fn last_nonzero(&self, choice: &[usize]) -> Option<usize> {
        for (si, &c) in choice.iter().enumerate().rev() {
            match &self.slots[si].options[c].piece {
                Piece::Block(b) => {
                    if b.max_rank() > 0 {
                        return Some(si);
                    }
                }
                Piece::Tail(w) => {
                    if let Some(j) = (0..w.ambient()).rev().find(|&j| w.basis().iter().any(|b| b[j] != 0)) {
                        return Some(self.head_blocks + j);
                    }
                }
            }
        }
        None
    }

    /// Walks every member, reporting `dim(C cap A)` for the given code.
    /// Members come in lexicographic order of their choice vectors.
    pub fn walk<F>(&self, code: &LinearCode, mut f: F) -> Result<()>
    where
        F: FnMut(&MemberInfo<'_>) -> ControlFlow<()>,
    {
        if code.shape() != &self.shape {
            return Err(Error::ShapeMismatch);
        }
        if code.field() != &self.field {
            return Err(Error::ContextMismatch);
        }
        let k = code.dim();
        // Images of every option's functionals on the code's basis.
        let images: Vec<Vec<Vec<Vec<u32>>>> = self
            .slots
            .iter()
            .map(|slot| {
                slot.options
                    .iter()
                    .map(|opt| {
                        opt.functionals
                            .iter()
                            .map(|h| {
                                code.basis_vectors()
                                    .iter()
                                    .map(|c| crate::matfq::dot(&self.field, h, &c[slot.offset..slot.offset + h.len()]))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; self.slots.len()];
        if self.field.order() == 2 && k <= 64 {
            let bits: Vec<Vec<Vec<u64>>> = images
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|o| {
                            o.iter()
                                .map(|v| v.iter().enumerate().fold(0u64, |a, (t, &x)| a | ((x as u64) << t)))
                                .filter(|&m| m != 0)
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let mut stack: Vec<u64> = Vec::new();
            let _ = self.walk_bits(0, &bits, &mut stack, &mut choice, 0, 0, k, &mut f);
        } else {
            let mut ech = Echelon::default();
            let _ = self.walk_generic(0, &images, &mut ech, &mut choice, 0, 0, k, &mut f);
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_bits<F>(
        &self,
        slot: usize,
        bits: &[Vec<Vec<u64>>],
        basis: &mut Vec<u64>,
        choice: &mut [usize],
        mu: usize,
        dim: usize,
        k: usize,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&MemberInfo<'_>) -> ControlFlow<()>,
    {
        if slot == self.slots.len() {
            let info = MemberInfo {
                choice,
                mu,
                dim,
                last_nonzero: self.last_nonzero(choice),
                intersection: k - basis.len(),
            };
            return f(&info);
        }
        for (c, opt) in self.slots[slot].options.iter().enumerate() {
            let saved = basis.len();
            for &v in &bits[slot][c] {
                insert_bits(basis, v);
            }
            choice[slot] = c;
            let flow = self.walk_bits(slot + 1, bits, basis, choice, mu + opt.mu, dim + opt.dim, k, f);
            basis.truncate(saved);
            flow?;
        }
        ControlFlow::Continue(())
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_generic<F>(
        &self,
        slot: usize,
        images: &[Vec<Vec<Vec<u32>>>],
        ech: &mut Echelon,
        choice: &mut [usize],
        mu: usize,
        dim: usize,
        k: usize,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&MemberInfo<'_>) -> ControlFlow<()>,
    {
        if slot == self.slots.len() {
            let info = MemberInfo {
                choice,
                mu,
                dim,
                last_nonzero: self.last_nonzero(choice),
                intersection: k - ech.rows.len(),
            };
            return f(&info);
        }
        for (c, opt) in self.slots[slot].options.iter().enumerate() {
            let saved = ech.rows.len();
            for v in &images[slot][c] {
                ech.insert(&self.field, v);
            }
            choice[slot] = c;
            let flow = self.walk_generic(slot + 1, images, ech, choice, mu + opt.mu, dim + opt.dim, k, f);
            ech.rows.truncate(saved);
            ech.pivots.truncate(saved);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// `best[mu]`: the largest `dim(C cap A)` over members with maximum
    /// weight `mu`, `None` when no member has that weight.
    pub fn best_intersections(&self, code: &LinearCode) -> Result<Vec<Option<usize>>> {
        let mut best: Vec<Option<usize>> = Vec::new();
        self.walk(code, |info| {
            if best.len() <= info.mu {
                best.resize(info.mu + 1, None);
            }
            let slot = &mut best[info.mu];
            *slot = Some(slot.map_or(info.intersection, |b| b.max(info.intersection)));
            ControlFlow::Continue(())
        })?;
        Ok(best)
    }
}

/// Inserts `v` into a list of masks kept with distinct lowest set bits.
/// Earlier rows are never modified, so truncating the list undoes an insert.
fn insert_bits(basis: &mut Vec<u64>, mut v: u64) {
    while v != 0 {
        let low = v & v.wrapping_neg();
        match basis.iter().find(|&&b| b & b.wrapping_neg() == low) {
            Some(&b) => v ^= b,
            None => {
                basis.push(v);
                return;
            }
        }
    }
}

/// Rows with distinct leading positions, each scaled to a leading 1. As
/// with [`insert_bits`], inserting leaves earlier rows untouched.
#[derive(Default)]
struct Echelon {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn insert(&mut self, f: &Field, v: &[u32]) {
        let mut w = v.to_vec();
        while let Some(p) = w.iter().position(|&x| x != 0) {
            match self.pivots.iter().position(|&q| q == p) {
                Some(i) => {
                    let c = f.neg(w[p]);
                    crate::matfq::axpy(f, &mut w, c, &self.rows[i]);
                }
                None => {
                    let inv = f.inv(w[p]).expect("nonzero");
                    for x in w.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    self.rows.push(w);
                    self.pivots.push(p);
                    return;
                }
            }
        }
    }
}

/// All anticodes of a variant with maximum weight `mu`.
///
/// Output order: block dimension compositions `(u_1, ..., u_l)` in
/// lexicographic order, then block choices in subspace enumeration order
/// (column supports before row supports).
pub fn enumerate_anticodes(field: &Field, shape: &Shape, mu: usize, variant: Variant, caps: &Caps) -> Result<Vec<AnticodeDescriptor>> {
    let family = AnticodeFamily::new(field, shape, variant, caps)?;
    let mut members: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let zero = LinearCode::zero(field, shape);
    family.walk(&zero, |info| {
        if info.mu == mu {
            let comp: Vec<usize> = family
                .slots
                .iter()
                .zip(info.choice)
                .map(|(s, &c)| s.options[c].mu)
                .collect();
            members.push((comp, info.choice.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    members.sort();
    Ok(members.iter().map(|(_, c)| family.descriptor(c)).collect())
}

/// Whether a code meets the anticode bound with equality, together with
/// its decomposition when it does.
pub fn is_optimal_anticode(code: &LinearCode, caps: &Caps) -> Result<(bool, Option<AnticodeDescriptor>)> {
    let wmax = code.weighted_max(caps.codewords)?;
    if code.dim() != wmax {
        return Ok((false, None));
    }
    let desc = decompose(code)?;
    if desc.materialize() != *code {
        return Err(Error::InvariantViolation(
            "optimal anticode is not the product of its projections".into(),
        ));
    }
    Ok((true, Some(desc)))
}

/// Reads off the product structure of an optimal anticode from its
/// projections.
fn decompose(code: &LinearCode) -> Result<AnticodeDescriptor> {
    let f = code.field();
    let shape = code.shape();
    let tail = tail_length(f, shape);
    let head = shape.blocks() - tail;
    let mut blocks = Vec::new();
    for i in 0..head {
        let (m, n) = (shape.m()[i], shape.n()[i]);
        let proj = code.project(i);
        let rows: Vec<Vec<u32>> = proj
            .basis_vectors()
            .iter()
            .flat_map(|v| v.chunks(n).map(<[u32]>::to_vec).collect::<Vec<_>>())
            .collect();
        let row_span = Subspace::span(f, n, rows)?;
        if m >= n && proj.dim() == m * row_span.dim() {
            blocks.push(BlockAnticode::RowSpace(row_span));
            continue;
        }
        if m <= n {
            let cols: Vec<Vec<u32>> = proj
                .basis_vectors()
                .iter()
                .flat_map(|v| (0..n).map(|c| (0..m).map(|s| v[s * n + c]).collect::<Vec<u32>>()).collect::<Vec<_>>())
                .collect();
            let col_span = Subspace::span(f, m, cols)?;
            if proj.dim() == n * col_span.dim() {
                blocks.push(BlockAnticode::ColSpace(col_span));
                continue;
            }
        }
        return Err(Error::InvariantViolation(format!("projection onto block {i} is not an optimal rank anticode")));
    }
    if tail == 0 {
        return AnticodeDescriptor::new(f, shape, blocks, None);
    }
    let off = shape.offset(head);
    let w: Vec<Vec<u32>> = code.basis_vectors().iter().map(|v| v[off..].to_vec()).collect();
    let w = Subspace::span(f, tail, w)?;
    if is_coordinate_subspace(&w) {
        for j in 0..tail {
            let on = w.basis().iter().any(|b| b[j] != 0);
            blocks.push(BlockAnticode::RowSpace(if on { Subspace::full(f, 1) } else { Subspace::zero(f, 1) }));
        }
        return AnticodeDescriptor::new(f, shape, blocks, None);
    }
    AnticodeDescriptor::new(f, shape, blocks, Some(w))
}

/// The dual of a product anticode, blockwise.
pub fn anticode_dual(a: &AnticodeDescriptor) -> Result<AnticodeDescriptor> {
    if a.tail.is_some() {
        return Err(Error::ClassificationNotApplicable(
            "the dual of a Hamming tail need not be an optimal anticode".into(),
        ));
    }
    let blocks = a
        .blocks
        .iter()
        .map(|b| match b {
            BlockAnticode::RowSpace(l) => BlockAnticode::RowSpace(l.orthogonal()),
            BlockAnticode::ColSpace(l) => BlockAnticode::ColSpace(l.orthogonal()),
        })
        .collect();
    Ok(AnticodeDescriptor { field: a.field.clone(), shape: a.shape.clone(), blocks, tail: None })
}

/// Whether the codewords maximizing `sum m_i rk(C_i)` span the code.
pub fn max_srk_generates(code: &LinearCode, cap: u128) -> Result<bool> {
    let shape = code.shape();
    let f = code.field();
    let wmax = code.weighted_max(cap)?;
    if code.dim() == 0 {
        return Ok(true);
    }
    let mut span: Vec<Vec<u32>> = Vec::new();
    code.for_each_codeword(cap, |v| {
        if shape.weighted(&shape.ranks_flat(f, v)) == wmax {
            span.push(v.to_vec());
            rref_rows(f, &mut span);
            if span.len() == code.dim() {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(span.len() == code.dim())
}

/// The right-hand side of the weaker bound: `max sum m_i u_i` over
/// `u_i <= n_i` with `sum u_i = maxsrk`.
pub fn composition_bound(shape: &Shape, max_srk: usize) -> usize {
    // Greedy: fill the blocks with the most rows first.
    let mut order: Vec<usize> = (0..shape.blocks()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(shape.m()[i]));
    let mut left = max_srk;
    let mut total = 0;
    for i in order {
        let u = left.min(shape.n()[i]);
        total += shape.m()[i] * u;
        left -= u;
    }
    total
}
