//! Generalized sum-rank weights, Wei duality and codes obtained by
//! expanding extension-field vectors over a basis.

use std::collections::BTreeSet;

use crate::anticode::AnticodeFamily;
pub use crate::anticode::Variant;
use crate::code::{LinearCode, Shape};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldContext};
use crate::Caps;

/// The generalized weights `d_1 <= ... <= d_dim` of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub variant: Variant,
    pub weights: Vec<usize>,
}

impl WeightProfile {
    /// `d_r` with the conventions `d_0 = 0` and `d_{dim+1} = n + 1`.
    pub fn get(&self, r: usize, n: usize) -> usize {
        if r == 0 {
            0
        } else if r > self.weights.len() {
            n + 1
        } else {
            self.weights[r - 1]
        }
    }
}

/// All generalized weights of a code for one anticode family.
///
/// Computes, for every maximum weight `mu`, the largest `dim(C cap A)` over
/// the family, then reads `d_r` off as the least `mu` reaching `r`.
pub fn weight_profile(code: &LinearCode, variant: Variant, caps: &Caps) -> Result<WeightProfile> {
    let k = code.dim();
    if k == 0 {
        return Ok(WeightProfile { variant, weights: Vec::new() });
    }
    let family = AnticodeFamily::new(code.field(), code.shape(), variant, caps)?;
    let best = family.best_intersections(code)?;
    let mut weights = Vec::with_capacity(k);
    let mut mu = 0;
    for r in 1..=k {
        while mu < best.len() && best[mu].map_or(true, |b| b < r) {
            mu += 1;
        }
        if mu == best.len() {
            return Err(Error::InvariantViolation(format!("no anticode meets the code in dimension {r}")));
        }
        weights.push(mu);
    }
    Ok(WeightProfile { variant, weights })
}

/// The `r`-th generalized weight.
pub fn gen_weight(code: &LinearCode, r: usize, variant: Variant, caps: &Caps) -> Result<usize> {
    if r == 0 || r > code.dim() {
        return Err(Error::RankOutOfRange { r, dim: code.dim() });
    }
    Ok(weight_profile(code, variant, caps)?.weights[r - 1])
}

/// Weight profile of a product of optimal anticodes with block dimensions
/// `m_i u_i`: blocks fill in order, each contributing `m_j` copies of each
/// weight step.
pub fn anticode_staircase(shape: &Shape, u: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut base = 0;
    for (j, &uj) in u.iter().enumerate() {
        for delta in 0..uj {
            for _ in 0..shape.m()[j] {
                out.push(base + delta + 1);
            }
        }
        base += uj;
    }
    out
}

/// `W_r = { d_{r + s m} : r + s m in [dim] }`.
pub fn wei_set(profile: &WeightProfile, m: usize, r: i64) -> BTreeSet<usize> {
    let k = profile.weights.len() as i64;
    let m = m as i64;
    (1..=k).filter(|&i| (i - r).rem_euclid(m) == 0).map(|i| profile.weights[(i - 1) as usize]).collect()
}

/// `W-bar_r = { n + 1 - d_{r + s m} : r + s m in [dim] }`.
pub fn wei_set_bar(profile: &WeightProfile, m: usize, n: usize, r: i64) -> BTreeSet<usize> {
    wei_set(profile, m, r).into_iter().map(|d| n + 1 - d).collect()
}

/// One residue class of the duality statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeiRow {
    pub r: usize,
    /// `W_r` of the dual.
    pub dual: BTreeSet<usize>,
    /// `[n] minus W-bar_{r + dim}` of the code.
    pub predicted: BTreeSet<usize>,
}

impl WeiRow {
    pub fn holds(&self) -> bool {
        self.dual == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeiReport {
    pub m: usize,
    pub code: WeightProfile,
    pub dual: WeightProfile,
    pub rows: Vec<WeiRow>,
}

impl WeiReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(WeiRow::holds)
    }
}

/// Computes both profiles and the sets of the duality identity for every
/// `r` in `[m]`. Requires all blocks to have the same number of rows.
pub fn wei_duality_check(code: &LinearCode, caps: &Caps) -> Result<WeiReport> {
    let shape = code.shape();
    let m = shape.m()[0];
    if shape.m().iter().any(|&x| x != m) {
        return Err(Error::UnequalRowDims);
    }
    let n = shape.total_n();
    let p = weight_profile(code, Variant::Product, caps)?;
    let dual = code.dual();
    let pd = weight_profile(&dual, Variant::Product, caps)?;
    let k = code.dim() as i64;
    let rows = (1..=m)
        .map(|r| {
            let bar = wei_set_bar(&p, m, n, r as i64 + k);
            WeiRow {
                r,
                dual: wei_set(&pd, m, r as i64),
                predicted: (1..=n).filter(|x| !bar.contains(x)).collect(),
            }
        })
        .collect();
    Ok(WeiReport { m, code: p, dual: pd, rows })
}

/// Per-block `F_p`-bases of the extension fields `F_{p^{m_i}}`, given as
/// element encodings in the field built with the default modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBasis {
    pub blocks: Vec<Vec<u32>>,
}

impl GammaBasis {
    /// `{1, x, ..., x^{m_i - 1}}` in every block.
    pub fn polynomial(p: u32, shape: &Shape) -> Self {
        GammaBasis { blocks: shape.m().iter().map(|&m| (0..m as u32).map(|s| p.pow(s)).collect()).collect() }
    }
}

/// A generating set of an `F_{p^k}`-linear space inside
/// `prod F_{p^{m_i}}^{n_i}`: each generator lists, per block, `n_i` element
/// encodings of `F_{p^{m_i}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCode {
    pub generators: Vec<Vec<Vec<u32>>>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimal polynomial over the prime field, monic, low degree first.
fn minimal_polynomial(f: &FieldContext, z: u32) -> Vec<u32> {
    let p = f.characteristic() as u64;
    let mut conj = vec![z];
    let mut c = f.pow(z, p);
    while c != z {
        conj.push(c);
        c = f.pow(c, p);
    }
    // prod (x - c)
    let mut poly = vec![1u32];
    for &c in &conj {
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], a);
            next[i] = f.sub(next[i], f.mul(a, c));
        }
        poly = next;
    }
    poly
}

fn eval(f: &FieldContext, poly: &[u32], x: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Expands an `F_{p^k}`-linear space over `F_p` into a sum-rank metric
/// code: column `c` of block `i` holds the coordinates of `v_{i,c}` in the
/// basis `Gamma_i`.
///
/// `k` defaults to `gcd(m_i)`; a requested `k` must divide every `m_i`.
/// The base field must be prime. The subfield `F_{p^k}` sits inside each
/// `F_{p^{m_i}}` through a common generator: the norm-one power of the
/// primitive element in the first block, and the smallest root of its
/// minimal polynomial in blocks of other degrees.
pub fn gamma_expand(
    base: &Field,
    shape: &Shape,
    code: &ExtensionCode,
    gamma: Option<&GammaBasis>,
    subfield: Option<usize>,
) -> Result<LinearCode> {
    if base.degree() != 1 {
        return Err(Error::InvalidInput("expansion needs a prime base field".into()));
    }
    let p = base.characteristic();
    let l = shape.blocks();
    let g = shape.m().iter().fold(0, |a, &b| gcd(a, b));
    let k = match subfield {
        Some(k) if k == 0 || shape.m().iter().any(|&m| m % k != 0) => {
            return Err(Error::NotLinearOverSubfield(format!("degree {k} does not divide every m_i")));
        }
        Some(k) => k,
        None => g,
    };
    let fields: Vec<Field> = shape
        .m()
        .iter()
        .map(|&m| FieldContext::new(p, m as u32, None))
        .collect::<Result<_>>()?;
    let gamma = gamma.cloned().unwrap_or_else(|| GammaBasis::polynomial(p, shape));
    if gamma.blocks.len() != l {
        return Err(Error::DimensionMismatch("one basis per block expected".into()));
    }
    // Coordinates of an element in Gamma_i: invert the matrix whose rows are
    // the base-p digits of the basis elements.
    let mut coord_maps = Vec::with_capacity(l);
    for i in 0..l {
        let m = shape.m()[i];
        let fi = &fields[i];
        if gamma.blocks[i].len() != m {
            return Err(Error::DimensionMismatch(format!("basis of block {i} must have {m} elements")));
        }
        let rows: Vec<Vec<u32>> = gamma.blocks[i]
            .iter()
            .map(|&x| fi.check(x).map(|x| fi.coefficients(x)))
            .collect::<Result<_>>()?;
        let mat = crate::matfq::MatrixFq::from_rows(base, &rows, m)?;
        let inv = mat.inverse().map_err(|_| Error::InvalidInput(format!("basis of block {i} is dependent")))?;
        coord_maps.push(inv);
    }
    // Common generator of the subfield in every block.
    let mut zetas = vec![0u32; l];
    let f0 = &fields[0];
    let q0 = f0.order() as u64;
    let z0 = f0.exp((q0 - 1) / ((p as u64).pow(k as u32) - 1));
    let minpoly = minimal_polynomial(f0, z0);
    for i in 0..l {
        if shape.m()[i] == shape.m()[0] {
            zetas[i] = z0;
        } else if let Some(j) = (0..i).find(|&j| shape.m()[j] == shape.m()[i]) {
            zetas[i] = zetas[j];
        } else {
            let fi = &fields[i];
            zetas[i] = (1..fi.order())
                .find(|&x| eval(fi, &minpoly, x) == 0)
                .expect("F_{p^k} embeds in F_{p^{m_i}}");
        }
    }
    let mut vectors = Vec::new();
    for gen in &code.generators {
        if gen.len() != l {
            return Err(Error::ShapeMismatch);
        }
        for a in 0..k as u64 {
            let mut flat = vec![0u32; shape.dim()];
            for i in 0..l {
                let (m, n) = (shape.m()[i], shape.n()[i]);
                if gen[i].len() != n {
                    return Err(Error::ShapeMismatch);
                }
                let fi = &fields[i];
                let scale = fi.pow(zetas[i], a);
                for c in 0..n {
                    let w = fi.mul(scale, fi.check(gen[i][c])?);
                    let digits = fi.coefficients(w);
                    // coordinates x with x * G = digits, G rows = basis digits.
                    for s in 0..m {
                        let mut acc = 0;
                        for (t, &d) in digits.iter().enumerate() {
                            acc = base.add(acc, base.mul(d, coord_maps[i].get(t, s)));
                        }
                        flat[shape.coord(i, s, c)] = acc;
                    }
                }
            }
            vectors.push(flat);
        }
    }
    let out = LinearCode::from_vectors(base, shape, vectors)?;
    debug_assert_eq!(out.dim() % k, 0);
    Ok(out)
}
