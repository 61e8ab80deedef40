//! Singleton-type bounds, MSRD and `r`-MSRD codes.
//!
//! Columns are numbered `1..=n` across blocks in order; `r_mu` is the sum
//! of `m_i` over the first `mu` columns, the largest dimension of a
//! product optimal anticode of maximum weight `mu`.

use std::ops::ControlFlow;

use crate::anticode::{AnticodeDescriptor, AnticodeFamily, BlockAnticode, Variant};
use crate::code::{DistanceMethod, LinearCode, Shape};
use crate::error::{Error, Result};
use crate::genweights::weight_profile;
use crate::matfq::Subspace;
use crate::Caps;

/// `m_i` of the block holding column `c` (1-based).
fn column_m(shape: &Shape, c: usize) -> usize {
    shape.m()[shape.block_of_column(c - 1)]
}

/// `r_mu = max dim` over product optimal anticodes of maximum weight `mu`.
pub fn r_mu(shape: &Shape, mu: usize) -> usize {
    (1..=mu).map(|c| column_m(shape, c)).sum()
}

/// `(min, max)` dimension over product optimal anticodes of maximum weight
/// `mu`: the last `mu` columns against the first `mu`.
pub fn anticode_dim_extremes(shape: &Shape, mu: usize) -> (usize, usize) {
    let n = shape.total_n();
    let min = (n + 1 - mu.min(n)..=n).map(|c| column_m(shape, c)).sum();
    (min, r_mu(shape, mu))
}

/// Largest dimension allowed for minimum distance `d` (`1 <= d <= n`).
pub fn singleton_bound(shape: &Shape, d: usize) -> usize {
    shape.dim() - r_mu(shape, d.saturating_sub(1))
}

/// Largest minimum distance allowed for a code of dimension `k >= 1`.
pub fn distance_cap(shape: &Shape, k: usize) -> usize {
    (1..=shape.total_n()).rev().find(|&d| singleton_bound(shape, d) >= k).unwrap_or(0)
}

/// `dim = sum_{i >= j} m_i n_i - delta m_j - s` with `0 <= delta < n_j`,
/// `0 <= s < m_j`; `j` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimDecomposition {
    pub j: usize,
    pub delta: usize,
    pub s: usize,
}

impl DimDecomposition {
    pub fn of(shape: &Shape, dim: usize) -> Result<Self> {
        if dim == 0 || dim > shape.dim() {
            return Err(Error::DimNotAdmissible(dim));
        }
        let mut codim = shape.dim() - dim;
        for j in 0..shape.blocks() {
            let (m, n) = (shape.m()[j], shape.n()[j]);
            if codim < m * n {
                return Ok(DimDecomposition { j, delta: codim / m, s: codim % m });
            }
            codim -= m * n;
        }
        unreachable!("codimension below the ambient dimension")
    }

    /// `sum_{i < j} n_i + delta + 1`.
    pub fn d_max(&self, shape: &Shape) -> usize {
        shape.n()[..self.j].iter().sum::<usize>() + self.delta + 1
    }
}

/// Dimension of a code of MSRD type `(j, delta)`.
pub fn msrd_dim(shape: &Shape, j: usize, delta: usize) -> Result<usize> {
    if j >= shape.blocks() || delta >= shape.n()[j] {
        return Err(Error::InvalidInput(format!("no MSRD parameters j = {j}, delta = {delta}")));
    }
    Ok((j..shape.blocks()).map(|i| shape.m()[i] * shape.n()[i]).sum::<usize>() - delta * shape.m()[j])
}

/// Generalized weights forced on an MSRD code of type `(j, delta)`: each
/// column `h >= d_max` contributes `m_k` copies of `h`, starting at
/// `r = r_h - r_{d_max - 1} - m_k + 1`.
pub fn msrd_weights_closed_form(shape: &Shape, j: usize, delta: usize) -> Result<Vec<usize>> {
    let dim = msrd_dim(shape, j, delta)?;
    let d_max = DimDecomposition { j, delta, s: 0 }.d_max(shape);
    let mut out = vec![0; dim];
    for h in d_max..=shape.total_n() {
        let mk = column_m(shape, h);
        let r = r_mu(shape, h) - r_mu(shape, d_max - 1) - mk + 1;
        for x in &mut out[r - 1..r - 1 + mk] {
            *x = h;
        }
    }
    Ok(out)
}

/// One row of the `r`-MSRD table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMsrdRow {
    pub h: usize,
    pub r: usize,
    pub d_r: usize,
    pub holds: bool,
}

fn r_for(shape: &Shape, d_max: usize, h: usize) -> usize {
    r_mu(shape, h) - r_mu(shape, d_max - 1) - column_m(shape, h) + 1
}

fn r_msrd_rows(code: &LinearCode, dec: &DimDecomposition, profile: &[usize]) -> Result<Vec<RMsrdRow>> {
    let shape = code.shape();
    let d_max = dec.d_max(shape);
    let rows: Vec<RMsrdRow> = (d_max..=shape.total_n())
        .map(|h| {
            let r = r_for(shape, d_max, h);
            RMsrdRow { h, r, d_r: profile[r - 1], holds: profile[r - 1] == h }
        })
        .collect();
    if let Some(first) = rows.iter().position(|x| x.holds) {
        if rows[first..].iter().any(|x| !x.holds) {
            return Err(Error::InvariantViolation("r-MSRD property does not propagate".into()));
        }
    }
    Ok(rows)
}

/// Whether `d_r(C) = h` for the `r` attached to `h`.
pub fn r_msrd_check(code: &LinearCode, h: usize, caps: &Caps) -> Result<RMsrdRow> {
    let shape = code.shape();
    let dec = DimDecomposition::of(shape, code.dim())?;
    if dec.s != 0 {
        return Err(Error::DimNotAdmissible(code.dim()));
    }
    let d_max = dec.d_max(shape);
    if h < d_max || h > shape.total_n() {
        return Err(Error::InvalidInput(format!("h = {h} outside [{d_max}, {}]", shape.total_n())));
    }
    let profile = weight_profile(code, Variant::Product, caps)?.weights;
    let rows = r_msrd_rows(code, &dec, &profile)?;
    Ok(rows.into_iter().find(|x| x.h == h).expect("h in range"))
}

/// `dim(C cap F_q[S_h])` against `m_k` for one column window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowRow {
    pub h: usize,
    pub dim: usize,
    pub m_k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsrdReport {
    pub dim: usize,
    pub decomposition: DimDecomposition,
    pub d_max: usize,
    pub d: usize,
    /// Minimum distance of the dual; `None` for the full space.
    pub d_dual: Option<usize>,
    pub is_msrd: bool,
    /// `None` when the anticode family exceeds the caps.
    pub c0: Option<bool>,
    pub c1: Option<bool>,
    pub c2: Option<bool>,
    /// `None` for the full space, whose dual is zero.
    pub c3: Option<bool>,
    /// A member of `A(d)` violating the `(C2)` inequality.
    pub c2_witness: Option<AnticodeDescriptor>,
    pub window: Vec<WindowRow>,
    pub window_ok: bool,
    /// Present when the dimension has the form `sum_{i >= j} m_i n_i - delta m_j`.
    pub r_msrd: Option<Vec<RMsrdRow>>,
    pub profile: Vec<usize>,
}

/// Elements of the ambient space vanishing outside the given 1-based
/// columns.
pub fn column_space_code(code: &LinearCode, columns: &[usize]) -> LinearCode {
    let shape = code.shape();
    let mut vectors = Vec::new();
    for &c in columns {
        let i = shape.block_of_column(c - 1);
        let l = c - 1 - shape.n()[..i].iter().sum::<usize>();
        for s in 0..shape.m()[i] {
            let mut v = vec![0u32; shape.dim()];
            v[shape.coord(i, s, l)] = 1;
            vectors.push(v);
        }
    }
    LinearCode::from_vectors(code.field(), shape, vectors).expect("unit vectors")
}

/// Distance, MSRD status, the properties (C0)-(C3), the column-window
/// criterion and the `r`-MSRD table of a nonzero code.
///
/// Fails with [`Error::InvariantViolation`] if the computed flags
/// contradict the known implications between them.
pub fn msrd_check(code: &LinearCode, caps: &Caps) -> Result<MsrdReport> {
    if code.dim() == 0 {
        return Err(Error::TrivialCode);
    }
    let shape = code.shape();
    let n = shape.total_n();
    let total = shape.dim();
    let k = code.dim();
    let dec = DimDecomposition::of(shape, k)?;
    let d_max = dec.d_max(shape);
    let profile = weight_profile(code, Variant::Product, caps)?.weights;
    let d = profile[0];
    let d_dual = if k == total { None } else { Some(code.dual().min_distance(DistanceMethod::Anticode, caps)?) };
    let is_msrd = dec.s == 0 && d == d_max;

    // (C0), (C1) over all optimal anticodes.
    let r_dm1 = r_mu(shape, d - 1);
    let (c0, c1) = match AnticodeFamily::new(code.field(), shape, Variant::All, caps) {
        Ok(family) => {
            let mut c0 = true;
            let mut c1 = dec.s == 0;
            family.walk(code, |info| {
                if info.mu == d - 1 && info.dim == r_dm1 && k + info.dim - info.intersection != total {
                    c0 = false;
                }
                if info.mu < d_max && info.intersection != 0 {
                    c1 = false;
                }
                ControlFlow::Continue(())
            })?;
            (Some(c0), Some(c1))
        }
        Err(Error::EnumerationTooLarge { .. }) => (None, None),
        Err(e) => return Err(e),
    };

    // (C2) over A(d).
    let (c2, c2_witness) = match AnticodeFamily::new(code.field(), shape, Variant::Product, caps) {
        Ok(family) => {
            let mut witness = None;
            family.walk(code, |info| {
                if info.mu == d {
                    let last = info.last_nonzero.expect("nonzero anticode");
                    if info.intersection < shape.m()[last] {
                        witness = Some(family.descriptor(info.choice));
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })?;
            (Some(witness.is_none()), witness)
        }
        Err(Error::EnumerationTooLarge { .. }) => (None, None),
        Err(e) => return Err(e),
    };

    let c3 = d_dual.map(|dd| d + dd == n + 2);

    let prefix: Vec<usize> = (1..d).collect();
    let window: Vec<WindowRow> = (d..=n)
        .map(|h| {
            let mut cols = prefix.clone();
            cols.push(h);
            let w = column_space_code(code, &cols);
            let dim = code.intersect(&w).expect("same shape").dim();
            WindowRow { h, dim, m_k: column_m(shape, h) }
        })
        .collect();
    let window_ok = window.iter().all(|w| w.dim == w.m_k);

    let r_msrd = if dec.s == 0 { Some(r_msrd_rows(code, &dec, &profile)?) } else { None };

    let report = MsrdReport {
        dim: k,
        decomposition: dec,
        d_max,
        d,
        d_dual,
        is_msrd,
        c0,
        c1,
        c2,
        c3,
        c2_witness,
        window,
        window_ok,
        r_msrd,
        profile,
    };
    check_implications(shape, &report)?;
    Ok(report)
}

fn check_implications(shape: &Shape, r: &MsrdReport) -> Result<()> {
    let fail = |what: &str| Err(Error::InvariantViolation(format!("{what} (d = {}, dim = {})", r.d, r.dim)));
    if r.d > r.d_max {
        return fail("distance above the Singleton-type bound");
    }
    if r.c0.is_some_and(|c| c != r.is_msrd) {
        return fail("(C0) disagrees with MSRD");
    }
    if r.c1.is_some_and(|c| c != r.is_msrd) {
        return fail("(C1) disagrees with MSRD");
    }
    if r.c2 == Some(true) && !r.is_msrd {
        return fail("(C2) holds for a non-MSRD code");
    }
    if r.window_ok != r.is_msrd {
        return fail("column windows disagree with MSRD");
    }
    let equal_m = shape.m().iter().all(|&m| m == shape.m()[0]);
    if let Some(c3) = r.c3 {
        if c3 && !equal_m {
            return fail("(C3) holds with unequal m_i");
        }
        if c3 && !r.is_msrd {
            return fail("(C3) holds for a non-MSRD code");
        }
        if equal_m && c3 != r.is_msrd {
            return fail("(C3) disagrees with MSRD for equal m_i");
        }
    }
    if equal_m && r.c2.is_some_and(|c| c != r.is_msrd) {
        return fail("(C2) disagrees with MSRD for equal m_i");
    }
    if r.is_msrd {
        let expected = msrd_weights_closed_form(shape, r.decomposition.j, r.decomposition.delta)?;
        if expected != r.profile {
            return fail("MSRD weights differ from the closed form");
        }
    }
    Ok(())
}

/// The product anticode whose block `i` is `{M : Row(M) <= <e_l : l in cols[i]>}`,
/// with 0-based column indices.
pub fn coordinate_anticode(code: &LinearCode, cols: &[Vec<usize>]) -> Result<AnticodeDescriptor> {
    let shape = code.shape();
    let f = code.field();
    if cols.len() != shape.blocks() {
        return Err(Error::ShapeMismatch);
    }
    let blocks = cols
        .iter()
        .enumerate()
        .map(|(i, cs)| {
            let n = shape.n()[i];
            let vs = cs.iter().map(|&c| (0..n).map(|x| u32::from(x == c)).collect()).collect();
            Subspace::span(f, n, vs).map(BlockAnticode::RowSpace)
        })
        .collect::<Result<Vec<_>>>()?;
    AnticodeDescriptor::new(f, shape, blocks, None)
}
