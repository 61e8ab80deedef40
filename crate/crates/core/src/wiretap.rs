//! Coset coding against a wiretapper on multishot networks: support spaces,
//! leakage through the dual code, and an exact mutual-information oracle.
//!
//! A message `M` in a complement of `C` is sent as `D = M + C` with `C`
//! uniform in the code; tapping block `i` through `B_i` (`n_i x mu_i`)
//! reveals `D_i B_i`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_rational::Ratio;

use crate::anticode::{AnticodeFamily, Variant};
use crate::code::{LinearCode, Shape};
use crate::error::{Error, Result};
use crate::genweights::gen_weight;
use crate::gf::Field;
use crate::matfq::{MatrixFq, Subspace};
use crate::Caps;

/// `V_{L_1} x ... x V_{L_l}` with `V_L = {M : Row(M) <= L}`.
pub fn support_product(field: &Field, shape: &Shape, ls: &[Subspace]) -> Result<LinearCode> {
    if ls.len() != shape.blocks() {
        return Err(Error::ShapeMismatch);
    }
    let mut vectors = Vec::new();
    for (i, l) in ls.iter().enumerate() {
        if l.ambient() != shape.n()[i] {
            return Err(Error::ShapeMismatch);
        }
        for s in 0..shape.m()[i] {
            for b in l.basis() {
                let mut v = vec![0u32; shape.dim()];
                for (c, &x) in b.iter().enumerate() {
                    v[shape.coord(i, s, c)] = x;
                }
                vectors.push(v);
            }
        }
    }
    LinearCode::from_vectors(field, shape, vectors)
}

/// `L_i = Row(B_i^t)`, the column space of each tap matrix.
pub fn tap_supports(shape: &Shape, taps: &[MatrixFq]) -> Result<Vec<Subspace>> {
    if taps.len() != shape.blocks() {
        return Err(Error::ShapeMismatch);
    }
    taps.iter()
        .enumerate()
        .map(|(i, b)| {
            if b.nrows() != shape.n()[i] {
                return Err(Error::ShapeMismatch);
            }
            Ok(if b.ncols() == 0 { Subspace::zero(b.field(), b.nrows()) } else { b.column_space() })
        })
        .collect()
}

/// `dim(C^perp cap (V_{L_1} x ... x V_{L_l}))` in `F_q` symbols.
pub fn leakage_dim(code: &LinearCode, taps: &[MatrixFq]) -> Result<usize> {
    let ls = tap_supports(code.shape(), taps)?;
    let v = support_product(code.field(), code.shape(), &ls)?;
    Ok(code.dual().intersect(&v)?.dim())
}

/// The complement spanned by unit vectors at the non-pivot coordinates of
/// the code's reduced basis.
pub fn canonical_complement(code: &LinearCode) -> LinearCode {
    let pivots = code.pivots();
    let dim = code.shape().dim();
    let vectors = (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|c| (0..dim).map(|x| u32::from(x == c)).collect())
        .collect();
    LinearCode::from_vectors(code.field(), code.shape(), vectors).expect("unit vectors")
}

#[derive(Clone, Debug)]
pub struct WiretapScenario {
    code: LinearCode,
    messages: LinearCode,
    taps: Vec<MatrixFq>,
}

impl WiretapScenario {
    pub fn new(code: &LinearCode, taps: Vec<MatrixFq>) -> Result<Self> {
        Self::with_complement(code, &canonical_complement(code), taps)
    }

    pub fn with_complement(code: &LinearCode, messages: &LinearCode, taps: Vec<MatrixFq>) -> Result<Self> {
        if messages.shape() != code.shape() {
            return Err(Error::ShapeMismatch);
        }
        if messages.dim() + code.dim() != code.shape().dim() || code.intersect(messages)?.dim() != 0 {
            return Err(Error::InvalidInput("message space is not a complement of the code".into()));
        }
        tap_supports(code.shape(), &taps)?;
        Ok(WiretapScenario { code: code.clone(), messages: messages.clone(), taps })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn messages(&self) -> &LinearCode {
        &self.messages
    }

    pub fn taps(&self) -> &[MatrixFq] {
        &self.taps
    }

    /// Total tapped links `sum mu_i`.
    pub fn links(&self) -> usize {
        self.taps.iter().map(|b| b.ncols()).sum()
    }

    /// What the wiretapper sees of `D`.
    pub fn observe(&self, d: &[u32]) -> Vec<u32> {
        let shape = self.code.shape();
        let f = self.code.field();
        let mut out = Vec::new();
        for (i, b) in self.taps.iter().enumerate() {
            let (m, n) = (shape.m()[i], shape.n()[i]);
            for s in 0..m {
                for t in 0..b.ncols() {
                    let mut acc = 0;
                    for c in 0..n {
                        acc = f.add(acc, f.mul(d[shape.coord(i, s, c)], b.get(c, t)));
                    }
                    out.push(acc);
                }
            }
        }
        out
    }
}

/// Exact `I_q(M; W)` for uniform message and uniform codeword, from the
/// joint counts of `(M, W)` over all pairs.
///
/// Every likelihood ratio is a power of `q` for linear taps, so the sum is
/// evaluated in exact rational arithmetic.
pub fn empirical_mi(s: &WiretapScenario, caps: &Caps) -> Result<Ratio<i128>> {
    let pairs = s.messages.size().saturating_mul(s.code.size());
    if pairs > caps.mi {
        return Err(Error::EnumerationTooLarge { size: pairs, cap: caps.mi });
    }
    let f = s.code.field();
    let q = f.order() as u128;
    let mut codewords = Vec::new();
    s.code.for_each_codeword(caps.mi, |c| {
        codewords.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    let mut joint: HashMap<(usize, Vec<u32>), u128> = HashMap::new();
    let mut marginal_w: HashMap<Vec<u32>, u128> = HashMap::new();
    let mut m_index = 0usize;
    s.messages.for_each_codeword(caps.mi, |m| {
        for c in &codewords {
            let d: Vec<u32> = m.iter().zip(c).map(|(&a, &b)| f.add(a, b)).collect();
            let w = s.observe(&d);
            *marginal_w.entry(w.clone()).or_default() += 1;
            *joint.entry((m_index, w)).or_default() += 1;
        }
        m_index += 1;
        ControlFlow::Continue(())
    })?;
    let total = pairs;
    let per_message = s.code.size();
    let mut info = Ratio::from_integer(0i128);
    for ((_, w), &n_mw) in &joint {
        let ratio = Ratio::new(n_mw * total, per_message * marginal_w[w]);
        let e = q_log(ratio, q).ok_or_else(|| {
            Error::InvariantViolation(format!("likelihood ratio {ratio} is not a power of {q}"))
        })?;
        info += Ratio::new(n_mw as i128 * e, total as i128);
    }
    Ok(info)
}

fn q_log(r: Ratio<u128>, q: u128) -> Option<i128> {
    let pow = |mut x: u128| -> Option<i128> {
        let mut e = 0;
        while x > 1 {
            if x % q != 0 {
                return None;
            }
            x /= q;
            e += 1;
        }
        Some(e)
    };
    if *r.denom() == 1 {
        pow(*r.numer())
    } else if *r.numer() == 1 {
        pow(*r.denom()).map(|e| -e)
    } else {
        None
    }
}

/// `d^Supp_r(C^perp)`: the fewest tapped links that can leak `r` symbols.
pub fn leakage_threshold(code: &LinearCode, r: usize, caps: &Caps) -> Result<usize> {
    gen_weight(&code.dual(), r, Variant::Support, caps)
}

/// Worst-case leakage for every number of tapped links `0..=n`: the
/// largest `dim(C^perp cap prod V_{L_i})` with `sum dim L_i = mu`.
pub fn worst_case_leakage(code: &LinearCode, caps: &Caps) -> Result<Vec<usize>> {
    let dual = code.dual();
    let family = AnticodeFamily::new(code.field(), code.shape(), Variant::Support, caps)?;
    let best = family.best_intersections(&dual)?;
    Ok(best.into_iter().map(|b| b.expect("every total support dimension occurs")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genweights::weight_profile;
    use crate::gf::FieldContext;

    fn f2() -> Field {
        FieldContext::prime(2).unwrap()
    }

    #[test]
    fn zero_and_full_taps() {
        let f = f2();
        let s = Shape::new(vec![3, 2], vec![1, 2]).unwrap();
        let c = LinearCode::from_vectors(&f, &s, vec![vec![1, 0, 0, 1, 0, 0, 1], vec![0, 1, 1, 0, 1, 1, 0]]).unwrap();
        let zero = vec![MatrixFq::zeros(&f, 1, 0), MatrixFq::zeros(&f, 2, 1)];
        assert_eq!(leakage_dim(&c, &zero).unwrap(), 0);
        let full = vec![MatrixFq::identity(&f, 1), MatrixFq::identity(&f, 2)];
        assert_eq!(leakage_dim(&c, &full).unwrap(), s.dim() - c.dim());
        for taps in [zero, full] {
            let sc = WiretapScenario::new(&c, taps.clone()).unwrap();
            assert_eq!(empirical_mi(&sc, &Caps::default()).unwrap(), Ratio::from_integer(leakage_dim(&c, &taps).unwrap() as i128));
        }
    }

    #[test]
    fn complement_is_independent_of_choice() {
        let f = f2();
        let s = Shape::new(vec![2, 1], vec![2, 1]).unwrap();
        let c = LinearCode::from_vectors(&f, &s, vec![vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]]).unwrap();
        let taps = vec![MatrixFq::from_rows(&f, &[vec![1], vec![1]], 1).unwrap(), MatrixFq::zeros(&f, 1, 0)];
        let canonical = WiretapScenario::new(&c, taps.clone()).unwrap();
        // Another complement: shift every canonical basis vector by a codeword.
        let shifted: Vec<Vec<u32>> = canonical
            .messages()
            .basis_vectors()
            .iter()
            .map(|v| v.iter().zip(&c.basis_vectors()[0]).map(|(&a, &b)| a ^ b).collect())
            .collect();
        let other = LinearCode::from_vectors(&f, &s, shifted).unwrap();
        let alt = WiretapScenario::with_complement(&c, &other, taps.clone()).unwrap();
        let caps = Caps::default();
        assert_eq!(empirical_mi(&canonical, &caps).unwrap(), empirical_mi(&alt, &caps).unwrap());
        assert_eq!(empirical_mi(&alt, &caps).unwrap(), Ratio::from_integer(leakage_dim(&c, &taps).unwrap() as i128));
    }

    #[test]
    fn transposition_changes_support_weights() {
        let f = f2();
        let s = Shape::new(vec![2], vec![2]).unwrap();
        let rows = LinearCode::from_vectors(&f, &s, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let cols = LinearCode::from_vectors(&f, &s, vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let caps = Caps::default();
        assert_eq!(weight_profile(&rows, Variant::Support, &caps).unwrap().weights, vec![1, 2]);
        assert_eq!(weight_profile(&cols, Variant::Support, &caps).unwrap().weights, vec![1, 1]);
        assert_eq!(weight_profile(&rows, Variant::Product, &caps).unwrap(), weight_profile(&cols, Variant::Product, &caps).unwrap());
    }

    #[test]
    fn non_strict_shapes_are_allowed() {
        let f = f2();
        let s = Shape::non_strict(vec![1, 2], vec![3, 1]).unwrap();
        let c = LinearCode::from_vectors(&f, &s, vec![vec![1, 1, 1, 0, 1]]).unwrap();
        let worst = worst_case_leakage(&c, &Caps::default()).unwrap();
        assert_eq!(worst.len(), 5);
        assert_eq!(worst[4], s.dim() - 1);
        for r in 1..=c.dual().dim() {
            let t = leakage_threshold(&c, r, &Caps::default()).unwrap();
            assert!(worst[t] >= r && (t == 0 || worst[t - 1] < r));
        }
    }
}
