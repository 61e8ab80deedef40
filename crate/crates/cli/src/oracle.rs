//! Brute-force recomputations behind `--oracle`. Any disagreement is a
//! bug and exits with code 2.

use std::fmt::Debug;
use std::ops::ControlFlow;

use sumrank::anticode::{enumerate_anticodes, AnticodeDescriptor, Variant};
use sumrank::cover::{phi, MeshulamResult};
use sumrank::genweights::ExtensionCode;
use sumrank::isom::Isometry;
use sumrank::matfq::dot;
use sumrank::{Caps, LinearCode, MatrixFq, MatrixTuple};

use crate::Failure;

pub fn same<T: PartialEq + Debug>(what: &str, fast: T, brute: T) -> Result<(), Failure> {
    if fast == brute {
        Ok(())
    } else {
        Err(Failure::Bug(format!("oracle mismatch in {what}: {fast:?} vs {brute:?}")))
    }
}

pub fn same_list<T: PartialEq + Debug>(what: &str, fast: &[T], brute: &[T]) -> Result<(), Failure> {
    same(what, fast, brute)
}

fn check(ok: bool, msg: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Bug(format!("oracle: {msg}")))
    }
}

/// Sum of the ranks of the transposed blocks.
pub fn srk(t: &MatrixTuple) -> usize {
    t.blocks().iter().map(|b| b.transpose().rank()).sum()
}

pub fn dual(c: &LinearCode, d: &LinearCode) -> Result<(), Failure> {
    check(c.dim() + d.dim() == c.shape().dim(), "dual dimension")?;
    let orthogonal = c
        .basis_vectors()
        .iter()
        .all(|u| d.basis_vectors().iter().all(|v| dot(c.field(), u, v) == 0));
    check(orthogonal, "dual is not orthogonal to the code")?;
    check(&d.dual() == c, "dual of the dual differs from the code")
}

/// Generalized weights from materialized anticodes, one weight at a time.
pub fn profile(c: &LinearCode, variant: Variant, caps: &Caps) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for mu in 0..=c.shape().total_n() {
        if out.len() == c.dim() {
            break;
        }
        let mut best = 0;
        for a in enumerate_anticodes(c.field(), c.shape(), mu, variant, caps)? {
            best = best.max(c.intersect(&a.materialize())?.dim());
        }
        while out.len() < best {
            out.push(mu);
        }
    }
    Ok(out)
}

fn block_ranks(c: &LinearCode, v: &[u32]) -> Vec<usize> {
    let s = c.shape();
    (0..s.blocks())
        .map(|i| {
            let (m, n, off) = (s.m()[i], s.n()[i], s.offset(i));
            MatrixFq::from_flat(c.field(), m, n, v[off..off + m * n].to_vec()).expect("block size").rank()
        })
        .collect()
}

pub fn anticode(c: &LinearCode, optimal: bool, desc: Option<&AnticodeDescriptor>) -> Result<(), Failure> {
    let mut wmax = 0;
    let mut max_srk = 0;
    c.for_each_codeword(u128::MAX, |v| {
        let r = block_ranks(c, v);
        wmax = wmax.max(r.iter().zip(c.shape().m()).map(|(r, m)| r * m).sum());
        max_srk = max_srk.max(r.iter().sum());
        ControlFlow::Continue(())
    })?;
    same("anticode bound equality", optimal, c.dim() == wmax)?;
    if let Some(a) = desc {
        check(&a.materialize() == c, "descriptor does not span the code")?;
        same("maximum weight", a.max_srk(), max_srk)?;
    }
    Ok(())
}

/// Least number of lines covering all pivot positions, over row subsets.
pub fn rho(ms: &[MatrixFq]) -> Result<usize, Failure> {
    let pivots = ms.iter().map(phi).collect::<sumrank::Result<Vec<_>>>()?;
    let m = ms[0].nrows();
    if m > 20 {
        return Err(Failure::Usage(format!("covering-number oracle needs at most 20 rows, got {m}")));
    }
    let best = (0u32..1 << m)
        .map(|rows| {
            let mut cols: Vec<usize> = pivots.iter().filter(|(r, _)| rows >> r & 1 == 0).map(|&(_, c)| c).collect();
            cols.sort_unstable();
            cols.dedup();
            rows.count_ones() as usize + cols.len()
        })
        .min()
        .expect("at least the empty row set");
    Ok(best)
}

fn combination(a: &MatrixFq, ms: &[MatrixFq], x: &[u8]) -> MatrixFq {
    let mut b = a.clone();
    for (m, &xi) in ms.iter().zip(x) {
        if xi == 1 {
            b = b.add(m).expect("same size");
        }
    }
    b
}

pub fn meshulam(a: &MatrixFq, ms: &[MatrixFq], res: &MeshulamResult, caps: &Caps) -> Result<(), Failure> {
    same("covering number", res.rho, if ms.is_empty() { 0 } else { rho(ms)? })?;
    same("combination rank", res.rank, combination(a, ms, &res.coeffs).rank())?;
    check(res.rank >= res.rho, "rank below the covering number")?;
    if ms.len() < 64 && 1u128 << ms.len() <= caps.codewords {
        let best = (0u64..1 << ms.len())
            .map(|mask| {
                let x: Vec<u8> = (0..ms.len()).map(|k| (mask >> k & 1) as u8).collect();
                combination(a, ms, &x).rank()
            })
            .max()
            .expect("nonempty");
        check(best >= res.rank, "exhaustive search found less than the witness")?;
    }
    Ok(())
}

pub fn isometry(c: &LinearCode, iso: &Isometry, caps: &Caps) -> Result<(), Failure> {
    let mut ok = true;
    c.for_each_codeword(caps.codewords, |v| {
        let w = iso.apply_flat(v);
        if block_ranks(c, v).iter().sum::<usize>() != block_ranks(c, &w).iter().sum::<usize>() {
            ok = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    check(ok, "isometry changes a sum-rank weight")
}

/// The expansion is linear over `F_{p^k}`, so its dimension is a multiple
/// of `k` and at most `k` times the number of generators.
pub fn expansion(c: &LinearCode, ext: &ExtensionCode, k: Option<usize>) -> Result<(), Failure> {
    let k = k.unwrap_or_else(|| c.shape().m().iter().fold(0, |a, &b| gcd(a, b)));
    check(c.dim() % k == 0, "expanded dimension is not a multiple of k")?;
    check(c.dim() <= k * ext.generators.len(), "expanded dimension exceeds k times the generators")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
