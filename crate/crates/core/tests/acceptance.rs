//! The acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p sumrank --test acceptance -- --nocapture` to see them.

mod common;

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumrank::anticode::{enumerate_anticodes, Variant};
use sumrank::cover::{coset_rank_lower, coset_witness_exact, meshulam_search, rho};
use sumrank::genweights::{gen_weight, wei_duality_check, weight_profile};
use sumrank::matfq::enumerate_subspaces;
use sumrank::msrd::{coordinate_anticode, msrd_check, msrd_weights_closed_form, r_msrd_check, r_mu, singleton_bound, DimDecomposition};
use sumrank::wiretap::{empirical_mi, leakage_dim, WiretapScenario};
use sumrank::{Caps, LinearCode, MatrixFq, Shape};

fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    println!(
        "acceptance {id:>2} {name}: {} ({:.2}s, budget {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    if let Err(e) = outcome {
        resume_unwind(e);
    }
    assert!(elapsed <= budget, "criterion {id} took {elapsed:?}, budget {budget:?}");
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn c01_example_pair_profiles() {
    criterion(1, "example pair profiles", secs(5), || {
        let f = field(2);
        let s = shape(&[(3, 1), (2, 2)]);
        let c1 = unit_code(&f, &s, &[3, 4, 5, 6]);
        let c2 = unit_code(&f, &s, &[0, 1, 3, 4]);
        let caps = Caps::default();
        let oracle = oracle_anticodes(&f, &s);
        for c in [&c1, &c2] {
            let profile = weight_profile(c, Variant::Product, &caps).unwrap().weights;
            assert_eq!(profile, vec![1, 1, 2, 2]);
            assert_eq!(profile, oracle_profile(c, &oracle, true));
        }
        assert_eq!(gen_weight(&c1.dual(), 3, Variant::Product, &caps).unwrap(), 1);
        assert_eq!(gen_weight(&c2.dual(), 3, Variant::Product, &caps).unwrap(), 2);
        assert_eq!(oracle_profile(&c1.dual(), &oracle, true)[2], 1);
        assert_eq!(oracle_profile(&c2.dual(), &oracle, true)[2], 2);
    });
}

fn msrd_example() -> LinearCode {
    let f = field(2);
    let s = shape(&[(3, 3), (2, 2), (1, 1), (1, 1), (1, 1)]);
    let g1 = flat(&[&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0], &[0, 1]], &[&[1]], &[&[1]], &[&[0]]]);
    let g2 = flat(&[&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]], &[&[0, 1], &[1, 1]], &[&[0]], &[&[1]], &[&[1]]]);
    code(&f, &s, &[g1, g2])
}

#[test]
fn c02_msrd_example_fails_c2() {
    criterion(2, "MSRD example without (C2)", secs(30), || {
        let c = msrd_example();
        let caps = Caps::default();
        assert_eq!(c.dim(), 2);
        assert_eq!(brute_min_distance(&c), Some(7));
        assert_eq!(singleton_bound(c.shape(), 7), 2);
        let report = msrd_check(&c, &caps).unwrap();
        assert_eq!(report.d, 7);
        assert!(report.is_msrd);
        assert_eq!(report.c2, Some(false));
        let witness = coordinate_anticode(&c, &[vec![0, 1], vec![0, 1], vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(witness.max_srk(), 7);
        assert_eq!(witness.intersection_dim(&c).unwrap(), 0);
        assert_eq!(c.intersect(&witness.materialize()).unwrap().dim(), 0);
        let found = report.c2_witness.expect("a violating anticode");
        assert_eq!(found.max_srk(), 7);
        assert!(found.intersection_dim(&c).unwrap() < 1);
    });
}

fn final_example() -> LinearCode {
    let f = field(2);
    let s = shape(&[(4, 4), (4, 2), (2, 2)]);
    let gens = [
        flat(&[
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]],
            &[&[1, 0], &[0, 0]],
        ]),
        flat(&[
            &[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]],
            &[&[0, 1], &[1, 1], &[0, 0], &[0, 0]],
            &[&[0, 0], &[1, 0]],
        ]),
        flat(&[
            &[&[0, 0, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1], &[0, 1, 0, 0]],
            &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]],
            &[&[0, 0], &[0, 0]],
        ]),
        flat(&[
            &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
            &[&[0, 0], &[0, 0], &[0, 0], &[0, 0]],
            &[&[0, 0], &[0, 1]],
        ]),
    ];
    code(&f, &s, &gens)
}

#[test]
fn c03_final_example_not_3_msrd() {
    criterion(3, "final example weights", secs(300), || {
        let c = final_example();
        let s = c.shape().clone();
        let caps = Caps::default();
        assert_eq!(c.dim(), 4);
        let profile = weight_profile(&c, Variant::Product, &caps).unwrap().weights;
        assert_eq!(&profile[..3], &[1, 7, 7]);
        assert_eq!(brute_min_distance(&c), Some(1));

        // Lower bounds for d_2, d_3 by materialising every product anticode
        // of smaller weight; upper bound from the explicit anticode.
        for mu in 1..7 {
            for a in enumerate_anticodes(c.field(), &s, mu, Variant::Product, &caps).unwrap() {
                assert!(c.intersect(&a.materialize()).unwrap().dim() < 2, "weight {mu} anticode meets C in dim 2");
            }
        }
        let a = coordinate_anticode(&c, &[vec![0, 1, 2, 3], vec![0, 1], vec![0]]).unwrap();
        assert_eq!(a.max_srk(), 7);
        assert!(c.intersect(&a.materialize()).unwrap().dim() >= 3);

        let dec = DimDecomposition::of(&s, 4).unwrap();
        assert_eq!((dec.j, dec.delta, dec.s), (2, 0, 0));
        assert_eq!(singleton_bound(&s, 7), 4);
        assert_eq!(msrd_weights_closed_form(&s, dec.j, dec.delta).unwrap(), vec![7, 7, 8, 8]);
        let row = r_msrd_check(&c, 8, &caps).unwrap();
        assert_eq!((row.r, row.d_r, row.holds), (3, 7, false));
        let report = msrd_check(&c, &caps).unwrap();
        assert!(!report.is_msrd);
    });
}

#[test]
fn c04_anticode_bound() {
    criterion(4, "anticode bound on random codes", secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let caps = Caps::default();
        let mut violations = 0;
        for _ in 0..1000 {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let f = field(q);
            let blocks = rng.gen_range(1..=3);
            let max_dim = if q == 2 { 12 } else { 8 };
            let s = random_strict_shape(&mut rng, blocks, 3, max_dim);
            let k = rng.gen_range(0..=s.dim().min(if q == 2 { 10 } else { 7 }));
            let c = random_code(&mut rng, &f, &s, k);
            let wmax = brute_weighted_max(&c);
            assert_eq!(c.weighted_max(caps.codewords).unwrap(), wmax);
            if c.dim() > wmax {
                violations += 1;
            }
        }
        assert_eq!(violations, 0);
    });
}

/// Largest `rank(A + sum x_k M_k)` over all 0/1 vectors `x`.
fn exhaustive_01(a: &MatrixFq, ms: &[MatrixFq]) -> usize {
    let mut best = 0;
    for mask in 0u32..1 << ms.len() {
        let mut x = a.clone();
        for (k, m) in ms.iter().enumerate() {
            if mask >> k & 1 == 1 {
                x = x.add(m).unwrap();
            }
        }
        best = best.max(x.rank());
    }
    best
}

/// Least number of lines covering the pivots, by trying all row sets.
fn brute_cover(m: usize, pivots: &[(usize, usize)]) -> usize {
    (0u32..1 << m)
        .map(|rows| {
            let mut cols: Vec<usize> = pivots.iter().filter(|p| rows >> p.0 & 1 == 0).map(|p| p.1).collect();
            cols.sort_unstable();
            cols.dedup();
            rows.count_ones() as usize + cols.len()
        })
        .min()
        .unwrap()
}

#[test]
fn c05_meshulam() {
    criterion(5, "covering-number construction", secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let caps = Caps::default();
        for it in 0..500 {
            let q = [2, 3, 4][rng.gen_range(0..3)];
            let f = field(q);
            let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let a = random_matrix(&mut rng, &f, m, n);
            let d = rng.gen_range(1..=12);
            let ms: Vec<MatrixFq> = (0..d).map(|_| random_nonzero_matrix(&mut rng, &f, m, n)).collect();
            let res = meshulam_search(&a, &ms).unwrap();
            let pivots: Vec<(usize, usize)> = ms
                .iter()
                .map(|x| {
                    let i = x.as_slice().iter().position(|&v| v != 0).unwrap();
                    (i / n, i % n)
                })
                .collect();
            let r = brute_cover(m, &pivots);
            assert_eq!(rho(&ms).unwrap().rho, r, "instance {it}");
            assert_eq!(res.rho, r);
            assert!(res.rank >= r, "instance {it}: rank {} < rho {r}", res.rank);
            let mut sum = a.clone();
            for (k, x) in ms.iter().enumerate() {
                if res.coeffs[k] == 1 {
                    sum = sum.add(x).unwrap();
                }
            }
            assert_eq!(sum.rank(), res.rank);
            let best = exhaustive_01(&a, &ms);
            assert!(best >= r && best >= res.rank);

            // Coset statements on a single block, which need n <= m.
            if n <= m {
                let s = Shape::new(vec![m], vec![n]).unwrap();
                let t = rng.gen_range(0..n);
                let v = random_code(&mut rng, &f, &s, m * t);
                if !v.contains_flat(a.as_slice()) {
                    let w = coset_witness_exact(&a, &v, t, &caps).unwrap();
                    assert!(v.contains_flat(w.b.as_slice()));
                    assert!(a.add(&w.b).unwrap().rank() > t);
                    assert_eq!(a.add(&w.b).unwrap().rank(), w.rank);
                }
                let extra = rng.gen_range(1..=m * (n - t));
                let v = random_code(&mut rng, &f, &s, m * t + extra);
                let w = coset_rank_lower(&a, &v, t).unwrap();
                assert!(v.contains_flat(w.b.as_slice()));
                assert!(a.add(&w.b).unwrap().rank() > t);
            }
        }
    });
}

#[test]
fn c06_wei_duality() {
    criterion(6, "Wei duality", secs(600), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let caps = Caps::default();
        for _ in 0..200 {
            let m = rng.gen_range(1..=2);
            let max_blocks = if m == 1 { 12 } else { 6 };
            let s = loop {
                let l = rng.gen_range(1..=max_blocks);
                let n: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=m)).collect();
                let s = Shape::new(vec![m; l], n).unwrap();
                if s.dim() <= 12 {
                    break s;
                }
            };
            let q = if s.dim() <= 7 && rng.gen_bool(0.3) { 3 } else { 2 };
            let f = field(q);
            let k = rng.gen_range(0..=s.dim());
            let c = random_code(&mut rng, &f, &s, k);
            let report = wei_duality_check(&c, &caps).unwrap();
            assert_eq!(report.rows.len(), m);
            for row in &report.rows {
                assert!(row.holds(), "W_{}: dual {:?} vs predicted {:?} for {:?}", row.r, row.dual, row.predicted, s);
            }
        }
    });
}

#[test]
fn c07_classification() {
    criterion(7, "optimal anticode classification", secs(600), || {
        let f = field(2);
        let caps = Caps { tail_len: 8, ..Caps::default() };
        let shapes = strict_shapes(8);
        for s in &shapes {
            // Exhaustive filtering: every subspace with dim = max sum m_i rk.
            let mut filtered: Vec<Vec<Vec<u32>>> = Vec::new();
            for u in 0..=s.dim() {
                for w in enumerate_subspaces(&f, s.dim(), u, u128::MAX).unwrap() {
                    let c = LinearCode::from_vectors(&f, s, w.basis().to_vec()).unwrap();
                    if c.weighted_max(caps.codewords).unwrap() == c.dim() {
                        filtered.push(c.basis_vectors().to_vec());
                    }
                }
            }
            filtered.sort();
            let mut listed: Vec<Vec<Vec<u32>>> = Vec::new();
            for mu in 0..=s.total_n() {
                for a in enumerate_anticodes(&f, s, mu, Variant::All, &caps).unwrap() {
                    assert_eq!(a.max_srk(), mu);
                    listed.push(a.materialize().basis_vectors().to_vec());
                }
            }
            let total = listed.len();
            listed.sort();
            listed.dedup();
            assert_eq!(listed.len(), total, "duplicate anticodes for {s:?}");
            assert_eq!(filtered, listed, "classification mismatch for {s:?}");
        }
    });
}

#[test]
fn c08_leakage() {
    criterion(8, "leakage equals mutual information", secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let caps = Caps::default();
        for _ in 0..100 {
            let q = if rng.gen_bool(0.7) { 2 } else { 3 };
            let f = field(q);
            let max_dim = if q == 2 { 16 } else { 10 };
            let s = loop {
                let l = rng.gen_range(1..=3);
                let m: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=3)).collect();
                let n: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=3)).collect();
                let s = Shape::non_strict(m, n).unwrap();
                if s.dim() <= max_dim {
                    break s;
                }
            };
            let k = rng.gen_range(0..=s.dim());
            let c = random_code(&mut rng, &f, &s, k);
            let taps: Vec<MatrixFq> = (0..s.blocks())
                .map(|i| {
                    let mu = rng.gen_range(0..=s.n()[i] + 1);
                    random_matrix(&mut rng, &f, s.n()[i], mu)
                })
                .collect();
            let leak = leakage_dim(&c, &taps).unwrap();
            let sc = WiretapScenario::new(&c, taps).unwrap();
            let mi = empirical_mi(&sc, &caps).unwrap();
            assert_eq!(mi, Ratio::from_integer(leak as i128), "shape {s:?}, dim {k}");
        }
    });
}

#[test]
fn c09_variant_coherence() {
    criterion(9, "variant coherence", secs(600), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let caps = Caps::default();
        for _ in 0..100 {
            let f = field(2);
            let s = loop {
                let l = rng.gen_range(1..=3);
                let mut blocks: Vec<(usize, usize)> = (0..l)
                    .map(|_| {
                        let m = rng.gen_range(1..=4);
                        let n = if m == 1 { 1 } else { rng.gen_range(1..m) };
                        (m, n)
                    })
                    .collect();
                blocks.sort_by(|a, b| b.cmp(a));
                let s = shape(&blocks);
                if s.dim() <= 14 {
                    break s;
                }
            };
            let k = rng.gen_range(1..=s.dim().min(8));
            let c = random_code(&mut rng, &f, &s, k);
            let d = weight_profile(&c, Variant::Product, &caps).unwrap().weights;
            let supp = weight_profile(&c, Variant::Support, &caps).unwrap().weights;
            assert_eq!(supp, d, "shape {s:?}");
        }
        for _ in 0..100 {
            let q = if rng.gen_bool(0.8) { 2 } else { 3 };
            let f = field(q);
            let s = if q == 2 && rng.gen_bool(0.4) {
                // Leading matrix blocks followed by a run of scalar blocks.
                let mut blocks = vec![(2, rng.gen_range(1..=2))];
                blocks.extend(std::iter::repeat((1, 1)).take(rng.gen_range(1..=5)));
                shape(&blocks)
            } else {
                let blocks = rng.gen_range(1..=3);
                random_strict_shape(&mut rng, blocks, 3, if q == 2 { 12 } else { 7 })
            };
            let k = rng.gen_range(1..=s.dim().min(8));
            let c = random_code(&mut rng, &f, &s, k);
            let d = weight_profile(&c, Variant::Product, &caps).unwrap().weights;
            let d_all = weight_profile(&c, Variant::All, &caps).unwrap().weights;
            assert!(d_all.iter().zip(&d).all(|(a, b)| a <= b), "shape {s:?}: {d_all:?} vs {d:?}");
        }
    });
}

/// Smallest admissible shapes for the exhaustive batteries.
fn small_shapes() -> Vec<(u32, Shape)> {
    let f2 = [
        vec![(1, 1), (1, 1)],
        vec![(2, 1)],
        vec![(2, 2)],
        vec![(2, 1), (1, 1)],
        vec![(1, 1), (1, 1), (1, 1)],
        vec![(2, 1), (2, 1)],
        vec![(2, 1), (1, 1), (1, 1)],
        vec![(3, 1), (1, 1)],
        vec![(1, 1), (1, 1), (1, 1), (1, 1)],
        vec![(2, 2), (1, 1)],
        vec![(3, 1), (2, 1)],
        vec![(2, 2), (2, 1)],
        vec![(2, 2), (1, 1), (1, 1)],
        vec![(3, 1), (1, 1), (1, 1), (1, 1)],
    ];
    let mut out: Vec<(u32, Shape)> = f2.iter().map(|b| (2, shape(b))).collect();
    out.push((3, shape(&[(2, 1), (1, 1)])));
    out.push((3, shape(&[(1, 1), (1, 1), (1, 1)])));
    out
}

fn prop_battery(s: &Shape, codes: &[LinearCode], profiles: &[Vec<usize>]) {
    let n = s.total_n();
    for (c, d) in codes.iter().zip(profiles) {
        let k = c.dim();
        if k == 0 {
            continue;
        }
        // (1)
        assert_eq!(Some(d[0]), brute_min_distance(c));
        // (2)
        assert!(d.windows(2).all(|w| w[0] <= w[1]));
        // (4)
        assert!(d[k - 1] <= n);
        // (5)
        for j in 0..s.blocks() {
            for delta in 0..s.n()[j] {
                let shift: usize = (0..j).map(|i| s.n()[i] * s.m()[i]).sum::<usize>() + delta * s.m()[j];
                let gain: usize = s.n()[..j].iter().sum::<usize>() + delta;
                for r in 1..=k.saturating_sub(shift) {
                    assert!(d[r + shift - 1] >= d[r - 1] + gain);
                }
            }
        }
        // Step lemma.
        for kk in 0..s.blocks() {
            let mk = s.m()[kk];
            let before: usize = s.n()[..kk].iter().sum();
            for r in 1..=k.saturating_sub(mk) {
                if d[r + mk - 1] > before {
                    assert!(d[r + mk - 1] >= d[r - 1] + 1);
                }
            }
        }
    }
    // (3) over all nested pairs.
    for (c, dc) in codes.iter().zip(profiles) {
        for (e, de) in codes.iter().zip(profiles) {
            if c.dim() > 0 && c.dim() <= e.dim() && c.is_subcode_of(e) {
                assert!((0..c.dim()).all(|r| dc[r] >= de[r]));
            }
        }
    }
}

/// Runs the MSRD battery; returns the codes where `(C3)` and "both the code
/// and its dual are MSRD" disagree.
fn msrd_battery(s: &Shape, codes: &[LinearCode], oracle: &[OracleAnticode], caps: &Caps) -> Vec<String> {
    let mut c3_mismatches = Vec::new();
    let equal_m = s.m().iter().all(|&m| m == s.m()[0]);
    let total = s.dim();
    let is_msrd_oracle = |c: &LinearCode| {
        let dec = DimDecomposition::of(s, c.dim()).unwrap();
        dec.s == 0 && brute_min_distance(c) == Some(dec.d_max(s))
    };
    for c in codes.iter().filter(|c| c.dim() > 0) {
        let r = msrd_check(c, caps).unwrap();
        let dec = DimDecomposition::of(s, c.dim()).unwrap();
        let d = brute_min_distance(c).unwrap();
        assert_eq!(r.d, d);
        let msrd = is_msrd_oracle(c);
        assert_eq!(r.is_msrd, msrd);
        assert_eq!(r.window_ok, msrd);

        // Flags recomputed from the brute-force anticode list.
        let r_dm1 = oracle.iter().filter(|a| a.product && a.max_srk == d - 1).map(|a| a.code.dim()).max().unwrap();
        assert_eq!(r_dm1, r_mu(s, d - 1));
        let c0 = oracle
            .iter()
            .filter(|a| a.max_srk == d - 1 && a.code.dim() == r_dm1)
            .all(|a| c.sum(&a.code).unwrap().dim() == total);
        let d_max = dec.d_max(s);
        let c1 = dec.s == 0
            && oracle.iter().filter(|a| a.max_srk < d_max).all(|a| c.intersect(&a.code).unwrap().dim() == 0);
        let c2 = oracle
            .iter()
            .filter(|a| a.product && a.max_srk == d)
            .all(|a| c.intersect(&a.code).unwrap().dim() >= a.last_nonzero.map_or(0, |i| s.m()[i]));
        assert_eq!(r.c0, Some(c0));
        assert_eq!(r.c1, Some(c1));
        assert_eq!(r.c2, Some(c2));

        assert_eq!(c0, msrd);
        assert_eq!(c1, msrd);
        if c2 {
            assert!(msrd);
        }
        if c.dim() < total {
            let dual = c.dual();
            let c3 = d + brute_min_distance(&dual).unwrap() == s.total_n() + 2;
            assert_eq!(r.c3, Some(c3));
            if c3 {
                assert!(msrd && is_msrd_oracle(&dual));
            }
            if c3 != (msrd && is_msrd_oracle(&dual)) {
                c3_mismatches.push(format!(
                    "m = {:?}, n = {:?}, q = {}, basis {:?}: d = {d}, d(dual) = {}, both MSRD, d + d(dual) != n + 2",
                    s.m(),
                    s.n(),
                    c.field().order(),
                    c.basis_vectors(),
                    brute_min_distance(&dual).unwrap()
                ));
            }
            if !equal_m {
                assert!(!c3);
            }
            if equal_m {
                assert_eq!(c3, msrd);
            }
        } else {
            assert_eq!(r.c3, None);
        }
        if equal_m {
            assert_eq!(c2, msrd);
        }
        if msrd {
            let predicted = msrd_weights_closed_form(s, dec.j, dec.delta).unwrap();
            assert_eq!(r.profile, predicted);
        }
        if let Some(rows) = &r.r_msrd {
            if let Some(first) = rows.iter().position(|x| x.holds) {
                assert!(rows[first..].iter().all(|x| x.holds));
            }
        }
    }
    c3_mismatches
}

#[test]
fn c10_property_batteries() {
    criterion(10, "property and MSRD batteries", secs(900), || {
        let caps = Caps::default();
        let mut c3_mismatches = Vec::new();
        for (q, s) in small_shapes() {
            let f = field(q);
            let codes = all_codes(&f, &s);
            let oracle = oracle_anticodes(&f, &s);
            let profiles: Vec<Vec<usize>> =
                codes.iter().map(|c| weight_profile(c, Variant::Product, &caps).unwrap().weights).collect();
            for (c, p) in codes.iter().zip(&profiles) {
                assert_eq!(p, &oracle_profile(c, &oracle, true), "product profile on {s:?}");
                let all = weight_profile(c, Variant::All, &caps).unwrap().weights;
                assert_eq!(all, oracle_profile(c, &oracle, false), "all-anticode profile on {s:?}");
            }
            prop_battery(&s, &codes, &profiles);
            c3_mismatches.extend(msrd_battery(&s, &codes, &oracle, &caps));
        }
        assert!(
            c3_mismatches.is_empty(),
            "(C3) <=> (code and dual MSRD) fails on {} codes, e.g. {}",
            c3_mismatches.len(),
            c3_mismatches[0]
        );
    });
}
