use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use sumrank::anticode::{is_optimal_anticode, Variant};
use sumrank::code::{srk, DistanceMethod};
use sumrank::cover::{meshulam_search, rho};
use sumrank::genweights::{gamma_expand, weight_profile, ExtensionCode, GammaBasis};
use sumrank::io::{
    from_json, CodeJson, DescriptorJson, ExtensionJson, IsometryJson, MatrixListJson, TapsJson, TupleJson,
};
use sumrank::isom::{equivalent_codes, random_isometry};
use sumrank::msrd::msrd_check;
use sumrank::wiretap::{empirical_mi, leakage_dim, WiretapScenario};
use sumrank::{Caps, FieldContext, LinearCode, MatrixFq};

use crate::output::{flag, list, summary, table, Report};
use crate::{caps_of, oracle, Cli, Command, Failure, VariantArg};

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(from_json(&text)?)
}

fn read_code(path: &Path) -> Result<LinearCode, Failure> {
    Ok(read::<CodeJson>(path)?.build()?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

fn flat_rows(c: &LinearCode) -> String {
    c.basis_vectors().iter().map(|v| format!("{}\n", list(v))).collect()
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let caps = caps_of(cli);
    let report = match &cli.command {
        Command::Srk { tuple } => srk_cmd(cli, tuple)?,
        Command::Dist { code } => dist(cli, &caps, code)?,
        Command::Dual { code } => dual(cli, code)?,
        Command::Gweights { code, variant, r } => gweights(cli, &caps, code, *variant, r)?,
        Command::Msrd { code } => msrd(cli, &caps, code)?,
        Command::Anticode { code } => anticode(cli, &caps, code)?,
        Command::Rho { matrices } => rho_cmd(cli, matrices)?,
        Command::Meshulam { matrices } => meshulam(cli, &caps, matrices)?,
        Command::Equiv { a, b } => equiv(cli, &caps, a, b.as_deref())?,
        Command::Leak { code, taps } => leak(cli, &caps, code, taps)?,
        Command::Expand { ext } => expand(cli, ext)?,
    };
    Ok(report.render(cli.format))
}

fn srk_cmd(cli: &Cli, path: &Path) -> Result<Report, Failure> {
    let t = read::<TupleJson>(path)?.build()?;
    let w = srk(&t);
    if cli.oracle {
        oracle::same("srk", w, oracle::srk(&t))?;
    }
    Ok(Report { json: json!({ "srk": w, "ranks": t.ranks() }), table: format!("{w}\n") })
}

fn dist(cli: &Cli, caps: &Caps, path: &Path) -> Result<Report, Failure> {
    let c = read_code(path)?;
    let d = c.min_distance(DistanceMethod::Anticode, caps)?;
    if cli.oracle {
        oracle::same("minimum distance", d, c.min_distance(DistanceMethod::Enumerate, caps)?)?;
    }
    Ok(Report { json: json!({ "d": d }), table: format!("{d}\n") })
}

fn dual(cli: &Cli, path: &Path) -> Result<Report, Failure> {
    let c = read_code(path)?;
    let d = c.dual();
    if cli.oracle {
        oracle::dual(&c, &d)?;
    }
    Ok(Report {
        json: to_value(&CodeJson::of(&d)),
        table: format!("{}{}", summary(&[("dim", d.dim().to_string())]), flat_rows(&d)),
    })
}

fn variant_of(v: VariantArg) -> (Variant, &'static str) {
    match v {
        VariantArg::Product => (Variant::Product, "product"),
        VariantArg::All => (Variant::All, "all"),
        VariantArg::Supp => (Variant::Support, "supp"),
    }
}

fn gweights(cli: &Cli, caps: &Caps, path: &Path, v: VariantArg, r: &str) -> Result<Report, Failure> {
    let c = read_code(path)?;
    let (variant, name) = variant_of(v);
    let profile = weight_profile(&c, variant, caps)?.weights;
    if cli.oracle {
        oracle::same_list("generalized weights", &profile, &oracle::profile(&c, variant, caps)?)?;
    }
    if r == "all" {
        let rows: Vec<Vec<String>> = profile.iter().enumerate().map(|(i, d)| vec![(i + 1).to_string(), d.to_string()]).collect();
        return Ok(Report {
            json: json!({ "variant": name, "dim": c.dim(), "profile": profile }),
            table: table(&["r", "d_r"], &rows),
        });
    }
    let r: usize = r.parse().map_err(|_| Failure::Usage(format!("--r expects `all` or an index, got `{r}`")))?;
    if r == 0 || r > c.dim() {
        return Err(sumrank::Error::RankOutOfRange { r, dim: c.dim() }.into());
    }
    let d = profile[r - 1];
    Ok(Report {
        json: json!({ "variant": name, "r": r, "d_r": d }),
        table: table(&["r", "d_r"], &[vec![r.to_string(), d.to_string()]]),
    })
}

fn msrd(cli: &Cli, caps: &Caps, path: &Path) -> Result<Report, Failure> {
    let c = read_code(path)?;
    let rep = msrd_check(&c, caps)?;
    if cli.oracle {
        oracle::same("minimum distance", rep.d, c.min_distance(DistanceMethod::Enumerate, caps)?)?;
        let dual = c.dual();
        let brute_dual = if dual.dim() == 0 { None } else { Some(dual.min_distance(DistanceMethod::Enumerate, caps)?) };
        oracle::same("dual distance", rep.d_dual, brute_dual)?;
        oracle::same_list("generalized weights", &rep.profile, &oracle::profile(&c, Variant::Product, caps)?)?;
    }
    let dec = rep.decomposition;
    let window: Vec<Value> = rep.window.iter().map(|w| json!({ "h": w.h, "dim": w.dim, "m_k": w.m_k })).collect();
    let r_msrd = rep.r_msrd.as_ref().map(|rows| {
        rows.iter().map(|x| json!({ "h": x.h, "r": x.r, "d_r": x.d_r, "holds": x.holds })).collect::<Vec<_>>()
    });
    let json = json!({
        "dim": rep.dim,
        "decomposition": { "j": dec.j, "delta": dec.delta, "s": dec.s },
        "d_max": rep.d_max,
        "d": rep.d,
        "d_dual": rep.d_dual,
        "is_msrd": rep.is_msrd,
        "c0": rep.c0,
        "c1": rep.c1,
        "c2": rep.c2,
        "c3": rep.c3,
        "c2_witness": rep.c2_witness.as_ref().map(|a| to_value(&DescriptorJson::of(a))),
        "window": window,
        "window_ok": rep.window_ok,
        "r_msrd": r_msrd,
        "profile": rep.profile,
    });
    let table = summary(&[
        ("dim", rep.dim.to_string()),
        ("j delta s", format!("{} {} {}", dec.j, dec.delta, dec.s)),
        ("d", rep.d.to_string()),
        ("d_max", rep.d_max.to_string()),
        ("d dual", rep.d_dual.map_or("-".into(), |d| d.to_string())),
        ("MSRD", flag(Some(rep.is_msrd))),
        ("C0", flag(rep.c0)),
        ("C1", flag(rep.c1)),
        ("C2", flag(rep.c2)),
        ("C3", flag(rep.c3)),
        ("windows", flag(Some(rep.window_ok))),
        ("profile", list(&rep.profile)),
    ]);
    Ok(Report { json, table })
}

fn anticode(cli: &Cli, caps: &Caps, path: &Path) -> Result<Report, Failure> {
    let c = read_code(path)?;
    let (optimal, desc) = is_optimal_anticode(&c, caps)?;
    let wmax = c.weighted_max(caps.codewords)?;
    if cli.oracle {
        oracle::anticode(&c, optimal, desc.as_ref())?;
    }
    let mut pairs = vec![("optimal", flag(Some(optimal))), ("dim", c.dim().to_string()), ("weighted max", wmax.to_string())];
    if let Some(a) = &desc {
        pairs.push(("max srk", a.max_srk().to_string()));
    }
    Ok(Report {
        json: json!({
            "optimal": optimal,
            "dim": c.dim(),
            "weighted_max": wmax,
            "descriptor": desc.as_ref().map(|a| to_value(&DescriptorJson::of(a))),
        }),
        table: summary(&pairs),
    })
}

fn matrices(path: &Path) -> Result<(Option<MatrixFq>, Vec<MatrixFq>), Failure> {
    Ok(read::<MatrixListJson>(path)?.build()?)
}

fn rho_cmd(cli: &Cli, path: &Path) -> Result<Report, Failure> {
    let (_, ms) = matrices(path)?;
    let r = rho(&ms)?;
    if cli.oracle {
        oracle::same("covering number", r.rho, oracle::rho(&ms)?)?;
    }
    let pivots: Vec<[usize; 2]> = r.independent.iter().map(|&(a, b)| [a, b]).collect();
    let rows: Vec<Vec<String>> = r
        .independent
        .iter()
        .zip(&r.witnesses)
        .map(|(&(a, b), k)| vec![a.to_string(), b.to_string(), k.to_string()])
        .collect();
    Ok(Report {
        json: json!({
            "rho": r.rho,
            "independent": pivots,
            "witnesses": r.witnesses,
            "cover_rows": r.cover_rows,
            "cover_cols": r.cover_cols,
        }),
        table: format!("{}{}", summary(&[("rho", r.rho.to_string())]), table(&["row", "col", "matrix"], &rows)),
    })
}

fn meshulam(cli: &Cli, caps: &Caps, path: &Path) -> Result<Report, Failure> {
    let (a, ms) = matrices(path)?;
    let a = match a {
        Some(a) => a,
        None => {
            let first = ms.first().ok_or_else(|| Failure::Usage("empty matrix list".into()))?;
            MatrixFq::zeros(first.field(), first.nrows(), first.ncols())
        }
    };
    let res = meshulam_search(&a, &ms)?;
    if cli.oracle {
        oracle::meshulam(&a, &ms, &res, caps)?;
    }
    Ok(Report {
        json: json!({ "coeffs": res.coeffs, "rank": res.rank, "rho": res.rho }),
        table: summary(&[("coeffs", list(&res.coeffs)), ("rank", res.rank.to_string()), ("rho", res.rho.to_string())]),
    })
}

fn equiv(cli: &Cli, caps: &Caps, a: &Path, b: Option<&Path>) -> Result<Report, Failure> {
    let ca = read_code(a)?;
    let (cb, planted) = match b {
        Some(b) => (read_code(b)?, false),
        None => (random_isometry(ca.field(), ca.shape(), cli.seed).apply_code(&ca)?, true),
    };
    if ca.field() != cb.field() || ca.shape() != cb.shape() {
        return Err(Failure::Usage("codes live in different ambient spaces".into()));
    }
    let found = equivalent_codes(&ca, &cb, caps)?;
    if let Some(iso) = &found {
        if iso.apply_code(&ca)? != cb {
            return Err(Failure::Bug("returned isometry does not map the first code onto the second".into()));
        }
        if cli.oracle {
            oracle::isometry(&ca, iso, caps)?;
        }
    } else if planted {
        return Err(Failure::Bug("no isometry found for a planted equivalence".into()));
    }
    let mut json = json!({
        "equivalent": found.is_some(),
        "isometry": found.as_ref().map(|i| to_value(&IsometryJson::of(i))),
    });
    if planted {
        json["image"] = to_value(&CodeJson::of(&cb));
    }
    let mut pairs = vec![("equivalent", flag(Some(found.is_some())))];
    if let Some(iso) = &found {
        pairs.push(("sigma", list(iso.sigma())));
        pairs.push(("transposed", list(&iso.blocks().iter().map(|b| u8::from(b.transpose)).collect::<Vec<_>>())));
    }
    Ok(Report { json, table: summary(&pairs) })
}

fn leak(cli: &Cli, caps: &Caps, code: &Path, taps: &Path) -> Result<Report, Failure> {
    let c = read_code(code)?;
    let taps = read::<TapsJson>(taps)?.build(c.field(), c.shape())?;
    let l = leakage_dim(&c, &taps)?;
    let thresholds = weight_profile(&c.dual(), Variant::Support, caps)?.weights;
    if cli.oracle {
        let mi = empirical_mi(&WiretapScenario::new(&c, taps.clone())?, caps)?;
        if !mi.is_integer() || *mi.numer() != l as i128 {
            return Err(Failure::Bug(format!("oracle mismatch in leakage: {l} vs mutual information {mi}")));
        }
    }
    let table_json: Vec<Value> =
        thresholds.iter().enumerate().map(|(i, t)| json!({ "symbols": i + 1, "links": t })).collect();
    let rows: Vec<Vec<String>> =
        thresholds.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.to_string()]).collect();
    Ok(Report {
        json: json!({ "leak_symbols": l, "threshold_table": table_json }),
        table: format!("{}{}", summary(&[("leak", l.to_string())]), table(&["symbols", "links"], &rows)),
    })
}

fn expand(cli: &Cli, path: &Path) -> Result<Report, Failure> {
    let e = read::<ExtensionJson>(path)?;
    let base = FieldContext::prime(e.p)?;
    let shape = e.shape.build()?;
    let gamma = e.gamma.clone().map(|blocks| GammaBasis { blocks });
    let ext = ExtensionCode { generators: e.generators.clone() };
    let c = gamma_expand(&base, &shape, &ext, gamma.as_ref(), e.k)?;
    if cli.oracle {
        oracle::expansion(&c, &ext, e.k)?;
    }
    Ok(Report {
        json: to_value(&CodeJson::of(&c)),
        table: format!("{}{}", summary(&[("dim", c.dim().to_string())]), flat_rows(&c)),
    })
}
