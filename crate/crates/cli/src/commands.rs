use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use ptangle_core::colorings::ColoringJson;
use ptangle_core::persistence::{
    build_t_plus_tstar, cut_arc_twice, cut_two_arcs, find_certificate, irreducibility_report,
    krebes_gcd, verify_certificate, SearchOptions,
};
use ptangle_core::tangle::{closure, rational_tangle, tangle_fraction};
use ptangle_core::{
    fox_solution_space, link_determinant, quandle_colorings, ArcLabel, Certificate, Closure,
    Coloring, Diagram, PersistenceError, Quandle, Tangle,
};

use crate::{ClosureArg, Command};

/// What a subcommand produced: human text, JSON, and whether it found what was asked.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub found: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_diagram(path: &Path) -> Result<Diagram> {
    Diagram::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_tangle(path: &Path) -> Result<Tangle> {
    Tangle::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_quandle(path: &Path) -> Result<Arc<Quandle>> {
    let name = path
        .file_stem()
        .map_or("quandle".into(), |s| s.to_string_lossy().into_owned());
    let q = Quandle::parse(name, &read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(Arc::new(q))
}

fn kind(k: ClosureArg) -> Closure {
    match k {
        ClosureArg::N => Closure::Numerator,
        ClosureArg::D => Closure::Denominator,
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Color {
            file,
            modulus,
            quandle,
            enumerate,
        } => color(&file, modulus, quandle.as_deref(), enumerate),
        Command::Det { file } => det(&file),
        Command::Certify {
            file,
            mods,
            quandles,
            verify,
            seed,
        } => certify(&file, mods, &quandles, verify, seed),
        Command::Cut {
            file,
            arc,
            arc2,
            modulus,
            out,
        } => cut(&file, arc, arc2, modulus, out),
        Command::Build {
            rational,
            t_plus_tstar,
            closure,
            out,
        } => build(rational, t_plus_tstar, closure, out),
        Command::Closure { file, kind: k } => closure_cmd(&file, k),
        Command::Krebes { file } => krebes(&file),
        Command::Report { file, twists } => report(file.as_deref(), twists),
    }
}

fn color(
    file: &Path,
    modulus: Option<u32>,
    quandle: Option<&Path>,
    enumerate: Option<u64>,
) -> Result<Output> {
    let d = read_diagram(file)?;
    let (count, nontrivial, listed): (String, bool, Vec<Coloring>) = match (modulus, quandle) {
        (Some(n), None) => {
            let sols = fox_solution_space(&d, n, &BTreeMap::new())?;
            let listed = match enumerate {
                Some(cap) => sols.enumerate(cap)?,
                None => vec![],
            };
            (
                sols.count().to_string(),
                sols.nontrivial().is_some(),
                listed,
            )
        }
        (None, Some(path)) => {
            let q = read_quandle(path)?;
            let d = if q.is_involutory() || d.is_oriented() {
                d.clone()
            } else {
                d.oriented()
            };
            let cap = enumerate.unwrap_or(1_000_000) as usize;
            let found = quandle_colorings(&d, &q, &BTreeMap::new(), cap)?;
            let count = if found.complete {
                found.colorings.len().to_string()
            } else {
                format!(">={}", found.colorings.len())
            };
            let nontrivial = found.colorings.iter().any(Coloring::is_nontrivial);
            let listed = if enumerate.is_some() {
                found.colorings
            } else {
                vec![]
            };
            (count, nontrivial, listed)
        }
        _ => bail!("give exactly one of --mod or --quandle"),
    };
    let mut text = format!("{count} colorings, nontrivial: {}\n", yes(nontrivial));
    for c in &listed {
        let row: Vec<String> = c.colors.iter().map(|(a, v)| format!("{a}:{v}")).collect();
        let _ = writeln!(text, "  {}", row.join(" "));
    }
    let json = json!({
        "count": count,
        "nontrivial": nontrivial,
        "colorings": listed.iter().map(ColoringJson::from).collect::<Vec<_>>(),
    });
    Ok(Output {
        text,
        json,
        found: nontrivial,
    })
}

fn det(file: &Path) -> Result<Output> {
    let d = read_diagram(file)?;
    if !d.is_closed() {
        bail!("determinant needs a closed diagram");
    }
    let components = d.components().count();
    let value = link_determinant(&d);
    Ok(Output {
        text: format!(
            "determinant {value} ({components} component{})\n",
            if components == 1 { "" } else { "s" }
        ),
        json: json!({ "determinant": value, "components": components }),
        found: true,
    })
}

fn certificate_json(c: &Certificate, tangle: Option<&str>) -> Value {
    serde_json::to_value(c.to_json(tangle)).expect("serializable")
}

fn certify(
    file: &Path,
    mods: Option<Vec<u32>>,
    quandles: &[PathBuf],
    trials: usize,
    seed: u64,
) -> Result<Output> {
    let t = read_tangle(file)?;
    let quandles = quandles
        .iter()
        .map(|p| read_quandle(p))
        .collect::<Result<Vec<_>>>()?;
    let out = find_certificate(
        &t,
        &SearchOptions {
            moduli: mods,
            quandles,
        },
    )?;
    let name = file.display().to_string();
    let Some(cert) = out.certificate else {
        let mut reasons = vec![];
        if let Some(clash) = out.obstruction.as_ref().and_then(|o| o.clash.as_ref()) {
            reasons.push(format!(
                "inconsistency at crossing {} ({})",
                clash.crossing, clash.equation
            ));
        }
        if out.krebes_gcd == Some(1) {
            reasons.push("krebes gcd = 1".into());
        }
        if reasons.is_empty() {
            reasons.push(format!("no certificate for moduli {:?}", out.moduli));
        }
        let reason = reasons.join("; ");
        return Ok(Output {
            text: format!("none: {reason}\n"),
            json: json!({ "tangle": name, "certificate": null, "reason": reason, "obstruction": out.obstruction }),
            found: false,
        });
    };
    let mut json = certificate_json(&cert, Some(&name));
    let mut text = format!(
        "certificate: {}, boundary color {}, witness arcs {} and {}\n",
        describe(&cert),
        cert.boundary_color,
        cert.witness.0,
        cert.witness.1
    );
    if trials > 0 {
        let report = verify_certificate(&t, &cert, trials, seed)?;
        if let Some(pd) = &report.counterexample {
            bail!("certificate failed on a host closure:\n{pd}");
        }
        let _ = writeln!(
            text,
            "verified on {} knot closures ({} link closures skipped)",
            report.checked, report.skipped
        );
        json["verification"] = serde_json::to_value(&report)?;
    }
    Ok(Output {
        text,
        json,
        found: true,
    })
}

fn describe(c: &Certificate) -> String {
    match (c.modulus(), &c.kind) {
        (Some(n), _) => format!("Fox mod {n}"),
        (None, ptangle_core::CertificateKind::Quandle(q)) => format!("quandle {q}"),
        (None, _) => unreachable!("Fox certificates carry a modulus"),
    }
}

/// Lexicographically smallest nontrivial coloring (by label order) in which
/// the given arcs share a color.
fn pick_coloring(d: &Diagram, n: u32, same: &[ArcLabel]) -> Result<Coloring> {
    let sols = fox_solution_space(d, n, &BTreeMap::new())?;
    if sols.nontrivial().is_none() {
        bail!("no nontrivial coloring mod {n}");
    }
    let all = sols.enumerate(10_000_000)?;
    all.into_iter()
        .filter(|c| c.is_nontrivial() && same.windows(2).all(|w| c.get(w[0]) == c.get(w[1])))
        .min_by(|a, b| a.colors.values().cmp(b.colors.values()))
        .with_context(|| format!("arcs {same:?} differ under every nontrivial coloring mod {n}"))
}

fn cut(file: &Path, arc: u32, arc2: Option<u32>, n: u32, out: Option<PathBuf>) -> Result<Output> {
    let d = read_diagram(file)?;
    let a = ArcLabel(arc);
    for x in std::iter::once(arc).chain(arc2) {
        if !d.contains(ArcLabel(x)) {
            bail!("no arc {x} in {}", file.display());
        }
    }
    let (t, cert, moves) = match arc2 {
        Some(b) => {
            let c = pick_coloring(&d, n, &[a, ArcLabel(b)])?;
            cut_two_arcs(&d, &c, a, ArcLabel(b))?
        }
        None => {
            let c = pick_coloring(&d, n, &[a])?;
            let (t, cert) = cut_arc_twice(&d, &c, a)?;
            (t, cert, vec![])
        }
    };
    let pd = t.diagram().to_pd().trim_end().to_string();
    let mut text = format!(
        "{} R2 moves; certificate {}, boundary color {}\n",
        moves.len(),
        describe(&cert),
        cert.boundary_color
    );
    let json = match &out {
        Some(prefix) => {
            let pd_path = prefix.with_extension("pd");
            let cert_path = prefix.with_extension("cert.json");
            fs::write(&pd_path, format!("{pd}\n"))?;
            let cj = certificate_json(&cert, Some(&pd_path.display().to_string()));
            fs::write(&cert_path, serde_json::to_string_pretty(&cj)?)?;
            let _ = writeln!(
                text,
                "wrote {} and {}",
                pd_path.display(),
                cert_path.display()
            );
            json!({ "tangle_file": pd_path, "certificate_file": cert_path, "certificate": cj })
        }
        None => {
            let _ = writeln!(text, "{pd}");
            json!({ "tangle_pd": pd, "certificate": certificate_json(&cert, None) })
        }
    };
    Ok(Output {
        text,
        json,
        found: true,
    })
}

fn emit(pd: &str, out: &Option<PathBuf>, text: &mut String) -> Result<Value> {
    match out {
        Some(p) => {
            fs::write(p, format!("{pd}\n"))?;
            let _ = writeln!(text, "wrote {}", p.display());
            Ok(json!(p))
        }
        None => {
            let _ = writeln!(text, "{pd}");
            Ok(Value::Null)
        }
    }
}

fn build(
    rational: Option<Vec<i64>>,
    t_plus_tstar: Option<Vec<i64>>,
    closure_kind: Option<ClosureArg>,
    out: Option<PathBuf>,
) -> Result<Output> {
    let mut text = String::new();
    if let Some(w) = rational {
        let f = tangle_fraction(&w)?;
        let t = rational_tangle(&w)?;
        let _ = writeln!(text, "rational tangle {w:?}, fraction {f}");
        let (pd, extra) = match closure_kind {
            Some(k) => {
                let d = closure(&t, kind(k))?;
                let det = link_determinant(&d);
                let comps = d.components().count();
                let _ = writeln!(text, "closure: {comps} component(s), determinant {det}");
                (
                    d.normalized().to_pd().trim_end().to_string(),
                    json!({ "components": comps, "determinant": det }),
                )
            }
            None => (t.diagram().to_pd().trim_end().to_string(), Value::Null),
        };
        let file = emit(&pd, &out, &mut text)?;
        let json = json!({ "twists": w, "fraction": f, "pd": pd, "file": file, "closure": extra });
        return Ok(Output {
            text,
            json,
            found: true,
        });
    }
    let w = t_plus_tstar.expect("clap requires one of the two");
    match build_t_plus_tstar(&w, &SearchOptions::default()) {
        Ok((t, cert)) => {
            let pd = t.diagram().to_pd().trim_end().to_string();
            let _ = writeln!(
                text,
                "T + T* for {w:?}: certificate {}, boundary color {}",
                describe(&cert),
                cert.boundary_color
            );
            let file = emit(&pd, &out, &mut text)?;
            let json = json!({ "twists": w, "pd": pd, "file": file, "certificate": certificate_json(&cert, None) });
            Ok(Output {
                text,
                json,
                found: true,
            })
        }
        Err(e @ (PersistenceError::NotFound(_) | PersistenceError::CannotExist(_))) => {
            let _ = writeln!(text, "none: {e}");
            let json = json!({ "twists": w, "certificate": null, "reason": e.to_string() });
            Ok(Output {
                text,
                json,
                found: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn closure_cmd(file: &Path, k: ClosureArg) -> Result<Output> {
    let t = read_tangle(file)?;
    let d = closure(&t, kind(k))?;
    let comps = d.components().count();
    let det = link_determinant(&d);
    let pd = d.to_pd().trim_end().to_string();
    Ok(Output {
        text: format!("{comps} component(s), determinant {det}\n{pd}\n"),
        json: json!({ "pd": pd, "components": comps, "determinant": det }),
        found: true,
    })
}

fn krebes(file: &Path) -> Result<Output> {
    let t = read_tangle(file)?;
    let n = link_determinant(&closure(&t, Closure::Numerator)?);
    let d = link_determinant(&closure(&t, Closure::Denominator)?);
    let g = krebes_gcd(&t)?;
    Ok(Output {
        text: format!("det N = {n}, det D = {d}, gcd = {g}\n"),
        json: json!({ "numerator": n, "denominator": d, "gcd": g }),
        found: true,
    })
}

fn report(file: Option<&Path>, twists: Option<Vec<i64>>) -> Result<Output> {
    let (t, w) = match (file, twists) {
        (Some(f), None) => (read_tangle(f)?, None),
        (None, Some(w)) => (rational_tangle(&w)?, Some(w)),
        _ => bail!("give a tangle file or --twists"),
    };
    let r = irreducibility_report(&t, w.as_deref())?;
    let mut text = String::new();
    if let Some(f) = r.fraction {
        let _ = writeln!(
            text,
            "fraction {f}{}",
            if r.fraction_reducible_hint {
                " (built from twists: rational)"
            } else {
                ""
            }
        );
    }
    for (name, e) in [("N", &r.numerator), ("D", &r.denominator)] {
        let _ = writeln!(
            text,
            "{name}: {} component(s), determinant {}, colorable mod {:?}",
            e.components, e.determinant, e.coloring_moduli
        );
    }
    let _ = writeln!(
        text,
        "krebes gcd {}\nlocal knots: {}\nverdict: {}",
        r.krebes_gcd, r.local_knots, r.verdict
    );
    Ok(Output {
        text,
        json: serde_json::to_value(&r)?,
        found: true,
    })
}
