//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptangle_core::colorings::{determinant, fox_solution_space, link_determinant};
use ptangle_core::moves::*;
use ptangle_core::persistence::*;
use ptangle_core::tangle::*;
use ptangle_core::{ArcLabel, Certificate, Coloring, Diagram, Palette, PersistenceError};

const HOSTS: usize = 100;
const SEED: u64 = 2024;

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn knot(name: &str) -> Diagram {
    Diagram::parse(&corpus(name)).unwrap()
}

fn tangle(name: &str) -> Tangle {
    Tangle::parse(&corpus(name)).unwrap()
}

/// Counts colorings mod `n` by trying every assignment of colors to strands.
fn brute_count(d: &Diagram, n: u32) -> u64 {
    let strands = d.strands();
    let index: BTreeMap<ArcLabel, usize> = strands
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |a| (*a, i)))
        .collect();
    let rel: Vec<[usize; 3]> = d
        .crossings()
        .iter()
        .map(|c| [index[&c.slots[0]], index[&c.slots[1]], index[&c.slots[2]]])
        .collect();
    let k = strands.len() as u32;
    let mut v = vec![0u32; k as usize];
    let mut count = 0;
    for idx in 0..u64::from(n).pow(k) {
        let mut t = idx;
        for x in v.iter_mut() {
            *x = (t % u64::from(n)) as u32;
            t /= u64::from(n);
        }
        if rel
            .iter()
            .all(|[i, o, j]| (v[*i] + v[*j]) % n == (2 * v[*o]) % n)
        {
            count += 1;
        }
    }
    count
}

struct Run {
    lines: Vec<String>,
    failed: bool,
    certificates: Vec<(String, Tangle, Certificate)>,
}

impl Run {
    fn report(&mut self, n: usize, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        self.failed |= !ok;
        self.lines
            .push(format!("criterion {n:>2}: {tag}  {detail}"));
    }

    fn keep(&mut self, name: impl Into<String>, t: &Tangle, c: &Certificate) {
        self.certificates.push((name.into(), t.clone(), c.clone()));
    }
}

fn counts_against_brute_force(run: &mut Run) {
    let files = [
        "trefoil.pd",
        "figure-eight.pd",
        "6_2.pd",
        "8_16.pd",
        "krebes.pd",
        "family-p3.pd",
        "irreducible-5-3.pd",
        "no-monochromatic-coloring.pd",
    ];
    let mut bad = vec![];
    let mut checked = 0;
    for f in files {
        let d = Diagram::parse(&corpus(f)).unwrap();
        assert!(d.len() <= 8);
        for n in 2..=7 {
            let fast = fox_solution_space(&d, n, &BTreeMap::new()).unwrap().count();
            checked += 1;
            if fast != BigUint::from(brute_count(&d, n)) {
                bad.push(format!("{f} mod {n}"));
            }
        }
    }
    run.report(
        1,
        bad.is_empty(),
        format!("{checked} (diagram, N) pairs, mismatches {bad:?}"),
    );
}

fn determinants(run: &mut Run) {
    let want = [
        ("trefoil.pd", 3),
        ("figure-eight.pd", 5),
        ("6_2.pd", 11),
        ("8_16.pd", 35),
    ];
    let got: Vec<u64> = want
        .iter()
        .map(|(f, _)| determinant(&knot(f)).unwrap())
        .collect();
    let exact = want.iter().zip(&got).all(|((_, w), g)| w == g);
    let divides = got[3].is_multiple_of(5) && got[2].is_multiple_of(11);
    run.report(
        2,
        exact && divides,
        format!("dets {got:?}, 5 | det 8_16 and 11 | det 6_2: {divides}"),
    );
}

fn krebes_family(run: &mut Run) {
    let mut got = vec![];
    let mut ok = true;
    for (f, p) in [
        ("krebes.pd", 3),
        ("family-p3.pd", 3),
        ("family-p5.pd", 5),
        ("family-p7.pd", 7),
    ] {
        let t = tangle(f);
        let out = find_certificate(&t, &SearchOptions::default()).unwrap();
        let m = out.certificate.as_ref().and_then(Certificate::modulus);
        ok &= m == Some(p);
        got.push(format!("{f}: {m:?}"));
        if let Some(c) = out.certificate {
            run.keep(f, &t, &c);
        }
    }
    run.report(3, ok, got.join(", "));
}

fn theorem_pipeline(run: &mut Run) {
    let d = knot("trefoil.pd");
    let c = fox_solution_space(&d, 3, &BTreeMap::new())
        .unwrap()
        .nontrivial()
        .unwrap();
    let (d2, c2, a1, a2, prep) = same_color_pair(&d, &c, Some(false))
        .unwrap()
        .expect("a same-colored pair");
    let co_facial = d2.co_facial(a1, a2).unwrap();
    let (t, cert, moves) = cut_two_arcs(&d2, &c2, a1, a2).unwrap();
    let report = verify_certificate(&t, &cert, HOSTS, SEED).unwrap();
    let ok = !co_facial && !moves.is_empty() && cert.modulus() == Some(3) && report.passed();
    run.report(
        5,
        ok,
        format!(
            "arcs {a1},{a2} (co-facial {co_facial}) after {} preparatory R2, {} transport moves, mod {:?}, {} closures verified",
            prep.len(),
            moves.len(),
            cert.modulus(),
            report.checked
        ),
    );
    run.keep("trefoil two-arc cut", &t, &cert);
}

fn linking_inflation(run: &mut Run) {
    let d = knot("6_2.pd");
    let c = fox_solution_space(&d, 11, &BTreeMap::new())
        .unwrap()
        .nontrivial()
        .unwrap();
    let (d2, c2, a1, a2, _) = same_color_pair(&d, &c, None)
        .unwrap()
        .expect("a same-colored pair");
    let color = c2.get(a1);
    let mut values = vec![];
    let mut ok = true;
    for k in 1..=3 {
        let cut = cut_two_arcs_linked(&d2, &c2, a1, a2, k).unwrap();
        let l = linking_sum(&cut.tangle).unwrap();
        ok &=
            cut.certificate.modulus() == Some(11) && Some(cut.certificate.boundary_color) == color;
        values.push(l.abs());
        run.keep(
            format!("6_2 linked cut k={k}"),
            &cut.tangle,
            &cut.certificate,
        );
    }
    ok &= values[0] > 0 && values.windows(2).all(|w| w[0] < w[1]);
    run.report(
        6,
        ok,
        format!("|linking sum| (half-units) for k=1,2,3: {values:?}, mod 11 kept: {ok}"),
    );
}

fn negative_controls(run: &mut Run) {
    let t9 = tangle("no-monochromatic-coloring.pd");
    let out = find_certificate(&t9, &SearchOptions::default()).unwrap();
    let clash = out.obstruction.as_ref().and_then(|o| o.clash.clone());
    let first = out.certificate.is_none() && clash.is_some();

    let t8 = tangle("irreducible-5-3.pd");
    let gcd = krebes_gcd(&t8).unwrap();
    let primes: Vec<u32> = (2..=97).filter(|p| (2..*p).all(|d| p % d != 0)).collect();
    let opts = SearchOptions {
        moduli: Some(primes),
        quandles: vec![],
    };
    let none8 = find_certificate(&t8, &opts).unwrap().certificate.is_none();
    run.report(
        7,
        first && gcd == 1 && none8,
        format!(
            "1/2+1/3: none, clash {:?}; det-5/det-3 tangle: gcd {gcd}, none for primes <= 97: {none8}",
            clash.map(|c| c.equation)
        ),
    );
}

fn move_invariance(run: &mut Run) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let count = |d: &Diagram, n| fox_solution_space(d, n, &BTreeMap::new()).unwrap().count();
    let same = |a: &Diagram, b: &Diagram| (2..=7).all(|n| count(a, n) == count(b, n));
    let (mut diagrams, mut applied, mut bad) = (0, 0, vec![]);
    while diagrams < 100 {
        let s = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=8);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..s as i32);
                if rng.gen() {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let d = Diagram::braid_closure(s, &word).unwrap();
        if d.len() > 8 {
            continue;
        }
        diagrams += 1;
        let labels: Vec<ArcLabel> = d.positions().into_keys().collect();
        let arc = labels[rng.gen_range(0..labels.len())];
        let (r1, _) = apply_r1_plus(&d, arc, rng.gen_range(0..4)).unwrap();
        let mut after = vec![("R1+", r1.clone())];
        for x in r1_minus_sites(&r1) {
            after.push(("R1-", apply_r1_minus(&r1, x).unwrap().0));
        }
        let target = labels[rng.gen_range(0..labels.len())];
        if arc != target {
            if let Ok((r2, _)) = apply_r2_over(&d, arc, target) {
                after.push(("R2+", r2));
            }
        }
        for (x, y) in r2_minus_sites(&d) {
            after.push(("R2-", apply_r2_minus(&d, x, y).unwrap().0));
        }
        for f in r3_sites(&d) {
            after.push(("R3", apply_r3(&d, f).unwrap().0));
        }
        for (kind, e) in &after {
            applied += 1;
            if !same(&d, e) {
                bad.push(format!("{kind} on {word:?}"));
            }
        }
        if arc != target && d.components().count() == 1 {
            let c = Coloring::constant(&d, Palette::Fox(3), 0);
            let tr = r2_transport(&d, &c, arc, target).unwrap();
            applied += 1;
            if determinant(&tr.diagram).unwrap() != determinant(&d).unwrap() {
                bad.push(format!("transport on {word:?}"));
            }
        }
    }
    run.report(
        8,
        bad.is_empty(),
        format!("{diagrams} diagrams, {applied} moves, failures {bad:?}"),
    );
}

fn rational_calculus(run: &mut Run) {
    let mut vectors: Vec<Vec<i64>> = vec![vec![]];
    let mut all = vec![];
    for _ in 0..4 {
        vectors = vectors
            .iter()
            .flat_map(|v| (-3..=3).map(move |a| [v.clone(), vec![a]].concat()))
            .collect();
        all.extend(vectors.clone());
    }
    let mut bad = vec![];
    for w in &all {
        let f = tangle_fraction(w).unwrap();
        let t = rational_tangle(w).unwrap();
        let mut dets = [
            link_determinant(&numerator_closure(&t).unwrap()),
            link_determinant(&denominator_closure(&t).unwrap()),
        ];
        let mut want = [f.p.unsigned_abs(), f.q.unsigned_abs()];
        dets.sort_unstable();
        want.sort_unstable();
        if dets != want {
            bad.push(w.clone());
        }
    }
    run.report(
        9,
        bad.is_empty(),
        format!("{} twist vectors, mismatches {bad:?}", all.len()),
    );
}

fn t_plus_tstar(run: &mut Run) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = vec![];
    let mut ok = true;
    let mut skipped = [0, 0];
    while done.len() < 20 {
        let len = rng.gen_range(1..=4);
        let w: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let f = tangle_fraction(&w).unwrap();
        // Integral T gives T + T* = 0; no certificate exists there.
        if f.q < 2 {
            skipped[0] += 1;
            continue;
        }
        // With q even the sum contains a closed loop, so no knot contains it.
        let t = rational_tangle(&w).unwrap();
        if tangle_add(&t, &mirror(&t))
            .unwrap()
            .diagram()
            .components()
            .closed_count()
            > 0
        {
            skipped[1] += 1;
            continue;
        }
        match build_t_plus_tstar(&w, &SearchOptions::default()) {
            Ok((t, c)) => {
                let r = verify_certificate(&t, &c, HOSTS, SEED).unwrap();
                ok &= r.passed() && r.checked > 0;
                done.push(format!("{f}:mod {}", c.modulus().unwrap_or(0)));
                run.keep(format!("T+T* {w:?}"), &t, &c);
            }
            Err(e) => {
                ok = false;
                done.push(format!("{f}:{e}"));
            }
        }
    }
    let integral = matches!(
        build_t_plus_tstar(&[3], &SearchOptions::default()),
        Err(PersistenceError::CannotExist(_))
    );
    run.report(
        10,
        ok && integral,
        format!(
            "{}; skipped {} integral and {} with a closed loop; integral [3] reported as impossible: {integral}",
            done.join(" "),
            skipped[0],
            skipped[1]
        ),
    );
}

fn soundness(run: &mut Run) {
    let mut bad = vec![];
    let mut closures = 0;
    for (name, t, c) in &run.certificates {
        let r = verify_certificate(t, c, HOSTS, SEED).unwrap();
        closures += r.checked;
        if !r.passed() {
            bad.push(name.clone());
        }
    }
    let n = run.certificates.len();
    run.report(
        4,
        bad.is_empty() && n > 0,
        format!("{n} certificates, {closures} knot closures checked, failures {bad:?}"),
    );
}

#[test]
fn acceptance() {
    let mut run = Run {
        lines: vec![],
        failed: false,
        certificates: vec![],
    };
    counts_against_brute_force(&mut run);
    determinants(&mut run);
    krebes_family(&mut run);
    theorem_pipeline(&mut run);
    linking_inflation(&mut run);
    negative_controls(&mut run);
    move_invariance(&mut run);
    rational_calculus(&mut run);
    t_plus_tstar(&mut run);
    soundness(&mut run);
    run.lines.sort();
    for l in &run.lines {
        println!("{l}");
    }
    assert!(!run.failed, "some criteria failed");
}
