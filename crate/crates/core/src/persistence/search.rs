//! Boundary-monochromatic coloring search and the T + T* construction.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::colorings::{diagonalize, fox_solution_space, quandle_colorings, Quandle, StrandSystem};
use crate::diagram::ArcLabel;
use crate::error::PersistenceError;
use crate::tangle::{mirror, rational_tangle, tangle_add, tangle_fraction, Tangle};

use super::{krebes_gcd, Certificate};

/// Fallback modulus bound when the Krebes gcd says nothing.
pub const DEFAULT_PRIMES_BOUND: u32 = 97;

pub(crate) fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

fn prime_divisors(mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u32);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Fox moduli to try; `None` picks them from the Krebes gcd.
    pub moduli: Option<Vec<u32>>,
    pub quandles: Vec<Arc<Quandle>>,
}

/// The first contradiction met while propagating colors from the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClashWitness {
    pub crossing: usize,
    /// Arc whose two derived values disagree.
    pub arc: ArcLabel,
    /// The contradiction, in letters: `a` is the boundary color and
    /// `b, c, ...` the free choices made while propagating.
    pub equation: String,
}

/// The Fox system with all endpoints pinned to one color, over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoxObstruction {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clash: Option<ClashWitness>,
    /// Nonunit invariant factors of the pinned system.
    pub torsion: Vec<u64>,
    /// Unknowns left free.
    pub free: usize,
}

impl FoxObstruction {
    /// True when no modulus at all admits a nonconstant boundary-monochromatic Fox coloring.
    pub fn excludes_every_modulus(&self) -> bool {
        self.torsion.is_empty() && self.free == 0
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    pub moduli: Vec<u32>,
    pub quandles: Vec<String>,
    pub krebes_gcd: Option<u64>,
    /// Present when nothing was found.
    pub obstruction: Option<FoxObstruction>,
}

/// Integer linear form over the propagation variables.
type Form = BTreeMap<usize, i64>;

fn combine(x: &Form, kx: i64, y: &Form, ky: i64) -> Form {
    let mut out = Form::new();
    for (v, c) in x
        .iter()
        .map(|(v, c)| (*v, c * kx))
        .chain(y.iter().map(|(v, c)| (*v, c * ky)))
    {
        *out.entry(v).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn var_name(v: usize) -> String {
    let letters = b"bcdefghijklmnopqrstuvwxyz";
    match letters.get(v) {
        Some(l) => (*l as char).to_string(),
        None => format!("x{v}"),
    }
}

/// Writes a form as an affine combination of `a` and the variables.
fn show(f: &Form) -> String {
    let mut terms: Vec<(i64, String)> = f.iter().map(|(v, c)| (*c, var_name(*v))).collect();
    let a = 1 - f.values().sum::<i64>();
    if a != 0 {
        terms.insert(0, (a, "a".into()));
    }
    let mut s = String::new();
    for (i, (c, name)) in terms.iter().enumerate() {
        let sign = if *c < 0 { "-" } else { "+" };
        if i == 0 {
            if *c < 0 {
                s.push('-');
            }
        } else {
            let _ = write!(s, " {sign} ");
        }
        if c.abs() != 1 {
            let _ = write!(s, "{}", c.abs());
        }
        s.push_str(name);
    }
    s
}

/// Propagates colors symbolically from monochromatic endpoints, records
/// the first contradiction, and diagonalizes the whole pinned system.
pub fn fox_obstruction(t: &Tangle) -> FoxObstruction {
    let d = t.diagram();
    let sys = StrandSystem::new(d);
    let n = sys.strands().len();
    let mut value: Vec<Option<Form>> = vec![None; n];
    for e in t.endpoints() {
        value[sys.strand_of(*e).expect("endpoint on a strand")] = Some(Form::new());
    }
    let mut vars = 0;
    let mut first: Option<(usize, usize, Form, Form)> = None;
    loop {
        let mut changed = false;
        for r in sys.relations() {
            let (i, o, x) = (&value[r.incoming], &value[r.outgoing], &value[r.over]);
            let Some(x) = x.clone() else { continue };
            let derived = match (i, o) {
                (Some(i), _) => Some((r.outgoing, combine(&x, 2, i, -1))),
                (None, Some(o)) => Some((r.incoming, combine(&x, 2, o, -1))),
                _ => None,
            };
            let Some((s, f)) = derived else { continue };
            match &value[s] {
                None => {
                    value[s] = Some(f);
                    changed = true;
                }
                Some(have) if *have != f && first.is_none() => {
                    first = Some((r.crossing, s, have.clone(), f));
                }
                _ => {}
            }
        }
        if first.is_some() {
            break;
        }
        if !changed {
            match value.iter().position(Option::is_none) {
                Some(s) => {
                    value[s] = Some([(vars, 1)].into_iter().collect());
                    vars += 1;
                }
                None => break,
            }
        }
    }
    let clash = first.map(|(crossing, strand, have, derived)| {
        let diff = combine(&have, 1, &derived, -1);
        let equation = match diff.iter().collect::<Vec<_>>().as_slice() {
            [(u, cu), (v, cv)] if **cu == -**cv => format!("{} = {}", var_name(**v), var_name(**u)),
            [(u, _)] => format!("{} = a", var_name(**u)),
            _ => format!("{} = {}", show(&have), show(&derived)),
        };
        ClashWitness {
            crossing,
            arc: sys.strands()[strand][0],
            equation,
        }
    });

    // Full pinned system over the integers: one row per crossing and per endpoint.
    let mut rows: Vec<Vec<i128>> = sys
        .relations()
        .iter()
        .map(|r| {
            let mut row = vec![0i128; n];
            row[r.outgoing] += 1;
            row[r.incoming] += 1;
            row[r.over] -= 2;
            row
        })
        .collect();
    for e in t.endpoints() {
        let mut row = vec![0i128; n];
        row[sys.strand_of(*e).expect("endpoint on a strand")] = 1;
        rows.push(row);
    }
    let m = rows.len();
    let diag = diagonalize(rows, vec![0; m], n, 0);
    let torsion = diag
        .diag
        .iter()
        .map(|x| x.unsigned_abs() as u64)
        .filter(|x| *x > 1)
        .collect();
    FoxObstruction {
        clash,
        torsion,
        free: n - diag.rank(),
    }
}

fn default_moduli(t: &Tangle) -> (Vec<u32>, Option<u64>) {
    if t.endpoints().len() != 4 {
        return (primes_up_to(DEFAULT_PRIMES_BOUND), None);
    }
    match krebes_gcd(t) {
        Ok(g) if g > 1 => (prime_divisors(g), Some(g)),
        Ok(g) => (primes_up_to(DEFAULT_PRIMES_BOUND), Some(g)),
        Err(_) => (primes_up_to(DEFAULT_PRIMES_BOUND), None),
    }
}

/// Searches Fox moduli (lowest first) and then quandles for a nontrivial
/// coloring with all endpoints equal.
pub fn find_certificate(
    t: &Tangle,
    opts: &SearchOptions,
) -> Result<SearchOutcome, PersistenceError> {
    let (moduli, gcd) = match &opts.moduli {
        Some(m) => {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            (
                m,
                if t.endpoints().len() == 4 {
                    krebes_gcd(t).ok()
                } else {
                    None
                },
            )
        }
        None => default_moduli(t),
    };
    let names = opts.quandles.iter().map(|q| q.name().to_string()).collect();
    let mut outcome = SearchOutcome {
        certificate: None,
        moduli: moduli.clone(),
        quandles: names,
        krebes_gcd: gcd,
        obstruction: None,
    };
    let d = t.diagram();
    for &n in &moduli {
        let pins: BTreeMap<ArcLabel, u32> = t.endpoints().iter().map(|e| (*e, 0)).collect();
        if let Some(c) = fox_solution_space(d, n, &pins)?.nontrivial() {
            outcome.certificate = Some(Certificate::assemble(t, c, vec![])?);
            return Ok(outcome);
        }
    }
    for q in &opts.quandles {
        if !q.is_involutory() && !d.is_oriented() {
            continue;
        }
        for e in 0..q.size() {
            let pins: BTreeMap<ArcLabel, u32> = t.endpoints().iter().map(|a| (*a, e)).collect();
            let found = quandle_colorings(d, q, &pins, 2)?;
            if let Some(c) = found.colorings.into_iter().find(|c| c.is_nontrivial()) {
                outcome.certificate = Some(Certificate::assemble(t, c, vec![])?);
                return Ok(outcome);
            }
        }
    }
    outcome.obstruction = Some(fox_obstruction(t));
    Ok(outcome)
}

/// The sum of the rational tangle with the given twists and its mirror
/// image, with a certificate.
pub fn build_t_plus_tstar(
    twists: &[i64],
    opts: &SearchOptions,
) -> Result<(Tangle, Certificate), PersistenceError> {
    let f = tangle_fraction(twists)?;
    if f.is_zero() || f.is_infinite() {
        return Err(PersistenceError::Degenerate(format!(
            "twists give the {f} tangle"
        )));
    }
    let t = rational_tangle(twists)?;
    let sum = tangle_add(&t, &mirror(&t))?;
    let outcome = find_certificate(&sum, opts)?;
    if let Some(c) = outcome.certificate {
        return Ok((sum, c));
    }
    let palette_note = if opts.quandles.is_empty() {
        ""
    } else {
        " (quandles searched too)"
    };
    match outcome.obstruction {
        Some(k) if k.excludes_every_modulus() && opts.quandles.is_empty() => {
            Err(PersistenceError::CannotExist(format!(
                "fraction {f}: every Fox coloring with equal endpoints is constant"
            )))
        }
        _ => Err(PersistenceError::NotFound(format!(
            "fraction {f}: no certificate for moduli {:?}{palette_note}",
            outcome.moduli
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_divisors() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(97).len(), 25);
        assert_eq!(prime_divisors(49), vec![7]);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert!(prime_divisors(1).is_empty());
    }

    #[test]
    fn forms_print_as_affine_combinations() {
        let f: Form = [(0, 2)].into_iter().collect();
        assert_eq!(show(&f), "-a + 2b");
        assert_eq!(show(&Form::new()), "a");
        let g: Form = [(0, 2), (1, -1)].into_iter().collect();
        assert_eq!(show(&g), "2b - c");
    }

    #[test]
    fn integer_twist_sum_cannot_be_certified() {
        let err = build_t_plus_tstar(&[3], &SearchOptions::default()).unwrap_err();
        assert!(matches!(err, PersistenceError::CannotExist(_)), "{err}");
        assert!(matches!(
            build_t_plus_tstar(&[0], &SearchOptions::default()),
            Err(PersistenceError::Degenerate(_))
        ));
    }

    #[test]
    fn t_plus_tstar_with_denominator_seven() {
        let (t, c) = build_t_plus_tstar(&[2, 3, 0], &SearchOptions::default()).unwrap();
        assert_eq!(c.modulus(), Some(7));
        c.check(&t).unwrap();
    }
}
