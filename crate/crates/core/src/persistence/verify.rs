//! Checking a certificate against sampled host tangles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colorings::Coloring;
use crate::diagram::Diagram;
use crate::error::PersistenceError;
use crate::tangle::{
    close_one_tangle, insert_into_host, partial_closure, rational_tangle, Closure, Tangle,
};

use super::Certificate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HostResult {
    /// Twist vector of the host (empty for the 0-tangle, `[0, 0]` for ∞).
    pub host: Vec<i64>,
    /// Closure used, absent for 1-tangles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<Closure>,
    pub components: usize,
    /// `None` when the closure is a link and was skipped.
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub hosts: Vec<HostResult>,
    pub checked: usize,
    pub skipped: usize,
    /// PD code of the first closure where the extension failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A random rational tangle with 1 to 4 twists, each in [-3, 3].
pub fn random_host(rng: &mut impl Rng) -> Result<(Vec<i64>, Tangle), PersistenceError> {
    let len = rng.gen_range(1..=4);
    let twists: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    let t = rational_tangle(&twists)?;
    Ok((twists, t))
}

/// Extends the certificate by its boundary color to a closure containing `t`.
/// Labels of `t` survive in the closure; everything else is new.
fn extend(cert: &Certificate, t: &Tangle, closed: &Diagram) -> Coloring {
    let top = t.diagram().max_label();
    let colors = closed
        .labels()
        .into_iter()
        .map(|a| {
            let v = if a.0 <= top {
                cert.coloring.get(a)
            } else {
                None
            };
            (a, v.unwrap_or(cert.boundary_color))
        })
        .collect();
    Coloring {
        palette: cert.coloring.palette.clone(),
        colors,
    }
}

fn check_closure(
    cert: &Certificate,
    t: &Tangle,
    closed: &Diagram,
) -> Result<bool, PersistenceError> {
    let c = extend(cert, t, closed);
    Ok(c.verify(closed)? && c.is_nontrivial())
}

/// Places `t` in the 0 and ∞ hosts and in `trials` seeded random rational
/// hosts; every 1-component closure must carry the extended coloring.
/// The certificate's interior is not pre-checked, so a broken one shows
/// up as a failing host. Stops at the first failure.
pub fn verify_certificate(
    t: &Tangle,
    cert: &Certificate,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, PersistenceError> {
    for e in t.endpoints() {
        if cert.coloring.get(*e) != Some(cert.boundary_color) {
            return Err(PersistenceError::Malformed(format!(
                "endpoint {e} does not carry the boundary color"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hosts: Vec<(Vec<i64>, Tangle)> =
        vec![(vec![], Tangle::zero()), (vec![0, 0], Tangle::infinity())];
    for _ in 0..trials {
        hosts.push(random_host(&mut rng)?);
    }
    let mut report = VerificationReport {
        seed,
        trials,
        hosts: vec![],
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    for (twists, host) in hosts {
        let closures: Vec<(Option<Closure>, Diagram)> = if t.endpoints().len() == 2 {
            vec![(None, close_one_tangle(t, &partial_closure(&host)?)?)]
        } else {
            [Closure::Numerator, Closure::Denominator]
                .into_iter()
                .map(|k| Ok((Some(k), insert_into_host(t, &host, k)?)))
                .collect::<Result<_, PersistenceError>>()?
        };
        for (closure, closed) in closures {
            let components = closed.components().count();
            let passed = if components == 1 {
                Some(check_closure(cert, t, &closed)?)
            } else {
                None
            };
            match passed {
                None => report.skipped += 1,
                Some(_) => report.checked += 1,
            }
            report.hosts.push(HostResult {
                host: twists.clone(),
                closure,
                components,
                passed,
            });
            if passed == Some(false) {
                report.counterexample = Some(closed.to_pd());
                return Ok(report);
            }
        }
    }
    Ok(report)
}
