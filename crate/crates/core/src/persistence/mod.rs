//! Persistent tangles from colorings.
//!
//! A certificate is a coloring of a tangle in which every endpoint carries
//! the same color and at least two arcs differ. Any closed diagram that
//! contains the tangle inherits a nontrivial coloring by painting everything
//! outside the tangle with the boundary color.

mod cut;
mod search;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::colorings::{link_determinant, Coloring, Palette, Quandle};
use crate::diagram::ArcLabel;
use crate::error::PersistenceError;
use crate::moves::MoveRecord;
use crate::tangle::{closure, Closure, Tangle, TangleFraction};

pub use cut::{
    cut_arc_once, cut_arc_twice, cut_two_arcs, cut_two_arcs_linked, open_two_arcs, same_color_pair,
    LinkedCut, SameColorPair,
};
pub use search::{
    build_t_plus_tstar, find_certificate, fox_obstruction, ClashWitness, FoxObstruction,
    SearchOptions, SearchOutcome, DEFAULT_PRIMES_BOUND,
};
pub use verify::{random_host, verify_certificate, HostResult, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Fox(u32),
    Quandle(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub boundary_color: u32,
    pub coloring: Coloring,
    pub witness: (ArcLabel, ArcLabel),
    pub moves: Vec<MoveRecord>,
}

/// Wire format of a certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tangle: Option<String>,
    pub kind: CertificateKind,
    pub boundary_color: u32,
    pub colors: BTreeMap<ArcLabel, u32>,
    pub witness: [ArcLabel; 2],
    #[serde(default)]
    pub moves: Vec<MoveRecord>,
}

impl Certificate {
    /// Checks `coloring` against `t` and packages it.
    pub fn assemble(
        t: &Tangle,
        coloring: Coloring,
        moves: Vec<MoveRecord>,
    ) -> Result<Self, PersistenceError> {
        let ends = t.endpoints();
        let boundary_color = coloring
            .get(ends[0])
            .ok_or(crate::error::ColoringError::MissingArc(ends[0]))?;
        for e in ends {
            if coloring.get(*e) != Some(boundary_color) {
                return Err(PersistenceError::ColorsDiffer(ends[0], *e));
            }
        }
        if !coloring.verify(t.diagram())? {
            return Err(PersistenceError::Malformed(
                "coloring violates a crossing relation".into(),
            ));
        }
        let witness = coloring
            .witness()
            .ok_or(PersistenceError::TrivialColoring)?;
        let kind = match &coloring.palette {
            Palette::Fox(n) => CertificateKind::Fox(*n),
            Palette::Quandle(q) => CertificateKind::Quandle(q.name().to_string()),
        };
        Ok(Certificate {
            kind,
            boundary_color,
            coloring,
            witness,
            moves,
        })
    }

    /// Re-checks every invariant against `t`.
    pub fn check(&self, t: &Tangle) -> Result<(), PersistenceError> {
        let again = Certificate::assemble(t, self.coloring.clone(), self.moves.clone())?;
        if again.boundary_color != self.boundary_color {
            return Err(PersistenceError::Malformed(
                "boundary color does not match the endpoints".into(),
            ));
        }
        let (a, b) = self.witness;
        if self.coloring.get(a).is_none() || self.coloring.get(a) == self.coloring.get(b) {
            return Err(PersistenceError::Malformed(
                "witness arcs do not differ".into(),
            ));
        }
        Ok(())
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.kind {
            CertificateKind::Fox(n) => Some(n),
            CertificateKind::Quandle(_) => None,
        }
    }

    pub fn to_json(&self, tangle: Option<&str>) -> CertificateJson {
        CertificateJson {
            tangle: tangle.map(str::to_string),
            kind: self.kind.clone(),
            boundary_color: self.boundary_color,
            colors: self.coloring.colors.clone(),
            witness: [self.witness.0, self.witness.1],
            moves: self.moves.clone(),
        }
    }

    /// Rebuilds a certificate; quandle kinds are resolved by name in `quandles`.
    pub fn from_json(
        j: &CertificateJson,
        quandles: &[Arc<Quandle>],
    ) -> Result<Self, PersistenceError> {
        let palette = match &j.kind {
            CertificateKind::Fox(n) => Palette::Fox(*n),
            CertificateKind::Quandle(name) => Palette::Quandle(
                quandles
                    .iter()
                    .find(|q| q.name() == name)
                    .cloned()
                    .ok_or_else(|| {
                        PersistenceError::Malformed(format!("unknown quandle `{name}`"))
                    })?,
            ),
        };
        Ok(Certificate {
            kind: j.kind.clone(),
            boundary_color: j.boundary_color,
            coloring: Coloring {
                palette,
                colors: j.colors.clone(),
            },
            witness: (j.witness[0], j.witness[1]),
            moves: j.moves.clone(),
        })
    }
}

/// gcd of the determinants of the two closures (link determinants for
/// 2-component closures, 0 allowed).
pub fn krebes_gcd(t: &Tangle) -> Result<u64, PersistenceError> {
    let n = link_determinant(&closure(t, Closure::Numerator)?);
    let d = link_determinant(&closure(t, Closure::Denominator)?);
    Ok(n.gcd(&d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEvidence {
    pub components: usize,
    pub determinant: u64,
    /// Primes p ≤ the search bound with a nontrivial Fox coloring mod p.
    pub coloring_moduli: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    /// Set when the tangle was built from a twist vector, hence rational.
    pub fraction_reducible_hint: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction: Option<TangleFraction>,
    pub numerator: ClosureEvidence,
    pub denominator: ClosureEvidence,
    pub krebes_gcd: u64,
    pub local_knots: String,
    pub verdict: String,
}

fn closure_evidence(
    t: &Tangle,
    kind: Closure,
    bound: u32,
) -> Result<ClosureEvidence, PersistenceError> {
    let d = closure(t, kind)?;
    let components = d.components().count();
    let determinant = link_determinant(&d);
    let coloring_moduli = search::primes_up_to(bound)
        .into_iter()
        .filter(|&p| crate::colorings::has_nontrivial_fox(&d, p).unwrap_or(false))
        .collect();
    Ok(ClosureEvidence {
        components,
        determinant,
        coloring_moduli,
    })
}

/// Evidence about whether `t` is rationally irreducible. Never a proof.
pub fn irreducibility_report(
    t: &Tangle,
    twists: Option<&[i64]>,
) -> Result<IrreducibilityReport, PersistenceError> {
    let fraction = match twists {
        Some(w) => Some(crate::tangle::tangle_fraction(w)?),
        None if t.diagram().crossings().is_empty() && t.diagram().circles().is_empty() => t.coloring_fraction(),
        None => None,
    };
    let numerator = closure_evidence(t, Closure::Numerator, DEFAULT_PRIMES_BOUND)?;
    let denominator = closure_evidence(t, Closure::Denominator, DEFAULT_PRIMES_BOUND)?;
    let gcd = numerator.determinant.gcd(&denominator.determinant);
    let knotted = |e: &ClosureEvidence| {
        e.components != 1 || e.determinant != 1 || !e.coloring_moduli.is_empty()
    };
    let verdict = if let Some(f) = fraction.filter(|f| f.is_zero() || f.is_infinite()) {
        format!(
            "excluded: {} tangle",
            if f.is_zero() { "zero" } else { "infinity" }
        )
    } else if twists.is_some() {
        "rational by construction; not irreducible".to_string()
    } else if knotted(&numerator) && knotted(&denominator) {
        "consistent with irreducible".to_string()
    } else {
        "inconclusive: a 1-component closure has determinant 1 and no coloring evidence".to_string()
    };
    Ok(IrreducibilityReport {
        fraction_reducible_hint: twists.is_some(),
        fraction,
        numerator,
        denominator,
        krebes_gcd: gcd,
        local_knots: "not checked".into(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::rational_tangle;

    #[test]
    fn zero_tangle_is_excluded() {
        let r = irreducibility_report(&Tangle::zero(), None).unwrap();
        assert_eq!(r.verdict, "excluded: zero tangle");
        assert_eq!(r.krebes_gcd, 1);
        assert_eq!(krebes_gcd(&Tangle::zero()).unwrap(), 1);
    }

    #[test]
    fn twist_vectors_are_flagged() {
        let r = irreducibility_report(&rational_tangle(&[2, 2]).unwrap(), Some(&[2, 2])).unwrap();
        assert!(r.fraction_reducible_hint);
        assert_eq!(r.fraction, Some(TangleFraction::new(5, 2)));
        assert_eq!(r.local_knots, "not checked");
    }

    #[test]
    fn json_round_trip() {
        let t = rational_tangle(&[3, 0]).unwrap();
        let sum = crate::tangle::tangle_add(&t, &t).unwrap();
        let out = find_certificate(&sum, &SearchOptions::default()).unwrap();
        let c = out.certificate.unwrap();
        let j = serde_json::to_string(&c.to_json(Some("x.pd"))).unwrap();
        assert!(j.contains("\"kind\":{\"fox\":3}"), "{j}");
        let back = Certificate::from_json(&serde_json::from_str(&j).unwrap(), &[]).unwrap();
        assert_eq!(back, c);
    }
}
