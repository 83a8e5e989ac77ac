//! Fox colorings mod N, finite quandles and their colorings, determinants.
//!
//! Unknowns are Fox arcs ("strands"): edge labels merged across the
//! over-strand of every crossing. A Fox coloring mod N is the same thing as
//! a coloring by the dihedral quandle of order N, whose operation is
//! `a * b = 2b - a`.

mod determinant;
mod linear;
mod quandle;
pub mod system;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::diagram::{ArcLabel, Diagram, Sign};
use crate::error::ColoringError;

pub use determinant::{determinant, fox_matrix, link_determinant};
pub(crate) use linear::{diagonalize, solve_mod};
pub use quandle::{dihedral, Quandle};
pub use system::{Clash, Extension, StrandSystem};

/// Enumeration cap used when callers do not pass one.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Where colors live: residues mod N under the Fox rule, or a finite quandle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Palette {
    Fox(u32),
    Quandle(Arc<Quandle>),
}

impl Palette {
    pub fn size(&self) -> u32 {
        match self {
            Palette::Fox(n) => *n,
            Palette::Quandle(q) => q.size(),
        }
    }

    pub fn is_involutory(&self) -> bool {
        match self {
            Palette::Fox(_) => true,
            Palette::Quandle(q) => q.is_involutory(),
        }
    }

    /// Color leaving a crossing on the under-strand, given the incoming
    /// under-color `a` and the over-color `b`. Unsigned crossings use `*`.
    pub fn act(&self, a: u32, b: u32, sign: Option<Sign>) -> u32 {
        match self {
            Palette::Fox(n) => {
                let n = u64::from(*n);
                ((2 * u64::from(b) + n - u64::from(a)) % n) as u32
            }
            Palette::Quandle(q) => match sign {
                Some(Sign::Negative) => q.op_inv(a, b),
                _ => q.op(a, b),
            },
        }
    }

    /// Inverse of [`Palette::act`]: the incoming color from the outgoing one.
    pub fn act_inv(&self, c: u32, b: u32, sign: Option<Sign>) -> u32 {
        match sign {
            Some(Sign::Negative) => self.act(c, b, Some(Sign::Positive)),
            _ => self.act(c, b, Some(Sign::Negative)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Palette::Fox(n) => format!("fox-{n}"),
            Palette::Quandle(q) => q.name().to_string(),
        }
    }
}

/// A map from every arc label of a diagram to a palette element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub palette: Palette,
    pub colors: BTreeMap<ArcLabel, u32>,
}

impl Coloring {
    pub fn fox(modulus: u32, colors: BTreeMap<ArcLabel, u32>) -> Self {
        Coloring {
            palette: Palette::Fox(modulus),
            colors,
        }
    }

    pub fn constant(d: &Diagram, palette: Palette, value: u32) -> Self {
        let colors = d.labels().into_iter().map(|a| (a, value)).collect();
        Coloring { palette, colors }
    }

    pub fn get(&self, a: ArcLabel) -> Option<u32> {
        self.colors.get(&a).copied()
    }

    /// At least two arcs carry distinct colors.
    pub fn is_nontrivial(&self) -> bool {
        let mut it = self.colors.values();
        match it.next() {
            None => false,
            Some(first) => it.any(|c| c != first),
        }
    }

    /// Two arcs with distinct colors, smallest labels first.
    pub fn witness(&self) -> Option<(ArcLabel, ArcLabel)> {
        let (&a, &ca) = self.colors.iter().next()?;
        self.colors
            .iter()
            .find(|(_, c)| **c != ca)
            .map(|(b, _)| (a, *b))
    }

    /// Checks every crossing relation; errors if an arc is uncolored.
    pub fn verify(&self, d: &Diagram) -> Result<bool, ColoringError> {
        for a in d.labels() {
            let c = self.get(a).ok_or(ColoringError::MissingArc(a))?;
            if c >= self.palette.size() {
                return Err(ColoringError::ColorRange {
                    color: c,
                    size: self.palette.size(),
                });
            }
        }
        if !self.palette.is_involutory() && !d.is_oriented() {
            return Err(ColoringError::OrientationRequired);
        }
        Ok(d.crossings().iter().all(|x| {
            let [s0, s1, s2, s3] = x.slots.map(|a| self.colors[&a]);
            s1 == s3 && s2 == self.palette.act(s0, s1, x.sign)
        }))
    }

    /// Affine image `u * c + v` of a Fox coloring.
    pub fn affine(&self, unit: u32, shift: u32) -> Coloring {
        let n = u64::from(self.palette.size());
        let colors = self
            .colors
            .iter()
            .map(|(a, c)| {
                (
                    *a,
                    ((u64::from(unit) * u64::from(*c) + u64::from(shift)) % n) as u32,
                )
            })
            .collect();
        Coloring {
            palette: self.palette.clone(),
            colors,
        }
    }

    /// Restriction to the labels of `d`.
    pub fn restrict(&self, d: &Diagram) -> Coloring {
        let colors = d
            .labels()
            .into_iter()
            .filter_map(|a| self.get(a).map(|c| (a, c)))
            .collect();
        Coloring {
            palette: self.palette.clone(),
            colors,
        }
    }
}

/// Serializable view of a coloring.
#[derive(Clone, Debug, Serialize)]
pub struct ColoringJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quandle: Option<String>,
    pub colors: BTreeMap<ArcLabel, u32>,
    pub nontrivial: bool,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        let (modulus, quandle) = match &c.palette {
            Palette::Fox(n) => (Some(*n), None),
            Palette::Quandle(q) => (None, Some(q.name().to_string())),
        };
        ColoringJson {
            modulus,
            quandle,
            colors: c.colors.clone(),
            nontrivial: c.is_nontrivial(),
        }
    }
}

/// The affine space of Fox colorings mod N satisfying a set of pins.
#[derive(Clone, Debug)]
pub struct FoxSolutions {
    modulus: u32,
    strands: Vec<Vec<ArcLabel>>,
    particular: Option<Vec<u64>>,
    generators: Vec<(Vec<u64>, u64)>,
}

impl FoxSolutions {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn count(&self) -> BigUint {
        match &self.particular {
            None => BigUint::from(0u32),
            Some(_) => self
                .generators
                .iter()
                .fold(BigUint::from(1u32), |acc, (_, o)| acc * *o),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Strand representatives, in unknown order.
    pub fn strands(&self) -> &[Vec<ArcLabel>] {
        &self.strands
    }

    fn to_coloring(&self, values: &[u64]) -> Coloring {
        let mut colors = BTreeMap::new();
        for (s, labels) in self.strands.iter().enumerate() {
            for a in labels {
                colors.insert(*a, values[s] as u32);
            }
        }
        Coloring::fox(self.modulus, colors)
    }

    /// The color of `a`, when every solution agrees on it.
    pub fn fixed_value(&self, a: ArcLabel) -> Option<u32> {
        let x0 = self.particular.as_ref()?;
        let s = self.strands.iter().position(|st| st.contains(&a))?;
        self.generators
            .iter()
            .all(|(g, _)| g[s] == 0)
            .then(|| x0[s] as u32)
    }

    /// All solutions, provided their number does not exceed `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Coloring>, ColoringError> {
        let count = self.count();
        if count > BigUint::from(cap) {
            return Err(ColoringError::CapExceeded {
                count: count.to_string(),
                cap,
            });
        }
        let Some(x0) = &self.particular else {
            return Ok(vec![]);
        };
        let n = u64::from(self.modulus);
        let total = count.to_u64().unwrap_or(0);
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; self.generators.len()];
        loop {
            let mut x = x0.clone();
            for ((g, _), k) in self.generators.iter().zip(&digits) {
                for (xi, gi) in x.iter_mut().zip(g) {
                    *xi = (*xi + k * gi) % n;
                }
            }
            out.push(self.to_coloring(&x));
            // mixed-radix increment
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < self.generators[i].1 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// A solution with at least two distinct colors, if one exists.
    /// Found without enumeration: either the particular solution is
    /// nonconstant, or adding a nonconstant generator to it is.
    pub fn nontrivial(&self) -> Option<Coloring> {
        let x0 = self.particular.as_ref()?;
        let nonconstant = |v: &[u64]| v.windows(2).any(|w| w[0] != w[1]);
        if nonconstant(x0) {
            return Some(self.to_coloring(x0));
        }
        let n = u64::from(self.modulus);
        for (g, _) in &self.generators {
            if nonconstant(g) {
                let x: Vec<u64> = x0.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
                return Some(self.to_coloring(&x));
            }
        }
        None
    }

    /// Lexicographically smallest nontrivial solution (strand order), by enumeration.
    pub fn lowest_nontrivial(&self, cap: u64) -> Result<Option<Coloring>, ColoringError> {
        let mut best: Option<(Vec<u32>, Coloring)> = None;
        for c in self.enumerate(cap)? {
            if !c.is_nontrivial() {
                continue;
            }
            let key: Vec<u32> = self.strands.iter().map(|s| c.colors[&s[0]]).collect();
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, c));
            }
        }
        Ok(best.map(|(_, c)| c))
    }
}

/// Solves the Fox relations mod `modulus` subject to `pins`.
/// Conflicting pins give an empty solution set.
pub fn fox_solution_space(
    d: &Diagram,
    modulus: u32,
    pins: &BTreeMap<ArcLabel, u32>,
) -> Result<FoxSolutions, ColoringError> {
    if modulus < 2 {
        return Err(ColoringError::Modulus(u64::from(modulus)));
    }
    let strands = d.strands();
    let index: BTreeMap<ArcLabel, usize> = strands
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |a| (*a, i)))
        .collect();
    let n = strands.len();
    let mut pinned: Vec<Option<u64>> = vec![None; n];
    let empty = |strands: Vec<Vec<ArcLabel>>| FoxSolutions {
        modulus,
        strands,
        particular: None,
        generators: vec![],
    };
    for (a, v) in pins {
        let s = *index.get(a).ok_or(ColoringError::UnknownArc(*a))?;
        let v = u64::from(*v) % u64::from(modulus);
        match pinned[s] {
            Some(w) if w != v => return Ok(empty(strands)),
            _ => pinned[s] = Some(v),
        }
    }
    let free: Vec<usize> = (0..n).filter(|s| pinned[*s].is_none()).collect();
    let col_of: BTreeMap<usize, usize> = free.iter().enumerate().map(|(c, s)| (*s, c)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in d.crossings() {
        let mut row = vec![0i128; free.len()];
        let mut b = 0i128;
        for (slot, coef) in [(0usize, -1i128), (2, -1), (1, 2)] {
            let s = index[&x.slots[slot]];
            match pinned[s] {
                Some(v) => b -= coef * v as i128,
                None => row[col_of[&s]] += coef,
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let affine = solve_mod(rows, rhs, free.len(), u64::from(modulus));
    let Some(y0) = affine.particular else {
        return Ok(empty(strands));
    };
    let embed = |v: &[u64], fill_pins: bool| -> Vec<u64> {
        (0..n)
            .map(|s| match (pinned[s], col_of.get(&s)) {
                (Some(p), _) => {
                    if fill_pins {
                        p
                    } else {
                        0
                    }
                }
                (None, Some(c)) => v[*c],
                (None, None) => unreachable!(),
            })
            .collect()
    };
    let particular = Some(embed(&y0, true));
    let generators = affine
        .generators
        .iter()
        .map(|(g, o)| (embed(g, false), *o))
        .collect();
    Ok(FoxSolutions {
        modulus,
        strands,
        particular,
        generators,
    })
}

/// True iff the diagram has a Fox coloring mod `modulus` using two distinct colors.
pub fn has_nontrivial_fox(d: &Diagram, modulus: u32) -> Result<bool, ColoringError> {
    Ok(fox_solution_space(d, modulus, &BTreeMap::new())?
        .nontrivial()
        .is_some())
}

/// Result of an exhaustive quandle-coloring search.
#[derive(Clone, Debug)]
pub struct QuandleSearch {
    pub colorings: Vec<Coloring>,
    /// False when the cap stopped the search early.
    pub complete: bool,
}

/// All colorings of `d` by `q` agreeing with `pins`, up to `cap` of them.
pub fn quandle_colorings(
    d: &Diagram,
    q: &Arc<Quandle>,
    pins: &BTreeMap<ArcLabel, u32>,
    cap: usize,
) -> Result<QuandleSearch, ColoringError> {
    let palette = Palette::Quandle(q.clone());
    search_colorings(d, &palette, pins, cap)
}

pub(crate) fn search_colorings(
    d: &Diagram,
    palette: &Palette,
    pins: &BTreeMap<ArcLabel, u32>,
    cap: usize,
) -> Result<QuandleSearch, ColoringError> {
    if !palette.is_involutory() && !d.is_oriented() {
        return Err(ColoringError::OrientationRequired);
    }
    let sys = StrandSystem::new(d);
    let (found, complete) = sys.enumerate(palette, pins, cap)?;
    let colorings = found
        .into_iter()
        .map(|v| sys.to_coloring(palette, &v))
        .collect();
    Ok(QuandleSearch {
        colorings,
        complete,
    })
}
