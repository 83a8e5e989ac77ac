//! Two-string tangles: closures, addition, mirror, rotation and rational tangles.
//!
//! A tangle is a diagram with a boundary record listing its endpoints in
//! NW, NE, SE, SW order. Addition places the second tangle to the east of
//! the first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::colorings::fox_solution_space;
use crate::diagram::{ArcLabel, Crossing, Diagram, Position, Sign};
use crate::error::TangleError;
use crate::unionfind::UnionFind;

/// Large prime used to read a fraction off the Fox colorings of a tangle.
const FRACTION_PRIME: u32 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// Joins NW to NE and SW to SE.
    Numerator,
    /// Joins NW to SW and NE to SE.
    Denominator,
}

/// How the two open strands pair up the endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// NW–NE and SW–SE.
    Horizontal,
    /// NW–SW and NE–SE.
    Vertical,
    /// NW–SE and NE–SW.
    Diagonal,
}

/// A projective rational number `p/q`, with `q >= 0` and infinity as `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangleFraction {
    pub p: i64,
    pub q: i64,
}

impl TangleFraction {
    pub fn new(p: i64, q: i64) -> Self {
        if p == 0 && q == 0 {
            // not a point of the projective line; treat as infinity
            return TangleFraction { p: 1, q: 0 };
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        TangleFraction { p, q }
    }

    pub fn infinity() -> Self {
        TangleFraction { p: 1, q: 0 }
    }

    pub fn zero() -> Self {
        TangleFraction { p: 0, q: 1 }
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn plus(&self, n: i64) -> Self {
        TangleFraction::new(self.p + n * self.q, self.q)
    }

    pub fn recip(&self) -> Self {
        TangleFraction::new(self.q, self.p)
    }

    pub fn neg(&self) -> Self {
        TangleFraction::new(-self.p, self.q)
    }
}

impl fmt::Display for TangleFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    diagram: Diagram,
}

impl Tangle {
    /// Wraps a diagram with 2 or 4 boundary endpoints.
    pub fn new(diagram: Diagram) -> Result<Self, TangleError> {
        let n = diagram.boundary().len();
        if n != 2 && n != 4 {
            return Err(TangleError::Arity {
                expected: 4,
                found: n,
            });
        }
        Ok(Tangle { diagram })
    }

    pub fn parse(text: &str) -> Result<Self, TangleError> {
        Tangle::new(Diagram::parse(text)?)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> Diagram {
        self.diagram
    }

    /// NW, NE, SE, SW (or the two ends of a 1-tangle).
    pub fn endpoints(&self) -> &[ArcLabel] {
        self.diagram.boundary()
    }

    pub fn is_oriented(&self) -> bool {
        self.diagram.is_oriented()
    }

    fn require_two_strings(&self) -> Result<(), TangleError> {
        match self.endpoints().len() {
            4 => Ok(()),
            n => Err(TangleError::Arity {
                expected: 4,
                found: n,
            }),
        }
    }

    /// The 0-tangle: two horizontal strands.
    pub fn zero() -> Self {
        Tangle::parse("B 1 1 2 2").expect("valid")
    }

    /// The ∞-tangle: two vertical strands.
    pub fn infinity() -> Self {
        Tangle::parse("B 1 2 2 1").expect("valid")
    }

    /// A single crossing. `+1` has its over-strand running SW–NE.
    fn unit(positive: bool) -> Self {
        let x = if positive { [1, 4, 3, 2] } else { [4, 3, 2, 1] };
        let d = Diagram::new(
            vec![Crossing::new(x)],
            [1, 2, 3, 4].map(ArcLabel).to_vec(),
            vec![],
        )
        .expect("valid");
        Tangle { diagram: d }
    }

    /// Endpoint pairing of the open strands.
    pub fn pattern(&self) -> Result<Pattern, TangleError> {
        self.require_two_strings()?;
        let d = &self.diagram;
        let positions = d.positions();
        let other = |a: ArcLabel, p: Position| {
            let ps = &positions[&a];
            if ps[0] == p {
                ps[1]
            } else {
                ps[0]
            }
        };
        let mut p = other(d.boundary()[0], Position::Boundary(0));
        let end = loop {
            match p {
                Position::Boundary(i) => break i,
                Position::Slot { crossing, slot } => {
                    let q = Position::Slot {
                        crossing,
                        slot: (slot + 2) % 4,
                    };
                    p = other(d.label_at(q), q);
                }
            }
        };
        Ok(match end {
            1 => Pattern::Horizontal,
            3 => Pattern::Vertical,
            _ => Pattern::Diagonal,
        })
    }

    /// Fraction read off the Fox colorings over a large prime: with boundary
    /// colors a, b, c, d at NW, NE, SE, SW, the fraction is (a − b)/(a − d).
    /// `None` when the boundary colors do not determine it.
    pub fn coloring_fraction(&self) -> Option<TangleFraction> {
        self.require_two_strings().ok()?;
        let [nw, ne, _, sw] = [
            self.endpoints()[0],
            self.endpoints()[1],
            self.endpoints()[2],
            self.endpoints()[3],
        ];
        let pins: BTreeMap<ArcLabel, u32> = [(nw, 0), (sw, 1)].into_iter().collect();
        if nw == sw {
            return Some(TangleFraction::infinity());
        }
        let sols = fox_solution_space(&self.diagram, FRACTION_PRIME, &pins).ok()?;
        if sols.is_empty() {
            return Some(TangleFraction::infinity());
        }
        let b = sols.fixed_value(ne)?;
        rational_reconstruct(u64::from(b), u64::from(FRACTION_PRIME))
    }
}

/// Smallest `p/q ≡ v (mod m)` with |p|, q below √(m/2).
fn rational_reconstruct(v: u64, m: u64) -> Option<TangleFraction> {
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    Some(TangleFraction::new(r1 as i64, t1 as i64))
}

/// Merges label pairs, renames each merged class to its smallest member,
/// and turns classes left without any occurrence into circles. Re-orients
/// when the input was oriented.
pub(crate) fn fuse(
    crossings: Vec<Crossing>,
    boundary: Vec<ArcLabel>,
    mut circles: Vec<ArcLabel>,
    joins: &[(ArcLabel, ArcLabel)],
    oriented: bool,
) -> Result<Diagram, TangleError> {
    let labels: Vec<ArcLabel> = joins
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<ArcLabel, usize> =
        labels.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut uf = UnionFind::new(labels.len());
    for (a, b) in joins {
        uf.union(index[a], index[b]);
    }
    let mut classes: BTreeMap<usize, Vec<ArcLabel>> = BTreeMap::new();
    for (i, a) in labels.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(*a);
    }
    let rename: BTreeMap<ArcLabel, ArcLabel> = classes
        .values()
        .flat_map(|c| c.iter().map(move |a| (*a, c[0])))
        .collect();
    let f = |a: ArcLabel| rename.get(&a).copied().unwrap_or(a);
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|c| Crossing {
            slots: c.slots.map(f),
            sign: c.sign,
        })
        .collect();
    let boundary: Vec<ArcLabel> = boundary.into_iter().map(f).collect();
    let used: BTreeSet<ArcLabel> = crossings
        .iter()
        .flat_map(|c| c.slots)
        .chain(boundary.iter().copied())
        .collect();
    for c in classes.values() {
        if !used.contains(&c[0]) {
            circles.push(c[0]);
        }
    }
    let d = Diagram::from_parts_unchecked(crossings, boundary, circles);
    let d = if oriented {
        d.oriented()
    } else {
        d.unoriented()
    };
    let (crossings, boundary, circles) = d.into_parts();
    Ok(Diagram::new(crossings, boundary, circles)?)
}

pub fn closure(t: &Tangle, kind: Closure) -> Result<Diagram, TangleError> {
    t.require_two_strings()?;
    let e = t.endpoints().to_vec();
    let joins = match kind {
        Closure::Numerator => [(e[0], e[1]), (e[3], e[2])],
        Closure::Denominator => [(e[0], e[3]), (e[1], e[2])],
    };
    let oriented = t.is_oriented() && !t.diagram.crossings().is_empty();
    let (crossings, _, circles) = t.diagram.clone().into_parts();
    fuse(crossings, vec![], circles, &joins, oriented)
}

pub fn numerator_closure(t: &Tangle) -> Result<Diagram, TangleError> {
    closure(t, Closure::Numerator)
}

pub fn denominator_closure(t: &Tangle) -> Result<Diagram, TangleError> {
    closure(t, Closure::Denominator)
}

/// Places `t2` to the east of `t1`, joining t1's NE/SE to t2's NW/SW.
pub fn tangle_add(t1: &Tangle, t2: &Tangle) -> Result<Tangle, TangleError> {
    t1.require_two_strings()?;
    t2.require_two_strings()?;
    let offset = t1.diagram.max_label();
    let shifted = t2.diagram.relabel(|a| ArcLabel(a.0 + offset));
    let (a, b) = (t1.endpoints(), shifted.boundary());
    let boundary = vec![a[0], b[1], b[2], a[3]];
    let joins = [(a[1], b[0]), (a[2], b[3])];
    let oriented = t1.is_oriented() && t2.is_oriented();
    let (mut crossings, _, mut circles) = t1.diagram.clone().into_parts();
    let (c2, _, k2) = shifted.into_parts();
    crossings.extend(c2);
    circles.extend(k2);
    if !oriented {
        crossings.iter_mut().for_each(|c| c.sign = None);
    }
    Ok(Tangle {
        diagram: fuse(crossings, boundary, circles, &joins, oriented)?,
    })
}

/// Swaps over and under at every crossing.
pub fn mirror(t: &Tangle) -> Tangle {
    Tangle {
        diagram: mirror_diagram(&t.diagram),
    }
}

pub fn mirror_diagram(d: &Diagram) -> Diagram {
    let (crossings, boundary, circles) = d.clone().into_parts();
    let crossings = crossings
        .into_iter()
        .map(|c| {
            let s = c.slots;
            match c.sign {
                None => Crossing {
                    slots: [s[1], s[2], s[3], s[0]],
                    sign: None,
                },
                Some(Sign::Positive) => Crossing {
                    slots: [s[3], s[0], s[1], s[2]],
                    sign: Some(Sign::Negative),
                },
                Some(Sign::Negative) => Crossing {
                    slots: [s[1], s[2], s[3], s[0]],
                    sign: Some(Sign::Positive),
                },
            }
        })
        .collect();
    Diagram::from_parts_unchecked(crossings, boundary, circles)
}

/// Quarter turn counterclockwise: the NE endpoint moves to NW.
pub fn rotate(t: &Tangle) -> Result<Tangle, TangleError> {
    t.require_two_strings()?;
    let (crossings, b, circles) = t.diagram.clone().into_parts();
    let boundary = vec![b[1], b[2], b[3], b[0]];
    Ok(Tangle {
        diagram: Diagram::new(crossings, boundary, circles)?,
    })
}

fn rotate_back(t: &Tangle) -> Result<Tangle, TangleError> {
    rotate(&rotate(&rotate(t)?)?)
}

fn twist_horizontal(t: &Tangle, n: i64) -> Result<Tangle, TangleError> {
    let mut t = t.clone();
    for _ in 0..n.unsigned_abs() {
        t = tangle_add(&t, &Tangle::unit(n > 0))?;
    }
    Ok(t)
}

fn twist_vertical(t: &Tangle, n: i64) -> Result<Tangle, TangleError> {
    rotate_back(&twist_horizontal(&rotate(t)?, -n)?)
}

/// Alternating twist build with the last entry horizontal. Odd-length
/// vectors start from the 0-tangle, even-length ones from the ∞-tangle so
/// that the first (vertical) twists are not absorbed as kinks.
pub fn rational_tangle(twists: &[i64]) -> Result<Tangle, TangleError> {
    if twists.is_empty() {
        return Err(TangleError::EmptyTwists);
    }
    let n = twists.len();
    let mut t = if n % 2 == 1 {
        Tangle::zero()
    } else {
        Tangle::infinity()
    };
    for (i, &a) in twists.iter().enumerate() {
        let horizontal = (n - 1 - i).is_multiple_of(2);
        t = if horizontal {
            twist_horizontal(&t, a)?
        } else {
            twist_vertical(&t, a)?
        };
    }
    Ok(Tangle {
        diagram: t.diagram.normalized(),
    })
}

/// a_n + 1/(a_{n−1} + 1/(… + 1/a_1)), evaluated projectively.
pub fn tangle_fraction(twists: &[i64]) -> Result<TangleFraction, TangleError> {
    let (first, rest) = twists.split_first().ok_or(TangleError::EmptyTwists)?;
    let mut f = TangleFraction::new(*first, 1);
    for a in rest {
        f = f.recip().plus(*a);
    }
    Ok(f)
}

/// Twice the linking number of the two open strands: the sum of the signs
/// of the crossings between them.
pub fn linking_sum(t: &Tangle) -> Result<i64, TangleError> {
    t.require_two_strings()?;
    let d = &t.diagram;
    if !d.is_oriented() {
        return Err(TangleError::Unoriented);
    }
    let comps = d.components();
    let open: Vec<usize> = (0..comps.count()).filter(|&i| comps.open[i]).collect();
    if open.len() != 2 {
        return Err(TangleError::Arity {
            expected: 2,
            found: open.len(),
        });
    }
    let mut sum = 0;
    for c in d.crossings() {
        let u = comps.class_of(c.slots[0]);
        let o = comps.class_of(c.slots[1]);
        if u != o && u.is_some_and(|u| open.contains(&u)) && o.is_some_and(|o| open.contains(&o)) {
            sum += c.sign.expect("oriented").value();
        }
    }
    Ok(sum)
}

/// Closure of `t + host`: the model of `t` sitting inside a larger diagram.
pub fn insert_into_host(t: &Tangle, host: &Tangle, kind: Closure) -> Result<Diagram, TangleError> {
    closure(&tangle_add(t, host)?, kind)
}

/// Glues a 1-tangle to a host 1-tangle end to end.
pub fn close_one_tangle(t: &Tangle, host: &Tangle) -> Result<Diagram, TangleError> {
    for x in [t, host] {
        if x.endpoints().len() != 2 {
            return Err(TangleError::Arity {
                expected: 2,
                found: x.endpoints().len(),
            });
        }
    }
    let offset = t.diagram.max_label();
    let shifted = host.diagram.relabel(|a| ArcLabel(a.0 + offset));
    let (a, b) = (t.endpoints().to_vec(), shifted.boundary().to_vec());
    let oriented = t.is_oriented() && host.is_oriented();
    let (mut crossings, _, mut circles) = t.diagram.clone().into_parts();
    let (c2, _, k2) = shifted.into_parts();
    crossings.extend(c2);
    circles.extend(k2);
    if !oriented {
        crossings.iter_mut().for_each(|c| c.sign = None);
    }
    fuse(
        crossings,
        vec![],
        circles,
        &[(a[0], b[1]), (a[1], b[0])],
        oriented,
    )
}

/// The 1-tangle left after joining NE to SE: its ends are NW and SW.
pub fn partial_closure(t: &Tangle) -> Result<Tangle, TangleError> {
    t.require_two_strings()?;
    let e = t.endpoints();
    let oriented = t.is_oriented() && !t.diagram.crossings().is_empty();
    let (crossings, _, circles) = t.diagram.clone().into_parts();
    let d = fuse(
        crossings,
        vec![e[0], e[3]],
        circles,
        &[(e[1], e[2])],
        oriented,
    )?;
    Tangle::new(d)
}
