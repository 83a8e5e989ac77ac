//! Planar diagram (PD) codes for knots, links and tangles.
//!
//! A crossing lists four arc labels counterclockwise, starting at the
//! incoming under-strand. Slots 0 and 2 are the under-strand, slots 1 and 3
//! the over-strand. Tangles carry a boundary record listing the endpoint
//! labels in NW, NE, SE, SW order; crossing-free closed components are
//! written as `O k` records.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;
use crate::unionfind::UnionFind;

/// Label of an edge of the diagram (a strand segment between two crossing slots).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcLabel(pub u32);

impl fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ArcLabel {
    fn from(v: u32) -> Self {
        ArcLabel(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [ArcLabel; 4],
    pub sign: Option<Sign>,
}

impl Crossing {
    pub fn new(slots: [u32; 4]) -> Self {
        Crossing {
            slots: slots.map(ArcLabel),
            sign: None,
        }
    }

    pub fn signed(slots: [u32; 4], sign: Sign) -> Self {
        Crossing {
            slots: slots.map(ArcLabel),
            sign: Some(sign),
        }
    }

    pub fn under(&self) -> (ArcLabel, ArcLabel) {
        (self.slots[0], self.slots[2])
    }

    pub fn over(&self) -> (ArcLabel, ArcLabel) {
        (self.slots[1], self.slots[3])
    }
}

/// Where one end of an edge sits: a crossing slot or a boundary entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Slot { crossing: usize, slot: usize },
    Boundary(usize),
}

/// A vertex of the 4-valent graph; tangle boundaries are collapsed into a
/// single virtual vertex whose rotation is the boundary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Vertex {
    Crossing(usize),
    Boundary,
}

/// One traversed side of a face: the edge `label` walked from `from` to `to`
/// with the face on the walker's right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub label: ArcLabel,
    pub from: Position,
    pub to: Position,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Cyclic list of (vertex, corner) pairs; corner `i` sits between slots `i` and `i + 1`.
    pub corners: Vec<(Vertex, usize)>,
    pub sides: Vec<Side>,
    pub arcs: BTreeSet<ArcLabel>,
}

impl Face {
    pub fn touches(&self, a: ArcLabel) -> bool {
        self.arcs.contains(&a)
    }
}

/// Grouping of edge labels by link component (closed) or open strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub classes: Vec<Vec<ArcLabel>>,
    /// For each class, whether it runs between boundary endpoints.
    pub open: Vec<bool>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: ArcLabel) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.binary_search(&a).is_ok())
    }

    pub fn closed_count(&self) -> usize {
        self.open.iter().filter(|o| !**o).count()
    }
}

/// Direction of travel through an edge end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    boundary: Vec<ArcLabel>,
    circles: Vec<ArcLabel>,
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(
        crossings: Vec<Crossing>,
        boundary: Vec<ArcLabel>,
        circles: Vec<ArcLabel>,
    ) -> Result<Self, DiagramError> {
        let d = Diagram {
            crossings,
            boundary,
            circles,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn closed(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        Diagram::new(crossings, vec![], vec![])
    }

    /// A single crossing-free circle.
    pub fn unknot() -> Self {
        Diagram {
            crossings: vec![],
            boundary: vec![],
            circles: vec![ArcLabel(1)],
        }
    }

    /// Closure of a braid on `strands` strands. Generator `i` crosses
    /// strands `i` and `i + 1` (1-based); its sign gives the crossing sign.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        let mut next = strands as u32 + 1;
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let mut raw = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(DiagramError::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("braid generator {g} out of range for {strands} strands"),
                });
            }
            let (a, b) = (cur[i - 1], cur[i]);
            let (a2, b2) = (next, next + 1);
            next += 2;
            if g > 0 {
                raw.push(([b, a2, b2, a], Sign::Positive));
            } else {
                raw.push(([a, b, a2, b2], Sign::Negative));
            }
            cur[i - 1] = b2;
            cur[i] = a2;
        }
        let close = |l: u32| cur.iter().position(|&c| c == l).map_or(l, |p| p as u32 + 1);
        let crossings = raw
            .iter()
            .map(|(s, sign)| Crossing::signed(s.map(close), *sign))
            .collect();
        let circles = (1..=strands as u32)
            .filter(|&p| cur[p as usize - 1] == p)
            .map(ArcLabel)
            .collect();
        Diagram::new(crossings, vec![], circles)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn boundary(&self) -> &[ArcLabel] {
        &self.boundary
    }

    pub fn circles(&self) -> &[ArcLabel] {
        &self.circles
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// True when every crossing is signed (vacuously true without crossings).
    pub fn is_oriented(&self) -> bool {
        self.crossings.iter().all(|c| c.sign.is_some())
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.circles.is_empty() && self.boundary.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<ArcLabel> {
        let mut out: BTreeSet<ArcLabel> = self.crossings.iter().flat_map(|c| c.slots).collect();
        out.extend(self.boundary.iter().copied());
        out.extend(self.circles.iter().copied());
        out
    }

    pub fn contains(&self, a: ArcLabel) -> bool {
        self.crossings.iter().any(|c| c.slots.contains(&a))
            || self.boundary.contains(&a)
            || self.circles.contains(&a)
    }

    pub fn max_label(&self) -> u32 {
        self.labels().iter().next_back().map_or(0, |a| a.0)
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        crate::pd::parse(text)
    }

    /// Canonical PD text: crossings, then circles, then the boundary record.
    pub fn to_pd(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            let tag = match c.sign {
                None => "X",
                Some(Sign::Positive) => "Xp",
                Some(Sign::Negative) => "Xm",
            };
            let [a, b, cc, d] = c.slots;
            out.push_str(&format!("{tag} {a} {b} {cc} {d}\n"));
        }
        for k in &self.circles {
            out.push_str(&format!("O {k}\n"));
        }
        if !self.boundary.is_empty() {
            out.push('B');
            for e in &self.boundary {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
        }
        out
    }

    pub(crate) fn from_parts_unchecked(
        crossings: Vec<Crossing>,
        boundary: Vec<ArcLabel>,
        circles: Vec<ArcLabel>,
    ) -> Self {
        Diagram {
            crossings,
            boundary,
            circles,
        }
    }

    pub(crate) fn into_parts(self) -> (Vec<Crossing>, Vec<ArcLabel>, Vec<ArcLabel>) {
        (self.crossings, self.boundary, self.circles)
    }

    /// Every end of every edge, keyed by label. Circles have no ends.
    pub fn positions(&self) -> BTreeMap<ArcLabel, Vec<Position>> {
        let mut map: BTreeMap<ArcLabel, Vec<Position>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (s, a) in c.slots.iter().enumerate() {
                map.entry(*a).or_default().push(Position::Slot {
                    crossing: ci,
                    slot: s,
                });
            }
        }
        for (bi, a) in self.boundary.iter().enumerate() {
            map.entry(*a).or_default().push(Position::Boundary(bi));
        }
        map
    }

    pub fn label_at(&self, p: Position) -> ArcLabel {
        match p {
            Position::Slot { crossing, slot } => self.crossings[crossing].slots[slot],
            Position::Boundary(i) => self.boundary[i],
        }
    }

    pub(crate) fn set_label(&mut self, p: Position, a: ArcLabel) {
        match p {
            Position::Slot { crossing, slot } => self.crossings[crossing].slots[slot] = a,
            Position::Boundary(i) => self.boundary[i] = a,
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        if ![0, 2, 4].contains(&self.boundary.len()) {
            return Err(DiagramError::Boundary(format!(
                "boundary lists {} endpoints; expected 0, 2 or 4",
                self.boundary.len()
            )));
        }
        let signed = self.crossings.iter().filter(|c| c.sign.is_some()).count();
        if signed != 0 && signed != self.crossings.len() {
            return Err(DiagramError::Orientation(
                "signed and unsigned crossings are mixed".into(),
            ));
        }
        for a in self.labels() {
            if a.0 == 0 {
                return Err(DiagramError::Syntax {
                    line: 0,
                    column: 0,
                    message: "arc labels must be positive".into(),
                });
            }
        }
        let positions = self.positions();
        for (a, ps) in &positions {
            if ps.len() != 2 {
                return Err(DiagramError::ArcOccurrence {
                    label: *a,
                    count: ps.len(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for k in &self.circles {
            if positions.contains_key(k) || !seen.insert(*k) {
                return Err(DiagramError::ArcOccurrence {
                    label: *k,
                    count: 2,
                });
            }
        }
        if self.is_oriented() && !self.crossings.is_empty() {
            let flows = self.flows();
            for (a, ps) in &positions {
                let fs: Vec<Option<Flow>> = ps.iter().map(|p| flows.get(p).copied()).collect();
                if let [Some(x), Some(y)] = fs[..] {
                    if x == y {
                        return Err(DiagramError::Orientation(format!(
                            "arc {a} has inconsistent orientation at its two ends"
                        )));
                    }
                }
            }
        }
        self.check_euler(&positions)
    }

    fn check_euler(
        &self,
        positions: &BTreeMap<ArcLabel, Vec<Position>>,
    ) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        let virt = n;
        let has_boundary = !self.boundary.is_empty();
        let mut uf = UnionFind::new(n + 1);
        for ps in positions.values() {
            uf.union(vertex_index(ps[0], virt), vertex_index(ps[1], virt));
        }
        let faces = self.faces_with(positions);
        let mut verts: BTreeMap<usize, i64> = BTreeMap::new();
        let mut edges: BTreeMap<usize, i64> = BTreeMap::new();
        let mut fcount: BTreeMap<usize, i64> = BTreeMap::new();
        for v in 0..n {
            *verts.entry(uf.find(v)).or_default() += 1;
        }
        if has_boundary {
            *verts.entry(uf.find(virt)).or_default() += 1;
        }
        for ps in positions.values() {
            *edges.entry(uf.find(vertex_index(ps[0], virt))).or_default() += 1;
        }
        for f in faces.iter().filter(|f| !f.corners.is_empty()) {
            let v = match f.corners[0].0 {
                Vertex::Crossing(i) => i,
                Vertex::Boundary => virt,
            };
            *fcount.entry(uf.find(v)).or_default() += 1;
        }
        for (root, v) in &verts {
            let e = edges.get(root).copied().unwrap_or(0);
            let f = fcount.get(root).copied().unwrap_or(0);
            if v - e + f != 2 {
                return Err(DiagramError::Planarity { euler: v - e + f });
            }
        }
        Ok(())
    }

    /// Face decomposition from the rotation system, computed per connected
    /// piece of the diagram. A crossing-free circle contributes two faces.
    pub fn faces(&self) -> Vec<Face> {
        self.faces_with(&self.positions())
    }

    fn faces_with(&self, positions: &BTreeMap<ArcLabel, Vec<Position>>) -> Vec<Face> {
        let n = self.crossings.len();
        let nb = self.boundary.len();
        let degree = |v: Vertex| match v {
            Vertex::Crossing(_) => 4,
            Vertex::Boundary => nb,
        };
        let other_end = |p: Position| -> Position {
            let ps = &positions[&self.label_at(p)];
            if ps[0] == p {
                ps[1]
            } else {
                ps[0]
            }
        };
        let mut visited: BTreeSet<(Vertex, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        let mut all_corners: Vec<(Vertex, usize)> = (0..n)
            .flat_map(|c| (0..4).map(move |i| (Vertex::Crossing(c), i)))
            .collect();
        all_corners.extend((0..nb).map(|i| (Vertex::Boundary, i)));
        for start in all_corners {
            if visited.contains(&start) {
                continue;
            }
            let mut corners = Vec::new();
            let mut sides = Vec::new();
            let mut arcs = BTreeSet::new();
            let mut cur = start;
            loop {
                visited.insert(cur);
                corners.push(cur);
                let (v, i) = cur;
                let leave = (i + 1) % degree(v);
                let from = position_of(v, leave);
                let to = other_end(from);
                let label = self.label_at(from);
                sides.push(Side { label, from, to });
                arcs.insert(label);
                cur = match to {
                    Position::Slot { crossing, slot } => (Vertex::Crossing(crossing), slot),
                    Position::Boundary(b) => (Vertex::Boundary, b),
                };
                if cur == start {
                    break;
                }
            }
            faces.push(Face {
                corners,
                sides,
                arcs,
            });
        }
        for k in &self.circles {
            for _ in 0..2 {
                faces.push(Face {
                    corners: vec![],
                    sides: vec![],
                    arcs: [*k].into_iter().collect(),
                });
            }
        }
        faces
    }

    /// Link components (closed) and open strands, found by following the
    /// under-strand through slots 0/2 and the over-strand through slots 1/3.
    pub fn components(&self) -> Components {
        let mut uf = LabelUnion::new(self.labels());
        for c in &self.crossings {
            uf.union(c.slots[0], c.slots[2]);
            uf.union(c.slots[1], c.slots[3]);
        }
        let classes = uf.classes();
        let open = classes
            .iter()
            .map(|cls| cls.iter().any(|a| self.boundary.contains(a)))
            .collect();
        Components { classes, open }
    }

    /// Fox arcs: edge labels merged across the over-strand of each crossing.
    pub fn strands(&self) -> Vec<Vec<ArcLabel>> {
        let mut uf = LabelUnion::new(self.labels());
        for c in &self.crossings {
            uf.union(c.slots[1], c.slots[3]);
        }
        uf.classes()
    }

    /// True iff some face is incident to both arcs.
    pub fn co_facial(&self, a1: ArcLabel, a2: ArcLabel) -> Result<bool, DiagramError> {
        if a1 == a2 {
            return Err(DiagramError::SameArc(a1));
        }
        for a in [a1, a2] {
            if !self.contains(a) {
                return Err(DiagramError::UnknownArc(a));
            }
        }
        Ok(self.faces().iter().any(|f| f.touches(a1) && f.touches(a2)))
    }

    /// Flow direction at each crossing slot. Only meaningful for oriented diagrams.
    pub fn flows(&self) -> BTreeMap<Position, Flow> {
        let mut out = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            let Some(sign) = c.sign else { continue };
            let (over_in, over_out) = match sign {
                Sign::Positive => (3, 1),
                Sign::Negative => (1, 3),
            };
            out.insert(
                Position::Slot {
                    crossing: ci,
                    slot: 0,
                },
                Flow::In,
            );
            out.insert(
                Position::Slot {
                    crossing: ci,
                    slot: 2,
                },
                Flow::Out,
            );
            out.insert(
                Position::Slot {
                    crossing: ci,
                    slot: over_in,
                },
                Flow::In,
            );
            out.insert(
                Position::Slot {
                    crossing: ci,
                    slot: over_out,
                },
                Flow::Out,
            );
        }
        out
    }

    /// Orients every component, keeping existing directions where the
    /// starting edge of a component already has one. Open strands start at
    /// their first boundary entry unless already oriented the other way.
    pub fn oriented(&self) -> Diagram {
        let positions = self.positions();
        let old = if self.is_oriented() {
            self.flows()
        } else {
            BTreeMap::new()
        };
        let other_end = |p: Position| -> Position {
            let ps = &positions[&self.label_at(p)];
            if ps[0] == p {
                ps[1]
            } else {
                ps[0]
            }
        };
        let mut flow: BTreeMap<Position, Flow> = BTreeMap::new();
        // Walk from an edge end that is leaving (tail) through the strand.
        let walk = |tail: Position, flow: &mut BTreeMap<Position, Flow>| {
            let mut t = tail;
            loop {
                if flow.contains_key(&t) {
                    break;
                }
                flow.insert(t, Flow::Out);
                let h = other_end(t);
                flow.insert(h, Flow::In);
                match h {
                    Position::Boundary(_) => break,
                    Position::Slot { crossing, slot } => {
                        t = Position::Slot {
                            crossing,
                            slot: (slot + 2) % 4,
                        };
                    }
                }
            }
        };
        // Open strands first.
        for bi in 0..self.boundary.len() {
            let b = Position::Boundary(bi);
            if flow.contains_key(&b) {
                continue;
            }
            let far = walk_to_end(self, &positions, b);
            // `b` is the tail unless the old orientation says the strand enters here.
            let first = other_end(b);
            let tail = match old.get(&first) {
                Some(Flow::Out) => far,
                _ => b,
            };
            walk(tail, &mut flow);
        }
        for (ci, _) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let p = Position::Slot {
                    crossing: ci,
                    slot: s,
                };
                if flow.contains_key(&p) {
                    continue;
                }
                let tail = match old.get(&p) {
                    Some(Flow::In) => other_end(p),
                    _ => p,
                };
                walk(tail, &mut flow);
            }
        }
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (ci, c) in self.crossings.iter().enumerate() {
            let f = |s: usize| {
                flow[&Position::Slot {
                    crossing: ci,
                    slot: s,
                }]
            };
            let mut slots = c.slots;
            let rotate = f(0) == Flow::Out;
            if rotate {
                slots = [slots[2], slots[3], slots[0], slots[1]];
            }
            let out1 = if rotate { f(3) } else { f(1) };
            let sign = if out1 == Flow::Out {
                Sign::Positive
            } else {
                Sign::Negative
            };
            crossings.push(Crossing {
                slots,
                sign: Some(sign),
            });
        }
        Diagram {
            crossings,
            boundary: self.boundary.clone(),
            circles: self.circles.clone(),
        }
    }

    /// Forgets crossing signs.
    pub fn unoriented(&self) -> Diagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.sign = None;
        }
        d
    }

    /// Renames labels through `f`; the caller keeps the map injective.
    pub fn relabel(&self, f: impl Fn(ArcLabel) -> ArcLabel) -> Diagram {
        Diagram {
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    slots: c.slots.map(&f),
                    sign: c.sign,
                })
                .collect(),
            boundary: self.boundary.iter().map(|a| f(*a)).collect(),
            circles: self.circles.iter().map(|a| f(*a)).collect(),
        }
    }

    /// Relabels arcs 1..=n in order of first appearance (crossings, circles, boundary).
    pub fn normalized(&self) -> Diagram {
        let mut map = BTreeMap::new();
        let mut next = 1;
        let order = self
            .crossings
            .iter()
            .flat_map(|c| c.slots)
            .chain(self.circles.iter().copied())
            .chain(self.boundary.iter().copied());
        for a in order {
            map.entry(a).or_insert_with(|| {
                let v = ArcLabel(next);
                next += 1;
                v
            });
        }
        self.relabel(|a| map[&a])
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Diagram::parse(s)
    }
}

fn vertex_index(p: Position, virt: usize) -> usize {
    match p {
        Position::Slot { crossing, .. } => crossing,
        Position::Boundary(_) => virt,
    }
}

fn position_of(v: Vertex, slot: usize) -> Position {
    match v {
        Vertex::Crossing(c) => Position::Slot { crossing: c, slot },
        Vertex::Boundary => Position::Boundary(slot),
    }
}

/// Follows an open strand from boundary entry `start` to its other boundary end.
fn walk_to_end(
    d: &Diagram,
    positions: &BTreeMap<ArcLabel, Vec<Position>>,
    start: Position,
) -> Position {
    let other = |p: Position| {
        let ps = &positions[&d.label_at(p)];
        if ps[0] == p {
            ps[1]
        } else {
            ps[0]
        }
    };
    let mut p = other(start);
    loop {
        match p {
            Position::Boundary(_) => return p,
            Position::Slot { crossing, slot } => {
                p = other(Position::Slot {
                    crossing,
                    slot: (slot + 2) % 4,
                });
            }
        }
    }
}

/// Union-find keyed by arc label.
pub(crate) struct LabelUnion {
    index: BTreeMap<ArcLabel, usize>,
    labels: Vec<ArcLabel>,
    uf: UnionFind,
}

impl LabelUnion {
    pub(crate) fn new(labels: impl IntoIterator<Item = ArcLabel>) -> Self {
        let labels: Vec<ArcLabel> = labels
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = labels.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let uf = UnionFind::new(labels.len());
        LabelUnion { index, labels, uf }
    }

    pub(crate) fn union(&mut self, a: ArcLabel, b: ArcLabel) {
        let (i, j) = (self.index[&a], self.index[&b]);
        self.uf.union(i, j);
    }

    /// Classes sorted internally and by smallest member.
    pub(crate) fn classes(&mut self) -> Vec<Vec<ArcLabel>> {
        let mut by_root: BTreeMap<usize, Vec<ArcLabel>> = BTreeMap::new();
        for (i, a) in self.labels.clone().into_iter().enumerate() {
            by_root.entry(self.uf.find(i)).or_default().push(a);
        }
        let mut out: Vec<Vec<ArcLabel>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3";
    const FIGURE8: &str = "X 4 2 5 1; X 8 6 1 5; X 6 3 7 4; X 2 7 3 8";
    const HOPF: &str = "X 1 3 2 4; X 3 1 4 2";

    #[test]
    fn trefoil_faces_and_components() {
        let d = Diagram::parse(TREFOIL).unwrap();
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.components().count(), 1);
        assert_eq!(d.strands().len(), 3);
        let total: usize = d.faces().iter().map(|f| f.corners.len()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn figure_eight_has_six_faces() {
        let d = Diagram::parse(FIGURE8).unwrap();
        assert_eq!(d.faces().len(), 6);
        assert_eq!(d.components().count(), 1);
    }

    #[test]
    fn unknot_circle_has_two_faces() {
        let d = Diagram::parse("O 1").unwrap();
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.components().count(), 1);
        let two = Diagram::parse("O 1\nO 2").unwrap();
        assert_eq!(two.components().count(), 2);
    }

    #[test]
    fn hopf_link_faces_pair_the_components() {
        let d = Diagram::parse(HOPF).unwrap();
        assert_eq!(d.faces().len(), 4);
        let comps = d.components();
        assert_eq!(comps.count(), 2);
        let (a, b) = (&comps.classes[0], &comps.classes[1]);
        // The two arcs of one component sit on opposite sides of the other.
        assert!(!d.co_facial(a[0], a[1]).unwrap());
        assert!(d.co_facial(a[0], b[0]).unwrap());
        assert!(d.co_facial(a[1], b[1]).unwrap());
    }

    #[test]
    fn trefoil_co_facial_matches_face_incidence() {
        let d = Diagram::parse(TREFOIL).unwrap();
        // Brute-force incidence from the side lists.
        let faces = d.faces();
        let expect = faces.iter().any(|f| {
            f.sides.iter().any(|s| s.label == ArcLabel(2))
                && f.sides.iter().any(|s| s.label == ArcLabel(4))
        });
        assert_eq!(d.co_facial(ArcLabel(2), ArcLabel(4)).unwrap(), expect);
        assert!(matches!(
            d.co_facial(ArcLabel(2), ArcLabel(2)),
            Err(DiagramError::SameArc(_))
        ));
        assert!(matches!(
            d.co_facial(ArcLabel(2), ArcLabel(99)),
            Err(DiagramError::UnknownArc(_))
        ));
    }

    #[test]
    fn every_arc_has_two_sides() {
        for text in [TREFOIL, FIGURE8, HOPF] {
            let d = Diagram::parse(text).unwrap();
            let mut count: BTreeMap<ArcLabel, usize> = BTreeMap::new();
            for f in d.faces() {
                for s in f.sides {
                    *count.entry(s.label).or_default() += 1;
                }
            }
            assert!(count.values().all(|c| *c == 2), "{count:?}");
        }
    }

    #[test]
    fn trivial_tangles() {
        let d = Diagram::parse("B 1 1").unwrap();
        assert_eq!(d.boundary().len(), 2);
        assert_eq!(d.components().count(), 1);
        let zero = Diagram::parse("B 1 1 2 2").unwrap();
        assert_eq!(zero.components().count(), 2);
        assert_eq!(zero.faces().len(), 3);
    }

    #[test]
    fn rejects_bad_occurrence_counts() {
        let err = Diagram::parse("X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 7").unwrap_err();
        assert!(matches!(err, DiagramError::ArcOccurrence { .. }), "{err}");
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // Same edges as the trefoil with one crossing's rotation scrambled.
        let err = Diagram::parse("X 1 4 2 5 ; X 3 6 4 1 ; X 5 6 2 3").unwrap_err();
        assert!(matches!(err, DiagramError::Planarity { .. }), "{err}");
    }

    #[test]
    fn orienting_preserves_structure() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let o = d.oriented();
        assert!(o.is_oriented());
        let o2 = Diagram::new(o.crossings.clone(), vec![], vec![]).unwrap();
        assert_eq!(o2.faces().len(), 5);
        // Already oriented input is a fixed point.
        assert_eq!(o.oriented(), o);
    }

    #[test]
    fn relabeling_preserves_components() {
        let d = Diagram::parse(HOPF).unwrap();
        let r = d.relabel(|a| ArcLabel(a.0 * 7 + 3));
        assert_eq!(r.components().count(), d.components().count());
        assert_eq!(r.normalized(), d.normalized());
    }
}
