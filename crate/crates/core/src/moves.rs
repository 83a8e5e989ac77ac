//! Reidemeister moves with recoloring, and R2 transport of an arc across faces.
//!
//! Every move returns the rewritten diagram and a [`MoveRecord`]. Fresh
//! labels continue upward from the largest label in use. New crossings are
//! appended; removed crossings are deleted in place.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::colorings::system::{Extension, StrandSystem};
use crate::colorings::Coloring;
use crate::diagram::{ArcLabel, Crossing, Diagram, Flow, Position, Side, Sign};
use crate::error::{DiagramError, MoveError};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1+")]
    R1Plus,
    #[serde(rename = "R1-")]
    R1Minus,
    #[serde(rename = "R2+")]
    R2Plus,
    #[serde(rename = "R2-")]
    R2Minus,
    #[serde(rename = "R3")]
    R3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// Arcs naming the site, in the diagram before the move.
    pub site: Vec<ArcLabel>,
    /// Face of the site before the move, for moves made inside a face.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub face: Option<usize>,
    pub removed: Vec<ArcLabel>,
    pub added: Vec<ArcLabel>,
    /// Crossings the move created, indexed in the diagram after the move.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub crossings: Vec<usize>,
    /// Fresh arcs paired with the old arc whose color they carry.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub inherit: Vec<(ArcLabel, ArcLabel)>,
}

/// Result of transporting an arc next to another.
#[derive(Clone, Debug)]
pub struct Transport {
    pub diagram: Diagram,
    pub coloring: Coloring,
    /// The descendant of the source arc that now shares a face with the destination.
    pub segment: ArcLabel,
    pub moves: Vec<MoveRecord>,
}

fn other_end(positions: &BTreeMap<ArcLabel, Vec<Position>>, a: ArcLabel, p: Position) -> Position {
    let ps = &positions[&a];
    if ps[0] == p {
        ps[1]
    } else {
        ps[0]
    }
}

/// Whether arc `a` runs from its end `p` towards its other end.
fn runs_from(
    flows: &BTreeMap<Position, Flow>,
    positions: &BTreeMap<ArcLabel, Vec<Position>>,
    a: ArcLabel,
    p: Position,
) -> bool {
    if let Some(f) = flows.get(&p) {
        return *f == Flow::Out;
    }
    let q = other_end(positions, a, p);
    flows.get(&q).is_none_or(|f| *f == Flow::In)
}

/// Rotates `slots` so the incoming under-strand sits in slot 0 and signs the result.
fn orient(slots: [ArcLabel; 4], in_under: usize, out_over: usize) -> Crossing {
    debug_assert!(in_under.is_multiple_of(2) && out_over % 2 == 1);
    let r = in_under;
    let slots = [
        slots[r],
        slots[(r + 1) % 4],
        slots[(r + 2) % 4],
        slots[(r + 3) % 4],
    ];
    let sign = if (out_over + 4 - r) % 4 == 1 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Crossing {
        slots,
        sign: Some(sign),
    }
}

fn fresh(d: &Diagram, n: usize) -> Vec<ArcLabel> {
    let base = d.max_label() + 1;
    (0..n as u32).map(|i| ArcLabel(base + i)).collect()
}

fn rebuild(
    crossings: Vec<Crossing>,
    boundary: Vec<ArcLabel>,
    circles: Vec<ArcLabel>,
) -> Result<Diagram, MoveError> {
    Ok(Diagram::new(crossings, boundary, circles)?)
}

/// Pushes `mover` over `target` inside the first face incident to both.
pub fn apply_r2_over(
    d: &Diagram,
    mover: ArcLabel,
    target: ArcLabel,
) -> Result<(Diagram, MoveRecord), MoveError> {
    if mover == target {
        return Err(DiagramError::SameArc(mover).into());
    }
    for a in [mover, target] {
        if !d.contains(a) {
            return Err(DiagramError::UnknownArc(a).into());
        }
    }
    let faces = d.faces();
    let fi = faces
        .iter()
        .position(|f| {
            f.sides.iter().any(|s| s.label == mover) && f.sides.iter().any(|s| s.label == target)
        })
        .ok_or(MoveError::NotCoFacial(mover, target))?;
    apply_r2_over_in_face(d, fi, mover, target)
}

/// Pushes a finger of `mover` across face `face` and over `target`. The
/// middle of the three mover segments ends up in the face beyond `target`.
pub fn apply_r2_over_in_face(
    d: &Diagram,
    face: usize,
    mover: ArcLabel,
    target: ArcLabel,
) -> Result<(Diagram, MoveRecord), MoveError> {
    let faces = d.faces();
    let f = faces
        .get(face)
        .ok_or_else(|| MoveError::Inapplicable(format!("no face {face}")))?;
    let side = |a: ArcLabel| -> Option<Side> { f.sides.iter().find(|s| s.label == a).copied() };
    let (Some(ms), Some(ts)) = (side(mover), side(target)) else {
        return Err(MoveError::NotCoFacial(mover, target));
    };
    if mover == target {
        return Err(DiagramError::SameArc(mover).into());
    }
    let new = fresh(d, 6);
    let [m1, m2, m3, t1, t2, t3] = [new[0], new[1], new[2], new[3], new[4], new[5]];
    let positions = d.positions();
    let oriented = d.is_oriented() && !d.crossings().is_empty();
    let flows = if oriented { d.flows() } else { BTreeMap::new() };
    // Mover runs P -> Q and target R -> S along the face boundary.
    let m_forward = runs_from(&flows, &positions, mover, ms.from);
    let t_forward = runs_from(&flows, &positions, target, ts.from);

    let mut work = d.clone();
    work.set_label(ms.from, m1);
    work.set_label(ms.to, m3);
    work.set_label(ts.from, t1);
    work.set_label(ts.to, t3);
    let (mut crossings, boundary, circles) = work.into_parts();
    let left = [t2, m1, t3, m2];
    let right = [t1, m3, t2, m2];
    if oriented {
        let (l_in, r_in) = if t_forward { (0, 0) } else { (2, 2) };
        let (l_out, r_out) = if m_forward { (3, 1) } else { (1, 3) };
        crossings.push(orient(left, l_in, l_out));
        crossings.push(orient(right, r_in, r_out));
    } else {
        crossings.push(Crossing {
            slots: left,
            sign: None,
        });
        crossings.push(Crossing {
            slots: right,
            sign: None,
        });
    }
    let n = crossings.len();
    let after = rebuild(crossings, boundary, circles)?;
    let record = MoveRecord {
        kind: MoveKind::R2Plus,
        site: vec![mover, target],
        face: Some(face),
        removed: vec![mover, target],
        added: new.clone(),
        crossings: vec![n - 2, n - 1],
        inherit: vec![
            (m1, mover),
            (m2, mover),
            (m3, mover),
            (t1, target),
            (t3, target),
        ],
    };
    Ok((after, record))
}

/// Removes crossings and splices the strands through them. Each strand
/// piece left between surviving ends takes its smallest label; pieces with
/// no surviving end become circles.
fn remove_crossings(d: &Diagram, doomed: &[usize]) -> Result<(Diagram, Vec<ArcLabel>), MoveError> {
    let doomed: BTreeSet<usize> = doomed.iter().copied().collect();
    let labels: Vec<ArcLabel> = doomed
        .iter()
        .flat_map(|&i| d.crossings()[i].slots)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<ArcLabel, usize> =
        labels.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut uf = UnionFind::new(labels.len());
    for &i in &doomed {
        let s = d.crossings()[i].slots;
        uf.union(index[&s[0]], index[&s[2]]);
        uf.union(index[&s[1]], index[&s[3]]);
    }
    let mut rename: BTreeMap<ArcLabel, ArcLabel> = BTreeMap::new();
    let mut classes: BTreeMap<usize, Vec<ArcLabel>> = BTreeMap::new();
    for (i, a) in labels.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(*a);
    }
    let positions = d.positions();
    let mut new_circles = Vec::new();
    let mut removed = Vec::new();
    for class in classes.values() {
        let keep = class[0];
        let survives = class.iter().any(|a| {
            positions[a]
                .iter()
                .any(|p| !matches!(p, Position::Slot { crossing, .. } if doomed.contains(crossing)))
        });
        if !survives {
            new_circles.push(keep);
        }
        for a in class {
            rename.insert(*a, keep);
            if *a != keep {
                removed.push(*a);
            }
        }
    }
    let f = |a: ArcLabel| rename.get(&a).copied().unwrap_or(a);
    let (crossings, boundary, mut circles) = d.clone().into_parts();
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !doomed.contains(i))
        .map(|(_, c)| Crossing {
            slots: c.slots.map(f),
            sign: c.sign,
        })
        .collect();
    let boundary = boundary.into_iter().map(f).collect();
    circles.extend(new_circles);
    Ok((rebuild(crossings, boundary, circles)?, removed))
}

/// Crossing pairs bounding a bigon where one strand is over at both.
pub fn r2_minus_sites(d: &Diagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for f in d.faces() {
        if f.corners.len() != 2 {
            continue;
        }
        let (Some(x), Some(y)) = (crossing_of(f.sides[0].from), crossing_of(f.sides[0].to)) else {
            continue;
        };
        if x == y {
            continue;
        }
        let slot_parity = |p: Position| match p {
            Position::Slot { slot, .. } => Some(slot % 2),
            Position::Boundary(_) => None,
        };
        let a = (slot_parity(f.sides[0].from), slot_parity(f.sides[0].to));
        let b = (slot_parity(f.sides[1].from), slot_parity(f.sides[1].to));
        let same = |p: (Option<usize>, Option<usize>)| p.0.is_some() && p.0 == p.1;
        if same(a) && same(b) && a.0 != b.0 {
            let site = (x.min(y), x.max(y));
            if !out.contains(&site) {
                out.push(site);
            }
        }
    }
    out
}

fn crossing_of(p: Position) -> Option<usize> {
    match p {
        Position::Slot { crossing, .. } => Some(crossing),
        Position::Boundary(_) => None,
    }
}

/// Removes the bigon between crossings `x` and `y`.
pub fn apply_r2_minus(d: &Diagram, x: usize, y: usize) -> Result<(Diagram, MoveRecord), MoveError> {
    let site = (x.min(y), x.max(y));
    if !r2_minus_sites(d).contains(&site) {
        return Err(MoveError::Inapplicable(format!(
            "crossings {x} and {y} do not bound an R2 bigon"
        )));
    }
    let mut site_arcs: Vec<ArcLabel> = d.crossings()[x].slots.to_vec();
    site_arcs.retain(|a| d.crossings()[y].slots.contains(a));
    site_arcs.sort();
    site_arcs.dedup();
    let (after, removed) = remove_crossings(d, &[x, y])?;
    Ok((
        after,
        MoveRecord {
            kind: MoveKind::R2Minus,
            site: site_arcs,
            face: None,
            removed,
            added: vec![],
            crossings: vec![],
            inherit: vec![],
        },
    ))
}

/// Undoes an R2+ record applied to `d`.
pub fn undo_r2(d: &Diagram, record: &MoveRecord) -> Result<(Diagram, MoveRecord), MoveError> {
    match (record.kind, record.crossings.as_slice()) {
        (MoveKind::R2Plus, [x, y]) => apply_r2_minus(d, *x, *y),
        _ => Err(MoveError::Inapplicable("record is not an R2+ move".into())),
    }
}

/// Adds a kink on `arc`. `shape` picks one of the four kinks: the loop on
/// either side of the arc, passing over or under itself.
pub fn apply_r1_plus(
    d: &Diagram,
    arc: ArcLabel,
    shape: usize,
) -> Result<(Diagram, MoveRecord), MoveError> {
    if !d.contains(arc) {
        return Err(DiagramError::UnknownArc(arc).into());
    }
    let positions = d.positions();
    let Some(ps) = positions.get(&arc) else {
        return Err(MoveError::Inapplicable(format!(
            "arc {arc} is a crossing-free circle"
        )));
    };
    let (a, b) = (ps[0], ps[1]);
    let new = fresh(d, 3);
    let (e1, e2, l) = (new[0], new[1], new[2]);
    let slots = match shape % 4 {
        0 => [e1, l, l, e2],
        1 => [e2, e1, l, l],
        2 => [e2, l, l, e1],
        _ => [e1, e2, l, l],
    };
    let oriented = d.is_oriented() && !d.crossings().is_empty();
    let crossing = if oriented {
        let flows = d.flows();
        let (first, last) = if runs_from(&flows, &positions, arc, a) {
            (e1, e2)
        } else {
            (e2, e1)
        };
        let s_first = slots.iter().position(|x| *x == first).unwrap();
        let s_last = slots.iter().position(|x| *x == last).unwrap();
        if s_first % 2 == 0 {
            orient(slots, s_first, s_last)
        } else {
            orient(slots, (s_last + 2) % 4, (s_first + 2) % 4)
        }
    } else {
        Crossing { slots, sign: None }
    };
    let mut work = d.clone();
    work.set_label(a, e1);
    work.set_label(b, e2);
    let (mut crossings, boundary, circles) = work.into_parts();
    crossings.push(crossing);
    let n = crossings.len();
    let after = rebuild(crossings, boundary, circles)?;
    Ok((
        after,
        MoveRecord {
            kind: MoveKind::R1Plus,
            site: vec![arc],
            face: None,
            removed: vec![arc],
            added: new,
            crossings: vec![n - 1],
            inherit: vec![(e1, arc), (e2, arc), (l, arc)],
        },
    ))
}

/// Crossings carrying a kink loop.
pub fn r1_minus_sites(d: &Diagram) -> Vec<usize> {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(_, c)| (0..4).any(|i| c.slots[i] == c.slots[(i + 1) % 4]))
        .map(|(i, _)| i)
        .collect()
}

pub fn apply_r1_minus(d: &Diagram, x: usize) -> Result<(Diagram, MoveRecord), MoveError> {
    if !r1_minus_sites(d).contains(&x) {
        return Err(MoveError::Inapplicable(format!(
            "crossing {x} has no kink loop"
        )));
    }
    let c = d.crossings()[x];
    let (after, removed) = remove_crossings(d, &[x])?;
    let mut site: Vec<ArcLabel> = c.slots.to_vec();
    site.sort();
    site.dedup();
    Ok((
        after,
        MoveRecord {
            kind: MoveKind::R1Minus,
            site,
            face: None,
            removed,
            added: vec![],
            crossings: vec![],
            inherit: vec![],
        },
    ))
}

/// Triangular faces whose three corners are distinct crossings and where
/// one strand passes over both of its triangle crossings.
pub fn r3_sites(d: &Diagram) -> Vec<usize> {
    d.faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            if f.sides.len() != 3 || f.arcs.len() != 3 {
                return false;
            }
            let xs: BTreeSet<Option<usize>> = f.sides.iter().map(|s| crossing_of(s.from)).collect();
            if xs.len() != 3 || xs.contains(&None) {
                return false;
            }
            f.sides
                .iter()
                .any(|s| slot_of(s.from) % 2 == 1 && slot_of(s.to) % 2 == 1)
        })
        .map(|(i, _)| i)
        .collect()
}

fn slot_of(p: Position) -> usize {
    match p {
        Position::Slot { slot, .. } => slot,
        Position::Boundary(i) => i,
    }
}

/// Slides the over strand of a triangular face across the opposite crossing.
pub fn apply_r3(d: &Diagram, face: usize) -> Result<(Diagram, MoveRecord), MoveError> {
    if !r3_sites(d).contains(&face) {
        return Err(MoveError::Inapplicable(format!(
            "face {face} is not an R3 triangle"
        )));
    }
    let f = &d.faces()[face];
    let new = fresh(d, 3);
    let mut work = d.clone();
    for (k, s) in f.sides.iter().enumerate() {
        let (
            Position::Slot {
                crossing: ca,
                slot: i,
            },
            Position::Slot {
                crossing: cb,
                slot: j,
            },
        ) = (s.from, s.to)
        else {
            unreachable!()
        };
        let ext_a = d.crossings()[ca].slots[(i + 2) % 4];
        let ext_b = d.crossings()[cb].slots[(j + 2) % 4];
        work.set_label(s.from, ext_b);
        work.set_label(
            Position::Slot {
                crossing: ca,
                slot: (i + 2) % 4,
            },
            new[k],
        );
        work.set_label(s.to, ext_a);
        work.set_label(
            Position::Slot {
                crossing: cb,
                slot: (j + 2) % 4,
            },
            new[k],
        );
    }
    let (crossings, boundary, circles) = work.into_parts();
    let after = rebuild(crossings, boundary, circles)?;
    Ok((
        after,
        MoveRecord {
            kind: MoveKind::R3,
            site: f.sides.iter().map(|s| s.label).collect(),
            face: Some(face),
            removed: f.sides.iter().map(|s| s.label).collect(),
            added: new,
            crossings: vec![],
            inherit: vec![],
        },
    ))
}

/// The coloring of `after` that agrees with `c` away from the move site.
pub fn recolor_after_move(
    c: &Coloring,
    record: &MoveRecord,
    before: &Diagram,
    after: &Diagram,
) -> Result<Coloring, MoveError> {
    let inherited: BTreeMap<ArcLabel, ArcLabel> = record.inherit.iter().copied().collect();
    let removed: BTreeSet<ArcLabel> = record.removed.iter().copied().collect();
    let mut pins = BTreeMap::new();
    for a in after.labels() {
        let source = match inherited.get(&a) {
            Some(old) => Some(*old),
            None if before.contains(a) && !removed.contains(&a) => Some(a),
            None => None,
        };
        if let Some(v) = source.and_then(|old| c.get(old)) {
            pins.insert(a, v);
        }
    }
    let system = StrandSystem::new(after);
    match system.extend(&c.palette, &pins)? {
        Extension::Complete(col) => Ok(col),
        Extension::Partial(_) => Err(MoveError::Inapplicable(
            "coloring does not extend uniquely across the move".into(),
        )),
        Extension::Clash(k) => Err(MoveError::Inapplicable(format!(
            "coloring clashes at arc {} after the move ({} vs {})",
            k.label, k.have, k.derived
        ))),
    }
}

/// BFS distance from every face to the nearest face touching `dest`, over
/// faces sharing an arc. Unreachable faces get `usize::MAX`.
fn face_distances(faces: &[crate::diagram::Face], dest: ArcLabel) -> Vec<usize> {
    let mut by_arc: BTreeMap<ArcLabel, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for a in &f.arcs {
            by_arc.entry(*a).or_default().push(i);
        }
    }
    let mut dist = vec![usize::MAX; faces.len()];
    let mut queue = VecDeque::new();
    for (i, f) in faces.iter().enumerate() {
        if f.touches(dest) {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for a in &faces[i].arcs {
            for &j in &by_arc[a] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
    }
    dist
}

/// Pushes `source` over intervening arcs, one R2 move per face crossed,
/// until a segment of it shares a face with `dest`.
pub fn r2_transport(
    d: &Diagram,
    c: &Coloring,
    source: ArcLabel,
    dest: ArcLabel,
) -> Result<Transport, MoveError> {
    if source == dest {
        return Err(DiagramError::SameArc(source).into());
    }
    for a in [source, dest] {
        if !d.contains(a) {
            return Err(DiagramError::UnknownArc(a).into());
        }
    }
    let mut diagram = d.clone();
    let mut coloring = c.clone();
    let mut segment = source;
    let mut moves = Vec::new();
    loop {
        let faces = diagram.faces();
        if faces.iter().any(|f| f.touches(segment) && f.touches(dest)) {
            return Ok(Transport {
                diagram,
                coloring,
                segment,
                moves,
            });
        }
        let dist = face_distances(&faces, dest);
        let start = (0..faces.len())
            .filter(|&i| faces[i].sides.iter().any(|s| s.label == segment) && dist[i] != usize::MAX)
            .min_by_key(|&i| (dist[i], i))
            .ok_or(MoveError::Disconnected(source, dest))?;
        let want = dist[start] - 1;
        let mut step: Option<(ArcLabel, usize)> = None;
        for s in &faces[start].sides {
            if s.label == segment || s.label == dest {
                continue;
            }
            for (j, g) in faces.iter().enumerate() {
                if j != start && dist[j] == want && g.touches(s.label) {
                    let cand = (s.label, j);
                    if step.is_none_or(|best| cand < best) {
                        step = Some(cand);
                    }
                }
            }
        }
        let (target, _) = step.ok_or(MoveError::Disconnected(source, dest))?;
        let (after, record) = apply_r2_over_in_face(&diagram, start, segment, target)?;
        coloring = recolor_after_move(&coloring, &record, &diagram, &after)?;
        segment = record.added[1];
        diagram = after;
        moves.push(record);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{determinant, fox_solution_space};

    const TREFOIL: &str = "X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3";

    fn canonical(d: &Diagram) -> String {
        d.normalized().to_pd()
    }

    #[test]
    fn r2_adds_two_crossings_and_undoes() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let faces = d.faces();
        let f = &faces[0];
        let (m, t) = (f.sides[0].label, f.sides[1].label);
        let (after, rec) = apply_r2_over(&d, m, t).unwrap();
        assert_eq!(after.len(), 5);
        assert_eq!(determinant(&after).unwrap(), 3);
        let (back, _) = undo_r2(&after, &rec).unwrap();
        assert_eq!(canonical(&back), canonical(&d));
    }

    #[test]
    fn r2_requires_shared_face() {
        let d = Diagram::parse("X 4 2 5 1; X 8 6 1 5; X 6 3 7 4; X 2 7 3 8").unwrap();
        let labels: Vec<ArcLabel> = d.labels().into_iter().collect();
        let pair = labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| (*a, *b)))
            .find(|(a, b)| a != b && !d.co_facial(*a, *b).unwrap())
            .unwrap();
        assert!(matches!(
            apply_r2_over(&d, pair.0, pair.1),
            Err(MoveError::NotCoFacial(..))
        ));
    }

    #[test]
    fn oriented_r2_keeps_orientation() {
        let d = Diagram::parse(TREFOIL).unwrap().oriented();
        for f in d.faces() {
            for s in &f.sides {
                for t in &f.sides {
                    if s.label != t.label {
                        let (after, _) = apply_r2_over(&d, s.label, t.label).unwrap();
                        assert!(after.is_oriented());
                        assert_eq!(canonical(&after.oriented()), canonical(&after));
                    }
                }
            }
        }
    }

    #[test]
    fn kinks_and_triangles_preserve_counts() {
        let d = Diagram::parse(TREFOIL).unwrap();
        for shape in 0..4 {
            let (k, _) = apply_r1_plus(&d, ArcLabel(2), shape).unwrap();
            assert_eq!(
                fox_solution_space(&k, 3, &BTreeMap::new()).unwrap().count(),
                9u32.into()
            );
            let site = r1_minus_sites(&k)[0];
            let (back, _) = apply_r1_minus(&k, site).unwrap();
            assert_eq!(canonical(&back), canonical(&d));
        }
    }

    #[test]
    fn recolor_keeps_tricoloring() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let colors = [(1, 1), (6, 1), (4, 0), (5, 0), (2, 2), (3, 2)];
        let c = Coloring::fox(
            3,
            colors.into_iter().map(|(a, v)| (ArcLabel(a), v)).collect(),
        );
        assert!(c.verify(&d).unwrap());
        let f = &d.faces()[0];
        let (after, rec) = apply_r2_over(&d, f.sides[0].label, f.sides[1].label).unwrap();
        let c2 = recolor_after_move(&c, &rec, &d, &after).unwrap();
        assert!(c2.verify(&after).unwrap());
        assert!(c2.is_nontrivial());
        assert_eq!(c2.get(rec.added[1]), c.get(rec.site[0]));
    }

    #[test]
    fn transport_trivial_when_cofacial() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let c = Coloring::constant(&d, crate::colorings::Palette::Fox(3), 0);
        let f = &d.faces()[0];
        let t = r2_transport(&d, &c, f.sides[0].label, f.sides[1].label).unwrap();
        assert!(t.moves.is_empty());
        assert_eq!(t.segment, f.sides[0].label);
    }

    #[test]
    fn record_json_roundtrip() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let f = &d.faces()[0];
        let (_, rec) = apply_r2_over(&d, f.sides[0].label, f.sides[1].label).unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"R2+\""));
        let back: MoveRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }
}
