//! Disconnecting arcs of a colored knot diagram to obtain tangles.

use std::collections::BTreeMap;

use crate::colorings::Coloring;
use crate::diagram::{ArcLabel, Diagram, Position};
use crate::error::{DiagramError, PersistenceError};
use crate::moves::{
    apply_r2_over, apply_r2_over_in_face, r2_transport, recolor_after_move, MoveRecord,
};
use crate::tangle::{linking_sum, Tangle};

use super::Certificate;

fn require_knot(d: &Diagram) -> Result<(), PersistenceError> {
    if !d.is_closed() || d.components().count() != 1 {
        return Err(PersistenceError::NotAKnot);
    }
    Ok(())
}

fn require_arc(d: &Diagram, a: ArcLabel) -> Result<(), PersistenceError> {
    if !d.contains(a) {
        return Err(DiagramError::UnknownArc(a).into());
    }
    Ok(())
}

fn require_coloring(d: &Diagram, c: &Coloring) -> Result<(), PersistenceError> {
    if !c.verify(d)? {
        return Err(PersistenceError::Malformed(
            "coloring violates a crossing relation".into(),
        ));
    }
    if !c.is_nontrivial() {
        return Err(PersistenceError::TrivialColoring);
    }
    Ok(())
}

/// Builds a tangle from `d` with the labels at the given positions replaced.
/// Circle labels in `drop_circles` stop being circles.
fn rebuild(
    d: &Diagram,
    replace: &[(Position, ArcLabel)],
    drop_circles: &[ArcLabel],
    boundary: Vec<ArcLabel>,
) -> Result<Tangle, PersistenceError> {
    let (crossings, _, circles) = d.clone().into_parts();
    let circles = circles
        .into_iter()
        .filter(|k| !drop_circles.contains(k))
        .collect();
    let mut out = Diagram::from_parts_unchecked(crossings, vec![], circles);
    for (p, a) in replace {
        out.set_label(*p, *a);
    }
    let (crossings, _, circles) = out.into_parts();
    Ok(Tangle::new(Diagram::new(crossings, boundary, circles)?)?)
}

/// Colors of `c` with `old` arcs dropped and each fresh arc given its source color.
fn split_colors(c: &Coloring, old: &[ArcLabel], fresh: &[(ArcLabel, ArcLabel)]) -> Coloring {
    let mut colors = c.colors.clone();
    for (new, src) in fresh {
        colors.insert(*new, c.colors[src]);
    }
    for a in old {
        colors.remove(a);
    }
    Coloring {
        palette: c.palette.clone(),
        colors,
    }
}

/// Opens a closed 1-component diagram at one point of `arc`.
pub fn cut_arc_once(d: &Diagram, arc: ArcLabel) -> Result<Tangle, PersistenceError> {
    require_knot(d)?;
    require_arc(d, arc)?;
    if d.circles().contains(&arc) {
        return rebuild(d, &[], &[arc], vec![arc, arc]);
    }
    let ends = &d.positions()[&arc];
    let base = d.max_label() + 1;
    let (p, q) = (ArcLabel(base), ArcLabel(base + 1));
    rebuild(d, &[(ends[0], p), (ends[1], q)], &[], vec![p, q])
}

/// The side of `arc` on the first face that runs along it.
fn side_of(d: &Diagram, arc: ArcLabel) -> Option<(Position, Position)> {
    d.faces()
        .iter()
        .flat_map(|f| f.sides.iter())
        .find(|s| s.label == arc)
        .map(|s| (s.from, s.to))
}

/// Opens `arc` at two points. The short middle piece joins two boundary
/// points; all four endpoints carry the color of `arc`.
pub fn cut_arc_twice(
    d: &Diagram,
    c: &Coloring,
    arc: ArcLabel,
) -> Result<(Tangle, Certificate), PersistenceError> {
    require_knot(d)?;
    require_arc(d, arc)?;
    require_coloring(d, c)?;
    let base = d.max_label() + 1;
    let (x, m, y) = (ArcLabel(base), ArcLabel(base + 1), ArcLabel(base + 2));
    let t = if d.circles().contains(&arc) {
        rebuild(d, &[], &[arc], vec![m, x, x, m])?
    } else {
        let (p, q) = side_of(d, arc).ok_or(DiagramError::UnknownArc(arc))?;
        rebuild(d, &[(p, x), (q, y)], &[], vec![m, x, y, m])?
    };
    let coloring = split_colors(c, &[arc], &[(x, arc), (m, arc), (y, arc)]).restrict(t.diagram());
    let cert = Certificate::assemble(&t, coloring, vec![])?;
    Ok((t, cert))
}

/// Opens `a1` and `a2` once each inside a face they both bound.
fn cut_in_shared_face(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
) -> Result<(Tangle, Coloring), PersistenceError> {
    let faces = d.faces();
    let (s1, s2) = faces
        .iter()
        .find_map(|f| {
            let s1 = f.sides.iter().find(|s| s.label == a1)?;
            let s2 = f.sides.iter().find(|s| s.label == a2)?;
            Some((*s1, *s2))
        })
        .ok_or_else(|| PersistenceError::Degenerate(format!("arcs {a1} and {a2} share no face")))?;
    let base = d.max_label() + 1;
    let [p, q, r, s] = [0, 1, 2, 3].map(|i| ArcLabel(base + i));
    let t = rebuild(
        d,
        &[(s1.from, p), (s1.to, q), (s2.from, r), (s2.to, s)],
        &[],
        vec![q, p, s, r],
    )?;
    let coloring = split_colors(c, &[a1, a2], &[(p, a1), (q, a1), (r, a2), (s, a2)]);
    Ok((t, coloring))
}

/// Opens two co-facial arcs once each, without any coloring.
pub fn open_two_arcs(d: &Diagram, a1: ArcLabel, a2: ArcLabel) -> Result<Tangle, PersistenceError> {
    require_arc(d, a1)?;
    require_arc(d, a2)?;
    if a1 == a2 {
        return Err(DiagramError::SameArc(a1).into());
    }
    let blank = Coloring::constant(d, crate::colorings::Palette::Fox(2), 0);
    Ok(cut_in_shared_face(d, &blank, a1, a2)?.0)
}

fn check_pair(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
) -> Result<(), PersistenceError> {
    require_knot(d)?;
    require_arc(d, a1)?;
    require_arc(d, a2)?;
    if a1 == a2 {
        return Err(DiagramError::SameArc(a1).into());
    }
    require_coloring(d, c)?;
    if c.get(a1) != c.get(a2) {
        return Err(PersistenceError::ColorsDiffer(a1, a2));
    }
    Ok(())
}

/// Brings `a1` next to `a2` by R2 moves when needed.
fn bring_together(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
) -> Result<(Diagram, Coloring, ArcLabel, Vec<MoveRecord>), PersistenceError> {
    if d.co_facial(a1, a2)? {
        return Ok((d.clone(), c.clone(), a1, vec![]));
    }
    let tr = r2_transport(d, c, a1, a2)?;
    Ok((tr.diagram, tr.coloring, tr.segment, tr.moves))
}

/// Opens two equally colored arcs once each, transporting `a1` next to
/// `a2` first when they share no face. Returns the move trace.
pub fn cut_two_arcs(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
) -> Result<(Tangle, Certificate, Vec<MoveRecord>), PersistenceError> {
    check_pair(d, c, a1, a2)?;
    let (d2, c2, seg, moves) = bring_together(d, c, a1, a2)?;
    let (t, coloring) = cut_in_shared_face(&d2, &c2, seg, a2)?;
    let cert = Certificate::assemble(&t, coloring, moves.clone())?;
    Ok((t, cert, moves))
}

/// Output of [`cut_two_arcs_linked`].
#[derive(Clone, Debug)]
pub struct LinkedCut {
    pub tangle: Tangle,
    pub certificate: Certificate,
    pub moves: Vec<MoveRecord>,
    /// Linking sum of the cut tangle after 0, 1, ... extra passes.
    pub linking: Vec<i64>,
}

fn linking_after_cut(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
) -> Result<i64, PersistenceError> {
    let (t, _) = cut_in_shared_face(d, c, a1, a2)?;
    Ok(linking_sum(&t)?)
}

/// Like [`cut_two_arcs`], but first pushes the `a1` side over the `a2`
/// side `passes` more times. After each push the cut point on the `a2`
/// side moves to whichever new piece gives the larger |linking sum|, so
/// every pass winds the two strands of the tangle once more around each other.
pub fn cut_two_arcs_linked(
    d: &Diagram,
    c: &Coloring,
    a1: ArcLabel,
    a2: ArcLabel,
    passes: usize,
) -> Result<LinkedCut, PersistenceError> {
    check_pair(d, c, a1, a2)?;
    let d = if d.is_oriented() {
        d.clone()
    } else {
        d.oriented()
    };
    let (mut d, mut c, mut tip, mut moves) = bring_together(&d, c, a1, a2)?;
    let mut target = a2;
    let mut linking = vec![linking_after_cut(&d, &c, tip, target)?];
    for _ in 0..passes {
        let (next, rec) = apply_r2_over(&d, tip, target)?;
        c = recolor_after_move(&c, &rec, &d, &next)?;
        d = next;
        tip = rec.added[1];
        let mut best: Option<(i64, ArcLabel)> = None;
        for cand in [rec.added[3], rec.added[5]] {
            if !d.co_facial(tip, cand)? {
                continue;
            }
            let l = linking_after_cut(&d, &c, tip, cand)?;
            if best.is_none_or(|(b, _)| l.abs() > b.abs()) {
                best = Some((l, cand));
            }
        }
        let (l, cand) =
            best.ok_or_else(|| PersistenceError::Degenerate("pushed arc lost contact".into()))?;
        target = cand;
        linking.push(l);
        moves.push(rec);
    }
    let (tangle, coloring) = cut_in_shared_face(&d, &c, tip, target)?;
    let certificate = Certificate::assemble(&tangle, coloring, moves.clone())?;
    Ok(LinkedCut {
        tangle,
        certificate,
        moves,
        linking,
    })
}

/// Possibly moved diagram and coloring, the two arcs, and the moves made.
pub type SameColorPair = (Diagram, Coloring, ArcLabel, ArcLabel, Vec<MoveRecord>);

/// A pair of arcs on different Fox arcs sharing a color, with
/// `co_facial` matching the request when given. When `d` has none, single
/// R2 moves are tried in turn, since the middle piece of the pushed-under
/// arc takes a new color.
pub fn same_color_pair(
    d: &Diagram,
    c: &Coloring,
    co_facial: Option<bool>,
) -> Result<Option<SameColorPair>, PersistenceError> {
    let scan =
        |d: &Diagram, c: &Coloring| -> Result<Option<(ArcLabel, ArcLabel)>, PersistenceError> {
            let strands = d.strands();
            let mut rep: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (i, s) in strands.iter().enumerate() {
                if let Some(v) = c.get(s[0]) {
                    rep.entry(v).or_default().push(i);
                }
            }
            for group in rep.values() {
                for (x, &i) in group.iter().enumerate() {
                    for &j in &group[x + 1..] {
                        for &a in &strands[i] {
                            for &b in &strands[j] {
                                if co_facial.is_none_or(|want| d.co_facial(a, b) == Ok(want)) {
                                    return Ok(Some((a, b)));
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        };
    if let Some((a, b)) = scan(d, c)? {
        return Ok(Some((d.clone(), c.clone(), a, b, vec![])));
    }
    for (fi, f) in d.faces().iter().enumerate() {
        for m in &f.arcs {
            for t in &f.arcs {
                if m == t {
                    continue;
                }
                let Ok((next, rec)) = apply_r2_over_in_face(d, fi, *m, *t) else {
                    continue;
                };
                let c2 = recolor_after_move(c, &rec, d, &next)?;
                if let Some((a, b)) = scan(&next, &c2)? {
                    return Ok(Some((next, c2, a, b, vec![rec])));
                }
            }
        }
    }
    Ok(None)
}
