use std::collections::BTreeMap;

use crate::colorings::{Coloring, Palette};
use crate::diagram::{ArcLabel, Diagram, Sign};
use crate::error::ColoringError;

/// One crossing relation between strands: `outgoing = incoming ⋆ over`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub crossing: usize,
    pub incoming: usize,
    pub over: usize,
    pub outgoing: usize,
    pub sign: Option<Sign>,
}

/// A propagation failure: a crossing forces a strand to a second value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clash {
    pub crossing: usize,
    pub label: ArcLabel,
    pub have: u32,
    pub derived: u32,
}

/// Crossing relations over strands, with forward propagation.
#[derive(Clone, Debug)]
pub struct StrandSystem {
    strands: Vec<Vec<ArcLabel>>,
    index: BTreeMap<ArcLabel, usize>,
    relations: Vec<Relation>,
    watch: Vec<Vec<usize>>,
}

/// Outcome of extending a partial coloring by propagation alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Complete(Coloring),
    /// Propagation stalled; undetermined strands remain.
    Partial(Vec<Option<u32>>),
    Clash(Clash),
}

impl StrandSystem {
    pub fn new(d: &Diagram) -> Self {
        let strands = d.strands();
        let index: BTreeMap<ArcLabel, usize> = strands
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |a| (*a, i)))
            .collect();
        let relations: Vec<Relation> = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(ci, x)| Relation {
                crossing: ci,
                incoming: index[&x.slots[0]],
                over: index[&x.slots[1]],
                outgoing: index[&x.slots[2]],
                sign: x.sign,
            })
            .collect();
        let mut watch = vec![Vec::new(); strands.len()];
        for (ri, r) in relations.iter().enumerate() {
            for s in [r.incoming, r.over, r.outgoing] {
                if !watch[s].contains(&ri) {
                    watch[s].push(ri);
                }
            }
        }
        StrandSystem {
            strands,
            index,
            relations,
            watch,
        }
    }

    pub fn strands(&self) -> &[Vec<ArcLabel>] {
        &self.strands
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn strand_of(&self, a: ArcLabel) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn to_coloring(&self, palette: &Palette, values: &[u32]) -> Coloring {
        let colors = self
            .strands
            .iter()
            .zip(values)
            .flat_map(|(s, v)| s.iter().map(move |a| (*a, *v)))
            .collect();
        Coloring {
            palette: palette.clone(),
            colors,
        }
    }

    /// Runs relations to a fixed point starting from the given relation queue.
    fn propagate(
        &self,
        palette: &Palette,
        assign: &mut [Option<u32>],
        trail: &mut Vec<usize>,
        mut queue: Vec<usize>,
    ) -> Result<(), Clash> {
        while let Some(ri) = queue.pop() {
            let r = self.relations[ri];
            let (target, value) = match (assign[r.incoming], assign[r.over], assign[r.outgoing]) {
                (Some(a), Some(b), _) => (r.outgoing, palette.act(a, b, r.sign)),
                (None, Some(b), Some(c)) => (r.incoming, palette.act_inv(c, b, r.sign)),
                _ => continue,
            };
            match assign[target] {
                Some(have) if have != value => {
                    return Err(Clash {
                        crossing: r.crossing,
                        label: self.strands[target][0],
                        have,
                        derived: value,
                    })
                }
                Some(_) => {}
                None => {
                    assign[target] = Some(value);
                    trail.push(target);
                    queue.extend(self.watch[target].iter().copied());
                }
            }
        }
        Ok(())
    }

    fn pinned(
        &self,
        pins: &BTreeMap<ArcLabel, u32>,
    ) -> Result<Option<Vec<Option<u32>>>, ColoringError> {
        let mut assign = vec![None; self.strands.len()];
        for (a, v) in pins {
            let s = self.strand_of(*a).ok_or(ColoringError::UnknownArc(*a))?;
            match assign[s] {
                Some(w) if w != *v => return Ok(None),
                _ => assign[s] = Some(*v),
            }
        }
        Ok(Some(assign))
    }

    /// Extends `partial` as far as propagation goes.
    pub fn extend(
        &self,
        palette: &Palette,
        partial: &BTreeMap<ArcLabel, u32>,
    ) -> Result<Extension, ColoringError> {
        let mut assign = vec![None; self.strands.len()];
        for (a, v) in partial {
            let Some(s) = self.strand_of(*a) else {
                continue;
            };
            match assign[s] {
                Some(w) if w != *v => {
                    return Ok(Extension::Clash(Clash {
                        crossing: usize::MAX,
                        label: *a,
                        have: w,
                        derived: *v,
                    }))
                }
                _ => assign[s] = Some(*v),
            }
        }
        let mut trail = Vec::new();
        let all: Vec<usize> = (0..self.relations.len()).collect();
        if let Err(c) = self.propagate(palette, &mut assign, &mut trail, all) {
            return Ok(Extension::Clash(c));
        }
        if assign.iter().all(Option::is_some) {
            let values: Vec<u32> = assign.into_iter().map(Option::unwrap).collect();
            Ok(Extension::Complete(self.to_coloring(palette, &values)))
        } else {
            Ok(Extension::Partial(assign))
        }
    }

    /// Exhaustive backtracking with propagation. Returns up to `cap`
    /// strand assignments and whether the search ran to completion.
    pub fn enumerate(
        &self,
        palette: &Palette,
        pins: &BTreeMap<ArcLabel, u32>,
        cap: usize,
    ) -> Result<(Vec<Vec<u32>>, bool), ColoringError> {
        for v in pins.values() {
            if *v >= palette.size() {
                return Err(ColoringError::ColorRange {
                    color: *v,
                    size: palette.size(),
                });
            }
        }
        let Some(mut assign) = self.pinned(pins)? else {
            return Ok((vec![], true));
        };
        let mut trail = Vec::new();
        let all: Vec<usize> = (0..self.relations.len()).collect();
        if self
            .propagate(palette, &mut assign, &mut trail, all)
            .is_err()
        {
            return Ok((vec![], true));
        }
        let mut out = Vec::new();
        let complete = self.dfs(palette, &mut assign, cap, &mut out);
        Ok((out, complete))
    }

    fn dfs(
        &self,
        palette: &Palette,
        assign: &mut Vec<Option<u32>>,
        cap: usize,
        out: &mut Vec<Vec<u32>>,
    ) -> bool {
        let Some(var) = assign.iter().position(Option::is_none) else {
            if out.len() == cap {
                return false;
            }
            out.push(assign.iter().map(|v| v.unwrap()).collect());
            return true;
        };
        for value in 0..palette.size() {
            let mut trail = vec![var];
            assign[var] = Some(value);
            let ok = self
                .propagate(palette, assign, &mut trail, self.watch[var].clone())
                .is_ok();
            let keep_going = !ok || self.dfs(palette, assign, cap, out);
            for s in trail {
                assign[s] = None;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }
}
