use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Arc, Crossing, Diagram, DiagramError, End, Tangle};

/// π-rotations of the tangle ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    /// About the horizontal axis in the plane: top and bottom swap.
    Tau1,
    /// About the axis perpendicular to the plane: a half turn in the plane.
    Tau2,
    /// About the vertical axis in the plane: left and right swap.
    Tau3,
}

/// Unions arcs pairwise and relabels everything as `0..`: boundary
/// endpoints first (bottom, then top), then merged arcs in merge order, then
/// crossing slots. Classes left without any crossing or endpoint become free
/// loops.
pub(crate) fn glue(
    crossings: Vec<Crossing>,
    bottom: Vec<End>,
    top: Vec<End>,
    free_loops: Vec<Arc>,
    merges: &[(Arc, Arc)],
) -> Tangle {
    let mut index: HashMap<Arc, usize> = HashMap::new();
    let mut ids: Vec<Arc> = Vec::new();
    let mut touch = |a: Arc| -> usize {
        *index.entry(a).or_insert_with(|| {
            ids.push(a);
            ids.len() - 1
        })
    };
    for c in &crossings {
        for a in c.slots() {
            touch(a);
        }
    }
    for e in bottom.iter().chain(&top) {
        touch(e.arc);
    }
    for (a, b) in merges {
        touch(*a);
        touch(*b);
    }
    let mut uf = super::UnionFind::new(ids.len());
    for (a, b) in merges {
        uf.union(index[a], index[b]);
    }
    let mut used = vec![false; ids.len()];
    for a in crossings.iter().flat_map(|c| c.slots()).chain(bottom.iter().chain(&top).map(|e| e.arc)) {
        used[uf.find(index[&a])] = true;
    }
    let mut label: HashMap<usize, Arc> = HashMap::new();
    let mut next: Arc = 0;
    let mut name = |a: Arc, uf: &mut super::UnionFind, label: &mut HashMap<usize, Arc>| -> Arc {
        let r = uf.find(index[&a]);
        *label.entry(r).or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let bottom: Vec<End> = bottom.iter().map(|e| End::new(name(e.arc, &mut uf, &mut label), e.up)).collect();
    let top: Vec<End> = top.iter().map(|e| End::new(name(e.arc, &mut uf, &mut label), e.up)).collect();
    let mut loops = Vec::new();
    for (a, b) in merges {
        let r = uf.find(index[a]);
        if used[r] {
            name(*a, &mut uf, &mut label);
            name(*b, &mut uf, &mut label);
        } else if !label.contains_key(&r) {
            loops.push(name(*a, &mut uf, &mut label));
        }
    }
    let crossings: Vec<Crossing> = crossings.iter().map(|c| c.map_arcs(|a| name(a, &mut uf, &mut label))).collect();
    for _ in &free_loops {
        next += 1;
        loops.push(next - 1);
    }
    Tangle::from_parts(crossings, bottom, top, loops)
}

fn max_arc(t: &Tangle) -> Arc {
    t.crossings
        .iter()
        .flat_map(|c| c.slots())
        .chain(t.bottom.iter().chain(&t.top).map(|e| e.arc))
        .chain(t.free_loops.iter().copied())
        .max()
        .map_or(0, |m| m + 1)
}

fn shifted(t: &Tangle, off: Arc) -> Tangle {
    Tangle::from_parts(
        t.crossings.iter().map(|c| c.map_arcs(|a| a + off)).collect(),
        t.bottom.iter().map(|e| End::new(e.arc + off, e.up)).collect(),
        t.top.iter().map(|e| End::new(e.arc + off, e.up)).collect(),
        t.free_loops.iter().map(|a| a + off).collect(),
    )
}

impl Tangle {
    /// `self` placed below `above`, glued along `self.top` / `above.bottom`.
    pub fn stack(&self, above: &Tangle) -> Result<Tangle, DiagramError> {
        if self.top.len() != above.bottom.len() {
            return Err(DiagramError::Arity(format!(
                "{} top endpoints against {} bottom endpoints",
                self.top.len(),
                above.bottom.len()
            )));
        }
        let off = max_arc(self);
        let above = shifted(above, off);
        let mut merges = Vec::new();
        for (i, (lo, hi)) in self.top.iter().zip(&above.bottom).enumerate() {
            if lo.up != hi.up {
                return Err(DiagramError::OrientationClash(i));
            }
            merges.push((lo.arc, hi.arc));
        }
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&above.crossings);
        let mut loops = self.free_loops.clone();
        loops.extend_from_slice(&above.free_loops);
        Ok(glue(crossings, self.bottom.clone(), above.top.clone(), loops, &merges))
    }

    /// `self` on the left, `right` on the right.
    pub fn side_by_side(&self, right: &Tangle) -> Tangle {
        let off = max_arc(self);
        let right = shifted(right, off);
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&right.crossings);
        let mut bottom = self.bottom.clone();
        bottom.extend_from_slice(&right.bottom);
        let mut top = self.top.clone();
        top.extend_from_slice(&right.top);
        let mut loops = self.free_loops.clone();
        loops.extend_from_slice(&right.free_loops);
        glue(crossings, bottom, top, loops, &[])
    }

    pub fn rotate(&self, axis: Axis, reverse_strings: bool) -> Tangle {
        let flip = |ends: &[End], rev: bool| -> Vec<End> {
            let mut v: Vec<End> = ends.iter().map(|e| End::new(e.arc, !e.up)).collect();
            if rev {
                v.reverse();
            }
            v
        };
        let (crossings, bottom, top) = match axis {
            Axis::Tau1 => (self.crossings.iter().map(Crossing::flipped).collect(), flip(&self.top, false), flip(&self.bottom, false)),
            Axis::Tau2 => (self.crossings.clone(), flip(&self.top, true), flip(&self.bottom, true)),
            Axis::Tau3 => {
                let rev = |ends: &[End]| -> Vec<End> { ends.iter().rev().copied().collect() };
                (self.crossings.iter().map(Crossing::flipped).collect(), rev(&self.bottom), rev(&self.top))
            }
        };
        let t = Tangle::from_parts(crossings, bottom, top, self.free_loops.clone());
        if reverse_strings {
            t.reverse_all()
        } else {
            t
        }
    }

    pub fn reverse_all(&self) -> Tangle {
        Tangle::from_parts(
            self.crossings.iter().map(Crossing::reversed).collect(),
            self.bottom.iter().map(|e| End::new(e.arc, !e.up)).collect(),
            self.top.iter().map(|e| End::new(e.arc, !e.up)).collect(),
            self.free_loops.clone(),
        )
    }

    pub fn mirror(&self) -> Tangle {
        Tangle::from_parts(
            self.crossings.iter().map(Crossing::switched).collect(),
            self.bottom.clone(),
            self.top.clone(),
            self.free_loops.clone(),
        )
    }

    /// Joins top `i` to bottom `i` around the right side for the last `k`
    /// positions.
    pub fn partial_trace_close(&self, k: usize) -> Result<Tangle, DiagramError> {
        let (nb, nt) = (self.bottom.len(), self.top.len());
        if k > nb || k > nt {
            return Err(DiagramError::Arity(format!("cannot close {k} strands of a ({nb}, {nt}) tangle")));
        }
        let mut merges = Vec::new();
        for j in 0..k {
            let (b, t) = (self.bottom[nb - k + j], self.top[nt - k + j]);
            if b.up != t.up {
                return Err(DiagramError::OrientationClash(nb - k + j));
            }
            merges.push((t.arc, b.arc));
        }
        Ok(glue(
            self.crossings.clone(),
            self.bottom[..nb - k].to_vec(),
            self.top[..nt - k].to_vec(),
            self.free_loops.clone(),
            &merges,
        ))
    }

    /// Braid-style closure: top `i` joined to bottom `i` around the right.
    pub fn trace_close(&self) -> Result<Diagram, DiagramError> {
        if self.bottom.len() != self.top.len() {
            return Err(DiagramError::Arity("trace closure needs equal endpoint counts".into()));
        }
        self.partial_trace_close(self.bottom.len())?.into_diagram()
    }

    /// Plat closure: caps join top endpoints `2i`, `2i+1`, cups join the
    /// same bottom pairs.
    pub fn close_tangle(&self) -> Result<Diagram, DiagramError> {
        let (nb, nt) = (self.bottom.len(), self.top.len());
        if nb % 2 != 0 || nt % 2 != 0 {
            return Err(DiagramError::Arity(format!("plat closure needs even endpoint counts, found ({nb}, {nt})")));
        }
        let mut merges = Vec::new();
        for (side, ends) in [(0, &self.bottom), (nb, &self.top)] {
            for i in (0..ends.len()).step_by(2) {
                let (a, b) = (ends[i], ends[i + 1]);
                if a.up == b.up {
                    return Err(DiagramError::OrientationClash(side + i));
                }
                merges.push((a.arc, b.arc));
            }
        }
        glue(self.crossings.clone(), Vec::new(), Vec::new(), self.free_loops.clone(), &merges).into_diagram()
    }
}
