use std::collections::HashMap;

use super::ops::glue;
use super::{Arc, Crossing, Diagram, DiagramError, End, Tangle, UnionFind};

/// Orientation signs for the parallel copies of each strand, indexed by the
/// strand's position in [`Tangle::strands`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableSpec {
    pub copies: Vec<Vec<i8>>,
}

impl CableSpec {
    pub fn uniform(strand_count: usize, m: usize) -> Self {
        Self { copies: vec![vec![1; m]; strand_count] }
    }
}

impl Tangle {
    /// Strands as arc sets: open strands ordered by the boundary position
    /// where they start, then closed components by smallest arc.
    pub fn strands(&self) -> Vec<Vec<Arc>> {
        let mut ids: Vec<Arc> = self
            .crossings
            .iter()
            .flat_map(|c| c.slots())
            .chain(self.bottom.iter().chain(&self.top).map(|e| e.arc))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<Arc, usize> = ids.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for c in &self.crossings {
            uf.union(index[&c.over_in], index[&c.over_out]);
            uf.union(index[&c.under_in], index[&c.under_out]);
        }
        let mut order: Vec<usize> = Vec::new();
        let nb = self.bottom.len();
        for (k, e) in self.bottom.iter().chain(&self.top).enumerate() {
            let starts = if k < nb { e.up } else { !e.up };
            if starts {
                order.push(uf.find(index[&e.arc]));
            }
        }
        for a in &ids {
            let r = uf.find(index[a]);
            if !order.contains(&r) {
                order.push(r);
            }
        }
        let mut out: Vec<Vec<Arc>> = vec![Vec::new(); order.len()];
        for a in &ids {
            let r = uf.find(index[a]);
            let k = order.iter().position(|x| *x == r).unwrap();
            out[k].push(*a);
        }
        for a in &self.free_loops {
            out.push(vec![*a]);
        }
        out
    }
}

/// Blackboard parallel of a tangle. Copy `k` of an arc lies `k` places to
/// the left-to-right of the arc's direction, with orientation sign
/// `spec.copies[strand][k]` relative to the arc.
pub fn cable_general(t: &Tangle, spec: &CableSpec) -> Result<Tangle, DiagramError> {
    let strands = t.strands();
    if spec.copies.len() != strands.len() {
        return Err(DiagramError::Arity(format!("{} strands but {} cable specifications", strands.len(), spec.copies.len())));
    }
    let mut signs: HashMap<Arc, &[i8]> = HashMap::new();
    for (s, arcs) in strands.iter().enumerate() {
        if spec.copies[s].is_empty() || spec.copies[s].iter().any(|e| *e != 1 && *e != -1) {
            return Err(DiagramError::Arity(format!("strand {s} needs a nonempty list of ±1 copy signs")));
        }
        for a in arcs {
            signs.insert(*a, &spec.copies[s]);
        }
    }
    let mut next: Arc = 0;
    let mut seg: HashMap<(Arc, usize), Arc> = HashMap::new();
    let mut seg_id = |a: Arc, k: usize, next: &mut Arc| -> Arc {
        *seg.entry((a, k)).or_insert_with(|| {
            *next += 1;
            *next - 1
        })
    };
    let mut crossings = Vec::new();
    for c in &t.crossings {
        let eu = signs[&c.under_in];
        let eo = signs[&c.over_in];
        let (q, p) = (eu.len(), eo.len());
        // grid[(i, y)] collects [over_in, over_out, under_in, under_out] along the
        // original directions; y counts from the south
        let mut grid: HashMap<(usize, usize), [Arc; 4]> = HashMap::new();
        for i in 0..q {
            let mut prev = seg_id(c.under_in, i, &mut next);
            for y in 0..p {
                let out = if y + 1 == p {
                    seg_id(c.under_out, i, &mut next)
                } else {
                    next += 1;
                    next - 1
                };
                let cell = grid.entry((i, y)).or_insert([0; 4]);
                cell[2] = prev;
                cell[3] = out;
                prev = out;
            }
        }
        for j in 0..p {
            let y = if c.sign > 0 { p - 1 - j } else { j };
            let xs: Vec<usize> = if c.sign > 0 { (0..q).collect() } else { (0..q).rev().collect() };
            let mut prev = seg_id(c.over_in, j, &mut next);
            for (step, x) in xs.iter().enumerate() {
                let out = if step + 1 == q {
                    seg_id(c.over_out, j, &mut next)
                } else {
                    next += 1;
                    next - 1
                };
                let cell = grid.get_mut(&(*x, y)).unwrap();
                cell[0] = prev;
                cell[1] = out;
                prev = out;
            }
        }
        let mut keys: Vec<_> = grid.keys().copied().collect();
        keys.sort_unstable();
        for (i, y) in keys {
            let [oi, oo, ui, uo] = grid[&(i, y)];
            let j = if c.sign > 0 { p - 1 - y } else { y };
            let (so, su) = (eo[j], eu[i]);
            let (oi, oo) = if so > 0 { (oi, oo) } else { (oo, oi) };
            let (ui, uo) = if su > 0 { (ui, uo) } else { (uo, ui) };
            crossings.push(Crossing::new(oi, oo, ui, uo, c.sign * so * su));
        }
    }
    let mut expand = |ends: &[End], next: &mut Arc| -> Vec<End> {
        let mut out = Vec::new();
        for e in ends {
            let sg = signs[&e.arc];
            let mut block: Vec<End> =
                (0..sg.len()).map(|k| End::new(seg_id(e.arc, k, next), if sg[k] > 0 { e.up } else { !e.up })).collect();
            if !e.up {
                block.reverse();
            }
            out.extend(block);
        }
        out
    };
    let bottom = expand(&t.bottom, &mut next);
    let top = expand(&t.top, &mut next);
    let mut loops = Vec::new();
    for (s, arcs) in strands.iter().enumerate() {
        if arcs.len() == 1 && t.free_loops.contains(&arcs[0]) {
            for _ in 0..spec.copies[s].len() {
                next += 1;
                loops.push(next - 1);
            }
        }
    }
    Ok(glue(crossings, bottom, top, loops, &[]))
}

/// `F^(m2, m1)`: the strand through bottom endpoint 0 gets `m1` copies with
/// signs `orient1`, the other strand `m2` copies with signs `orient2`.
pub fn cable_tangle(f: &Tangle, m2: usize, m1: usize, orient1: &[i8], orient2: &[i8]) -> Result<Tangle, DiagramError> {
    if f.bottom().len() != 2 || f.top().len() != 2 {
        return Err(DiagramError::Arity("cable_tangle expects a 2-tangle".into()));
    }
    if orient1.len() != m1 || orient2.len() != m2 {
        return Err(DiagramError::Arity(format!(
            "orientation lengths ({}, {}) do not match multiplicities ({m1}, {m2})",
            orient1.len(),
            orient2.len()
        )));
    }
    let strands = f.strands();
    let first = f.bottom()[0].arc;
    let mut spec = Vec::new();
    for s in &strands {
        if s.contains(&first) {
            spec.push(orient1.to_vec());
        } else if s.contains(&f.bottom()[1].arc) {
            spec.push(orient2.to_vec());
        } else {
            return Err(DiagramError::Arity("2-tangle has closed components".into()));
        }
    }
    if f.strands().iter().filter(|s| s.contains(&first) && s.contains(&f.bottom()[1].arc)).count() > 0 {
        return Err(DiagramError::Arity("bottom endpoints are joined to each other".into()));
    }
    cable_general(f, &CableSpec { copies: spec })
}

/// Blackboard `m`-parallel of a closed diagram, every copy oriented along
/// the original.
pub fn cable_diagram(d: &Diagram, m: usize) -> Diagram {
    let t = d.clone().into_tangle();
    let n = t.strands().len();
    cable_general(&t, &CableSpec::uniform(n, m)).expect("uniform cable").into_diagram().expect("closed")
}

#[cfg(test)]
mod tests {
    use super::super::{tangle_code, BraidWord};
    use super::*;

    #[test]
    fn one_cable_is_identity() {
        let f = BraidWord::new(3, vec![1, -2, 1]).unwrap().partial_closure(1).unwrap();
        let c = cable_tangle(&f, 1, 1, &[1], &[1]).unwrap();
        assert_eq!(tangle_code(&c), tangle_code(&f));
    }

    #[test]
    fn cable_matches_braid_cable() {
        let b = BraidWord::new(3, vec![1, -2, 1, 2, 2]).unwrap();
        let t = b.to_tangle();
        let c = cable_general(&t, &CableSpec::uniform(3, 2)).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(tangle_code(&c), tangle_code(&b.cable(&[2, 2, 2]).to_tangle()));
    }

    #[test]
    fn crossing_counts() {
        let f = BraidWord::new(3, vec![1, 1, 2, -1, 2, 1, 1]).unwrap().partial_closure(1).unwrap();
        let c = cable_tangle(&f, 3, 3, &[1, 1, 1], &[1, 1, 1]).unwrap();
        assert_eq!(c.crossing_count(), 63);
        let c = cable_tangle(&f, 2, 3, &[1, 1, -1], &[1, -1]).unwrap();
        assert!(c.validate().is_ok());
        let strands = f.strands();
        let first = f.bottom()[0].arc;
        let width = |a: Arc| if strands.iter().any(|s| s.contains(&first) && s.contains(&a)) { 3 } else { 2 };
        let expect: usize = f.crossings().iter().map(|x| width(x.over_in) * width(x.under_in)).sum();
        assert_eq!(c.crossing_count(), expect);
    }

    #[test]
    fn reversed_copies_stay_planar() {
        let d = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure().into_tangle();
        let c = cable_general(&d, &CableSpec { copies: vec![vec![1, -1, 1]] }).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.crossing_count(), 27);
        // each block contributes (Σε)² = 1
        assert_eq!(c.writhe(), 3);
    }
}
