//! Oriented planar diagrams of knots, links and tangles in PD form.

mod braid;
mod cable;
mod code;
mod json;
mod ops;
mod simplify;

use std::collections::HashMap;

pub use braid::BraidWord;
pub use cable::{cable_diagram, cable_general, cable_tangle, CableSpec};
pub use code::{canonical_code, tangle_code};
pub use ops::Axis;
pub use simplify::simplify;

/// Glues arcs of a closed diagram and relabels; see [`ops::glue`].
pub(crate) fn glue_closed(crossings: Vec<Crossing>, free_loops: Vec<Arc>, merges: &[(Arc, Arc)]) -> Diagram {
    let t = ops::glue(crossings, Vec::new(), Vec::new(), free_loops, merges);
    Diagram::from_parts(t.crossings, t.free_loops)
}

pub type Arc = u32;

/// One crossing. The under strand runs from `under_in` to `under_out`, the
/// over strand from `over_in` to `over_out`.
///
/// For a positive crossing the counter-clockwise order of the four arcs is
/// `[under_in, over_out, under_out, over_in]`; for a negative one it is
/// `[under_in, over_in, under_out, over_out]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub over_in: Arc,
    pub over_out: Arc,
    pub under_in: Arc,
    pub under_out: Arc,
    pub sign: i8,
}

impl Crossing {
    pub fn new(over_in: Arc, over_out: Arc, under_in: Arc, under_out: Arc, sign: i8) -> Self {
        Self { over_in, over_out, under_in, under_out, sign }
    }

    /// Arcs in counter-clockwise order starting from `under_in`.
    pub fn ccw(&self) -> [Arc; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        } else {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        }
    }

    /// Same crossing with the other strand on top; the sign flips.
    pub fn switched(&self) -> Self {
        Self {
            over_in: self.under_in,
            over_out: self.under_out,
            under_in: self.over_in,
            under_out: self.over_out,
            sign: -self.sign,
        }
    }

    /// All strand directions reversed; the sign is unchanged.
    pub fn reversed(&self) -> Self {
        Self {
            over_in: self.over_out,
            over_out: self.over_in,
            under_in: self.under_out,
            under_out: self.under_in,
            sign: self.sign,
        }
    }

    /// The same crossing seen from below: over and under swap, the sign stays.
    pub fn flipped(&self) -> Self {
        Self {
            over_in: self.under_in,
            over_out: self.under_out,
            under_in: self.over_in,
            under_out: self.over_out,
            sign: self.sign,
        }
    }

    pub fn map_arcs(&self, mut f: impl FnMut(Arc) -> Arc) -> Self {
        Self {
            over_in: f(self.over_in),
            over_out: f(self.over_out),
            under_in: f(self.under_in),
            under_out: f(self.under_out),
            sign: self.sign,
        }
    }

    /// Position in the ccw order of each slot: `[over_in, over_out, under_in, under_out]`.
    pub(crate) fn positions(&self) -> [usize; 4] {
        if self.sign > 0 {
            [3, 1, 0, 2]
        } else {
            [1, 3, 0, 2]
        }
    }

    pub(crate) fn slots(&self) -> [Arc; 4] {
        [self.over_in, self.over_out, self.under_in, self.under_out]
    }
}

/// Boundary endpoint of a tangle: the arc meeting the square there and
/// whether that arc points up at the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct End {
    pub arc: Arc,
    pub up: bool,
}

impl End {
    pub fn new(arc: Arc, up: bool) -> Self {
        Self { arc, up }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("duplicate arc {0}")]
    DuplicateArc(Arc),
    #[error("orientation mismatch on arc {0}")]
    OrientationMismatch(Arc),
    #[error("arc {0} has a free end")]
    DanglingArc(Arc),
    #[error("non-planar connectivity (Euler count {euler}, expected {expected})")]
    NonPlanar { euler: i64, expected: i64 },
    #[error("crossing sign must be +1 or -1, found {0}")]
    BadSign(i8),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("orientation clash at boundary position {0}")]
    OrientationClash(usize),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("component list does not match crossing data")]
    ComponentMismatch,
    #[error("braid generator {letter} out of range for {strands} strands")]
    BraidIndex { letter: i32, strands: usize },
}

/// Where an arc starts or ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    /// Crossing index and ccw position.
    Cross(usize, usize),
    Bottom(usize),
    Top(usize),
}

#[derive(Debug, Default)]
pub(crate) struct Incidence {
    pub tail: HashMap<Arc, Node>,
    pub head: HashMap<Arc, Node>,
}

impl Incidence {
    pub(crate) fn build(crossings: &[Crossing], bottom: &[End], top: &[End]) -> Result<Self, DiagramError> {
        let mut seen: HashMap<Arc, (u8, u8)> = HashMap::new();
        let mut uses: Vec<(Arc, bool, Node)> = Vec::with_capacity(4 * crossings.len() + bottom.len() + top.len());
        for (i, c) in crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::BadSign(c.sign));
            }
            let pos = c.positions();
            uses.push((c.over_in, false, Node::Cross(i, pos[0])));
            uses.push((c.over_out, true, Node::Cross(i, pos[1])));
            uses.push((c.under_in, false, Node::Cross(i, pos[2])));
            uses.push((c.under_out, true, Node::Cross(i, pos[3])));
        }
        for (i, e) in bottom.iter().enumerate() {
            uses.push((e.arc, e.up, Node::Bottom(i)));
        }
        for (i, e) in top.iter().enumerate() {
            uses.push((e.arc, !e.up, Node::Top(i)));
        }
        for (a, is_tail, _) in &uses {
            let entry = seen.entry(*a).or_default();
            if *is_tail {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
        let mut bad: Vec<(Arc, DiagramError)> = Vec::new();
        for (a, (t, h)) in &seen {
            if t + h > 2 {
                bad.push((*a, DiagramError::DuplicateArc(*a)));
            } else if *t == 2 || *h == 2 {
                bad.push((*a, DiagramError::OrientationMismatch(*a)));
            } else if t + h == 1 {
                bad.push((*a, DiagramError::DanglingArc(*a)));
            }
        }
        if let Some((_, e)) = bad.into_iter().min_by_key(|(a, e)| (!matches!(e, DiagramError::DuplicateArc(_)), *a)) {
            return Err(e);
        }
        let mut inc = Incidence::default();
        for (a, is_tail, node) in uses {
            if is_tail {
                inc.tail.insert(a, node);
            } else {
                inc.head.insert(a, node);
            }
        }
        Ok(inc)
    }

    /// Arc following `a` through its head crossing, `None` at the boundary.
    pub(crate) fn next(&self, crossings: &[Crossing], a: Arc) -> Option<Arc> {
        match self.head[&a] {
            Node::Cross(i, _) => {
                let c = &crossings[i];
                Some(if c.over_in == a { c.over_out } else { c.under_out })
            }
            _ => None,
        }
    }
}

/// Euler-count planarity check. The boundary, when present, is one extra
/// vertex whose rotation runs clockwise around the square.
pub(crate) fn check_planar(crossings: &[Crossing], bottom: &[End], top: &[End], inc: &Incidence) -> Result<(), DiagramError> {
    let nc = crossings.len();
    let nb = bottom.len() + top.len();
    if nc == 0 && nb == 0 {
        return Ok(());
    }
    // dart ids: crossing darts 4*i + p, boundary darts 4*nc + k in rotation order
    let mut bpos = vec![0usize; nb];
    let mut order: Vec<Node> = Vec::with_capacity(nb);
    if !bottom.is_empty() {
        order.push(Node::Bottom(0));
    }
    order.extend((0..top.len()).map(Node::Top));
    order.extend((1..bottom.len()).rev().map(Node::Bottom));
    let key = |n: Node| match n {
        Node::Bottom(i) => i,
        Node::Top(i) => bottom.len() + i,
        Node::Cross(..) => unreachable!(),
    };
    for (k, n) in order.iter().enumerate() {
        bpos[key(*n)] = k;
    }
    let dart = |n: Node| -> usize {
        match n {
            Node::Cross(i, p) => 4 * i + p,
            other => 4 * nc + bpos[key(other)],
        }
    };
    let total = 4 * nc + nb;
    let mut alpha = vec![usize::MAX; total];
    let mut edges = 0i64;
    for (a, t) in &inc.tail {
        let h = inc.head[a];
        let (dt, dh) = (dart(*t), dart(h));
        alpha[dt] = dh;
        alpha[dh] = dt;
        edges += 1;
    }
    let sigma = |d: usize| -> usize {
        if d < 4 * nc {
            4 * (d / 4) + (d % 4 + 1) % 4
        } else {
            4 * nc + (d - 4 * nc + 1) % nb
        }
    };
    let mut seen = vec![false; total];
    let mut faces = 0i64;
    for d in 0..total {
        if seen[d] {
            continue;
        }
        faces += 1;
        let mut x = d;
        while !seen[x] {
            seen[x] = true;
            x = sigma(alpha[x]);
        }
    }
    // connected pieces over vertices
    let nv = nc + usize::from(nb > 0);
    let vertex = |d: usize| if d < 4 * nc { d / 4 } else { nc };
    let mut uf = UnionFind::new(nv);
    for d in 0..total {
        uf.union(vertex(d), vertex(alpha[d]));
    }
    let pieces = (0..nv).filter(|v| uf.find(*v) == *v).count() as i64;
    let euler = nv as i64 - edges + faces;
    if euler != 2 * pieces {
        return Err(DiagramError::NonPlanar { euler, expected: 2 * pieces });
    }
    Ok(())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Closed oriented diagram: crossings plus crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: Vec<Arc>,
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<Crossing>, free_loops: Vec<Arc>) -> Result<Self, DiagramError> {
        let d = Self { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_loops: Vec<Arc>) -> Self {
        Self { crossings, free_loops }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(n: usize) -> Self {
        Self { crossings: Vec::new(), free_loops: (0..n as Arc).collect() }
    }

    /// Parses `[over_in, over_out, under_in, under_out, sign]` rows.
    pub fn from_pd(rows: &[[i64; 5]]) -> Result<Self, DiagramError> {
        let crossings = rows
            .iter()
            .map(|r| {
                let sign = i8::try_from(r[4]).map_err(|_| DiagramError::BadSign(0))?;
                Ok(Crossing::new(r[0] as Arc, r[1] as Arc, r[2] as Arc, r[3] as Arc, sign))
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        Self::new(crossings, Vec::new())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[Arc] {
        &self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let inc = Incidence::build(&self.crossings, &[], &[])?;
        for a in &self.free_loops {
            if inc.tail.contains_key(a) || self.free_loops.iter().filter(|b| *b == a).count() > 1 {
                return Err(DiagramError::DuplicateArc(*a));
            }
        }
        check_planar(&self.crossings, &[], &[], &inc)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Components as arc cycles, each starting at its smallest arc, listed
    /// in order of that arc.
    pub fn components(&self) -> Vec<Vec<Arc>> {
        let inc = Incidence::build(&self.crossings, &[], &[]).expect("valid diagram");
        let mut arcs: Vec<Arc> = inc.tail.keys().copied().collect();
        arcs.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in arcs {
            if seen.contains(&a) {
                continue;
            }
            let mut comp = Vec::new();
            let mut x = a;
            loop {
                seen.insert(x);
                comp.push(x);
                x = inc.next(&self.crossings, x).expect("closed diagram");
                if x == a {
                    break;
                }
            }
            out.push(comp);
        }
        for a in &self.free_loops {
            out.push(vec![*a]);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn reverse_all(&self) -> Self {
        Self { crossings: self.crossings.iter().map(Crossing::reversed).collect(), free_loops: self.free_loops.clone() }
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        Self { crossings: self.crossings.iter().map(Crossing::switched).collect(), free_loops: self.free_loops.clone() }
    }

    /// Relabels arcs as `0..` in order of first appearance.
    pub fn relabeled(&self) -> Self {
        let mut map: HashMap<Arc, Arc> = HashMap::new();
        let mut next = 0;
        let mut id = |a: Arc, map: &mut HashMap<Arc, Arc>| {
            *map.entry(a).or_insert_with(|| {
                next += 1;
                next - 1
            })
        };
        let crossings = self.crossings.iter().map(|c| c.map_arcs(|a| id(a, &mut map))).collect();
        let free_loops = self.free_loops.iter().map(|a| id(*a, &mut map)).collect();
        Self { crossings, free_loops }
    }

    pub fn into_tangle(self) -> Tangle {
        Tangle { crossings: self.crossings, bottom: Vec::new(), top: Vec::new(), free_loops: self.free_loops }
    }
}

/// A single-component diagram with blackboard framing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedKnot(Diagram);

impl FramedKnot {
    pub fn new(d: Diagram) -> Result<Self, DiagramError> {
        match d.component_count() {
            1 => Ok(Self(d)),
            n => Err(DiagramError::NotAKnot(n)),
        }
    }

    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn into_diagram(self) -> Diagram {
        self.0
    }
}

impl std::ops::Deref for FramedKnot {
    type Target = Diagram;
    fn deref(&self) -> &Diagram {
        &self.0
    }
}

/// Oriented tangle in a square with endpoints on the bottom and top edges,
/// each numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    bottom: Vec<End>,
    top: Vec<End>,
    free_loops: Vec<Arc>,
}

impl Tangle {
    pub fn new(crossings: Vec<Crossing>, bottom: Vec<End>, top: Vec<End>, free_loops: Vec<Arc>) -> Result<Self, DiagramError> {
        let t = Self { crossings, bottom, top, free_loops };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, bottom: Vec<End>, top: Vec<End>, free_loops: Vec<Arc>) -> Self {
        Self { crossings, bottom, top, free_loops }
    }

    /// Straight vertical strands with the given directions (true = up).
    pub fn identity(up: &[bool]) -> Self {
        let ends: Vec<End> = up.iter().enumerate().map(|(i, u)| End::new(i as Arc, *u)).collect();
        Self { crossings: Vec::new(), bottom: ends.clone(), top: ends, free_loops: Vec::new() }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn bottom(&self) -> &[End] {
        &self.bottom
    }

    pub fn top(&self) -> &[End] {
        &self.top
    }

    pub fn free_loops(&self) -> &[Arc] {
        &self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let inc = Incidence::build(&self.crossings, &self.bottom, &self.top)?;
        for a in &self.free_loops {
            if inc.tail.contains_key(a) || self.free_loops.iter().filter(|b| *b == a).count() > 1 {
                return Err(DiagramError::DuplicateArc(*a));
            }
        }
        check_planar(&self.crossings, &self.bottom, &self.top, &inc)
    }

    pub(crate) fn incidence(&self) -> Incidence {
        Incidence::build(&self.crossings, &self.bottom, &self.top).expect("valid tangle")
    }

    /// Endpoint where each strand entering at `bottom`/`top` leaves, as a
    /// map over boundary positions `0..bottom+top` (bottom first).
    pub fn connectivity(&self) -> Vec<usize> {
        let inc = self.incidence();
        let nb = self.bottom.len();
        let mut out = vec![usize::MAX; nb + self.top.len()];
        let index = |n: Node| match n {
            Node::Bottom(i) => i,
            Node::Top(i) => nb + i,
            Node::Cross(..) => unreachable!(),
        };
        for (k, e) in self.bottom.iter().chain(&self.top).enumerate() {
            let starts_here = if k < nb { e.up } else { !e.up };
            if !starts_here {
                continue;
            }
            let mut a = e.arc;
            while let Some(n) = inc.next(&self.crossings, a) {
                a = n;
            }
            let end = index(inc.head[&a]);
            out[k] = end;
            out[end] = k;
        }
        out
    }

    pub fn into_diagram(self) -> Result<Diagram, DiagramError> {
        if !self.bottom.is_empty() || !self.top.is_empty() {
            return Err(DiagramError::Arity("tangle still has boundary endpoints".into()));
        }
        Ok(Diagram { crossings: self.crossings, free_loops: self.free_loops })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        BraidWord::new(2, vec![1, 1, 1]).unwrap().closure()
    }

    #[test]
    fn unknot_is_valid() {
        assert!(Diagram::unknot().validate().is_ok());
        assert_eq!(Diagram::unknot().component_count(), 1);
    }

    #[test]
    fn trefoil_is_valid() {
        let t = trefoil();
        assert!(t.validate().is_ok());
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.component_count(), 1);
    }

    #[test]
    fn arc_used_three_times() {
        let mut cs = trefoil().crossings().to_vec();
        cs[0].over_in = cs[1].over_in;
        let err = Diagram::new(cs, vec![]).unwrap_err();
        assert!(matches!(err, DiagramError::DuplicateArc(_) | DiagramError::OrientationMismatch(_)), "{err}");
        let mut cs = trefoil().crossings().to_vec();
        let a = cs[0].over_out;
        cs[0].under_out = a;
        cs[1].over_in = a;
        assert!(matches!(Diagram::new(cs, vec![]), Err(DiagramError::DuplicateArc(x)) if x == a));
    }

    #[test]
    fn non_planar_pd_rejected() {
        // a trefoil Gauss code with one crossing's handedness flipped in the
        // rotation system but not in the over/under data
        let t = trefoil();
        let mut cs = t.crossings().to_vec();
        let c = cs[0];
        cs[0] = Crossing::new(c.under_in, c.under_out, c.over_in, c.over_out, c.sign);
        assert!(matches!(Diagram::new(cs, vec![]), Err(DiagramError::NonPlanar { .. })));
    }

    #[test]
    fn tangle_boundary_rotation() {
        assert!(Tangle::identity(&[true, true]).validate().is_ok());
        assert!(Tangle::identity(&[true, false, true]).validate().is_ok());
        // strands crossing over each other without a crossing are not planar
        let bad = Tangle::from_parts(vec![], vec![End::new(0, true), End::new(1, true)], vec![End::new(1, true), End::new(0, true)], vec![]);
        assert!(matches!(bad.validate(), Err(DiagramError::NonPlanar { .. })));
        // a cap and cup is planar
        let capcup = Tangle::from_parts(vec![], vec![End::new(0, true), End::new(0, false)], vec![End::new(1, true), End::new(1, false)], vec![]);
        assert!(capcup.validate().is_ok());
    }

    #[test]
    fn reverse_is_involution() {
        let t = trefoil();
        assert_eq!(t.reverse_all().reverse_all(), t);
        assert_eq!(t.reverse_all().writhe(), t.writhe());
        assert_eq!(Diagram::unknot().reverse_all(), Diagram::unknot());
    }
}
