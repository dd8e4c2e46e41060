use std::collections::{HashMap, HashSet};

use super::{Arc, Diagram, Incidence, Node, Tangle, UnionFind};

const SEP: u32 = u32::MAX;
const END: u32 = u32::MAX - 1;

/// Dense view of a diagram used for traversals.
struct Walk {
    signs: Vec<i8>,
    /// For each arc index: head crossing, whether the arc enters it on the over strand.
    head: Vec<(usize, bool)>,
    tail: Vec<(usize, bool)>,
    next: Vec<usize>,
    prev: Vec<usize>,
    /// For each crossing: [over_in, under_in] arc indices.
    ins: Vec<[usize; 2]>,
    outs: Vec<[usize; 2]>,
}

impl Walk {
    fn new(d: &Diagram) -> Self {
        let cs = d.crossings();
        let mut index: HashMap<Arc, usize> = HashMap::new();
        for c in cs {
            for a in c.slots() {
                let n = index.len();
                index.entry(a).or_insert(n);
            }
        }
        let n = index.len();
        let mut w = Walk {
            signs: cs.iter().map(|c| c.sign).collect(),
            head: vec![(0, false); n],
            tail: vec![(0, false); n],
            next: vec![0; n],
            prev: vec![0; n],
            ins: Vec::with_capacity(cs.len()),
            outs: Vec::with_capacity(cs.len()),
        };
        for (i, c) in cs.iter().enumerate() {
            let (oi, oo, ui, uo) = (index[&c.over_in], index[&c.over_out], index[&c.under_in], index[&c.under_out]);
            w.head[oi] = (i, true);
            w.head[ui] = (i, false);
            w.tail[oo] = (i, true);
            w.tail[uo] = (i, false);
            w.next[oi] = oo;
            w.next[ui] = uo;
            w.prev[oo] = oi;
            w.prev[uo] = ui;
            w.ins.push([oi, ui]);
            w.outs.push([oo, uo]);
        }
        w
    }

    /// Code of the piece reached from `root`, or `None` once it exceeds `best`.
    fn code(&self, root: usize, forward: bool, best: Option<&[u32]>, piece_size: usize) -> Option<Vec<u32>> {
        let nc = self.signs.len();
        let mut label = vec![u32::MAX; nc];
        let mut visited = vec![[false; 2]; nc];
        let mut order: Vec<usize> = Vec::with_capacity(piece_size);
        let mut out: Vec<u32> = Vec::with_capacity(4 * piece_size + 4);
        let mut smaller = best.is_none();
        let mut push = |tok: u32, out: &mut Vec<u32>| -> bool {
            if !smaller {
                let b = best.unwrap();
                let i = out.len();
                match b.get(i) {
                    Some(x) if tok > *x => return false,
                    Some(x) if tok < *x => smaller = true,
                    None => return false,
                    _ => {}
                }
            }
            out.push(tok);
            true
        };
        let mut start = Some(root);
        while let Some(first) = start {
            let mut a = first;
            loop {
                let (c, over) = if forward { self.head[a] } else { self.tail[a] };
                let s = usize::from(!over);
                if visited[c][s] {
                    break;
                }
                visited[c][s] = true;
                if label[c] == u32::MAX {
                    label[c] = order.len() as u32;
                    order.push(c);
                }
                let tok = (label[c] << 2) | (u32::from(over) << 1) | u32::from(self.signs[c] > 0);
                if !push(tok, &mut out) {
                    return None;
                }
                a = if forward { self.next[a] } else { self.prev[a] };
            }
            if !push(SEP, &mut out) {
                return None;
            }
            start = None;
            for &c in &order {
                if let Some(s) = (0..2).find(|s| !visited[c][*s]) {
                    start = Some(if forward { self.ins[c][s] } else { self.outs[c][s] });
                    break;
                }
            }
        }
        Some(out)
    }
}

fn encode(words: &[u32]) -> Vec<u8> {
    words.iter().flat_map(|w| w.to_le_bytes()).collect()
}

/// Code invariant under arc relabeling, choice of starting points and
/// reversal of all orientations. Equal codes mean the diagrams agree on the
/// 2-sphere, up to the placement of split pieces.
pub fn canonical_code(d: &Diagram) -> Vec<u8> {
    let w = Walk::new(d);
    let nc = w.signs.len();
    let mut uf = UnionFind::new(nc);
    for a in 0..w.head.len() {
        uf.union(w.head[a].0, w.tail[a].0);
    }
    let mut pieces: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in 0..w.head.len() {
        pieces.entry(uf.find(w.head[a].0)).or_default().push(a);
    }
    let mut codes: Vec<Vec<u32>> = Vec::new();
    for arcs in pieces.values() {
        let size = arcs.len() / 2;
        let mut best: Option<Vec<u32>> = None;
        for forward in [true, false] {
            for &r in arcs {
                if let Some(c) = w.code(r, forward, best.as_deref(), size) {
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        codes.push(best.unwrap());
    }
    codes.sort();
    let mut words = vec![d.free_loops().len() as u32, codes.len() as u32];
    for c in codes {
        words.push(c.len() as u32);
        words.extend(c);
    }
    encode(&words)
}

/// Deterministic code of a tangle with its boundary fixed: strands are read
/// from their starting endpoints in boundary order, then closed components.
pub fn tangle_code(t: &Tangle) -> Vec<u8> {
    let mut r = TangleReader { t, inc: t.incidence(), label: HashMap::new(), order: Vec::new(), visited: HashSet::new(), words: Vec::new() };
    let nb = t.bottom().len();
    r.words.push(nb as u32);
    r.words.push(t.top().len() as u32);
    for e in t.bottom().iter().chain(t.top()) {
        r.words.push(u32::from(e.up));
    }
    for (k, e) in t.bottom().iter().chain(t.top()).enumerate() {
        let starts = if k < nb { e.up } else { !e.up };
        if starts {
            r.words.push(END);
            r.words.push(k as u32);
            r.walk(e.arc);
        }
    }
    let mut i = 0;
    while i < r.order.len() {
        let c = t.crossings()[r.order[i]];
        if !r.visited.contains(&(r.order[i], true)) {
            r.walk(c.over_in);
        } else if !r.visited.contains(&(r.order[i], false)) {
            r.walk(c.under_in);
        } else {
            i += 1;
        }
    }
    let rest: Vec<_> =
        t.crossings().iter().enumerate().filter(|(i, _)| !r.label.contains_key(i)).map(|(_, c)| *c).collect();
    let mut words = r.words;
    words.push(SEP);
    let tail = canonical_code(&Diagram::from_parts(rest, t.free_loops().to_vec()));
    let mut out = encode(&words);
    out.extend(tail);
    out
}

struct TangleReader<'a> {
    t: &'a Tangle,
    inc: Incidence,
    label: HashMap<usize, u32>,
    order: Vec<usize>,
    visited: HashSet<(usize, bool)>,
    words: Vec<u32>,
}

impl TangleReader<'_> {
    fn walk(&mut self, mut a: Arc) {
        let nb = self.t.bottom().len();
        loop {
            match self.inc.head[&a] {
                Node::Cross(i, _) => {
                    let c = self.t.crossings()[i];
                    let over = c.over_in == a;
                    if !self.visited.insert((i, over)) {
                        self.words.push(SEP);
                        return;
                    }
                    let order = &mut self.order;
                    let l = *self.label.entry(i).or_insert_with(|| {
                        order.push(i);
                        order.len() as u32 - 1
                    });
                    self.words.push((l << 2) | (u32::from(over) << 1) | u32::from(c.sign > 0));
                    a = if over { c.over_out } else { c.under_out };
                }
                Node::Bottom(i) => {
                    self.words.push(END);
                    self.words.push(i as u32);
                    return;
                }
                Node::Top(i) => {
                    self.words.push(END);
                    self.words.push((nb + i) as u32);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{BraidWord, Crossing};
    use super::*;

    fn trefoil() -> Diagram {
        BraidWord::new(2, vec![1, 1, 1]).unwrap().closure()
    }

    fn relabel(d: &Diagram, perm: impl Fn(Arc) -> Arc) -> Diagram {
        let cs: Vec<Crossing> = d.crossings().iter().rev().map(|c| c.map_arcs(&perm)).collect();
        Diagram::new(cs, d.free_loops().to_vec()).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        let t = trefoil();
        let r = relabel(&t, |a| 100 - 7 * a);
        assert_eq!(canonical_code(&t), canonical_code(&r));
        assert_eq!(canonical_code(&t), canonical_code(&t.reverse_all()));
    }

    #[test]
    fn distinguishes_knots() {
        let fig8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().closure();
        assert_ne!(canonical_code(&trefoil()), canonical_code(&fig8));
        assert_ne!(canonical_code(&trefoil()), canonical_code(&trefoil().mirror()));
        assert_ne!(canonical_code(&Diagram::unlink(1)), canonical_code(&Diagram::unlink(2)));
    }

    #[test]
    fn deterministic_bytes() {
        // fixed expected bytes guard against run-to-run drift
        let c = canonical_code(&trefoil());
        assert_eq!(c, canonical_code(&trefoil()));
        let words: Vec<u32> = c.chunks(4).map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]])).collect();
        assert_eq!(words[..3], [0, 1, 7]);
        // under at 0, over at 1, under at 2, then the same three again
        assert_eq!(words[3..], [1, 7, 9, 3, 5, 11, SEP]);
    }
}
