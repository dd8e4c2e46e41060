use std::collections::HashMap;

use super::ops::glue;
use super::{Arc, Crossing, Diagram};

enum Move {
    Kink { c: usize, merge: (Arc, Arc) },
    Bigon { c: usize, d: usize, merges: [(Arc, Arc); 2] },
}

fn position(c: &Crossing, over: bool, incoming: bool) -> usize {
    let p = c.positions();
    match (over, incoming) {
        (true, true) => p[0],
        (true, false) => p[1],
        (false, true) => p[2],
        (false, false) => p[3],
    }
}

fn find_move(cs: &[Crossing]) -> Option<Move> {
    // arc -> (crossing, is_over, is_incoming) for head and tail
    let mut head: HashMap<Arc, (usize, bool)> = HashMap::new();
    let mut tail: HashMap<Arc, (usize, bool)> = HashMap::new();
    for (i, c) in cs.iter().enumerate() {
        head.insert(c.over_in, (i, true));
        head.insert(c.under_in, (i, false));
        tail.insert(c.over_out, (i, true));
        tail.insert(c.under_out, (i, false));
    }
    for (i, c) in cs.iter().enumerate() {
        if c.over_out == c.under_in {
            return Some(Move::Kink { c: i, merge: (c.over_in, c.under_out) });
        }
        if c.under_out == c.over_in {
            return Some(Move::Kink { c: i, merge: (c.under_in, c.over_out) });
        }
    }
    for (i, c) in cs.iter().enumerate() {
        // over strand leaves i along `a`, under strand meets the same crossing
        for (a, a_out) in [(c.over_out, true), (c.over_in, false)] {
            let (d, a_over_at_d) = if a_out { head[&a] } else { tail[&a] };
            if d == i || !a_over_at_d {
                continue;
            }
            for (b, b_out) in [(c.under_out, true), (c.under_in, false)] {
                let (e, b_over_at_d) = if b_out { head[&b] } else { tail[&b] };
                if e != d || b_over_at_d {
                    continue;
                }
                let cd = &cs[d];
                let pa_c = position(c, true, !a_out);
                let pb_c = position(c, false, !b_out);
                let pa_d = position(cd, true, a_out);
                let pb_d = position(cd, false, b_out);
                let face = (pb_d == (pa_d + 1) % 4 && pa_c == (pb_c + 1) % 4)
                    || (pa_d == (pb_d + 1) % 4 && pb_c == (pa_c + 1) % 4);
                if !face {
                    continue;
                }
                let over = if a_out { (c.over_in, cd.over_out) } else { (cd.over_in, c.over_out) };
                let under = if b_out { (c.under_in, cd.under_out) } else { (cd.under_in, c.under_out) };
                return Some(Move::Bigon { c: i, d, merges: [over, under] });
            }
        }
    }
    None
}

/// Applies Reidemeister I and II reductions until none remain.
///
/// Returns the reduced diagram and the signed count of removed kinks, so a
/// framed value satisfies `P(d) = v^(-curl) · P(reduced)`.
pub fn simplify(d: &Diagram) -> (Diagram, i64) {
    let mut cs = d.crossings().to_vec();
    let mut loops = d.free_loops().to_vec();
    let mut curl = 0i64;
    while let Some(mv) = find_move(&cs) {
        let (remove, merges): (Vec<usize>, Vec<(Arc, Arc)>) = match mv {
            Move::Kink { c, merge } => {
                curl += cs[c].sign as i64;
                (vec![c], vec![merge])
            }
            Move::Bigon { c, d, merges } => (vec![c, d], merges.to_vec()),
        };
        let rest: Vec<Crossing> = cs.iter().enumerate().filter(|(i, _)| !remove.contains(i)).map(|(_, c)| *c).collect();
        let t = glue(rest, Vec::new(), Vec::new(), loops.clone(), &merges);
        cs = t.crossings().to_vec();
        loops = t.free_loops().to_vec();
    }
    let out = glue(cs, Vec::new(), Vec::new(), loops, &[]);
    (Diagram::from_parts(out.crossings().to_vec(), out.free_loops().to_vec()), curl)
}
