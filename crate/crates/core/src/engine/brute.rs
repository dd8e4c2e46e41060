use crate::diagram::{Crossing, Diagram};
use crate::laurent::LaurentVZ;

use super::EngineError;

pub const DEFAULT_BRUTE_LIMIT: usize = 20;

pub fn homfly_brute(d: &Diagram) -> Result<LaurentVZ, EngineError> {
    homfly_brute_with_limit(d, DEFAULT_BRUTE_LIMIT)
}

/// Framed Homfly by the plain skein tree: switch the first crossing met from
/// below, smooth it, and stop at descending diagrams.
pub fn homfly_brute_with_limit(d: &Diagram, limit: usize) -> Result<LaurentVZ, EngineError> {
    if d.crossing_count() > limit {
        return Err(EngineError::CrossingLimit { found: d.crossing_count(), limit });
    }
    let d = d.relabeled();
    Ok(eval(d.crossings().to_vec(), d.free_loops().len()))
}

fn eval(cs: Vec<Crossing>, loops: usize) -> LaurentVZ {
    let n_arcs = 2 * cs.len();
    if cs.is_empty() {
        return LaurentVZ::delta().pow(loops as u32 - 1);
    }
    // head crossing of each arc and the arc that follows it
    let mut next = vec![0u32; n_arcs];
    let mut head = vec![(0usize, false); n_arcs];
    for (i, c) in cs.iter().enumerate() {
        next[c.over_in as usize] = c.over_out;
        next[c.under_in as usize] = c.under_out;
        head[c.over_in as usize] = (i, true);
        head[c.under_in as usize] = (i, false);
    }
    let mut seen_arc = vec![false; n_arcs];
    let mut first_visit = vec![None::<bool>; cs.len()];
    let mut components = loops;
    let mut bad = None;
    'outer: for start in 0..n_arcs {
        if seen_arc[start] {
            continue;
        }
        components += 1;
        let mut a = start;
        while !seen_arc[a] {
            seen_arc[a] = true;
            let (c, over) = head[a];
            if first_visit[c].is_none() {
                first_visit[c] = Some(over);
                if !over {
                    bad = Some(c);
                    break 'outer;
                }
            }
            a = next[a] as usize;
        }
    }
    let Some(c) = bad else {
        let w: i64 = cs.iter().map(|c| c.sign as i64).sum();
        return LaurentVZ::delta().pow(components as u32 - 1).shift(-(w as i32), 0);
    };
    let mut switched = cs.clone();
    switched[c] = cs[c].switched();
    let x = cs[c];
    let rest: Vec<Crossing> = cs.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, c)| *c).collect();
    let smooth = crate::diagram::glue_closed(rest, (0..loops as u32).map(|i| u32::MAX - i).collect(), &[(x.under_in, x.over_out), (x.over_in, x.under_out)]);
    let a = eval(switched, loops);
    let smooth = smooth.relabeled();
    let b = eval(smooth.crossings().to_vec(), smooth.free_loops().len());
    let zb = b.shift(0, 1);
    if x.sign > 0 {
        &a + &zb
    } else {
        &a - &zb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;
    use crate::engine::ambient;

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(homfly_brute(&Diagram::unknot()).unwrap(), LaurentVZ::one());
        assert_eq!(homfly_brute(&Diagram::unlink(2)).unwrap(), LaurentVZ::delta());
    }

    #[test]
    fn right_trefoil() {
        let d = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        let framed = homfly_brute(&d).unwrap();
        // two skein steps by hand: 2v^2 - v^4 + v^2 z^2
        let expect = LaurentVZ::from_terms([((2, 0), 2), ((4, 0), -1), ((2, 2), 1)]);
        assert_eq!(ambient(&framed, d.writhe()), expect);
    }

    #[test]
    fn kinks_and_limit() {
        let d = BraidWord::new(2, vec![1]).unwrap().closure();
        assert_eq!(homfly_brute(&d).unwrap(), LaurentVZ::monomial(1, -1, 0));
        let d = BraidWord::new(2, vec![-1]).unwrap().closure();
        assert_eq!(homfly_brute(&d).unwrap(), LaurentVZ::monomial(1, 1, 0));
        let big = BraidWord::new(2, vec![1; 21]).unwrap().closure();
        assert!(matches!(homfly_brute(&big), Err(EngineError::CrossingLimit { found: 21, limit: 20 })));
    }
}
