use crate::diagram::{Diagram, UnionFind};
use crate::laurent::LaurentA;

use super::EngineError;

/// Kauffman bracket by the full state sum, with `⟨O⟩ = 1` and
/// `d = −A² − A⁻²`. The A-smoothing joins the regions swept
/// counterclockwise by the over strand: `(a,b)(c,d)` in ccw order.
pub fn kauffman_bracket(d: &Diagram, limit: usize) -> Result<LaurentA, EngineError> {
    let n = d.crossing_count();
    if n > limit {
        return Err(EngineError::CrossingLimit { found: n, limit });
    }
    let d = d.relabeled();
    let arcs = 2 * n;
    let ccw: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.ccw()).collect();
    // loops per state, then A-exponent n - 2k for k B-smoothings
    let mut counts = vec![vec![0u64; arcs + 2]; n + 1];
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(arcs);
        for (i, c) in ccw.iter().enumerate() {
            let [a, b, cc, dd] = c.map(|x| x as usize);
            if state >> i & 1 == 0 {
                uf.union(a, b);
                uf.union(cc, dd);
            } else {
                uf.union(a, dd);
                uf.union(b, cc);
            }
        }
        let loops = (0..arcs).filter(|&x| uf.find(x) == x).count();
        counts[state.count_ones() as usize][loops] += 1;
    }
    let dpoly = LaurentA::from_terms([(2, -1), (-2, -1)]);
    let mut dpow = vec![LaurentA::one()];
    for i in 1..=arcs + d.free_loops().len() {
        dpow.push(&dpow[i - 1] * &dpoly);
    }
    let extra = d.free_loops().len();
    let mut out = LaurentA::zero();
    for (k, row) in counts.iter().enumerate() {
        for (loops, &m) in row.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let total = loops + extra;
            out += &dpow[total - 1].shift(n as i32 - 2 * k as i32).scale(&m.into());
        }
    }
    if n == 0 {
        return Ok(dpow[extra - 1].clone());
    }
    Ok(out)
}

/// Jones polynomial in `A`: `(−A³)^(−writhe) ⟨D⟩`; `t = A⁻⁴`.
pub fn jones_via_bracket(d: &Diagram, limit: usize) -> Result<LaurentA, EngineError> {
    let b = kauffman_bracket(d, limit)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(b.shift(-3 * w as i32).scale(&sign.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;

    #[test]
    fn kink() {
        let d = BraidWord::new(2, vec![1]).unwrap().closure();
        assert_eq!(kauffman_bracket(&d, 20).unwrap(), LaurentA::monomial(-1, 3));
        assert_eq!(jones_via_bracket(&d, 20).unwrap(), LaurentA::one());
    }

    #[test]
    fn unlink() {
        let d = Diagram::unlink(2);
        assert_eq!(kauffman_bracket(&d, 20).unwrap(), LaurentA::from_terms([(2, -1), (-2, -1)]));
    }

    #[test]
    fn right_trefoil_jones() {
        // V = t + t^3 - t^4 for the positive trefoil, t = A^-4
        let d = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        let j = jones_via_bracket(&d, 20).unwrap();
        assert_eq!(j, LaurentA::from_terms([(-16, -1), (-12, 1), (-4, 1)]));
    }
}
