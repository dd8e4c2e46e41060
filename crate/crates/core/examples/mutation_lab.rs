//! Conway mutants, a genus 2 braid scheme and a satellite.

use genus2::diagram::{canonical_code, BraidWord};
use genus2::engine::{ambient, homfly_memo, trace_closure_dense_truncated, MemoCache};
use genus2::mutation::{conway_mutant_family, satellite, BraidScheme, SatellitePattern};

fn main() {
    let f = BraidWord::new(3, vec![2, -1, -1, -1, 2]).unwrap();
    let g = BraidWord::new(3, vec![-2, 1, -2, 1, 1, -2]).unwrap();
    let (ft, gt) = (f.partial_closure(1).unwrap(), g.partial_closure(1).unwrap());

    let cache = MemoCache::in_memory();
    let (k, kf, kg, kfg) = conway_mutant_family(&ft, &gt).unwrap();
    for (name, knot) in [("K", &k), ("K_F", &kf), ("K_G", &kg), ("K_FG", &kfg)] {
        let p = ambient(&homfly_memo(knot.diagram(), &cache).unwrap(), knot.writhe());
        println!("{name}: {} crossings, P = {p}", knot.crossing_count());
    }
    println!("K and K_F are different diagrams: {}", canonical_code(k.diagram()) != canonical_code(kf.diagram()));

    // follow F with three copies of each arc around a 6-strand inner braid
    let t = BraidWord::new(6, vec![2, 3]).unwrap();
    let scheme = BraidScheme::new(f, t, 3, 3).unwrap();
    let (b1, b2) = scheme.braid_pair();
    println!("genus 2 pair: closed {}-braids with {} crossings", b1.strands, b1.len());
    // only the z^0 term is needed, so the trace is truncated above z^0
    let p0 = |b: &BraidWord| ambient(&trace_closure_dense_truncated(b, 0), b.exponent_sum()).p0();
    println!("P0 differs: {}", p0(&b1) != p0(&b2));

    let q = SatellitePattern::from_braid(&BraidWord::new(2, vec![1]).unwrap());
    let sat = satellite(&k, &q).unwrap();
    println!("2-strand satellite of K: {} crossings", sat.crossing_count());
}
