//! The three Homfly engines on the same knots, and the memo cache.

use std::time::Instant;

use genus2::diagram::BraidWord;
use genus2::engine::{ambient, homfly_brute, homfly_memo, trace_closure_dense, MemoCache};

fn main() {
    let cache = MemoCache::in_memory();
    for word in [vec![1i32, 1, 1], vec![1, -2, 1, -2], vec![1, 1, 1, 1, 1], vec![1, 2, -3, 1, 2, -3, -2]] {
        let strands = word.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
        let b = BraidWord::new(strands, word.clone()).unwrap();
        let d = b.closure();
        let t = Instant::now();
        let brute = homfly_brute(&d).unwrap();
        let memo = homfly_memo(&d, &cache).unwrap();
        let hecke = trace_closure_dense(&b);
        assert!(brute == memo && memo == hecke);
        println!("{word:?}: {} ({:.1?})", ambient(&hecke, b.exponent_sum()), t.elapsed());
    }
    let s = cache.stats();
    println!("cache: {} entries, {} hits, {} misses", s.entries, s.hits, s.misses);
}
