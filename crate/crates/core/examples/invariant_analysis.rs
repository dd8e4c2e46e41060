//! Compares two knots: P0, Jones, v = s^3 and the lowest Vassiliev gap.

use genus2::analysis::{compare, CompareOptions};
use genus2::catalog::Catalog;
use genus2::diagram::BraidWord;
use genus2::engine::{MemoCache, Source};

fn main() {
    let cache = MemoCache::in_memory();
    let opts = CompareOptions::default();

    let cat = Catalog::builtin();
    let (a, b) = (cat.knot("conway_knot").unwrap(), cat.knot("kt_knot").unwrap());
    print!("{}", compare(("conway_knot", a), ("kt_knot", b), &opts, &cache).render());

    let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
    let figure_eight = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
    let r = compare(("trefoil", Source::Braid(&trefoil)), ("figure eight", Source::Braid(&figure_eight)), &opts, &cache);
    println!("{}", serde_json::to_string_pretty(&r.vassiliev_gap).unwrap());
}
