//! Braids, closures, tangles and canonical codes.

use genus2::diagram::{canonical_code, simplify, BraidWord, Diagram};

fn main() {
    let b = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
    let d = b.closure();
    println!("figure eight: {} crossings, writhe {}, {} component(s)", d.crossing_count(), d.writhe(), d.component_count());
    println!("{}", serde_json::to_string(&d).unwrap());

    // rotating the word cyclically draws the same closed diagram; inserting
    // a cancelling pair draws a different one
    let c = BraidWord::new(3, vec![-2, 1, -2, 1]).unwrap().closure();
    println!("rotated word, same code: {}", canonical_code(&c) == canonical_code(&d));

    let r2 = BraidWord::new(3, vec![1, -2, 2, -2, 1, -2]).unwrap().closure();
    println!("with a cancelling pair, same code: {}", canonical_code(&r2) == canonical_code(&d));
    let (s, curl) = simplify(&r2);
    println!("after simplification: {} crossings, curl {curl}", s.crossing_count());

    let f = BraidWord::new(3, vec![2, -1, -1, -1, 2]).unwrap().partial_closure(1).unwrap();
    println!("tangle with {} crossings, {} bottom ends", f.crossing_count(), f.bottom().len());

    let back: Diagram = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(canonical_code(&back), canonical_code(&d));
}
